"""Two-user superposition-coding rates and their wiretap secrecy counterparts.

All rates are natural logarithms (nats per channel use).  Secrecy rates are
differences of log-SINR terms clamped at zero.  The scalar entry points
validate their preconditions; the *_rate / secrecy_brackets kernels accept
numpy arrays and broadcast, which is what the region optimizer evaluates on
whole grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import mag2
from .errors import DomainError


@dataclass(frozen=True)
class PowerSplit:
    """Decision variables of one scheme evaluation.

    alpha: fraction of the BS power carrying the strong user's message.
    pbar:  linear BS transmit power.
    delta: linear jamming power spent by the users (zero outside active mode).
    """

    alpha: float
    pbar: float
    delta: float = 0.0

    def validate(self, total_power: float) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.pbar <= total_power:
            raise DomainError(f"pbar must lie in [0, {total_power}], got {self.pbar}")
        if not 0.0 <= self.delta <= total_power - self.pbar:
            raise DomainError(
                f"delta must lie in [0, {total_power - self.pbar}], got {self.delta}"
            )


@dataclass(frozen=True)
class RatePair:
    """Nonnegative secrecy rates (nats per channel use) of the two users."""

    rs1: float
    rs2: float

    def __post_init__(self):
        if not (math.isfinite(self.rs1) and math.isfinite(self.rs2)):
            raise DomainError(f"rates must be finite, got ({self.rs1}, {self.rs2})")
        if self.rs1 < 0.0 or self.rs2 < 0.0:
            raise DomainError(f"rates must be nonnegative, got ({self.rs1}, {self.rs2})")

    @property
    def sum_rate(self) -> float:
        return self.rs1 + self.rs2


def clamp(x: float) -> float:
    """[x]+ = max(x, 0)."""
    return x if x > 0.0 else 0.0


def strong_user_rate(gain_sq, alpha, power):
    """log(1 + g*alpha*P): the message decoded after interference cancellation."""
    return np.log1p(gain_sq * alpha * power)


def weak_user_rate(gain_sq, alpha, power):
    """log(1 + g*(1-alpha)*P / (1 + g*alpha*P)): decoded first, other signal is noise."""
    return np.log1p(gain_sq * (1.0 - alpha) * power / (1.0 + gain_sq * alpha * power))


def secrecy_brackets(h1_sq, h2_sq, eav_sq, alpha, power, eav_extra_interference=0.0):
    """Unclamped secrecy-rate brackets of the two-user wiretap formulas.

    ``eav_extra_interference`` is additional received interference power at
    the eavesdropper (from cooperative jamming); zero reproduces the plain
    wiretap expressions.  Broadcasts over array arguments.
    """
    b1 = strong_user_rate(h1_sq, alpha, power) - np.log1p(
        eav_sq * alpha * power / (1.0 + eav_extra_interference)
    )
    b2 = weak_user_rate(h2_sq, alpha, power) - np.log1p(
        eav_sq * (1.0 - alpha) * power
        / (1.0 + eav_sq * alpha * power + eav_extra_interference)
    )
    return b1, b2


def _check_scalars(h1, h2, alpha, power) -> tuple[float, float]:
    h1_sq = float(mag2(h1))
    h2_sq = float(mag2(h2))
    if h1_sq < h2_sq:
        raise DomainError(f"|h1|^2 >= |h2|^2 violated: {h1_sq} < {h2_sq}")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    if power < 0.0:
        raise DomainError(f"power must be nonnegative, got {power}")
    return h1_sq, h2_sq


def noma_rates(h1: complex, h2: complex, alpha: float, power: float) -> tuple[float, float]:
    """Superposition-coding rates (r1, r2) of the two-user downlink, in nats."""
    h1_sq, h2_sq = _check_scalars(h1, h2, alpha, power)
    return (
        float(strong_user_rate(h1_sq, alpha, power)),
        float(weak_user_rate(h2_sq, alpha, power)),
    )


def wiretap_secrecy_rates(h1: complex, h2: complex, he: complex, alpha: float, power: float) -> RatePair:
    """Secrecy rates of the two users against an eavesdropper with gain he."""
    h1_sq, h2_sq = _check_scalars(h1, h2, alpha, power)
    b1, b2 = secrecy_brackets(h1_sq, h2_sq, float(mag2(he)), alpha, power)
    return RatePair(clamp(float(b1)), clamp(float(b2)))

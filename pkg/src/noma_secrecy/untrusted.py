"""Secrecy rates through a single honest-but-curious relay.

The relay follows its forwarding protocol but may try to decode, so every
scheme's secrecy bracket subtracts the relay's own decode rate.  Passive users
combine the direct and relayed signals; active users spend part of the budget
jamming the relay during the first phase and then rely only on the relayed
signal.  All schemes are two-phase and carry the 1/2 rate factor.

The *_user_rates / *_brackets kernels broadcast over alpha/pbar/delta arrays.
"""

from __future__ import annotations

import math

import numpy as np

from .channels import UntrustedChannels, mag2
from .errors import BoundaryError, DegenerateRealizationError, DomainError
from .rates import (
    PowerSplit,
    RatePair,
    clamp,
    strong_user_rate,
    weak_user_rate,
    wiretap_secrecy_rates,
)


def untrusted_baseline(ch: UntrustedChannels, alpha: float, total_power: float) -> RatePair:
    """Treat the relay as a plain eavesdropper and transmit at full power."""
    return wiretap_secrecy_rates(ch.h1, ch.h2, ch.hr, alpha, total_power)


def _passive_split(split: PowerSplit, total_power: float) -> None:
    split.validate(total_power)
    if split.delta != 0.0:
        raise DomainError("passive mode has no user jamming power")


# ---------------------------------------------------------------------------
# Passive user mode
# ---------------------------------------------------------------------------

def cf_quantization_noise(ch: UntrustedChannels, pbar, total_power: float):
    """Quantization noise power that keeps the compressed signal decodable.

    Takes the maximum of the two users' decodability requirements; under the
    channel orderings the weak user's requirement is the binding one.
    """
    pbar = np.asarray(pbar, dtype=float)
    if np.any(pbar >= total_power):
        raise BoundaryError("compress-and-forward needs nonzero relay power (pbar < total)")
    hr_sq, h1_sq, h2_sq = mag2(ch.hr), mag2(ch.h1), mag2(ch.h2)
    relay_power = total_power - pbar
    strong = ((hr_sq + h1_sq) * pbar + 1.0) / (mag2(ch.g1) * relay_power * (h1_sq * pbar + 1.0))
    weak = ((hr_sq + h2_sq) * pbar + 1.0) / (mag2(ch.g2) * relay_power * (h2_sq * pbar + 1.0))
    out = np.maximum(strong, weak)
    return float(out) if out.ndim == 0 else out


def cf_passive_user_rates(ch, alpha, pbar, total_power, sigma_q_sq=None):
    """Rates after combining the direct and compressed relayed observations."""
    if sigma_q_sq is None:
        sigma_q_sq = cf_quantization_noise(ch, pbar, total_power)
    h1_sq, h2_sq, hr_sq = mag2(ch.h1), mag2(ch.h2), mag2(ch.hr)
    abar = 1.0 - np.asarray(alpha, dtype=float)
    r1 = np.log1p(h1_sq * alpha * pbar + hr_sq * alpha * pbar / (1.0 + sigma_q_sq))
    r2 = np.log1p(
        h2_sq * abar * pbar / (1.0 + h2_sq * alpha * pbar)
        + hr_sq * abar * pbar / (1.0 + hr_sq * alpha * pbar + sigma_q_sq)
    )
    return r1, r2


def cf_passive_brackets(ch, alpha, pbar, total_power, sigma_q_sq=None):
    r1, r2 = cf_passive_user_rates(ch, alpha, pbar, total_power, sigma_q_sq)
    hr_sq = mag2(ch.hr)
    return r1 - strong_user_rate(hr_sq, alpha, pbar), r2 - weak_user_rate(hr_sq, alpha, pbar)


def cf_passive(
    ch: UntrustedChannels, split: PowerSplit, total_power: float, sigma_q_sq=None
) -> RatePair:
    """Passive-mode compress-and-forward secrecy rates (1/2 factor applied).

    ``sigma_q_sq`` overrides the designed quantization noise; test hook only.
    """
    _passive_split(split, total_power)
    if split.pbar >= total_power:
        raise BoundaryError("compress-and-forward needs nonzero relay power (pbar < total)")
    b1, b2 = cf_passive_brackets(ch, split.alpha, split.pbar, total_power, sigma_q_sq)
    return RatePair(0.5 * clamp(float(b1)), 0.5 * clamp(float(b2)))


def af_passive_user_rates(ch, alpha, pbar, total_power):
    """Rates after combining the direct and amplified relayed observations."""
    h1_sq, h2_sq, hr_sq = mag2(ch.h1), mag2(ch.h2), mag2(ch.hr)
    g1_sq, g2_sq = mag2(ch.g1), mag2(ch.g2)
    beta_sq = (total_power - pbar) / (1.0 + hr_sq * pbar)
    abar = 1.0 - np.asarray(alpha, dtype=float)
    r1 = np.log1p(
        h1_sq * alpha * pbar + g1_sq * beta_sq * hr_sq * alpha * pbar / (1.0 + g1_sq * beta_sq)
    )
    r2 = np.log1p(
        h2_sq * abar * pbar / (1.0 + h2_sq * alpha * pbar)
        + g2_sq * beta_sq * hr_sq * abar * pbar
        / (1.0 + g2_sq * beta_sq * (1.0 + hr_sq * alpha * pbar))
    )
    return r1, r2


def af_passive_brackets(ch, alpha, pbar, total_power):
    r1, r2 = af_passive_user_rates(ch, alpha, pbar, total_power)
    hr_sq = mag2(ch.hr)
    return r1 - strong_user_rate(hr_sq, alpha, pbar), r2 - weak_user_rate(hr_sq, alpha, pbar)


def af_passive(ch: UntrustedChannels, split: PowerSplit, total_power: float) -> RatePair:
    """Passive-mode amplify-and-forward secrecy rates (1/2 factor applied).

    pbar == total_power is allowed: the amplification gain is then zero and
    the relay path simply contributes nothing.
    """
    _passive_split(split, total_power)
    b1, b2 = af_passive_brackets(ch, split.alpha, split.pbar, total_power)
    return RatePair(0.5 * clamp(float(b1)), 0.5 * clamp(float(b2)))


# ---------------------------------------------------------------------------
# Active user mode
# ---------------------------------------------------------------------------

def active_jammer(ch: UntrustedChannels, delta: float) -> np.ndarray:
    """User jamming 2-vector of squared norm delta, aligned with the relay's view.

    The power received by the relay is (|g1|^2 + |g2|^2) * delta.
    """
    if delta < 0.0:
        raise DomainError(f"jamming power must be nonnegative, got {delta}")
    g = np.array([ch.g1, ch.g2], dtype=complex)
    norm = np.linalg.norm(g)
    if norm == 0.0:
        raise DegenerateRealizationError("relay-to-user channels are all zero")
    return g / norm * math.sqrt(delta)


def _jammed_relay_rates(ch, alpha, pbar, delta):
    """The relay's decode rates while the users jam it."""
    hr_sq = mag2(ch.hr)
    jam = (mag2(ch.g1) + mag2(ch.g2)) * delta
    e1 = np.log1p(hr_sq * alpha * pbar / (1.0 + jam))
    e2 = np.log1p(hr_sq * (1.0 - np.asarray(alpha, dtype=float)) * pbar / (1.0 + jam + hr_sq * alpha * pbar))
    return e1, e2


def cf_active_quantization_noise(ch: UntrustedChannels, pbar, delta, total_power: float):
    """Quantization noise power in active mode (no direct link to protect)."""
    pbar = np.asarray(pbar, dtype=float)
    relay_power = total_power - pbar - delta
    if np.any(relay_power <= 0.0):
        raise BoundaryError("compress-and-forward needs nonzero relay power")
    out = (mag2(ch.hr) * pbar + 1.0) / (mag2(ch.g2) * relay_power)
    return float(out) if out.ndim == 0 else out


def cf_active_user_rates(ch, alpha, pbar, delta, total_power, sigma_q_sq=None):
    """Rates from the compressed relayed signal alone (users heard nothing direct)."""
    if sigma_q_sq is None:
        sigma_q_sq = cf_active_quantization_noise(ch, pbar, delta, total_power)
    hr_sq = mag2(ch.hr)
    abar = 1.0 - np.asarray(alpha, dtype=float)
    r1 = np.log1p(hr_sq * alpha * pbar / (1.0 + sigma_q_sq))
    r2 = np.log1p(hr_sq * abar * pbar / (1.0 + hr_sq * alpha * pbar + sigma_q_sq))
    return r1, r2


def cf_active_brackets(ch, alpha, pbar, delta, total_power, sigma_q_sq=None):
    r1, r2 = cf_active_user_rates(ch, alpha, pbar, delta, total_power, sigma_q_sq)
    e1, e2 = _jammed_relay_rates(ch, alpha, pbar, delta)
    return r1 - e1, r2 - e2


def cf_active(
    ch: UntrustedChannels, split: PowerSplit, total_power: float, sigma_q_sq=None
) -> RatePair:
    """Active-mode compress-and-forward secrecy rates (1/2 factor applied)."""
    split.validate(total_power)
    if total_power - split.pbar - split.delta <= 0.0:
        raise BoundaryError("compress-and-forward needs nonzero relay power")
    b1, b2 = cf_active_brackets(
        ch, split.alpha, split.pbar, split.delta, total_power, sigma_q_sq
    )
    return RatePair(0.5 * clamp(float(b1)), 0.5 * clamp(float(b2)))


def af_active_user_rates(ch, alpha, pbar, delta, total_power):
    """Rates from the amplified relayed signal alone."""
    hr_sq = mag2(ch.hr)
    g1_sq, g2_sq = mag2(ch.g1), mag2(ch.g2)
    beta_sq = (total_power - pbar - delta) / (1.0 + hr_sq * pbar)
    abar = 1.0 - np.asarray(alpha, dtype=float)
    r1 = np.log1p(g1_sq * beta_sq * hr_sq * alpha * pbar / (1.0 + g1_sq * beta_sq))
    r2 = np.log1p(
        g2_sq * beta_sq * hr_sq * abar * pbar
        / (1.0 + g2_sq * beta_sq * (1.0 + hr_sq * alpha * pbar))
    )
    return r1, r2


def af_active_brackets(ch, alpha, pbar, delta, total_power):
    r1, r2 = af_active_user_rates(ch, alpha, pbar, delta, total_power)
    e1, e2 = _jammed_relay_rates(ch, alpha, pbar, delta)
    return r1 - e1, r2 - e2


def af_active(ch: UntrustedChannels, split: PowerSplit, total_power: float) -> RatePair:
    """Active-mode amplify-and-forward secrecy rates (1/2 factor applied).

    Zero relay power is allowed and forwards nothing, giving (0, 0).
    """
    split.validate(total_power)
    b1, b2 = af_active_brackets(ch, split.alpha, split.pbar, split.delta, total_power)
    return RatePair(0.5 * clamp(float(b1)), 0.5 * clamp(float(b2)))

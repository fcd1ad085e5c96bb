"""Trusted cooperative relays: jamming, decode-and-forward, amplify-and-forward.

Each scheme designs a relay beamformer that spares the legitimate users (or
boosts them) while steering a null at, or noise toward, the eavesdropper, then
evaluates the resulting secrecy-rate pair.  Cooperative jamming happens in a
single phase; decode- and amplify-and-forward split the block into two equal
phases and carry a 1/2 rate factor.

The *_brackets functions return unclamped brackets and broadcast over
alpha/pbar arrays; the region optimizer evaluates them on whole grids.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .channels import TrustedChannels, mag2
from .errors import (
    BoundaryError,
    ConfigurationError,
    DeflationError,
    DegenerateRealizationError,
    DomainError,
    SingularMatrixError,
)
from .linalg import leading_eigvec, leading_gen_eigvec, orth_complement_basis, orth_projector
from .rates import PowerSplit, RatePair, clamp, secrecy_brackets, strong_user_rate, weak_user_rate

logger = logging.getLogger(__name__)

_DEGENERATE_RTOL = 1e-12


@dataclass(frozen=True)
class BeamWeight:
    """Convex-combination weight steering the relay beamformer between the users."""

    beta: float

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise DomainError(f"beta must lie in [0, 1], got {self.beta}")


def _require_relays(ch: TrustedChannels, minimum: int = 3) -> None:
    if ch.relay_count < minimum:
        raise ConfigurationError(
            f"scheme needs at least {minimum} relays for null steering, got {ch.relay_count}"
        )


def _no_user_jamming(split: PowerSplit) -> None:
    if split.delta != 0.0:
        raise DomainError("trusted-relay schemes have no user jamming power")


# ---------------------------------------------------------------------------
# Cooperative jamming
# ---------------------------------------------------------------------------

def _user_null_projector(ch: TrustedChannels) -> np.ndarray:
    try:
        return orth_projector(np.column_stack((ch.g1, ch.g2)))
    except SingularMatrixError as exc:
        raise DegenerateRealizationError("relay-to-user channel vectors are collinear") from exc


def cj_jamming_gain(ch: TrustedChannels) -> float:
    """Received jamming power at the eavesdropper per unit of relay power.

    This is ge^H P ge for the projector P onto the subspace the users cannot
    hear; zero exactly when ge lies in the span of the user channels.
    """
    _require_relays(ch)
    projected = _user_null_projector(ch) @ ch.ge
    return float(np.real(np.vdot(projected, projected)))


def cj_beamformer(ch: TrustedChannels, jam_power: float) -> np.ndarray:
    """Jamming vector of squared norm ``jam_power``, invisible to both users.

    Among all such vectors it maximizes the power received by the
    eavesdropper.  Raises DegenerateRealizationError when the eavesdropper
    direction lies in the span of the user channels (direction undefined).
    """
    _require_relays(ch)
    if jam_power < 0.0:
        raise DomainError(f"jamming power must be nonnegative, got {jam_power}")
    projected = _user_null_projector(ch) @ ch.ge
    norm = np.linalg.norm(projected)
    if norm <= _DEGENERATE_RTOL * np.linalg.norm(ch.ge):
        raise DegenerateRealizationError(
            "eavesdropper channel lies in the span of the user channels"
        )
    return projected / norm * math.sqrt(jam_power)


def cj_secrecy_rates(ch: TrustedChannels, split: PowerSplit, total_power: float) -> RatePair:
    """Secrecy rates under simultaneous relay jamming (single phase, no 1/2).

    The BS transmits at ``split.pbar``; the remaining budget powers the
    jammers.  At pbar == total_power this reduces exactly to
    wiretap_secrecy_rates at full power.
    """
    _require_relays(ch)
    split.validate(total_power)
    _no_user_jamming(split)
    extra = cj_jamming_gain(ch) * (total_power - split.pbar)
    b1, b2 = secrecy_brackets(
        mag2(ch.h1), mag2(ch.h2), mag2(ch.he), split.alpha, split.pbar, extra
    )
    return RatePair(clamp(float(b1)), clamp(float(b2)))


# ---------------------------------------------------------------------------
# Decode-and-forward
# ---------------------------------------------------------------------------

def df_beamformer(ch: TrustedChannels, beam_weight: float) -> np.ndarray:
    """Unit-norm second-phase relay beamformer with a null at the eavesdropper.

    Maximizes beta |g1^H d|^2 + (1-beta) |g2^H d|^2 subject to ge^H d = 0 via
    the leading eigenvector of the projected weighting matrix.
    """
    _require_relays(ch)
    if not 0.0 <= beam_weight <= 1.0:
        raise DomainError(f"beam weight must lie in [0, 1], got {beam_weight}")
    try:
        eav_null = orth_projector(ch.ge)
    except SingularMatrixError as exc:
        raise DegenerateRealizationError("eavesdropper channel vector is zero") from exc
    weighting = beam_weight * np.outer(ch.g1, ch.g1.conj()) + (1.0 - beam_weight) * np.outer(
        ch.g2, ch.g2.conj()
    )
    mat = eav_null @ weighting @ eav_null
    vec, top = leading_eigvec(0.5 * (mat + mat.conj().T))
    if top <= _DEGENERATE_RTOL * float(np.real(np.trace(weighting))):
        raise DegenerateRealizationError("user channels vanish outside the eavesdropper direction")
    steered = eav_null @ vec
    return steered / np.linalg.norm(steered)


def df_beam_gains(ch: TrustedChannels, beam_weight: float) -> tuple[np.ndarray, float, float]:
    """Beamformer plus its squared responses (|g1^H d|^2, |g2^H d|^2) at the users."""
    d = df_beamformer(ch, beam_weight)
    c1 = float(mag2(np.vdot(ch.g1, d)))
    c2 = float(mag2(np.vdot(ch.g2, d)))
    if c1 < c2:
        # SIC ordering at the strong user is not guaranteed pointwise for
        # arbitrary phases; the rate formulas are evaluated as stated anyway.
        logger.debug("relay-phase response ordering inverted: %.3e < %.3e", c1, c2)
    return d, c1, c2


def df_brackets(ch, response1_sq, response2_sq, alpha, pbar, total_power):
    """Unclamped decode-and-forward secrecy brackets (before the 1/2 factor).

    Each user's rate is the minimum of the combined BS-plus-relay rate and the
    relay decode rate; the decode rates are monotone in |h_{r,k}|^2, so only
    the weakest relay binds.
    """
    relay_power = total_power - pbar
    hr_sq_min = float(np.min(mag2(ch.hr)))
    combined1 = strong_user_rate(mag2(ch.h1), alpha, pbar) + strong_user_rate(
        response1_sq, alpha, relay_power
    )
    combined2 = weak_user_rate(mag2(ch.h2), alpha, pbar) + weak_user_rate(
        response2_sq, alpha, relay_power
    )
    decode1 = strong_user_rate(hr_sq_min, alpha, pbar)
    decode2 = weak_user_rate(hr_sq_min, alpha, pbar)
    he_sq = mag2(ch.he)
    b1 = np.minimum(combined1, decode1) - strong_user_rate(he_sq, alpha, pbar)
    b2 = np.minimum(combined2, decode2) - weak_user_rate(he_sq, alpha, pbar)
    return b1, b2


def df_secrecy_rates(
    ch: TrustedChannels, split: PowerSplit, total_power: float, weight: BeamWeight
) -> RatePair:
    """Two-phase decode-and-forward secrecy rates (1/2 factor applied)."""
    _require_relays(ch)
    split.validate(total_power)
    _no_user_jamming(split)
    _, c1, c2 = df_beam_gains(ch, weight.beta)
    b1, b2 = df_brackets(ch, c1, c2, split.alpha, split.pbar, total_power)
    return RatePair(0.5 * clamp(float(b1)), 0.5 * clamp(float(b2)))


# ---------------------------------------------------------------------------
# Amplify-and-forward
# ---------------------------------------------------------------------------

def af_beamformer(
    ch: TrustedChannels, pbar: float, total_power: float, beam_weight: float
) -> np.ndarray:
    """Relay amplification vector for the two-phase amplify-and-forward scheme.

    The vector nulls the eavesdropper's relay path (ge^H diag(hr) a = 0) and
    meets the relay power budget a^H (diag(|hr|^2) pbar + I) a = total - pbar.
    Per-user optimal directions come from leading generalized eigenvectors on
    the null-steered subspace and are convex-combined with ``beam_weight``,
    then rescaled back onto the power constraint.

    The weak user's SINR denominator also carries an alpha*pbar multiple of
    its numerator matrix; that shift maps the quotient q to q/(1+alpha*pbar*q),
    which is increasing in q, so the maximizing direction is alpha-independent
    and the pencil is solved without that term.
    """
    _require_relays(ch)
    if not 0.0 <= beam_weight <= 1.0:
        raise DomainError(f"beam weight must lie in [0, 1], got {beam_weight}")
    if not 0.0 <= pbar <= total_power:
        raise DomainError(f"pbar must lie in [0, {total_power}], got {pbar}")
    if pbar == total_power:
        raise BoundaryError("amplify-and-forward needs nonzero relay power (pbar < total)")
    relay_power = total_power - pbar
    power_matrix = np.diag(mag2(ch.hr) * pbar + 1.0).astype(complex)
    blocked = ch.hr.conj() * ch.ge
    try:
        basis = orth_complement_basis(blocked)
    except SingularMatrixError as exc:
        raise DegenerateRealizationError("eavesdropper relay-path direction is zero") from exc

    scaled = []
    for g in (ch.g1, ch.g2):
        v = ch.hr.conj() * g
        numerator = np.outer(v, v.conj())
        denominator = power_matrix / relay_power + np.diag(mag2(g)).astype(complex)
        try:
            u = leading_gen_eigvec(numerator, denominator, range_basis=basis)
        except DeflationError as exc:
            raise DegenerateRealizationError(
                "pencil denominator lost definiteness on the steered subspace"
            ) from exc
        budget = float(np.real(np.vdot(u, power_matrix @ u)))
        scaled.append(u * math.sqrt(relay_power / budget))

    combo = beam_weight * scaled[0] + (1.0 - beam_weight) * scaled[1]
    used = float(np.real(np.vdot(combo, power_matrix @ combo)))
    if used <= 1e-24 * relay_power:
        # Antipodal per-user directions cancelled; keep the dominant one.
        combo = scaled[0] if beam_weight >= 0.5 else scaled[1]
        used = float(np.real(np.vdot(combo, power_matrix @ combo)))
    return combo * math.sqrt(relay_power / used)


def af_relay_terms(ch: TrustedChannels, amp: np.ndarray) -> tuple[float, float, float, float]:
    """Relay-path quadratic forms (signal1, noise1, signal2, noise2) at the users."""
    n1 = float(mag2(np.vdot(ch.hr.conj() * ch.g1, amp)))
    n2 = float(mag2(np.vdot(ch.hr.conj() * ch.g2, amp)))
    d1 = float(np.real(np.vdot(amp, mag2(ch.g1) * amp)))
    d2 = float(np.real(np.vdot(amp, mag2(ch.g2) * amp)))
    return n1, d1, n2, d2


def af_brackets(ch, amp, alpha, pbar, total_power):
    """Unclamped amplify-and-forward secrecy brackets (before the 1/2 factor)."""
    n1, d1, n2, d2 = af_relay_terms(ch, amp)
    abar = 1.0 - np.asarray(alpha, dtype=float)
    h2_sq = mag2(ch.h2)
    r1 = np.log1p(mag2(ch.h1) * alpha * pbar + n1 * alpha * pbar / (1.0 + d1))
    r2 = np.log1p(
        h2_sq * abar * pbar / (1.0 + h2_sq * alpha * pbar)
        + n2 * abar * pbar / (1.0 + d2 + n2 * alpha * pbar)
    )
    he_sq = mag2(ch.he)
    b1 = r1 - strong_user_rate(he_sq, alpha, pbar)
    b2 = r2 - weak_user_rate(he_sq, alpha, pbar)
    return b1, b2


def af_secrecy_rates(
    ch: TrustedChannels, split: PowerSplit, total_power: float, weight: BeamWeight
) -> RatePair:
    """Two-phase amplify-and-forward secrecy rates (1/2 factor applied)."""
    split.validate(total_power)
    _no_user_jamming(split)
    amp = af_beamformer(ch, split.pbar, total_power, weight.beta)
    n1, d1, n2, d2 = af_relay_terms(ch, amp)
    a, p = split.alpha, split.pbar
    t1 = n1 * (1.0 - a) * p / (1.0 + d1 + n1 * a * p)
    t2 = n2 * (1.0 - a) * p / (1.0 + d2 + n2 * a * p)
    if t1 < t2:
        # Same caveat as in decode-and-forward: pointwise SIC ordering is not
        # guaranteed for arbitrary phases; log and evaluate as stated.
        logger.debug("relay-path SINR ordering inverted: %.3e < %.3e", t1, t2)
    b1, b2 = af_brackets(ch, amp, split.alpha, split.pbar, total_power)
    return RatePair(0.5 * clamp(float(b1)), 0.5 * clamp(float(b2)))

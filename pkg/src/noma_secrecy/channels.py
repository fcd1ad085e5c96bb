"""Channel realizations for the collinear downlink layout.

Every node sits on a single line with the base station at the origin, so the
distance between any two nodes is the absolute difference of their distances
from the BS.  A link of length ``l`` carries the gain

    h = sqrt(1 / l**gamma) * exp(1j * theta),    theta ~ Uniform[0, 2*pi)

which has a deterministic magnitude and a random phase.  Noise power is
normalized to one at every receiver, so linear transmit powers double as SNRs.

Phases come from numpy's default ``PCG64`` generator.  Monte Carlo trial ``i``
uses the child stream ``SeedSequence(seed, spawn_key=(i, attempt))`` so that a
run's results do not depend on how trials are scheduled across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi


def dbm_to_linear(p_dbm: float) -> float:
    """Convert a dBm power label to linear power against unit-variance noise."""
    return 10.0 ** (p_dbm / 10.0)


def mag2(z):
    """Squared magnitude |z|^2 as a real scalar or array."""
    z = np.asarray(z)
    return (z.real * z.real + z.imag * z.imag) if np.iscomplexobj(z) else z * z


def path_gain_magnitude(distance_m: float, gamma: float) -> float:
    """Deterministic gain magnitude sqrt(1 / l**gamma) of a link of length l.

    Raises DomainError for non-positive distances.
    """
    if not distance_m > 0.0:
        raise DomainError(f"link distance must be positive, got {distance_m}")
    return math.sqrt(distance_m ** (-gamma))


def draw_channel(distance_m: float, gamma: float, rng: np.random.Generator) -> complex:
    """One channel gain: fixed magnitude from the distance, uniform random phase."""
    theta = rng.uniform(0.0, TWO_PI)
    return path_gain_magnitude(distance_m, gamma) * complex(math.cos(theta), math.sin(theta))


def _draw_vector(distance_m: float, gamma: float, count: int, rng: np.random.Generator) -> np.ndarray:
    theta = rng.uniform(0.0, TWO_PI, size=count)
    return path_gain_magnitude(distance_m, gamma) * np.exp(1j * theta)


@dataclass(frozen=True)
class ScenarioGeometry:
    """Node placement on the line, all distances in meters from the BS.

    l1/l2 locate the strong and weak users (l1 <= l2), lr the relay(s), and le
    the eavesdropper (trusted scenario only).  K relays share the distance lr;
    only their phases differ.  gamma is the path-loss exponent.
    """

    l1: float
    l2: float
    lr: float
    gamma: float
    K: int = 1
    le: float | None = None

    def __post_init__(self):
        for name in ("l1", "l2", "lr"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        if self.le is not None and not self.le > 0.0:
            raise DomainError(f"le must be positive, got {self.le}")
        if not self.gamma > 0.0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if self.K < 1:
            raise DomainError(f"relay count must be >= 1, got {self.K}")
        if self.l1 > self.l2:
            raise DomainError("strong user must not be farther than the weak user (l1 <= l2)")
        for name in ("l1", "l2", "le"):
            other = getattr(self, name)
            if other is not None and other == self.lr:
                raise DomainError(f"relay coincides with node {name} at {other} m")

    def relay_distance_to(self, l_node: float) -> float:
        """Relay-to-node distance on the line."""
        return abs(l_node - self.lr)


@dataclass
class TrustedChannels:
    """One realization of the trusted scenario: scalars from the BS, K-vectors at the relays.

    Realizations drawn from a geometry additionally satisfy the componentwise
    ordering |g1_k|^2 >= |g2_k|^2 (the relays sit at least as close to the
    strong user); draw_trusted rejects placements that would break it.
    """

    h1: complex
    h2: complex
    he: complex
    hr: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    ge: np.ndarray

    def __post_init__(self):
        for name in ("hr", "g1", "g2", "ge"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=complex))
        k = self.hr.shape
        if not (self.g1.shape == self.g2.shape == self.ge.shape == k) or self.hr.ndim != 1:
            raise DomainError("relay channel vectors must be 1-D and of equal length")
        if mag2(self.h1) < mag2(self.h2):
            raise DomainError("|h1|^2 >= |h2|^2 violated")

    @property
    def relay_count(self) -> int:
        return self.hr.size


@dataclass
class UntrustedChannels:
    """One realization of the untrusted scenario (single relay, scalar links)."""

    h1: complex
    h2: complex
    hr: complex
    g1: complex
    g2: complex

    def __post_init__(self):
        if mag2(self.h1) < mag2(self.h2):
            raise DomainError("|h1|^2 >= |h2|^2 violated")
        if mag2(self.g1) < mag2(self.g2):
            raise DomainError("|g1|^2 >= |g2|^2 violated")


def draw_trusted(geometry: ScenarioGeometry, rng: np.random.Generator) -> TrustedChannels:
    """Draw a trusted-scenario realization from the geometry.

    Gains are drawn in the fixed order h1, h2, he, hr, g1, g2, ge so that a
    given stream always produces the same realization.  The relay placement
    must keep the strong user at least as close to the relays as the weak
    user, otherwise the componentwise ordering invariant cannot hold.
    """
    if geometry.le is None:
        raise DomainError("trusted scenario needs an eavesdropper distance le")
    d1 = geometry.relay_distance_to(geometry.l1)
    d2 = geometry.relay_distance_to(geometry.l2)
    de = geometry.relay_distance_to(geometry.le)
    if d1 > d2:
        raise DomainError(
            f"relay at {geometry.lr} m is closer to the weak user than to the strong user"
        )
    k, gamma = geometry.K, geometry.gamma
    return TrustedChannels(
        h1=draw_channel(geometry.l1, gamma, rng),
        h2=draw_channel(geometry.l2, gamma, rng),
        he=draw_channel(geometry.le, gamma, rng),
        hr=_draw_vector(geometry.lr, gamma, k, rng),
        g1=_draw_vector(d1, gamma, k, rng),
        g2=_draw_vector(d2, gamma, k, rng),
        ge=_draw_vector(de, gamma, k, rng),
    )


def draw_untrusted(geometry: ScenarioGeometry, rng: np.random.Generator) -> UntrustedChannels:
    """Draw an untrusted-scenario realization (K must be 1).

    Draw order: h1, h2, hr, g1, g2.
    """
    if geometry.K != 1:
        raise DomainError(f"untrusted scenario has exactly one relay, got K={geometry.K}")
    d1 = geometry.relay_distance_to(geometry.l1)
    d2 = geometry.relay_distance_to(geometry.l2)
    if d1 > d2:
        raise DomainError(
            f"relay at {geometry.lr} m is closer to the weak user than to the strong user"
        )
    gamma = geometry.gamma
    return UntrustedChannels(
        h1=draw_channel(geometry.l1, gamma, rng),
        h2=draw_channel(geometry.l2, gamma, rng),
        hr=draw_channel(geometry.lr, gamma, rng),
        g1=draw_channel(d1, gamma, rng),
        g2=draw_channel(d2, gamma, rng),
    )


def trial_rng(seed: int, trial: int, attempt: int = 0) -> np.random.Generator:
    """Independent child stream for one Monte Carlo trial (re)draw."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial, attempt)))

"""Boundary tracing of achievable secrecy-rate regions.

For a weight mu in [0, 1], each scheme's boundary point maximizes
mu*rs1 + (1-mu)*rs2 over its feasible power split: alpha alone for the
non-relaying schemes, (alpha, pbar) for the relaying ones, and
(alpha, pbar, delta) in active mode.  The search is a uniform grid followed by
local refinement passes that halve the window around the incumbent; ties are
broken toward smaller pbar, then smaller alpha, then smaller delta.  Region
curves average the per-trial optimal rate pairs over seeded Monte Carlo
trials, so results are reproducible and independent of worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import partial

import numpy as np

from .channels import (
    ScenarioGeometry,
    TrustedChannels,
    UntrustedChannels,
    draw_trusted,
    draw_untrusted,
    mag2,
    trial_rng,
)
from .errors import DegenerateRealizationError, DomainError, NumericalDegeneracyError
from .rates import PowerSplit, RatePair, clamp, secrecy_brackets, wiretap_secrecy_rates
from .trusted import (
    BeamWeight,
    af_beamformer,
    af_brackets,
    af_secrecy_rates,
    cj_jamming_gain,
    cj_secrecy_rates,
    df_beam_gains,
    df_brackets,
    df_secrecy_rates,
)
from .untrusted import (
    af_active,
    af_active_brackets,
    af_passive,
    af_passive_brackets,
    cf_active,
    cf_active_brackets,
    cf_passive,
    cf_passive_brackets,
    untrusted_baseline,
)

logger = logging.getLogger(__name__)


class SchemeId(Enum):
    """One transmission scheme; each maps to one rate operation and one feasible set."""

    DIRECT = "direct"
    CJ = "cj"
    DF = "df"
    AF_TRUSTED = "af_trusted"
    BASELINE_UNTRUSTED = "baseline_untrusted"
    CF_PASSIVE = "cf_passive"
    AF_PASSIVE = "af_passive"
    CF_ACTIVE = "cf_active"
    AF_ACTIVE = "af_active"


TRUSTED_SCHEMES = frozenset(
    {SchemeId.DIRECT, SchemeId.CJ, SchemeId.DF, SchemeId.AF_TRUSTED}
)
UNTRUSTED_SCHEMES = frozenset(
    {
        SchemeId.BASELINE_UNTRUSTED,
        SchemeId.CF_PASSIVE,
        SchemeId.AF_PASSIVE,
        SchemeId.CF_ACTIVE,
        SchemeId.AF_ACTIVE,
    }
)
_ALPHA_ONLY = frozenset({SchemeId.DIRECT, SchemeId.BASELINE_UNTRUSTED})
_ACTIVE = frozenset({SchemeId.CF_ACTIVE, SchemeId.AF_ACTIVE})


@dataclass(frozen=True)
class GridConfig:
    """Line-search settings: grid density, refinement depth, boundary margin."""

    points: int = 33
    refine_passes: int = 2
    margin: float = 1e-3

    def __post_init__(self):
        if self.points < 2:
            raise DomainError(f"grid needs at least 2 points per dimension, got {self.points}")
        if self.refine_passes < 0:
            raise DomainError(f"refine passes must be nonnegative, got {self.refine_passes}")
        if not 0.0 < self.margin < 0.5:
            raise DomainError(f"margin must lie in (0, 0.5), got {self.margin}")


@dataclass(frozen=True)
class BoundaryPoint:
    """Optimized point of one region boundary at weight mu."""

    mu: float
    rates: RatePair
    split: PowerSplit
    objective: float


@dataclass(frozen=True)
class RegionCurve:
    """Per-mu boundary points averaged over Monte Carlo trials."""

    scheme: SchemeId
    points: tuple[BoundaryPoint, ...]
    trials: int
    seed: int
    redraws: int = 0


def _refined_argmax(eval_fn, bounds, grids: GridConfig, mu: float):
    """Coarse grid plus local refinement passes; the incumbent is never discarded.

    ``eval_fn`` maps a list of 1-D coordinate arrays to (rs1, rs2) grids of
    matching shape.  Each refinement pass re-grids the incumbent's
    neighborhood (plus/minus one previous grid step, clipped to the original
    bounds) at the same point count, which is fine enough to track the narrow
    peaks that high transmit powers put near the alpha = 0 boundary.  Returns
    (objective, coords, (rs1, rs2)); the first flat argmax in C order
    realizes the tie-break toward smaller leading axes.
    """
    best_obj = -np.inf
    best_coords = None
    best_rates = (0.0, 0.0)
    steps = [(hi - lo) / (grids.points - 1) for lo, hi in bounds]
    for level in range(grids.refine_passes + 1):
        if level == 0:
            windows = list(bounds)
        else:
            windows = [
                (max(lo, center - step), min(hi, center + step))
                for (lo, hi), center, step in zip(bounds, best_coords, steps)
            ]
        axes = [np.linspace(lo, hi, grids.points) for lo, hi in windows]
        steps = [(hi - lo) / (grids.points - 1) for lo, hi in windows]
        rs1, rs2 = eval_fn(axes)
        obj = mu * rs1 + (1.0 - mu) * rs2
        idx = np.unravel_index(int(np.argmax(obj)), obj.shape)
        if float(obj[idx]) > best_obj:
            best_obj = float(obj[idx])
            best_coords = tuple(float(axes[d][idx[d]]) for d in range(len(axes)))
            best_rates = (float(rs1[idx]), float(rs2[idx]))
    return best_obj, best_coords, best_rates


def _pbar_bounds(scheme: SchemeId, total_power: float, grids: GridConfig) -> tuple[float, float]:
    eps = grids.margin * total_power
    if scheme is SchemeId.CJ:
        # pbar == total is the valid zero-jamming boundary and stays in the grid.
        return eps, total_power
    return eps, total_power - eps


def scheme_rates(
    scheme: SchemeId,
    ch,
    split: PowerSplit,
    total_power: float,
    beam_weight: float = 0.5,
) -> RatePair:
    """Evaluate one scheme's secrecy rates at a fixed split."""
    if scheme is SchemeId.DIRECT:
        return wiretap_secrecy_rates(ch.h1, ch.h2, ch.he, split.alpha, total_power)
    if scheme is SchemeId.CJ:
        return cj_secrecy_rates(ch, split, total_power)
    if scheme is SchemeId.DF:
        return df_secrecy_rates(ch, split, total_power, BeamWeight(beam_weight))
    if scheme is SchemeId.AF_TRUSTED:
        return af_secrecy_rates(ch, split, total_power, BeamWeight(beam_weight))
    if scheme is SchemeId.BASELINE_UNTRUSTED:
        return untrusted_baseline(ch, split.alpha, total_power)
    if scheme is SchemeId.CF_PASSIVE:
        return cf_passive(ch, split, total_power)
    if scheme is SchemeId.AF_PASSIVE:
        return af_passive(ch, split, total_power)
    if scheme is SchemeId.CF_ACTIVE:
        return cf_active(ch, split, total_power)
    if scheme is SchemeId.AF_ACTIVE:
        return af_active(ch, split, total_power)
    raise DomainError(f"unknown scheme {scheme}")


def _check_realization(scheme: SchemeId, ch) -> None:
    if scheme in TRUSTED_SCHEMES and not isinstance(ch, TrustedChannels):
        raise DomainError(f"{scheme.value} needs a trusted-scenario realization")
    if scheme in UNTRUSTED_SCHEMES and not isinstance(ch, UntrustedChannels):
        raise DomainError(f"{scheme.value} needs an untrusted-scenario realization")


def boundary_point(
    scheme: SchemeId,
    ch,
    mu: float,
    total_power: float,
    grids: GridConfig | None = None,
) -> BoundaryPoint:
    """Grid-refined maximizer of mu*rs1 + (1-mu)*rs2 over the scheme's split.

    The beamformer weight of the DF and trusted-AF schemes is set to mu.  The
    returned rates and objective are recomputed at the winning split through
    the scheme's scalar entry point, so they are exactly consistent with it.
    """
    grids = grids or GridConfig()
    if not 0.0 <= mu <= 1.0:
        raise DomainError(f"mu must lie in [0, 1], got {mu}")
    _check_realization(scheme, ch)
    eps = grids.margin * total_power

    if scheme in _ALPHA_ONLY:
        eav = ch.he if scheme is SchemeId.DIRECT else ch.hr
        h1_sq, h2_sq, eav_sq = mag2(ch.h1), mag2(ch.h2), mag2(eav)

        def eval_fn(axes):
            (alphas,) = axes
            b1, b2 = secrecy_brackets(h1_sq, h2_sq, eav_sq, alphas, total_power)
            return np.maximum(b1, 0.0), np.maximum(b2, 0.0)

        bounds = [(0.0, 1.0)]
    elif scheme is SchemeId.CJ:
        leak = cj_jamming_gain(ch)
        h1_sq, h2_sq, he_sq = mag2(ch.h1), mag2(ch.h2), mag2(ch.he)

        def eval_fn(axes):
            pbars, alphas = axes
            extra = (leak * (total_power - pbars))[:, None]
            b1, b2 = secrecy_brackets(h1_sq, h2_sq, he_sq, alphas[None, :], pbars[:, None], extra)
            return np.maximum(b1, 0.0), np.maximum(b2, 0.0)

        bounds = [_pbar_bounds(scheme, total_power, grids), (0.0, 1.0)]
    elif scheme is SchemeId.DF:
        _, c1, c2 = df_beam_gains(ch, mu)

        def eval_fn(axes):
            pbars, alphas = axes
            b1, b2 = df_brackets(ch, c1, c2, alphas[None, :], pbars[:, None], total_power)
            return 0.5 * np.maximum(b1, 0.0), 0.5 * np.maximum(b2, 0.0)

        bounds = [_pbar_bounds(scheme, total_power, grids), (0.0, 1.0)]
    elif scheme is SchemeId.AF_TRUSTED:

        def eval_fn(axes):
            pbars, alphas = axes
            rs1 = np.empty((pbars.size, alphas.size))
            rs2 = np.empty_like(rs1)
            for i, pb in enumerate(pbars):
                amp = af_beamformer(ch, float(pb), total_power, mu)
                b1, b2 = af_brackets(ch, amp, alphas, float(pb), total_power)
                rs1[i] = 0.5 * np.maximum(b1, 0.0)
                rs2[i] = 0.5 * np.maximum(b2, 0.0)
            return rs1, rs2

        bounds = [_pbar_bounds(scheme, total_power, grids), (0.0, 1.0)]
    elif scheme in (SchemeId.CF_PASSIVE, SchemeId.AF_PASSIVE):
        kernel = cf_passive_brackets if scheme is SchemeId.CF_PASSIVE else af_passive_brackets

        def eval_fn(axes):
            pbars, alphas = axes
            b1, b2 = kernel(ch, alphas[None, :], pbars[:, None], total_power)
            return 0.5 * np.maximum(b1, 0.0), 0.5 * np.maximum(b2, 0.0)

        bounds = [_pbar_bounds(scheme, total_power, grids), (0.0, 1.0)]
    elif scheme in _ACTIVE:
        kernel = cf_active_brackets if scheme is SchemeId.CF_ACTIVE else af_active_brackets

        def eval_fn(axes):
            pbars, alphas, fracs = axes
            dmax = np.maximum(total_power - pbars - eps, 0.0)
            delta = fracs[None, None, :] * dmax[:, None, None]
            b1, b2 = kernel(
                ch, alphas[None, :, None], pbars[:, None, None], delta, total_power
            )
            return 0.5 * np.maximum(b1, 0.0), 0.5 * np.maximum(b2, 0.0)

        bounds = [_pbar_bounds(scheme, total_power, grids), (0.0, 1.0), (0.0, 1.0)]
    else:
        raise DomainError(f"unknown scheme {scheme}")

    _, coords, _ = _refined_argmax(eval_fn, bounds, grids, mu)
    if scheme in _ALPHA_ONLY:
        split = PowerSplit(coords[0], total_power, 0.0)
    elif scheme in _ACTIVE:
        pbar, alpha, frac = coords
        split = PowerSplit(alpha, pbar, frac * max(total_power - pbar - eps, 0.0))
    else:
        pbar, alpha = coords
        split = PowerSplit(alpha, pbar, 0.0)

    rates = scheme_rates(scheme, ch, split, total_power, beam_weight=mu)
    objective = mu * rates.rs1 + (1.0 - mu) * rates.rs2
    return BoundaryPoint(mu=float(mu), rates=rates, split=split, objective=objective)


def _trial_rows(
    trial: int,
    *,
    scheme: SchemeId,
    geometry: ScenarioGeometry,
    total_power: float,
    mus: tuple[float, ...],
    seed: int,
    grids: GridConfig,
    max_redraws: int,
) -> tuple[np.ndarray, int]:
    """One trial's (n_mu, 6) array of rs1, rs2, alpha, pbar, delta, objective."""
    draw = draw_trusted if scheme in TRUSTED_SCHEMES else draw_untrusted
    for attempt in range(max_redraws):
        ch = draw(geometry, trial_rng(seed, trial, attempt))
        try:
            rows = np.empty((len(mus), 6))
            for j, mu in enumerate(mus):
                bp = boundary_point(scheme, ch, mu, total_power, grids)
                rows[j] = (
                    bp.rates.rs1,
                    bp.rates.rs2,
                    bp.split.alpha,
                    bp.split.pbar,
                    bp.split.delta,
                    bp.objective,
                )
            return rows, attempt
        except DegenerateRealizationError:
            logger.warning("degenerate realization in trial %d attempt %d; redrawing", trial, attempt)
    raise NumericalDegeneracyError(
        f"trial {trial} stayed degenerate after {max_redraws} redraws"
    )


def trace_region(
    scheme: SchemeId,
    geometry: ScenarioGeometry,
    total_power: float,
    mu_grid,
    trials: int,
    seed: int,
    grids: GridConfig | None = None,
    threads: int = 1,
    max_redraws: int = 100,
) -> RegionCurve:
    """Averaged boundary points of one scheme over seeded Monte Carlo trials.

    Trials own independent child streams derived from (seed, trial), and the
    reduction runs in trial order, so the curve is bitwise reproducible for
    any ``threads`` value.
    """
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    grids = grids or GridConfig()
    mus = tuple(float(m) for m in mu_grid)
    if not mus:
        raise DomainError("mu grid must not be empty")
    work = partial(
        _trial_rows,
        scheme=scheme,
        geometry=geometry,
        total_power=total_power,
        mus=mus,
        seed=seed,
        grids=grids,
        max_redraws=max_redraws,
    )
    if threads <= 1:
        results = [work(i) for i in range(trials)]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, range(trials), chunksize=max(1, trials // (4 * threads))))
    stack = np.stack([rows for rows, _ in results])
    redraws = sum(att for _, att in results)
    means = stack.mean(axis=0)
    points = []
    for j, mu in enumerate(mus):
        rs1, rs2, alpha, pbar, delta = (float(v) for v in means[j, :5])
        points.append(
            BoundaryPoint(
                mu=mu,
                rates=RatePair(clamp(rs1), clamp(rs2)),
                split=PowerSplit(alpha, pbar, delta),
                objective=mu * rs1 + (1.0 - mu) * rs2,
            )
        )
    return RegionCurve(scheme=scheme, points=tuple(points), trials=trials, seed=seed, redraws=redraws)


def secrecy_sum_rate(
    scheme: SchemeId,
    geometry: ScenarioGeometry,
    total_power: float,
    trials: int,
    seed: int,
    grids: GridConfig | None = None,
    threads: int = 1,
) -> float:
    """Averaged rs1 + rs2 at the sum-optimal split (the mu = 1/2 boundary point)."""
    curve = trace_region(
        scheme, geometry, total_power, (0.5,), trials, seed, grids, threads=threads
    )
    point = curve.points[0]
    return point.rates.rs1 + point.rates.rs2

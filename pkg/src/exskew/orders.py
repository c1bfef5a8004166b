"""Grid diagnostics for skewness orderings between two families.

Three checks, each returning an OrderVerdict:

  convex_transform_order   three-point convexity comparison of the
                           quantile functions (van Zwet ordering)
  mean_mad_order           single-crossing pattern of the mean/MAD
                           standardized cdfs on each side of zero
  expectile_order          pointwise dominance of expectile curves

These are numerical diagnostics on finite grids, not proofs: "holds"
and "fails" describe the sampled grid, and near-zero comparisons fall
into a dead band that yields "inconclusive" rather than a coin-flip
resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .distributions import DistributionSpec, Sample, cdf, mad, mean, quantile
from .errors import UnsupportedFamilyError
from .expectile import empirical_expectile, expectile

__all__ = [
    "OrderRelation",
    "OrderVerdict",
    "convex_transform_order",
    "mean_mad_order",
    "expectile_order",
    "DEFAULT_GRID_SIZE",
    "DEAD_BAND",
]

DEFAULT_GRID_SIZE = 2001
DEAD_BAND = 1e-9
_U_MARGIN = 1e-6


class OrderRelation(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass
class OrderVerdict:
    """Outcome of one ordering check.

    witnesses lists grid points where the defining condition is
    violated or where the relevant crossings occur; it is empty exactly
    when the relation holds.
    """

    relation: OrderRelation
    witnesses: list[float] = field(default_factory=list)
    grid: np.ndarray | None = None

    def __post_init__(self) -> None:
        if (self.relation is OrderRelation.HOLDS) != (len(self.witnesses) == 0):
            raise ValueError("OrderVerdict: witnesses must be empty exactly for 'holds'")

    @property
    def holds(self) -> bool:
        return self.relation is OrderRelation.HOLDS


def _u_grid(grid_size: int) -> np.ndarray:
    if not isinstance(grid_size, (int, np.integer)) or grid_size < 10:
        raise ValueError("grid_size must be an integer of at least 10")
    return np.linspace(_U_MARGIN, 1.0 - _U_MARGIN, int(grid_size))


def _require_continuous(*dists: DistributionSpec) -> None:
    for dist in dists:
        if not dist.is_continuous:
            raise UnsupportedFamilyError(f"{dist.family} has no continuous strictly increasing cdf")


def convex_transform_order(
    f_dist: DistributionSpec,
    g_dist: DistributionSpec,
    grid_size: int = DEFAULT_GRID_SIZE,
    tol: float = DEAD_BAND,
) -> OrderVerdict:
    """Check whether g_dist is at least as right-skewed as f_dist in the
    convex transform sense.

    The defining condition compares, for every ordered triple u < v < w,
    the normalized second difference of the two quantile functions:

      (F^-1(w) - 2 F^-1(v) + F^-1(u)) / (F^-1(w) - F^-1(u))
        <= same expression with G^-1.

    With grid points sorted along x = F^-1(u) the condition holds for
    all triples iff it holds for all consecutive triples (discrete
    convexity of the quantile-quantile curve), so consecutive triples
    are evaluated; witnesses carry the middle u of a violated triple.
    """
    _require_continuous(f_dist, g_dist)
    u = _u_grid(grid_size)
    x = quantile(f_dist, u)
    y = quantile(g_dist, u)
    dx = x[2:] - x[:-2]
    dy = y[2:] - y[:-2]
    if np.any(dx <= 0.0) or np.any(dy <= 0.0):
        # quantile spacing collapsed in floating point; cannot evaluate
        bad = np.flatnonzero((dx <= 0.0) | (dy <= 0.0))
        return OrderVerdict(OrderRelation.INCONCLUSIVE, [float(u[i + 1]) for i in bad[:16]], u)
    lhs = (x[2:] - 2.0 * x[1:-1] + x[:-2]) / dx
    rhs = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / dy
    viol = np.flatnonzero(lhs > rhs + tol)
    if viol.size == 0:
        return OrderVerdict(OrderRelation.HOLDS, [], u)
    return OrderVerdict(OrderRelation.FAILS, [float(u[i + 1]) for i in viol], u)


def _crossings(xs: np.ndarray, ms: np.ndarray, tol: float):
    """Count sign changes of ms with a dead band around zero.

    Leading and trailing near-zero runs are structural (both cdfs agree
    in the far tails) and are trimmed.  An interior zero-run flanked by
    opposite signs counts as one crossing located at the run; flanked
    by equal signs it is a touch, which makes the count ambiguous.
    Returns (count, crossing_positions, touch_positions).
    """
    sign = np.zeros(ms.size, dtype=int)
    sign[ms > tol] = 1
    sign[ms < -tol] = -1
    nz = np.flatnonzero(sign)
    if nz.size == 0:
        return 0, [], []
    crossings: list[float] = []
    touches: list[float] = []
    prev_sign = sign[nz[0]]
    prev_idx = nz[0]
    for idx in nz[1:]:
        s = sign[idx]
        if s != prev_sign:
            crossings.append(float(0.5 * (xs[prev_idx] + xs[idx])))
        elif idx > prev_idx + 1:
            # same sign on both flanks of a zero-run: a touch
            touches.append(float(0.5 * (xs[prev_idx] + xs[idx])))
        prev_sign = s
        prev_idx = idx
    return len(crossings), crossings, touches


def mean_mad_order(
    f_dist: DistributionSpec,
    g_dist: DistributionSpec,
    grid_size: int = DEFAULT_GRID_SIZE,
    tol: float = DEAD_BAND,
) -> OrderVerdict:
    """Check the mean/MAD standardized single-crossing ordering.

    Standardize both cdfs by (x - mean) / MAD and compare.  The
    ordering (g_dist at least as right-skewed) requires the two
    standardized cdfs to cross exactly once on each side of 0 and the
    difference G~ - F~ to be positive at 0.  Identical standardized
    cdfs count as holding (the relation is reflexive); ties at zero or
    ambiguous touches give "inconclusive".
    """
    _require_continuous(f_dist, g_dist)
    u = _u_grid(grid_size)
    mu_f, d_f = mean(f_dist), mad(f_dist)
    mu_g, d_g = mean(g_dist), mad(g_dist)
    xs = np.unique(np.concatenate([
        (quantile(f_dist, u) - mu_f) / d_f,
        (quantile(g_dist, u) - mu_g) / d_g,
    ]))
    ms = cdf(g_dist, d_g * xs + mu_g) - cdf(f_dist, d_f * xs + mu_f)
    if float(np.max(np.abs(ms))) <= tol:
        return OrderVerdict(OrderRelation.HOLDS, [], xs)
    m0 = cdf(g_dist, mu_g) - cdf(f_dist, mu_f)
    if abs(m0) <= tol:
        return OrderVerdict(OrderRelation.INCONCLUSIVE, [0.0], xs)
    neg = xs < 0.0
    pos = xs > 0.0
    n_neg, c_neg, t_neg = _crossings(xs[neg], ms[neg], tol)
    n_pos, c_pos, t_pos = _crossings(xs[pos], ms[pos], tol)
    if t_neg or t_pos:
        return OrderVerdict(OrderRelation.INCONCLUSIVE, t_neg + t_pos, xs)
    if n_neg == 1 and n_pos == 1 and m0 > tol:
        return OrderVerdict(OrderRelation.HOLDS, [], xs)
    witnesses = list(c_neg) + list(c_pos)
    if m0 < -tol:
        witnesses.append(0.0)
    for side_count, side_xs, side_ms in ((n_neg, xs[neg], ms[neg]), (n_pos, xs[pos], ms[pos])):
        if side_count == 0 and side_xs.size:
            witnesses.append(float(side_xs[int(np.argmax(np.abs(side_ms)))]))
    if not witnesses:
        witnesses.append(0.0)
    return OrderVerdict(OrderRelation.FAILS, witnesses, xs)


def expectile_order(
    f_source,
    g_source,
    grid_size: int = DEFAULT_GRID_SIZE,
    tol: float = DEAD_BAND,
) -> OrderVerdict:
    """Check e_F(a) <= e_G(a) across an alpha grid.

    Sources may be DistributionSpec or Sample; witnesses are the alpha
    values where the dominance fails beyond the dead band.
    """
    u = _u_grid(grid_size)

    def curve(source) -> np.ndarray:
        if isinstance(source, Sample):
            return np.array([empirical_expectile(source, float(a)) for a in u])
        return np.array([expectile(source, float(a)) for a in u])

    e_f = curve(f_source)
    e_g = curve(g_source)
    viol = np.flatnonzero(e_f > e_g + tol)
    if viol.size == 0:
        return OrderVerdict(OrderRelation.HOLDS, [], u)
    return OrderVerdict(OrderRelation.FAILS, [float(u[i]) for i in viol], u)

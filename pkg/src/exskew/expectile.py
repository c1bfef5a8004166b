"""Expectiles of parametric families and of finite samples.

The alpha-expectile of X is the unique zero of t -> E I_alpha(t, X)
where I_alpha(t, x) = alpha (x-t)_+ - (1-alpha) (t-x)_+.  Equivalently
it solves alpha E(X-t)_+ = (1-alpha) E(X-t)_-, which in stop-loss form
reads (2 alpha - 1) pi(t) = (1 - alpha)(t - mu).

For parametric families the equation is solved with safeguarded Newton
(the derivative of the criterion is available in closed form through
the cdf), to relative tolerance near machine precision.  For samples
the criterion is piecewise linear in t, so the zero is located exactly
between two order statistics instead of iterated.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .distributions import (
    DistributionSpec,
    Sample,
    _expand_bracket,
    cdf,
    mean,
    stop_loss,
)
from .errors import UnsupportedFamilyError

__all__ = [
    "expectile",
    "empirical_expectile",
    "expectile_derivative",
    "omega_ratio",
    "expectile_decomposition",
    "ExpectileDecomposition",
]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly inside (0, 1)")
    return alpha


def expectile(dist: DistributionSpec, alpha: float) -> float:
    """alpha-expectile of a parametric family.

    Solves (2a-1) pi(t) - (1-a)(t - mu) = 0 by Newton iteration kept
    inside a sign-change bracket; the criterion is strictly decreasing
    with derivative (1-2a)(1-F(t)) - (1-a), bounded away from zero.
    """
    alpha = _check_alpha(alpha)
    mu = mean(dist)
    if alpha == 0.5:
        return mu
    c = 2.0 * alpha - 1.0
    w = 1.0 - alpha

    def g(t: float) -> float:
        return c * stop_loss(dist, t) - w * (t - mu)

    def dg(t: float) -> float:
        return -c * (1.0 - cdf(dist, t)) - w

    lo, hi = _expand_bracket(dist, g)
    t = min(max(mu, lo), hi)
    for _ in range(200):
        gt = g(t)
        if gt == 0.0:
            return t
        if gt > 0.0:
            lo = t
        else:
            hi = t
        step = gt / dg(t)
        t_new = t - step
        if not lo < t_new < hi:
            t_new = 0.5 * (lo + hi)
        if abs(t_new - t) <= 4.0 * np.finfo(float).eps * max(1.0, abs(t_new)):
            return t_new
        t = t_new
    return t


def _expectile_sorted(x: np.ndarray, beta: float) -> float:
    """Exact zero of the sample expectile criterion, x sorted ascending.

    On [x_(j), x_(j+1)] the criterion is linear, so the root is the
    ratio of two weighted sums; no iteration and no tolerance.
    """
    n = x.size
    if n == 1:
        return float(x[0])
    wb = 1.0 - beta
    pref = np.cumsum(x)
    total = pref[-1]
    j = np.arange(1, n + 1, dtype=float)
    # criterion (times n) evaluated at each order statistic
    psi = beta * ((total - pref) - (n - j) * x) - wb * (j * x - pref)
    zeros = np.flatnonzero(psi == 0.0)
    if zeros.size:
        return float(x[zeros[0]])
    neg = np.flatnonzero(psi < 0.0)
    # psi starts >= 0 and ends < 0 in exact arithmetic; the two guards
    # below only absorb rounding on near-degenerate samples
    if neg.size == 0:
        return float(x[-1])
    k = int(neg[0])
    if k == 0:
        return float(x[0])
    below = pref[k - 1]
    num = beta * (total - below) + wb * below
    den = beta * (n - k) + wb * k
    return float(num / den)


def empirical_expectile(samp: Sample, alpha: float) -> float:
    """Sample alpha-expectile, located exactly between order statistics.

    Levels below 1/2 are evaluated through the reflection identity
    e_{-X}(a) = -e_X(1-a), so the pair of calls (-sample, a) and
    (sample, 1-a) execute the identical computation and the identity
    holds bit for bit.
    """
    alpha = _check_alpha(alpha)
    if alpha >= 0.5:
        return _expectile_sorted(samp.sorted_values, alpha)
    return -_expectile_sorted(-samp.sorted_values[::-1], 1.0 - alpha)


def expectile_derivative(dist: DistributionSpec, alpha: float) -> float:
    """d e_X(alpha) / d alpha for continuous families.

    Equals E|X - e(alpha)| / ((1-alpha) F(e) + alpha (1 - F(e))); the
    numerator is 2 pi(e) + e - mu.  Undefined for bernoulli.
    """
    if not dist.is_continuous:
        raise UnsupportedFamilyError("expectile_derivative requires a continuous family")
    alpha = _check_alpha(alpha)
    e = expectile(dist, alpha)
    mu = mean(dist)
    abs_moment = 2.0 * stop_loss(dist, e) + (e - mu)
    f = cdf(dist, e)
    return abs_moment / ((1.0 - alpha) * f + alpha * (1.0 - f))


def omega_ratio(dist: DistributionSpec, t: float) -> float:
    """Omega ratio E(X-t)_+ / E(X-t)_- with E(X-t)_- = t - mu + pi(t).

    At or below the essential infimum the denominator vanishes and the
    ratio is returned as +inf (the limiting value), a distinct signal
    callers can test for.
    """
    t = float(t)
    pi = stop_loss(dist, t)
    denom = t - mean(dist) + pi
    if denom <= 0.0:
        return math.inf
    return pi / denom


class ExpectileDecomposition(NamedTuple):
    location: float
    half_distance: float
    asymmetry: float


def expectile_decomposition(source, alpha: float) -> ExpectileDecomposition:
    """Split e(1-alpha) into location + spread + asymmetry, alpha < 1/2.

    location = e(1/2), half_distance = (e(1-a) - e(a)) / 2, and the
    asymmetry term (e(1-a) + e(a) - 2 e(1/2)) / 2 is computed as the
    residual so the three components recompose e(1-a) exactly.
    """
    alpha = float(alpha)
    if not 0.0 < alpha < 0.5:
        raise ValueError("expectile_decomposition: alpha must lie in (0, 1/2)")
    if isinstance(source, Sample):
        e_lo = empirical_expectile(source, alpha)
        e_hi = empirical_expectile(source, 1.0 - alpha)
        loc = empirical_expectile(source, 0.5)
    else:
        e_lo = expectile(source, alpha)
        e_hi = expectile(source, 1.0 - alpha)
        loc = mean(source)
    half = 0.5 * (e_hi - e_lo)
    # residual against the rounded partial sum, so the left-to-right sum
    # location + half_distance + asymmetry reproduces e(1-alpha) exactly
    asym = e_hi - (loc + half)
    return ExpectileDecomposition(loc, half, asym)

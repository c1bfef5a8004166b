"""Skewness measures and skewness functions.

Population and plug-in versions of:

  moment_skewness      standardized third central moment
  quantile_skewness    (q(1-a) + q(a) - 2 q(1/2)) / (q(1-a) - q(a))
  expectile_skewness   same shape with expectiles; optionally divided
                       by (1 - 2a), which maps its range onto (-1, 1)
  tajuddin_s3          2 F(mean) - 1, the limit of the normalized
                       expectile skewness as a -> 1/2
  l_skewness           third L-moment ratio
  skewness_function    t -> (pi(mu+t) - pi(mu-t)) / t + 1
  scaled_skewness_function  the same after measuring t in MAD units

plus the Omega-ratio product diagnostic and a bundled report type with
CSV and JSON serialization.  Every measure accepts either a
DistributionSpec or a Sample; sample versions substitute empirical
quantiles, expectiles and means.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .distributions import (
    DistributionSpec,
    Sample,
    cdf,
    mad,
    mean,
    quantile,
    stop_loss,
)
from .errors import DegenerateInputError
from .expectile import empirical_expectile, expectile, omega_ratio

__all__ = [
    "moment_skewness",
    "quantile_skewness",
    "expectile_skewness",
    "tajuddin_s3",
    "l_skewness",
    "skewness_function",
    "skewness_function_by_cdf",
    "scaled_skewness_function",
    "omega_product",
    "SkewnessReport",
    "build_report",
    "report_csv_rows",
    "write_report_csv",
    "report_json_dict",
    "write_report_json",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(128)
_GL_U = 0.5 * (_GL_NODES + 1.0)
_GL_W = 0.5 * _GL_WEIGHTS


def _check_half_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 0.5:
        raise ValueError("alpha must lie strictly inside (0, 1/2)")
    return alpha


def _mean_of(source) -> float:
    return source.mean if isinstance(source, Sample) else mean(source)


def _quantile_of(source, prob: float) -> float:
    if isinstance(source, Sample):
        return source.order_quantile(prob)
    return quantile(source, prob)


def _expectile_of(source, alpha: float) -> float:
    if isinstance(source, Sample):
        return empirical_expectile(source, alpha)
    return expectile(source, alpha)


def _stop_loss_of(source, t: float) -> float:
    if isinstance(source, Sample):
        return float(np.maximum(source.values - t, 0.0).mean())
    return stop_loss(source, t)


def _cdf_of(source, x: float) -> float:
    if isinstance(source, Sample):
        return source.ecdf(x)
    return cdf(source, x)


def _mad_of(source) -> float:
    return source.abs_dev_mean() if isinstance(source, Sample) else mad(source)


def moment_skewness(source) -> float:
    """Third central moment over variance^(3/2).

    Samples use 1/n central moments (no small-sample bias correction).
    student_t requires df > 3; constant samples are degenerate.
    """
    if isinstance(source, Sample):
        dev = source.values - source.mean
        m2 = float((dev * dev).mean())
        if m2 == 0.0:
            raise DegenerateInputError("moment_skewness: sample is constant")
        m3 = float((dev * dev * dev).mean())
        return m3 / m2**1.5
    fam, p = source.family, source.params
    if fam in ("normal", "uniform"):
        return 0.0
    if fam == "student_t":
        if p[0] <= 3.0:
            raise ValueError("moment_skewness: student_t requires df > 3")
        return 0.0
    if fam == "exponential":
        return 2.0
    if fam == "gamma":
        return 2.0 / math.sqrt(p[0])
    if fam == "lognormal":
        w = math.exp(p[1])
        return (w + 2.0) * math.sqrt(w - 1.0)
    # bernoulli
    q = p[0]
    return (1.0 - 2.0 * q) / math.sqrt(q * (1.0 - q))


def quantile_skewness(source, alpha: float) -> float:
    """Bowley-type quantile skewness at level alpha in (0, 1/2)."""
    alpha = _check_half_alpha(alpha)
    q_lo = _quantile_of(source, alpha)
    q_md = _quantile_of(source, 0.5)
    q_hi = _quantile_of(source, 1.0 - alpha)
    den = q_hi - q_lo
    if den == 0.0:
        raise DegenerateInputError("quantile_skewness: inter-quantile range is zero")
    return (q_hi + q_lo - 2.0 * q_md) / den


def expectile_skewness(source, alpha: float, normalized: bool = False) -> float:
    """Expectile skewness at level alpha in (0, 1/2).

    Raw form lies strictly inside (-(1-2a), 1-2a); the normalized form
    divides by (1 - 2a) and lies inside (-1, 1).
    """
    alpha = _check_half_alpha(alpha)
    e_lo = _expectile_of(source, alpha)
    e_hi = _expectile_of(source, 1.0 - alpha)
    mu = _mean_of(source)
    den = e_hi - e_lo
    if den == 0.0:
        raise DegenerateInputError("expectile_skewness: inter-expectile range is zero")
    val = (e_hi + e_lo - 2.0 * mu) / den
    if normalized:
        val /= 1.0 - 2.0 * alpha
    return val


def tajuddin_s3(source) -> float:
    """2 F(mean) - 1; for samples, ties at the mean count fully."""
    return 2.0 * _cdf_of(source, _mean_of(source)) - 1.0


def _order_statistic_means(dist: DistributionSpec) -> tuple[float, float, float]:
    """E X_(k:3) for k = 1, 2, 3 by 128-node Gauss-Legendre on (0, 1)."""
    q = quantile(dist, _GL_U)
    one_m = 1.0 - _GL_U
    e1 = float(np.sum(_GL_W * q * 3.0 * one_m * one_m))
    e2 = float(np.sum(_GL_W * q * 6.0 * _GL_U * one_m))
    e3 = float(np.sum(_GL_W * q * 3.0 * _GL_U * _GL_U))
    return e1, e2, e3


def l_skewness(source) -> float:
    """Third L-moment ratio tau3.

    Families integrate the three order-statistic means of a sample of
    size three; samples use the standard unbiased L-moment estimators
    (n >= 3 required).
    """
    if isinstance(source, Sample):
        n = source.n
        if n < 3:
            raise ValueError("l_skewness: at least three observations required")
        x = source.sorted_values
        j = np.arange(1, n + 1, dtype=float)
        b0 = source.mean
        b1 = float(np.sum((j - 1.0) * x)) / (n * (n - 1.0))
        b2 = float(np.sum((j - 1.0) * (j - 2.0) * x)) / (n * (n - 1.0) * (n - 2.0))
        l2 = 2.0 * b1 - b0
        l3 = 6.0 * b2 - 6.0 * b1 + b0
        if l2 == 0.0:
            raise DegenerateInputError("l_skewness: second L-moment is zero")
        return l3 / l2
    e1, e2, e3 = _order_statistic_means(source)
    den = e3 - e1
    if den == 0.0:
        raise DegenerateInputError("l_skewness: order-statistic range is zero")
    return (e3 - 2.0 * e2 + e1) / den


def skewness_function(source, t: float) -> float:
    """Stop-loss skewness function S(t) for t > 0.

    S(t) = (pi(mu+t) - pi(mu-t)) / t + 1, bounded by 1 in absolute
    value, positive where mass beyond mu+t outweighs mass below mu-t.
    """
    t = float(t)
    if not t > 0.0:
        raise ValueError("skewness_function: t must be positive")
    mu = _mean_of(source)
    return (_stop_loss_of(source, mu + t) - _stop_loss_of(source, mu - t)) / t + 1.0


def skewness_function_by_cdf(dist: DistributionSpec, t: float) -> float:
    """S(t) through its cdf representation (1/t) int_{mu-t}^{mu+t} F - 1.

    Quadrature-based alternative route used to cross-check the
    stop-loss form on parametric families.
    """
    t = float(t)
    if not t > 0.0:
        raise ValueError("skewness_function_by_cdf: t must be positive")
    mu = mean(dist)
    val, _ = integrate.quad(lambda z: cdf(dist, z), mu - t, mu + t, epsabs=1e-11, limit=400)
    return val / t - 1.0


def scaled_skewness_function(source, t: float) -> float:
    """S evaluated at t MAD units, invariant under positive affine maps."""
    t = float(t)
    if not t > 0.0:
        raise ValueError("scaled_skewness_function: t must be positive")
    delta = _mad_of(source)
    if delta == 0.0:
        raise DegenerateInputError("scaled_skewness_function: mean absolute deviation is zero")
    return skewness_function(source, t * delta)


def omega_product(dist: DistributionSpec, t: float) -> float:
    """Omega(mu+t) * Omega(mu-t) for t > 0; >= 1 characterizes right skew.

    Errors when either factor is undefined (threshold at or below the
    essential infimum makes the shortfall vanish).
    """
    t = float(t)
    if not t > 0.0:
        raise ValueError("omega_product: t must be positive")
    mu = mean(dist)
    hi = omega_ratio(dist, mu + t)
    lo = omega_ratio(dist, mu - t)
    if not (math.isfinite(hi) and math.isfinite(lo)):
        raise ValueError("omega_product: Omega undefined at mu - t (threshold below the support)")
    return hi * lo


@dataclass
class SkewnessReport:
    """All measures for one source, evaluated on alpha and t grids.

    Measures that are undefined for the source (for example the moment
    skewness of a heavy-tailed family) are None, with the reason kept
    in notes.
    """

    source_id: str
    gamma_m: float | None
    b2: dict[float, float]
    s2_raw: dict[float, float]
    s2: dict[float, float]
    s3: float
    tau3: float | None
    s_function: dict[float, float]
    s_function_scaled: dict[float, float]
    notes: dict[str, str] = field(default_factory=dict)


def build_report(source, alphas, ts, source_id: str | None = None) -> SkewnessReport:
    """Evaluate every measure; degenerate input raises, undefined measures are noted."""
    if source_id is None:
        source_id = source.label if isinstance(source, DistributionSpec) else f"sample(n={source.n})"
    if isinstance(source, Sample) and source.is_degenerate():
        raise DegenerateInputError("build_report: sample is constant")
    notes: dict[str, str] = {}
    try:
        gamma_m = moment_skewness(source)
    except ValueError as exc:
        if isinstance(exc, DegenerateInputError):
            raise
        gamma_m = None
        notes["gamma_m"] = str(exc)
    try:
        tau3 = l_skewness(source)
    except ValueError as exc:
        if isinstance(exc, DegenerateInputError):
            raise
        tau3 = None
        notes["tau3"] = str(exc)
    b2 = {}
    s2_raw = {}
    s2 = {}
    for a in alphas:
        a = float(a)
        b2[a] = quantile_skewness(source, a)
        raw = expectile_skewness(source, a)
        s2_raw[a] = raw
        s2[a] = raw / (1.0 - 2.0 * a)
    s_function = {}
    s_function_scaled = {}
    for t in ts:
        t = float(t)
        s_function[t] = skewness_function(source, t)
        s_function_scaled[t] = scaled_skewness_function(source, t)
    return SkewnessReport(
        source_id=source_id,
        gamma_m=gamma_m,
        b2=b2,
        s2_raw=s2_raw,
        s2=s2,
        s3=tajuddin_s3(source),
        tau3=tau3,
        s_function=s_function,
        s_function_scaled=s_function_scaled,
        notes=notes,
    )


def report_csv_rows(report: SkewnessReport) -> list[tuple[str, str, str]]:
    """Long-format rows (measure, parameter, value), reals at 12 significant digits."""
    rows: list[tuple[str, str, str]] = []

    def fmt(v: float) -> str:
        return f"{v:.12g}"

    if report.gamma_m is not None:
        rows.append(("gamma_m", "", fmt(report.gamma_m)))
    for a, v in sorted(report.b2.items()):
        rows.append(("b2", fmt(a), fmt(v)))
    for a, v in sorted(report.s2_raw.items()):
        rows.append(("s2_raw", fmt(a), fmt(v)))
    for a, v in sorted(report.s2.items()):
        rows.append(("s2", fmt(a), fmt(v)))
    rows.append(("s3", "", fmt(report.s3)))
    if report.tau3 is not None:
        rows.append(("tau3", "", fmt(report.tau3)))
    for t, v in sorted(report.s_function.items()):
        rows.append(("s_function", fmt(t), fmt(v)))
    for t, v in sorted(report.s_function_scaled.items()):
        rows.append(("s_function_scaled", fmt(t), fmt(v)))
    return rows


def write_report_csv(report: SkewnessReport, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["measure", "parameter", "value"])
    writer.writerows(report_csv_rows(report))


def report_json_dict(report: SkewnessReport) -> dict:
    """JSON-ready dict; floats keep full binary-faithful precision."""
    def keyed(d: dict[float, float]) -> dict[str, float]:
        return {repr(k): v for k, v in sorted(d.items())}

    return {
        "source": report.source_id,
        "gamma_m": report.gamma_m,
        "b2": keyed(report.b2),
        "s2_raw": keyed(report.s2_raw),
        "s2": keyed(report.s2),
        "s3": report.s3,
        "tau3": report.tau3,
        "s_function": keyed(report.s_function),
        "s_function_scaled": keyed(report.s_function_scaled),
        "notes": dict(report.notes),
    }


def write_report_json(report: SkewnessReport, fh) -> None:
    json.dump(report_json_dict(report), fh, indent=2)
    fh.write("\n")

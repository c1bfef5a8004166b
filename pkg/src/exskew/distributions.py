"""Parametric families and empirical samples.

This module supplies the primitives everything else is built on: cdf,
quantile, mean, mean absolute deviation, the stop-loss transform
pi(t) = E(X - t)_+ and reproducible sampling.  Seven families are
supported: normal, gamma, lognormal, student_t, exponential, uniform
and bernoulli.  All of them admit closed-form stop-loss transforms, so
mad() never needs quadrature; a survival-function quadrature fallback
is still provided as an independent cross-check.

Sampling is inverse-cdf over a Philox counter-based generator.  Uniform
variates are taken from the lattice (k + 0.5) / 2**53, which is strictly
inside (0, 1), so streams are reproducible across platforms and never
hit a quantile at 0 or 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy import special

from .errors import NumericalError

__all__ = [
    "DistributionSpec",
    "Sample",
    "normal",
    "gamma",
    "lognormal",
    "student_t",
    "exponential",
    "uniform",
    "bernoulli",
    "from_params",
    "cdf",
    "quantile",
    "mean",
    "mad",
    "stop_loss",
    "stop_loss_quadrature",
    "support",
    "sample",
    "FAMILIES",
]

FAMILIES = ("normal", "gamma", "lognormal", "student_t", "exponential", "uniform", "bernoulli")

# (parameter names, validator) per family; validators raise ValueError.
_TWO_POW_53 = float(1 << 53)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def _validate(family: str, params: tuple) -> None:
    if family == "normal":
        m, s = params
        _require(math.isfinite(m), "normal: mean must be finite")
        _require(s > 0 and math.isfinite(s), "normal: sd must be positive and finite")
    elif family == "gamma":
        k, th = params
        _require(k > 0 and math.isfinite(k), "gamma: shape must be positive and finite")
        _require(th > 0 and math.isfinite(th), "gamma: scale must be positive and finite")
    elif family == "lognormal":
        m, v = params
        _require(math.isfinite(m), "lognormal: log_mean must be finite")
        _require(v > 0 and math.isfinite(v), "lognormal: log_var must be positive and finite")
    elif family == "student_t":
        (nu,) = params
        _require(nu > 1 and math.isfinite(nu), "student_t: df must exceed 1 (finite mean required)")
    elif family == "exponential":
        (lam,) = params
        _require(lam > 0 and math.isfinite(lam), "exponential: rate must be positive and finite")
    elif family == "uniform":
        a, b = params
        _require(math.isfinite(a) and math.isfinite(b), "uniform: endpoints must be finite")
        _require(a < b, "uniform: lower must be strictly below upper")
    elif family == "bernoulli":
        (p,) = params
        _require(0.0 < p < 1.0, "bernoulli: p must lie strictly inside (0, 1)")
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass(frozen=True)
class DistributionSpec:
    """Immutable description of a distribution: family tag plus parameters.

    Parameter order per family:
      normal(mean, sd), gamma(shape, scale), lognormal(log_mean, log_var),
      student_t(df), exponential(rate), uniform(lower, upper), bernoulli(p).
    Construction validates the family-specific domain constraints.
    """

    family: str
    params: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        _validate(self.family, self.params)

    @property
    def label(self) -> str:
        names = _PARAM_NAMES[self.family]
        inner = ",".join(f"{k}={v:g}" for k, v in zip(names, self.params))
        return f"{self.family}:{inner}"

    @property
    def is_continuous(self) -> bool:
        return self.family != "bernoulli"


_PARAM_NAMES = {
    "normal": ("mean", "sd"),
    "gamma": ("shape", "scale"),
    "lognormal": ("log_mean", "log_var"),
    "student_t": ("df",),
    "exponential": ("rate",),
    "uniform": ("lower", "upper"),
    "bernoulli": ("p",),
}


# defaults for keyword construction; None marks a required parameter
_PARAM_DEFAULTS = {
    "normal": {"mean": 0.0, "sd": 1.0},
    "gamma": {"shape": None, "scale": 1.0},
    "lognormal": {"log_mean": 0.0, "log_var": None},
    "student_t": {"df": None},
    "exponential": {"rate": 1.0},
    "uniform": {"lower": 0.0, "upper": 1.0},
    "bernoulli": {"p": None},
}


def from_params(family: str, params: dict) -> DistributionSpec:
    """Build a spec from keyword parameters, applying family defaults.

    Unknown keys and missing required keys raise ValueError; this is
    the single interpreter behind the CLI grammar and the JSON config.
    """
    defaults = _PARAM_DEFAULTS.get(family)
    if defaults is None:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(
            f"{family}: unknown parameter(s) {sorted(unknown)}; accepts {sorted(defaults)}")
    values = []
    for name in _PARAM_NAMES[family]:
        if name in params:
            values.append(float(params[name]))
        elif defaults[name] is not None:
            values.append(defaults[name])
        else:
            raise ValueError(f"{family}: parameter {name!r} is required")
    return DistributionSpec(family, tuple(values))


def normal(mean: float = 0.0, sd: float = 1.0) -> DistributionSpec:
    return DistributionSpec("normal", (mean, sd))


def gamma(shape: float, scale: float = 1.0) -> DistributionSpec:
    return DistributionSpec("gamma", (shape, scale))


def lognormal(log_mean: float = 0.0, log_var: float = 1.0) -> DistributionSpec:
    """Lognormal with given mean and variance of log X."""
    return DistributionSpec("lognormal", (log_mean, log_var))


def student_t(df: float) -> DistributionSpec:
    return DistributionSpec("student_t", (df,))


def exponential(rate: float = 1.0) -> DistributionSpec:
    return DistributionSpec("exponential", (rate,))


def uniform(lower: float = 0.0, upper: float = 1.0) -> DistributionSpec:
    return DistributionSpec("uniform", (lower, upper))


def bernoulli(p: float) -> DistributionSpec:
    return DistributionSpec("bernoulli", (p,))


def _as_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


def cdf(dist: DistributionSpec, x):
    """F(x) = P(X <= x); right-continuous, vectorized over x."""
    arr, scalar = _as_array(x)
    fam, p = dist.family, dist.params
    if fam == "normal":
        out = special.ndtr((arr - p[0]) / p[1])
    elif fam == "gamma":
        out = special.gammainc(p[0], np.maximum(arr, 0.0) / p[1])
        out = np.where(arr > 0.0, out, 0.0)
    elif fam == "lognormal":
        tau = math.sqrt(p[1])
        with np.errstate(divide="ignore", invalid="ignore"):
            out = special.ndtr((np.log(np.maximum(arr, 1e-300)) - p[0]) / tau)
        out = np.where(arr > 0.0, out, 0.0)
    elif fam == "student_t":
        out = special.stdtr(p[0], arr)
    elif fam == "exponential":
        out = np.where(arr > 0.0, -np.expm1(-p[0] * np.maximum(arr, 0.0)), 0.0)
    elif fam == "uniform":
        a, b = p
        out = np.clip((arr - a) / (b - a), 0.0, 1.0)
    else:  # bernoulli
        out = np.where(arr < 0.0, 0.0, np.where(arr < 1.0, 1.0 - p[0], 1.0))
    return _ret(out, scalar)


def quantile(dist: DistributionSpec, prob):
    """Generalized inverse F^{-1}(p) for p strictly inside (0, 1)."""
    arr, scalar = _as_array(prob)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise ValueError("quantile: probability must lie strictly inside (0, 1)")
    fam, p = dist.family, dist.params
    if fam == "normal":
        out = p[0] + p[1] * special.ndtri(arr)
    elif fam == "gamma":
        out = p[1] * special.gammaincinv(p[0], arr)
    elif fam == "lognormal":
        out = np.exp(p[0] + math.sqrt(p[1]) * special.ndtri(arr))
    elif fam == "student_t":
        out = special.stdtrit(p[0], arr)
    elif fam == "exponential":
        out = -np.log1p(-arr) / p[0]
    elif fam == "uniform":
        out = p[0] + arr * (p[1] - p[0])
    else:  # bernoulli: F^{-1}(u) = 0 for u <= 1-p, else 1
        out = np.where(arr <= 1.0 - p[0], 0.0, 1.0)
    return _ret(out, scalar)


def mean(dist: DistributionSpec) -> float:
    fam, p = dist.family, dist.params
    if fam == "normal":
        return p[0]
    if fam == "gamma":
        return p[0] * p[1]
    if fam == "lognormal":
        return math.exp(p[0] + 0.5 * p[1])
    if fam == "student_t":
        return 0.0
    if fam == "exponential":
        return 1.0 / p[0]
    if fam == "uniform":
        return 0.5 * (p[0] + p[1])
    return p[0]  # bernoulli


def support(dist: DistributionSpec) -> tuple[float, float]:
    """Closure of the support as (lower, upper), possibly infinite."""
    fam, p = dist.family, dist.params
    if fam in ("normal", "student_t"):
        return (-math.inf, math.inf)
    if fam in ("gamma", "lognormal", "exponential"):
        return (0.0, math.inf)
    if fam == "uniform":
        return (p[0], p[1])
    return (0.0, 1.0)  # bernoulli


def _t_pdf(nu: float, t: float) -> float:
    logf = (
        special.gammaln(0.5 * (nu + 1.0))
        - special.gammaln(0.5 * nu)
        - 0.5 * math.log(nu * math.pi)
        - 0.5 * (nu + 1.0) * math.log1p(t * t / nu)
    )
    return math.exp(logf)


def stop_loss(dist: DistributionSpec, t: float) -> float:
    """Stop-loss transform pi(t) = E(X - t)_+ in closed form."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("stop_loss: threshold must be finite")
    fam, p = dist.family, dist.params
    if fam == "normal":
        m, s = p
        z = (t - m) / s
        return s * (math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi) - z * special.ndtr(-z))
    if fam == "gamma":
        k, th = p
        if t <= 0.0:
            return k * th - t
        x = t / th
        return k * th * special.gammaincc(k + 1.0, x) - t * special.gammaincc(k, x)
    if fam == "lognormal":
        m, v = p
        mu = math.exp(m + 0.5 * v)
        if t <= 0.0:
            return mu - t
        tau = math.sqrt(v)
        z = (math.log(t) - m) / tau
        return mu * special.ndtr(tau - z) - t * special.ndtr(-z)
    if fam == "student_t":
        nu = p[0]
        return (nu + t * t) / (nu - 1.0) * _t_pdf(nu, t) - t * special.stdtr(nu, -t)
    if fam == "exponential":
        lam = p[0]
        if t <= 0.0:
            return 1.0 / lam - t
        return math.exp(-lam * t) / lam
    if fam == "uniform":
        a, b = p
        if t <= a:
            return 0.5 * (a + b) - t
        if t >= b:
            return 0.0
        return (b - t) ** 2 / (2.0 * (b - a))
    # bernoulli
    q = p[0]
    if t < 0.0:
        return q - t
    if t < 1.0:
        return q * (1.0 - t)
    return 0.0


def stop_loss_quadrature(dist: DistributionSpec, t: float) -> float:
    """pi(t) via adaptive quadrature of the survival function.

    Independent of the closed forms above; intended as a cross-check and
    as the generic fallback for hypothetical new families.  Absolute
    tolerance 1e-10.
    """
    t = float(t)
    lo, hi = support(dist)
    head = max(lo - t, 0.0)  # survival is identically 1 below the support
    a = max(t, lo)
    b = hi if math.isfinite(hi) else math.inf
    if a >= b:
        return 0.0
    val, _ = integrate.quad(lambda z: 1.0 - cdf(dist, z), a, b, epsabs=1e-10, limit=400)
    return head + val


def mad(dist: DistributionSpec) -> float:
    """Mean absolute deviation about the mean, E|X - EX|."""
    fam, p = dist.family, dist.params
    if fam == "normal":
        return p[1] * math.sqrt(2.0 / math.pi)
    if fam == "exponential":
        return 2.0 / (math.e * p[0])
    if fam == "uniform":
        return 0.25 * (p[1] - p[0])
    if fam == "bernoulli":
        return 2.0 * p[0] * (1.0 - p[0])
    # gamma, lognormal, student_t: E|X - mu| = 2 pi(mu), closed form above
    return 2.0 * stop_loss(dist, mean(dist))


def sample(dist: DistributionSpec, n: int, seed: int) -> "Sample":
    """Draw n values by inverse cdf over a Philox stream keyed by seed.

    The same (dist, n, seed) always yields the identical sample.  Seeds
    up to 2**128 - 1 are accepted (the simulation harness derives
    128-bit keys from a 64-bit master seed and a replication index).
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("sample: n must be a positive integer")
    seed = int(seed)
    if seed < 0 or seed >= 1 << 128:
        raise ValueError("sample: seed must lie in [0, 2**128)")
    gen = np.random.Generator(np.random.Philox(key=seed))
    u = (gen.integers(0, 1 << 53, size=int(n)).astype(float) + 0.5) / _TWO_POW_53
    return Sample(quantile(dist, u))


class Sample:
    """Finite real sample with cached order statistics.

    Caches a sorted copy, the mean, and prefix sums of the sorted values
    so expectile and quantile queries avoid repeated O(n log n) work.
    Arrays are read-only; treat instances as immutable.
    """

    __slots__ = ("values", "sorted_values", "prefix_sums", "mean", "n")

    def __init__(self, values) -> None:
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1:
            arr = arr.reshape(-1)
        if arr.size < 1:
            raise ValueError("Sample: at least one observation required")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Sample: observations must be finite reals")
        arr = arr.copy()
        srt = np.sort(arr)
        arr.flags.writeable = False
        srt.flags.writeable = False
        pref = np.cumsum(srt)
        pref.flags.writeable = False
        self.values = arr
        self.sorted_values = srt
        self.prefix_sums = pref
        self.mean = float(arr.mean())
        self.n = int(arr.size)

    @classmethod
    def from_file(cls, path) -> "Sample":
        """Read one real per line; '#' starts a comment, blank lines skipped.

        Any other malformed line raises ValueError naming the 1-based
        line number.
        """
        values = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                try:
                    v = float(text)
                except ValueError:
                    raise ValueError(f"{path}: line {lineno}: not a real number: {text!r}") from None
                if not math.isfinite(v):
                    raise ValueError(f"{path}: line {lineno}: value must be finite: {text!r}")
                values.append(v)
        if not values:
            raise ValueError(f"{path}: no observations found")
        return cls(values)

    def __len__(self) -> int:
        return self.n

    def is_degenerate(self) -> bool:
        return self.sorted_values[0] == self.sorted_values[-1]

    def ecdf(self, x: float) -> float:
        """Right-continuous empirical cdf; ties at x count fully."""
        return float(np.searchsorted(self.sorted_values, x, side="right")) / self.n

    def order_quantile(self, prob: float) -> float:
        """Generalized-inverse sample quantile, the ceil(n p)-th order statistic."""
        prob = float(prob)
        if not 0.0 < prob < 1.0:
            raise ValueError("order_quantile: probability must lie strictly inside (0, 1)")
        idx = int(math.ceil(self.n * prob))
        idx = min(max(idx, 1), self.n)
        return float(self.sorted_values[idx - 1])

    def abs_dev_mean(self) -> float:
        """Sample mean absolute deviation about the sample mean."""
        return float(np.abs(self.values - self.mean).mean())


def _expand_bracket(dist: DistributionSpec, g) -> tuple[float, float]:
    """Bracket for the decreasing expectile equation g: g(lo) > 0 > g(hi)."""
    lo_s, hi_s = support(dist)
    eps = 1e-12
    for _ in range(4):
        lo = lo_s if math.isfinite(lo_s) else quantile(dist, eps)
        hi = hi_s if math.isfinite(hi_s) else quantile(dist, 1.0 - eps)
        if g(lo) >= 0.0 and g(hi) <= 0.0:
            return lo, hi
        eps *= 1e-3
        if eps < 1e-300:
            break
    raise NumericalError("expectile: failed to bracket the first-order condition")

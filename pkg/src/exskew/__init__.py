"""Expectile-based skewness: measures, orderings, inference, simulation.

The package centers on the normalized expectile skewness of a
distribution or sample, the stop-loss skewness function, and the
classical comparison measures (moment, quantile and L-skewness), with
asymptotic confidence intervals, skewness-order diagnostics, and a
reproducible Monte Carlo harness for comparing the estimators.
"""

from .distributions import (
    DistributionSpec,
    Sample,
    bernoulli,
    cdf,
    exponential,
    from_params,
    gamma,
    lognormal,
    mad,
    mean,
    normal,
    quantile,
    sample,
    stop_loss,
    stop_loss_quadrature,
    student_t,
    support,
    uniform,
)
from .errors import DegenerateInputError, NumericalError, UnsupportedFamilyError
from .expectile import (
    ExpectileDecomposition,
    empirical_expectile,
    expectile,
    expectile_decomposition,
    expectile_derivative,
    omega_ratio,
)
from .inference import (
    CurvePoint,
    IntervalEstimate,
    SymmetryBand,
    a_hat,
    eta_hat,
    normal_quantile,
    s2_confidence_interval,
    s2_curve,
    s2_symmetry_band,
    sfunc_confidence_interval,
    sfunc_curve,
    sfunc_symmetry_band,
    sigma_alpha_sq_hat,
    sigma_t_sq_hat,
)
from .orders import (
    OrderRelation,
    OrderVerdict,
    convex_transform_order,
    expectile_order,
    mean_mad_order,
)
from .simulate import (
    ExperimentConfig,
    ExperimentTable,
    MeasureSpec,
    run,
    theory_curves,
    true_value,
)
from .skewness import (
    SkewnessReport,
    build_report,
    expectile_skewness,
    l_skewness,
    moment_skewness,
    omega_product,
    quantile_skewness,
    scaled_skewness_function,
    skewness_function,
    skewness_function_by_cdf,
    tajuddin_s3,
)

__version__ = "0.1.0"

__all__ = [
    "DistributionSpec", "Sample", "normal", "gamma", "lognormal", "student_t",
    "exponential", "uniform", "bernoulli", "from_params", "cdf", "quantile",
    "mean", "mad", "stop_loss", "stop_loss_quadrature", "support", "sample",
    "DegenerateInputError", "UnsupportedFamilyError", "NumericalError",
    "expectile", "empirical_expectile", "expectile_derivative", "omega_ratio",
    "expectile_decomposition", "ExpectileDecomposition",
    "moment_skewness", "quantile_skewness", "expectile_skewness", "tajuddin_s3",
    "l_skewness", "skewness_function", "skewness_function_by_cdf",
    "scaled_skewness_function", "omega_product", "SkewnessReport", "build_report",
    "OrderRelation", "OrderVerdict", "convex_transform_order", "mean_mad_order",
    "expectile_order",
    "IntervalEstimate", "SymmetryBand", "CurvePoint", "eta_hat", "a_hat",
    "sigma_alpha_sq_hat", "sigma_t_sq_hat", "s2_confidence_interval",
    "s2_symmetry_band", "sfunc_confidence_interval", "sfunc_symmetry_band",
    "s2_curve", "sfunc_curve", "normal_quantile",
    "MeasureSpec", "ExperimentConfig", "ExperimentTable", "true_value", "run",
    "theory_curves",
    "__version__",
]

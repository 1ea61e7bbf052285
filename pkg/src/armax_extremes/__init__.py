"""Multivariate max-autoregressive (ARMAX) processes.

Simulation of d-variate ARMAX recursions with configurable innovation
margins and copulas, their stationary laws, extremal indices, lag-r tail
dependence coefficients, and estimators for the autoregression
coefficients — plus a CLI that emits seeded, reproducible CSV/JSON runs.
"""

from .armax import (
    InitPolicy,
    ProcessConfig,
    SamplePath,
    StationarityResult,
    apply_recursion,
    check_stationarity,
    normalized_level,
    simulate_path,
    stationary_joint_cdf,
    stationary_joint_logcdf,
    stationary_marginal_cdf,
    stationary_marginal_logcdf,
    stationary_marginal_quantile,
)
from .copulas import (
    CopulaSpec,
    DerivedCopula,
    ValidityReport,
    copula_eval,
    copula_logcdf,
    copula_sample,
    derived_copula_eval,
    derived_copula_logcdf,
    derived_copula_validity,
    extremal_coefficient,
    extremal_coefficient_derived,
)
from .errors import (
    ArmaxError,
    ConfigurationError,
    NumericLimitError,
    UndefinedResultError,
)
from .estimation import (
    EstimateReport,
    LebedevEstimate,
    MomentEstimate,
    asymptotic_variance,
    build_estimate_report,
    confidence_interval,
    cross_moment,
    estimate_c_davis_resnick,
    estimate_c_lebedev,
    estimate_c_moment,
    hill_tail_index,
)
from .extremal import (
    ExtremalIndexResult,
    empirical_extremal_index_runs,
    empirical_mv_extremal_index,
    marginal_extremal_index,
    process_mv_extremal_index,
    theoretical_mv_extremal_index,
)
from .margins import (
    DomainTag,
    MarginSpec,
    attraction_domain,
    margin_cdf,
    margin_quantile,
    margin_sample,
    right_endpoint,
)
from .taildep import (
    LagTdcDiagnostics,
    TailDepResult,
    classify_tail_regime,
    empirical_eta,
    empirical_tdc,
    eta_bounds_within_series,
    lag_tdc_diagnostics,
    tdc_bounds,
    theoretical_lag_tdc,
)

__version__ = "0.1.0"

__all__ = [
    "ArmaxError",
    "ConfigurationError",
    "NumericLimitError",
    "UndefinedResultError",
    "MarginSpec",
    "DomainTag",
    "margin_cdf",
    "margin_quantile",
    "margin_sample",
    "attraction_domain",
    "right_endpoint",
    "CopulaSpec",
    "DerivedCopula",
    "ValidityReport",
    "copula_logcdf",
    "copula_eval",
    "copula_sample",
    "derived_copula_logcdf",
    "derived_copula_eval",
    "derived_copula_validity",
    "extremal_coefficient",
    "extremal_coefficient_derived",
    "InitPolicy",
    "ProcessConfig",
    "SamplePath",
    "StationarityResult",
    "simulate_path",
    "apply_recursion",
    "check_stationarity",
    "stationary_marginal_cdf",
    "stationary_marginal_logcdf",
    "stationary_marginal_quantile",
    "stationary_joint_cdf",
    "stationary_joint_logcdf",
    "normalized_level",
    "ExtremalIndexResult",
    "marginal_extremal_index",
    "theoretical_mv_extremal_index",
    "process_mv_extremal_index",
    "empirical_extremal_index_runs",
    "empirical_mv_extremal_index",
    "TailDepResult",
    "LagTdcDiagnostics",
    "theoretical_lag_tdc",
    "lag_tdc_diagnostics",
    "tdc_bounds",
    "empirical_tdc",
    "empirical_eta",
    "eta_bounds_within_series",
    "classify_tail_regime",
    "MomentEstimate",
    "LebedevEstimate",
    "EstimateReport",
    "estimate_c_moment",
    "estimate_c_lebedev",
    "estimate_c_davis_resnick",
    "cross_moment",
    "asymptotic_variance",
    "confidence_interval",
    "hill_tail_index",
    "build_estimate_report",
    "__version__",
]

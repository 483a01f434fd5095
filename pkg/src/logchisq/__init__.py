"""Cumulants and moments of log chi-square variates, Edgeworth and
Cornish-Fisher approximants for weighted sums of logs and products of
chi-squares, and the Monte Carlo harness that checks the formulas."""

from .cumulants import (
    add_cumulants,
    binomial_coefficient,
    cumulants_to_moments,
    moments_to_cumulants,
    scale_cumulants,
)
from .distributions import (
    ProductSpec,
    WeightedSumSpec,
    chisq_raw_moments,
    doubly_noncentral_f_density,
    naive_prod_approximant,
    prod_cdf,
    prod_density,
    prod_density_naive,
    prod_quantile,
    sumlog_approximant,
    sumlog_cdf,
    sumlog_cumulants,
    sumlog_density,
    sumlog_quantile,
)
from .edgeworth import (
    EdgeworthApproximant,
    StandardizedCumulants,
    cornish_fisher_quantile,
    edgeworth_cdf,
    edgeworth_density,
    hermite_probabilist,
    standardize_cumulants,
)
from .errors import DomainError, TruncationError
from .logmoments import (
    DEFAULT_POLICY,
    LogNcChiSqParams,
    TruncationPolicy,
    central_log_cumulants,
    central_log_moments,
    log_chisq_cgf,
    noncentral_log_cumulants,
    noncentral_log_mean,
    noncentral_log_moments,
)
from .sampling import RngState, sample_chisq, sample_prod, sample_sumlog
from .specfun import digamma, log_factorial, log_gamma, polygamma
from .verify import (
    DensityComparisonReport,
    MomentRow,
    VerificationReport,
    compare_densities,
    verify_moments,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "TruncationError",
    "log_gamma",
    "digamma",
    "polygamma",
    "log_factorial",
    "binomial_coefficient",
    "cumulants_to_moments",
    "moments_to_cumulants",
    "scale_cumulants",
    "add_cumulants",
    "LogNcChiSqParams",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "log_chisq_cgf",
    "central_log_cumulants",
    "central_log_moments",
    "noncentral_log_moments",
    "noncentral_log_cumulants",
    "noncentral_log_mean",
    "EdgeworthApproximant",
    "StandardizedCumulants",
    "hermite_probabilist",
    "standardize_cumulants",
    "edgeworth_density",
    "edgeworth_cdf",
    "cornish_fisher_quantile",
    "WeightedSumSpec",
    "ProductSpec",
    "sumlog_cumulants",
    "sumlog_approximant",
    "sumlog_density",
    "sumlog_cdf",
    "sumlog_quantile",
    "prod_density",
    "prod_cdf",
    "prod_quantile",
    "naive_prod_approximant",
    "prod_density_naive",
    "chisq_raw_moments",
    "doubly_noncentral_f_density",
    "RngState",
    "sample_chisq",
    "sample_sumlog",
    "sample_prod",
    "MomentRow",
    "VerificationReport",
    "DensityComparisonReport",
    "verify_moments",
    "compare_densities",
    "__version__",
]

"""User-facing distribution families.

Two families share one engine: the weighted sum of logs of independent
(non-)central chi-squares, Y = sum_i w_i log X_i, approximated by an
Edgeworth expansion of its cumulants (which add across independent terms
after per-term scaling by w_i^j); and the product of chi-squares to
powers, Z = prod_i X_i^{p_i} = exp(Y), obtained from the sum-of-logs
density by the change of variables f_Z(z) = f_Y(log z)/z.

Also included is the product-scale baseline that expands the product's
own raw moments directly (no log transform). Its raw series goes negative
for even modest factor counts; it is kept for comparison and accepts only
central factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .cumulants import add_cumulants, moments_to_cumulants, scale_cumulants
from .edgeworth import (
    EdgeworthApproximant,
    cornish_fisher_quantile,
    edgeworth_cdf,
    edgeworth_density,
)
from .errors import DomainError
from .logmoments import (
    LogNcChiSqParams,
    TruncationPolicy,
    noncentral_log_cumulants,
)

__all__ = [
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
]


def _normalized_terms(terms, what: str) -> tuple:
    out = []
    for term in terms:
        if len(term) != 3:
            raise DomainError(f"each {what} must be a (weight, df, ncp) triple")
        w, df, ncp = (float(v) for v in term)
        if not math.isfinite(w):
            raise DomainError(f"{what} weight must be finite, got {w!r}")
        LogNcChiSqParams(df, ncp)  # validates df/ncp
        out.append((w, df, ncp))
    if not out:
        raise DomainError(f"at least one {what} is required")
    return tuple(out)


@dataclass(frozen=True)
class WeightedSumSpec:
    """Y = sum_i w_i log X_i with independent X_i ~ chi-square(df_i, ncp_i).

    ``terms`` is a non-empty sequence of (weight, df, ncp) triples.
    """

    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalized_terms(self.terms, "term"))

    @classmethod
    def from_lists(cls, weights, dfs, ncps=None) -> "WeightedSumSpec":
        dfs = list(dfs)
        weights = list(weights) if weights is not None else [1.0] * len(dfs)
        ncps = list(ncps) if ncps is not None else [0.0] * len(dfs)
        if not (len(weights) == len(dfs) == len(ncps)):
            raise DomainError("weights, dfs and ncps must have equal lengths")
        return cls(tuple(zip(weights, dfs, ncps)))


@dataclass(frozen=True)
class ProductSpec:
    """Z = prod_i X_i^{p_i} with independent X_i ~ chi-square(df_i, ncp_i).

    ``factors`` is a non-empty sequence of (power, df, ncp) triples.
    """

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", _normalized_terms(self.factors, "factor"))

    @classmethod
    def from_lists(cls, powers, dfs, ncps=None) -> "ProductSpec":
        return cls(WeightedSumSpec.from_lists(powers, dfs, ncps).terms)

    def to_weighted_sum(self) -> WeightedSumSpec:
        return WeightedSumSpec(self.factors)


def sumlog_cumulants(spec: WeightedSumSpec, order_max=6,
                     policy: TruncationPolicy | None = None) -> np.ndarray:
    """Cumulants of Y = sum_i w_i log X_i: per-term log cumulants scaled by
    w_i^j and added across the independent terms."""
    total = None
    for w, df, ncp in spec.terms:
        kappa = scale_cumulants(
            noncentral_log_cumulants(LogNcChiSqParams(df, ncp), order_max, policy), w
        )
        total = kappa if total is None else add_cumulants(total, kappa)
    return total


def sumlog_approximant(spec: WeightedSumSpec, order_max=6,
                       policy: TruncationPolicy | None = None) -> EdgeworthApproximant:
    """Edgeworth approximant of the sum of logs (full-line support)."""
    return EdgeworthApproximant(sumlog_cumulants(spec, order_max, policy))


def sumlog_density(spec: WeightedSumSpec, x, order_max=6, clamp: bool = True,
                   log: bool = False, policy: TruncationPolicy | None = None):
    apx = sumlog_approximant(spec, order_max, policy)
    pdf = edgeworth_density(apx, x, clamp=clamp)
    if log:
        with np.errstate(divide="ignore"):
            return np.log(pdf)
    return pdf


def sumlog_cdf(spec: WeightedSumSpec, x, order_max=6,
               policy: TruncationPolicy | None = None):
    return edgeworth_cdf(sumlog_approximant(spec, order_max, policy), x)


def sumlog_quantile(spec: WeightedSumSpec, p, order_max=6,
                    policy: TruncationPolicy | None = None):
    return cornish_fisher_quantile(sumlog_approximant(spec, order_max, policy), p)


def _require_positive_points(z, what: str) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z)) or np.any(z <= 0.0):
        raise DomainError(f"{what} requires evaluation points > 0")
    return z


def prod_density(spec: ProductSpec, z, order_max=6, clamp: bool = True,
                 log: bool = False, policy: TruncationPolicy | None = None):
    """Density of Z = prod_i X_i^{p_i} at z > 0 via change of variables
    from the sum-of-logs density: f_Z(z) = f_Y(log z)/z."""
    zv = _require_positive_points(z, "prod_density")
    scalar = np.asarray(z).ndim == 0
    apx = sumlog_approximant(spec.to_weighted_sum(), order_max, policy)
    y = np.log(np.atleast_1d(zv))
    pdf = edgeworth_density(apx, y, clamp=clamp)
    if log:
        with np.errstate(divide="ignore"):
            out = np.log(pdf) - y
    else:
        out = pdf / np.atleast_1d(zv)
    return float(out[0]) if scalar else out


def prod_cdf(spec: ProductSpec, z, order_max=6,
             policy: TruncationPolicy | None = None):
    """CDF of the product at z > 0 (monotone transform of the log-scale CDF)."""
    zv = _require_positive_points(z, "prod_cdf")
    return sumlog_cdf(spec.to_weighted_sum(), np.log(zv), order_max, policy)


def prod_quantile(spec: ProductSpec, p, order_max=6,
                  policy: TruncationPolicy | None = None):
    """Quantile of the product: exp of the sum-of-logs quantile (quantiles
    commute with monotone transforms)."""
    return np.exp(sumlog_quantile(spec.to_weighted_sum(), p, order_max, policy))


def chisq_raw_moments(df, order_max) -> np.ndarray:
    """Raw moments mu'_k = 2^k Gamma(k + df/2)/Gamma(df/2), k = 1..order_max,
    computed in log space. Raises OverflowError if a moment exceeds the
    double-precision range."""
    df = float(df)
    if not math.isfinite(df) or df <= 0.0:
        raise DomainError(f"df must be finite and > 0, got {df!r}")
    if order_max != int(order_max) or int(order_max) < 1:
        raise DomainError(f"order_max must be a positive integer, got {order_max!r}")
    order_max = int(order_max)
    half = df / 2.0
    base = specfun.log_gamma(half)
    logs = np.array(
        [k * math.log(2.0) + specfun.log_gamma(k + half) - base
         for k in range(1, order_max + 1)]
    )
    if np.any(logs >= math.log(np.finfo(float).max)):
        raise OverflowError(f"chi-square raw moments overflow for df={df}, "
                            f"order_max={order_max}")
    return np.exp(logs)


def naive_prod_approximant(dfs, order_max=4) -> EdgeworthApproximant:
    """Product-scale baseline: expand the product's own raw moments
    (elementwise product of the per-factor moment sequences) on support
    (0, inf). Central factors only."""
    dfs = [float(v) for v in dfs]
    if not dfs:
        raise DomainError("at least one df is required")
    log_mu = np.zeros(int(order_max))
    for df in dfs:
        with np.errstate(over="raise"):
            log_mu = log_mu + np.log(chisq_raw_moments(df, order_max))
    if np.any(log_mu >= math.log(np.finfo(float).max)):
        raise OverflowError("product raw moments overflow")
    kappa = moments_to_cumulants(np.exp(log_mu))
    return EdgeworthApproximant(kappa, support=(0.0, math.inf))


def prod_density_naive(dfs, z, order_max=4, clamp: bool = True,
                       log: bool = False):
    """Baseline density of prod_i X_i (central, powers all 1) from the
    product-scale Edgeworth expansion. Pass clamp=False to see the raw
    series, which goes negative for even a handful of factors."""
    zv = _require_positive_points(z, "prod_density_naive")
    apx = naive_prod_approximant(dfs, order_max)
    pdf = edgeworth_density(apx, zv, clamp=clamp)
    if log:
        with np.errstate(divide="ignore"):
            return np.log(pdf)
    return pdf


def doubly_noncentral_f_density(x, df1, df2, ncp1=0.0, ncp2=0.0, order_max=6,
                                clamp: bool = True,
                                policy: TruncationPolicy | None = None):
    """Density of the (doubly non-central) F ratio (X1/df1)/(X2/df2).

    log F = log X1 - log X2 + log(df2/df1); the constant shifts kappa_1
    only (higher cumulants are shift-invariant), after which the product
    machinery applies unchanged.
    """
    spec = WeightedSumSpec(((1.0, df1, ncp1), (-1.0, df2, ncp2)))
    kappa = sumlog_cumulants(spec, order_max, policy)
    kappa[0] += math.log(df2) - math.log(df1)
    apx = EdgeworthApproximant(kappa)
    xv = _require_positive_points(x, "doubly_noncentral_f_density")
    scalar = np.asarray(x).ndim == 0
    out = edgeworth_density(apx, np.log(np.atleast_1d(xv)), clamp=clamp)
    out = out / np.atleast_1d(xv)
    return float(out[0]) if scalar else out

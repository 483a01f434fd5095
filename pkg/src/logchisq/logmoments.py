"""Cumulants and raw moments of the log of central and non-central
chi-square variates.

For a central chi-square with df degrees of freedom, y = log(x) has the
cumulant generating function

    K(t) = t log 2 + log Gamma(df/2 + t) - log Gamma(df/2),

so kappa_1 = log 2 + psi(df/2) and kappa_j = psi^(j-1)(df/2) for j > 1.

The non-central case has no closed-form log-cumulants; its density is a
Poisson(ncp/2) mixture of central chi-squares with df + 2j degrees of
freedom, so each raw moment of the log is the matching Poisson-weighted
sum of central log moments. The mixture is summed outward from the
Poisson mode, with log-space weights, until both the tail mass and the
per-order term contributions fall below the truncation tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .cumulants import cumulants_to_moments, moments_to_cumulants
from .errors import DomainError, TruncationError

__all__ = [
    "MAX_ORDER",
    "LogNcChiSqParams",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "log_chisq_cgf",
    "central_log_cumulants",
    "central_log_moments",
    "noncentral_log_moments",
    "noncentral_log_cumulants",
    "noncentral_log_mean",
]

MAX_ORDER = 32

_LOG_TWO = math.log(2.0)


@dataclass(frozen=True)
class LogNcChiSqParams:
    """Degrees of freedom and non-centrality of one chi-square factor."""

    df: float
    ncp: float = 0.0

    def __post_init__(self):
        df = float(self.df)
        ncp = float(self.ncp)
        if not math.isfinite(df) or df <= 0.0:
            raise DomainError(f"df must be finite and > 0, got {self.df!r}")
        if not math.isfinite(ncp) or ncp < 0.0:
            raise DomainError(f"ncp must be finite and >= 0, got {self.ncp!r}")
        object.__setattr__(self, "df", df)
        object.__setattr__(self, "ncp", ncp)


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for the Poisson mixture sum.

    The sum stops once the covered Poisson mass is >= 1 - tail_mass_tol
    (established through geometric bounds on the unsummed tails, so the
    test stays reliable for large non-centrality) and the newest term on
    every open frontier contributes less than tail_mass_tol of the running
    total at every requested order.
    """

    tail_mass_tol: float = 1e-14
    max_terms: int = 10000

    def __post_init__(self):
        tol = float(self.tail_mass_tol)
        if not (0.0 < tol < 1.0):
            raise DomainError(
                f"tail_mass_tol must be in (0, 1), got {self.tail_mass_tol!r}"
            )
        if int(self.max_terms) < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms!r}")
        object.__setattr__(self, "tail_mass_tol", tol)
        object.__setattr__(self, "max_terms", int(self.max_terms))


DEFAULT_POLICY = TruncationPolicy()


def _check_order(order_max) -> int:
    if order_max != int(order_max):
        raise DomainError(f"order_max must be an integer, got {order_max!r}")
    order_max = int(order_max)
    if not (1 <= order_max <= MAX_ORDER):
        raise DomainError(f"order_max must be in [1, {MAX_ORDER}], got {order_max}")
    return order_max


def log_chisq_cgf(df, t) -> float:
    """Cumulant generating function of log(x), x ~ chi-square(df), at t.

    Defined for t > -df/2; K(0) = 0 exactly.
    """
    df = float(df)
    if not math.isfinite(df) or df <= 0.0:
        raise DomainError(f"df must be finite and > 0, got {df!r}")
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"t must be finite, got {t!r}")
    if t <= -df / 2.0:
        raise DomainError(f"t must exceed -df/2 = {-df / 2.0}, got {t}")
    half = df / 2.0
    return t * _LOG_TWO + specfun.log_gamma(half + t) - specfun.log_gamma(half)


def central_log_cumulants(df, order_max) -> np.ndarray:
    """Cumulants kappa_1..kappa_order_max of log(x), x ~ chi-square(df)."""
    df = float(df)
    if not math.isfinite(df) or df <= 0.0:
        raise DomainError(f"df must be finite and > 0, got {df!r}")
    order_max = _check_order(order_max)
    half = df / 2.0
    kappa = np.empty(order_max)
    kappa[0] = _LOG_TWO + specfun.digamma(half)
    for j in range(2, order_max + 1):
        kappa[j - 1] = specfun.polygamma(j - 1, half)
    return kappa


def central_log_moments(df, order_max) -> np.ndarray:
    """Raw moments of log(x), x ~ chi-square(df), via the cumulant recursion."""
    return cumulants_to_moments(central_log_cumulants(df, order_max))


class _CompensatedSum:
    """Neumaier-compensated accumulation of a fixed-width vector."""

    __slots__ = ("_total", "_comp")

    def __init__(self, width: int):
        self._total = np.zeros(width)
        self._comp = np.zeros(width)

    def add(self, term: np.ndarray) -> None:
        t = self._total + term
        big = np.abs(self._total) >= np.abs(term)
        self._comp += np.where(big, (self._total - t) + term, (term - t) + self._total)
        self._total = t

    @property
    def value(self) -> np.ndarray:
        return self._total + self._comp


def _poisson_mixture_sum(half_ncp: float, width: int, policy: TruncationPolicy, summand):
    """sum_j Poisson(j; half_ncp) * summand(j) for vector-valued summand.

    Expands outward from the Poisson mode so that large half_ncp does not
    underflow the early weights. The neglected mass is controlled through
    geometric tail bounds built from the frontier weights (the weight
    ratios w_{j+1}/w_j = half_ncp/(j+1) are < 1 above the mode and > 1
    below it, giving sum bounds in both directions); an accumulated-mass
    test would be limited by rounding of the weights themselves. Raises
    TruncationError if the stopping criteria are not met within
    policy.max_terms terms.
    """
    tol = policy.tail_mass_tol
    log_half = math.log(half_ncp)

    total = _CompensatedSum(width)
    tiny = np.finfo(float).tiny

    def add_term(j: int):
        w = math.exp(-half_ncp + j * log_half - specfun.log_factorial(j))
        term = w * summand(j)
        total.add(term)
        return w, np.abs(term)

    mode = int(half_ncp)
    up_next = mode
    down_next = mode - 1
    up_w = down_w = 0.0
    up_contrib = down_contrib = None
    terms = 0

    while True:
        if terms >= policy.max_terms:
            raise TruncationError(
                f"Poisson mixture did not converge within {policy.max_terms} terms "
                f"(half_ncp={half_ncp}, tail_mass_tol={tol})"
            )
        up_j = up_next
        up_w, up_contrib = add_term(up_j)
        up_next += 1
        terms += 1
        if down_next >= 0 and terms < policy.max_terms:
            down_j = down_next
            down_w, down_contrib = add_term(down_j)
            down_next -= 1
            terms += 1

        # Unsummed upper tail: w_{J+1} = w_J h/(J+1), later ratios <= h/(J+2).
        rho = half_ncp / (up_j + 2.0)
        tail = up_w * (half_ncp / (up_j + 1.0)) / (1.0 - rho)
        if down_next >= 0:
            # Unsummed lower tail: ratios w_{j-1}/w_j = j/h <= down_j/h < 1.
            r = down_j / half_ncp
            tail += down_w * r / (1.0 - r)
        if tail > tol:
            continue
        scale = tol * np.maximum(np.abs(total.value), tiny)
        if np.any(up_contrib > scale):
            continue
        if down_next >= 0 and (down_contrib is None or np.any(down_contrib > scale)):
            continue
        return total.value


def noncentral_log_moments(params: LogNcChiSqParams, order_max=6,
                           policy: TruncationPolicy | None = None) -> np.ndarray:
    """Raw moments of log(x), x ~ non-central chi-square(df, ncp).

    ncp = 0 short-circuits to the central formulas; otherwise each moment
    is the Poisson(ncp/2)-weighted sum of central log moments at df + 2j.
    """
    order_max = _check_order(order_max)
    if policy is None:
        policy = DEFAULT_POLICY
    if params.ncp == 0.0:
        return central_log_moments(params.df, order_max)
    df = params.df
    return _poisson_mixture_sum(
        params.ncp / 2.0,
        order_max,
        policy,
        lambda j: central_log_moments(df + 2.0 * j, order_max),
    )


def noncentral_log_cumulants(params: LogNcChiSqParams, order_max=6,
                             policy: TruncationPolicy | None = None) -> np.ndarray:
    """Cumulants of log(x), x ~ non-central chi-square(df, ncp).

    The mixture is not cumulant-additive, so this goes through the raw
    moments and converts back.
    """
    return moments_to_cumulants(noncentral_log_moments(params, order_max, policy))


def noncentral_log_mean(params: LogNcChiSqParams,
                        policy: TruncationPolicy | None = None) -> float:
    """E[log(x)], x ~ non-central chi-square(df, ncp), by direct series:

        E[y] = log 2 + sum_j e^{-ncp/2} (ncp/2)^j / j! * psi(j + df/2).

    Kept separate from the general moment path as a cross-check of the
    same series in reorganized form. Note: the published closed form in
    Moser (2004) omits the log(2) summand; the series here includes it and
    is validated against Monte Carlo sampling in the test suite.
    """
    if policy is None:
        policy = DEFAULT_POLICY
    half_df = params.df / 2.0
    if params.ncp == 0.0:
        return _LOG_TWO + specfun.digamma(half_df)
    series = _poisson_mixture_sum(
        params.ncp / 2.0,
        1,
        policy,
        lambda j: np.array([specfun.digamma(j + half_df)]),
    )
    return _LOG_TWO + series[0]

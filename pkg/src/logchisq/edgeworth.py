"""Edgeworth density/CDF approximants and Cornish-Fisher quantiles driven
by a raw-cumulant sequence.

With z = (x - kappa_1)/sqrt(kappa_2) and standardized cumulants
lambda_j = kappa_j / kappa_2^{j/2}, the order-(m-2) Edgeworth density is

    f(x) = phi(z)/sd * [1 + sum_{s=1}^{m-2} sum_{partitions of s}
                        He_{s+2r}(z) prod_i (lambda_{i+2}/(i+2)!)^{k_i} / k_i!],

where the inner sum runs over non-negative integers (k_1..k_s) with
sum i*k_i = s and r = sum k_i. The matching CDF replaces He_{s+2r} with
-He_{s+2r-1} under phi and adds the Gaussian base Phi(z); each correction
term integrates to zero, so the unclamped density always integrates to 1.

Terms are grouped by partitions in powers of the asymptotic parameter
(rather than plain Gram-Charlier ordering), which behaves better for
skewed targets. Since the correction polynomial can dip below zero, the
density is clamped at 0 by default; pass clamp=False to observe the raw
series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import DomainError

__all__ = [
    "MAX_HERMITE_ORDER",
    "StandardizedCumulants",
    "EdgeworthApproximant",
    "hermite_probabilist",
    "standardize_cumulants",
    "edgeworth_density",
    "edgeworth_cdf",
    "cornish_fisher_quantile",
]

MAX_HERMITE_ORDER = 64

# A sequence of m cumulants drives Hermite orders up to 3(m - 2); cap m so
# the polynomial orders stay within MAX_HERMITE_ORDER.
_MAX_CUMULANTS = 22

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

# |z| beyond this is far outside any usable expansion range; phi(z) has
# underflowed to 0 long before, so the density/CDF are pinned there to
# avoid overflowing the Hermite recurrence.
_Z_CUTOFF = 40.0


def _norm_pdf(z):
    return np.exp(-0.5 * z * z) / _SQRT_TWO_PI


def hermite_probabilist(n, z):
    """Probabilists' Hermite polynomial He_n(z) by the three-term recurrence
    He_{n+1} = z He_n - n He_{n-1}. Accepts scalar or array z; n <= 64.
    """
    if n != int(n):
        raise DomainError(f"hermite order must be an integer, got {n!r}")
    n = int(n)
    if not (0 <= n <= MAX_HERMITE_ORDER):
        raise DomainError(f"hermite order must be in [0, {MAX_HERMITE_ORDER}], got {n}")
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = z.copy()
    for k in range(1, n):
        prev, cur = cur, z * cur - k * prev
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class StandardizedCumulants:
    """Mean, standard deviation and scale-free cumulants lambda_j.

    ``lam[j]`` holds lambda_j = kappa_j / kappa_2^{j/2} for j >= 3;
    entries 0..2 are unused and left at zero.
    """

    mean: float
    sd: float
    lam: np.ndarray


def standardize_cumulants(kappa) -> StandardizedCumulants:
    kappa = np.asarray(kappa, dtype=float)
    if kappa.ndim != 1 or kappa.size < 2:
        raise DomainError("at least two cumulants are required")
    if not np.all(np.isfinite(kappa)):
        raise DomainError("cumulants must be finite")
    if kappa[1] <= 0.0:
        raise DomainError(f"kappa_2 must be > 0, got {kappa[1]!r}")
    m = kappa.size
    sd = math.sqrt(kappa[1])
    lam = np.zeros(m + 1)
    for j in range(3, m + 1):
        lam[j] = kappa[j - 1] / kappa[1] ** (j / 2.0)
    if not np.all(np.isfinite(lam)):
        raise DomainError("standardized cumulants overflow; rescale the input")
    return StandardizedCumulants(mean=float(kappa[0]), sd=sd, lam=lam)


def _partitions(s: int):
    """Yield the multiplicity vectors of the partitions of s as lists of
    (part_size, multiplicity) with distinct part sizes."""

    def rec(remaining, max_part):
        if remaining == 0:
            yield []
            return
        for i in range(min(remaining, max_part), 0, -1):
            for k in range(remaining // i, 0, -1):
                for rest in rec(remaining - i * k, i - 1):
                    yield [(i, k)] + rest

    yield from rec(s, s)


def _hermite_coefficients(lam: np.ndarray, m: int) -> np.ndarray:
    """Coefficient c_n of He_n in the correction series (c_0 = 0; the
    Gaussian base contributes the leading 1 separately)."""
    n_max = 3 * (m - 2) if m > 2 else 0
    coef = np.zeros(n_max + 1)
    for s in range(1, m - 1):
        for part in _partitions(s):
            r = sum(k for _, k in part)
            term = 1.0
            for i, k in part:
                term *= (lam[i + 2] / math.factorial(i + 2)) ** k / math.factorial(k)
            coef[s + 2 * r] += term
    return coef


class EdgeworthApproximant:
    """Immutable Edgeworth/Cornish-Fisher approximant built from cumulants.

    Parameters
    ----------
    kappa : array-like
        Raw cumulants kappa_1..kappa_m, 1-indexed by order; m >= 2 and
        kappa_2 > 0. At most 22 cumulants (Hermite orders above 64 are not
        supported).
    support : (float, float)
        Interval outside which the density is 0 and the CDF is pinned to
        {0, 1}. Defaults to the whole real line.
    """

    def __init__(self, kappa, support=(-math.inf, math.inf)):
        kappa = np.asarray(kappa, dtype=float)
        if kappa.ndim != 1 or kappa.size < 2:
            raise DomainError("EdgeworthApproximant needs at least two cumulants")
        if kappa.size > _MAX_CUMULANTS:
            raise DomainError(
                f"EdgeworthApproximant supports at most {_MAX_CUMULANTS} cumulants"
            )
        lo, hi = float(support[0]), float(support[1])
        if not lo < hi:
            raise DomainError(f"support must satisfy lo < hi, got {support!r}")
        std = standardize_cumulants(kappa)
        self.kappa = kappa.copy()
        self.kappa.setflags(write=False)
        self.support = (lo, hi)
        self.order = kappa.size
        self.std = std
        self._coef = _hermite_coefficients(std.lam, self.order)

    @property
    def mean(self) -> float:
        return self.std.mean

    @property
    def sd(self) -> float:
        return self.std.sd

    def __repr__(self):
        return (
            f"EdgeworthApproximant(order={self.order}, mean={self.mean:.6g}, "
            f"sd={self.sd:.6g}, support={self.support})"
        )


def _correction_sums(apx: EdgeworthApproximant, z: np.ndarray):
    """Return (sum_n c_n He_n(z), sum_n c_n He_{n-1}(z)) in one pass."""
    coef = apx._coef
    dens = np.zeros_like(z)
    cdf = np.zeros_like(z)
    prev = np.ones_like(z)  # He_0
    cur = z.copy()          # He_1
    for n in range(1, coef.size):
        if coef[n] != 0.0:
            dens += coef[n] * cur
            cdf += coef[n] * prev
        prev, cur = cur, z * cur - n * prev
    return dens, cdf


def edgeworth_density(apx: EdgeworthApproximant, x, clamp: bool = True):
    """Edgeworth density at x (scalar or array).

    Returns 0 outside the support. By default negative series values are
    clamped to 0 (without renormalizing); pass clamp=False for the raw
    series, e.g. to observe where the expansion goes negative.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    z = (np.atleast_1d(x) - apx.mean) / apx.sd
    zc = np.clip(z, -_Z_CUTOFF, _Z_CUTOFF)
    corr, _ = _correction_sums(apx, zc)
    pdf = _norm_pdf(zc) / apx.sd * (1.0 + corr)
    pdf[np.abs(z) > _Z_CUTOFF] = 0.0
    lo, hi = apx.support
    pdf[(np.atleast_1d(x) < lo) | (np.atleast_1d(x) > hi)] = 0.0
    if clamp:
        pdf = np.maximum(pdf, 0.0)
    return float(pdf[0]) if scalar else pdf


def edgeworth_cdf(apx: EdgeworthApproximant, x):
    """Edgeworth CDF at x, clamped to [0, 1] and pinned to {0, 1} outside
    the support."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xv = np.atleast_1d(x)
    z = (xv - apx.mean) / apx.sd
    zc = np.clip(z, -_Z_CUTOFF, _Z_CUTOFF)
    _, corr = _correction_sums(apx, zc)
    cdf = ndtr(zc) - _norm_pdf(zc) * corr
    np.clip(cdf, 0.0, 1.0, out=cdf)
    lo, hi = apx.support
    cdf[xv <= lo] = 0.0
    cdf[xv >= hi] = 1.0
    return float(cdf[0]) if scalar else cdf


def cornish_fisher_quantile(apx: EdgeworthApproximant, p):
    """Cornish-Fisher quantile at probability p in (0, 1).

    Adjusts the Gaussian quantile z_p with the classical terms through the
    cumulants available, up to order 5:

        w = z + lam3 (z^2-1)/6
              + lam4 (z^3-3z)/24 - lam3^2 (2z^3-5z)/36
              + lam5 (z^4-6z^2+3)/120 - lam3 lam4 (z^4-5z^2+2)/24
              + lam3^3 (12z^4-53z^2+17)/324.

    Cumulants above order 5 are deliberately ignored: the higher
    adjustments are numerically fragile. The result kappa_1 + sd * w is
    clipped to the support.
    """
    p = np.asarray(p, dtype=float)
    scalar = p.ndim == 0
    pv = np.atleast_1d(p)
    if np.any(~np.isfinite(pv)) or np.any(pv <= 0.0) or np.any(pv >= 1.0):
        raise DomainError("probabilities must lie strictly inside (0, 1)")
    z = ndtri(pv)
    z2 = z * z
    z3 = z2 * z
    z4 = z2 * z2
    lam = apx.std.lam
    w = z.copy()
    if apx.order >= 3:
        l3 = lam[3]
        w += l3 * (z2 - 1.0) / 6.0
    if apx.order >= 4:
        l4 = lam[4]
        w += l4 * (z3 - 3.0 * z) / 24.0 - l3 * l3 * (2.0 * z3 - 5.0 * z) / 36.0
    if apx.order >= 5:
        l5 = lam[5]
        w += (
            l5 * (z4 - 6.0 * z2 + 3.0) / 120.0
            - l3 * l4 * (z4 - 5.0 * z2 + 2.0) / 24.0
            + l3**3 * (12.0 * z4 - 53.0 * z2 + 17.0) / 324.0
        )
    q = apx.mean + apx.sd * w
    np.clip(q, apx.support[0], apx.support[1], out=q)
    return float(q[0]) if scalar else q

"""Conversions between raw-cumulant and raw-moment sequences, plus the
combination rules cumulants obey under scaling and independent addition.

Sequences are 1-indexed by order in the contract: ``values[j - 1]`` holds
the order-j entry (kappa_j for cumulants, mu'_j for raw moments). All
functions accept any 1-d array-like of finite floats and return a fresh
``numpy.ndarray``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "binomial_coefficient",
    "cumulants_to_moments",
    "moments_to_cumulants",
    "scale_cumulants",
    "add_cumulants",
]

_MAX_BINOMIAL_N = 64


def _as_sequence(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise DomainError(f"{name} must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must contain only finite values")
    return arr


def binomial_coefficient(n, k) -> float:
    """C(n, k) as a float, exact within the 53-bit mantissa, for 0 <= k <= n <= 64."""
    if n != int(n) or k != int(k):
        raise DomainError("binomial_coefficient: n and k must be integers")
    n, k = int(n), int(k)
    if not (0 <= k <= n <= _MAX_BINOMIAL_N):
        raise DomainError(
            f"binomial_coefficient: need 0 <= k <= n <= {_MAX_BINOMIAL_N}, "
            f"got n={n}, k={k}"
        )
    return float(math.comb(n, k))


def cumulants_to_moments(kappa) -> np.ndarray:
    """Raw moments mu'_1..mu'_m from raw cumulants kappa_1..kappa_m.

    Uses the recursion
        mu'_n = kappa_n + sum_{m=1}^{n-1} C(n-1, m-1) kappa_m mu'_{n-m},
    so in particular mu'_1 = kappa_1.
    """
    kappa = _as_sequence(kappa, "kappa")
    m = kappa.size
    mu = np.empty(m)
    for n in range(1, m + 1):
        total = kappa[n - 1]
        for j in range(1, n):
            total += math.comb(n - 1, j - 1) * kappa[j - 1] * mu[n - j - 1]
        mu[n - 1] = total
    return mu


def moments_to_cumulants(mu) -> np.ndarray:
    """Raw cumulants from raw moments; exact algebraic inverse of
    :func:`cumulants_to_moments`.
    """
    mu = _as_sequence(mu, "mu")
    m = mu.size
    kappa = np.empty(m)
    for n in range(1, m + 1):
        total = mu[n - 1]
        for j in range(1, n):
            total -= math.comb(n - 1, j - 1) * kappa[j - 1] * mu[n - j - 1]
        kappa[n - 1] = total
    return kappa


def scale_cumulants(kappa, w) -> np.ndarray:
    """Cumulants of w*Y from cumulants of Y: entry j is scaled by w**j."""
    kappa = _as_sequence(kappa, "kappa")
    w = float(w)
    if not math.isfinite(w):
        raise DomainError(f"scale_cumulants: weight must be finite, got {w!r}")
    return kappa * w ** np.arange(1, kappa.size + 1)


def add_cumulants(a, b) -> np.ndarray:
    """Elementwise sum of two cumulant sequences of equal length.

    Valid for independent summands; independence is the caller's contract.
    """
    a = _as_sequence(a, "a")
    b = _as_sequence(b, "b")
    if a.size != b.size:
        raise DomainError(
            f"add_cumulants: length mismatch ({a.size} vs {b.size})"
        )
    return a + b

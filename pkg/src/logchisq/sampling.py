"""Exact random variate generation for the Monte Carlo oracles.

Central chi-squares are drawn as 2 * Gamma(df/2) using the
Marsaglia-Tsang rejection sampler with its quartic squeeze (shapes >= 1)
plus the u^{1/a} boost for shapes below 1. Non-central draws use the
Poisson-mixture representation: J ~ Poisson(ncp/2), then a central
chi-square with df + 2J degrees of freedom. This works for any real
df > 0 and exercises the same mixture identity the moment formulas rely
on.

Streams are PCG64 generators behind :class:`RngState`: a fixed seed and
call sequence reproduce draws bit-for-bit, and ``split`` derives child
streams that are independent for testing purposes.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import ProductSpec, WeightedSumSpec
from .errors import DomainError

__all__ = ["RngState", "sample_chisq", "sample_sumlog", "sample_prod"]


class RngState:
    """Seedable, splittable random stream.

    Parameters
    ----------
    seed : int
        Decimal seed in [0, 2^64). Identical seeds give identical streams.
    """

    def __init__(self, seed, _sequence=None):
        if _sequence is not None:
            self._sequence = _sequence
        else:
            if seed != int(seed):
                raise DomainError(f"seed must be an integer, got {seed!r}")
            seed = int(seed)
            if not (0 <= seed < 2**64):
                raise DomainError(f"seed must be in [0, 2**64), got {seed}")
            self._sequence = np.random.SeedSequence(seed)
        self.seed = seed
        self.generator = np.random.Generator(np.random.PCG64(self._sequence))

    def split(self, n=2) -> list["RngState"]:
        """Derive n child streams; consumes spawn state, so repeated calls
        yield fresh children."""
        if n != int(n) or int(n) < 1:
            raise DomainError(f"split count must be a positive integer, got {n!r}")
        return [RngState(self.seed, _sequence=seq) for seq in self._sequence.spawn(int(n))]

    def __repr__(self):
        return f"RngState(seed={self.seed}, key={self._sequence.spawn_key})"


def _check_count(n) -> int:
    if n != int(n) or int(n) < 1:
        raise DomainError(f"draw count must be a positive integer, got {n!r}")
    return int(n)


def _gamma_rejection(gen: np.random.Generator, shape: float, n: int) -> np.ndarray:
    """Marsaglia-Tsang sampler for Gamma(shape, 1), shape >= 1."""
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(n)
    filled = 0
    while filled < n:
        m = int((n - filled) * 1.1) + 16
        x = gen.standard_normal(m)
        v = (1.0 + c * x) ** 3
        u = gen.random(m)
        x2 = x * x
        squeeze = u < 1.0 - 0.0331 * x2 * x2
        with np.errstate(divide="ignore", invalid="ignore"):
            full_test = np.log(u) < 0.5 * x2 + d * (1.0 - v + np.log(v))
        accept = (v > 0.0) & (squeeze | full_test)
        vals = d * v[accept]
        take = min(vals.size, n - filled)
        out[filled:filled + take] = vals[:take]
        filled += take
    return out


def _standard_gamma(gen: np.random.Generator, shape: float, n: int) -> np.ndarray:
    if shape >= 1.0:
        return _gamma_rejection(gen, shape, n)
    # Gamma(a) = Gamma(a + 1) * U^{1/a}; 1 - random() keeps U in (0, 1] so
    # draws stay strictly positive.
    boost = (1.0 - gen.random(n)) ** (1.0 / shape)
    return _gamma_rejection(gen, shape + 1.0, n) * boost


def sample_chisq(rng: RngState, df, ncp=0.0, n=1) -> np.ndarray:
    """n independent draws from chi-square(df, ncp); strictly positive."""
    params_df = float(df)
    params_ncp = float(ncp)
    if not math.isfinite(params_df) or params_df <= 0.0:
        raise DomainError(f"df must be finite and > 0, got {df!r}")
    if not math.isfinite(params_ncp) or params_ncp < 0.0:
        raise DomainError(f"ncp must be finite and >= 0, got {ncp!r}")
    n = _check_count(n)
    gen = rng.generator
    if params_ncp == 0.0:
        return 2.0 * _standard_gamma(gen, params_df / 2.0, n)
    mix = gen.poisson(params_ncp / 2.0, n)
    out = np.empty(n)
    for j in np.unique(mix):
        idx = mix == j
        out[idx] = 2.0 * _standard_gamma(gen, params_df / 2.0 + j, int(idx.sum()))
    return out


def sample_sumlog(rng: RngState, spec: WeightedSumSpec, n) -> np.ndarray:
    """n draws of Y = sum_i w_i log X_i, factors independent."""
    n = _check_count(n)
    total = np.zeros(n)
    for w, df, ncp in spec.terms:
        total += w * np.log(sample_chisq(rng, df, ncp, n))
    return total


def sample_prod(rng: RngState, spec: ProductSpec, n) -> np.ndarray:
    """n draws of Z = prod_i X_i^{p_i}; strictly positive."""
    return np.exp(sample_sumlog(rng, spec.to_weighted_sum(), n))

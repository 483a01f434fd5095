"""Monte Carlo verification harness.

Two report types: an empirical-vs-theoretical moment table for the log of
a (non-)central chi-square, with per-order standard errors and z-scores;
and a density-quality comparison for the product of central chi-squares,
scoring the product-scale baseline expansion and the log-space expansion
against an empirical histogram by integrated absolute error (IAE).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .distributions import ProductSpec, prod_density, prod_density_naive
from .errors import DomainError
from .logmoments import LogNcChiSqParams, TruncationPolicy, noncentral_log_moments
from .sampling import RngState, sample_chisq, sample_prod

__all__ = [
    "MomentRow",
    "VerificationReport",
    "DensityComparisonReport",
    "verify_moments",
    "compare_densities",
]


@dataclass(frozen=True)
class MomentRow:
    order: int
    empirical: float
    theoretical: float
    std_error: float
    z_score: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    """Empirical vs theoretical moment table; passes iff every |z| <= threshold."""

    rows: tuple
    config: dict
    passed: bool

    def as_dict(self) -> dict:
        return {
            "config": dict(self.config, passed=self.passed),
            "rows": [asdict(r) for r in self.rows],
        }


def verify_moments(params: LogNcChiSqParams, n, order_max=6, seed=0,
                   threshold=5.0, policy: TruncationPolicy | None = None,
                   theoretical=None) -> VerificationReport:
    """Compare empirical moments of log draws against the series formulas.

    Standard errors use sqrt((m_2k - m_k^2)/n) from the same sample, which
    is adequate at the n >= 1e4 this is meant to run at (smaller n inflates
    the standard errors accordingly and stays usable for low orders).
    ``theoretical`` overrides the computed moment column; it exists so the
    failure path can be exercised deliberately.
    """
    if n != int(n) or int(n) < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    order_max = int(order_max)
    threshold = float(threshold)
    if threshold <= 0.0 or not math.isfinite(threshold):
        raise DomainError(f"threshold must be finite and > 0, got {threshold!r}")

    y = np.log(sample_chisq(RngState(seed), params.df, params.ncp, n))
    # Empirical raw moments up to order 2k feed the standard errors; sums
    # use pairwise accumulation via np.mean.
    emp = np.empty(2 * order_max + 1)
    emp[0] = 1.0
    power = np.ones_like(y)
    for k in range(1, 2 * order_max + 1):
        power = power * y
        emp[k] = float(np.mean(power))

    if theoretical is None:
        theo = noncentral_log_moments(params, order_max, policy)
    else:
        theo = np.asarray(theoretical, dtype=float)
        if theo.shape != (order_max,):
            raise DomainError("theoretical override must have length order_max")

    rows = []
    for k in range(1, order_max + 1):
        variance = max(emp[2 * k] - emp[k] ** 2, 0.0)
        se = math.sqrt(variance / n)
        z = (emp[k] - theo[k - 1]) / se if se > 0.0 else math.inf
        rows.append(MomentRow(
            order=k,
            empirical=emp[k],
            theoretical=float(theo[k - 1]),
            std_error=se,
            z_score=z,
            passed=abs(z) <= threshold,
        ))
    config = {
        "df": params.df,
        "ncp": params.ncp,
        "n": n,
        "order_max": order_max,
        "seed": seed,
        "threshold": threshold,
    }
    return VerificationReport(
        rows=tuple(rows),
        config=config,
        passed=all(r.passed for r in rows),
    )


@dataclass(frozen=True)
class DensityComparisonReport:
    """Histogram-vs-method density comparison over one shared grid.

    The empirical histogram spans the 0.1%..99.9% quantile range of the
    draws and integrates to 1 exactly by construction of the bin weights.
    Method curves are the raw (unclamped) series, so negativity of the
    product-scale baseline is observable in the data and flagged.
    """

    grid: np.ndarray
    bin_width: float
    empirical: np.ndarray
    naive: np.ndarray
    logspace: np.ndarray
    iae_naive: float
    iae_logspace: float
    naive_has_negative: bool
    logspace_has_negative: bool
    config: dict

    def as_dict(self) -> dict:
        return {
            "config": dict(
                self.config,
                bin_width=self.bin_width,
                iae_naive=self.iae_naive,
                iae_logspace=self.iae_logspace,
                naive_has_negative=self.naive_has_negative,
                logspace_has_negative=self.logspace_has_negative,
            ),
            "rows": [
                {
                    "x": float(x),
                    "empirical": float(e),
                    "naive": float(a),
                    "logspace": float(b),
                }
                for x, e, a, b in zip(self.grid, self.empirical, self.naive, self.logspace)
            ],
        }


def compare_densities(dfs, n, grid_size=512, orders=(4, 6), seed=0,
                      policy: TruncationPolicy | None = None) -> DensityComparisonReport:
    """Score both product-density methods against an empirical histogram.

    ``orders`` is (baseline order, log-space order). Requires n >= 2^14
    draws so the histogram is a meaningful reference.
    """
    dfs = [float(v) for v in dfs]
    if not dfs:
        raise DomainError("at least one df is required")
    if n != int(n) or int(n) < 2**14:
        raise DomainError(f"n must be an integer >= 2^14, got {n!r}")
    n = int(n)
    if grid_size != int(grid_size) or int(grid_size) < 2:
        raise DomainError(f"grid_size must be an integer >= 2, got {grid_size!r}")
    grid_size = int(grid_size)
    naive_order, logspace_order = int(orders[0]), int(orders[1])

    spec = ProductSpec.from_lists([1.0] * len(dfs), dfs)
    draws = sample_prod(RngState(seed), spec, n)
    lo, hi = np.quantile(draws, [0.001, 0.999])
    counts, edges = np.histogram(draws, bins=grid_size, range=(lo, hi))
    width = float(edges[1] - edges[0])
    inside = int(counts.sum())
    empirical = counts / (inside * width)
    centers = 0.5 * (edges[:-1] + edges[1:])

    naive = prod_density_naive(dfs, centers, order_max=naive_order, clamp=False)
    logspace = prod_density(spec, centers, order_max=logspace_order, clamp=False,
                            policy=policy)

    iae_naive = float(np.sum(np.abs(naive - empirical)) * width)
    iae_logspace = float(np.sum(np.abs(logspace - empirical)) * width)

    config = {
        "dfs": dfs,
        "n": n,
        "grid_size": grid_size,
        "naive_order": naive_order,
        "logspace_order": logspace_order,
        "seed": seed,
    }
    return DensityComparisonReport(
        grid=centers,
        bin_width=width,
        empirical=empirical,
        naive=naive,
        logspace=logspace,
        iae_naive=iae_naive,
        iae_logspace=iae_logspace,
        naive_has_negative=bool(np.any(naive < 0.0)),
        logspace_has_negative=bool(np.any(logspace < 0.0)),
        config=config,
    )

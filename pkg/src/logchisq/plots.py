"""Render verification and density-comparison reports to figure files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_density_comparison", "plot_moment_verification"]


def plot_density_comparison(report, path) -> None:
    """Empirical histogram with both method curves overlaid; writes `path`."""
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    ax.fill_between(report.grid, report.empirical, step="mid", alpha=0.35,
                    color="0.6", label="empirical (histogram)")
    ax.plot(report.grid, report.naive, color="tab:red", lw=1.4,
            label=f"product-scale baseline (IAE {report.iae_naive:.3g})")
    ax.plot(report.grid, report.logspace, color="tab:blue", lw=1.4,
            label=f"log-space + change of vars (IAE {report.iae_logspace:.3g})")
    ax.axhline(0.0, color="k", lw=0.6)
    dfs = ", ".join(f"{d:g}" for d in report.config["dfs"])
    ax.set_title(f"Product of chi-squares, dfs = ({dfs}), n = {report.config['n']:,}")
    ax.set_xlabel("z")
    ax.set_ylabel("density")
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)


def plot_moment_verification(report, path) -> None:
    """Per-order z-scores against the pass threshold; writes `path`."""
    orders = [r.order for r in report.rows]
    scores = [r.z_score for r in report.rows]
    colors = ["tab:green" if r.passed else "tab:red" for r in report.rows]
    thr = report.config["threshold"]

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.bar(orders, scores, color=colors)
    ax.axhline(thr, color="k", ls="--", lw=0.8)
    ax.axhline(-thr, color="k", ls="--", lw=0.8)
    ax.set_xlabel("moment order")
    ax.set_ylabel("z-score (empirical vs theoretical)")
    ax.set_title(
        f"log chi-square moments, df = {report.config['df']:g}, "
        f"ncp = {report.config['ncp']:g}, n = {report.config['n']:,}"
    )
    ax.set_xticks(orders)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)

"""Figure rendering for the command-line report paths.

Every tabular report the CLI writes can be rendered as a PNG next to
the delimited file.  Rendering is headless (Agg backend) and purely a
visualization of the already-computed rows; nothing downstream depends
on these figures.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = [
    "save_measures_figure",
    "save_curve_figure",
    "save_theory_figure",
    "save_simulation_figure",
    "save_order_figure",
]

_DPI = 150


def save_measures_figure(report, path) -> None:
    """Level curves and skewness functions from a SkewnessReport."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    if report.s2:
        alphas = sorted(report.s2)
        ax1.plot(alphas, [report.s2[a] for a in alphas], "o-", label="s2 (normalized)")
        ax1.plot(alphas, [report.s2_raw[a] for a in alphas], "s-", label="s2 raw")
        ax1.plot(alphas, [report.b2[a] for a in alphas], "^-", label="b2")
    ax1.axhline(report.s3, color="gray", lw=0.8, ls="--", label="s3")
    ax1.set_xlabel("alpha")
    ax1.set_ylabel("skewness")
    ax1.set_title(report.source_id)
    ax1.legend(fontsize=8)
    if report.s_function:
        ts = sorted(report.s_function)
        ax2.plot(ts, [report.s_function[t] for t in ts], "-", label="S(t)")
        ax2.plot(ts, [report.s_function_scaled[t] for t in ts], "--", label="S(t MAD)")
    ax2.axhline(0.0, color="gray", lw=0.8)
    ax2.set_xlabel("t")
    ax2.set_ylabel("skewness function")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_curve_figure(points, path, xlabel: str, title: str) -> None:
    """Estimate with confidence limits and the symmetry band around zero."""
    xs = [p.param for p in points]
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.plot(xs, [p.estimate for p in points], "-", color="C0", label="estimate")
    ax.plot(xs, [p.lower for p in points], ":", color="C0", label="confidence limits")
    ax.plot(xs, [p.upper for p in points], ":", color="C0")
    ax.plot(xs, [p.band_halfwidth for p in points], "--", color="C3", label="symmetry band")
    ax.plot(xs, [-p.band_halfwidth for p in points], "--", color="C3")
    ax.axhline(0.0, color="gray", lw=0.8)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("skewness")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_theory_figure(points, path) -> None:
    """Population curves per parameter value; heavier lines for larger parameters."""
    params = sorted({p.param for p in points})
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for i, prm in enumerate(params):
        rows = sorted((p for p in points if p.param == prm), key=lambda p: p.alpha)
        alphas = [p.alpha for p in rows]
        lw = 0.8 + 1.6 * i / max(len(params) - 1, 1)
        ax1.plot(alphas, [p.s2_raw for p in rows], lw=lw, color="C0")
        ax1.plot(alphas, [p.b2 for p in rows], lw=lw, color="C1", ls="--")
        ax2.plot(alphas, [p.s2 for p in rows], lw=lw, color="C0", label=f"{prm:g}")
    if points:
        grid = sorted({p.alpha for p in points})
        ax1.plot(grid, [1.0 - 2.0 * a for a in grid], color="gray", lw=0.8, ls=":")
    ax1.set_xlabel("alpha")
    ax1.set_ylabel("raw s2 (solid), b2 (dashed)")
    ax2.set_xlabel("alpha")
    ax2.set_ylabel("normalized s2")
    ax2.legend(fontsize=7, title="param")
    fig.suptitle(points[0].family if points else "")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_simulation_figure(table, path) -> None:
    """Standardized MSE (log-log) and variance share per measure."""
    keys = sorted({(r.measure, r.alpha) for r in table.rows})
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for measure, alpha in keys:
        rows = sorted((r for r in table.rows
                       if r.measure == measure and r.alpha == alpha), key=lambda r: r.n)
        label = measure if alpha is None else f"{measure}({alpha:g})"
        ns = [r.n for r in rows]
        ax1.loglog(ns, [r.smse for r in rows], "o-", label=label)
        ax2.semilogx(ns, [r.var_share for r in rows], "o-", label=label)
    ax1.set_xlabel("n")
    ax1.set_ylabel("standardized MSE")
    ax1.legend(fontsize=8)
    ax2.set_xlabel("n")
    ax2.set_ylabel("variance share of MSE")
    ax2.set_ylim(0.0, 1.05)
    fig.suptitle(table.distribution)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_order_figure(name_to_verdict, path) -> None:
    """Tiny verdict summary panel for the order diagnostics."""
    fig, ax = plt.subplots(figsize=(5, 1.2 + 0.5 * len(name_to_verdict)))
    ax.axis("off")
    colors = {"holds": "tab:green", "fails": "tab:red", "inconclusive": "tab:orange"}
    for i, (name, verdict) in enumerate(name_to_verdict.items()):
        rel = verdict.relation.value
        ax.text(0.02, 1.0 - (i + 0.5) / len(name_to_verdict), f"{name}: {rel}",
                color=colors[rel], fontsize=11, va="center", transform=ax.transAxes)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)

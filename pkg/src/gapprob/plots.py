"""Figure rendering for the report-producing CLI paths.

Kept separate from the numerics so library users never import matplotlib
unless they ask for figures.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def save_table_figure(rows, path, title):
    """Line plot of tabulated values (with error bars when meaningful)."""
    s = [r["s"] for r in rows]
    v = [r["value"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(s, v, "o-", ms=3.5, lw=1.2)
    ax.set_xlabel("s")
    ax.set_ylabel("value")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_verify_figure(reports, path, title):
    """Log-scale bar chart of identity discrepancies against their tolerances."""
    names = [r.identity_name for r in reports]
    diffs = [max(r.abs_diff, 1e-18) for r in reports]
    tols = [r.tolerance for r in reports]
    colors = ["tab:blue" if r.passed else "tab:red" for r in reports]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.16 * len(names)), 4.5))
    xs = range(len(names))
    ax.bar(xs, diffs, color=colors)
    ax.plot(xs, tols, "k--", lw=1.0, label="tolerance")
    ax.set_yscale("log")
    ax.set_ylabel("|lhs - rhs|")
    ax.set_title(title)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=90, fontsize=4)
    ax.legend(loc="upper right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def ensure_dir(d):
    os.makedirs(d, exist_ok=True)
    return d

"""Figures for the table and verify reports."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_STYLE = {
    "figure.figsize": (9, 4.5),
    "axes.titlesize": 12,
    "axes.labelsize": 11,
    "xtick.labelsize": 7,
    "ytick.labelsize": 9,
    "legend.fontsize": 9,
}


def _label(args) -> str:
    return "".join(str(v) for v in args)


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_table(rows, weight: int, path) -> Path:
    """Bar chart of the values of one weight; exceptional tuples in grey."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        xs = range(len(rows))
        values = [float(r.numeric.value) for r in rows]
        colors = ["0.6" if r.exceptional else "C0" for r in rows]
        ax.bar(xs, values, color=colors)
        ax.set_xticks(list(xs))
        ax.set_xticklabels([_label(r.args) for r in rows], rotation=90)
        ax.set_ylabel(r"$\zeta_{so(5)}(s_1,s_2,s_3,s_4)$")
        ax.set_title(f"weight {weight}: {len(rows)} tuples")
        ax.set_yscale("log")
        return _save(fig, path)


def plot_verify(rows, tol: float, path) -> Path:
    """log10 of |symbolic - direct| per tuple, coloured by weight."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        weights = sorted({sum(r.args) for r in rows})
        for i, w in enumerate(weights):
            pts = [(k, r) for k, r in enumerate(rows) if sum(r.args) == w and r.status != "skip"]
            if not pts:
                continue
            ys = [math.log10(max(float(r.discrepancy), 1e-40)) for _, r in pts]
            ax.scatter([k for k, _ in pts], ys, s=10, color=f"C{i}", label=f"weight {w}")
        ax.axhline(math.log10(tol), color="k", lw=0.8, ls="--", label="tolerance")
        ax.set_xlabel("tuple index (lexicographic within weight)")
        ax.set_ylabel(r"$\log_{10}$ |reduced $-$ direct|")
        ax.legend(loc="upper left", ncol=len(weights) + 1)
        return _save(fig, path)

"""Figures written next to the delimited reports."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .model import GAP_KEY, Census  # noqa: E402

RC = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def new_figure(width=6.5, height=None, nrows=1, ncols=1):
    golden = (math.sqrt(5) - 1.0) / 2.0
    height = height or width * golden
    with plt.rc_context(RC):
        return plt.subplots(nrows, ncols, figsize=(width, height))


def save(fig, path):
    # no Software/date metadata so reruns produce identical files
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)


def plot_census(census: Census, path) -> None:
    fig, axes = new_figure(width=9, height=3.6, ncols=3)
    sections = [
        ("POS", dict(census.pos, **({GAP_KEY: census.gaps} if census.gaps else {}))),
        ("Phrasal category", dict(census.categories)),
        ("Function", dict(census.functions)),
    ]
    with plt.rc_context(RC):
        for ax, (title, counts) in zip(axes, sections):
            items = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
            labels = [k for k, _ in items]
            values = [v for _, v in items]
            ax.barh(range(len(values)), values, color="0.35")
            ax.set_yticks(range(len(labels)))
            ax.set_yticklabels(labels)
            ax.invert_yaxis()
            ax.set_title(title)
            ax.set_xlabel("count")
        fig.tight_layout()
    save(fig, path)


def plot_confusion(joint, path, x_name="CGEL POS", y_name="other tag") -> None:
    xs, ys, rows = joint.matrix()
    fig, ax = new_figure(width=max(4.0, 0.35 * len(ys) + 2), height=max(3.0, 0.3 * len(xs) + 1.5))
    with plt.rc_context(RC):
        if rows:
            peak = max(max(r) for r in rows) or 1
            ax.imshow(rows, cmap="Greys", aspect="auto", vmin=0, vmax=peak)
            for i, row in enumerate(rows):
                for j, v in enumerate(row):
                    if v:
                        ax.text(j, i, str(v), ha="center", va="center", fontsize=7,
                                color="white" if v > peak / 2 else "black")
        ax.set_xticks(range(len(ys)))
        ax.set_xticklabels(ys, rotation=90)
        ax.set_yticks(range(len(xs)))
        ax.set_yticklabels(xs)
        ax.set_xlabel(y_name)
        ax.set_ylabel(x_name)
        fig.tight_layout()
    save(fig, path)

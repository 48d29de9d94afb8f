"""Render CLI result tables to image files with matplotlib."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.family": "serif",
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.linewidth": 0.8,
    "legend.fontsize": 9,
    "legend.frameon": False,
    "xtick.direction": "in",
    "ytick.direction": "in",
    "xtick.top": True,
    "ytick.right": True,
    "lines.linewidth": 1.4,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def _figsize(width=4.5):
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    return width, width * golden


def _positive(values):
    return all(v > 0 for v in values if v == v)


def plot_columns(path, x, series, xlabel, ylabel, title=None, logx=False, logy=False, hline=None):
    """Plot one or more y series against ``x`` and save to ``path``.

    ``series`` maps a legend label to a list of y values. Log axes fall back
    to linear when a column has non-positive entries.
    """
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=_figsize())
        for label, ys in series.items():
            ax.plot(x, ys, label=label)
        if hline is not None:
            ax.axhline(hline, color="0.5", lw=0.8, ls="--")
        if logx and _positive(x):
            ax.set_xscale("log")
        if logy and all(_positive(ys) for ys in series.values()):
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        if len(series) > 1:
            ax.legend()
        fig.savefig(path)
        plt.close(fig)
    return path

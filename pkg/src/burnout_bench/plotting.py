"""SVG figures for the report: parameter bars, event curves, timelines,
histograms, CDFs and rest-day utilization.

Figures are drawn on bare ``Figure`` objects (no pyplot state) and saved with
a fixed hash salt and no date metadata so repeated runs are byte-identical.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import numpy as np
from matplotlib.figure import Figure

from .fatigue import FatigueTimeline, RestUtilization, event_curve

_RC = {"svg.hashsalt": "burnout-bench", "svg.fonttype": "none", "path.simplify": False}


def save_svg(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    with matplotlib.rc_context(_RC):
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    return path


def _grid(k: int, cols: int = 3) -> tuple[int, int]:
    return max(1, -(-k // cols)), min(k, cols)


def parameters_figure(names: Sequence[str], params: Mapping[str, Sequence[float]]) -> Figure:
    """Grouped bars, one group per team and one bar per parameter."""
    fig = Figure(figsize=(8, 4))
    ax = fig.add_subplot()
    x = np.arange(len(names))
    width = 0.8 / max(1, len(params))
    for k, (label, vals) in enumerate(params.items()):
        ax.bar(x + k * width - 0.4 + width / 2, vals, width, label=label)
    ax.set_xticks(x, names)
    ax.set_ylabel("count")
    ax.set_title("Competitive parameters")
    ax.legend(fontsize="small")
    fig.tight_layout()
    return fig


def curves_figure() -> Figure:
    fig = Figure(figsize=(6, 3.5))
    ax = fig.add_subplot()
    for kind in ("play", "travel"):
        c = event_curve(kind)
        ax.plot(np.arange(c.samples.size), c.samples, marker=".", label=kind)
    ax.set_xlabel("hours from event start")
    ax.set_ylabel("fatigue")
    ax.set_title("Single-event fatigue curves")
    ax.legend()
    fig.tight_layout()
    return fig


def timelines_figure(names: Sequence[str], timelines: Sequence[FatigueTimeline]) -> Figure:
    rows, cols = _grid(len(timelines))
    fig = Figure(figsize=(4 * cols, 2.6 * rows))
    axes = fig.subplots(rows, cols, squeeze=False, sharey=True)
    for ax, name, tl in zip(axes.flat, names, timelines):
        ax.plot(np.arange(tl.samples.size) / 24.0, tl.samples, lw=0.8)
        ax.set_title(name)
        ax.set_xlabel("days")
    for ax in axes[:, 0]:
        ax.set_ylabel("fatigue")
    for ax in list(axes.flat)[len(timelines):]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig


def histograms_figure(
    names: Sequence[str], hists: Sequence[Sequence[tuple[tuple[float, float], int]]]
) -> Figure:
    rows, cols = _grid(len(hists))
    fig = Figure(figsize=(4 * cols, 2.6 * rows))
    axes = fig.subplots(rows, cols, squeeze=False)
    for ax, name, h in zip(axes.flat, names, hists):
        lefts = [lo for (lo, _), _ in h]
        widths = [hi - lo for (lo, hi), _ in h]
        ax.bar(lefts, [c for _, c in h], widths, align="edge", edgecolor="black", lw=0.4)
        ax.set_title(name)
        ax.set_xlabel("fatigue")
    for ax in list(axes.flat)[len(hists):]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig


def cdf_figure(names: Sequence[str], cdfs: Sequence[Sequence[tuple[float, float]]]) -> Figure:
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    for name, cdf in zip(names, cdfs):
        v, p = zip(*cdf)
        ax.step(v, p, where="post", label=name)
    ax.set_xlabel("fatigue")
    ax.set_ylabel("fraction of hours")
    ax.set_title("Fatigue CDF")
    ax.legend(fontsize="small")
    fig.tight_layout()
    return fig


def rest_figure(names: Sequence[str], utils: Sequence[RestUtilization]) -> Figure:
    rows, cols = _grid(len(utils))
    fig = Figure(figsize=(4 * cols, 2.6 * rows))
    axes = fig.subplots(rows, cols, squeeze=False)
    for ax, name, u in zip(axes.flat, names, utils):
        k = np.arange(1, len(u.per_game_cumulative) + 1)
        ax.plot(k, u.per_game_cumulative, marker="o", ms=3, label="used")
        ax.plot(k, u.ideal, ls="--", label="Trend")
        ax.set_title(name)
        ax.set_xlabel("game")
        ax.legend(fontsize="x-small")
    for ax in axes[:, 0]:
        ax.set_ylabel("rest days")
    for ax in list(axes.flat)[len(utils):]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig

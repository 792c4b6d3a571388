"""Figure renderers.

fig1: mean target value vs N on a log axis, one series per ensemble, dotted
asymptote lines, grey shading over the non-violating region y >= 1.
fig2: mean curve with dashed mean +/- std band and histogram insets at the
smallest and largest N present.

Every plotted number is a field of the input files or a direct sum of two
of them (mean +/- std); the renderer computes no statistics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.fonttype"] = "none"  # searchable, deterministic text

import matplotlib.pyplot as plt

from .io import (
    MissingHistogramError,
    SweepRow,
    load_histograms,
    load_sweep_csv,
)


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    output_image: str
    hist_csv: str | None = None
    asymptotes: list[tuple[str, float]] = field(default_factory=list)
    png: bool = False


def _series(rows: list[SweepRow]) -> dict[tuple, list[SweepRow]]:
    groups: dict[tuple, list[SweepRow]] = {}
    for row in rows:
        groups.setdefault(row.series, []).append(row)
    for group in groups.values():
        group.sort(key=lambda r: r.n)
    return groups


def _save(fig, spec: FigureSpec) -> Path:
    out = Path(spec.output_image)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, format="png" if spec.png else "svg")
    plt.close(fig)
    return out


def render_fig1(spec: FigureSpec) -> Path:
    """Mean target value vs N per ensemble, with asymptotes and y >= 1 shaded."""
    rows = load_sweep_csv(spec.input_csv)
    groups = _series(rows)

    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    top = max(1.05, max(r.mean for r in rows) + 0.08)
    bottom = min(r.mean for r in rows) - 0.05
    ax.axhspan(1.0, top, color="0.88", zorder=0)
    for group in groups.values():
        ax.plot(
            [r.n for r in group],
            [r.mean for r in group],
            marker="o",
            markersize=3.5,
            linewidth=1.0,
            label=group[0].label,
        )
    for label, value in spec.asymptotes:
        ax.axhline(value, linestyle=":", linewidth=0.8, color="0.3", zorder=1)
        ax.annotate(label, xy=(1.01, value), xycoords=("axes fraction", "data"),
                    fontsize=7, va="center")
    ax.set_xscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("mean target value")
    ax.set_ylim(bottom, top)
    ax.legend(fontsize=8, loc="lower left")
    fig.tight_layout()
    return _save(fig, spec)


def _pick_band_series(groups: dict[tuple, list[SweepRow]]) -> list[SweepRow]:
    if len(groups) == 1:
        return next(iter(groups.values()))
    return groups.get(("hs", None)) or next(iter(groups.values()))


def render_fig2(spec: FigureSpec) -> Path:
    """Mean +/- std band with histogram insets at the extreme N values."""
    rows = load_sweep_csv(spec.input_csv)
    if spec.hist_csv is None:
        raise MissingHistogramError("fig2 needs a histogram sidecar (--hist)")
    hists = load_histograms(spec.hist_csv)
    series = _pick_band_series(_series(rows))

    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    ns = [r.n for r in series]
    means = [r.mean for r in series]
    marker = "o" if len(series) == 1 else None
    ax.plot(ns, means, color="C0", linewidth=1.4, marker=marker, label=series[0].label)
    ax.plot(ns, [r.mean + r.std for r in series], color="C0", linewidth=0.9, linestyle="--")
    ax.plot(ns, [r.mean - r.std for r in series], color="C0", linewidth=0.9, linestyle="--")
    ax.axhline(1.0, color="0.6", linewidth=0.8, linestyle=":")
    ax.set_xscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("target value")
    ax.legend(fontsize=8, loc="upper right")

    inset_ns = [series[0].n] if len(series) == 1 else [series[0].n, series[-1].n]
    positions = [(0.12, 0.12, 0.3, 0.28), (0.62, 0.62, 0.3, 0.28)]
    for n, pos in zip(inset_ns, positions):
        row = next(r for r in series if r.n == n)
        key = (row.ensemble, row.k, n)
        if key not in hists:
            raise MissingHistogramError(f"no sidecar bins for {key}")
        edges, counts = hists[key]
        inset = ax.inset_axes(pos)
        widths = [hi - lo for lo, hi in zip(edges, edges[1:])]
        inset.bar(edges[:-1], counts, width=widths, align="edge", color="C1")
        inset.set_title(f"N={n}", fontsize=7, pad=2)
        inset.tick_params(labelsize=6)
    fig.tight_layout()
    return _save(fig, spec)

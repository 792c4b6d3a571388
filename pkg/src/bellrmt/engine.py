"""Seed-reproducible Monte Carlo sweeps over (ensemble, N).

Every sample is addressed by a dedicated random stream derived from the
master seed and the labels (kind, k, N, sample index, role), so results are
bit-identical for any thread count and any execution order; aggregation is
a deterministic fold in sample-index order.
"""

from __future__ import annotations

import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bell import build_kernel, target_value
from .ensembles import (
    EnsembleSpec,
    draw_spectrum,
    metropolis_fixed_trace,
    schmidt_maxent,
    shuffle_spectrum,
)
from .errors import BellRmtError, InsufficientDataError
from .rng import substream

# Exponential grid 2..512 (powers of sqrt(2), rounded).
DEFAULT_GRID: tuple[int, ...] = (2, 3, 4, 6, 8, 11, 16, 23, 32, 45, 64, 91, 128, 181, 256, 362, 512)

CSV_HEADER = "ensemble,k,N,samples,mean,std,stderr,violation_fraction,seed"
HIST_HEADER = "ensemble,k,N,bin_lo,bin_hi,count"


@dataclass(frozen=True)
class SweepConfig:
    """Configuration of one Monte Carlo sweep."""

    ensembles: tuple[EnsembleSpec, ...]
    n_grid: tuple[int, ...] = DEFAULT_GRID
    samples_per_point: int = 1000
    master_seed: int = 0
    output_path: str | None = None
    histogram_bins: int = 50

    def __post_init__(self):
        object.__setattr__(self, "ensembles", tuple(self.ensembles))
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if not self.ensembles:
            raise ValueError("sweep needs at least one ensemble")
        if not self.n_grid or any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ValueError("n_grid must be nonempty and strictly increasing")
        if self.n_grid[0] < 2:
            raise ValueError("n_grid entries must be >= 2")
        if self.samples_per_point < 2:
            raise ValueError("samples_per_point must be >= 2 for a defined variance")
        if self.histogram_bins < 1:
            raise ValueError("histogram_bins must be >= 1")


@dataclass(frozen=True)
class SweepPoint:
    """Aggregated statistics for one (ensemble, N) grid point."""

    ensemble: str
    k: int | None
    n: int
    samples: int
    mean: float
    std: float
    stderr: float
    violation_fraction: float
    hist_edges: tuple[float, ...]
    hist_counts: tuple[int, ...]
    seed: int


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]
    master_seed: int


def _point_values(spec: EnsembleSpec, n: int, cfg: SweepConfig, threads: int) -> np.ndarray:
    samples = cfg.samples_per_point
    kernel = build_kernel(n)
    if spec.kind == "maxent":
        # Deterministic ensemble: one evaluation, replicated.
        return np.full(samples, target_value(kernel, schmidt_maxent(n)))
    if spec.kind == "coulomb":
        chain = metropolis_fixed_trace(
            n, spec.mcmc, substream(cfg.master_seed, "coulomb", n, "chain"), samples
        )
        values = np.empty(samples)
        for i, state in enumerate(chain.samples):
            shuffled = shuffle_spectrum(
                state, substream(cfg.master_seed, "coulomb", n, i, "shuffle")
            )
            values[i] = target_value(kernel, shuffled)
        return values

    bound = spec.at(n)

    def one(i: int) -> float:
        try:
            spectrum = draw_spectrum(
                bound, substream(cfg.master_seed, spec.kind, spec.k, n, i, "draw")
            )
            spectrum = shuffle_spectrum(
                spectrum, substream(cfg.master_seed, spec.kind, spec.k, n, i, "shuffle")
            )
            return target_value(kernel, spectrum)
        except BellRmtError as exc:
            raise type(exc)(
                f"ensemble={spec.kind} k={spec.k} N={n} sample={i}: {exc}"
            ) from exc

    values = np.empty(samples)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, v in enumerate(pool.map(one, range(samples))):
                values[i] = v
    else:
        for i in range(samples):
            values[i] = one(i)
    return values


def _aggregate(spec: EnsembleSpec, n: int, values: np.ndarray, cfg: SweepConfig) -> SweepPoint:
    lo, hi = float(values.min()), float(values.max())
    counts, edges = np.histogram(values, bins=cfg.histogram_bins, range=(lo, hi))
    if lo == hi:  # constant sample (deterministic ensemble): exact statistics
        mean, std = lo, 0.0
    else:
        mean, std = float(np.mean(values)), float(np.std(values, ddof=1))
    return SweepPoint(
        ensemble=spec.kind,
        k=spec.k if spec.kind == "structured" else None,
        n=n,
        samples=len(values),
        mean=mean,
        std=std,
        stderr=std / math.sqrt(len(values)),
        violation_fraction=float(np.count_nonzero(values < 1.0)) / len(values),
        hist_edges=tuple(float(e) for e in edges),
        hist_counts=tuple(int(c) for c in counts),
        seed=cfg.master_seed,
    )


def run_sweep(cfg: SweepConfig, threads: int = 1) -> SweepResult:
    """Run the configured sweep; deterministic for fixed master_seed."""
    points = []
    for spec in cfg.ensembles:
        for n in cfg.n_grid:
            values = _point_values(spec, n, cfg, threads)
            points.append(_aggregate(spec, n, values, cfg))
    return SweepResult(points=tuple(points), master_seed=cfg.master_seed)


@dataclass(frozen=True)
class MomentSummary:
    """Raw sample moments plus the unbiased central second moment."""

    raw: dict[int, float]
    central_second: float


def estimate_moments(values, orders=(1, 2)) -> MomentSummary:
    """Raw sample moments of the requested orders from >= 2 values."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise InsufficientDataError(f"need at least 2 values, got {arr.size}")
    raw = {int(m): float(np.mean(arr ** int(m))) for m in orders}
    return MomentSummary(raw=raw, central_second=float(np.var(arr, ddof=1)))


def _g12(x: float) -> str:
    # 12 significant digits, shortest form ("0", "1", "0.792893218813").
    return format(float(x), ".12g")


def _render_csv(result: SweepResult) -> str:
    lines = [CSV_HEADER]
    for p in result.points:
        k = "" if p.k is None else str(p.k)
        lines.append(
            f"{p.ensemble},{k},{p.n},{p.samples},{_g12(p.mean)},{_g12(p.std)},"
            f"{_g12(p.stderr)},{_g12(p.violation_fraction)},{p.seed}"
        )
    return "\n".join(lines) + "\n"


def _render_hist_csv(result: SweepResult) -> str:
    lines = [HIST_HEADER]
    for p in result.points:
        k = "" if p.k is None else str(p.k)
        for lo, hi, count in zip(p.hist_edges, p.hist_edges[1:], p.hist_counts):
            lines.append(f"{p.ensemble},{k},{p.n},{_g12(lo)},{_g12(hi)},{count}")
    return "\n".join(lines) + "\n"


def _point_as_dict(p: SweepPoint) -> dict:
    return {
        "ensemble": p.ensemble,
        "k": p.k,
        "N": p.n,
        "samples": p.samples,
        "mean": float(_g12(p.mean)),
        "std": float(_g12(p.std)),
        "stderr": float(_g12(p.stderr)),
        "violation_fraction": float(_g12(p.violation_fraction)),
        "seed": p.seed,
        "histogram": {
            "bin_edges": [float(_g12(e)) for e in p.hist_edges],
            "counts": list(p.hist_counts),
        },
    }


def emit_results(result: SweepResult, format: str = "csv", path: str | None = None) -> None:
    """Write sweep results as CSV (with .hist.csv sidecar) or JSON.

    With ``path=None`` the main document goes to stdout and no sidecar is
    written. Numbers are serialized with 12 significant digits.
    """
    if format == "csv":
        text = _render_csv(result)
        if path is None:
            sys.stdout.write(text)
        else:
            Path(path).write_text(text, encoding="utf-8")
            Path(f"{path}.hist.csv").write_text(_render_hist_csv(result), encoding="utf-8")
    elif format == "json":
        doc = {
            "master_seed": result.master_seed,
            "points": [_point_as_dict(p) for p in result.points],
        }
        text = json.dumps(doc, indent=2) + "\n"
        if path is None:
            sys.stdout.write(text)
        else:
            Path(path).write_text(text, encoding="utf-8")
    else:
        raise ValueError(f"unknown format {format!r}")


def _parse_opt_int(s: str) -> int | None:
    return None if s == "" else int(s)


def read_results_csv(path: str) -> SweepResult:
    """Parse a CSV sweep document (and its histogram sidecar, if present)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: unexpected header {lines[0] if lines else '<empty>'!r}")

    hists: dict[tuple, tuple[list, list]] = {}
    sidecar = Path(f"{path}.hist.csv")
    if sidecar.exists():
        hlines = sidecar.read_text(encoding="utf-8").splitlines()
        if not hlines or hlines[0] != HIST_HEADER:
            raise ValueError(f"{sidecar}: unexpected header")
        for line in hlines[1:]:
            ensemble, k, n, lo, hi, count = line.split(",")
            key = (ensemble, _parse_opt_int(k), int(n))
            edges, counts = hists.setdefault(key, ([], []))
            if not edges:
                edges.append(float(lo))
            edges.append(float(hi))
            counts.append(int(count))

    points = []
    seed = 0
    for line in lines[1:]:
        ensemble, k, n, samples, mean, std, stderr, vf, seed_s = line.split(",")
        key = (ensemble, _parse_opt_int(k), int(n))
        edges, counts = hists.get(key, ([], []))
        seed = int(seed_s)
        points.append(
            SweepPoint(
                ensemble=ensemble,
                k=_parse_opt_int(k),
                n=int(n),
                samples=int(samples),
                mean=float(mean),
                std=float(std),
                stderr=float(stderr),
                violation_fraction=float(vf),
                hist_edges=tuple(edges),
                hist_counts=tuple(counts),
                seed=seed,
            )
        )
    return SweepResult(points=tuple(points), master_seed=seed)


def read_results_json(path: str) -> SweepResult:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    points = tuple(
        SweepPoint(
            ensemble=p["ensemble"],
            k=p["k"],
            n=p["N"],
            samples=p["samples"],
            mean=p["mean"],
            std=p["std"],
            stderr=p["stderr"],
            violation_fraction=p["violation_fraction"],
            hist_edges=tuple(p["histogram"]["bin_edges"]),
            hist_counts=tuple(p["histogram"]["counts"]),
            seed=p["seed"],
        )
        for p in doc["points"]
    )
    return SweepResult(points=points, master_seed=doc["master_seed"])

"""Loaders for the bellrmt CSV/JSON output schemas.

The renderer is a pure consumer: it validates the documented headers,
parses fields, and performs no statistics of its own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

SWEEP_HEADER = "ensemble,k,N,samples,mean,std,stderr,violation_fraction,seed"
HIST_HEADER = "ensemble,k,N,bin_lo,bin_hi,count"


class SchemaError(Exception):
    """Input file does not match the documented column schema."""


class EmptyInputError(Exception):
    """Input file carries a valid header but no data rows."""


class MissingHistogramError(Exception):
    """A histogram sidecar is required but absent or incomplete."""


@dataclass(frozen=True)
class SweepRow:
    ensemble: str
    k: int | None
    n: int
    samples: int
    mean: float
    std: float
    stderr: float
    violation_fraction: float
    seed: int

    @property
    def series(self) -> tuple[str, int | None]:
        return (self.ensemble, self.k)

    @property
    def label(self) -> str:
        return f"k={self.k}" if self.ensemble == "structured" else self.ensemble


def _read_lines(path: str | Path, expected_header: str) -> list[str]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except FileNotFoundError as exc:
        raise SchemaError(f"{path}: file not found") from exc
    if not lines or lines[0] != expected_header:
        got = lines[0] if lines else "<empty file>"
        raise SchemaError(f"{path}: expected header {expected_header!r}, got {got!r}")
    return lines[1:]


def load_sweep_csv(path: str | Path) -> list[SweepRow]:
    rows = []
    for line in _read_lines(path, SWEEP_HEADER):
        parts = line.split(",")
        if len(parts) != 9:
            raise SchemaError(f"{path}: row has {len(parts)} fields, expected 9: {line!r}")
        try:
            rows.append(
                SweepRow(
                    ensemble=parts[0],
                    k=int(parts[1]) if parts[1] else None,
                    n=int(parts[2]),
                    samples=int(parts[3]),
                    mean=float(parts[4]),
                    std=float(parts[5]),
                    stderr=float(parts[6]),
                    violation_fraction=float(parts[7]),
                    seed=int(parts[8]),
                )
            )
        except ValueError as exc:
            raise SchemaError(f"{path}: unparseable row {line!r}") from exc
    if not rows:
        raise EmptyInputError(f"{path}: no data rows")
    return rows


def load_histograms(path: str | Path) -> dict[tuple[str, int | None, int], tuple[list[float], list[int]]]:
    """Sidecar bins keyed by (ensemble, k, N) -> (edges, counts)."""
    try:
        lines = _read_lines(path, HIST_HEADER)
    except SchemaError as exc:
        raise MissingHistogramError(str(exc)) from exc
    hists: dict[tuple, tuple[list[float], list[int]]] = {}
    for line in lines:
        parts = line.split(",")
        if len(parts) != 6:
            raise MissingHistogramError(f"{path}: bad sidecar row {line!r}")
        key = (parts[0], int(parts[1]) if parts[1] else None, int(parts[2]))
        edges, counts = hists.setdefault(key, ([], []))
        if not edges:
            edges.append(float(parts[3]))
        edges.append(float(parts[4]))
        counts.append(int(parts[5]))
    if not hists:
        raise MissingHistogramError(f"{path}: sidecar has no bins")
    return hists


def load_asymptotes(path: str | Path) -> list[tuple[str, float]]:
    """Asymptote (label, value) pairs from the analytic-table JSON."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        pairs = [("hs", float(doc["mean_ainf_hs"])), ("maxent", float(doc["maxent_asymptote"]))]
        structured = doc["mean_ainf_structured"]
        pairs += [(f"k={k}", float(structured[k])) for k in sorted(structured, key=int)]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: not an analytic table: {exc}") from exc
    for label, value in pairs:
        if not (value == value and abs(value) != float("inf")):
            raise SchemaError(f"{path}: non-finite asymptote for {label}")
    return pairs

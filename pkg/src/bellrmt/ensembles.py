"""Schmidt-spectrum samplers for the random pure-state ensembles.

Implemented ensembles
---------------------
hs          Unstructured random pure states (Fubini-Study / Hilbert-Schmidt
            measure): spectra are eigenvalues of X X^dag / tr(X X^dag) for a
            complex Ginibre matrix X, i.e. trace-normalized Wishart spectra.
maxent      The maximally entangled state, lambda_i = 1/N exactly.
structured  Superposition of k maximally entangled states rotated by
            independent Haar unitaries: X is replaced by U_1 + ... + U_k.
            k = 1 collapses to maxent; k -> infinity approaches hs.
coulomb     Metropolis sampling of the fixed-trace eigenvalue law
            prod_{i<j} (lambda_i - lambda_j)^2 on the simplex. Same law as
            hs; kept as an independent cross-check of the Wishart route.

Eigensolvers emit sorted spectra, but the Bell target is not permutation
invariant for N >= 3, so spectra destined for target evaluation must be
passed through :func:`shuffle_spectrum` to restore the exchangeability the
ensemble expectations rely on. Sorted order remains available for density
diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    InvalidDimensionError,
    InvalidKError,
    NoConvergenceError,
    NonErgodicConfigError,
    RankDeficientError,
    SamplerAbortError,
)
from .linalg import hermitian_eigenvalues, unitary_from_qr
from .rng import RandomStream

# Entries in [-NEGATIVE_CLAMP, 0) are floating-point noise from a PSD
# eigenproblem and are clamped to zero; anything lower is treated as a bug.
NEGATIVE_CLAMP = 1e-14
SUM_TOLERANCE = 1e-12

ENSEMBLE_KINDS = ("hs", "structured", "maxent", "coulomb")

_MAX_RETRIES = 3


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Normalized nonnegative spectrum {lambda_i}, sum lambda_i = 1."""

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.array(self.lambdas, dtype=float)
        if lam.ndim != 1 or lam.size < 2:
            raise InvalidDimensionError(
                f"spectrum must be a vector of length >= 2, got shape {lam.shape}"
            )
        if not np.all(np.isfinite(lam)):
            raise ValueError("spectrum contains non-finite entries")
        low = lam.min()
        if low < -NEGATIVE_CLAMP:
            raise ValueError(f"negative weight {low:.3e} below clamp tolerance")
        if low < 0.0:
            lam[lam < 0.0] = 0.0
        total = math.fsum(lam)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"weights sum to {total!r}, not 1")
        lam.flags.writeable = False
        object.__setattr__(self, "lambdas", lam)

    @property
    def n(self) -> int:
        return self.lambdas.shape[0]

    @classmethod
    def from_unnormalized(cls, values) -> "SchmidtSpectrum":
        """Normalize raw nonnegative weights (tiny negatives clamped)."""
        vals = np.asarray(values, dtype=float)
        lam = vals / math.fsum(vals)
        if lam.min() < -NEGATIVE_CLAMP:
            raise ValueError(
                f"normalized weight {lam.min():.3e} below clamp tolerance"
            )
        lam[lam < 0.0] = 0.0
        return cls(lam / math.fsum(lam))


@dataclass(frozen=True)
class McmcConfig:
    """Metropolis chain parameters for the fixed-trace sampler.

    ``step_size`` is the half-width of the uniform pair-transfer proposal;
    the default (None) resolves to 1/N^2 at run time, the scale of the
    typical eigenvalue spacing, which keeps the acceptance rate in the
    0.2 - 0.6 window across dimensions.
    """

    burn_in_sweeps: int = 10_000
    thinning_sweeps: int = 100
    step_size: float | None = None

    def __post_init__(self):
        if self.burn_in_sweeps < 0:
            raise ValueError("burn_in_sweeps must be >= 0")
        if self.thinning_sweeps < 1:
            raise ValueError("thinning_sweeps must be >= 1")
        if self.step_size is not None and not self.step_size > 0.0:
            raise NonErgodicConfigError(
                f"step_size must be positive, got {self.step_size}"
            )


@dataclass(frozen=True)
class EnsembleSpec:
    """Choice of ensemble plus dimension; ``n=None`` leaves N unbound."""

    kind: str
    n: int | None = None
    k: int | None = None
    mcmc: McmcConfig | None = None

    def __post_init__(self):
        if self.kind not in ENSEMBLE_KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.n is not None and self.n < 2:
            raise InvalidDimensionError(f"ensemble dimension must be >= 2, got {self.n}")
        if self.kind == "structured":
            if self.k is None or self.k < 1:
                raise InvalidKError(f"structured ensemble needs k >= 1, got {self.k}")
        if self.kind == "coulomb" and self.mcmc is None:
            object.__setattr__(self, "mcmc", McmcConfig())

    def at(self, n: int) -> "EnsembleSpec":
        return replace(self, n=n)


def _ginibre(gen: np.random.Generator, n: int) -> np.ndarray:
    re = gen.standard_normal((n, n))
    im = gen.standard_normal((n, n))
    return re + 1j * im


def sample_ginibre(n: int, rng: RandomStream) -> np.ndarray:
    """N x N matrix with i.i.d. standard-normal real and imaginary parts.

    Convention: each of Re X_ij and Im X_ij has variance 1, so
    E|X_ij|^2 = 2 and E tr(X X^dag) = 2 N^2. The overall scale cancels in
    the trace normalization of the spectra.
    """
    if n < 1:
        raise InvalidDimensionError(f"Ginibre dimension must be >= 1, got {n}")
    return _ginibre(rng.generator(), n)


def schmidt_maxent(n: int) -> SchmidtSpectrum:
    """Uniform spectrum lambda_i = 1/N of the maximally entangled state."""
    if n < 2:
        raise InvalidDimensionError(f"spectrum dimension must be >= 2, got {n}")
    return SchmidtSpectrum(np.full(n, 1.0 / n))


def _spectrum_with_retries(draw, describe: str) -> SchmidtSpectrum:
    # Rank-deficient or non-convergent draws have probability zero for
    # Gaussian input; a handful in a row signals a bug, not noise.
    last: Exception | None = None
    for _ in range(1 + _MAX_RETRIES):
        try:
            return draw()
        except (RankDeficientError, NoConvergenceError) as exc:
            last = exc
    raise SamplerAbortError(
        f"{describe}: {_MAX_RETRIES} retries exhausted ({last})"
    ) from last


def schmidt_hs(n: int, rng: RandomStream) -> SchmidtSpectrum:
    """Spectrum of a Hilbert-Schmidt random pure state (ascending order)."""
    if n < 2:
        raise InvalidDimensionError(f"spectrum dimension must be >= 2, got {n}")
    gen = rng.generator()

    def draw():
        x = _ginibre(gen, n)
        eig = hermitian_eigenvalues(x @ x.conj().T)
        return SchmidtSpectrum.from_unnormalized(eig)

    return _spectrum_with_retries(draw, f"schmidt_hs(n={n}, stream={rng})")


def schmidt_structured(n: int, k: int, rng: RandomStream) -> SchmidtSpectrum:
    """Spectrum of a superposition of k Haar-rotated maximally entangled states.

    Eigenvalues of the trace-normalized Gram matrix of U_1 + ... + U_k with
    independent Haar unitaries U_i. For k = 1 the reduced state is exactly
    I/N, so the uniform spectrum is returned without consuming randomness.
    """
    if n < 2:
        raise InvalidDimensionError(f"spectrum dimension must be >= 2, got {n}")
    if k < 1:
        raise InvalidKError(f"structured ensemble needs k >= 1, got {k}")
    if k == 1:
        return schmidt_maxent(n)
    gen = rng.generator()

    def draw():
        total = np.zeros((n, n), dtype=complex)
        for _ in range(k):
            total += unitary_from_qr(_ginibre(gen, n))
        eig = hermitian_eigenvalues(total @ total.conj().T)
        return SchmidtSpectrum.from_unnormalized(eig)

    return _spectrum_with_retries(draw, f"schmidt_structured(n={n}, k={k}, stream={rng})")


def shuffle_spectrum(spectrum: SchmidtSpectrum, rng: RandomStream) -> SchmidtSpectrum:
    """Uniformly random permutation of the entries; multiset preserved exactly."""
    perm = rng.generator().permutation(spectrum.n)
    return SchmidtSpectrum(spectrum.lambdas[perm])


def draw_spectrum(spec: EnsembleSpec, rng: RandomStream) -> SchmidtSpectrum:
    """One spectrum from a bound ensemble spec (not for the coulomb chain)."""
    if spec.n is None:
        raise InvalidDimensionError("ensemble spec has no dimension bound")
    if spec.kind == "hs":
        return schmidt_hs(spec.n, rng)
    if spec.kind == "structured":
        return schmidt_structured(spec.n, spec.k, rng)
    if spec.kind == "maxent":
        return schmidt_maxent(spec.n)
    raise ValueError("coulomb spectra are produced by metropolis_fixed_trace")


@dataclass(frozen=True)
class MetropolisResult:
    """Thinned chain states plus the observed acceptance rate."""

    samples: tuple[SchmidtSpectrum, ...]
    acceptance_rate: float
    n_proposals: int


def _ln(x: float) -> float:
    return math.log(x) if x > 0.0 else -math.inf


def metropolis_fixed_trace(
    n: int, cfg: McmcConfig, rng: RandomStream, n_samples: int
) -> MetropolisResult:
    """Metropolis chain on the simplex targeting prod_{i<j}(l_i - l_j)^2.

    One sweep is N proposals; each proposal transfers delta ~ U(-step, step)
    between a random pair of coordinates, so the trace is conserved by
    construction. Emits ``n_samples`` states separated by
    ``cfg.thinning_sweeps`` sweeps after ``cfg.burn_in_sweeps`` sweeps of
    burn-in, starting from the uniform state.
    """
    if n < 2:
        raise InvalidDimensionError(f"chain dimension must be >= 2, got {n}")
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    step = cfg.step_size if cfg.step_size is not None else 1.0 / n**2

    gen = rng.generator()
    lam = np.full(n, 1.0 / n)
    lam_row = lam[None, :]
    pivot = np.empty((4, 1))
    work = np.empty((4, n))
    accepted = 0
    proposals = 0

    def run_sweeps(count: int) -> None:
        nonlocal accepted, proposals
        for _ in range(count):
            i_arr = gen.integers(0, n, size=n)
            j_arr = gen.integers(0, n - 1, size=n)
            d_arr = gen.uniform(-step, step, size=n)
            with np.errstate(divide="ignore"):
                logu = np.log(gen.random(size=n))
            for t in range(n):
                i = i_arr[t]
                j = j_arr[t]
                if j >= i:
                    j += 1
                li = lam[i]
                lj = lam[j]
                nli = li - d_arr[t]
                nlj = lj + d_arr[t]
                proposals += 1
                if nli < 0.0 or nlj < 0.0:
                    continue
                pivot[0, 0] = nli
                pivot[1, 0] = nlj
                pivot[2, 0] = li
                pivot[3, 0] = lj
                np.subtract(lam_row, pivot, out=work)
                np.abs(work, out=work)
                with np.errstate(divide="ignore"):
                    np.log(work, out=work)
                work[:, i] = 0.0
                work[:, j] = 0.0
                rows = work.sum(axis=1)
                log_ratio = 2.0 * (
                    rows[0] + rows[1] - rows[2] - rows[3]
                    + _ln(abs(nli - nlj)) - _ln(abs(li - lj))
                )
                if logu[t] < log_ratio:
                    lam[i] = nli
                    lam[j] = nlj
                    accepted += 1

    run_sweeps(cfg.burn_in_sweeps)
    out = []
    for _ in range(n_samples):
        run_sweeps(cfg.thinning_sweeps)
        out.append(SchmidtSpectrum(lam.copy()))
    return MetropolisResult(
        samples=tuple(out),
        acceptance_rate=accepted / proposals if proposals else 0.0,
        n_proposals=proposals,
    )

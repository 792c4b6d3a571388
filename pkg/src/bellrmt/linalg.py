"""Dense complex linear algebra for the samplers.

Only two operations are needed: eigenvalues of Hermitian matrices (the
reduced density matrices are Gram matrices, eigenvectors are never used)
and Haar-distributed unitaries extracted from Ginibre matrices via a
phase-corrected QR decomposition.
"""

from __future__ import annotations

import hashlib

import numpy as np
import scipy.linalg

from .errors import (
    NoConvergenceError,
    NonSquareError,
    NotHermitianError,
    RankDeficientError,
)

# Relative symmetry tolerance: max|H - H^dag| <= HERMITIAN_RTOL * max|H|.
HERMITIAN_RTOL = 1e-10
# Diagonal R entries below RANK_RTOL * ||G||_F flag a rank-deficient input.
RANK_RTOL = 1e-12


def _matrix_digest(a: np.ndarray) -> str:
    return hashlib.blake2b(np.ascontiguousarray(a).tobytes(), digest_size=8).hexdigest()


def _require_square(a: np.ndarray, op: str) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareError(f"{op} requires a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{op}: input contains non-finite entries")
    return a


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    The input must be Hermitian to within ``HERMITIAN_RTOL`` relative to its
    largest entry. Eigenvalues satisfy the trace and Frobenius identities to
    solver precision (asserted in the test suite).
    """
    h = _require_square(h, "hermitian_eigenvalues")
    scale = np.abs(h).max()
    if scale > 0 and np.abs(h - h.conj().T).max() > HERMITIAN_RTOL * scale:
        raise NotHermitianError(
            f"asymmetry {np.abs(h - h.conj().T).max():.3e} exceeds "
            f"{HERMITIAN_RTOL:.0e} * max|H| = {HERMITIAN_RTOL * scale:.3e}"
        )
    try:
        return np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(
            f"eigensolver did not converge (matrix digest {_matrix_digest(h)})"
        ) from exc


def unitary_from_qr(g: np.ndarray) -> np.ndarray:
    """Unitary Q * diag(r_ii / |r_ii|) from the QR decomposition of ``g``.

    The diagonal phase correction makes the output Haar-distributed when the
    input is a Ginibre matrix; the raw Q factor alone is not. Scaling the
    input by any positive constant leaves the output unchanged.
    """
    g = _require_square(np.asarray(g, dtype=complex), "unitary_from_qr")
    q, r = scipy.linalg.qr(g, mode="economic", check_finite=False)
    diag = np.diagonal(r)
    threshold = RANK_RTOL * np.linalg.norm(g)
    if np.abs(diag).min() <= threshold:
        raise RankDeficientError(
            f"min |r_ii| = {np.abs(diag).min():.3e} <= {threshold:.3e} "
            f"(matrix digest {_matrix_digest(g)})"
        )
    return q * (diag / np.abs(diag))

"""Secant kernel and Bell target functional.

The two-party, two-setting, N-outcome Bell quantity evaluated here is a
quadratic form in the square roots of the Schmidt coefficients,

    A_N({lambda_i}) = sum_ij M_ij sqrt(lambda_i lambda_j),
    M_ij = 2 delta_ij - P_ij / N,      P_ij = sec((i - j) pi / (2N)),

under the conjectured optimal measurements. Values below 1 violate the
local-realism bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, InvalidDimensionError


@dataclass(frozen=True)
class BellKernel:
    """Precomputed kernel matrices for one dimension N (read-only)."""

    n: int
    p: np.ndarray  # secant kernel, symmetric, unit diagonal, entries >= 1
    m: np.ndarray  # 2*I - P/N


@lru_cache(maxsize=64)
def build_kernel(n: int) -> BellKernel:
    """Construct (and cache) the secant kernel for dimension ``n >= 2``."""
    if n < 2:
        raise InvalidDimensionError(f"kernel needs N >= 2, got {n}")
    idx = np.arange(1, n + 1)
    p = 1.0 / np.cos((idx[:, None] - idx[None, :]) * np.pi / (2 * n))
    m = 2.0 * np.eye(n) - p / n
    p.flags.writeable = False
    m.flags.writeable = False
    return BellKernel(n=n, p=p, m=m)


def target_value(kernel: BellKernel, spectrum) -> float:
    """Evaluate the Bell target A_N for one Schmidt spectrum.

    The diagonal contribution is accumulated analytically (2 * sum lambda)
    and the quadratic form is reduced with compensated summation, which keeps
    the large-N asymptote comparisons free of cancellation noise.
    """
    lam = spectrum.lambdas
    if kernel.n != lam.shape[0]:
        raise DimensionMismatchError(
            f"kernel N={kernel.n} but spectrum has N={lam.shape[0]}"
        )
    root = np.sqrt(lam)  # clamped zeros stay exactly 0
    quad = math.fsum((kernel.p @ root) * root)
    return 2.0 * math.fsum(lam) - quad / kernel.n


def maxent_target(n: int) -> float:
    """Target value of the uniform (maximally entangled) spectrum.

    Closed form 2 - (1/N^2) sum_ij P_ij, evaluated from the N distinct
    |i - j| diagonals so no N x N kernel needs to be built.
    """
    if n < 2:
        raise InvalidDimensionError(f"maxent target needs N >= 2, got {n}")
    d = np.arange(1, n)
    off = (n - d) / np.cos(d * np.pi / (2 * n))
    kernel_sum = n + 2.0 * math.fsum(off)
    return 2.0 - kernel_sum / n**2

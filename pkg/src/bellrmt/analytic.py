"""Closed-form and quadrature reference values for validating Monte Carlo output.

Collected here are the exact results the simulations are checked against:
the N=2 mean of the Bell target under the Hilbert-Schmidt measure, the
large-N asymptotes for the HS, structured-k and maximally entangled cases,
the Marchenko-Pastur and structured spectral densities, and the
fixed-trace <-> Laguerre moment relation used as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.integrate

from .errors import InvalidKError, QuadratureFailureError

# Catalan's constant, 20 significant digits. The test suite recomputes it
# from the alternating series sum (-1)^n / (2n+1)^2 with series acceleration
# and fails the build on any mismatch beyond 1e-15.
CATALAN = 0.91596559417721901505

MP_SUPPORT_UPPER = 4.0


def catalan_constant() -> float:
    """Catalan's constant G to full double precision."""
    return CATALAN


def _quad(f, a: float, b: float) -> float:
    value, abserr = scipy.integrate.quad(f, a, b, epsabs=1e-9, epsrel=1e-9, limit=200)
    if abserr > 1e-7 * max(1.0, abs(value)):
        raise QuadratureFailureError(
            f"quadrature error estimate {abserr:.2e} too large for value {value:.6e}"
        )
    return value


def mp_density(x: float) -> float:
    """Marchenko-Pastur density sqrt(4 - x) / (2 pi sqrt(x)) on (0, 4)."""
    if x <= 0.0 or x >= MP_SUPPORT_UPPER:
        return 0.0
    return math.sqrt(MP_SUPPORT_UPPER - x) / (2.0 * math.pi * math.sqrt(x))


def mp_cdf(x) -> np.ndarray:
    """Closed-form Marchenko-Pastur CDF (vectorized; used for KS distances)."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, MP_SUPPORT_UPPER)
    theta = np.arcsin(np.sqrt(x) / 2.0)
    return (2.0 * theta + np.sin(2.0 * theta)) / np.pi


def structured_support(k: int) -> float:
    """Upper edge 4(k-1)/k of the structured-k spectral density."""
    _require_k(k)
    return 4.0 * (k - 1) / k


def _require_k(k: int) -> None:
    if k < 2:
        raise InvalidKError(
            f"structured density needs k >= 2 (k=1 has a collapsed spectrum), got {k}"
        )


def structured_density(k: int, x: float) -> float:
    """Spectral density of the sum of k Haar unitaries, on [0, 4(k-1)/k]."""
    upper = structured_support(k)
    if x <= 0.0 or x >= upper:
        return 0.0
    return math.sqrt(4 * k * (k - 1) * x - k**2 * x**2) / (2.0 * math.pi * (k * x - x * x))


def c_k(k: int) -> float:
    """Squared first sqrt-moment of the structured-k density, closed form.

    C_k = (k / pi^2) (2 sqrt(k-1) - (k-2) arcsin(2 sqrt(k-1) / k))^2,
    decreasing from 8/pi^2 at k=2 toward 64/(9 pi^2) as k -> infinity.
    """
    _require_k(k)
    root = math.sqrt(k - 1.0)
    bracket = 2.0 * root - (k - 2.0) * math.asin(2.0 * root / k)
    return k / math.pi**2 * bracket * bracket


def c_k_quadrature(k: int) -> float:
    """C_k from iterated 2-d quadrature of its defining double integral.

    The endpoint singularities of the density are removed by substituting
    x = s sin^2(theta) with s the support width, after which the integrand
    is smooth. Kept independent of :func:`c_k` as a cross-check oracle.
    """
    upper = structured_support(k)

    def weight(theta: float) -> tuple[float, float]:
        # mu_k(x) dx expressed in theta: k s cos^2(theta) / (pi (k - x)) dtheta
        x = upper * math.sin(theta) ** 2
        return k * upper * math.cos(theta) ** 2 / (math.pi * (k - x)), x

    def inner(theta_x: float) -> float:
        wx, x = weight(theta_x)
        if wx == 0.0:
            return 0.0

        def f(theta_y: float) -> float:
            wy, y = weight(theta_y)
            return wx * wy * math.sqrt(x * y)

        return _quad(f, 0.0, math.pi / 2.0)

    return _quad(inner, 0.0, math.pi / 2.0)


def exact_mean_a2() -> float:
    """Exact HS-ensemble mean of the Bell target at N = 2: 3/2 - 3 pi / (16 sqrt 2)."""
    return 1.5 - 3.0 * math.pi / (16.0 * math.sqrt(2.0))


def asymptotic_mean(kind: str, k: int | None = None) -> float:
    """N -> infinity mean of the Bell target for one ensemble kind.

    hs        2 - 1024 G / (9 pi^4)            (~ 0.9301)
    structured 2 - (16 G / pi^2) C_k, k >= 2   (0.796, 0.848, ... toward hs)
    maxent    2 - 16 G / pi^2                  (~ 0.5151)
    """
    if kind == "hs":
        return 2.0 - 1024.0 * CATALAN / (9.0 * math.pi**4)
    if kind == "maxent":
        return 2.0 - 16.0 * CATALAN / math.pi**2
    if kind == "structured":
        if k is None:
            raise InvalidKError("structured asymptote needs k")
        return 2.0 - 16.0 * CATALAN / math.pi**2 * c_k(k)
    raise ValueError(f"no asymptote for ensemble kind {kind!r}")


@dataclass(frozen=True)
class SpectralDensity:
    """Limiting density of N * lambda for an ensemble family."""

    kind: str  # "marchenko-pastur" | "structured"
    k: int | None
    support_upper: float

    @classmethod
    def marchenko_pastur(cls) -> "SpectralDensity":
        return cls(kind="marchenko-pastur", k=None, support_upper=MP_SUPPORT_UPPER)

    @classmethod
    def structured(cls, k: int) -> "SpectralDensity":
        return cls(kind="structured", k=k, support_upper=structured_support(k))

    def pdf(self, x: float) -> float:
        if self.kind == "marchenko-pastur":
            return mp_density(x)
        return structured_density(self.k, x)


@dataclass(frozen=True)
class LueRelationReport:
    """Outcome of the fixed-trace vs Laguerre moment consistency check."""

    lue_moment: float
    gamma_factor: float
    fixed_trace_moment: float
    expected: float
    error: float
    tolerance: float
    passed: bool


def lue_relation_check(tolerance: float = 1e-6) -> LueRelationReport:
    """Check the fixed-trace <-> LUE relation at N = 2 for the sqrt moment.

    The Laguerre expectation <sqrt(l1 l2)> over the jpdf proportional to
    (l1 - l2)^2 exp(-2(l1 + l2)) is computed by iterated 2-d quadrature,
    multiplied by the moment-relation factor Gamma(N^2)/Gamma(N^2 + eta) N^eta
    (= 1/2 at N=2, eta=1), and compared to the exact fixed-trace value
    3 pi / 32.
    """
    n = 2
    eta = 1.0

    def jpdf_part(x: float, y: float) -> float:
        return (x - y) ** 2 * math.exp(-n * (x + y))

    def numer_inner(x: float) -> float:
        return _quad(lambda y: math.sqrt(x * y) * jpdf_part(x, y), 0.0, np.inf)

    def z_inner(x: float) -> float:
        return _quad(lambda y: jpdf_part(x, y), 0.0, np.inf)

    numer = _quad(numer_inner, 0.0, np.inf)
    z = _quad(z_inner, 0.0, np.inf)
    lue_moment = numer / z
    gamma_factor = math.gamma(n**2) / math.gamma(n**2 + eta) * n**eta
    fixed_trace = gamma_factor * lue_moment
    expected = 3.0 * math.pi / 32.0
    error = abs(fixed_trace - expected)
    return LueRelationReport(
        lue_moment=lue_moment,
        gamma_factor=gamma_factor,
        fixed_trace_moment=fixed_trace,
        expected=expected,
        error=error,
        tolerance=tolerance,
        passed=error <= tolerance,
    )


@dataclass(frozen=True)
class AnalyticTable:
    """All closed-form reference values in one serializable bundle."""

    mean_a2_hs: float
    mean_ainf_hs: float
    mean_ainf_structured: dict[int, float]
    catalan: float
    maxent_asymptote: float

    def as_dict(self) -> dict:
        return {
            "mean_a2_hs": self.mean_a2_hs,
            "mean_ainf_hs": self.mean_ainf_hs,
            "mean_ainf_structured": {str(k): v for k, v in self.mean_ainf_structured.items()},
            "catalan": self.catalan,
            "maxent_asymptote": self.maxent_asymptote,
        }


def analytic_table(ks: tuple[int, ...] = (2, 3, 6, 12)) -> AnalyticTable:
    """Reference table for the standard k values plotted in the sweeps."""
    return AnalyticTable(
        mean_a2_hs=exact_mean_a2(),
        mean_ainf_hs=asymptotic_mean("hs"),
        mean_ainf_structured={k: asymptotic_mean("structured", k) for k in ks},
        catalan=CATALAN,
        maxent_asymptote=asymptotic_mean("maxent"),
    )

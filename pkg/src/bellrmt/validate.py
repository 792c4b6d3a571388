"""Validation harness cross-checking the samplers against analytic oracles.

Four independent checks, runnable via ``bellrmt validate``:

* fixed-trace vs Laguerre moment relation at N = 2 (pure quadrature);
* closed-form C_k against 2-d quadrature of its defining integral;
* Kolmogorov-Smirnov distance between rescaled HS spectra and the
  Marchenko-Pastur law;
* Metropolis fixed-trace sampler against the Wishart route for the mean
  Bell target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.stats

from .analytic import c_k, c_k_quadrature, lue_relation_check, mp_cdf
from .bell import build_kernel, target_value
from .ensembles import McmcConfig, metropolis_fixed_trace, schmidt_hs, shuffle_spectrum
from .rng import substream

DEFAULT_VALIDATION_SEED = 20_211_114


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_lue_relation(tolerance: float = 1e-6) -> CheckResult:
    report = lue_relation_check(tolerance)
    return CheckResult(
        name="lue-relation",
        passed=report.passed,
        detail=(
            f"LUE moment {report.lue_moment:.9f} * factor {report.gamma_factor:g} "
            f"= {report.fixed_trace_moment:.9f} vs 3pi/32 = {report.expected:.9f} "
            f"(|err| = {report.error:.2e}, tol {tolerance:g})"
        ),
    )


def check_ck_quadrature(ks=(2, 3, 6, 12, 64), tolerance: float = 1e-6) -> CheckResult:
    worst_k, worst = None, 0.0
    for k in ks:
        err = abs(c_k(k) - c_k_quadrature(k))
        if err > worst:
            worst_k, worst = k, err
    return CheckResult(
        name="ck-quadrature",
        passed=worst <= tolerance,
        detail=f"max |closed - quadrature| = {worst:.2e} at k={worst_k} over k in {tuple(ks)}",
    )


def _hs_target_values(n: int, draws: int, master_seed: int, tag: str) -> np.ndarray:
    kernel = build_kernel(n)
    values = np.empty(draws)
    for i in range(draws):
        s = schmidt_hs(n, substream(master_seed, tag, n, i, "draw"))
        s = shuffle_spectrum(s, substream(master_seed, tag, n, i, "shuffle"))
        values[i] = target_value(kernel, s)
    return values


def check_mp_ks(
    master_seed: int = DEFAULT_VALIDATION_SEED,
    n: int = 100,
    draws: int = 1000,
    threshold: float = 0.05,
) -> CheckResult:
    """Empirical CDF of N*lambda over HS draws vs the Marchenko-Pastur CDF."""
    pooled = np.empty(draws * n)
    for i in range(draws):
        s = schmidt_hs(n, substream(master_seed, "mp-ks", n, i, "draw"))
        pooled[i * n : (i + 1) * n] = n * s.lambdas
    stat = scipy.stats.kstest(pooled, mp_cdf).statistic
    return CheckResult(
        name="mp-ks",
        passed=stat <= threshold,
        detail=f"KS distance {stat:.4f} over {draws} draws at N={n} (threshold {threshold})",
    )


def _chain_target_values(
    n: int, samples: int, cfg: McmcConfig, master_seed: int
) -> tuple[np.ndarray, float]:
    kernel = build_kernel(n)
    chain = metropolis_fixed_trace(
        n, cfg, substream(master_seed, "coulomb-check", n, "chain"), samples
    )
    values = np.empty(samples)
    for i, state in enumerate(chain.samples):
        shuffled = shuffle_spectrum(
            state, substream(master_seed, "coulomb-check", n, i, "shuffle")
        )
        values[i] = target_value(kernel, shuffled)
    return values, chain.acceptance_rate


def check_metropolis_vs_wishart(
    master_seed: int = DEFAULT_VALIDATION_SEED,
    dims: tuple[int, ...] = (2, 50),
    max_sigma: float = 3.0,
) -> CheckResult:
    """Same-law cross-check: chain mean vs Wishart-route mean of the target."""
    details = []
    passed = True
    for n in dims:
        wishart = _hs_target_values(n, 1000, master_seed, "cross-wishart")
        cfg = McmcConfig(burn_in_sweeps=5000, thinning_sweeps=100)
        chain, acc = _chain_target_values(n, 300, cfg, master_seed)
        se = math.hypot(
            wishart.std(ddof=1) / math.sqrt(len(wishart)),
            chain.std(ddof=1) / math.sqrt(len(chain)),
        )
        gap = abs(float(wishart.mean()) - float(chain.mean()))
        passed = passed and gap <= max_sigma * se
        details.append(
            f"N={n}: |{wishart.mean():.5f} - {chain.mean():.5f}| = {gap:.5f} "
            f"vs {max_sigma:g}*se = {max_sigma * se:.5f} (acceptance {acc:.2f})"
        )
    return CheckResult(
        name="metropolis-vs-wishart",
        passed=passed,
        detail="; ".join(details),
    )


def run_all(master_seed: int = DEFAULT_VALIDATION_SEED, quick: bool = False) -> list[CheckResult]:
    """All checks; ``quick`` restricts to the fast quadrature-only pair."""
    checks = [check_lue_relation(), check_ck_quadrature()]
    if not quick:
        checks.append(check_mp_ks(master_seed))
        checks.append(check_metropolis_vs_wishart(master_seed))
    return checks

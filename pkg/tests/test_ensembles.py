import itertools
import math

import numpy as np
import pytest
import scipy.stats
from hypothesis import given
from hypothesis import strategies as st

from bellrmt.bell import build_kernel, target_value
from bellrmt.ensembles import (
    EnsembleSpec,
    McmcConfig,
    SchmidtSpectrum,
    metropolis_fixed_trace,
    sample_ginibre,
    schmidt_hs,
    schmidt_maxent,
    schmidt_structured,
    shuffle_spectrum,
)
from bellrmt.errors import InvalidDimensionError, InvalidKError, NonErgodicConfigError
from bellrmt.rng import RandomStream, substream

SQRT_MOMENT_N2 = 3.0 * math.pi / 32.0  # exact E sqrt(l1 l2) at N=2


class TestSchmidtSpectrum:
    def test_tiny_negatives_are_clamped(self):
        s = SchmidtSpectrum(np.array([0.5, 0.5 + 5e-15, -5e-15]))
        assert s.lambdas.min() == 0.0

    def test_large_negative_rejected(self):
        with pytest.raises(ValueError):
            SchmidtSpectrum(np.array([0.6, 0.5, -0.1]))

    def test_wrong_sum_rejected(self):
        with pytest.raises(ValueError):
            SchmidtSpectrum(np.array([0.6, 0.5]))

    def test_from_unnormalized(self):
        s = SchmidtSpectrum.from_unnormalized(np.array([3.0, 1.0]))
        assert np.allclose(s.lambdas, [0.75, 0.25], atol=0)

    def test_entries_read_only(self):
        s = schmidt_maxent(4)
        with pytest.raises(ValueError):
            s.lambdas[0] = 0.9


class TestGinibre:
    def test_deterministic_for_fixed_stream(self):
        a = sample_ginibre(3, RandomStream(7, 9))
        b = sample_ginibre(3, RandomStream(7, 9))
        assert np.array_equal(a, b)

    def test_streams_independent(self):
        a = sample_ginibre(3, RandomStream(7, 9))
        b = sample_ginibre(3, RandomStream(7, 10))
        assert (a != b).all()

    def test_rejects_n0(self):
        with pytest.raises(InvalidDimensionError):
            sample_ginibre(0, RandomStream(0, 0))

    def test_second_moment_of_trace(self):
        # E|X_ij|^2 = 2 under the variance-1-per-part convention, so
        # E tr(X X^dag) / N^2 = 2.
        n, draws = 50, 10_000
        total = 0.0
        for i in range(draws):
            x = sample_ginibre(n, substream(11, "ginibre-moment", i))
            total += np.vdot(x, x).real / n**2
        assert total / draws == pytest.approx(2.0, abs=0.02)


class TestSchmidtHs:
    def test_normalization(self):
        for i in range(20):
            s = schmidt_hs(6, substream(3, "norm", i))
            assert abs(math.fsum(s.lambdas) - 1.0) <= 1e-12
            assert s.lambdas.min() >= 0.0

    def test_deterministic(self):
        a = schmidt_hs(5, RandomStream(1, 99))
        b = schmidt_hs(5, RandomStream(1, 99))
        assert np.array_equal(a.lambdas, b.lambdas)

    def test_sqrt_moment_at_n2(self):
        # E sqrt(l1 l2) = 3 pi / 32 under the fixed-trace law.
        draws = 100_000
        total = 0.0
        for i in range(draws):
            s = schmidt_hs(2, substream(21, "sqrt-moment", i))
            total += math.sqrt(s.lambdas[0] * s.lambdas[1])
        assert total / draws == pytest.approx(SQRT_MOMENT_N2, abs=0.001)

    def test_exchangeable_after_shuffle(self):
        # After shuffling, E sqrt(l_i l_j) must not depend on the index pair.
        n, draws = 4, 6000
        sums = {pair: 0.0 for pair in itertools.combinations(range(n), 2)}
        for i in range(draws):
            s = schmidt_hs(n, substream(31, "exch", i, "draw"))
            s = shuffle_spectrum(s, substream(31, "exch", i, "shuffle"))
            root = np.sqrt(s.lambdas)
            for a, b in sums:
                sums[a, b] += root[a] * root[b]
        means = np.array([v / draws for v in sums.values()])
        # each pair mean has se ~ 0.13/sqrt(draws) ~ 0.0017
        assert means.max() - means.min() <= 0.01


class TestStructured:
    def test_k1_is_exactly_maxent(self):
        s = schmidt_structured(5, 1, RandomStream(0, 0))
        assert np.array_equal(s.lambdas, np.full(5, 0.2))

    def test_k2_support_edge(self):
        # Limiting density support is [0, 4(k-1)/k] = [0, 2]; allow
        # finite-size slack 0.3 at N=200.
        n = 200
        for i in range(10):
            s = schmidt_structured(n, 2, substream(41, "edge", i))
            assert n * s.lambdas.max() <= 2.3

    def test_large_k_approaches_hs(self):
        n, k, draws = 64, 64, 400
        kernel = build_kernel(n)

        def mean_target(maker, tag):
            vals = np.empty(draws)
            for i in range(draws):
                s = maker(substream(51, tag, i, "draw"))
                s = shuffle_spectrum(s, substream(51, tag, i, "shuffle"))
                vals[i] = target_value(kernel, s)
            return vals.mean(), vals.std(ddof=1) / math.sqrt(draws)

        m_struct, se_struct = mean_target(lambda r: schmidt_structured(n, k, r), "k64")
        m_hs, se_hs = mean_target(lambda r: schmidt_hs(n, r), "hs64")
        assert abs(m_struct - m_hs) <= 0.02
        assert abs(m_struct - m_hs) <= 2.0 * math.hypot(se_struct, se_hs)

    def test_invalid_k(self):
        with pytest.raises(InvalidKError):
            schmidt_structured(4, 0, RandomStream(0, 0))


class TestMaxent:
    def test_n2(self):
        assert np.array_equal(schmidt_maxent(2).lambdas, [0.5, 0.5])

    def test_n3(self):
        assert np.allclose(schmidt_maxent(3).lambdas, np.full(3, 1.0 / 3.0), atol=0)

    def test_n10_sum_exact_under_compensated_summation(self):
        assert math.fsum(schmidt_maxent(10).lambdas) == 1.0

    def test_rejects_n1(self):
        with pytest.raises(InvalidDimensionError):
            schmidt_maxent(1)


class TestShuffle:
    def test_symmetric_input_unchanged(self):
        s = shuffle_spectrum(schmidt_maxent(2), RandomStream(0, 5))
        assert np.array_equal(s.lambdas, [0.5, 0.5])

    def test_multiset_preserved(self):
        s = schmidt_hs(16, RandomStream(6, 0))
        t = shuffle_spectrum(s, RandomStream(6, 1))
        assert np.array_equal(np.sort(s.lambdas), np.sort(t.lambdas))

    def test_orderings_uniform(self):
        base = SchmidtSpectrum(np.array([0.5, 0.3, 0.2]))
        counts = {}
        shuffles = 60_000
        for i in range(shuffles):
            t = shuffle_spectrum(base, substream(61, "unif", i))
            counts[tuple(t.lambdas)] = counts.get(tuple(t.lambdas), 0) + 1
        assert len(counts) == 6
        for c in counts.values():
            assert abs(c / shuffles - 1.0 / 6.0) <= 0.01


class TestMetropolis:
    def test_step_must_be_positive(self):
        with pytest.raises(NonErgodicConfigError):
            McmcConfig(step_size=-0.1)

    def test_sum_conserved_and_acceptance_reported(self):
        cfg = McmcConfig(burn_in_sweeps=200, thinning_sweeps=5)
        res = metropolis_fixed_trace(6, cfg, RandomStream(71, 0), 50)
        assert len(res.samples) == 50
        for s in res.samples:
            assert abs(math.fsum(s.lambdas) - 1.0) <= 1e-12
        assert 0.0 < res.acceptance_rate < 1.0
        assert res.n_proposals == (200 + 50 * 5) * 6

    def test_default_step_hits_acceptance_window(self):
        for n in (2, 50):
            cfg = McmcConfig(burn_in_sweeps=300, thinning_sweeps=1)
            res = metropolis_fixed_trace(n, cfg, RandomStream(72, n), 200)
            assert 0.2 <= res.acceptance_rate <= 0.6

    def test_n2_marginal_matches_fixed_trace_density(self):
        # At N=2 the jpdf restricted to the simplex gives the one-coordinate
        # marginal p(l) = 3 (2l - 1)^2 on [0, 1].
        cfg = McmcConfig(burn_in_sweeps=1000, thinning_sweeps=2)
        res = metropolis_fixed_trace(2, cfg, RandomStream(73, 0), 100_000)
        first = np.array([s.lambdas[0] for s in res.samples])
        cdf = lambda x: ((2.0 * np.asarray(x) - 1.0) ** 3 + 1.0) / 2.0
        stat = scipy.stats.kstest(first, cdf).statistic
        assert stat <= 0.02

    def test_n2_sqrt_moment(self):
        cfg = McmcConfig(burn_in_sweeps=2000, thinning_sweeps=25)
        res = metropolis_fixed_trace(2, cfg, RandomStream(74, 0), 4000)
        vals = [math.sqrt(s.lambdas[0] * s.lambdas[1]) for s in res.samples]
        assert np.mean(vals) == pytest.approx(SQRT_MOMENT_N2, abs=0.003)


class TestEnsembleSpec:
    def test_structured_requires_k(self):
        with pytest.raises(InvalidKError):
            EnsembleSpec("structured")

    def test_coulomb_gets_default_mcmc(self):
        assert EnsembleSpec("coulomb").mcmc == McmcConfig()

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            EnsembleSpec("bures")

    def test_bind_dimension(self):
        spec = EnsembleSpec("hs")
        assert spec.at(8).n == 8


@given(st.integers(min_value=2, max_value=16), st.integers(min_value=0, max_value=10**6))
def test_hs_spectra_valid_for_any_stream(n, idx):
    s = schmidt_hs(n, RandomStream(81, idx))
    assert s.n == n
    assert s.lambdas.min() >= 0.0
    assert abs(math.fsum(s.lambdas) - 1.0) <= 1e-12

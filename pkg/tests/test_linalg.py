import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bellrmt.errors import NonSquareError, NotHermitianError, RankDeficientError
from bellrmt.linalg import hermitian_eigenvalues, unitary_from_qr
from bellrmt.rng import RandomStream


def random_hermitian(n, seed):
    gen = RandomStream(seed, 0).generator()
    x = gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))
    return (x + x.conj().T) / 2


def test_identity_eigenvalues():
    assert np.allclose(hermitian_eigenvalues(np.eye(4)), np.ones(4), atol=1e-14)


def test_two_by_two_hand_solution():
    # [[2, i], [-i, 2]]: characteristic polynomial (2 - x)^2 - 1 = 0 -> 1, 3.
    h = np.array([[2.0, 1j], [-1j, 2.0]])
    assert np.allclose(hermitian_eigenvalues(h), [1.0, 3.0], atol=1e-12)


def test_trace_and_frobenius_identities():
    h = random_hermitian(8, seed=5)
    eig = hermitian_eigenvalues(h)
    assert eig.shape == (8,)
    assert np.all(np.diff(eig) >= 0)
    assert abs(eig.sum() - np.trace(h).real) <= 1e-10 * 8
    assert abs((eig**2).sum() - np.linalg.norm(h, "fro") ** 2) <= 1e-8 * 8


def test_non_square_rejected():
    with pytest.raises(NonSquareError):
        hermitian_eigenvalues(np.ones((2, 3)))


def test_not_hermitian_rejected():
    h = np.array([[1.0, 0.1], [0.0, 1.0]])
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(h)


@given(st.integers(min_value=2, max_value=10), st.integers(min_value=0, max_value=2**32))
def test_eigenvalues_permutation_free(n, seed):
    h = random_hermitian(n, seed)
    perm = RandomStream(seed, 1).generator().permutation(n)
    p = np.eye(n)[perm]
    a = hermitian_eigenvalues(h)
    b = hermitian_eigenvalues(p @ h @ p.T)
    assert np.abs(a - b).max() <= 1e-10


@given(
    st.integers(min_value=2, max_value=10),
    st.integers(min_value=0, max_value=2**32),
    st.floats(min_value=0.01, max_value=100.0),
)
def test_eigenvalue_scale_equivariance(n, seed, c):
    h = random_hermitian(n, seed)
    a = hermitian_eigenvalues(c * h)
    b = c * hermitian_eigenvalues(h)
    scale = np.abs(b).max()
    assert np.abs(a - b).max() <= 1e-10 * max(scale, 1.0)


def ginibre(n, seed):
    gen = RandomStream(seed, 2).generator()
    return gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))


def test_identity_maps_to_identity():
    u = unitary_from_qr(np.eye(3, dtype=complex))
    assert np.abs(u - np.eye(3)).max() <= 1e-14


def test_unitarity_contract():
    for seed in range(5):
        u = unitary_from_qr(ginibre(6, seed))
        assert np.abs(u.conj().T @ u - np.eye(6)).max() <= 1e-10


def test_rank_deficient_detected():
    g = ginibre(4, 0)
    g[:, 2] = 0.0
    with pytest.raises(RankDeficientError):
        unitary_from_qr(g)


@given(st.integers(min_value=0, max_value=2**32), st.floats(min_value=0.01, max_value=100.0))
def test_positive_rescaling_invariance(seed, c):
    g = ginibre(5, seed)
    a = unitary_from_qr(g)
    b = unitary_from_qr(c * g)
    assert np.abs(a - b).max() <= 1e-10


def test_haar_first_moment_of_abs_trace_squared():
    # For Haar-distributed U on U(N), E |tr U|^2 = 1; the uncorrected QR
    # factor fails this badly, so the check pins the phase convention.
    total = 0.0
    draws = 10_000
    for seed in range(draws):
        u = unitary_from_qr(ginibre(4, seed))
        total += abs(np.trace(u)) ** 2
    assert abs(total / draws - 1.0) <= 0.05

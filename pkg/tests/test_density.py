import numpy as np
import pytest
from hypothesis import given, strategies as st

from qoperad import density
from qoperad.density import InvalidStateError, random_density
from qoperad.prob import EntropyFamily, SHANNON

HALF = np.full((2, 2), 0.5)


def states(n_max=6):
    return st.tuples(st.integers(0, 2**32 - 1), st.integers(1, n_max)).map(
        lambda a: random_density(np.random.default_rng(a[0]), a[1]))


def test_validation():
    with pytest.raises(InvalidStateError):
        density.check_density(np.diag([0.5, 0.0]))
    with pytest.raises(InvalidStateError):
        density.check_density(np.array([[0.5, 1.0], [0.0, 0.5]]))
    with pytest.raises(InvalidStateError):
        density.check_density(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidStateError):
        density.check_density(np.ones((2, 3)) / 2)


def test_diag_and_eig_examples():
    assert np.allclose(density.diag_prob(np.diag([0.3, 0.7])), [0.3, 0.7])
    assert np.allclose(density.diag_prob(HALF), [0.5, 0.5])
    assert np.allclose(density.eig_prob(HALF), [1.0, 0.0], atol=1e-14)
    assert np.allclose(density.eig_prob(np.diag([0.3, 0.7])), [0.7, 0.3])


def test_diag_prob_is_entry_extraction(rng):
    rho = random_density(rng, 3)
    assert np.array_equal(density.diag_prob(rho), np.array([rho[k, k].real for k in range(3)]))


def test_eig_prob_against_closed_form_2x2(rng):
    for _ in range(50):
        rho = random_density(rng, 2)
        a, d = rho[0, 0].real, rho[1, 1].real
        b = abs(rho[0, 1])
        disc = np.sqrt((a - d) ** 2 / 4 + b * b)
        want = [(a + d) / 2 + disc, (a + d) / 2 - disc]
        assert np.max(np.abs(density.eig_prob(rho) - want)) <= 1e-10


def test_jacobi_reconstruction(rng):
    for n in range(1, 8):
        a = random_density(rng, n)
        w, v = density.jacobi_eigh(a)
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - a)) <= 1e-10
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-10


def test_majorization_examples():
    assert density.majorizes([1, 0], [0.5, 0.5])
    assert not density.majorizes([0.5, 0.5], [1, 0])
    assert density.majorizes([0.5, 0.3, 0.2], [0.4, 0.4, 0.2])


def test_entropy_examples():
    psi = np.array([1, 1j]) / np.sqrt(2)
    assert abs(density.von_neumann(density.pure_state(psi))) < 1e-12
    for n in (1, 2, 5):
        assert np.isclose(density.von_neumann(density.maximally_mixed(n)), np.log(n))
    assert np.isclose(density.quantum_entropy(EntropyFamily.renyi(2), np.diag([0.5, 0.5])), np.log(2))


@given(states())
def test_schur_majorization(rho):
    lam = density.eig_prob(rho)
    assert density.majorizes(lam, np.sort(density.diag_prob(rho))[::-1])
    assert SHANNON(density.diag_prob(rho)) >= SHANNON(lam) - 1e-9


@given(states(), st.integers(0, 2**32 - 1))
def test_unitary_invariance(rho, seed):
    u = density.random_unitary(np.random.default_rng(seed), rho.shape[0])
    moved = u @ rho @ u.conj().T
    assert np.max(np.abs(density.eig_prob(moved) - density.eig_prob(rho))) <= 1e-9


@given(states())
def test_von_neumann_matches_reference_eigvalsh(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 0]
    assert abs(density.von_neumann(rho) + np.sum(w * np.log(w))) <= 1e-9


def test_psd_sqrt(rng):
    a = random_density(rng, 4)
    r = density.psd_sqrt(a)
    assert np.max(np.abs(r @ r - a)) <= 1e-10


def test_json_roundtrip(rng):
    rho = random_density(rng, 3)
    assert np.array_equal(density.from_json(density.to_json(rho)), rho)

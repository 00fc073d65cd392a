import numpy as np
import pytest
from hypothesis import given, strategies as st

from qoperad import density, prob, qstate
from qoperad.density import InvalidStateError, random_density
from qoperad.qstate import ONE, gamma_lambda, gamma_p, insert_lambda, insert_p

HALF = np.full((2, 2), 0.5, dtype=complex)
MIX2 = np.eye(2) / 2


def nested(seed, m_max=3, r_max=2):
    r = np.random.default_rng(seed)
    m = int(r.integers(1, m_max + 1))
    root = random_density(r, m)
    mids = [random_density(r, int(r.integers(1, 4))) for _ in range(m)]
    leaves = [[random_density(r, int(r.integers(1, r_max + 1))) for _ in range(x.shape[0])] for x in mids]
    return root, mids, leaves


def test_gamma_p_examples():
    assert np.allclose(gamma_p(HALF, [ONE, ONE]), np.diag([0.5, 0.5]))
    assert not np.allclose(gamma_p(HALF, [ONE, ONE]), HALF)
    assert np.allclose(gamma_p(np.diag([0.5, 0.5]), [ONE, ONE]), np.diag([0.5, 0.5]))
    assert np.allclose(gamma_p(HALF, [np.diag([1, 0]), MIX2]), np.diag([0.5, 0, 0.25, 0.25]))


def test_gamma_lambda_examples():
    assert np.allclose(gamma_lambda(HALF, [ONE, ONE]), np.diag([1, 0]), atol=1e-14)
    assert np.allclose(gamma_lambda(np.diag([0.3, 0.7]), [ONE, ONE]), np.diag([0.7, 0.3]))
    assert np.allclose(gamma_lambda(HALF, [MIX2, np.diag([1, 0])]), np.diag([0.5, 0.5, 0, 0]), atol=1e-14)


def test_arity_mismatch():
    with pytest.raises(InvalidStateError):
        gamma_p(HALF, [ONE])


def test_insert_examples(rng):
    s = random_density(rng, 3)
    assert np.allclose(insert_p(ONE, 1, s), s)
    rho = np.array([[0.6, 0.2 + 0.1j], [0.2 - 0.1j, 0.4]])
    out = insert_p(rho, 1, MIX2)
    want = np.zeros((3, 3), dtype=complex)
    want[:2, :2] = 0.3 * np.eye(2)
    want[2, 2] = 0.4
    assert np.array_equal(out, want)


def test_insert_p_keeps_other_coherences(rng):
    rho = random_density(rng, 3)
    out = insert_p(rho, 2, MIX2)
    # rows/columns 1 and 3 of rho land at 1 and 4
    assert out[0, 3] == rho[0, 2] and out[3, 0] == rho[2, 0]
    assert np.all(out[1:3, [0, 3]] == 0)


@given(st.integers(0, 2**32 - 1))
def test_iterated_insertion_equals_gamma_p(seed):
    r = np.random.default_rng(seed)
    n = int(r.integers(1, 5))
    rho = random_density(r, n)
    parts = [random_density(r, int(r.integers(1, 4))) for _ in range(n)]
    got = qstate.iterated_insert(rho, parts)
    want = gamma_p(rho, parts)
    assert got.shape == want.shape
    assert np.array_equal(got == 0, want == 0) or np.max(np.abs(got - want)) <= 1e-12
    assert np.max(np.abs(got - want)) <= 1e-12


@given(st.integers(0, 2**32 - 1))
def test_iterated_lambda_insertion_shares_spectrum(seed):
    r = np.random.default_rng(seed)
    n = int(r.integers(1, 4))
    rho = random_density(r, n)
    parts = [random_density(r, int(r.integers(1, 4))) for _ in range(n)]
    got = qstate.iterated_insert(rho, parts, insert=insert_lambda)
    want = gamma_lambda(rho, parts)
    assert np.max(np.abs(density.eig_prob(got) - density.eig_prob(want))) <= 1e-9


@given(st.integers(0, 2**32 - 1))
def test_gamma_p_associativity(seed):
    root, mids, leaves = nested(seed)
    lhs = gamma_p(gamma_p(root, mids), [x for b in leaves for x in b])
    rhs = gamma_p(root, [gamma_p(x, ls) for x, ls in zip(mids, leaves)])
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


@given(st.integers(0, 2**32 - 1))
def test_gamma_lambda_scalar_leaves_share_spectrum(seed):
    # with 1x1 leaves both sides carry the weights {lambda_i mu_ij}
    root, mids, _ = nested(seed)
    leaves = [[ONE] * x.shape[0] for x in mids]
    lhs = gamma_lambda(gamma_lambda(root, mids), [x for b in leaves for x in b])
    rhs = gamma_lambda(root, [gamma_lambda(x, ls) for x, ls in zip(mids, leaves)])
    assert np.max(np.abs(density.eig_prob(lhs) - density.eig_prob(rhs))) <= 1e-9


def test_gamma_lambda_spectra_differ_with_mixed_leaves():
    root = np.diag([0.5, 0.5])
    mids = [np.diag([0.9, 0.1]), np.diag([0.6, 0.4])]
    leaves = [ONE, MIX2, ONE, ONE]
    lhs = gamma_lambda(gamma_lambda(root, mids), leaves)
    rhs = gamma_lambda(root, [gamma_lambda(mids[0], leaves[:2]), gamma_lambda(mids[1], leaves[2:])])
    assert np.max(np.abs(density.eig_prob(lhs) - density.eig_prob(rhs))) > 0.1


def test_gamma_lambda_entrywise_associativity_counterexample():
    # global re-sorting of the intermediate spectrum reorders the leaf weights
    root = np.diag([0.5, 0.5])
    mids = [np.diag([0.9, 0.1]), np.diag([0.6, 0.4])]
    leaves = [ONE] * 4
    lhs = gamma_lambda(gamma_lambda(root, mids), leaves)
    rhs = gamma_lambda(root, [gamma_lambda(x, [ONE, ONE]) for x in mids])
    assert np.allclose(np.diag(lhs).real, [0.45, 0.3, 0.2, 0.05])
    assert np.allclose(np.diag(rhs).real, [0.45, 0.05, 0.3, 0.2])


@given(st.integers(0, 2**32 - 1))
def test_equivariance_identities(seed):
    r = np.random.default_rng(seed)
    n = int(r.integers(1, 4))
    rho = random_density(r, n)
    parts = [random_density(r, int(r.integers(1, 4))) for _ in range(n)]
    dims = [x.shape[0] for x in parts]
    sigma = list(r.permutation(n))
    inv = qstate.inverse_perm(sigma)
    lhs = gamma_p(qstate.perm_act(sigma, rho), [parts[inv[j]] for j in range(n)])
    rhs = qstate.perm_act(qstate.block_perm(sigma, dims), gamma_p(rho, parts))
    assert np.max(np.abs(lhs - rhs)) <= 1e-10
    sigmas = [list(r.permutation(d)) for d in dims]
    lhs = gamma_p(rho, [qstate.perm_act(s, x) for s, x in zip(sigmas, parts)])
    rhs = qstate.perm_act(qstate.blockwise_perm(sigmas), gamma_p(rho, parts))
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_perm_act_examples():
    rho = np.diag([0.3, 0.7])
    assert np.array_equal(qstate.perm_act([0, 1], rho), rho)
    assert np.allclose(qstate.perm_act([1, 0], rho), np.diag([0.7, 0.3]))


def test_gamma_lambda_breaks_root_equivariance():
    rho = np.diag([0.3, 0.7])
    parts = [ONE, MIX2]
    sigma = [1, 0]
    lhs = gamma_lambda(qstate.perm_act(sigma, rho), [parts[1], parts[0]])
    rhs = qstate.perm_act(qstate.block_perm(sigma, [1, 2]), gamma_lambda(rho, parts))
    assert np.max(np.abs(lhs - rhs)) > 0.1


@given(st.integers(0, 2**32 - 1))
def test_restriction_to_simplex(seed):
    r = np.random.default_rng(seed)
    n = int(r.integers(1, 4))
    P = r.dirichlet(np.ones(n))
    parts = [r.dirichlet(np.ones(int(r.integers(1, 4)))) for _ in range(n)]
    got = gamma_p(np.diag(P), [np.diag(q) for q in parts])
    assert np.max(np.abs(got - np.diag(prob.compose(P, parts)))) <= 1e-12


@given(st.integers(0, 2**32 - 1))
def test_outputs_are_states(seed):
    r = np.random.default_rng(seed)
    n = int(r.integers(1, 4))
    rho = random_density(r, n)
    parts = [random_density(r, int(r.integers(1, 4))) for _ in range(n)]
    i = int(r.integers(1, n + 1))
    for out in (gamma_p(rho, parts), gamma_lambda(rho, parts),
                insert_p(rho, i, parts[0]), insert_lambda(rho, i, parts[0])):
        assert density.is_density(out)

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qoperad import density, measurement, trees
from qoperad.density import random_density
from qoperad.measurement import MeasurementError, MeasurementTree, ProjectiveMeasurement
from qoperad.prob import EntropyFamily, SHANNON

C2, LEAF = trees.corolla(2), trees.leaf()
RENYI2 = EntropyFamily.renyi(2)
TSALLIS2 = EntropyFamily.tsallis(2)


def refinements_112():
    """All three planar trees with leaves carrying blocks (1, 1, 2)."""
    return [trees.corolla(3), trees.graft(C2, [C2, LEAF]), trees.graft(C2, [LEAF, C2])]


def test_project_channel_block_mask(rng):
    rho = random_density(rng, 3)
    meas = ProjectiveMeasurement.from_blocks([2, 1])
    probs, states, out = measurement.project_channel(meas, rho)
    want = rho.copy()
    want[:2, 2] = want[2, :2] = 0
    assert np.array_equal(out, want)
    assert np.isclose(probs.sum(), 1.0)
    assert np.allclose(states[1], np.diag([0, 0, 1]))


def test_block_channel_examples(rng):
    rho = random_density(rng, 4)
    assert np.array_equal(measurement.block_channel([4], rho), rho)
    assert np.allclose(measurement.block_channel([1] * 4, rho), np.diag(density.diag_prob(rho)))
    mask = np.kron(np.eye(2), np.ones((2, 2))).astype(bool)
    assert np.array_equal(measurement.block_channel([2, 2], rho), np.where(mask, rho, 0))


def test_measurement_validation():
    with pytest.raises(MeasurementError):
        ProjectiveMeasurement((np.diag([1, 0]), np.diag([1, 0])))
    with pytest.raises(MeasurementError):
        ProjectiveMeasurement((np.diag([1, 0]),))
    with pytest.raises(MeasurementError):
        MeasurementTree.from_blocks(C2, [1, 1, 1])


def test_corolla_tree_is_flat_channel(rng):
    rho = random_density(rng, 4)
    m = MeasurementTree.from_blocks(trees.corolla(3), [1, 1, 2])
    p, s = measurement.tree_proj_channel(m, rho)
    fp, fs, _ = measurement.project_channel(m.flat(), rho)
    assert np.allclose(p, fp)
    for a, b in zip(s, fs):
        assert np.allclose(a, b)


def test_refinements_collapse(rng):
    rho = random_density(rng, 4)
    outs = [measurement.tree_proj_channel(MeasurementTree.from_blocks(t, [1, 1, 2]), rho)
            for t in refinements_112()]
    for p, s in outs[1:]:
        assert np.max(np.abs(p - outs[0][0])) <= 1e-12
        for a, b in zip(s, outs[0][1]):
            assert np.max(np.abs(a - b)) <= 1e-12


def test_zero_branch_is_pruned():
    # no weight on the first two basis vectors: the left subtree dies
    rho = np.diag([0, 0, 0.5, 0.5]).astype(complex)
    m = MeasurementTree.from_blocks(trees.graft(C2, [C2, LEAF]), [1, 1, 2])
    p, s = measurement.tree_proj_channel(m, rho)
    assert np.array_equal(p, [0, 0, 1])
    assert s[0] is None and s[1] is None
    assert np.allclose(s[2], np.diag([0, 0, 0.5, 0.5]))


def test_telescoping(rng):
    for t in refinements_112():
        m = MeasurementTree.from_blocks(t, [1, 1, 2])
        assert measurement.telescoping_residual(m, random_density(rng, 4)) <= 1e-12


def test_leaf_tree_entropy_is_state_entropy(rng):
    rho = random_density(rng, 3)
    m = MeasurementTree.from_blocks(LEAF, [3])
    for fam in (SHANNON, RENYI2):
        assert np.isclose(measurement.tree_entropy_quantum(fam, m, rho), density.quantum_entropy(fam, rho))


def test_two_leaf_fixtures():
    # blocks (1, 1) on diag(.3, .7): outcome states are pure
    m = MeasurementTree.from_blocks(C2, [1, 1])
    rho = np.diag([0.3, 0.7])
    assert abs(measurement.tree_entropy_quantum(TSALLIS2, m, rho) - 0.42) <= 1e-9
    assert abs(measurement.tree_entropy_quantum(RENYI2, m, rho) + np.log(0.58)) <= 1e-9
    # blocks (1, 2) on diag(.5, .25, .25): probs (1/2, 1/2), second state I/2
    m = MeasurementTree.from_blocks(C2, [1, 2])
    rho = np.diag([0.5, 0.25, 0.25])
    assert abs(measurement.tree_entropy_quantum(TSALLIS2, m, rho) - 0.75) <= 1e-9
    assert abs(measurement.tree_entropy_quantum(RENYI2, m, rho) - 1.5 * np.log(2)) <= 1e-9


def test_von_neumann_tree_independent_tsallis_not(rng):
    rho = random_density(rng, 4)
    want = density.von_neumann(measurement.block_channel([1, 1, 2], rho))
    ts = []
    for t in refinements_112():
        m = MeasurementTree.from_blocks(t, [1, 1, 2])
        assert abs(measurement.tree_entropy_quantum(SHANNON, m, rho) - want) <= 1e-9
        ts.append(measurement.tree_entropy_quantum(TSALLIS2, m, rho))
    assert max(ts) - min(ts) > 1e-6


@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_zero_padding(seed, extra):
    rho = random_density(np.random.default_rng(seed), 3)
    big = measurement.zero_pad(rho, extra)
    for fam in (SHANNON, RENYI2, TSALLIS2):
        assert abs(density.quantum_entropy(fam, big) - density.quantum_entropy(fam, rho)) <= 1e-9


def test_json_roundtrip():
    tau = trees.graft(C2, [C2, LEAF])
    m = MeasurementTree.from_blocks(tau, [1, 1, 2])
    back = measurement.from_json(measurement.to_json(m))
    assert back.tree == m.tree
    for v in m.projectors:
        assert np.array_equal(back.projectors[v], m.projectors[v])

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qoperad import channels, density, measurement, trees
from qoperad.channels import ChannelError, TreeKrausChannel
from qoperad.density import random_density

C2, C3, LEAF = trees.corolla(2), trees.corolla(3), trees.leaf()


def channel_strategy(max_leaves=5, max_dim=3):
    @st.composite
    def build(draw):
        r = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
        tau = trees.random_tree(r, draw(st.integers(2, max_leaves)))
        return channels.random_channel(r, tau, draw(st.integers(1, max_dim)))
    return build()


def test_unit_channel_is_identity(rng):
    rho = random_density(rng, 3)
    assert np.array_equal(channels.apply_channel(channels.unit_channel(3), rho), rho)


def test_projective_corolla_matches_project_channel(rng):
    ps = measurement.block_projectors([1, 2])
    rho = random_density(rng, 3)
    got = channels.apply_channel(channels.projective_channel(ps), rho)
    _, _, want = measurement.project_channel(measurement.ProjectiveMeasurement(tuple(ps)), rho)
    assert np.allclose(got, want)


def test_two_level_matches_flat_products(rng):
    tau = trees.graft(C2, [C2, LEAF])
    c = channels.random_channel(rng, tau, 2)
    a = c.ops
    # leaf operator: leaf edge on the left, root edge on the right
    flat = [a[(0, 0)] @ a[(0,)], a[(0, 1)] @ a[(0,)], a[(1,)]]
    rho = random_density(rng, 2)
    want = sum(k @ rho @ k.conj().T for k in flat)
    assert np.allclose(channels.apply_channel(c, rho), want, atol=1e-14)
    assert all(np.array_equal(x, y) for x, y in zip(channels.kraus_ops(c), flat))


def test_vertex_normalization_enforced(rng):
    with pytest.raises(ChannelError):
        TreeKrausChannel(C2, {(0,): np.eye(2), (1,): np.eye(2)}, 2)
    with pytest.raises(ChannelError):
        TreeKrausChannel(C2, {(0,): np.eye(2)}, 2)


def test_compose_units_and_corollas(rng):
    c = channels.random_channel(rng, C2, 2)
    same = channels.compose_qc(c, [channels.unit_channel(2)] * 2)
    assert same.tree == c.tree
    rho = random_density(rng, 2)
    assert np.allclose(channels.apply_channel(same, rho), channels.apply_channel(c, rho))
    d = channels.random_channel(rng, C2, 2)
    cc = channels.compose_qc(c, [d, channels.unit_channel(2)])
    assert cc.tree == trees.graft(C2, [C2, LEAF])
    # first leaf block: c's first edge, then d's edges
    k0 = c.ops[(0,)]
    inner = sum(a @ k0 @ rho @ k0.conj().T @ a.conj().T for a in d.ops.values())
    k1 = c.ops[(1,)]
    assert np.allclose(channels.apply_channel(cc, rho), inner + k1 @ rho @ k1.conj().T)


@given(channel_strategy())
def test_kraus_normalization_and_trace(c):
    assert channels.kraus_residual(c) <= 1e-9
    rho = random_density(np.random.default_rng(c.dim), c.dim)
    out = channels.apply_channel(c, rho)
    assert abs(np.trace(out) - 1) <= 1e-9
    assert density.is_density(out)


@given(channel_strategy())
def test_differential_terms_are_normalized(c):
    d = channels.differential(c)
    assert len(d.terms) == len(trees.expansions(c.tree))
    for rs, rt in channels.split_residuals(c, d):
        assert rs <= 1e-8 and rt <= 1e-8
    for sign, term in d.terms:
        assert channels.kraus_residual(term) <= 1e-8
        # contracting the new edge recovers the original tree
        assert c.tree in [t for t, _, _ in trees.contractions(term.tree)]


def test_two_leaf_corolla_has_no_expansions(rng):
    c = channels.random_channel(rng, C2, 2)
    assert channels.differential(c).terms == ()


def test_differential_squared_skeleton_cancels(rng):
    c = channels.random_channel(rng, trees.corolla(5), 2)
    terms = []
    for s1, t1 in channels.differential(c).terms:
        for s2, t2 in channels.differential(t1).terms:
            terms.append((t2.tree, s1 * s2))
    assert trees.signed_sum(terms) == {}


def test_algebra_action_examples(rng):
    rho = random_density(rng, 3)
    assert np.allclose(channels.algebra_action(channels.unit_channel(3), [rho]), rho)
    ps = measurement.block_projectors([1, 2])
    c = channels.projective_channel(ps)
    _, _, want = measurement.project_channel(measurement.ProjectiveMeasurement(tuple(ps)), rho)
    assert np.allclose(channels.algebra_action(c, [rho, rho]), want)
    # diagonal inputs, coordinate projectors: weights Tr(P_i rho_i)
    c = channels.projective_channel(measurement.block_projectors([1, 1]))
    r1, r2 = np.diag([0.2, 0.8]), np.diag([0.6, 0.4])
    assert np.allclose(channels.algebra_action(c, [r1, r2]), np.diag([0.2, 0.4]) / 0.6)


def test_convex_sums(rng):
    a = channels.random_channel(rng, C2, 2)
    b = channels.random_channel(rng, C2, 2)
    rho = random_density(rng, 2)
    single = channels.convex_combine([1.0], [a])
    assert np.allclose(single.apply(rho), channels.apply_channel(a, rho))
    mix = channels.convex_combine([0.5, 0.5], [a, b])
    want = 0.5 * channels.apply_channel(a, rho) + 0.5 * channels.apply_channel(b, rho)
    assert np.allclose(mix.apply(rho), want)
    u = channels.convex_combine([0.25, 0.75], [channels.unit_channel(2)] * 2)
    comp = channels.compose_sums(mix, [u, u])
    assert len(comp.terms) == 2 * 2 * 2
    assert np.isclose(sum(w for w, _ in comp.terms), 1.0)
    with pytest.raises(Exception):
        channels.convex_combine([0.7, 0.7], [a, b])


def test_json_roundtrip(rng):
    c = channels.random_channel(rng, trees.graft(C2, [C3, LEAF]), 2)
    back = channels.from_json(channels.to_json(c))
    assert back.tree == c.tree
    assert all(np.array_equal(back.ops[e], c.ops[e]) for e in c.ops)

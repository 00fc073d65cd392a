import numpy as np
import pytest
from hypothesis import given, strategies as st

from qoperad import trees
from qoperad.trees import Tree, TreeError, corolla, graft, insert, leaf

LEAF = leaf()


def tree_strategy(max_leaves=6):
    @st.composite
    def build(draw):
        seed = draw(st.integers(0, 2**32 - 1))
        n = draw(st.integers(1, max_leaves))
        return trees.random_tree(np.random.default_rng(seed), n)
    return build()


def test_graft_units_and_balanced():
    c2 = corolla(2)
    assert graft(c2, [LEAF, LEAF]) == c2
    bal = graft(c2, [c2, c2])
    assert bal.n_leaves == 4
    assert len([v for v in bal.vertices() if not bal.subtree(v).is_leaf]) == 3
    assert bal.canonical == "((()())(()()))"


def test_graft_associativity_nested_corollas():
    c2, c3 = corolla(2), corolla(3)
    inner = [graft(c3, [c2, LEAF, LEAF]), graft(c2, [LEAF, c2])]
    lhs = graft(c2, inner)
    mid = graft(c2, [c3, c2])
    rhs = graft(mid, [c2, LEAF, LEAF, LEAF, c2])
    assert lhs.canonical == rhs.canonical


def test_insert_units():
    s = corolla(3)
    assert insert(LEAF, 1, s) == s
    for i in (1, 2, 3):
        assert insert(s, i, LEAF) == s


def test_leaf_path():
    assert trees.leaf_path(LEAF, 1) == []
    assert trees.leaf_path(corolla(4), 3) == [(2,)]
    bal = graft(corolla(2), [corolla(2), corolla(2)])
    # leaf 3 sits under the second internal vertex
    assert trees.leaf_path(bal, 3) == [(1, 0), (1,)]
    with pytest.raises(TreeError):
        trees.leaf_path(bal, 5)


def test_edges_in_dfs_order_and_signs():
    bal = graft(corolla(2), [corolla(2), corolla(2)])
    assert bal.edges() == [(0,), (0, 0), (0, 1), (1,), (1, 0), (1, 1)]
    assert [trees.edge_sign(bal, e) for e in bal.edges()] == [1, -1, 1, -1, 1, -1]


def test_corolla_has_no_contractions():
    assert trees.contractions(corolla(4)) == []


def test_contract_then_expand_roundtrip():
    bal = graft(corolla(2), [corolla(2), corolla(3)])
    for t, _, e in trees.contractions(bal):
        assert bal.canonical in {x.tree.canonical for x in trees.expansions(t)}


@pytest.mark.parametrize("direction", ["contract", "expand"])
def test_d_squared_vanishes_exhaustively(direction):
    for n in range(2, 8):
        for t in trees.planar_trees(n):
            if len(t.internal_edges()) <= 3:
                assert trees.d_squared(t, direction) == {}


def test_planar_tree_counts():
    # small Schroeder numbers: 1, 1, 3, 11, 45
    assert [sum(1 for _ in trees.planar_trees(n)) for n in range(1, 6)] == [1, 1, 3, 11, 45]


@given(tree_strategy(4), tree_strategy(3), tree_strategy(3), st.data())
def test_insertion_identities(t, s, r, data):
    n, m, k = t.n_leaves, s.n_leaves, r.n_leaves
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, m))
    assert insert(insert(t, i, s), i + j - 1, r) == insert(t, i, insert(s, j, r))
    if n >= 2:
        a = data.draw(st.integers(1, n - 1))
        b = data.draw(st.integers(a + 1, n))
        assert insert(insert(t, b, s), a, r) == insert(insert(t, a, r), b + k - 1, s)


@given(tree_strategy(5), st.data())
def test_graft_is_iterated_insertion(t, data):
    subs = [data.draw(tree_strategy(2)) for _ in range(t.n_leaves)]
    it = t
    for j in range(t.n_leaves, 0, -1):
        it = insert(it, j, subs[j - 1])
    assert graft(t, subs) == it
    assert it.n_leaves == sum(x.n_leaves for x in subs)


@given(tree_strategy(6))
def test_json_roundtrip(t):
    labelled = t.relabel(list(range(t.n_leaves)))
    assert trees.from_json(trees.to_json(labelled)) == labelled


def test_labels_only_on_leaves():
    with pytest.raises(TreeError):
        Tree((LEAF,), label=1)

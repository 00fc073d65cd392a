"""Planar rooted trees and their operad structure.

A tree is an immutable nested value: every vertex is a :class:`Tree` whose
``children`` tuple lists its incoming edges in planar (left-to-right) order.
A vertex without children is a leaf.  The single-vertex tree ``Tree()`` is the
operadic unit: its root is also its only leaf.

Vertices are addressed by their path from the root, a tuple of child indices;
the root is ``()``.  Every non-root vertex has exactly one outgoing edge, so an
edge is addressed by the path of its source vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Optional, Sequence

Path = tuple[int, ...]


class TreeError(ValueError):
    """Raised on arity mismatches, bad indices and invalid edges."""


@dataclass(frozen=True)
class Tree:
    children: tuple["Tree", ...] = ()
    label: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if self.children and self.label is not None:
            raise TreeError("only leaves carry labels")
        if self.label is not None and self.label < 0:
            raise TreeError("leaf labels are non-negative integers")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @cached_property
    def n_leaves(self) -> int:
        if not self.children:
            return 1
        return sum(c.n_leaves for c in self.children)

    @cached_property
    def canonical(self) -> str:
        """Nested-parenthesis serialization; equal strings iff equal trees."""
        if not self.children:
            return "()" if self.label is None else f"({self.label})"
        return "(" + "".join(c.canonical for c in self.children) + ")"

    def __str__(self) -> str:
        return self.canonical

    def subtree(self, path: Path) -> "Tree":
        t = self
        for k in path:
            if not 0 <= k < len(t.children):
                raise TreeError(f"no vertex at {path}")
            t = t.children[k]
        return t

    def vertices(self) -> list[Path]:
        """All vertex paths in depth-first preorder (root first)."""
        out: list[Path] = []

        def walk(t: Tree, p: Path) -> None:
            out.append(p)
            for k, c in enumerate(t.children):
                walk(c, p + (k,))

        walk(self, ())
        return out

    def edges(self) -> list[Path]:
        """Edges (by source path) in planar DFS preorder."""
        return self.vertices()[1:]

    def internal_edges(self) -> list[Path]:
        return [e for e in self.edges() if not self.subtree(e).is_leaf]

    def leaves(self) -> list[Path]:
        """Leaf paths in planar left-to-right order."""
        return [v for v in self.vertices() if self.subtree(v).is_leaf]

    def leaf_labels(self) -> list[Optional[int]]:
        return [self.subtree(v).label for v in self.leaves()]

    def relabel(self, labels: Sequence[Optional[int]]) -> "Tree":
        """Return a copy with leaf labels replaced, in leaf order."""
        if len(labels) != self.n_leaves:
            raise TreeError("one label per leaf required")
        it = iter(labels)

        def walk(t: Tree) -> Tree:
            if t.is_leaf:
                return Tree((), next(it))
            return Tree(tuple(walk(c) for c in t.children))

        return walk(self)

    def replace(self, path: Path, new: "Tree") -> "Tree":
        if not path:
            return new
        k = path[0]
        kids = list(self.children)
        kids[k] = kids[k].replace(path[1:], new)
        return Tree(tuple(kids))


def leaf() -> Tree:
    return Tree()


unit = leaf


def corolla(n: int) -> Tree:
    if n < 1:
        raise TreeError("a corolla needs at least one leaf")
    return Tree(tuple(Tree() for _ in range(n)))


def graft(tau: Tree, subs: Sequence[Tree]) -> Tree:
    """Full composition: the root of ``subs[i]`` replaces leaf ``i`` of ``tau``."""
    if len(subs) != tau.n_leaves:
        raise TreeError(f"graft expects {tau.n_leaves} subtrees, got {len(subs)}")
    it = iter(subs)

    def walk(t: Tree) -> Tree:
        if t.is_leaf:
            return next(it)
        return Tree(tuple(walk(c) for c in t.children))

    return walk(tau)


def insert(tau: Tree, i: int, sigma: Tree) -> Tree:
    """Partial composition ``tau o_i sigma`` with 1-based leaf index ``i``."""
    n = tau.n_leaves
    if not 1 <= i <= n:
        raise TreeError(f"leaf index {i} out of range 1..{n}")
    subs = [Tree((), lab) for lab in tau.leaf_labels()]
    subs[i - 1] = sigma
    return graft(tau, subs)


def leaf_path(tau: Tree, i: int) -> list[Path]:
    """Edges from leaf ``i`` (1-based) down to the root, leaf edge first.

    For consecutive edges the target of one is the source of the next, which
    with source-path addressing means each path is the previous one with its
    last index dropped.
    """
    leaves = tau.leaves()
    if not 1 <= i <= len(leaves):
        raise TreeError(f"leaf index {i} out of range 1..{len(leaves)}")
    p = leaves[i - 1]
    return [p[:k] for k in range(len(p), 0, -1)]


def edge_sign(tau: Tree, e: Path) -> int:
    """(-1)**l(e) with l(e) the number of edges preceding ``e`` in DFS order."""
    return -1 if tau.edges().index(tuple(e)) % 2 else 1


def contract_edge(tau: Tree, e: Path) -> Tree:
    """Merge the source of internal edge ``e`` into its target.

    The source's children are spliced into the target's child list at the
    position previously occupied by ``e``.
    """
    e = tuple(e)
    if not e:
        raise TreeError("the root has no outgoing edge")
    src = tau.subtree(e)
    if src.is_leaf:
        raise TreeError(f"edge {e} is a leaf edge")
    parent = tau.subtree(e[:-1])
    k = e[-1]
    kids = parent.children[:k] + src.children + parent.children[k + 1:]
    return tau.replace(e[:-1], Tree(kids))


def contractions(tau: Tree) -> list[tuple[Tree, int, Path]]:
    """All single-edge contractions ``(tau/e, sign, e)``."""
    edges = tau.edges()
    out = []
    for pos, e in enumerate(edges):
        if not tau.subtree(e).is_leaf:
            out.append((contract_edge(tau, e), -1 if pos % 2 else 1, e))
    return out


@dataclass(frozen=True)
class Expansion:
    """One preimage of the contraction map: ``tree / edge == original``.

    ``vertex`` is the split vertex of the original tree, ``start:stop`` the
    contiguous block of its children that moves onto the new vertex.
    """
    tree: Tree
    edge: Path
    sign: int
    vertex: Path
    start: int
    stop: int


def expansions(tau: Tree) -> list[Expansion]:
    """Planar vertex splittings producing trees with all arities >= 2 at the
    two new vertices; the new edge's sign is read off in the expanded tree."""
    out = []
    for v in tau.vertices():
        t = tau.subtree(v)
        k = len(t.children)
        for a in range(k):
            for b in range(a + 2, k + 1):
                if b - a == k:
                    continue  # target would be left with arity 1
                inner = Tree(t.children[a:b])
                kids = t.children[:a] + (inner,) + t.children[b:]
                new = tau.replace(v, Tree(kids))
                e = v + (a,)
                out.append(Expansion(new, e, edge_sign(new, e), v, a, b))
    return out


def signed_sum(terms) -> dict[str, int]:
    """Aggregate ``(tree, coefficient)`` pairs by canonical form, dropping zeros."""
    acc: dict[str, int] = {}
    for t, c in terms:
        acc[t.canonical] = acc.get(t.canonical, 0) + c
    return {k: v for k, v in acc.items() if v}


def d_contract(tau: Tree) -> list[tuple[Tree, int]]:
    return [(t, s) for t, s, _ in contractions(tau)]


def d_expand(tau: Tree) -> list[tuple[Tree, int]]:
    return [(x.tree, x.sign) for x in expansions(tau)]


def d_squared(tau: Tree, direction: str = "contract") -> dict[str, int]:
    """Signed double differential; every coefficient should cancel."""
    step = d_contract if direction == "contract" else d_expand
    terms = []
    for t1, s1 in step(tau):
        for t2, s2 in step(t1):
            terms.append((t2, s1 * s2))
    return signed_sum(terms)


def planar_trees(n: int, min_arity: int = 2) -> Iterator[Tree]:
    """Enumerate planar rooted trees with ``n`` leaves and every internal
    vertex of arity >= ``min_arity`` (``min_arity`` >= 2 keeps this finite)."""
    if min_arity < 2:
        raise TreeError("unary vertices make the enumeration infinite")
    if n == 1:
        yield Tree()
        return
    for k in range(min_arity, n + 1):
        for sizes in compositions(n, k):
            for kids in product(*(list(planar_trees(s, min_arity)) for s in sizes)):
                yield Tree(tuple(kids))


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write n as k positive integers."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def random_tree(rng, n: int, max_arity: int = 3) -> Tree:
    """Random planar tree with exactly ``n`` leaves and arities in [2, max_arity]."""
    if n == 1:
        return Tree()
    k = int(rng.integers(2, min(max_arity, n) + 1))
    cuts = sorted(rng.choice(range(1, n), size=k - 1, replace=False).tolist())
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    return Tree(tuple(random_tree(rng, s, max_arity) for s in sizes))


def to_json(tau: Tree) -> dict:
    d: dict = {"children": [to_json(c) for c in tau.children]}
    if tau.label is not None:
        d["label"] = tau.label
    return d


def from_json(d: dict) -> Tree:
    kids = tuple(from_json(c) for c in d.get("children", []))
    return Tree(kids, d.get("label"))

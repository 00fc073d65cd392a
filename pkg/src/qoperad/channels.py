"""Tree quantum channels in Kraus form.

Every edge of a planar tree carries an ``N x N`` operator, and at every
vertex the incoming edges form a Kraus family (``sum A^* A = I``).  The Kraus
operator of leaf ``i`` is the product along its path, leaf edge on the left,
so the root-most operator acts on the state first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import density, trees
from .density import check_density, psd_sqrt, random_unitary
from .prob import as_prob
from .trees import Path, Tree

VERTEX_TOL = 1e-9
DROP_TOL = 1e-12


class ChannelError(ValueError):
    pass


@dataclass(frozen=True)
class TreeKrausChannel:
    tree: Tree
    ops: dict = field(hash=False)
    dim: int = 0

    def __post_init__(self):
        edges = self.tree.edges()
        if set(self.ops) != set(edges):
            raise ChannelError("need exactly one operator per edge")
        ops = {e: np.asarray(self.ops[e], dtype=complex) for e in edges}
        n = self.dim or (ops[edges[0]].shape[0] if edges else 0)
        if n < 1:
            raise ChannelError("channel dimension must be given for the unit tree")
        for e, a in ops.items():
            if a.shape != (n, n):
                raise ChannelError(f"operator on edge {e} has shape {a.shape}, expected {(n, n)}")
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "dim", n)
        r = vertex_residual(self)
        if r > VERTEX_TOL:
            raise ChannelError(f"vertex normalization violated by {r:.3g}")

    @property
    def n_leaves(self) -> int:
        return self.tree.n_leaves


def vertex_residual(c: TreeKrausChannel) -> float:
    """Largest deviation from ``sum_{t(e)=v} A_e^* A_e = I`` over vertices."""
    eye = np.eye(c.dim)
    worst = 0.0
    for v in c.tree.vertices():
        k = len(c.tree.subtree(v).children)
        if k:
            s = sum(c.ops[v + (j,)].conj().T @ c.ops[v + (j,)] for j in range(k))
            worst = max(worst, float(np.max(np.abs(s - eye))))
    return worst


def kraus_ops(c: TreeKrausChannel) -> list[np.ndarray]:
    """``A_{e_1} A_{e_2} ... A_{e_m}`` along each leaf path, leaf edge first."""
    out = []
    for i in range(1, c.n_leaves + 1):
        a = np.eye(c.dim, dtype=complex)
        for e in trees.leaf_path(c.tree, i):
            a = a @ c.ops[e]
        out.append(a)
    return out


def kraus_residual(c: TreeKrausChannel) -> float:
    s = sum(a.conj().T @ a for a in kraus_ops(c))
    return float(np.max(np.abs(s - np.eye(c.dim))))


def apply_channel(c: TreeKrausChannel, rho) -> np.ndarray:
    rho = check_density(rho)
    if rho.shape[0] != c.dim:
        raise ChannelError(f"state has dim {rho.shape[0]}, channel {c.dim}")
    return sum(a @ rho @ a.conj().T for a in kraus_ops(c))


def unit_channel(n: int) -> TreeKrausChannel:
    return TreeKrausChannel(Tree(), {}, n)


def compose_qc(c: TreeKrausChannel, parts: Sequence[TreeKrausChannel]) -> TreeKrausChannel:
    """Graft ``parts[i]`` onto leaf ``i``; every edge keeps its operator."""
    if len(parts) != c.n_leaves:
        raise ChannelError(f"expected {c.n_leaves} parts, got {len(parts)}")
    if any(p.dim != c.dim for p in parts):
        raise ChannelError("all channels must act on the same dimension")
    ops = dict(c.ops)
    for base, p in zip(c.tree.leaves(), parts):
        for e, a in p.ops.items():
            ops[base + e] = a
    return TreeKrausChannel(trees.graft(c.tree, [p.tree for p in parts]), ops, c.dim)


def random_vertex_family(rng, k: int, n: int) -> list[np.ndarray]:
    """``k`` operators with ``sum A^* A = I``: blocks of an isometry ``C^n -> C^{kn}``."""
    iso = random_unitary(rng, k * n)[:, :n]
    return [iso[j * n:(j + 1) * n] for j in range(k)]


def random_channel(rng, tau: Tree, n: int) -> TreeKrausChannel:
    ops = {}
    for v in tau.vertices():
        k = len(tau.subtree(v).children)
        if k:
            for j, a in enumerate(random_vertex_family(rng, k, n)):
                ops[v + (j,)] = a
    return TreeKrausChannel(tau, ops, n)


def projective_channel(projectors: Sequence) -> TreeKrausChannel:
    """Corolla whose leaf edges carry mutually orthogonal projectors."""
    ops = {(j,): np.asarray(p, dtype=complex) for j, p in enumerate(projectors)}
    return TreeKrausChannel(trees.corolla(len(ops)), ops)


@dataclass(frozen=True)
class FormalChannelSum:
    """Linear combination of tree channels; ``convex`` demands weights in the simplex."""
    terms: tuple
    convex: bool = False

    def __post_init__(self):
        terms = tuple((c, ch) for c, ch in self.terms)
        object.__setattr__(self, "terms", terms)
        if self.convex:
            w = np.array([c for c, _ in terms], dtype=float)
            if w.size == 0 or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
                raise ChannelError("convex weights must be non-negative and sum to 1")
        dims = {ch.dim for _, ch in terms}
        if len(dims) > 1:
            raise ChannelError("terms act on different dimensions")

    def apply(self, rho) -> np.ndarray:
        return sum(c * apply_channel(ch, rho) for c, ch in self.terms)

    def skeleton(self) -> dict[str, int]:
        """Tree-level part: signed coefficients aggregated by tree."""
        return trees.signed_sum((ch.tree, c) for c, ch in self.terms)


def convex_combine(weights, channels: Sequence[TreeKrausChannel]) -> FormalChannelSum:
    w = as_prob(weights, tol=1e-12)
    if len(channels) != w.size:
        raise ChannelError("one weight per channel required")
    return FormalChannelSum(tuple(zip(w.tolist(), channels)), convex=True)


def compose_sums(root: FormalChannelSum, parts: Sequence[FormalChannelSum]) -> FormalChannelSum:
    """Distribute composition over terms, multiplying coefficients."""
    out = []
    for c, ch in root.terms:
        combos = [(c, [])]
        for part in parts:
            combos = [(w * pc, sub + [pch]) for w, sub in combos for pc, pch in part.terms]
        out.extend((w, compose_qc(ch, sub)) for w, sub in combos)
    convex = root.convex and all(p.convex for p in parts)
    return FormalChannelSum(tuple(out), convex=convex)


def _moved_path(p: Path, v: Path, a: int, b: int) -> Path:
    # path of an old vertex after children a..b-1 of v move onto a new vertex
    m = len(v)
    if len(p) <= m or p[:m] != v:
        return p
    k = p[m]
    if k < a:
        return p
    if k < b:
        return v + (a, k - a) + p[m + 1:]
    return v + (k - (b - a) + 1,) + p[m + 1:]


def _factor(b) -> np.ndarray:
    return psd_sqrt(0.5 * (b + b.conj().T))


def differential(c: TreeKrausChannel) -> FormalChannelSum:
    """Signed sum over every tree that contracts to ``c.tree`` along one edge.

    For a split of vertex ``v`` moving children ``a..b-1`` (the set ``E_s``)
    onto a new vertex, the new edge gets ``sqrt(B_s)`` with
    ``B_s = sum_{E_s} A^* A``; each moved edge gets
    ``sqrt(A^* A + B_t / |E_s|)`` where ``B_t`` sums over the children that
    stay at ``v``.  All other edges keep their operators.
    """
    terms = []
    for x in trees.expansions(c.tree):
        v, a, b = x.vertex, x.start, x.stop
        k = len(c.tree.subtree(v).children)
        es = [v + (j,) for j in range(a, b)]
        et = [v + (j,) for j in range(k) if not a <= j < b]
        gram = {e: c.ops[e].conj().T @ c.ops[e] for e in es + et}
        b_s = sum(gram[e] for e in es)
        b_t = sum((gram[e] for e in et), np.zeros((c.dim, c.dim), dtype=complex))
        ops = {_moved_path(e, v, a, b): op for e, op in c.ops.items()}
        ops[x.edge] = _factor(b_s)
        for e in es:
            ops[_moved_path(e, v, a, b)] = _factor(gram[e] + b_t / len(es))
        terms.append((x.sign, TreeKrausChannel(x.tree, ops, c.dim)))
    return FormalChannelSum(tuple(terms))


def split_residuals(c: TreeKrausChannel, d: FormalChannelSum) -> list[tuple[float, float]]:
    """For each term of ``d``, the deviations from identity of the sums over
    edges entering the new edge's source and entering its target."""
    out = []
    for x, (_, ch) in zip(trees.expansions(c.tree), d.terms):
        eye = np.eye(c.dim)
        res = []
        for w in (x.edge, x.vertex):
            k = len(ch.tree.subtree(w).children)
            s = sum(ch.ops[w + (j,)].conj().T @ ch.ops[w + (j,)] for j in range(k))
            res.append(float(np.max(np.abs(s - eye))))
        out.append((res[0], res[1]))
    return out


def algebra_action(c: TreeKrausChannel, rhos: Sequence) -> np.ndarray:
    """Mix the leaf-wise outputs ``A_i rho_i A_i^*`` with normalized weights.

    The raw weight of leaf ``i`` is ``Tr(A_i^* A_i rho_i)``; leaves whose raw
    weight is at most ``DROP_TOL`` are dropped and the rest renormalized.
    """
    if len(rhos) != c.n_leaves:
        raise ChannelError(f"expected {c.n_leaves} states, got {len(rhos)}")
    acc = np.zeros((c.dim, c.dim), dtype=complex)
    total = 0.0
    for a, rho in zip(kraus_ops(c), rhos):
        rho = check_density(rho)
        if rho.shape[0] != c.dim:
            raise ChannelError("state and channel dimensions differ")
        w = float(np.trace(a.conj().T @ a @ rho).real)
        if w <= DROP_TOL:
            continue
        acc += a @ rho @ a.conj().T
        total += w
    if total <= 0.0:
        raise ChannelError("every leaf weight vanishes")
    return acc / total


def to_json(c: TreeKrausChannel) -> dict:
    def walk(t: Tree, v: Path) -> dict:
        d: dict = {"children": [walk(ch, v + (k,)) for k, ch in enumerate(t.children)]}
        if v:
            d["op"] = density.to_json(c.ops[v])
        if t.label is not None:
            d["label"] = t.label
        return d

    out = walk(c.tree, ())
    out["dim"] = c.dim
    return out


def from_json(d: dict) -> TreeKrausChannel:
    tau = trees.from_json(d)
    ops = {}

    def walk(node: dict, v: Path) -> None:
        if v:
            ops[v] = density.from_json(node["op"])
        for k, ch in enumerate(node.get("children", [])):
            walk(ch, v + (k,))

    walk(d, ())
    return TreeKrausChannel(tau, ops, int(d.get("dim", 0)))


def sum_to_json(s: FormalChannelSum) -> dict:
    return {"terms": [{"w": w, "channel": to_json(ch)} for w, ch in s.terms]}

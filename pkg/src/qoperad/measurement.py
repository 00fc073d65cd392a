"""Projective measurements and their refinements along planar trees.

A measurement tree attaches an orthogonal projector to every vertex, with the
identity at the root and each internal projector split as the sum of its
children's.  Running the tree measures level by level; branches whose
probability is at most ``PRUNE_TOL`` are treated as absent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import density, trees
from .density import InvalidStateError, check_density, quantum_entropy
from .prob import EntropyFamily
from .trees import Path, Tree

PROJ_TOL = 1e-10
PRUNE_TOL = 1e-12


class MeasurementError(ValueError):
    pass


def is_projector(p, tol: float = PROJ_TOL) -> bool:
    p = np.asarray(p, dtype=complex)
    return bool(np.max(np.abs(p - p.conj().T)) <= tol and np.max(np.abs(p @ p - p)) <= tol)


def block_projectors(blocks: Sequence[int]) -> list[np.ndarray]:
    """Coordinate projectors onto consecutive blocks of basis vectors."""
    if any(k < 1 for k in blocks):
        raise MeasurementError("block sizes must be positive")
    n = int(sum(blocks))
    out, start = [], 0
    for k in blocks:
        p = np.zeros((n, n), dtype=complex)
        p[start:start + k, start:start + k] = np.eye(k)
        out.append(p)
        start += k
    return out


@dataclass(frozen=True)
class ProjectiveMeasurement:
    projectors: tuple

    def __post_init__(self):
        ps = tuple(np.asarray(p, dtype=complex) for p in self.projectors)
        if not ps:
            raise MeasurementError("a measurement needs at least one projector")
        n = ps[0].shape[0]
        for a, p in enumerate(ps):
            if p.shape != (n, n):
                raise MeasurementError("projectors must share one square shape")
            if not is_projector(p):
                raise MeasurementError(f"operator {a} is not an orthogonal projector")
            for b in range(a):
                if np.max(np.abs(p @ ps[b])) > PROJ_TOL:
                    raise MeasurementError(f"projectors {b} and {a} are not orthogonal")
        if np.max(np.abs(sum(ps) - np.eye(n))) > PROJ_TOL:
            raise MeasurementError("projectors do not sum to the identity")
        object.__setattr__(self, "projectors", ps)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @classmethod
    def from_blocks(cls, blocks: Sequence[int]) -> "ProjectiveMeasurement":
        return cls(tuple(block_projectors(blocks)))


def _measure(p, rho):
    t = float(np.trace(p @ rho).real)
    if t <= PRUNE_TOL:
        return max(t, 0.0), None
    return t, p @ rho @ p / t


def project_channel(meas: ProjectiveMeasurement, rho):
    """Outcome probabilities, post-measurement states and ``sum_i P_i rho P_i``.

    Outcomes with probability at most ``PRUNE_TOL`` come back as ``None``.
    """
    rho = check_density(rho)
    if rho.shape[0] != meas.dim:
        raise MeasurementError(f"state has dim {rho.shape[0]}, measurement {meas.dim}")
    probs, states = [], []
    for p in meas.projectors:
        t, s = _measure(p, rho)
        probs.append(t)
        states.append(s)
    out = sum(p @ rho @ p for p in meas.projectors)
    return np.array(probs), states, out


def block_channel(blocks: Sequence[int], rho) -> np.ndarray:
    """Dephase ``rho`` into block-diagonal form for consecutive basis blocks."""
    rho = check_density(rho)
    if sum(blocks) != rho.shape[0]:
        raise MeasurementError(f"blocks {list(blocks)} do not partition dim {rho.shape[0]}")
    mask = np.zeros(rho.shape, dtype=bool)
    start = 0
    for k in blocks:
        mask[start:start + k, start:start + k] = True
        start += k
    return np.where(mask, rho, 0.0)


@dataclass(frozen=True)
class MeasurementTree:
    """A planar tree with an orthogonal projector on every vertex."""
    tree: Tree
    projectors: dict = field(hash=False)

    def __post_init__(self):
        verts = self.tree.vertices()
        if set(self.projectors) != set(verts):
            raise MeasurementError("need exactly one projector per vertex")
        ps = {v: np.asarray(self.projectors[v], dtype=complex) for v in verts}
        n = ps[()].shape[0]
        if np.max(np.abs(ps[()] - np.eye(n))) > PROJ_TOL:
            raise MeasurementError("root projector must be the identity")
        for v in verts:
            if ps[v].shape != (n, n) or not is_projector(ps[v]):
                raise MeasurementError(f"vertex {v} does not carry an orthogonal projector")
            t = self.tree.subtree(v)
            if t.children:
                split = sum(ps[v + (k,)] for k in range(len(t.children)))
                if np.max(np.abs(split - ps[v])) > PROJ_TOL:
                    raise MeasurementError(f"children of {v} do not split its projector")
        object.__setattr__(self, "projectors", ps)

    @property
    def dim(self) -> int:
        return self.projectors[()].shape[0]

    @property
    def n_leaves(self) -> int:
        return self.tree.n_leaves

    def leaf_projectors(self) -> list[np.ndarray]:
        return [self.projectors[v] for v in self.tree.leaves()]

    def flat(self) -> ProjectiveMeasurement:
        return ProjectiveMeasurement(tuple(self.leaf_projectors()))

    @classmethod
    def from_blocks(cls, tau: Tree, blocks: Sequence[int] | None = None) -> "MeasurementTree":
        """Standard-basis blocks; leaf ``i`` gets the ``i``-th block.

        Block sizes default to the leaf labels of ``tau``.
        """
        if blocks is None:
            blocks = tau.leaf_labels()
            if any(b is None for b in blocks):
                raise MeasurementError("leaves need labels (block sizes) or explicit blocks")
        if len(blocks) != tau.n_leaves:
            raise MeasurementError("one block per leaf required")
        ranges = block_ranges(tau, blocks)
        n = int(sum(blocks))
        ps = {}
        for v, (a, b) in ranges.items():
            p = np.zeros((n, n), dtype=complex)
            p[a:b, a:b] = np.eye(b - a)
            ps[v] = p
        return cls(tau, ps)

    @classmethod
    def from_projectors(cls, tau: Tree, projectors: dict) -> "MeasurementTree":
        return cls(tau, dict(projectors))


def block_ranges(tau: Tree, blocks: Sequence[int]) -> dict[Path, tuple[int, int]]:
    """Basis index range ``[a, b)`` covered by each vertex."""
    out: dict[Path, tuple[int, int]] = {}
    it = iter(blocks)
    pos = 0

    def walk(t: Tree, v: Path) -> None:
        nonlocal pos
        a = pos
        if t.is_leaf:
            k = int(next(it))
            if k < 1:
                raise MeasurementError("block sizes must be positive")
            pos += k
        for j, c in enumerate(t.children):
            walk(c, v + (j,))
        out[v] = (a, pos)

    walk(tau, ())
    return out


def tree_proj_channel(m: MeasurementTree, rho):
    """Leaf probabilities and outcome states of the level-by-level measurement.

    Each vertex state is its parent's state projected and renormalized.  A
    branch of probability at most ``PRUNE_TOL`` is dropped together with its
    whole subtree; surviving probabilities are rescaled to sum to one.
    """
    rho = check_density(rho)
    if rho.shape[0] != m.dim:
        raise MeasurementError(f"state has dim {rho.shape[0]}, tree {m.dim}")
    probs: list[float] = []
    states: list = []

    def walk(t: Tree, v: Path, state, mass: float) -> None:
        if t.is_leaf:
            probs.append(mass)
            states.append(state)
            return
        for k, c in enumerate(t.children):
            w = v + (k,)
            if state is None:
                walk(c, w, None, 0.0)
                continue
            q, sub = _measure(m.projectors[w], state)
            walk(c, w, sub, mass * q if sub is not None else 0.0)

    walk(m.tree, (), rho, 1.0)
    p = np.array(probs)
    return p / p.sum(), states


def telescoping_residual(m: MeasurementTree, rho) -> float:
    """Largest gap between the product of successive probability ratios along
    a leaf path and the one-shot probability ``Tr(P_leaf rho)``."""
    rho = check_density(rho)
    worst = 0.0
    for i, path in enumerate(m.tree.leaves()):
        direct = float(np.trace(m.projectors[path] @ rho).real)
        prod, prev = 1.0, 1.0
        for k in range(1, len(path) + 1):
            cur = float(np.trace(m.projectors[path[:k]] @ rho).real)
            if cur <= PRUNE_TOL:
                prod = 0.0
                break
            prod *= cur / prev
            prev = cur
        worst = max(worst, abs(prod - direct))
    return worst


def tree_entropy_quantum(family: EntropyFamily, m: MeasurementTree, rho) -> float:
    """Entropy of ``rho`` refined along the measurement tree.

    A bare leaf gives the entropy of the state itself.  Otherwise the value is
    the family entropy of the root-edge probabilities plus the probability
    weighted entropies of the child subtrees on the post-measurement states.
    """
    return _entropy(family, m, (), check_density(rho))


def _entropy(family, m: MeasurementTree, v: Path, rho) -> float:
    t = m.tree.subtree(v)
    if t.is_leaf:
        return quantum_entropy(family, rho)
    probs, total = [], 0.0
    for k in range(len(t.children)):
        q, sub = _measure(m.projectors[v + (k,)], rho)
        if sub is None:
            continue
        probs.append(q)
        total += q * _entropy(family, m, v + (k,), sub)
    return family(np.array(probs) / sum(probs)) + total


def zero_pad(rho, extra: int) -> np.ndarray:
    """Embed ``rho`` into a space with ``extra`` more dimensions, padding zeros."""
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0]
    out = np.zeros((n + extra, n + extra), dtype=complex)
    out[:n, :n] = rho
    return out


def to_json(m: MeasurementTree) -> dict:
    def walk(t: Tree, v: Path) -> dict:
        d = {"children": [walk(c, v + (k,)) for k, c in enumerate(t.children)],
             "projector": density.to_json(m.projectors[v])}
        if t.label is not None:
            d["label"] = t.label
        return d

    return walk(m.tree, ())


def from_json(d: dict) -> MeasurementTree:
    """Inverse of :func:`to_json`; vertices may instead give ``"block": [start, len]``."""
    tau = trees.from_json(d)
    found: dict = {}

    def walk(node: dict, v: Path) -> None:
        found[v] = node
        for k, c in enumerate(node.get("children", [])):
            walk(c, v + (k,))

    walk(d, ())
    if all("projector" in node for node in found.values()):
        return MeasurementTree(tau, {v: density.from_json(n["projector"]) for v, n in found.items()})
    if all("block" in node for node in found.values()):
        n = int(found[()]["block"][1])
        ps = {}
        for v, node in found.items():
            a, k = node["block"]
            p = np.zeros((n, n), dtype=complex)
            p[a:a + k, a:a + k] = np.eye(k)
            ps[v] = p
        return MeasurementTree(tau, ps)
    raise InvalidStateError("every vertex needs a 'projector' or every vertex a 'block'")

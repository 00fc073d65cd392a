"""Code spaces cut out by translation operators on a loop algebra.

``H = C[L]`` has one basis vector per loop element.  Left translation by
``a`` is the permutation matrix ``(L_a f)(b) = f(a * b)``.  For a character
``chi_k(x) = exp(2 pi i k x / p)`` the subspace ``H_chi`` holds the functions
on which every central translation ``(x, 0)`` acts as ``chi_k(x)``, and
``E_u`` is left translation by ``(0, u)`` compressed to ``H_chi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from . import squares, symplectic
from .squares import ColoredSquare
from .symplectic import AlmostSymplectic, CentralExtLoop, loop_from_omega

RANK_TOL = 1e-10


class CodeError(ValueError):
    pass


def character(p: int, k: int, x) -> complex:
    return np.exp(2j * np.pi * k * np.asarray(x) / p)


@dataclass(frozen=True)
class LoopAlgebra:
    """Group-algebra-style space of a central-extension loop.

    ``labels[x, u]`` is the carrier index of ``(x, u)``; relabeling the
    carrier permutes it together with the table.
    """
    loop: CentralExtLoop
    labels: np.ndarray

    @classmethod
    def from_omega(cls, w: AlmostSymplectic) -> "LoopAlgebra":
        lp = loop_from_omega(w)
        labels = np.arange(lp.mod * lp.nv).reshape(lp.mod, lp.nv)
        return cls(lp, labels)

    @property
    def p(self) -> int:
        return self.loop.p

    @property
    def nv(self) -> int:
        return self.loop.nv

    @property
    def dim(self) -> int:
        return self.loop.magma.size

    def element(self, x: int, u: int) -> int:
        return int(self.labels[x % self.loop.mod, u])

    def left(self, a: int) -> np.ndarray:
        t = self.loop.magma.table
        m = np.zeros((self.dim, self.dim))
        m[np.arange(self.dim), t[a]] = 1.0
        return m

    def right(self, a: int) -> np.ndarray:
        t = self.loop.magma.table
        m = np.zeros((self.dim, self.dim))
        m[np.arange(self.dim), t[:, a]] = 1.0
        return m

    def relabel(self, perm) -> "LoopAlgebra":
        perm = np.asarray(perm)
        lp = self.loop
        moved = CentralExtLoop(lp.magma.relabel(perm), lp.p, lp.n, lp.mod, lp.cocycle)
        return LoopAlgebra(moved, perm[self.labels])


def chi_subspace(h: LoopAlgebra, k: int) -> np.ndarray:
    """Orthonormal basis (columns) of ``H_chi`` for ``chi = chi_k``."""
    eye = np.eye(h.dim)
    rows = [h.left(h.element(x, 0)) - character(h.p, k, x) * eye for x in range(h.p)]
    return null_space(np.vstack(rows), rcond=RANK_TOL)


def chi_residual(h: LoopAlgebra, k: int, basis: np.ndarray) -> float:
    worst = 0.0
    for x in range(h.p):
        r = h.left(h.element(x, 0)) @ basis - character(h.p, k, x) * basis
        worst = max(worst, float(np.max(np.abs(r), initial=0.0)))
    return worst


def chi_dimension_formula(w: AlmostSymplectic, k: int) -> int:
    """Fibers over ``u`` survive iff ``chi_k(w(0, u) / 2) = 1``."""
    if k % w.p == 0:
        return w.size
    return int(np.count_nonzero(w.table[0] == 0))


def e_operator(h: LoopAlgebra, basis: np.ndarray, u: int) -> np.ndarray:
    """``B^* L_(0,u) B`` for an orthonormal basis ``B`` of ``H_chi``."""
    return basis.conj().T @ h.left(h.element(0, u)) @ basis


def s1_pairs(w: AlmostSymplectic) -> list[tuple[int, int]]:
    t = w.table
    return [(int(u), int(v)) for u, v in np.argwhere((t == 0) & (t.T == 0))]


def in_s(w: AlmostSymplectic, us: Sequence[int]) -> bool:
    """All pairs ``(u_i, u_j)``, ``i < j``, lie in ``S_1``; vacuous for one vector."""
    t = w.table
    us = list(us)
    return all(t[a, b] == 0 and t[b, a] == 0 for i, a in enumerate(us) for b in us[i + 1:])


def build_s_set(w: AlmostSymplectic, level: int) -> list[tuple[int, ...]]:
    """``S_1`` for ``level = 1`` is the set of pairs; ``S_L`` otherwise.

    For ``level >= 2`` every ``L``-tuple whose pairwise projections land in
    ``S_1`` is listed.  A lone vector carries no pair condition, so level 1 is
    reported as the pair set itself.
    """
    if level < 1:
        raise CodeError("level must be at least 1")
    if level == 1:
        return s1_pairs(w)
    good = (w.table == 0) & (w.table.T == 0)
    out = []
    for tup in product(range(w.size), repeat=level):
        if all(good[tup[i], tup[j]] for i in range(level) for j in range(i + 1, level)):
            out.append(tup)
    return out


@dataclass(frozen=True)
class CodeSpace:
    k: int
    tuple_: tuple
    eigenvalues: tuple
    basis: np.ndarray
    residual: float

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    def to_json(self) -> dict:
        return {"chi": self.k, "tuple": list(self.tuple_),
                "lambda": [[float(np.real(z)), float(np.imag(z))] for z in self.eigenvalues],
                "dimension": self.dimension,
                "basis": {"re": self.basis.real.tolist(), "im": self.basis.imag.tolist()},
                "residual": self.residual}


def code_space(w: AlmostSymplectic, k: int, us: Sequence[int], lams: Sequence[complex],
               h: LoopAlgebra | None = None) -> CodeSpace:
    """Joint eigenspace of ``E_{u_1}, ..., E_{u_L}`` on ``H_chi`` (coordinates in ``H``).

    Rejects tuples outside ``S_L``; an empty joint eigenspace is returned
    with dimension 0.
    """
    us = tuple(int(u) for u in us)
    if len(lams) != len(us):
        raise CodeError("one eigenvalue per operator required")
    if not in_s(w, us):
        raise CodeError(f"tuple {us} is not in S_{len(us)}")
    h = LoopAlgebra.from_omega(w) if h is None else h
    b = chi_subspace(h, k)
    d = b.shape[1]
    if d == 0:
        return CodeSpace(k, us, tuple(lams), np.zeros((h.dim, 0), dtype=complex), 0.0)
    ops = [e_operator(h, b, u) for u in us]
    stack = np.vstack([e - lam * np.eye(d) for e, lam in zip(ops, lams)])
    coeff = null_space(stack, rcond=RANK_TOL)
    vecs = b @ coeff
    res = 0.0
    for u, lam in zip(us, lams):
        lu = h.left(h.element(0, u))
        # residual measured for the compressed operator acting on the code space
        r = b @ (b.conj().T @ lu @ vecs) - lam * vecs
        res = max(res, float(np.max(np.abs(r), initial=0.0)))
    return CodeSpace(k, us, tuple(complex(z) for z in lams), vecs, res)


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a @ b - b @ a))


def commutator_table(w: AlmostSymplectic, k: int) -> dict[tuple[int, int], float]:
    """Frobenius norm of ``[E_u, E_v]`` on ``H_chi`` for every pair ``(u, v)``."""
    h = LoopAlgebra.from_omega(w)
    b = chi_subspace(h, k)
    ops = [e_operator(h, b, u) for u in range(w.size)]
    return {(u, v): commutator_norm(ops[u], ops[v]) for u in range(w.size) for v in range(w.size)}


def embed_vector(slot: squares.RationalRect, u: int, n_part: int, p: int, n: int) -> int:
    """Row of the composed ``n``-grid holding the bottom edge of row ``u`` of a
    part grid scaled into ``slot``."""
    y = slot.y0 + slot.height * Fraction(u, p ** n_part)
    r = y * p ** n
    return int(r.numerator // r.denominator)


@dataclass(frozen=True)
class PartialResult:
    accepted: bool
    omega: AlmostSymplectic
    tuple_: tuple
    reason: str = ""


def partial_action(c: ColoredSquare, data: Sequence[tuple[AlmostSymplectic, Sequence[int]]]) -> PartialResult:
    """Compose the pairings through ``c`` and carry the tuples along.

    Each part's vectors are moved to composed rows through their slot; the
    concatenation is accepted iff every part tuple lies in its own ``S`` set
    and the concatenation lies in ``S`` of the composed pairing.
    """
    parts = [w for w, _ in data]
    sq = symplectic.action_square(c, parts)
    omega = symplectic.grid_to_omega(sq)
    c0 = c.c0 if isinstance(c, ColoredSquare) else c
    out: list[int] = []
    for k, ((w, us), slot) in enumerate(zip(data, c0.rects)):
        if not in_s(w, us):
            return PartialResult(False, omega, tuple(out), f"part {k + 1} tuple is not in its S set")
        out.extend(embed_vector(slot, u, w.n, w.p, omega.n) for u in us)
    if not in_s(omega, out):
        return PartialResult(False, omega, tuple(out), "composed tuple leaves S")
    return PartialResult(True, omega, tuple(out))

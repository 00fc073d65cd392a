"""Almost-symplectic pairings on ``F_p^N`` and the loops they define.

Vectors of ``V = F_p^N`` are stored as integers ``0..p^N - 1`` whose base-``p``
digits, most significant first, are the coordinates.  A pairing is a
``p^N x p^N`` integer table ``w[u, v]``.  For ``p > 2`` values live in ``F_p``;
for ``p = 2`` they live in ``2Z/4 = {0, 2}`` inside ``Z/4``.

On the grid, cell ``(row u, column v)`` of the ``N``-grid carries color
``w[u, v]`` (divided by 2 when ``p = 2``), rows counted upward from the
lower-left corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import squares
from .loops import FiniteMagma, associativity_witness, identity, is_quasigroup
from .squares import ColoredSquare, LittleSquareTuple, SquareError


class SymplecticError(ValueError):
    pass


@lru_cache(maxsize=None)
def digits(p: int, n: int) -> np.ndarray:
    """``(p**n, n)`` array of base-``p`` digits, most significant first."""
    idx = np.arange(p ** n)
    return np.stack([(idx // p ** (n - 1 - k)) % p for k in range(n)], axis=1) if n else idx[:, None][:, :0]


@lru_cache(maxsize=None)
def add_table(p: int, n: int) -> np.ndarray:
    """``add[u, v]`` is the index of ``u + v`` in ``F_p^n``."""
    d = digits(p, n)
    s = (d[:, None, :] + d[None, :, :]) % p
    w = p ** np.arange(n - 1, -1, -1)
    out = (s * w).sum(axis=-1)
    out.setflags(write=False)
    return out


def neg(p: int, n: int) -> np.ndarray:
    d = (-digits(p, n)) % p
    return (d * p ** np.arange(n - 1, -1, -1)).sum(axis=-1)


def modulus(p: int) -> int:
    return 4 if p == 2 else p


def nondegenerate(table: np.ndarray) -> bool:
    """Every row and every column has a non-zero entry."""
    nz = np.asarray(table) != 0
    return bool(nz.any(axis=1).all() and nz.any(axis=0).all())


@dataclass(frozen=True)
class AlmostSymplectic:
    p: int
    n: int
    table: np.ndarray
    check: bool = True

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        size = self.p ** self.n
        if t.shape != (size, size):
            raise SymplecticError(f"table must be {size}x{size} for p={self.p}, N={self.n}")
        if self.p == 2:
            if not np.all((t == 0) | (t == 2)):
                raise SymplecticError("for p = 2 values must lie in {0, 2} of Z/4")
        elif t.min() < 0 or t.max() >= self.p:
            raise SymplecticError(f"values must lie in F_{self.p}")
        if self.check and not nondegenerate(t):
            raise SymplecticError("pairing is degenerate: some row or column vanishes")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def size(self) -> int:
        return self.p ** self.n

    def __call__(self, u: int, v: int) -> int:
        return int(self.table[u, v])

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlmostSymplectic) and self.p == other.p
                and self.n == other.n and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.table.tobytes()))


def hochschild_d(table, p: int, n: int, mod: int | None = None) -> np.ndarray:
    """``df[u, v, w] = f(v, w) - f(u+v, w) + f(u, v+w) - f(u, v)``."""
    f = np.asarray(table, dtype=np.int64)
    mod = modulus(p) if mod is None else mod
    add = add_table(p, n)
    size = p ** n
    u = np.arange(size)[:, None, None]
    d = f[None, :, :] - f[add] + f[u, add[None, :, :]] - f[:, :, None]
    return d % mod


def cocycle_witness(table, p: int, n: int, mod: int | None = None):
    """First ``(u, v, w)`` with ``df != 0``, or ``None``."""
    bad = np.argwhere(hochschild_d(table, p, n, mod) != 0)
    return tuple(int(x) for x in bad[0]) if bad.size else None


def is_almost_symplectic(w: AlmostSymplectic) -> bool:
    """Non-degenerate with non-vanishing coboundary."""
    return nondegenerate(w.table) and cocycle_witness(w.table, w.p, w.n) is not None


def bilinear(p: int, n: int, m) -> np.ndarray:
    """Table of ``u^T M v`` over ``F_p``."""
    d = digits(p, n)
    return (d @ np.asarray(m) @ d.T) % p


def omega_to_grid(w: AlmostSymplectic) -> ColoredSquare:
    colors = w.table // 2 if w.p == 2 else w.table
    return squares.colored_from_grid(colors, w.p)


def grid_to_omega(q: ColoredSquare, n: int | None = None, check: bool = True) -> AlmostSymplectic:
    """Read a pairing off a colored square.

    With ``n`` omitted the coarsest grid on which every color region is a
    union of cells is used; otherwise the ``n``-grid.
    """
    p = q.p
    if n is None:
        colors = squares.minimal_grid(q.coloring(), p)
    else:
        k = q.grid_exponent()
        if n < k:
            raise SquareError(f"regions are not aligned to the {n}-grid")
        colors = q.coloring(n)
    size = colors.shape[0]
    n = 0
    while p ** n < size:
        n += 1
    table = 2 * colors if p == 2 else colors
    return AlmostSymplectic(p, n, table, check=check)


def action_square(c, parts: Sequence[AlmostSymplectic]) -> ColoredSquare:
    """Composed colored square: each part's grid scaled into its slot of ``c``.

    For ``p = 2``, ``c`` may be a plain binary little square whose complement
    is painted black.
    """
    if not parts:
        raise SymplecticError("need at least one part")
    p = parts[0].p
    if any(w.p != p for w in parts):
        raise SymplecticError("all parts must share the prime")
    if isinstance(c, LittleSquareTuple):
        if p != 2:
            raise SymplecticError("an uncolored square only acts for p = 2")
        if not squares.is_strict(c, 2):
            raise SymplecticError("the little square is not strict")
        c = squares.binary_as_colored(c)
    if c.p != p:
        raise SymplecticError(f"square is {c.p}-ary, parts are over F_{p}")
    if not squares.is_strict_colored(c):
        raise SymplecticError("the colored square is not strict")
    if len(parts) != c.arity:
        raise SymplecticError(f"square has {c.arity} slots, got {len(parts)} parts")
    return squares.gamma_colored(c, [omega_to_grid(w) for w in parts])


def algebra_action(c, parts: Sequence[AlmostSymplectic]) -> AlmostSymplectic:
    """Pairing read off the composed square on its coarsest grid."""
    return grid_to_omega(action_square(c, parts))


@dataclass(frozen=True)
class CentralExtLoop:
    """Multiplication on ``Z/m x V`` with element ``(x, u)`` at index ``x * |V| + u``."""
    magma: FiniteMagma
    p: int
    n: int
    mod: int
    cocycle: np.ndarray

    @property
    def nv(self) -> int:
        return self.p ** self.n

    def index(self, x: int, u: int) -> int:
        return (x % self.mod) * self.nv + u

    def split(self, k: int) -> tuple[int, int]:
        return divmod(int(k), self.nv)

    @property
    def is_quasigroup(self) -> bool:
        return is_quasigroup(self.magma)

    @property
    def zero_is_identity(self) -> bool:
        return identity(self.magma) == 0

    def associativity_witness(self):
        return associativity_witness(self.magma)

    def report(self) -> dict:
        w = self.associativity_witness()
        return {
            "order": self.magma.size,
            "quasigroup": self.is_quasigroup,
            "identity": identity(self.magma),
            "zero_is_identity": self.zero_is_identity,
            "nonassociative_triple": None if w is None else [self.split(k) for k in w],
        }


def _extension(cocycle: np.ndarray, p: int, n: int, mod: int) -> CentralExtLoop:
    nv = p ** n
    add = add_table(p, n)
    x = np.arange(mod)
    # (x, u) * (y, v) = (x + y + f(u, v), u + v)
    xs = (x[:, None, None, None] + x[None, None, :, None] + cocycle[None, :, None, :]) % mod
    us = np.broadcast_to(add[None, :, None, :], xs.shape)
    table = (xs * nv + us).reshape(mod * nv, mod * nv)
    return CentralExtLoop(FiniteMagma(table), p, n, mod, cocycle)


def loop_from_omega(w: AlmostSymplectic) -> CentralExtLoop:
    """``(x, u) * (y, v) = (x + y + w(u, v)/2, u + v)`` over ``F_p``, ``p > 2``."""
    if w.p == 2:
        raise SymplecticError("halving needs p > 2; polarize and use loop_from_beta")
    half = (w.p + 1) // 2
    return _extension((half * w.table) % w.p, w.p, w.n, w.p)


def polarize(w: AlmostSymplectic) -> np.ndarray:
    """``b(u, v) = w(u, v) [u < v]`` with values in ``Z/4``.

    This satisfies ``b(u, v) - b(v, u) = w(u, v)`` exactly when ``w`` vanishes
    on the diagonal and ``w(v, u) = -w(u, v)``.
    """
    if w.p != 2:
        raise SymplecticError("polarization is defined here for p = 2")
    t = w.table
    if np.any(np.diag(t) != 0):
        raise SymplecticError("polarization needs w(u, u) = 0")
    if np.any((t + t.T) % 4 != 0):
        raise SymplecticError("polarization needs w(v, u) = -w(u, v) in Z/4")
    idx = np.arange(w.size)
    return np.where(idx[:, None] < idx[None, :], t, 0) % 4


def loop_from_beta(beta, n: int) -> CentralExtLoop:
    """``(x, u) * (y, v) = (x + y + b(u, v), u + v)`` over ``Z/4``, ``V = F_2^n``."""
    b = np.asarray(beta, dtype=np.int64) % 4
    if b.shape != (2 ** n, 2 ** n):
        raise SymplecticError("beta table has the wrong shape")
    return _extension(b, 2, n, 4)


def random_omega(rng, p: int, n: int, zero_prob: float = 0.4,
                 require_cocycle_defect: bool = True) -> AlmostSymplectic:
    """Rejection-sampled non-degenerate pairing, optionally with ``dw != 0``."""
    size = p ** n
    vals = np.array([0, 2]) if p == 2 else np.arange(p)
    while True:
        t = rng.choice(vals[1:], size=(size, size))
        t = np.where(rng.random((size, size)) < zero_prob, 0, t)
        if not nondegenerate(t):
            continue
        if require_cocycle_defect and cocycle_witness(t, p, n) is None:
            continue
        return AlmostSymplectic(p, n, t)


def to_json(w: AlmostSymplectic) -> dict:
    return {"p": w.p, "N": w.n, "table": w.table.tolist()}


def from_json(d: dict, check: bool = True) -> AlmostSymplectic:
    return AlmostSymplectic(int(d["p"]), int(d["N"]), np.asarray(d["table"]), check=check)

"""Finite magmas as multiplication tables, and the designs built from loops.

A magma of order ``s`` is an ``s x s`` integer array ``T`` with ``T[a, b]``
the index of ``a * b``.  The Moufang test uses the single identity
``(a*b)*(c*d) == a*((b*c)*d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np


class MagmaError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMagma:
    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise MagmaError(f"table must be square, got shape {t.shape}")
        s = t.shape[0]
        if t.size and (t.min() < 0 or t.max() >= s):
            raise MagmaError("table entries must be indices into the carrier")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteMagma) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def relabel(self, perm) -> "FiniteMagma":
        """Transport the structure along the bijection ``a -> perm[a]``."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        return FiniteMagma(perm[self.table[np.ix_(inv, inv)]])


def cyclic_group(n: int) -> FiniteMagma:
    a = np.arange(n)
    return FiniteMagma((a[:, None] + a[None, :]) % n)


def direct_product(m1: FiniteMagma, m2: FiniteMagma) -> FiniteMagma:
    """Carrier index ``a1 * |m2| + a2``."""
    s2 = m2.size
    t1, t2 = m1.table, m2.table
    prod = t1[:, None, :, None] * s2 + t2[None, :, None, :]
    n = m1.size * s2
    return FiniteMagma(prod.reshape(n, n))


def is_quasigroup(m: FiniteMagma) -> bool:
    """Every row and every column is a permutation: a Latin square."""
    s = m.size
    if s == 0:
        return True
    ref = np.arange(s)
    t = m.table
    return bool(np.all(np.sort(t, axis=1) == ref) and np.all(np.sort(t, axis=0) == ref[:, None]))


def identity(m: FiniteMagma) -> int | None:
    """Index of the two-sided identity, if there is one."""
    ref = np.arange(m.size)
    for e in range(m.size):
        if np.array_equal(m.table[e], ref) and np.array_equal(m.table[:, e], ref):
            return e
    return None


def is_loop(m: FiniteMagma) -> bool:
    return m.size > 0 and is_quasigroup(m) and identity(m) is not None


def associativity_witness(m: FiniteMagma):
    """First triple ``(a, b, c)`` with ``(a*b)*c != a*(b*c)``, or ``None``."""
    t = m.table
    lhs = t[t[:, :, None], np.arange(m.size)[None, None, :]]
    rhs = t[np.arange(m.size)[:, None, None], t[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(x) for x in bad[0]) if bad.size else None


def is_associative(m: FiniteMagma) -> bool:
    return associativity_witness(m) is None


def moufang_witness(m: FiniteMagma):
    """First quadruple violating ``(a*b)*(c*d) == a*((b*c)*d)``, or ``None``.

    Scans all ``s**4`` quadruples, one value of ``a`` at a time.
    """
    t = m.table
    s = m.size
    bc_d = t[t[:, :, None], np.arange(s)[None, None, :]]   # ((b*c)*d)[b, c, d]
    cd = t                                                  # (c*d)[c, d]
    for a in range(s):
        ab = t[a]                                           # (a*b)[b]
        lhs = t[ab[:, None, None], cd[None, :, :]]
        rhs = t[a][bc_d]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c, d = (int(x) for x in bad[0])
            return a, b, c, d
    return None


def is_moufang(m: FiniteMagma) -> bool:
    return is_loop(m) and moufang_witness(m) is None


def latin_squares(s: int, reduced: bool = False) -> Iterator[np.ndarray]:
    """All Latin squares on ``{0..s-1}`` by cell-wise backtracking.

    ``reduced`` pins the first row and column to ``0..s-1``, which yields
    exactly the loop tables with identity 0.
    """
    grid = -np.ones((s, s), dtype=np.int64)
    col_used = np.zeros((s, s), dtype=bool)
    if s == 0:
        yield grid.copy()
        return
    if reduced:
        grid[0] = grid[:, 0] = np.arange(s)
        col_used[np.arange(s), np.arange(s)] = True
        col_used[0, :] = True

    def fill(r: int, c: int) -> Iterator[np.ndarray]:
        if r == s:
            yield grid.copy()
            return
        nr, nc = (r, c + 1) if c + 1 < s else (r + 1, 0)
        if grid[r, c] >= 0:
            yield from fill(nr, nc)
            return
        row_vals = set(grid[r].tolist())
        for x in range(s):
            if x in row_vals or col_used[c, x]:
                continue
            grid[r, c] = x
            col_used[c, x] = True
            yield from fill(nr, nc)
            col_used[c, x] = False
        grid[r, c] = -1

    yield from fill(0, 0)


def loops_of_order(s: int) -> Iterator[FiniteMagma]:
    """Loop tables with identity 0."""
    for sq in latin_squares(s, reduced=True):
        yield FiniteMagma(sq)


@dataclass(frozen=True)
class LatinDesign:
    """Points are ``(k, x)`` with ``k`` in 1..3; each line is a point triple."""
    points: tuple
    lines: tuple


def design_from_loop(m: FiniteMagma) -> LatinDesign:
    """Lines are the triples ``((1,a), (2,b), (3,c))`` with ``(a*b)*c = e``."""
    if not is_loop(m):
        raise MagmaError("design construction needs a loop")
    e = identity(m)
    s = m.size
    t = m.table
    points = tuple((k, x) for k in (1, 2, 3) for x in range(s))
    lines = []
    for a in range(s):
        for b in range(s):
            c = int(np.flatnonzero(t[t[a, b]] == e)[0])
            lines.append(((1, a), (2, b), (3, c)))
    return LatinDesign(points, tuple(lines))


def completions(d: LatinDesign, a: int, b: int) -> list[int]:
    """Third coordinates of lines through ``(1, a)`` and ``(2, b)``."""
    return [ln[2][1] for ln in d.lines if ln[0] == (1, a) and ln[1] == (2, b)]


@dataclass(frozen=True)
class DesignGraph:
    """Vertices are lines; flags are incident ``(point, line index)`` pairs."""
    vertices: tuple
    flags: tuple
    boundary: dict
    involution: dict

    def __post_init__(self):
        for f in self.flags:
            if self.involution[self.involution[f]] != f:
                raise MagmaError("flag involution does not square to the identity")


def design_graph(d: LatinDesign) -> DesignGraph:
    """Graph of the design; the flag involution is the identity."""
    flags = tuple((p, i) for i, ln in enumerate(d.lines) for p in ln)
    boundary = {f: f[1] for f in flags}
    return DesignGraph(tuple(range(len(d.lines))), flags, boundary, {f: f for f in flags})


def to_json(m: FiniteMagma) -> dict:
    return {"size": m.size, "table": m.table.tolist()}


def from_json(d: dict) -> FiniteMagma:
    return FiniteMagma(np.asarray(d["table"], dtype=np.int64).reshape(d["size"], d["size"]))

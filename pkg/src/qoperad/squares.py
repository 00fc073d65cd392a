"""Little squares with exact rational corners.

A little square tuple is an ordered list of axis-aligned rectangles in the
unit square with pairwise disjoint interiors; rectangle ``c_i`` doubles as the
affine map ``I^2 -> c_i``.  Grids are indexed ``[row, col]`` with rows along
``y`` and columns along ``x``, origin at the lower-left corner.

A colored square (prime ``p``) splits the unit square into ``p`` regions.
Region 0 is an ordered little square tuple, the slots used by composition;
regions ``1..p-1`` are unordered rectangle lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


class SquareError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalRect:
    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("x0", "x1", "y0", "y1"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if not (0 <= self.x0 < self.x1 <= 1 and 0 <= self.y0 < self.y1 <= 1):
            raise SquareError(f"not a non-degenerate rectangle in the unit square: {self}")

    @property
    def width(self) -> Fraction:
        return self.x1 - self.x0

    @property
    def height(self) -> Fraction:
        return self.y1 - self.y0

    @property
    def area(self) -> Fraction:
        return self.width * self.height

    def endpoints(self) -> tuple[Fraction, ...]:
        return (self.x0, self.x1, self.y0, self.y1)

    def __call__(self, inner: "RationalRect") -> "RationalRect":
        """Image of ``inner`` under this rectangle's affine map."""
        w, h = self.width, self.height
        return RationalRect(self.x0 + w * inner.x0, self.x0 + w * inner.x1,
                            self.y0 + h * inner.y0, self.y0 + h * inner.y1)

    def __repr__(self) -> str:
        return f"[{self.x0},{self.x1}]x[{self.y0},{self.y1}]"


UNIT = RationalRect(0, 1, 0, 1)


def rect(x0, x1, y0, y1) -> RationalRect:
    return RationalRect(_q(x0), _q(x1), _q(y0), _q(y1))


def cell(p: int, n: int, row: int, col: int) -> RationalRect:
    """Cell ``(row, col)`` of the ``p``-ary ``n``-grid."""
    s = Fraction(1, p ** n)
    return RationalRect(col * s, (col + 1) * s, row * s, (row + 1) * s)


def interiors_overlap(a: RationalRect, b: RationalRect) -> bool:
    return a.x0 < b.x1 and b.x0 < a.x1 and a.y0 < b.y1 and b.y0 < a.y1


def _first_overlap(rects: Sequence[RationalRect]):
    if len(rects) < 2:
        return None
    den = 1
    for r in rects:
        for e in r.endpoints():
            den = den * e.denominator // np.gcd(den, e.denominator)
    if den < 2 ** 60:
        # exact on integers after scaling to a common denominator
        a = np.array([[int(e * den) for e in r.endpoints()] for r in rects], dtype=np.int64)
        x0, x1, y0, y1 = a.T
        hit = ((x0[:, None] < x1[None, :]) & (x0[None, :] < x1[:, None])
               & (y0[:, None] < y1[None, :]) & (y0[None, :] < y1[:, None]))
        np.fill_diagonal(hit, False)
        bad = np.argwhere(hit)
        return tuple(int(k) for k in bad[0]) if bad.size else None
    for i in range(len(rects)):
        for j in range(i):
            if interiors_overlap(rects[i], rects[j]):
                return j, i
    return None


@dataclass(frozen=True)
class LittleSquareTuple:
    rects: tuple

    def __post_init__(self):
        rs = tuple(self.rects)
        for r in rs:
            if not isinstance(r, RationalRect):
                raise SquareError("tuple entries must be RationalRect")
        bad = _first_overlap(rs)
        if bad is not None:
            raise SquareError(f"rectangles {bad[0]} and {bad[1]} overlap")
        object.__setattr__(self, "rects", rs)

    def __len__(self) -> int:
        return len(self.rects)

    def __getitem__(self, k):
        return self.rects[k]


IDENTITY = LittleSquareTuple((UNIT,))


def compose_squares(c: LittleSquareTuple, i: int, c2: LittleSquareTuple) -> LittleSquareTuple:
    """``c o_i c2``: rectangle ``i`` (1-based) is replaced by the images of ``c2``."""
    if not 1 <= i <= len(c):
        raise SquareError(f"insertion index {i} out of range 1..{len(c)}")
    outer = c.rects[i - 1]
    return LittleSquareTuple(c.rects[:i - 1] + tuple(outer(r) for r in c2.rects) + c.rects[i:])


def gamma_squares(c: LittleSquareTuple, parts: Sequence[LittleSquareTuple]) -> LittleSquareTuple:
    if len(parts) != len(c):
        raise SquareError(f"expected {len(c)} parts, got {len(parts)}")
    out = c
    for i in range(len(c), 0, -1):
        out = compose_squares(out, i, parts[i - 1])
    return out


def permute(c: LittleSquareTuple, sigma: Sequence[int]) -> LittleSquareTuple:
    """``<c_sigma(1), ..., c_sigma(n)>`` with 0-based ``sigma``."""
    if sorted(sigma) != list(range(len(c))):
        raise SquareError("not a permutation of the rectangle indices")
    return LittleSquareTuple(tuple(c.rects[s] for s in sigma))


def p_exponent(q: Fraction, p: int) -> int | None:
    """``k`` with denominator ``p**k``, or ``None`` if the denominator is not a power of ``p``."""
    d, k = q.denominator, 0
    while d % p == 0:
        d //= p
        k += 1
    return k if d == 1 else None


def grid_exponent(rects, p: int = 2) -> int | None:
    """Smallest ``N`` putting every corner on the ``p``-ary ``N``-grid."""
    rs = rects.rects if isinstance(rects, LittleSquareTuple) else rects
    best = 0
    for r in rs:
        for e in r.endpoints():
            k = p_exponent(e, p)
            if k is None:
                return None
            best = max(best, k)
    return best


def rasterize(rects, p: int, n: int) -> np.ndarray:
    """Cover counts on the ``p**n x p**n`` cell grid; corners must lie on it."""
    rs = rects.rects if isinstance(rects, LittleSquareTuple) else rects
    m = p ** n
    out = np.zeros((m, m), dtype=np.int64)
    for r in rs:
        idx = [e * m for e in r.endpoints()]
        if any(v.denominator != 1 for v in idx):
            raise SquareError(f"{r} is not aligned to the {p}-ary {n}-grid")
        x0, x1, y0, y1 = (int(v) for v in idx)
        out[y0:y1, x0:x1] += 1
    return out


def is_strict(c: LittleSquareTuple, p: int = 2) -> bool:
    """Every row and every column of the minimal grid has an uncovered cell."""
    n = grid_exponent(c, p)
    if n is None:
        raise SquareError(f"tuple is not {p}-ary")
    if len(c) == 0:
        return True
    free = rasterize(c, p, n) == 0
    return bool(free.any(axis=1).all() and free.any(axis=0).all())


def complement_cells(c: LittleSquareTuple, p: int = 2) -> list[RationalRect]:
    """The uncovered cells of ``c`` on its minimal grid."""
    n = grid_exponent(c, p)
    if n is None:
        raise SquareError(f"tuple is not {p}-ary")
    free = rasterize(c, p, n) == 0
    return [cell(p, n, int(r), int(k)) for r, k in np.argwhere(free)]


@dataclass(frozen=True)
class ColoredSquare:
    p: int
    c0: LittleSquareTuple
    regions: tuple  # rectangle lists for colors 1..p-1

    def __post_init__(self):
        regions = tuple(tuple(r) for r in self.regions)
        if len(regions) != self.p - 1:
            raise SquareError(f"need {self.p - 1} non-zero regions, got {len(regions)}")
        object.__setattr__(self, "regions", regions)
        n = self.grid_exponent()
        if n is None:
            raise SquareError(f"corners must have {self.p}-power denominators")
        cover = sum((rasterize(rs, self.p, n) for rs in self.all_regions()),
                    np.zeros((self.p ** n,) * 2, dtype=np.int64))
        if not np.all(cover == 1):
            raise SquareError("regions must tile the unit square exactly once")

    def all_regions(self) -> list:
        return [self.c0.rects] + [list(r) for r in self.regions]

    @property
    def arity(self) -> int:
        return len(self.c0)

    def grid_exponent(self) -> int | None:
        best = 0
        for rs in self.all_regions():
            k = grid_exponent(rs, self.p)
            if k is None:
                return None
            best = max(best, k)
        return best

    def coloring(self, n: int | None = None) -> np.ndarray:
        """Color of every cell of the ``n``-grid (default: corner grid)."""
        n = self.grid_exponent() if n is None else n
        out = np.zeros((self.p ** n,) * 2, dtype=np.int64)
        for color, rs in enumerate(self.all_regions()):
            out[rasterize(rs, self.p, n) > 0] = color
        return out


def is_strict_colored(q: ColoredSquare) -> bool:
    return is_strict(q.c0, q.p)


def compose_colored(q: ColoredSquare, i: int, q2: ColoredSquare) -> ColoredSquare:
    """Scale all of ``q2`` into slot ``i`` of ``q``; colors are kept."""
    if q.p != q2.p:
        raise SquareError(f"prime mismatch: {q.p} vs {q2.p}")
    if not 1 <= i <= q.arity:
        raise SquareError(f"insertion index {i} out of range 1..{q.arity}")
    slot = q.c0.rects[i - 1]
    c0 = compose_squares(q.c0, i, q2.c0)
    regions = tuple(tuple(r) + tuple(slot(x) for x in r2) for r, r2 in zip(q.regions, q2.regions))
    return ColoredSquare(q.p, c0, regions)


def gamma_colored(q: ColoredSquare, parts: Sequence[ColoredSquare]) -> ColoredSquare:
    if len(parts) != q.arity:
        raise SquareError(f"expected {q.arity} parts, got {len(parts)}")
    out = q
    for i in range(q.arity, 0, -1):
        out = compose_colored(out, i, parts[i - 1])
    return out


def minimal_grid(colors: np.ndarray, p: int) -> np.ndarray:
    """Coarsest ``p``-ary coloring equal to ``colors`` as a function on the square."""
    while colors.shape[0] > 1:
        m = colors.shape[0] // p
        blocks = colors.reshape(m, p, m, p)
        first = blocks[:, :1, :, :1]
        if not np.all(blocks == first):
            break
        colors = first[:, 0, :, 0]
    return colors


def colored_from_grid(colors: np.ndarray, p: int) -> ColoredSquare:
    """One cell per rectangle; region 0 cells in row-major order."""
    colors = np.asarray(colors)
    m = colors.shape[0]
    n = 0
    while p ** n < m:
        n += 1
    if p ** n != m or colors.shape != (m, m):
        raise SquareError(f"grid must be {p}**N square")
    cells = [[] for _ in range(p)]
    for r in range(m):
        for k in range(m):
            col = int(colors[r, k])
            if not 0 <= col < p:
                raise SquareError(f"color {col} outside 0..{p - 1}")
            cells[col].append(cell(p, n, r, k))
    return ColoredSquare(p, LittleSquareTuple(tuple(cells[0])), tuple(tuple(c) for c in cells[1:]))


def binary_as_colored(c: LittleSquareTuple) -> ColoredSquare:
    """A binary little square with its complement painted color 1."""
    return ColoredSquare(2, c, (tuple(complement_cells(c, 2)),))


def random_grid_tuple(rng, p: int, n: int, count: int, tries: int = 200) -> LittleSquareTuple:
    """Up to ``count`` disjoint random grid-aligned rectangles on the ``n``-grid."""
    m = p ** n
    rects: list[RationalRect] = []
    used = np.zeros((m, m), dtype=bool)
    for _ in range(tries):
        if len(rects) == count:
            break
        x0, y0 = (int(v) for v in rng.integers(0, m, size=2))
        x1 = int(rng.integers(x0 + 1, m + 1))
        y1 = int(rng.integers(y0 + 1, m + 1))
        if used[y0:y1, x0:x1].any():
            continue
        used[y0:y1, x0:x1] = True
        s = Fraction(1, m)
        rects.append(RationalRect(x0 * s, x1 * s, y0 * s, y1 * s))
    return LittleSquareTuple(tuple(rects))


def random_strict_tuple(rng, p: int = 2, max_n: int = 4, max_count: int = 3) -> LittleSquareTuple:
    """Rejection-sample a strict tuple with grid exponent at most ``max_n``."""
    while True:
        n = int(rng.integers(1, max_n + 1))
        c = random_grid_tuple(rng, p, n, int(rng.integers(1, max_count + 1)))
        if len(c) and is_strict(c, p):
            return c


def q_to_json(q: Fraction) -> dict:
    return {"n": q.numerator, "d": q.denominator}


def q_from_json(d) -> Fraction:
    if isinstance(d, dict):
        return Fraction(int(d["n"]), int(d["d"]))
    return Fraction(d)


def rect_to_json(r: RationalRect) -> dict:
    return {"x": [q_to_json(r.x0), q_to_json(r.x1)], "y": [q_to_json(r.y0), q_to_json(r.y1)]}


def rect_from_json(d: dict) -> RationalRect:
    (x0, x1), (y0, y1) = d["x"], d["y"]
    return RationalRect(q_from_json(x0), q_from_json(x1), q_from_json(y0), q_from_json(y1))


def tuple_to_json(c: LittleSquareTuple) -> list:
    return [rect_to_json(r) for r in c.rects]


def tuple_from_json(d: list) -> LittleSquareTuple:
    return LittleSquareTuple(tuple(rect_from_json(r) for r in d))


def colored_to_json(q: ColoredSquare) -> dict:
    return {"p": q.p, "regions": [[rect_to_json(r) for r in rs] for rs in q.all_regions()]}


def colored_from_json(d: dict) -> ColoredSquare:
    regions = [tuple(rect_from_json(r) for r in rs) for rs in d["regions"]]
    return ColoredSquare(int(d["p"]), LittleSquareTuple(regions[0]), tuple(regions[1:]))

from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qoperad import squares
from qoperad.squares import (IDENTITY, UNIT, ColoredSquare, LittleSquareTuple, SquareError, cell,
                             compose_colored, compose_squares, rect)

QUARTER = rect(0, F(1, 2), 0, F(1, 2))


def strict_tuples(p=2, max_n=4):
    return st.integers(0, 2**32 - 1).map(
        lambda s: squares.random_strict_tuple(np.random.default_rng(s), p, max_n))


def test_identity_and_quarter():
    c = LittleSquareTuple((QUARTER, rect(F(1, 2), 1, F(1, 2), 1)))
    assert compose_squares(IDENTITY, 1, c) == c
    assert compose_squares(c, 2, IDENTITY) == c
    q = LittleSquareTuple((QUARTER,))
    assert compose_squares(q, 1, q).rects == (rect(0, F(1, 4), 0, F(1, 4)),)


def test_overlap_rejected():
    with pytest.raises(SquareError):
        LittleSquareTuple((QUARTER, rect(F(1, 4), F(3, 4), F(1, 4), F(3, 4))))
    # touching edges are fine
    LittleSquareTuple((QUARTER, rect(F(1, 2), 1, 0, F(1, 2))))


def test_grid_exponents():
    assert squares.grid_exponent([QUARTER]) == 1
    assert squares.grid_exponent([rect(F(3, 8), 1, 0, 1)]) == 3
    assert squares.grid_exponent([rect(F(1, 3), 1, 0, 1)]) is None
    assert squares.grid_exponent([rect(F(1, 3), 1, 0, 1)], 3) == 1


def test_strictness_examples():
    assert not squares.is_strict(IDENTITY)
    assert squares.is_strict(LittleSquareTuple(()))
    q = LittleSquareTuple((QUARTER,))
    assert squares.is_strict(q)
    # grid indexing is [row = y, column = x] from the lower-left corner
    assert squares.rasterize(q, 2, 1).tolist() == [[1, 0], [0, 0]]
    assert squares.complement_cells(q) == [cell(2, 1, 0, 1), cell(2, 1, 1, 0), cell(2, 1, 1, 1)]


def test_colored_p3_example():
    third = F(1, 3)
    slot = rect(third, 2 * third, 0, third)
    q = ColoredSquare(3, LittleSquareTuple((slot,)),
                      ((rect(0, third, 0, 1),),
                       (rect(2 * third, 1, 0, 1), rect(third, 2 * third, third, 1))))
    inner_c0 = LittleSquareTuple((rect(0, third, third, 2 * third),))
    q2 = ColoredSquare(3, inner_c0,
                       ((rect(third, 1, third, 2 * third), rect(0, 1, 2 * third, 1)),
                        (rect(0, 1, 0, third),)))
    out = compose_colored(q, 1, q2)
    strip = rect(third, 2 * third, 0, F(1, 9))
    assert strip in out.regions[1]
    assert out.c0.rects == (rect(third, F(4, 9), F(1, 9), F(2, 9)),)
    assert squares.is_strict_colored(out)
    assert out.grid_exponent() == 2


def test_colored_identity_part():
    q = squares.binary_as_colored(LittleSquareTuple((QUARTER,)))
    unit = ColoredSquare(2, IDENTITY, ((),))
    out = compose_colored(q, 1, unit)
    assert out.coloring(1).tolist() == q.coloring(1).tolist()


def test_colored_must_tile():
    with pytest.raises(SquareError):
        ColoredSquare(2, LittleSquareTuple((QUARTER,)), ((),))


@given(strict_tuples(), strict_tuples(), st.data())
def test_strict_closure(a, b, data):
    i = data.draw(st.integers(1, len(a)))
    out = compose_squares(a, i, b)
    assert squares._first_overlap(out.rects) is None
    assert squares.grid_exponent(out) is not None
    assert squares.is_strict(out)
    assert sum(r.area for r in out.rects) == sum(r.area for r in a.rects) - a.rects[i - 1].area * (
        1 - sum(r.area for r in b.rects))


@given(strict_tuples(3, 2), strict_tuples(3, 2), st.data())
def test_strict_closure_ternary(a, b, data):
    out = compose_squares(a, data.draw(st.integers(1, len(a))), b)
    assert squares.is_strict(out, 3)


@given(strict_tuples(max_n=2), st.data())
def test_insertion_identities_exact(t, data):
    s = data.draw(strict_tuples(max_n=2))
    r = data.draw(strict_tuples(max_n=2))
    n, m, k = len(t), len(s), len(r)
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, m))
    assert compose_squares(compose_squares(t, i, s), i + j - 1, r) == compose_squares(t, i, compose_squares(s, j, r))
    if n >= 2:
        a = data.draw(st.integers(1, n - 1))
        b = data.draw(st.integers(a + 1, n))
        lhs = compose_squares(compose_squares(t, b, s), a, r)
        rhs = compose_squares(compose_squares(t, a, r), b + k - 1, s)
        assert lhs == rhs


@given(strict_tuples(), st.data())
def test_permutation_equivariance(c, data):
    sigma = data.draw(st.permutations(range(len(c))))
    j = data.draw(st.integers(1, len(c)))
    b = data.draw(strict_tuples(max_n=2))
    lhs = compose_squares(squares.permute(c, sigma), j, b)
    rhs = compose_squares(c, sigma[j - 1] + 1, b)
    assert set(lhs.rects) == set(rhs.rects)


def test_colored_grid_roundtrip():
    colors = np.array([[0, 2, 1], [1, 0, 2], [2, 1, 0]])
    q = squares.colored_from_grid(colors, 3)
    assert np.array_equal(q.coloring(1), colors)
    assert np.array_equal(squares.minimal_grid(np.kron(colors, np.ones((3, 3), int)), 3), colors)


def test_json_roundtrip():
    c = LittleSquareTuple((QUARTER, rect(F(1, 2), F(3, 4), F(5, 8), 1)))
    assert squares.tuple_from_json(squares.tuple_to_json(c)) == c
    q = squares.binary_as_colored(c)
    back = squares.colored_from_json(squares.colored_to_json(q))
    assert back.c0 == q.c0 and back.regions == q.regions
    assert squares.q_from_json("3/8") == F(3, 8)

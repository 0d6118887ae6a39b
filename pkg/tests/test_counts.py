import random
from fractions import Fraction
from itertools import permutations

import pytest

from percforge.counts import (
    DomainError,
    binom,
    grid_edge_count,
    m_lower_grid,
    m_lower_grid_r2,
    m_lower_hypercube,
    w_recurrence,
    wsat_grid_closed,
    wsat_hypercube,
)


def test_binom_conventions():
    assert binom(5, 2) == 10
    assert binom(2, 5) == 0
    assert binom(-1, 0) == 0
    assert binom(3, -1) == 0


def test_wsat_hypercube_values():
    # d == r: the whole edge set of Q_r
    for r in range(0, 9):
        assert wsat_hypercube(r, r) == r * (1 << max(r - 1, 0))
    assert wsat_hypercube(3, 2) == 5
    assert wsat_hypercube(4, 3) == 17
    assert wsat_hypercube(5, 3) == 23
    for d in range(0, 11):
        assert wsat_hypercube(d, 0) == 0
    with pytest.raises(DomainError):
        wsat_hypercube(2, 3)


def test_wsat_grid_closed_values():
    # all sides 2 reduces to the hypercube closed form
    for d in range(1, 9):
        for r in range(1, d + 1):
            assert wsat_grid_closed((2,) * d, r) == wsat_hypercube(d, r)
    assert wsat_grid_closed((3, 3), 2) == 6
    for n in range(2, 12):
        assert wsat_grid_closed((n,), 1) == 1
    with pytest.raises(DomainError):
        wsat_grid_closed((3, 3), 3)  # r > d needs the recurrence


def test_w_recurrence_base_cases():
    for dims in [(2, 2), (3, 3), (3, 2), (4, 3, 2)]:
        d = len(dims)
        assert w_recurrence(dims, 0) == 0
        assert w_recurrence(dims, 2 * d) == grid_edge_count(dims)
    # hypercube plateau between d+1 and 2d-1
    for d in range(1, 8):
        for r in range(d + 1, 2 * d):
            assert w_recurrence((2,) * d, r) == d * (1 << (d - 1))


def test_w_recurrence_hand_unrolled():
    # w_2(3,3) = w_2(2,3) + w_1(3) + 0 = 5 + 1 = 6
    assert w_recurrence((2, 3), 2) == 5
    assert w_recurrence((3,), 1) == 1
    assert w_recurrence((3, 3), 2) == 6
    # the 4x2 grid has no star with 4 leaves, so the r=3 value is all edges
    assert w_recurrence((4, 2), 3) == grid_edge_count((4, 2)) == 10
    assert w_recurrence((3, 2), 3) == 7


def test_w_recurrence_agrees_with_closed_form():
    instances = []
    for dims in [(2,), (3,), (7,), (2, 2), (3, 2), (3, 3), (4, 3), (2, 2, 2), (3, 3, 2), (4, 2, 2), (3, 3, 3)]:
        for r in range(1, len(dims) + 1):
            instances.append((dims, r))
    for dims, r in instances:
        assert w_recurrence(dims, r) == wsat_grid_closed(dims, r), (dims, r)


def test_w_recurrence_order_independent():
    rng = random.Random(11)
    for _ in range(40):
        d = rng.randrange(1, 4)
        dims = tuple(rng.randrange(2, 6) for _ in range(d))
        r = rng.randrange(0, 2 * d + 1)
        vals = {w_recurrence(p, r) for p in permutations(dims)}
        assert len(vals) == 1, (dims, r, vals)


def test_closed_form_consistency_sweep():
    # every grid with at most 4096 vertices (up to axis order), all r <= d
    from math import prod

    def dims_up_to(limit):
        out = []

        def rec(prefix, lo):
            a = lo
            while prod(prefix + (a,)) <= limit:
                dims = prefix + (a,)
                out.append(dims)
                rec(dims, a)
                a += 1

        rec((), 2)
        return out

    for dims in dims_up_to(4096):
        for r in range(1, len(dims) + 1):
            assert wsat_grid_closed(dims, r) == w_recurrence(dims, r), (dims, r)


def test_w_recurrence_deep_axis():
    # a long path must not hit the interpreter recursion limit
    assert w_recurrence((600,), 1) == 1
    assert w_recurrence((600,), 2) == 599
    assert w_recurrence((2, 300), 2) == w_recurrence((300, 2), 2)


def test_m_lower_hypercube_values():
    b = m_lower_hypercube(5, 4)
    assert b.value == Fraction(49, 4)
    assert b.ceil_value == 13
    assert b.rational_string() == "49/4"
    assert m_lower_hypercube(3, 3).value == 4
    assert m_lower_hypercube(3, 3).ceil_value == 4
    for d in range(1, 12):
        assert m_lower_hypercube(d, 1).value == 1
    # always exactly wsat / r
    for d in range(1, 9):
        for r in range(1, d + 1):
            assert m_lower_hypercube(d, r).value == Fraction(wsat_hypercube(d, r), r)


def test_m_lower_hypercube_r3_closed_form():
    # the threshold-3 lower bound equals ceil(d(d+3)/6) + 1
    for d in range(3, 17):
        expect = -(-(d * (d + 3)) // 6) + 1
        assert m_lower_hypercube(d, 3).ceil_value == expect


def test_m_lower_grid_values():
    assert m_lower_grid((3, 3), 2).ceil_value == 3
    # the d = r grid bound: at least n^(d-1)
    for n in range(2, 6):
        for d in range(1, 4):
            bound = m_lower_grid((n,) * d, d).ceil_value
            assert bound >= n ** (d - 1), (n, d, bound)
    # hypercubes agree with the dedicated closed form
    for d in range(1, 9):
        for r in range(1, d + 1):
            assert m_lower_grid((2,) * d, r).ceil_value == m_lower_hypercube(d, r).ceil_value


def test_m_lower_grid_r2_values():
    for d in range(1, 10):
        assert m_lower_grid_r2((2,) * d) == -(-d // 2) + 1
    assert m_lower_grid_r2((3, 3)) == 3
    for n in range(2, 9):
        assert m_lower_grid_r2((n,)) == (n - 1 + 1) // 2 + 1

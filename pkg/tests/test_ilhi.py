import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ricebounds.errors import DomainError
from ricebounds.ilhi import IlhiParams, ilhi_closed, ilhi_lower, ilhi_quad, ilhi_upper
from ricebounds.results import Method

from .oracle_values import ILHI

A_GRID = [1.5, 2.0, 3.0, 5.0]
Z_GRID = [0.5, 1.0, 2.0, 5.0, 10.0]


def rel(a, b):
    return abs(a - b) / abs(b)


def test_params_validated():
    with pytest.raises(DomainError):
        IlhiParams(-1, 0.5, 2, 1)
    with pytest.raises(DomainError):
        IlhiParams(1, 0.5, math.inf, 1)
    IlhiParams(1, 0.5, -3.0, 1)


@pytest.mark.parametrize("key", sorted(ILHI))
def test_quad_against_oracle(key):
    assert rel(ilhi_quad(*key).value, ILHI[key]) < 1e-12


def test_empty_range():
    assert ilhi_quad(1, 0.5, 2, 0).value == 0.0
    assert ilhi_closed(1, 0.5, 2, 0).value == 0.0
    assert ilhi_lower(1, 0, 2, 0).value == ilhi_upper(1, 1, 2, 0).value == 0.0


def test_closed_small_z_vanishes():
    assert 0.0 < ilhi_closed(1, 0.5, 2, 1e-6).value < 1e-11


@pytest.mark.parametrize("key", [(1, 0.5, 2, 3), (3, 2.5, 3, 2), (3, 1.5, 3, 2), (1, 0.5, 0.5, 3), (2, 1.5, 1, 2)])
def test_closed_against_oracle(key):
    res = ilhi_closed(*key)
    assert res.method is Method.CLOSED_FORM
    assert rel(res.value, ILHI[key]) < 1e-11


@pytest.mark.parametrize("mn", [(1, 0.5), (2, 1.5), (3, 2.5)])
def test_closed_agrees_with_quadrature(mn):
    m, n = mn
    for a in A_GRID:
        for z in Z_GRID:
            assert rel(ilhi_closed(m, n, a, z).value, ilhi_quad(m, n, a, z).value) <= 1e-9


def test_sign_of_second_term():
    # (-1)^(n + 1/2): + for n = 1/2, - for n = 3/2; flipping either breaks agreement
    assert rel(ilhi_closed(1, 0.5, 2, 3).value, ILHI[(1, 0.5, 2, 3)]) < 1e-12
    assert rel(ilhi_closed(3, 1.5, 3, 2).value, ILHI[(3, 1.5, 3, 2)]) < 1e-12


@pytest.mark.parametrize("a", [1.0, 0.5, -0.5, -2.0])
def test_closed_below_one(a):
    # a <= 1: the growing exponential is integrated numerically
    res = ilhi_closed(2, 1.5, a, 2.0)
    assert rel(res.value, ilhi_quad(2, 1.5, a, 2.0).value) < 1e-11
    if a < 1:
        assert res.est_error > 0


def test_continuous_across_a_equals_one():
    below = ilhi_quad(2, 1.5, 1 - 1e-6, 3.0).value
    at = ilhi_quad(2, 1.5, 1.0, 3.0).value
    above = ilhi_quad(2, 1.5, 1 + 1e-6, 3.0).value
    assert below > at > above
    assert abs(below - above) < 1e-4 * at
    closed = [ilhi_closed(2, 1.5, a, 3.0).value for a in (1 - 1e-6, 1.0, 1 + 1e-6)]
    assert closed[0] > closed[1] > closed[2]
    assert rel(closed[1], at) < 1e-12


def test_closed_small_z_cancellation_is_reported():
    res = ilhi_closed(3, 2.5, 2.0, 0.05)
    exact = ilhi_quad(3, 2.5, 2.0, 0.05).value
    assert abs(res.value - exact) <= res.est_error
    assert res.est_error > 1e-9 * exact


def test_overflow_guard():
    with pytest.raises(OverflowError):
        ilhi_quad(1, 0.5, 0.0, 800.0)
    with pytest.raises(OverflowError):
        ilhi_closed(1, 0.5, -1.0, 400.0)


def test_closed_domain():
    with pytest.raises(DomainError):
        ilhi_closed(1, 1.0, 2, 1)
    with pytest.raises(DomainError):
        ilhi_closed(0.5, 2.5, 2, 1)


def test_bound_examples():
    assert ilhi_lower(1, 0, 2, 3).value == pytest.approx(ILHI[(1, 0.5, 2, 3)], rel=1e-12)
    assert ilhi_lower(1, 0, 2, 3).value < ILHI[(1, 0, 2, 3)]
    assert ilhi_closed(3, 2.5, 3, 2).value < ILHI[(3, 2, 3, 2)] < ilhi_closed(3, 1.5, 3, 2).value
    with pytest.raises(DomainError):
        ilhi_upper(1, 0, 2, 3)
    with pytest.raises(DomainError):
        ilhi_lower(1, 0.5, 2, 3)


@pytest.mark.parametrize("n", [1, 2])
def test_sandwich(n):
    m = n + 1
    for a in A_GRID:
        for z in Z_GRID:
            exact = ilhi_quad(m, n, a, z).value
            assert ilhi_lower(m, n, a, z).value < exact < ilhi_upper(m, n, a, z).value


@pytest.mark.parametrize("a", [1.5, 3.0])
@pytest.mark.parametrize("z", [0.5, 2.0, 10.0])
def test_strictly_decreasing_in_order(a, z):
    values = [ilhi_quad(2, n, a, z).value for n in (0, 0.5, 1, 1.5, 2)]
    assert all(p > q for p, q in zip(values, values[1:]))


@settings(max_examples=25, deadline=None)
@given(st.floats(0, 3), st.floats(0, 3), st.floats(0, 4), st.floats(0.01, 5), st.floats(0.01, 2))
def test_nondecreasing_in_z(m, n, a, z, dz):
    assert ilhi_quad(m, n, a, z + dz).value >= ilhi_quad(m, n, a, z).value >= 0.0

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oeffect.prior import (
    InvalidJointError,
    InvalidParamsError,
    JointDist2,
    PriorParams,
    frechet_bounds,
    is_independent,
    joint_from_params,
    params_from_joint,
)

from conftest import valid_params


@pytest.mark.parametrize(
    "abc, cells",
    [
        ((0.4, 0.7, 0.2), (0.2, 0.2, 0.5, 0.1)),
        ((1, 1, 1), (1, 0, 0, 0)),
    ],
)
def test_joint_from_params(abc, cells):
    assert joint_from_params(PriorParams(*abc)).cells == pytest.approx(cells, abs=1e-15)


def test_frechet_violation_rejected():
    with pytest.raises(InvalidParamsError):
        PriorParams(0.5, 0.5, 0.6)


def test_joint_from_params_rechecks_duck_typed_input():
    class Raw:
        a, b, c = 0.5, 0.5, 0.6

    with pytest.raises(InvalidParamsError):
        joint_from_params(Raw())


@pytest.mark.parametrize(
    "cells, abc",
    [
        ((0.2, 0.2, 0.5, 0.1), (0.4, 0.7, 0.2)),
        ((0.25, 0.25, 0.25, 0.25), (0.5, 0.5, 0.25)),
        ((1, 0, 0, 0), (1, 1, 1)),
    ],
)
def test_params_from_joint(cells, abc):
    assert params_from_joint(JointDist2(*cells)).astuple() == pytest.approx(abc, abs=1e-15)


@pytest.mark.parametrize(
    "abc, tol, expected",
    [
        ((0.4, 0.7, 0.28), 1e-12, True),
        ((0.4, 0.7, 0.2), 1e-12, False),
        ((0.5, 0.5, 0.25), 0.0, True),
    ],
)
def test_is_independent(abc, tol, expected):
    assert is_independent(PriorParams(*abc), tol) is expected


@pytest.mark.parametrize("cells", [(0.5, 0.5, 0.1, -0.1), (0.3, 0.3, 0.3, 0.3), (1.2, -0.2, 0, 0)])
def test_invalid_joint(cells):
    with pytest.raises(InvalidJointError):
        JointDist2(*cells)


def test_round_trip_exact_in_rationals():
    for a, b, c in [(F(2, 5), F(7, 10), F(1, 5)), (F(29, 1000), F(1, 3), F(6, 1000)), (F(1), F(1), F(1))]:
        p = PriorParams(a, b, c)
        assert params_from_joint(joint_from_params(p)) == p


@given(valid_params())
def test_round_trip_floats(p):
    # binary64 c + (a - c) can miss a by one ulp, e.g. a=0.029, c=0.006
    back = params_from_joint(joint_from_params(p))
    assert back.astuple() == pytest.approx(p.astuple(), abs=5e-16)
    assert back.c == p.c


@given(valid_params())
def test_joint_is_valid_distribution(p):
    j = joint_from_params(p)
    assert all(0 <= x <= 1 for x in j.cells)
    assert abs(sum(j.cells) - 1) <= 1e-12


@given(st.floats(0, 1), st.floats(0, 1), st.floats(-0.5, 1.5))
def test_frechet_acceptance_matches_bounds(a, b, c):
    lo, hi = frechet_bounds(a, b)
    inside = lo - 1e-12 <= c <= hi + 1e-12
    if inside:
        PriorParams(a, b, c)
    else:
        with pytest.raises(InvalidParamsError):
            PriorParams(a, b, c)

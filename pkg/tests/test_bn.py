import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oeffect.bn import (
    JointDist3,
    check_no_order_effect_conditions,
    conditional_mutual_dependence,
    factorize_chain,
    from_conditionals,
)
from oeffect.prior import InvalidJointError

prob = st.floats(0.01, 0.99)


def brute_conditional(table, target, value, given):
    """P(target=value | given) by summing the 8 cells directly."""
    num = den = 0.0
    for idx in itertools.product((0, 1), repeat=3):
        if all(idx[k] == v for k, v in given.items()):
            den += table[idx]
            if idx[target] == value:
                num += table[idx]
    return num / den


def deterministic_equal_joint():
    t = np.zeros((2, 2, 2))
    for q0 in (0, 1):
        t[q0, 0, 0] = 0.5 * 0.6
        t[q0, 1, 1] = 0.5 * 0.4
    return JointDist3(t)


def mixture_joint():
    # Q1, Q2 independent within each Q0 branch but correlated overall
    return from_conditionals(0.5, (0.9, 0.2), (0.8, 0.1))


def test_product_joint_passes():
    j = from_conditionals(0.5, (0.4, 0.4), (0.7, 0.7))
    rep = check_no_order_effect_conditions(j, 1e-12)
    assert rep.q2_unaffected_by_q1 and rep.q1_unaffected_by_q2
    assert conditional_mutual_dependence(j) == pytest.approx(0, abs=1e-15)


def test_deterministic_equal_answers_fail():
    j = deterministic_equal_joint()
    # brute force: P(Q2=yes | Q0=yes) = 0.6 but P(Q2=yes | Q0=yes, Q1=yes) = 1
    assert brute_conditional(j.table, 2, 0, {0: 0}) == pytest.approx(0.6)
    assert brute_conditional(j.table, 2, 0, {0: 0, 1: 0}) == pytest.approx(1.0)
    rep = check_no_order_effect_conditions(j, 1e-12)
    assert not rep.q2_unaffected_by_q1
    assert not rep.q1_unaffected_by_q2
    assert conditional_mutual_dependence(j) == pytest.approx(0.24)


def test_mixture_is_conditionally_but_not_marginally_independent():
    j = mixture_joint()
    p1 = j.prob(q1=0)
    p2 = j.prob(q2=0)
    assert abs(j.prob(q1=0, q2=0) - p1 * p2) > 0.05
    for q0, q1, q2 in itertools.product((0, 1), repeat=3):
        lhs = brute_conditional(j.table, 2, q2, {0: q0})
        rhs = brute_conditional(j.table, 2, q2, {0: q0, 1: q1})
        assert lhs == pytest.approx(rhs, abs=1e-12)
    assert check_no_order_effect_conditions(j, 1e-12).no_order_effect


def test_zero_probability_branch_skipped():
    # Q1 is always "yes" when Q0 is "yes": the (Q0=yes, Q1=no) branch is undefined
    j = from_conditionals(0.5, (1.0, 0.3), (0.6, 0.2))
    rep = check_no_order_effect_conditions(j, 1e-12)
    assert rep.no_order_effect
    assert {"q0": 0, "q1": 1} in rep.skipped


def test_invalid_joint3():
    with pytest.raises(InvalidJointError):
        JointDist3(np.full(8, 0.2))


@given(prob, st.tuples(prob, prob), st.tuples(prob, prob))
def test_random_conditional_products(p0, p1, p2):
    j = from_conditionals(p0, p1, p2)
    assert conditional_mutual_dependence(j) <= 1e-12
    assert check_no_order_effect_conditions(j, 1e-12).no_order_effect


@given(st.lists(st.floats(0.001, 1.0), min_size=8, max_size=8))
def test_report_agrees_with_dependence(raw):
    cells = np.array(raw) / sum(raw)
    j = JointDist3.from_cells(cells)
    tol = 1e-9
    rep = check_no_order_effect_conditions(j, tol)
    dep = conditional_mutual_dependence(j)
    if dep > 1e-6:
        assert not rep.no_order_effect
    if dep == 0:
        assert rep.no_order_effect


@given(st.lists(st.floats(0.001, 1.0), min_size=8, max_size=8))
def test_chain_rule_factorizations(raw):
    j = JointDist3.from_cells(np.array(raw) / sum(raw))
    for s in ("A", "B"):
        np.testing.assert_allclose(factorize_chain(j, s).table, j.table, atol=1e-12)


def test_structure_c_reconstructs_only_under_conditional_independence():
    ci = mixture_joint()
    np.testing.assert_allclose(factorize_chain(ci, "C").table, ci.table, atol=1e-12)
    dep = deterministic_equal_joint()
    assert np.max(np.abs(factorize_chain(dep, "C").table - dep.table)) > 0.1

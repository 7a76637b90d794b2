"""
Three-question joints P(Q0, Q1, Q2) and the conditions for no order effect.

With a context question Q0 asked before Q1 and Q2, the two later questions
show no order effect when

    P(Q2 | Q0) = P(Q2 | Q0, Q1)   and   P(Q1 | Q0) = P(Q1 | Q0, Q2),

i.e. when Q1 and Q2 are conditionally independent given Q0. Arrays are
indexed ``[q0, q1, q2]`` with 0 meaning "yes" and 1 meaning "no".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .prior import TOL, InvalidJointError

__all__ = [
    "JointDist3",
    "ConditionReport",
    "check_no_order_effect_conditions",
    "conditional_mutual_dependence",
    "factorize_chain",
    "from_conditionals",
]

YES, NO = 0, 1


@dataclass(frozen=True, eq=False)
class JointDist3:
    table: np.ndarray

    def __post_init__(self):
        table = np.array(self.table, dtype=float).reshape(2, 2, 2)
        if np.any(table < -TOL) or np.any(table > 1 + TOL):
            raise InvalidJointError("cells must lie in [0, 1]")
        if abs(table.sum() - 1.0) > TOL:
            raise InvalidJointError(f"cells sum to {table.sum()!r}, not 1")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_cells(cls, cells):
        """Build from 8 cells in (q0, q1, q2) order yyy, yyn, yny, ..., nnn."""
        return cls(np.asarray(cells, dtype=float))

    def prob(self, q0=None, q1=None, q2=None):
        """Marginal probability of the given assignment; ``None`` sums a variable out."""
        idx = tuple(slice(None) if v is None else v for v in (q0, q1, q2))
        return float(np.sum(self.table[idx]))


def from_conditionals(p_q0, p_q1_given_q0, p_q2_given_q0):
    """Joint of the form P(Q0) P(Q1|Q0) P(Q2|Q0), from P(yes) values.

    ``p_q1_given_q0`` and ``p_q2_given_q0`` are length-2 sequences giving
    P(Qk = yes | Q0 = yes) and P(Qk = yes | Q0 = no).
    """
    p0 = np.array([p_q0, 1 - p_q0])
    p1 = np.array([[p, 1 - p] for p in p_q1_given_q0])
    p2 = np.array([[p, 1 - p] for p in p_q2_given_q0])
    return JointDist3(p0[:, None, None] * p1[:, :, None] * p2[:, None, :])


@dataclass
class ConditionReport:
    """Outcome of the two no-order-effect checks.

    ``skipped`` lists conditioning assignments whose probability was at or
    below the tolerance; the equalities hold vacuously there.
    """

    q2_unaffected_by_q1: bool
    q1_unaffected_by_q2: bool
    skipped: list = field(default_factory=list)

    @property
    def no_order_effect(self):
        return self.q2_unaffected_by_q1 and self.q1_unaffected_by_q2


def _condition_holds(joint, target, other, tol, skipped):
    """Check P(target | Q0) == P(target | Q0, other) on every defined branch."""
    ok = True
    for q0, o in itertools.product((YES, NO), repeat=2):
        p_q0 = joint.prob(q0=q0)
        p_q0_other = joint.prob(**{"q0": q0, other: o})
        if p_q0 <= tol or p_q0_other <= tol:
            skipped.append({"q0": q0, other: o})
            continue
        for t in (YES, NO):
            lhs = joint.prob(**{"q0": q0, target: t}) / p_q0
            rhs = joint.prob(**{"q0": q0, target: t, other: o}) / p_q0_other
            if abs(lhs - rhs) > tol:
                ok = False
    return ok


def check_no_order_effect_conditions(joint: JointDist3, tol: float = TOL) -> ConditionReport:
    skipped = []
    q2_ok = _condition_holds(joint, "q2", "q1", tol, skipped)
    q1_ok = _condition_holds(joint, "q1", "q2", tol, skipped)
    return ConditionReport(q2_ok, q1_ok, skipped)


def conditional_mutual_dependence(joint: JointDist3) -> float:
    """Largest |P(Q1,Q2|Q0) - P(Q1|Q0) P(Q2|Q0)| over assignments with P(Q0) > 0."""
    worst = 0.0
    for q0 in (YES, NO):
        p_q0 = joint.prob(q0=q0)
        if p_q0 <= 0:
            continue
        for q1, q2 in itertools.product((YES, NO), repeat=2):
            both = joint.prob(q0, q1, q2) / p_q0
            apart = (joint.prob(q0=q0, q1=q1) / p_q0) * (joint.prob(q0=q0, q2=q2) / p_q0)
            worst = max(worst, abs(both - apart))
    return worst


def _cond(joint, var, val, given):
    den = joint.prob(**given)
    if den <= 0:
        return 0.0
    return joint.prob(**given, **{var: val}) / den


def factorize_chain(joint: JointDist3, structure: str) -> JointDist3:
    """Rebuild the joint from one of three factorizations.

    ``"A"``: P(Q0) P(Q1|Q0) P(Q2|Q0,Q1)
    ``"B"``: P(Q0) P(Q2|Q0) P(Q1|Q0,Q2)
    ``"C"``: P(Q0) P(Q1|Q0) P(Q2|Q0)   (drops the Q1-Q2 link)

    A and B are chain-rule identities and return the input; C returns the
    input only when Q1 and Q2 are conditionally independent given Q0.
    """
    out = np.zeros((2, 2, 2))
    for q0, q1, q2 in itertools.product((YES, NO), repeat=3):
        p = joint.prob(q0=q0)
        if structure == "A":
            p *= _cond(joint, "q1", q1, {"q0": q0}) * _cond(joint, "q2", q2, {"q0": q0, "q1": q1})
        elif structure == "B":
            p *= _cond(joint, "q2", q2, {"q0": q0}) * _cond(joint, "q1", q1, {"q0": q0, "q2": q2})
        elif structure == "C":
            p *= _cond(joint, "q1", q1, {"q0": q0}) * _cond(joint, "q2", q2, {"q0": q0})
        else:
            raise ValueError(f"unknown structure {structure!r}; expected 'A', 'B' or 'C'")
        out[q0, q1, q2] = p
    return JointDist3(out)

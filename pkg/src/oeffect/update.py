"""
Reflection update of a two-question prior and the quantities derived from it.

Answering a question is treated as a small experiment on one's own beliefs:
the joint table is reweighted by the asked question's marginal and
renormalized,

    P'(x, y) = P(Q1=x) P(x, y) / sum_x' P(Q1=x')^2        (Q1 asked)

and symmetrically when Q2 is asked. The normalizer is ``2a^2 - 2a + 1``,
which never drops below 1/2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .prior import TOL, JointDist2, PriorParams, joint_from_params

__all__ = [
    "EFFECT_TOL",
    "QuestionId",
    "Order",
    "SeqVariant",
    "SeqTable",
    "ask_update",
    "second_marginal",
    "order_effect_delta",
    "has_order_effect",
    "sequential_table",
    "discordant_difference",
    "qq_statistic",
]

EFFECT_TOL = 1e-9


class QuestionId(enum.Enum):
    Q1 = "Q1"
    Q2 = "Q2"

    @property
    def other(self) -> "QuestionId":
        return QuestionId.Q2 if self is QuestionId.Q1 else QuestionId.Q1


class Order(enum.Enum):
    Q1_FIRST = "Q1-first"
    Q2_FIRST = "Q2-first"

    @property
    def first(self) -> QuestionId:
        return QuestionId.Q1 if self is Order.Q1_FIRST else QuestionId.Q2

    @property
    def second(self) -> QuestionId:
        return self.first.other


class SeqVariant(enum.Enum):
    """How a sequential (first answer, second answer) table is composed.

    ``JOINT_UPDATE`` relabels the updated joint itself, keeping the
    within-order correlation. ``MARGINAL_PRODUCT`` multiplies the prior
    marginal of the first question with the post-update marginal of the
    second; it is the construction the QQ closed form corresponds to.
    """

    JOINT_UPDATE = "joint-update"
    MARGINAL_PRODUCT = "marginal-product"


@dataclass(frozen=True)
class SeqTable:
    """Probabilities of (first answer, second answer) for one question order."""

    order: Order
    yy: float
    yn: float
    ny: float
    nn: float

    def __post_init__(self):
        object.__setattr__(self, "order", Order(self.order))
        for name in ("yy", "yn", "ny", "nn"):
            value = getattr(self, name)
            if not (-TOL <= value <= 1 + TOL):
                raise ValueError(f"cell {name}={value!r} outside [0, 1]")
        total = sum(self.cells)
        if abs(total - 1) > TOL:
            raise ValueError(f"sequential table sums to {total!r}, not 1")

    @property
    def cells(self):
        return (self.yy, self.yn, self.ny, self.nn)

    @property
    def first_yes(self):
        """P(yes) for the question asked first."""
        return self.yy + self.yn

    @property
    def second_yes(self):
        """P(yes) for the question asked second."""
        return self.yy + self.ny

    @property
    def discordant(self):
        return self.yn + self.ny

    def marginal(self, question: QuestionId):
        """P(yes) for ``question`` in this order, wherever it was asked."""
        return self.first_yes if QuestionId(question) is self.order.first else self.second_yes


def ask_update(joint: JointDist2, asked: QuestionId) -> JointDist2:
    asked = QuestionId(asked)
    if asked is QuestionId.Q1:
        w_yes, w_no = joint.q1, 1 - joint.q1
        weighted = (w_yes * joint.p11, w_yes * joint.p10, w_no * joint.p01, w_no * joint.p00)
    else:
        w_yes, w_no = joint.q2, 1 - joint.q2
        weighted = (w_yes * joint.p11, w_no * joint.p10, w_yes * joint.p01, w_no * joint.p00)
    norm = sum(weighted)
    return JointDist2(*(w / norm for w in weighted))


def second_marginal(params: PriorParams, first: QuestionId):
    """P(yes) on the question asked second, after the first one updated the prior."""
    a, b, c = params.a, params.b, params.c
    if QuestionId(first) is QuestionId.Q2:
        a, b = b, a
    return ((2 * a - 1) * c + (1 - a) * b) / (2 * a * a - 2 * a + 1)


def order_effect_delta(params: PriorParams, second: QuestionId):
    """Shift in P(yes) of ``second`` caused by asking the other question before it.

    Equals ``(2a - 1)(c - ab) / (2a^2 - 2a + 1)`` when Q2 is second, with the
    roles of ``a`` and ``b`` swapped when Q1 is second.
    """
    second = QuestionId(second)
    unconditioned = params.b if second is QuestionId.Q2 else params.a
    return second_marginal(params, second.other) - unconditioned


def has_order_effect(params: PriorParams, tol: float = EFFECT_TOL) -> bool:
    return any(abs(order_effect_delta(params, q)) > tol for q in QuestionId)


def sequential_table(
    params: PriorParams,
    order: Order,
    variant: SeqVariant = SeqVariant.JOINT_UPDATE,
) -> SeqTable:
    order, variant = Order(order), SeqVariant(variant)
    if variant is SeqVariant.JOINT_UPDATE:
        post = ask_update(joint_from_params(params), order.first)
        if order is Order.Q1_FIRST:
            return SeqTable(order, post.p11, post.p10, post.p01, post.p00)
        # Q2 answered first: (Q2, Q1) = (yes, no) is the joint's (no, yes) cell
        return SeqTable(order, post.p11, post.p01, post.p10, post.p00)

    p_first = params.a if order is Order.Q1_FIRST else params.b
    p_second = second_marginal(params, order.first)
    return SeqTable(
        order,
        p_first * p_second,
        p_first * (1 - p_second),
        (1 - p_first) * p_second,
        (1 - p_first) * (1 - p_second),
    )


def discordant_difference(q1_first: SeqTable, q2_first: SeqTable):
    """(yes-no + no-yes under Q2-first) minus the same sum under Q1-first."""
    return q2_first.discordant - q1_first.discordant


def qq_statistic(params: PriorParams):
    """Closed-form QQ value of the update model.

    Zero when ``a == b``, ``a + b == 1`` or ``c == ab``; the sign follows
    ``discordant_difference`` of the two marginal-product tables.
    """
    a, b, c = params.a, params.b, params.c
    num = -2 * (b - a) * (b + a - 1) * (c - a * b)
    return num / ((2 * a * a - 2 * a + 1) * (2 * b * b - 2 * b + 1))

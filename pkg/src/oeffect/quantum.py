"""
Two-dimensional quantum projection model of sequential questions.

The belief state is ``|s> = (cos psi, e^{i phi} sin psi)``. Question k is a
rank-1 projective measurement whose "yes" subspace is spanned by
``(cos theta_k, sin theta_k)``. Answering collapses the state onto the
subspace of the given answer; the collapsed state is then measured by the
next question. Four real parameters in total.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .update import Order, QuestionId, SeqTable, discordant_difference

__all__ = [
    "QuantumParams",
    "first_answer_prob",
    "measure",
    "sequential_probs",
    "qq_check",
    "sequential_cells_array",
]


@dataclass(frozen=True)
class QuantumParams:
    psi: float
    phi: float
    theta1: float
    theta2: float

    def __post_init__(self):
        for name in ("psi", "phi", "theta1", "theta2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def state(self):
        return (complex(math.cos(self.psi)), cmath.exp(1j * self.phi) * math.sin(self.psi))

    def theta(self, question: QuestionId) -> float:
        return self.theta1 if QuestionId(question) is QuestionId.Q1 else self.theta2

    def astuple(self):
        return (self.psi, self.phi, self.theta1, self.theta2)


def _basis(theta, answer_yes):
    if answer_yes:
        return (math.cos(theta), math.sin(theta))
    return (-math.sin(theta), math.cos(theta))


def _amplitude(basis, state):
    return basis[0] * state[0] + basis[1] * state[1]


def measure(state, theta, answer_yes):
    """Probability of ``answer_yes`` and the collapsed (normalized) state.

    The collapsed state is ``None`` when the answer has probability zero.
    """
    u = _basis(theta, answer_yes)
    amp = _amplitude(u, state)
    prob = abs(amp) ** 2
    if prob == 0.0:
        return 0.0, None
    scale = amp / math.sqrt(prob)
    return prob, (u[0] * scale, u[1] * scale)


def first_answer_prob(params: QuantumParams, asked: QuestionId) -> float:
    return measure(params.state, params.theta(asked), True)[0]


def sequential_probs(params: QuantumParams, order: Order) -> SeqTable:
    order = Order(order)
    t_first, t_second = params.theta(order.first), params.theta(order.second)
    cells = []
    for x in (True, False):
        p_x, collapsed = measure(params.state, t_first, x)
        for y in (True, False):
            p_y = measure(collapsed, t_second, y)[0] if collapsed is not None else 0.0
            cells.append(p_x * p_y)
    # cells come out as yy, yn, ny, nn
    return SeqTable(order, *cells)


def qq_check(params: QuantumParams) -> float:
    return discordant_difference(
        sequential_probs(params, Order.Q1_FIRST),
        sequential_probs(params, Order.Q2_FIRST),
    )


def sequential_cells_array(psi, phi, theta1, theta2):
    """Vectorized forward model for grids of parameters.

    Returns an array of shape ``(..., 8)``: the Q1-first cells (yy, yn, ny,
    nn) followed by the Q2-first cells. Uses the closed forms of the two-step
    collapse: after a "yes" the next question agrees with probability
    ``cos^2(theta1 - theta2)``.
    """
    psi, phi, theta1, theta2 = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (psi, phi, theta1, theta2))
    )
    cp, sp = np.cos(psi), np.sin(psi)

    def p_yes(theta):
        re = np.cos(theta) * cp + np.sin(theta) * sp * np.cos(phi)
        im = np.sin(theta) * sp * np.sin(phi)
        return re * re + im * im

    agree = np.cos(theta1 - theta2) ** 2
    flip = 1.0 - agree
    out = []
    for p in (p_yes(theta1), p_yes(theta2)):
        out += [p * agree, p * flip, (1 - p) * flip, (1 - p) * agree]
    return np.stack(out, axis=-1)

"""
Repeated questioning: iterate the reflection update over a question sequence.

Each ask reweights the current joint, so asking Q1 alone drives its marginal
through ``a -> a^2 / (2a^2 - 2a + 1)`` (the odds get squared). Fixed points
are 0, 1/2 and 1; anything else moves away from 1/2 toward certainty.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import cycle, islice
from typing import Optional, Sequence

from .prior import JointDist2, PriorParams, joint_from_params
from .update import QuestionId, ask_update

__all__ = [
    "DEFAULT_EPS",
    "MAX_STEPS",
    "Step",
    "Trajectory",
    "run_sequence",
    "run_until_converged",
    "detect_convergence",
    "replicability_gap",
    "TRAJECTORY_HEADER",
    "write_trajectory_csv",
]

DEFAULT_EPS = 1e-9
MAX_STEPS = 10_000
TRAJECTORY_HEADER = ("step", "asked", "p_yy", "p_yn", "p_ny", "p_nn", "m_q1", "m_q2")


@dataclass(frozen=True)
class Step:
    asked: QuestionId
    joint: JointDist2

    @property
    def m_q1(self):
        return self.joint.q1

    @property
    def m_q2(self):
        return self.joint.q2


@dataclass
class Trajectory:
    """Joint after every ask; ``start`` is the prior before the first ask."""

    start: JointDist2
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, k) -> Step:
        return self.steps[k]

    def marginals(self, question: QuestionId):
        q = QuestionId(question)
        return [s.m_q1 if q is QuestionId.Q1 else s.m_q2 for s in self.steps]


def run_sequence(start: PriorParams, sequence: Sequence[QuestionId]) -> Trajectory:
    if len(sequence) == 0:
        raise ValueError("sequence must contain at least one question")
    joint = joint_from_params(start)
    traj = Trajectory(joint)
    for q in sequence:
        q = QuestionId(q)
        joint = ask_update(joint, q)
        traj.steps.append(Step(q, joint))
    return traj


def detect_convergence(traj: Trajectory, eps: float = DEFAULT_EPS, window: int = 1) -> Optional[int]:
    """First step ``k`` after which ``window`` successive asks each moved the joint by <= ``eps``.

    Movement is total-variation distance between successive joints. With
    the default ``window=1`` this is the first ``k`` whose joint is within
    ``eps`` of step ``k-1``. Pass the pattern length for repeated multi-question
    patterns, where one question can saturate while the other still drifts.
    Returns ``None`` if the trajectory never settles.
    """
    quiet = 0
    for k in range(1, len(traj.steps)):
        if traj.steps[k].joint.tv_distance(traj.steps[k - 1].joint) <= eps:
            quiet += 1
            if quiet >= window:
                return k
        else:
            quiet = 0
    return None


def run_until_converged(
    start: PriorParams,
    pattern: Sequence[QuestionId] = (QuestionId.Q1,),
    eps: float = DEFAULT_EPS,
    max_steps: int = MAX_STEPS,
):
    """Repeat ``pattern`` until a full cycle leaves the joint within ``eps`` per ask.

    Returns ``(trajectory, k)`` with ``k`` as in :func:`detect_convergence`
    using ``window=len(pattern)``, or ``None`` if ``max_steps`` asks were
    not enough.
    """
    window = len(pattern)
    joint = joint_from_params(start)
    traj = Trajectory(joint)
    quiet = 0
    for k, q in enumerate(islice(cycle(pattern), max_steps)):
        q = QuestionId(q)
        nxt = ask_update(joint, q)
        traj.steps.append(Step(q, nxt))
        if k >= 1:
            quiet = quiet + 1 if nxt.tv_distance(joint) <= eps else 0
            if quiet >= window:
                return traj, k
        joint = nxt
    return traj, None


def replicability_gap(start: PriorParams):
    """Effect of an intervening Q2 on the chance of re-answering Q1 "yes".

    Compares P(Q1 = yes) when Q1 is put a second time after [Q1, Q2] (the
    joint going into the final ask of [Q1, Q2, Q1]) with P(Q1 = yes) after
    [Q1] alone. Zero when the prior is independent or certain.
    """
    traj = run_sequence(start, [QuestionId.Q1, QuestionId.Q2, QuestionId.Q1])
    return traj[1].m_q1 - traj[0].m_q1


def write_trajectory_csv(traj: Trajectory, out=None, fmt=repr):
    """Write one row per step; returns the text when ``out`` is ``None``."""
    buf = out if out is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRAJECTORY_HEADER)
    for k, s in enumerate(traj.steps):
        writer.writerow([k, s.asked.value, *(fmt(v) for v in s.joint.cells), fmt(s.m_q1), fmt(s.m_q2)])
    if out is None:
        return buf.getvalue()

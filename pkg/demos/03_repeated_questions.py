"""
Asking the same questions again
===============================

Every ask is another update, so repeated questioning keeps moving beliefs
until they reach a fixed point: 0, 1/2 or 1 for each question.
"""

from oeffect import PriorParams, QuestionId, replicability_gap, run_sequence
from oeffect.dynamics import run_until_converged, write_trajectory_csv

Q1, Q2 = QuestionId.Q1, QuestionId.Q2
prior = PriorParams(0.4, 0.7, 0.2)

print(write_trajectory_csv(run_sequence(prior, [Q1, Q2, Q1, Q2, Q1]), fmt=lambda x: f"{x:.4f}"))
print(f"effect of an intervening Q2 on re-answering Q1: {replicability_gap(prior):+.4f}")

###############################################################################
# Keep alternating until a full Q1, Q2 round changes nothing.

traj, k = run_until_converged(prior, (Q1, Q2))
last = traj[-1]
print(f"settled after {k + 1} asks: P(Q1 yes)={last.m_q1:.6f}, P(Q2 yes)={last.m_q2:.6f}")

for a in (0.3, 0.5, 0.7):
    traj, k = run_until_converged(PriorParams(a, 0.5, a / 2), (Q1,))
    print(f"Q1 alone from a={a}: limit {traj[-1].m_q1:.6f} after {k + 1} asks")

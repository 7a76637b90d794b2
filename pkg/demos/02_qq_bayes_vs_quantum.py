"""
QQ: update model versus quantum projection
==========================================

The QQ value compares the probability of giving different answers to the two
questions across the two orders. A 2-D projection model makes it exactly
zero; the update model only does so on special surfaces.
"""

import numpy as np

from oeffect import Order, PriorParams, QuantumParams, qq_check, qq_statistic, sequential_probs

for abc in [(0.4, 0.7, 0.2), (0.4, 0.4, 0.2), (0.4, 0.6, 0.1), (0.4, 0.7, 0.28)]:
    print(f"update model {abc}: QQ = {qq_statistic(PriorParams(*abc)):+.6f}")

###############################################################################
# Random quantum parameters: order effects everywhere, QQ always zero.

rng = np.random.default_rng(0)
for psi, phi, t1, t2 in rng.uniform(0, np.pi, size=(5, 4)):
    qp = QuantumParams(psi, phi, t1, t2)
    t_12 = sequential_probs(qp, Order.Q1_FIRST)
    t_21 = sequential_probs(qp, Order.Q2_FIRST)
    shift = t_21.second_yes - t_12.first_yes
    print(f"quantum: Q1 shift when asked second {shift:+.4f}, QQ {qq_check(qp):+.1e}")

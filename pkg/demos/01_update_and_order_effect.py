"""
Answering a question updates the prior
======================================

A respondent holds a joint belief about two yes/no questions, set by the
marginals ``a`` (Q1), ``b`` (Q2) and the joint moment ``c``. Answering Q1
reweights that belief, which moves the probability of "yes" on Q2.
"""

from oeffect import PriorParams, QuestionId, ask_update, joint_from_params, order_effect_delta, second_marginal
from oeffect.sweep import sweep_rows

# Clinton at 40%, Gore at 70%, positively related beliefs
prior = PriorParams(a=0.4, b=0.7, c=0.2)
joint = joint_from_params(prior)
print("prior joint (yy, yn, ny, nn):", tuple(round(x, 4) for x in joint.cells))

after_q1 = ask_update(joint, QuestionId.Q1)
print("after reflecting on Q1:     ", tuple(round(x, 4) for x in after_q1.cells))
print(f"P(Q2 yes) asked first  = {prior.b:.4f}")
print(f"P(Q2 yes) asked second = {second_marginal(prior, QuestionId.Q1):.4f}")
print(f"order effect on Q2     = {order_effect_delta(prior, QuestionId.Q2):+.4f}")

###############################################################################
# The effect vanishes when Q1 is a coin flip (a = 1/2) or when the two beliefs
# are independent (c = a*b). A coarse version of the two sweeps:

print("\n  a     b    delta(c=0.2)   delta(c=ab)")
fixed = {(r[0], r[1]): r[4] for r in sweep_rows(0.1, c=0.2)}
indep = {(r[0], r[1]): r[4] for r in sweep_rows(0.1, rule="ab")}
for a in (0.3, 0.4, 0.5, 0.6):
    for b in (0.5, 0.7):
        d = fixed[(a, b)]
        print(f"{a:4.1f}  {b:4.1f}   {'infeasible' if d is None else f'{d:+.5f}':>11}   {indep[(a, b)]:+.1e}")

"""
Three questions and conditional independence
============================================

With a context question Q0 asked first, Q1 and Q2 show no order effect when
they are independent given Q0, even if they are correlated overall.
"""

import numpy as np

from oeffect.bn import JointDist3, check_no_order_effect_conditions, conditional_mutual_dependence, from_conditionals

mixture = from_conditionals(0.5, (0.9, 0.2), (0.8, 0.1))
print("P(Q1, Q2 yes) =", round(mixture.prob(q1=0, q2=0), 4),
      " P(Q1 yes) P(Q2 yes) =", round(mixture.prob(q1=0) * mixture.prob(q2=0), 4))
print(check_no_order_effect_conditions(mixture))

table = np.zeros((2, 2, 2))
table[:, 0, 0] = 0.3  # Q1 = Q2 = yes
table[:, 1, 1] = 0.2  # Q1 = Q2 = no
same = JointDist3(table)
print(check_no_order_effect_conditions(same))
print("max conditional dependence:", conditional_mutual_dependence(same))

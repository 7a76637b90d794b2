"""
Grid sweeps of the closed-form predictions over (a, b).

Each row holds the post-Q1 probability of "yes" on Q2, its shift from the
prior ``b`` and the QQ value. ``c`` is either held fixed or tied to the
independence surface ``c = a*b``. Points where a fixed ``c`` is infeasible are
kept with ``feasible = 0`` and empty value columns.
"""

from __future__ import annotations

import csv
import io
import math

from .prior import PriorParams, frechet_bounds, TOL
from .update import QuestionId, order_effect_delta, qq_statistic, second_marginal

__all__ = ["SWEEP_HEADER", "grid_ticks", "sweep_rows", "emit_sweep"]

SWEEP_HEADER = ("a", "b", "c", "second_marginal", "delta", "qq", "feasible")


def grid_ticks(step):
    """Grid values ``0, step, 2*step, ...`` up to 1, rounded to 12 decimals."""
    if not (0 < step <= 0.5):
        raise ValueError(f"grid step must be in (0, 0.5], got {step!r}")
    n = int(math.floor(1 / step + 1e-9))
    return [round(k * step, 12) for k in range(n + 1)]


def sweep_rows(step, c=None, rule=None):
    """Yield ``(a, b, c, second_marginal, delta, qq, feasible)`` in a-major order.

    Exactly one of ``c`` (a fixed joint moment) or ``rule="ab"`` must be given.
    Infeasible rows carry ``None`` in the value columns.
    """
    if (c is None) == (rule is None):
        raise ValueError("give exactly one of c= or rule='ab'")
    if rule is not None and rule not in ("ab", "c=ab"):
        raise ValueError(f"unknown rule {rule!r}")
    ticks = grid_ticks(step)
    for a in ticks:
        for b in ticks:
            cc = a * b if rule is not None else c
            lo, hi = frechet_bounds(a, b)
            if not (lo - TOL <= cc <= hi + TOL):
                yield (a, b, cc, None, None, None, False)
                continue
            p = PriorParams(a, b, cc)
            yield (
                a, b, cc,
                second_marginal(p, QuestionId.Q1),
                order_effect_delta(p, QuestionId.Q2),
                qq_statistic(p),
                True,
            )


def emit_sweep(step, c=None, rule=None, out=None, fmt=repr):
    """Write the sweep as CSV to ``out``; returns the text when ``out`` is ``None``."""
    buf = out if out is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for *vals, feasible in sweep_rows(step, c=c, rule=rule):
        writer.writerow(["" if v is None else fmt(v) for v in vals] + [int(feasible)])
    if out is None:
        return buf.getvalue()

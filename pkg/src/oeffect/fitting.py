"""
Least-squares fits of the update model and the quantum baseline to
two-order survey tables, plus a side-by-side comparison.

Both fitters use the same derivative-free search: evaluate a coarse grid
(vectorized), keep the best few points, and polish each with shrinking-step
coordinate descent. The result is a pure function of the input; ties are
broken by the smallest parameter tuple.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .prior import TOL, PriorParams
from .quantum import QuantumParams, sequential_cells_array, sequential_probs
from .update import (
    Order,
    QuestionId,
    SeqTable,
    SeqVariant,
    order_effect_delta,
    sequential_table,
)

__all__ = [
    "DegenerateObservationError",
    "ObservedExperiment",
    "FitReport",
    "ComparisonReport",
    "bayesian_cells_array",
    "coordinate_descent",
    "fit_bayesian",
    "fit_quantum",
    "compare_models",
]

BAYES_GRID_STEP = 0.02
QUANTUM_GRID_STEP = math.pi / 24
MIN_STEP = 1e-7
N_STARTS_BAYES = 8
N_STARTS_QUANTUM = 16
PARAM_NAMES_BAYES = ("a", "b", "c")
PARAM_NAMES_QUANTUM = ("psi", "phi", "theta1", "theta2")


class DegenerateObservationError(ValueError):
    """Observed tables have negative cells or do not sum to one."""


@dataclass(frozen=True)
class ObservedExperiment:
    """The two sequential tables of an order-effect survey."""

    q1_first: SeqTable
    q2_first: SeqTable
    n_per_arm: int = 1
    name: str = ""

    def __post_init__(self):
        if self.q1_first.order is not Order.Q1_FIRST or self.q2_first.order is not Order.Q2_FIRST:
            raise DegenerateObservationError("tables must be (Q1-first, Q2-first) in that order")
        if int(self.n_per_arm) < 1:
            raise DegenerateObservationError("n_per_arm must be at least 1")

    @classmethod
    def from_cells(cls, cells_q1_first, cells_q2_first, n_per_arm=1, name=""):
        """Build from raw cell sequences, raising DegenerateObservationError on bad tables."""
        try:
            t1 = SeqTable(Order.Q1_FIRST, *cells_q1_first)
            t2 = SeqTable(Order.Q2_FIRST, *cells_q2_first)
        except ValueError as exc:
            raise DegenerateObservationError(str(exc)) from exc
        return cls(t1, t2, n_per_arm, name)

    @property
    def cells(self) -> np.ndarray:
        return np.array(self.q1_first.cells + self.q2_first.cells, dtype=float)

    def marginals(self):
        """P(yes) for each question in each position."""
        return _marginals_from_cells(self.cells)

    def observed_deltas(self):
        """(shift of Q1 when asked second, shift of Q2 when asked second)."""
        m = self.marginals()
        return m["q1_second"] - m["q1_first"], m["q2_second"] - m["q2_first"]


def _marginals_from_cells(cells):
    yy1, yn1, ny1, _, yy2, yn2, ny2, _ = cells
    return {
        "q1_first": float(yy1 + yn1),
        "q2_second": float(yy1 + ny1),
        "q2_first": float(yy2 + yn2),
        "q1_second": float(yy2 + ny2),
    }


@dataclass
class FitReport:
    model: str
    params: dict
    loss: float
    param_count: int
    residuals: list
    predicted_marginals: dict
    sign_match: bool
    predicted_deltas: tuple = field(default=(0.0, 0.0))
    observed_deltas: tuple = field(default=(0.0, 0.0))
    variant: Optional[str] = None

    def to_dict(self):
        return {
            "model": self.model,
            "params": dict(self.params),
            "loss": self.loss,
            "param_count": self.param_count,
            "residuals": list(self.residuals),
            "predicted_marginals": dict(self.predicted_marginals),
            "sign_match": self.sign_match,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


@dataclass
class ComparisonReport:
    bayesian: FitReport
    quantum: FitReport

    def to_dict(self):
        out = {}
        for rep in (self.bayesian, self.quantum):
            d = rep.to_dict()
            d["loss_per_param"] = rep.loss / rep.param_count
            out[rep.model] = d
        return out

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def bayesian_cells_array(a, b, c, variant=SeqVariant.JOINT_UPDATE):
    """Vectorized update-model forward map, shape ``(..., 8)`` as in ``ObservedExperiment.cells``."""
    a, b, c = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, c)))
    da = 2 * a * a - 2 * a + 1
    db = 2 * b * b - 2 * b + 1
    if SeqVariant(variant) is SeqVariant.JOINT_UPDATE:
        p11, p10, p01, p00 = c, a - c, b - c, 1 - a - b + c
        cols = [
            a * p11 / da, a * p10 / da, (1 - a) * p01 / da, (1 - a) * p00 / da,
            b * p11 / db, b * p01 / db, (1 - b) * p10 / db, (1 - b) * p00 / db,
        ]
    else:
        m2 = ((2 * a - 1) * c + (1 - a) * b) / da
        m1 = ((2 * b - 1) * c + (1 - b) * a) / db
        cols = [
            a * m2, a * (1 - m2), (1 - a) * m2, (1 - a) * (1 - m2),
            b * m1, b * (1 - m1), (1 - b) * m1, (1 - b) * (1 - m1),
        ]
    return np.stack(cols, axis=-1)


def _residual_scale(obs: ObservedExperiment, weighted: bool):
    if not weighted:
        return np.ones(8)
    p = obs.cells
    # floor keeps zero-probability cells from getting infinite weight
    se = np.sqrt(np.maximum(p * (1 - p), 1e-6) / obs.n_per_arm)
    return 1.0 / se


def _sse(pred, target, scale):
    r = (pred - target) * scale
    return np.sum(r * r, axis=-1)


def _explore(loss, x, fx, step, feasible):
    """One coordinate sweep: move each coordinate by +/- step if that helps."""
    x = x.copy()
    for i in range(x.size):
        for sgn in (1.0, -1.0):
            y = x.copy()
            y[i] += sgn * step
            if not feasible(y):
                continue
            fy = loss(y)
            if fy < fx:
                x, fx = y, fy
                break
    return x, fx


def coordinate_descent(
    loss: Callable[[np.ndarray], float],
    x0,
    step: float,
    min_step: float = MIN_STEP,
    feasible: Callable[[np.ndarray], bool] = lambda x: True,
    max_evals: int = 200_000,
):
    """Shrinking-step coordinate search with Hooke-Jeeves pattern moves.

    Sweeps the coordinates with moves of size ``step``; after a successful
    sweep it jumps again by the same displacement (the pattern move) and
    sweeps around the new point. When nothing improves, ``step`` is halved.
    Stops when ``step < min_step`` or after ``max_evals`` loss calls.
    """
    evals = 0

    def counted(x):
        nonlocal evals
        evals += 1
        return loss(x)

    x = np.array(x0, dtype=float)
    fx = counted(x)
    while step >= min_step and evals < max_evals:
        y, fy = _explore(counted, x, fx, step, feasible)
        if fy >= fx:
            step /= 2
            continue
        while evals < max_evals:
            z = y + (y - x)
            x, fx = y, fy
            if not feasible(z):
                break
            y, fy = _explore(counted, z, counted(z), step, feasible)
            if fy >= fx:
                break
    return x, fx


def _search(grid, grid_loss, point_loss, n_starts, step, feasible, wrap=None):
    # ``wrap``: the loss is periodic with this period; search unwrapped, report wrapped
    # lexsort: last key is primary -> loss, then parameters left to right
    keys = [grid[:, j] for j in reversed(range(grid.shape[1]))] + [grid_loss]
    ranked = np.lexsort(keys)
    best = None
    for idx in ranked[:n_starts]:
        x, fx = coordinate_descent(point_loss, grid[idx], step, feasible=feasible)
        if wrap is not None:
            x = np.mod(x, wrap)
        cand = (fx, tuple(x))
        if best is None or cand < best:
            best = cand
    return np.array(best[1]), best[0], float(grid_loss[ranked[0]])


def _bayes_grid(step):
    n = int(round(1 / step))
    ticks = np.arange(n + 1) / n
    a, b, c = (g.ravel() for g in np.meshgrid(ticks, ticks, ticks, indexing="ij"))
    ok = (c >= np.maximum(0, a + b - 1) - TOL) & (c <= np.minimum(a, b) + TOL)
    return np.column_stack([a[ok], b[ok], c[ok]])


def _bayes_feasible(x):
    a, b, c = x
    return 0 <= a <= 1 and 0 <= b <= 1 and max(0.0, a + b - 1) <= c <= min(a, b)


def _sign(x, tol=TOL):
    return 0 if abs(x) <= tol else (1 if x > 0 else -1)


def _signs_match(pred, obs):
    return all(_sign(p) == _sign(o) for p, o in zip(pred, obs))


def fit_bayesian(
    obs: ObservedExperiment,
    variant: SeqVariant = SeqVariant.JOINT_UPDATE,
    weighted: bool = False,
    grid_step: float = BAYES_GRID_STEP,
) -> FitReport:
    """Fit (a, b, c) by least squares over the eight observed cells.

    ``sign_match`` reports whether the fitted prior's order-effect shifts,
    ``(2b-1)(c-ab)/(2b^2-2b+1)`` for Q1 and ``(2a-1)(c-ab)/(2a^2-2a+1)`` for
    Q2, point the same way as the observed second-minus-first shifts.
    """
    variant = SeqVariant(variant)
    target = obs.cells
    scale = _residual_scale(obs, weighted)
    grid = _bayes_grid(grid_step)
    grid_loss = _sse(bayesian_cells_array(grid[:, 0], grid[:, 1], grid[:, 2], variant), target, scale)

    def point_loss(x):
        return float(_sse(bayesian_cells_array(*x, variant), target, scale))

    x, _, _ = _search(grid, grid_loss, point_loss, N_STARTS_BAYES, grid_step, _bayes_feasible)
    params = PriorParams(*(float(v) for v in x))
    tables = (
        sequential_table(params, Order.Q1_FIRST, variant),
        sequential_table(params, Order.Q2_FIRST, variant),
    )
    pred = np.array(tables[0].cells + tables[1].cells)
    residuals = pred - target
    pred_deltas = (
        order_effect_delta(params, QuestionId.Q1),
        order_effect_delta(params, QuestionId.Q2),
    )
    obs_deltas = obs.observed_deltas()
    return FitReport(
        model="bayesian",
        params=dict(zip(PARAM_NAMES_BAYES, params.astuple())),
        loss=float(np.sum(residuals**2)),
        param_count=3,
        residuals=[float(r) for r in residuals],
        predicted_marginals=_marginals_from_cells(pred),
        sign_match=_signs_match(pred_deltas, obs_deltas),
        predicted_deltas=tuple(float(d) for d in pred_deltas),
        observed_deltas=obs_deltas,
        variant=variant.value,
    )


def _quantum_grid(step):
    n = int(round(math.pi / step))
    ticks = np.arange(n) * (math.pi / n)
    return np.column_stack([g.ravel() for g in np.meshgrid(ticks, ticks, ticks, ticks, indexing="ij")])


def fit_quantum(
    obs: ObservedExperiment,
    weighted: bool = False,
    grid_step: float = QUANTUM_GRID_STEP,
) -> FitReport:
    """Fit (psi, phi, theta1, theta2) in [0, pi)^4 by least squares.

    Different angle sets can give identical tables, so only the loss and
    predictions are meaningful, not the individual angles.
    """
    target = obs.cells
    scale = _residual_scale(obs, weighted)
    grid = _quantum_grid(grid_step)
    grid_loss = _sse(sequential_cells_array(*grid.T), target, scale)

    def point_loss(x):
        return float(_sse(sequential_cells_array(*x), target, scale))

    x, _, _ = _search(
        grid, grid_loss, point_loss, N_STARTS_QUANTUM, grid_step,
        feasible=lambda x: True, wrap=math.pi,
    )
    params = QuantumParams(*(float(v) for v in x))
    tables = (
        sequential_probs(params, Order.Q1_FIRST),
        sequential_probs(params, Order.Q2_FIRST),
    )
    pred = np.array(tables[0].cells + tables[1].cells)
    residuals = pred - target
    pm = _marginals_from_cells(pred)
    pred_deltas = (pm["q1_second"] - pm["q1_first"], pm["q2_second"] - pm["q2_first"])
    obs_deltas = obs.observed_deltas()
    return FitReport(
        model="quantum",
        params=dict(zip(PARAM_NAMES_QUANTUM, params.astuple())),
        loss=float(np.sum(residuals**2)),
        param_count=4,
        residuals=[float(r) for r in residuals],
        predicted_marginals=pm,
        sign_match=_signs_match(pred_deltas, obs_deltas),
        predicted_deltas=pred_deltas,
        observed_deltas=obs_deltas,
    )


def compare_models(
    obs: ObservedExperiment,
    variant: SeqVariant = SeqVariant.JOINT_UPDATE,
    weighted: bool = False,
) -> ComparisonReport:
    return ComparisonReport(
        fit_bayesian(obs, variant, weighted=weighted),
        fit_quantum(obs, weighted=weighted),
    )

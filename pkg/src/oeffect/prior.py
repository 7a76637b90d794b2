"""
Two-question joint distributions and the (a, b, c) prior parametrization.

``a`` and ``b`` are the probabilities of answering "yes" to Q1 and Q2, and
``c`` is the joint moment P(Q1=yes, Q2=yes). Given the two marginals and the
joint moment the full 2x2 table is fixed:

    P(yes, yes) = c
    P(yes, no)  = a - c
    P(no, yes)  = b - c
    P(no, no)   = 1 - a - b + c

The arithmetic is written so that ``fractions.Fraction`` inputs stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "TOL",
    "InvalidParamsError",
    "InvalidJointError",
    "JointDist2",
    "PriorParams",
    "frechet_bounds",
    "joint_from_params",
    "params_from_joint",
    "is_independent",
]

TOL = 1e-12


class InvalidParamsError(ValueError):
    """Raised when (a, b, c) cannot be the parameters of any joint table."""


class InvalidJointError(ValueError):
    """Raised when a probability table has out-of-range cells or does not sum to one."""


def _check_prob(name, value):
    if not (-TOL <= value <= 1 + TOL):
        raise InvalidParamsError(f"{name}={value!r} is not a probability")


def frechet_bounds(a, b):
    """Return the feasible interval ``(lo, hi)`` for ``c`` given marginals ``a`` and ``b``."""
    return max(0, a + b - 1), min(a, b)


@dataclass(frozen=True)
class JointDist2:
    """Joint table over two binary questions, cells named (Q1 answer, Q2 answer)."""

    p11: float
    p10: float
    p01: float
    p00: float

    def __post_init__(self):
        cells = self.cells
        for name, value in zip(("p11", "p10", "p01", "p00"), cells):
            if not (-TOL <= value <= 1 + TOL):
                raise InvalidJointError(f"{name}={value!r} outside [0, 1]")
        total = sum(cells)
        if abs(total - 1) > TOL:
            raise InvalidJointError(f"cells sum to {total!r}, not 1")

    @property
    def cells(self):
        return (self.p11, self.p10, self.p01, self.p00)

    @property
    def q1(self):
        """P(Q1 = yes)."""
        return self.p11 + self.p10

    @property
    def q2(self):
        """P(Q2 = yes)."""
        return self.p11 + self.p01

    def tv_distance(self, other: "JointDist2"):
        """Total-variation distance: half the L1 distance between cells."""
        return sum(abs(x - y) for x, y in zip(self.cells, other.cells)) / 2


@dataclass(frozen=True)
class PriorParams:
    """Marginals ``a``, ``b`` and joint moment ``c``; validated against the Fréchet bounds."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        _check_prob("a", self.a)
        _check_prob("b", self.b)
        _check_prob("c", self.c)
        lo, hi = frechet_bounds(self.a, self.b)
        if not (lo - TOL <= self.c <= hi + TOL):
            raise InvalidParamsError(
                f"c={self.c!r} violates the Fréchet bounds [{lo!r}, {hi!r}] "
                f"for a={self.a!r}, b={self.b!r}"
            )

    def astuple(self):
        return (self.a, self.b, self.c)


def _clip(x):
    # absorbs rounding at the Fréchet boundary, e.g. a - c = -1e-17
    if x < 0:
        return type(x)(0)
    if x > 1:
        return type(x)(1)
    return x


def joint_from_params(params: PriorParams) -> JointDist2:
    """Solve the four-cell linear system for the joint table.

    Raises
    ------
    InvalidParamsError
        If ``params`` violates the Fréchet bounds. ``PriorParams`` already
        checks this on construction; the check is repeated for duck-typed input.
    """
    a, b, c = params.a, params.b, params.c
    lo, hi = frechet_bounds(a, b)
    if not (lo - TOL <= c <= hi + TOL):
        raise InvalidParamsError(f"c={c!r} outside Fréchet bounds [{lo!r}, {hi!r}]")
    return JointDist2(_clip(c), _clip(a - c), _clip(b - c), _clip(1 - a - b + c))


def params_from_joint(joint: JointDist2) -> PriorParams:
    return PriorParams(joint.p11 + joint.p10, joint.p11 + joint.p01, joint.p11)


def is_independent(params: PriorParams, tol: float = TOL) -> bool:
    """True when the prior factorizes, ``|c - a*b| <= tol``."""
    return abs(params.c - params.a * params.b) <= tol

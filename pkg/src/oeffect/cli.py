"""Command-line entry point: ``oeffect <subcommand> ...``.

Exit status is 0 on success, 1 when inputs fail validation and 2 on usage
errors. Numbers print with 7 significant digits unless OEFFECT_PRECISION
(3-15) says otherwise.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .dynamics import run_sequence, write_trajectory_csv
from .experiments import NormalizationError, ParseError, load_experiment
from .fitting import DegenerateObservationError, compare_models, fit_bayesian, fit_quantum
from .prior import InvalidJointError, InvalidParamsError, PriorParams
from .quantum import QuantumParams, first_answer_prob, qq_check, sequential_probs
from .sweep import emit_sweep
from .update import (
    Order,
    QuestionId,
    SeqVariant,
    discordant_difference,
    order_effect_delta,
    qq_statistic,
    second_marginal,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2
VALIDATION_ERRORS = (
    InvalidParamsError,
    InvalidJointError,
    ParseError,
    NormalizationError,
    DegenerateObservationError,
)


class UsageError(Exception):
    pass


def _precision():
    raw = os.environ.get("OEFFECT_PRECISION")
    if raw is None:
        return 7
    try:
        digits = int(raw)
    except ValueError:
        raise UsageError(f"OEFFECT_PRECISION must be an integer, got {raw!r}") from None
    if not 3 <= digits <= 15:
        raise UsageError(f"OEFFECT_PRECISION must be between 3 and 15, got {digits}")
    return digits


def _formatter(digits):
    # "+ 0.0" turns -0.0 into 0.0
    return lambda x: f"{x + 0.0:.{digits}g}"


def _round_floats(obj, fmt):
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v, fmt) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, fmt) for v in obj]
    return obj


def _params(args):
    return PriorParams(args.a, args.b, args.c)


def _add_abc(p, required=True):
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=float, required=required)


def cmd_predict(args, fmt):
    p = _params(args)
    rows = [
        ("second_marginal", second_marginal(p, QuestionId.Q1)),
        ("delta", order_effect_delta(p, QuestionId.Q2)),
        ("qq", qq_statistic(p)),
        ("second_marginal_q1", second_marginal(p, QuestionId.Q2)),
        ("delta_q1", order_effect_delta(p, QuestionId.Q1)),
    ]
    for key, value in rows:
        print(f"{key} {fmt(value)}")


def cmd_sweep(args, fmt):
    if (args.c is None) == (args.rule is None):
        raise UsageError("sweep needs exactly one of --c or --rule ab")
    if not 0 < args.step <= 0.5:
        raise UsageError("--step must be in (0, 0.5]")
    if args.output in (None, "-"):
        emit_sweep(args.step, c=args.c, rule=args.rule, out=sys.stdout, fmt=fmt)
    else:
        with open(args.output, "w", newline="") as fh:
            emit_sweep(args.step, c=args.c, rule=args.rule, out=fh, fmt=fmt)


def cmd_qq(args, fmt):
    if args.data is not None:
        obs = load_experiment(args.data)
        print(f"qq_observed {fmt(discordant_difference(obs.q1_first, obs.q2_first))}")
        return
    if None in (args.a, args.b, args.c):
        raise UsageError("qq needs --a --b --c or --data")
    print(f"qq {fmt(qq_statistic(_params(args)))}")


def cmd_fit(args, fmt):
    obs = load_experiment(args.data)
    variant = SeqVariant(args.variant)
    if args.model == "bayesian":
        out = fit_bayesian(obs, variant, weighted=args.weighted).to_dict()
    elif args.model == "quantum":
        out = fit_quantum(obs, weighted=args.weighted).to_dict()
    else:
        out = compare_models(obs, variant, weighted=args.weighted).to_dict()
    print(json.dumps(_round_floats(out, fmt), indent=2))


def cmd_dynamics(args, fmt):
    seq = [QuestionId(q.strip()) for q in args.sequence.split(",") if q.strip()] * args.repeat
    if not seq:
        raise UsageError("--sequence must name at least one question")
    write_trajectory_csv(run_sequence(_params(args), seq), sys.stdout, fmt=fmt)


def cmd_validate(args, fmt):
    obs = load_experiment(args.path)
    m = obs.marginals()
    print(f"ok {obs.name} n_per_arm={obs.n_per_arm}")
    for key in ("q1_first", "q2_second", "q2_first", "q1_second"):
        print(f"{key} {fmt(m[key])}")


def cmd_quantum(args, fmt):
    qp = QuantumParams(args.psi, args.phi, args.theta1, args.theta2)
    print(f"p_q1_yes {fmt(first_answer_prob(qp, QuestionId.Q1))}")
    print(f"p_q2_yes {fmt(first_answer_prob(qp, QuestionId.Q2))}")
    for order in Order:
        t = sequential_probs(qp, order)
        cells = " ".join(f"{k}={fmt(v)}" for k, v in zip(("yy", "yn", "ny", "nn"), t.cells))
        print(f"{order.value} {cells}")
    print(f"qq {fmt(qq_check(qp))}")


def build_parser():
    parser = argparse.ArgumentParser(prog="oeffect", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log renormalizations etc.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", parents=[common], help="second-question marginal, order effect and QQ for (a, b, c)")
    _add_abc(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("sweep", parents=[common], help="CSV sweep over an (a, b) grid")
    p.add_argument("--c", type=float, help="fixed joint moment")
    p.add_argument("--rule", choices=["ab"], help="tie c to a*b")
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--output", "-o", help="file to write (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("qq", parents=[common], help="QQ value for (a, b, c) or the observed QQ of a dataset")
    _add_abc(p, required=False)
    p.add_argument("--data", help="experiment file or embedded name")
    p.set_defaults(func=cmd_qq)

    p = sub.add_parser("fit", parents=[common], help="fit the models to an experiment")
    p.add_argument("--data", required=True, help="experiment file or embedded name (e.g. clinton-gore)")
    p.add_argument("--model", choices=["bayesian", "quantum", "both"], default="both")
    p.add_argument("--variant", choices=[v.value for v in SeqVariant], default=SeqVariant.JOINT_UPDATE.value)
    p.add_argument("--weighted", action="store_true", help="scale residuals by binomial standard errors")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("dynamics", parents=[common], help="trajectory CSV for a question sequence")
    _add_abc(p)
    p.add_argument("--sequence", default="Q1,Q2,Q1", help="comma-separated, e.g. Q1,Q2,Q1")
    p.add_argument("--repeat", type=int, default=1, help="repeat the sequence this many times")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("validate", parents=[common], help="check an experiment file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("quantum", parents=[common], help="sequential probabilities of the projection model")
    for name in ("psi", "phi", "theta1", "theta2"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.set_defaults(func=cmd_quantum)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        fmt = _formatter(_precision())
        args.func(args, fmt)
    except UsageError as exc:
        print(f"oeffect {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VALIDATION_ERRORS as exc:
        print(f"oeffect {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        # e.g. an unknown question label in --sequence
        print(f"oeffect {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

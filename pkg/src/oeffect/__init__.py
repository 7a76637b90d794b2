"""Bayesian reflection-update model of question order effects, with a 2-D quantum baseline."""

__version__ = "0.1.0"

from .prior import (
    InvalidJointError,
    InvalidParamsError,
    JointDist2,
    PriorParams,
    frechet_bounds,
    is_independent,
    joint_from_params,
    params_from_joint,
)
from .update import (
    Order,
    QuestionId,
    SeqTable,
    SeqVariant,
    ask_update,
    discordant_difference,
    has_order_effect,
    order_effect_delta,
    qq_statistic,
    second_marginal,
    sequential_table,
)
from .bn import JointDist3, check_no_order_effect_conditions, conditional_mutual_dependence
from .quantum import QuantumParams, first_answer_prob, qq_check, sequential_probs
from .dynamics import Trajectory, detect_convergence, replicability_gap, run_sequence, run_until_converged
from .fitting import ObservedExperiment, FitReport, compare_models, fit_bayesian, fit_quantum
from .experiments import load_experiment, write_experiment
from .sweep import emit_sweep, sweep_rows

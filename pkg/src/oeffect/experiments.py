"""
Reading and writing experiment files.

An experiment file is JSON with labelled cells so the two orders can never
be transposed by accident::

    {
      "name": "...",
      "questions": ["label of Q1", "label of Q2"],
      "n_per_arm": 501,
      "order1": {"order": "Q1-first", "cells": {"yy": ..., "yn": ..., "ny": ..., "nn": ...}},
      "order2": {"order": "Q2-first", "cells": {...}}
    }

Cells are (first-asked answer, second-asked answer). Tables whose sum is off
by more than 1e-12 but at most 1e-3 (rounded published data) are rescaled
to sum to one and the adjustment is logged.
"""

from __future__ import annotations

import json
import logging
import math
from importlib import resources
from pathlib import Path

from .fitting import ObservedExperiment
from .prior import TOL
from .update import Order, SeqTable

__all__ = [
    "ParseError",
    "NormalizationError",
    "EMBEDDED",
    "load_experiment",
    "experiment_to_dict",
    "write_experiment",
]

logger = logging.getLogger(__name__)

EMBEDDED = {"clinton-gore": "clinton_gore.json"}
NORMALIZATION_SLACK = 1e-3
CELL_KEYS = ("yy", "yn", "ny", "nn")


class ParseError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


def _read_source(source):
    if isinstance(source, str) and source in EMBEDDED:
        text = resources.files("oeffect").joinpath("data", EMBEDDED[source]).read_text()
        return text, source
    path = Path(source)
    try:
        return path.read_text(), str(path)
    except OSError as exc:
        raise ParseError(f"cannot read {source!r}: {exc}") from exc


def _table(raw, key, expected, origin):
    try:
        block = raw[key]
        order = Order(block.get("order", expected.value))
        cells = [float(block["cells"][k]) for k in CELL_KEYS]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{origin}: malformed {key!r}: {exc}") from exc
    if order is not expected:
        raise ParseError(f"{origin}: {key!r} must have order {expected.value!r}, got {order.value!r}")
    if any(not math.isfinite(v) or v < 0 for v in cells):
        raise NormalizationError(f"{origin}: {key!r} has negative or non-finite cells {cells}")
    total = sum(cells)
    if abs(total - 1) > NORMALIZATION_SLACK:
        raise NormalizationError(f"{origin}: {key!r} cells sum to {total!r}")
    if abs(total - 1) > TOL:
        logger.info("%s: %s cells summed to %r; rescaled to 1", origin, key, total)
        cells = [v / total for v in cells]
    return SeqTable(order, *cells)


def load_experiment(source) -> ObservedExperiment:
    """Load an experiment from a JSON path or an embedded fixture name.

    Raises
    ------
    ParseError
        Unreadable file, invalid JSON, or missing fields.
    NormalizationError
        Negative cells, or a table whose sum is more than 1e-3 away from 1.
    """
    text, origin = _read_source(source)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{origin}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{origin}: top level must be an object")
    t1 = _table(raw, "order1", Order.Q1_FIRST, origin)
    t2 = _table(raw, "order2", Order.Q2_FIRST, origin)
    try:
        n = int(raw.get("n_per_arm", 1))
        return ObservedExperiment(t1, t2, n, str(raw.get("name", Path(origin).stem)))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{origin}: {exc}") from exc


def experiment_to_dict(obs: ObservedExperiment, questions=("Q1", "Q2")):
    def block(t: SeqTable):
        return {"order": t.order.value, "cells": dict(zip(CELL_KEYS, t.cells))}

    return {
        "name": obs.name,
        "questions": list(questions),
        "n_per_arm": obs.n_per_arm,
        "order1": block(obs.q1_first),
        "order2": block(obs.q2_first),
    }


def write_experiment(obs: ObservedExperiment, path, questions=("Q1", "Q2")):
    Path(path).write_text(json.dumps(experiment_to_dict(obs, questions), indent=2) + "\n")

"""Bounds, topology and exact solvability checks for k-set agreement.

Reports come back as plain dictionaries with the same fields the
``ksetlab`` command-line tool prints.
"""

from __future__ import annotations

import json
from typing import Sequence

from . import _kset
from ._kset import (
    BudgetExceeded,
    ConsistencyViolation,
    Digraph,
    DomainError,
    InvalidInput,
    Model,
    cov,
    dom,
    edom,
    edom_over,
    max_cov,
    path_product,
    product_set,
    uninterpreted_homology,
    uninterpreted_nerve_is_full,
)

__all__ = [
    "BudgetExceeded",
    "ConsistencyViolation",
    "Digraph",
    "DomainError",
    "InvalidInput",
    "Model",
    "audit",
    "bounds",
    "cov",
    "covering_sequence",
    "dom",
    "edom",
    "edom_over",
    "max_cov",
    "metrics",
    "path_product",
    "product_set",
    "reachability",
    "run_cli",
    "simulate",
    "solve",
    "star_family",
    "uninterpreted_homology",
    "uninterpreted_nerve_is_full",
]


def metrics(graphs: Sequence[Digraph], choice: str = "multiset") -> dict:
    return json.loads(_kset.metrics_json(list(graphs), choice))


def covering_sequence(graphs: Sequence[Digraph], i: int, max_len: int) -> dict:
    return json.loads(_kset.covering_sequence_json(list(graphs), i, max_len))


def bounds(model: Model, rounds: int = 1, choice: str = "multiset") -> dict:
    return json.loads(_kset.bounds_json(model, rounds, choice))


def star_family(n: int, s: int) -> dict:
    return json.loads(_kset.star_family_json(n, s))


def solve(model: Model, rounds: int, k: int, values: int, replay: bool = False) -> dict:
    return json.loads(_kset.solve_json(model, rounds, k, values, replay))


def audit(model: Model, rounds: int = 1) -> dict:
    return json.loads(_kset.audit_json(model, rounds))


def simulate(model: Model, rounds: int, fixed: Sequence[int] = ()) -> dict:
    return json.loads(_kset.simulate_json(model, rounds, list(fixed)))


def reachability(base: Sequence[Digraph], target: Digraph) -> dict:
    return json.loads(_kset.reachability_json(list(base), target))


def run_cli(*args: str) -> tuple[int, str, str]:
    """Runs the command-line tool in-process; returns (exit code, stdout, stderr)."""
    return _kset.run_cli(list(args))

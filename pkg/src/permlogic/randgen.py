"""Seeded random formulas and sentences for round-trip and sampling suites.

Generation is deterministic given the Random instance, respects a quantifier
budget (so qdepth never exceeds it), and only builds atoms over variables in
scope, so requesting a sentence really yields one.
"""
from __future__ import annotations

import random
from typing import Sequence

from .logic import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    LtP,
    LtV,
    Not,
    OB,
    Or,
    Rel,
    TO,
    Var,
)

_POOL = ("v0", "v1", "v2", "v3")


def _atom(rng: random.Random, scope: Sequence[Var], signature: str) -> Formula:
    kinds = (LtP, LtV, Eq) if signature == TO else (Rel, Eq)
    cls = rng.choice(kinds)
    return cls(rng.choice(scope), rng.choice(scope))


def random_formula(
    rng: random.Random,
    signature: str = TO,
    quant_budget: int = 2,
    depth: int = 4,
    scope: Sequence[Var] = (),
) -> Formula:
    """A random formula with qdepth at most quant_budget whose free
    variables are drawn from `scope`."""
    scope = tuple(scope)
    if depth <= 0:
        if scope:
            return _atom(rng, scope, signature)
        v = Var(rng.choice(_POOL))
        return Exists(v, _atom(rng, (v,), signature))
    choices = ["not", "and", "or", "implies", "iff"]
    if scope:
        choices += ["atom"] * 4
    if quant_budget > 0:
        choices += ["exists", "forall"] * 2
    kind = rng.choice(choices)
    if kind == "atom":
        return _atom(rng, scope, signature)
    if kind in ("exists", "forall"):
        v = Var(rng.choice(_POOL))
        body = random_formula(rng, signature, quant_budget - 1, depth - 1, scope + (v,))
        return Exists(v, body) if kind == "exists" else Forall(v, body)
    if kind == "not":
        return Not(random_formula(rng, signature, quant_budget, depth - 1, scope))
    left = random_formula(rng, signature, quant_budget, depth - 1, scope)
    right = random_formula(rng, signature, quant_budget, depth - 1, scope)
    cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[kind]
    return cls(left, right)


def random_sentence(
    rng: random.Random, signature: str = TO, quant_budget: int = 2, depth: int = 4
) -> Formula:
    """A random sentence (no free variables) of qdepth at most quant_budget
    (which must be positive)."""
    if quant_budget < 1:
        raise ValueError("sentences need at least one quantifier")
    return random_formula(rng, signature, quant_budget, depth, scope=())

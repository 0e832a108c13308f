"""Order-signature definitions of the three sorting operators (stack,
bubble, queue-and-bypass) and the preimage pipeline that turns a sentence
about sorted output into a sentence about sortable input.

Each operator is given as a binary template defining the operator's output
positional order x <_op(P) y on the input permutation; substituting the
template for every <P atom of a sentence phi produces a sentence holding on
sigma exactly when phi holds on op(sigma).

Composition order: compile_sortable([op1, op2]) describes the permutations
sigma with op2(op1(sigma)) equal to the identity, i.e. the list is applied
left to right, so preimages fold right to left over the identity sentence.
"""
from __future__ import annotations

from enum import Enum
from typing import Optional, Sequence

from .logic import (
    And,
    BinaryTemplate,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    LtP,
    LtV,
    Not,
    Or,
    Var,
    and_all,
    or_all,
    substitute_ltp,
)
from .evaluate import CompiledFormula
from .perms import Permutation, bubble_sort, queue_bypass_sort, stack_sort


class SortOp(Enum):
    STACK = "stack"
    BUBBLE = "bubble"
    QUEUE = "queue"

    @classmethod
    def parse(cls, text: str) -> "SortOp":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown sorting operator {text!r}") from None


SIMULATORS = {
    SortOp.STACK: stack_sort,
    SortOp.BUBBLE: bubble_sort,
    SortOp.QUEUE: queue_bypass_sort,
}


def apply_op(op: SortOp, sigma: Permutation) -> Permutation:
    return SIMULATORS[op](sigma)


def apply_ops(ops: Sequence[SortOp], sigma: Permutation) -> Permutation:
    for op in ops:
        sigma = apply_op(op, sigma)
    return sigma


def _leq_p(a: Var, b: Var) -> Formula:
    return Or(LtP(a, b), Eq(a, b))


def _stack_formula(x: Var, y: Var) -> Formula:
    z = Var("z")
    forward = And(
        LtP(x, y),
        Or(LtV(x, y), Exists(z, and_all([LtP(x, z), LtP(z, y), LtV(x, z)]))),
    )
    backward = and_all(
        [LtP(y, x), LtV(x, y), Not(Exists(z, and_all([LtP(y, z), LtP(z, x), LtV(y, z)])))]
    )
    return Or(forward, backward)


def _bubble_formula(x: Var, y: Var) -> Formula:
    z = Var("z")
    forward = And(LtP(x, y), Exists(z, And(_leq_p(z, y), LtV(x, z))))
    backward = And(LtP(y, x), Not(Exists(z, And(_leq_p(z, x), LtV(y, z)))))
    return Or(forward, backward)


def _pat12(a: Var, b: Var) -> Formula:
    return And(LtP(a, b), LtV(a, b))


def _pat21(a: Var, b: Var) -> Formula:
    return And(LtP(a, b), LtV(b, a))


def _leq_v(a: Var, b: Var) -> Formula:
    return Or(LtV(a, b), Eq(a, b))


def _queue_formula(x: Var, y: Var) -> Formula:
    # out(a, b): a never entered the queue (w = a), or some later non-maximum
    # w arriving by b released it.  The release needs a <=_V w, and the clause
    # only applies when a is positionally before b; both conditions are forced
    # by the operational rules and keep the relation a strict order.
    z, w = Var("z"), Var("w")

    def out(a: Var, b: Var) -> Formula:
        return Exists(
            z, Exists(w, and_all([_pat21(z, w), _leq_p(a, w), _leq_p(w, b), _leq_v(a, w)]))
        )

    ltr_max_y = Not(Exists(z, _pat21(z, y)))
    return or_all(
        [
            _pat12(x, y),
            And(LtP(x, y), out(x, y)),
            and_all([ltr_max_y, Not(out(y, x)), _pat21(y, x)]),
        ]
    )


def relation_formula(op: SortOp) -> BinaryTemplate:
    """The two-free-variable formula defining x <_op(P) y, i.e. x before y
    in the operator's output."""
    x, y = Var("x"), Var("y")
    builders = {
        SortOp.STACK: _stack_formula,
        SortOp.BUBBLE: _bubble_formula,
        SortOp.QUEUE: _queue_formula,
    }
    return BinaryTemplate(builders[op](x, y), x, y)


def identity_sentence() -> Formula:
    """The sentence whose models are the increasing permutations."""
    x, y = Var("x"), Var("y")
    return Forall(x, Forall(y, Iff(LtP(x, y), LtV(x, y))))


def compile_preimage(op: SortOp, phi: Formula) -> Formula:
    """Sentence holding on sigma exactly when phi holds on op(sigma)."""
    return substitute_ltp(phi, relation_formula(op))


def compile_sortable(ops: Sequence[SortOp]) -> Formula:
    """Sentence for {sigma : ops[-1](... ops[0](sigma) ...) = identity}."""
    if not ops:
        raise ValueError("at least one sorting operator is required")
    phi = identity_sentence()
    for op in reversed(ops):
        phi = compile_preimage(op, phi)
    return phi


def relation_order(sigma: Permutation, op: SortOp) -> Optional[Permutation]:
    """Sort sigma's points by the relation the formula defines and read off
    the induced word, or None when the relation is not a strict total order.

    For every operator this must reproduce the operational simulator; the
    check is the backbone of the coherence suite.
    """
    template = relation_formula(op)
    compiled = CompiledFormula(template.formula, (template.left, template.right))
    pts = [(p, v) for p, v in sigma.points]
    n = len(pts)
    less = {}
    for a in pts:
        for b in pts:
            less[a, b] = compiled.run(sigma, (a, b))
    for a in pts:
        if less[a, a]:
            return None
    for a in pts:
        for b in pts:
            if a != b and less[a, b] == less[b, a]:
                return None
    # successor counts must induce a consistent linear order
    ranked = sorted(pts, key=lambda a: sum(1 for b in pts if less[b, a]))
    for i in range(n):
        for j in range(i + 1, n):
            if not less[ranked[i], ranked[j]]:
                return None
    return Permutation(tuple(p[1] for p in ranked))

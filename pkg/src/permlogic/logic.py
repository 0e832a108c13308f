"""First-order formula trees over the two permutation signatures.

The order signature TO has atoms x <P y (position), x <V y (value) and
x = y; the bijection signature OB has x R y and x = y.  A formula may use
atoms of one signature only; mixing is rejected when the node is built.
Formulas with equality atoms alone fit either signature (their signature
is None).

Nodes are frozen dataclasses, so formulas are immutable, hashable and
compare structurally.  Sharing subtrees between formulas is safe and the
evaluator exploits it.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import BadTemplate, MixedSignature, SignatureMismatch

TO = "TO"
OB = "OB"


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable names must be nonempty")

    def __repr__(self):
        return f"Var({self.name!r})"


class Formula:
    """Common base; concrete nodes define `sig` (TO, OB or None)."""

    __slots__ = ()


def _join_sig(a: Optional[str], b: Optional[str]) -> Optional[str]:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise MixedSignature("formula mixes <P/<V atoms with R atoms")


@dataclass(frozen=True)
class Eq(Formula):
    left: Var
    right: Var
    sig: Optional[str] = field(default=None, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class LtP(Formula):
    left: Var
    right: Var
    sig: Optional[str] = field(default=TO, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class LtV(Formula):
    left: Var
    right: Var
    sig: Optional[str] = field(default=TO, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class Rel(Formula):
    left: Var
    right: Var
    sig: Optional[str] = field(default=OB, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class Not(Formula):
    child: Formula
    sig: Optional[str] = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "sig", self.child.sig)


class _Binary(Formula):
    __slots__ = ()

    def __post_init__(self):
        object.__setattr__(self, "sig", _join_sig(self.left.sig, self.right.sig))


@dataclass(frozen=True)
class And(_Binary):
    left: Formula
    right: Formula
    sig: Optional[str] = field(default=None, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class Or(_Binary):
    left: Formula
    right: Formula
    sig: Optional[str] = field(default=None, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class Implies(_Binary):
    left: Formula
    right: Formula
    sig: Optional[str] = field(default=None, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class Iff(_Binary):
    left: Formula
    right: Formula
    sig: Optional[str] = field(default=None, init=False, compare=False, repr=False)


class _Quantified(Formula):
    __slots__ = ()

    def __post_init__(self):
        object.__setattr__(self, "sig", self.body.sig)


@dataclass(frozen=True)
class Exists(_Quantified):
    var: Var
    body: Formula
    sig: Optional[str] = field(default=None, init=False, compare=False, repr=False)


@dataclass(frozen=True)
class Forall(_Quantified):
    var: Var
    body: Formula
    sig: Optional[str] = field(default=None, init=False, compare=False, repr=False)


ATOMS = (Eq, LtP, LtV, Rel)
BINARIES = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, Forall)


def signature_of(phi: Formula) -> Optional[str]:
    """TO, OB, or None for formulas built from equality atoms alone."""
    return phi.sig


def qdepth(phi: Formula) -> int:
    """Quantifier depth: atoms 0, negation preserves, binaries take the max,
    each quantifier adds one.

    >>> x, y = Var("x"), Var("y")
    >>> qdepth(Exists(x, Exists(y, And(LtP(x, y), LtV(y, x)))))
    2
    """
    if isinstance(phi, ATOMS):
        return 0
    if isinstance(phi, Not):
        return qdepth(phi.child)
    if isinstance(phi, BINARIES):
        return max(qdepth(phi.left), qdepth(phi.right))
    return 1 + qdepth(phi.body)


def free_vars(phi: Formula) -> frozenset[Var]:
    """The free variables of phi; empty for sentences."""
    if isinstance(phi, ATOMS):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Not):
        return free_vars(phi.child)
    if isinstance(phi, BINARIES):
        return free_vars(phi.left) | free_vars(phi.right)
    return free_vars(phi.body) - {phi.var}


def is_sentence(phi: Formula) -> bool:
    return not free_vars(phi)


def fresh_var(avoid: Iterable[Var], base: str = "y") -> Var:
    """A variable named base1, base2, ... that is not in avoid; deterministic."""
    taken = {v.name for v in avoid}
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return Var(f"{base}{i}")


def and_all(parts: Sequence[Formula], empty: Optional[Formula] = None) -> Formula:
    """Left-associated conjunction; `empty` stands in for zero parts."""
    if not parts:
        if empty is None:
            raise ValueError("empty conjunction with no stand-in")
        return empty
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def or_all(parts: Sequence[Formula], empty: Optional[Formula] = None) -> Formula:
    if not parts:
        if empty is None:
            raise ValueError("empty disjunction with no stand-in")
        return empty
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def exists_many(vs: Sequence[Var], body: Formula) -> Formula:
    for v in reversed(vs):
        body = Exists(v, body)
    return body


def forall_many(vs: Sequence[Var], body: Formula) -> Formula:
    for v in reversed(vs):
        body = Forall(v, body)
    return body


def ne(u: Var, v: Var) -> Formula:
    return Not(Eq(u, v))


def pairwise_distinct(vs: Sequence[Var]) -> list[Formula]:
    return [ne(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]


def count_exactly(i: int, v: Var, body: Formula) -> Formula:
    """A formula asserting that exactly i elements x satisfy body(x).

    Built as E y1..yi (pairwise distinct) & A v (body <-> (v=y1 | ... | v=yi));
    for i = 0 it is A v !body.  The witnesses y1.. are fresh with respect to
    body's free variables.

    >>> x = Var("x")
    >>> qdepth(count_exactly(2, x, LtP(x, x)))
    3
    """
    if i < 0:
        raise ValueError("count must be nonnegative")
    if i == 0:
        return Forall(v, Not(body))
    avoid = set(free_vars(body)) | {v}
    ys = []
    for _ in range(i):
        y = fresh_var(avoid)
        ys.append(y)
        avoid.add(y)
    membership = or_all([Eq(v, y) for y in ys])
    inner = Forall(v, Iff(body, membership))
    distinct = pairwise_distinct(ys)
    return exists_many(ys, and_all(distinct + [inner]))


class BinaryTemplate(NamedTuple):
    """A formula together with the ordered pair of its designated free
    variables; substitution binds them positionally."""

    formula: Formula
    left: Var
    right: Var


_RESERVED = re.compile(r"_t(\d+)$")


def _max_reserved_index(phi: Formula) -> int:
    worst = -1
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, ATOMS):
            names = (node.left.name, node.right.name)
        elif isinstance(node, Not):
            stack.append(node.child)
            continue
        elif isinstance(node, BINARIES):
            stack.extend((node.left, node.right))
            continue
        else:
            names = (node.var.name,)
            stack.append(node.body)
        for name in names:
            m = _RESERVED.match(name)
            if m:
                worst = max(worst, int(m.group(1)))
    return worst


def substitute_ltp(phi: Formula, template: BinaryTemplate) -> Formula:
    """Replace every positional-order atom u <P v of phi by the template
    formula with its designated variables bound to (u, v).

    Bound variables of the template are renamed to reserved names _t0, _t1,
    ... at each insertion point, so no capture can occur; <V and = atoms are
    untouched.
    """
    psi, dx, dy = template
    if phi.sig == OB or psi.sig == OB:
        raise SignatureMismatch("substitution is defined on the order signature")
    if dx == dy:
        raise BadTemplate("designated variables must be distinct")
    extra = free_vars(psi) - {dx, dy}
    if extra:
        raise BadTemplate(f"template has undesignated free variables {sorted(v.name for v in extra)}")

    next_index = max(_max_reserved_index(phi), _max_reserved_index(psi)) + 1

    def instantiate(node: Formula, env: dict[Var, Var]) -> Formula:
        nonlocal next_index
        if isinstance(node, ATOMS):
            return type(node)(env.get(node.left, node.left), env.get(node.right, node.right))
        if isinstance(node, Not):
            return Not(instantiate(node.child, env))
        if isinstance(node, BINARIES):
            return type(node)(instantiate(node.left, env), instantiate(node.right, env))
        fresh = Var(f"_t{next_index}")
        next_index += 1
        inner = dict(env)
        inner[node.var] = fresh
        return type(node)(fresh, instantiate(node.body, inner))

    def walk(node: Formula) -> Formula:
        if isinstance(node, LtP):
            return instantiate(psi, {dx: node.left, dy: node.right})
        if isinstance(node, ATOMS):
            return node
        if isinstance(node, Not):
            return Not(walk(node.child))
        if isinstance(node, BINARIES):
            return type(node)(walk(node.left), walk(node.right))
        return type(node)(node.var, walk(node.body))

    return walk(phi)

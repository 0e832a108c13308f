"""Formulas about the cycle structure of permutations.

Bijection-signature sentences (k-cycles, exact and padded cycle type) come
straight from chaining the R relation.  Order-signature sentences for the
same sets go through characteristic sentences (exact type) or the
three-property encoding of "type lambda plus fixed points": a witness tuple
X carrying a pattern of cycle-type lambda, position and value orders
coinciding outside X, and every outside point seeing as many X-points below
it in value as in position.

Bounded-count formulas express "these points form a fixed point /
transposition / stable occurrence" inside a permutation class whose
obstruction parameters bound the relevant cell counts; outside such a class
they may disagree with the combinatorial truth, which is the point of the
construction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import SizeCapExceeded
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
    Or,
    Rel,
    Var,
    and_all,
    count_exactly,
    exists_many,
    ne,
    or_all,
    pairwise_distinct,
)
from .marginals import enumerate_balanced, nontrivial_cycles
from .patterns import _cell_bounds, classical_on, default_vars
from .perms import Partition, Permutation, cycle_type, enumerate_sn, pattern_of

CYCLE_TYPE_CAP = 6


# -- combinatorial oracles ----------------------------------------------------


def perms_of_cycle_type(lam: Partition) -> list[Permutation]:
    """All permutations of size |lambda| with cycle type lambda, word order."""
    return [s for s in enumerate_sn(lam.size) if cycle_type(s) == lam]


def has_padded_cycle_type(sigma: Permutation, lam: Partition) -> bool:
    """True when cycle_type(sigma) is lambda plus some number of extra
    fixed points."""
    from collections import Counter

    have = Counter(cycle_type(sigma).parts)
    want = Counter(lam.parts)
    if have[1] < want[1]:
        return False
    return all(have[p] == want[p] for p in set(have) | set(want) if p != 1)


def fixed_points(sigma: Permutation) -> list[int]:
    return [i for i in range(1, len(sigma) + 1) if sigma(i) == i]


def transpositions(sigma: Permutation) -> list[tuple[int, int]]:
    """The 2-cycles of sigma as position pairs (i, j) with i < j."""
    return [
        (i, sigma(i))
        for i in range(1, len(sigma) + 1)
        if sigma(i) > i and sigma(sigma(i)) == i
    ]


def padded_witness_oracle(sigma: Permutation, lam: Partition) -> bool:
    """Direct set search for the three-property characterization: a witness
    X of size |lambda| whose pattern has cycle-type lambda, with position
    and value orders agreeing outside X and balanced X-counts below every
    outside point.  Independent of the compiled formula."""
    n = len(sigma)
    q = lam.size
    word = sigma.word
    for subset in itertools.combinations(range(1, n + 1), q):
        if cycle_type(pattern_of(sigma, subset)) != lam:
            continue
        inside = set(subset)
        outside = [p for p in range(1, n + 1) if p not in inside]
        vals = {p: word[p - 1] for p in range(1, n + 1)}
        ok = all(
            (vals[a] < vals[b]) == (a < b)
            for a, b in itertools.combinations(outside, 2)
        )
        if not ok:
            continue
        if all(
            sum(1 for x in subset if x < y) == sum(1 for x in subset if vals[x] < vals[y])
            for y in outside
        ):
            return True
    return False


# -- bijection-signature sentences --------------------------------------------


def _cycle_atoms(vs: Sequence[Var], parts: Sequence[int]) -> list[Formula]:
    atoms: list[Formula] = []
    start = 0
    for part in parts:
        group = vs[start : start + part]
        start += part
        if part == 1:
            atoms.append(Rel(group[0], group[0]))
        else:
            atoms.extend(Rel(group[i], group[i + 1]) for i in range(part - 1))
            atoms.append(Rel(group[-1], group[0]))
    return atoms


def toob_has_kcycle(k: int) -> Formula:
    """Sentence: the bijection has a cycle of size exactly k.

    >>> from .parser import print_formula
    >>> print_formula(toob_has_kcycle(1))
    'E x . x R x'
    """
    if k < 1:
        raise ValueError("cycle size must be positive")
    vs = default_vars(k)
    body = and_all(pairwise_distinct(list(vs)) + _cycle_atoms(vs, [k]))
    return exists_many(vs, body)


def _numbered_vars(q: int) -> list[Var]:
    return [Var(f"x{i}") for i in range(1, q + 1)]


def toob_cycle_type(lam: Partition) -> Formula:
    """Sentence whose models are exactly the permutations of cycle type
    lambda (the total size is pinned by the closure clause)."""
    q = lam.size
    y = Var("y")
    if q == 0:
        return Not(Exists(y, Eq(y, y)))
    vs = _numbered_vars(q)
    closure = Forall(y, or_all([Eq(y, v) for v in vs]))
    body = and_all(pairwise_distinct(vs) + _cycle_atoms(vs, lam.parts) + [closure])
    return exists_many(vs, body)


def toob_cycle_type_padded(lam: Partition) -> Formula:
    """Sentence for cycle type lambda plus any number of extra fixed points:
    every element outside the witness tuple satisfies y R y."""
    q = lam.size
    y = Var("y")
    if q == 0:
        return Forall(y, Rel(y, y))
    vs = _numbered_vars(q)
    closure = Forall(y, or_all([Eq(y, v) for v in vs] + [Rel(y, y)]))
    body = and_all(pairwise_distinct(vs) + _cycle_atoms(vs, lam.parts) + [closure])
    return exists_many(vs, body)


# -- order-signature sentences -------------------------------------------------


def toto_characteristic_sentence(sigma: Permutation) -> Formula:
    """Order-signature sentence whose unique model is sigma."""
    n = len(sigma)
    y = Var("y")
    if n == 0:
        return Not(Exists(y, Eq(y, y)))
    vs = _numbered_vars(n)
    closure = Forall(y, or_all([Eq(y, v) for v in vs]))
    parts = ([classical_on(sigma, vs)] if n > 1 else []) + [closure]
    return exists_many(vs, and_all(parts))


def toto_cycle_type(lam: Partition, cap: int = CYCLE_TYPE_CAP) -> Formula:
    """Order-signature sentence for exact cycle type lambda: the disjunction
    of the characteristic sentences of all permutations of that type."""
    if lam.size > cap:
        raise SizeCapExceeded(f"|lambda| = {lam.size} exceeds the cap {cap}")
    members = perms_of_cycle_type(lam)
    y = Var("y")
    if not members:
        return Not(Exists(y, Eq(y, y)))  # only lambda = empty reaches this
    return or_all([toto_characteristic_sentence(s) for s in members])


def toto_cycle_type_padded(lam: Partition, cap: int = CYCLE_TYPE_CAP) -> Formula:
    """Order-signature sentence for cycle type lambda plus fixed points,
    via the witness-tuple encoding.

    The witness x1 < ... < xq (positionally) must carry a pattern of
    cycle-type lambda; outside points see coinciding orders; and for each
    outside point the number of witness points below it agrees between the
    two orders, written as a disjunction over same-size subset pairs.
    """
    if lam.size > cap:
        raise SizeCapExceeded(f"|lambda| = {lam.size} exceeds the cap {cap}")
    q = lam.size
    y, z = Var("y"), Var("z")
    if q == 0:
        return Forall(y, Forall(z, Iff(LtP(y, z), LtV(y, z))))
    vs = _numbered_vars(q)

    def outside(v: Var) -> Formula:
        return and_all([ne(v, x) for x in vs])

    patterns = perms_of_cycle_type(lam)
    p1 = or_all([classical_on(pi, vs) for pi in patterns])
    p2 = Forall(
        y, Forall(z, Implies(And(outside(y), outside(z)), Iff(LtP(y, z), LtV(y, z))))
    )
    branches = []
    for j in range(q + 1):
        for below_p in itertools.combinations(range(q), j):
            for below_v in itertools.combinations(range(q), j):
                conds = [
                    LtP(vs[i], y) if i in below_p else LtP(y, vs[i]) for i in range(q)
                ]
                conds += [
                    LtV(vs[i], y) if i in below_v else LtV(y, vs[i]) for i in range(q)
                ]
                branches.append(and_all(conds))
    p3 = Forall(y, Implies(outside(y), or_all(branches)))
    return exists_many(vs, and_all([p1, p2, p3]))


# -- bounded-count formulas -----------------------------------------------------


@dataclass(frozen=True)
class ObstructionBounds:
    """Parameters of the excluded obstructions: the decreasing permutation
    of size k, and the three-layer or two-layer monotone stack with arm
    sizes m and n."""

    k: int
    m: int
    n: int

    def __post_init__(self):
        if self.k < 2 or self.m < 1 or self.n < 1:
            raise ValueError("need k >= 2 and m, n >= 1")

    @property
    def longest_arm(self) -> int:
        return max(self.m, self.n)

    def fixed_point_bound(self) -> int:
        """Cell-count bound for fixed points; nonpositive values clamp to 0."""
        return max(0, (self.longest_arm - 1) * (self.k - 3))

    def transposition_bound(self) -> int:
        """Per-cell bound for transpositions."""
        return 2 * (self.longest_arm - 1) * (self.k - 1)


def fixed_point_formula(bounds: ObstructionBounds) -> Formula:
    """Formula in one free variable x: within a class excluding the bounds'
    obstructions, x is a fixed point iff the two mixed quadrants around it
    have equal (bounded) size."""
    x, y = Var("x"), Var("y")
    upper_left = And(LtP(y, x), LtV(x, y))
    lower_right = And(LtP(x, y), LtV(y, x))
    limit = bounds.fixed_point_bound()
    branches = [
        And(count_exactly(i, y, upper_left), count_exactly(i, y, lower_right))
        for i in range(limit + 1)
    ]
    return or_all(branches)


_OFF_DIAGONAL_3 = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))


def _admissible_transposition_profiles(limit: int) -> list[dict[tuple[int, int], int]]:
    """Nonnegative entries at the six off-diagonal cells of a 3x3 matrix,
    each at most `limit`, with matching marginals; two entries are
    determined by the equations, so four loops suffice."""
    out = []
    rng = range(limit + 1)
    for a12 in rng:
        for a21 in rng:
            for a31 in rng:
                a13 = a21 + a31 - a12
                if not 0 <= a13 <= limit:
                    continue
                for a23 in rng:
                    a32 = a21 + a23 - a12
                    if not 0 <= a32 <= limit:
                        continue
                    out.append(
                        {(1, 2): a12, (1, 3): a13, (2, 1): a21,
                         (2, 3): a23, (3, 1): a31, (3, 2): a32}
                    )
    out.sort(key=lambda prof: (sum(prof.values()), tuple(prof[c] for c in _OFF_DIAGONAL_3)))
    return out


def _transposition_cell(cell: tuple[int, int], t: Var, x: Var, y: Var) -> Formula:
    """Membership of t in a cell of the 3x3 grid around the inversion
    (x, y) with x <P y and y <V x; rows bottom to top."""
    row, col = cell
    pos = {1: [LtP(t, x)], 2: [LtP(x, t), LtP(t, y)], 3: [LtP(y, t)]}[col]
    val = {1: [LtV(t, y)], 2: [LtV(y, t), LtV(t, x)], 3: [LtV(x, t)]}[row]
    return and_all(pos + val)


def transposition_formula(bounds: ObstructionBounds) -> Formula:
    """Formula in two free variables x, y: within a class excluding the
    bounds' obstructions, {x, y} is a transposition iff they form an
    inversion whose off-diagonal cell counts match one of the balanced
    bounded profiles.  Symmetric in the argument order."""
    x, y = Var("x"), Var("y")
    limit = bounds.transposition_bound()
    profiles = _admissible_transposition_profiles(limit)

    def ordered_body(a: Var, b: Var) -> Formula:
        t = Var("t")
        nodes = {}
        for cell in _OFF_DIAGONAL_3:
            for c in {prof[cell] for prof in profiles}:
                nodes[cell, c] = count_exactly(c, t, _transposition_cell(cell, t, a, b))
        disjuncts = [
            and_all([nodes[cell, prof[cell]] for cell in _OFF_DIAGONAL_3])
            for prof in profiles
        ]
        inversion = And(LtP(a, b), LtV(b, a))
        return And(inversion, or_all(disjuncts))

    return Or(ordered_body(x, y), ordered_body(y, x))


def _region_cell(t: Var, row: int, col: int, vs: Sequence[Var], inverse: Permutation) -> Formula:
    """Membership of t in region-matrix cell (row, col) around the chosen
    points vs; 1-based bands, rows bottom to top."""
    pos, val = _cell_bounds(t, col - 1, row - 1, vs, inverse)
    return and_all(pos + val)


def stable_occurrence_formula(pi: Permutation, total: int) -> Formula:
    """Formula in |pi| free variables: the marked points form an occurrence
    of pi whose off-diagonal region counts match one of the balanced
    zero-diagonal matrices of entry sum at most `total`."""
    k = len(pi)
    if k < 1:
        raise ValueError("pattern must be nonempty")
    vs = default_vars(k)
    t = _fresh_count_var(vs)
    inverse = pi.inverse
    cells = [(i, j) for i in range(1, k + 2) for j in range(1, k + 2) if i != j]
    matrices = list(enumerate_balanced(k + 1, total))
    nodes = {}
    for cell in cells:
        row, col = cell
        for c in {a[row - 1][col - 1] for a in matrices}:
            nodes[cell, c] = count_exactly(c, t, _region_cell(t, row, col, vs, inverse))
    disjuncts = [
        and_all([nodes[(i, j), a[i - 1][j - 1]] for (i, j) in cells]) for a in matrices
    ]
    return And(classical_on(pi, vs), or_all(disjuncts))


def _fresh_count_var(vs: Sequence[Var]) -> Var:
    taken = {v.name for v in vs}
    for name in ("t", "u", "w"):
        if name not in taken:
            return Var(name)
    return Var("t0")


def cycle_formula(k: int, total: int) -> Formula:
    """Formula in k free variables: the marked points (in positional order)
    form a k-cycle, as the disjunction of the stable-occurrence formulas of
    all k-cycle patterns."""
    if k < 1:
        raise ValueError("cycle size must be positive")
    kcycles = perms_of_cycle_type(Partition([k]))
    return or_all([stable_occurrence_formula(pi, total) for pi in kcycles])


def stable_bound(k: int, m: int) -> int:
    """The sufficient count bound C(k+1) * ((m-1)^2 + 1) where C counts the
    non-trivial directed cycles on [k+1].

    >>> stable_bound(1, 2)
    4
    """
    if k < 1 or m < 1:
        raise ValueError("need k >= 1 and m >= 1")
    c = len(nontrivial_cycles(k + 1))
    return c * (k + 1) * ((m - 1) ** 2 + 1)

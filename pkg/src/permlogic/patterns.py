"""Order-signature formulas for pattern conditions: classical, mesh, barred,
decorated and grid patterns, plus simplicity and sum-decomposability.

Each compiler emits the textbook-shaped formula for its condition; the only
simplification applied is dropping the empty order chains of the one-point
pattern, whose formula is the trivial atom x = x.  Alongside every compiler
sits a brute-force oracle computing the same condition combinatorially, so
the two routes can be checked against each other.

Cell coordinates: an occurrence of a size-k pattern splits the rest of the
permutation into a (k+1) x (k+1) grid of cells (i, j) with 0 <= i, j <= k,
where i counts the chosen points strictly to the left in position and j the
chosen points strictly below in value.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InfiniteBasis, UnsupportedConstraint
from .logic import (
    And,
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
    exists_many,
    or_all,
)
from .perms import Permutation, contains_pattern, occurrences, pattern_of

_LETTERS = ("x", "y", "z")
_EXTRA_DECORATED = ("t", "u", "v", "w")
_EXTRA_BARRED = ("u", "t", "v", "w")


def default_vars(k: int) -> tuple[Var, ...]:
    """Free-variable names for a k-point pattern formula: x, y, z for small
    patterns, x1..xk beyond."""
    if 1 <= k <= 3:
        return tuple(Var(name) for name in _LETTERS[:k])
    return tuple(Var(f"x{i}") for i in range(1, k + 1))


def _extra_vars(count: int, avoid: Iterable[Var], pool: Sequence[str]) -> list[Var]:
    taken = {v.name for v in avoid}
    out: list[Var] = []
    for name in itertools.chain(pool, (f"{pool[0]}{i}" for i in itertools.count(1))):
        if len(out) == count:
            break
        if name not in taken:
            out.append(Var(name))
            taken.add(name)
    return out


def classical_on(pi: Permutation, vs: Sequence[Var]) -> Formula:
    """The occurrence formula for pi over the given variables: the position
    chain conjoined with the value chain ordered by pi's inverse."""
    k = len(pi)
    if len(vs) != k:
        raise ValueError(f"{k} variables expected, got {len(vs)}")
    if k == 1:
        return Eq(vs[0], vs[0])
    pos_chain = and_all([LtP(vs[i], vs[i + 1]) for i in range(k - 1)])
    by_value = [vs[pi.inverse(j) - 1] for j in range(1, k + 1)]
    val_chain = and_all([LtV(by_value[i], by_value[i + 1]) for i in range(k - 1)])
    return And(pos_chain, val_chain)


def compile_classical(pi: Permutation) -> Formula:
    """Occurrence formula with the default variables, e.g. for 231:
    (x <P y & y <P z) & (z <V x & x <V y)."""
    if len(pi) < 1:
        raise ValueError("pattern must be nonempty")
    return classical_on(pi, default_vars(len(pi)))


def compile_contains(pi: Permutation) -> Formula:
    """Sentence: sigma contains pi."""
    vs = default_vars(len(pi))
    return exists_many(vs, classical_on(pi, vs))


def _sorted_basis(basis: Iterable[Permutation]) -> list[Permutation]:
    return sorted(basis, key=lambda p: (len(p), p.word))


def compile_avoids(basis: Iterable[Permutation]) -> Formula:
    """Sentence: sigma avoids every pattern in the (finite, nonempty) basis."""
    basis = _sorted_basis(basis)
    if not basis:
        raise ValueError("avoidance basis must be nonempty")
    return and_all([Not(compile_contains(b)) for b in basis])


# -- mesh patterns ----------------------------------------------------------


@dataclass(frozen=True)
class MeshPattern:
    pattern: Permutation
    shaded: frozenset[tuple[int, int]]

    def __init__(self, pattern: Permutation, shaded: Iterable[tuple[int, int]]):
        k = len(pattern)
        if k < 1:
            raise ValueError("mesh pattern must be nonempty")
        cells = frozenset((int(i), int(j)) for i, j in shaded)
        for i, j in cells:
            if not (0 <= i <= k and 0 <= j <= k):
                raise ValueError(f"cell {(i, j)} outside 0..{k}")
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "shaded", cells)


def _cell_bounds(
    var: Var, i: int, j: int, vs: Sequence[Var], inverse: Permutation
) -> tuple[list[Formula], list[Formula]]:
    """Strict position/value bounds placing `var` in cell (i, j); comparisons
    against the missing 0-th and (k+1)-th chosen points are dropped."""
    k = len(vs)
    pos: list[Formula] = []
    val: list[Formula] = []
    if i >= 1:
        pos.append(LtP(vs[i - 1], var))
    if i <= k - 1:
        pos.append(LtP(var, vs[i]))
    if j >= 1:
        val.append(LtV(vs[inverse(j) - 1], var))
    if j <= k - 1:
        val.append(LtV(var, vs[inverse(j + 1) - 1]))
    return pos, val


def compile_mesh(mp: MeshPattern) -> Formula:
    """Occurrence formula for a mesh pattern: the classical formula plus one
    emptiness clause per shaded cell."""
    pi = mp.pattern
    k = len(pi)
    vs = default_vars(k)
    inverse = pi.inverse
    t = _extra_vars(1, vs, ("t",))[0]
    parts: list[Formula] = [] if k == 1 else [classical_on(pi, vs)]
    if k == 1 and not mp.shaded:
        return compile_classical(pi)
    for i, j in sorted(mp.shaded):
        pos, val = _cell_bounds(t, i, j, vs, inverse)
        groups = [and_all(g) for g in (pos, val) if g]
        parts.append(Not(Exists(t, and_all(groups))))
    return and_all(parts)


def mesh_occurrences(sigma: Permutation, mp: MeshPattern) -> list[tuple[int, ...]]:
    """Brute-force mesh oracle: classical occurrences whose shaded cells
    contain no point of sigma."""
    word = sigma.word
    out = []
    for occ in occurrences(sigma, mp.pattern):
        occ_set = set(occ)
        occ_vals = sorted(word[p - 1] for p in occ)
        good = True
        for p in range(1, len(word) + 1):
            if p in occ_set:
                continue
            v = word[p - 1]
            i = sum(1 for q in occ if q < p)
            j = sum(1 for w in occ_vals if w < v)
            if (i, j) in mp.shaded:
                good = False
                break
        if good:
            out.append(occ)
    return out


# -- barred patterns ---------------------------------------------------------


@dataclass(frozen=True)
class BarredPattern:
    pattern: Permutation
    barred: frozenset[int]

    def __init__(self, pattern: Permutation, barred: Iterable[int]):
        bars = frozenset(int(b) for b in barred)
        k = len(pattern)
        if any(not 1 <= b <= k for b in bars):
            raise ValueError(f"barred positions {sorted(bars)} outside 1..{k}")
        if len(bars) >= k:
            raise ValueError("at least one element must be unbarred")
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "barred", bars)

    @property
    def unbarred(self) -> tuple[int, ...]:
        return tuple(p for p in range(1, len(self.pattern) + 1) if p not in self.barred)


def compile_barred(bp: BarredPattern) -> Formula:
    """Occurrence formula over the unbarred positions: an occurrence of the
    unbarred sub-pattern that cannot be extended to the full pattern."""
    if not bp.barred:
        return compile_classical(bp.pattern)
    sub = pattern_of(bp.pattern, bp.unbarred)
    vs = default_vars(len(sub))
    extras = _extra_vars(len(bp.barred), vs, _EXTRA_BARRED)
    interleaved: list[Var] = []
    it_free = iter(vs)
    it_extra = iter(extras)
    for p in range(1, len(bp.pattern) + 1):
        interleaved.append(next(it_extra) if p in bp.barred else next(it_free))
    full = classical_on(bp.pattern, interleaved)
    return And(classical_on(sub, vs), Not(exists_many(extras, full)))


def barred_occurrences(sigma: Permutation, bp: BarredPattern) -> list[tuple[int, ...]]:
    """Brute-force barred oracle: occurrences of the unbarred sub-pattern
    that are not the unbarred projection of any full-pattern occurrence."""
    sub = pattern_of(bp.pattern, bp.unbarred)
    unbarred_idx = [p - 1 for p in bp.unbarred]
    extendable = {
        tuple(occ[i] for i in unbarred_idx) for occ in occurrences(sigma, bp.pattern)
    }
    return [occ for occ in occurrences(sigma, sub) if occ not in extendable]


# -- decorated patterns ------------------------------------------------------


@dataclass(frozen=True)
class DecoratedPattern:
    pattern: Permutation
    constraints: tuple[tuple[tuple[int, int], Permutation], ...]

    def __init__(
        self,
        pattern: Permutation,
        constraints: Iterable[tuple[tuple[int, int], Permutation]],
    ):
        k = len(pattern)
        checked = []
        for cell, forbidden in constraints:
            cell = tuple(cell)
            if len(cell) != 2 or not all(isinstance(c, int) for c in cell):
                raise UnsupportedConstraint("constraints must name a single cell (i, j)")
            i, j = cell
            if not (0 <= i <= k and 0 <= j <= k):
                raise ValueError(f"cell {(i, j)} outside 0..{k}")
            checked.append(((i, j), forbidden))
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "constraints", tuple(checked))


def compile_decorated(dp: DecoratedPattern) -> Formula:
    """Occurrence formula for a decorated pattern: the classical formula
    plus, per constraint, a clause forbidding the constrained pattern inside
    the named cell."""
    pi = dp.pattern
    k = len(pi)
    vs = default_vars(k)
    inverse = pi.inverse
    parts: list[Formula] = [compile_classical(pi)] if k > 1 or not dp.constraints else []
    if k == 1 and not dp.constraints:
        return compile_classical(pi)
    for (i, j), rho in dp.constraints:
        extras = _extra_vars(len(rho), vs, _EXTRA_DECORATED)
        pos_chains: list[Formula] = []
        val_chains: list[Formula] = []
        for w in extras:
            p_b, v_b = _cell_bounds(w, i, j, vs, inverse)
            if p_b:
                pos_chains.append(and_all(p_b))
            if v_b:
                val_chains.append(and_all(v_b))
        groups = [and_all(g) for g in (pos_chains, val_chains) if g]
        body = and_all(groups + [classical_on(rho, extras)])
        parts.append(Not(exists_many(extras, body)))
    return and_all(parts)


def decorated_occurrences(sigma: Permutation, dp: DecoratedPattern) -> list[tuple[int, ...]]:
    """Brute-force decorated oracle: classical occurrences such that the
    points inside each constrained cell avoid the forbidden pattern."""
    word = sigma.word
    out = []
    for occ in occurrences(sigma, dp.pattern):
        occ_vals = sorted(word[p - 1] for p in occ)
        occ_set = set(occ)
        ok = True
        for (i, j), rho in dp.constraints:
            cell_positions = []
            for p in range(1, len(word) + 1):
                if p in occ_set:
                    continue
                v = word[p - 1]
                if sum(1 for q in occ if q < p) == i and sum(1 for w in occ_vals if w < v) == j:
                    cell_positions.append(p)
            if cell_positions and contains_pattern(
                pattern_of(sigma, tuple(cell_positions)), rho
            ):
                ok = False
                break
        if ok:
            out.append(occ)
    return out


# -- grid classes ------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """A rectangular matrix of cell constraints in display order (top row
    first).  An entry is either None, meaning the cell must be empty, or a
    finite tuple of basis patterns, meaning the cell avoids them all."""

    rows: tuple[tuple[Optional[tuple[Permutation, ...]], ...], ...]

    def __init__(self, rows: Iterable[Iterable[Optional[Iterable[Permutation]]]]):
        packed = []
        for row in rows:
            cells = []
            for entry in row:
                if entry is None:
                    cells.append(None)
                else:
                    try:
                        basis = tuple(entry)
                    except TypeError:
                        raise InfiniteBasis(f"entry {entry!r} is not a finite basis")
                    if not all(isinstance(b, Permutation) for b in basis):
                        raise InfiniteBasis(f"entry {entry!r} is not a finite basis")
                    cells.append(tuple(_sorted_basis(basis)))
            packed.append(tuple(cells))
        if not packed or not packed[0] or any(len(r) != len(packed[0]) for r in packed):
            raise ValueError("grid must be rectangular and nonempty")
        object.__setattr__(self, "rows", tuple(packed))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> Optional[tuple[Permutation, ...]]:
        """Entry of cell (row i bottom-to-top, column j left-to-right)."""
        return self.rows[self.n_rows - i][j - 1]


def _leq(a: Var, b: Var) -> Formula:
    return Or(LtP(a, b), Eq(a, b))


def _leq_v(a: Var, b: Var) -> Formula:
    return Or(LtV(a, b), Eq(a, b))


def compile_grid_branch(g: GridSpec, empty_cols: int, empty_rows: int) -> Formula:
    """One branch of the grid sentence: the leftmost `empty_cols` column
    bands and bottom `empty_rows` row bands are empty, so every line to the
    right/above crosses a point and can be named by a delimiter variable
    (the rightmost dot left of a vertical line, the highest dot below a
    horizontal line)."""
    t, u = g.n_rows, g.n_cols
    if not (0 <= empty_cols < u and 0 <= empty_rows < t):
        raise ValueError("band thresholds out of range")
    v_lines = list(range(empty_cols + 1, u))
    h_lines = list(range(empty_rows + 1, t))
    lv = {L: Var("lv" if u == 2 else f"lv{L}") for L in v_lines}
    lh = {L: Var("lh" if t == 2 else f"lh{L}") for L in h_lines}

    def bounds_for(w: Var, i: int, j: int) -> tuple[list[Formula], list[Formula]]:
        pos: list[Formula] = []
        val: list[Formula] = []
        if j - 1 in lv:
            pos.append(LtP(lv[j - 1], w))
        if j in lv:
            pos.append(_leq(w, lv[j]))
        if i - 1 in lh:
            val.append(LtV(lh[i - 1], w))
        if i in lh:
            val.append(_leq_v(w, lh[i]))
        return pos, val

    def cell_clause(i: int, j: int, pattern: Optional[Permutation]) -> Formula:
        count = len(pattern) if pattern is not None else 1
        ws = default_vars(count)
        pos_chains: list[Formula] = []
        val_chains: list[Formula] = []
        for w in ws:
            p_b, v_b = bounds_for(w, i, j)
            if p_b:
                pos_chains.append(and_all(p_b))
            if v_b:
                val_chains.append(and_all(v_b))
        groups = [and_all(g_) for g_ in (pos_chains, val_chains) if g_]
        if pattern is None:
            body = and_all(groups, empty=Eq(ws[0], ws[0]))
        else:
            body = and_all(groups + [classical_on(pattern, ws)])
        return Not(exists_many(ws, body))

    clauses: list[Formula] = []
    order: list[Formula] = []
    for L in v_lines[1:]:
        order.append(_leq(lv[L - 1], lv[L]))
    for L in h_lines[1:]:
        order.append(_leq_v(lh[L - 1], lh[L]))
    empties: list[Formula] = []
    for display_row in range(t):  # top row first
        i = t - display_row
        if i <= empty_rows:
            continue
        for j in range(1, u + 1):
            if j <= empty_cols:
                continue
            entry = g.entry(i, j)
            if entry is None:
                empties.append(cell_clause(i, j, None))
            else:
                clauses.extend(cell_clause(i, j, beta) for beta in entry)
    body = and_all(order + clauses + empties, empty=Eq(Var("x"), Var("x")))
    delimiters = [lv[L] for L in v_lines] + [lh[L] for L in h_lines]
    return exists_many(delimiters, body)


def compile_grid(g: GridSpec) -> Formula:
    """Sentence for membership in the grid class: a disjunction over the
    possible numbers of leading empty column and row bands."""
    branches = [
        compile_grid_branch(g, a, b) for a in range(g.n_cols) for b in range(g.n_rows)
    ]
    return or_all(branches)


def grid_member_oracle(sigma: Permutation, g: GridSpec) -> bool:
    """Brute-force gridding oracle: try every placement of the vertical and
    horizontal cut lines."""
    n = len(sigma)
    word = sigma.word
    t, u = g.n_rows, g.n_cols
    cuts = lambda parts: itertools.combinations_with_replacement(range(n + 1), parts - 1)
    for vcuts in cuts(u):
        vb = (0,) + vcuts + (n,)
        for hcuts in cuts(t):
            hb = (0,) + hcuts + (n,)
            ok = True
            for i in range(1, t + 1):
                for j in range(1, u + 1):
                    cell = [
                        p
                        for p in range(1, n + 1)
                        if vb[j - 1] < p <= vb[j] and hb[i - 1] < word[p - 1] <= hb[i]
                    ]
                    entry = g.entry(i, j)
                    if entry is None:
                        if cell:
                            ok = False
                    elif cell:
                        sub = pattern_of(sigma, tuple(cell))
                        if any(contains_pattern(sub, b) for b in entry):
                            ok = False
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                return True
    return False


# -- substitution decomposition ----------------------------------------------


def compile_plus_decomposable() -> Formula:
    """Sentence: sigma is a direct sum of two nonempty blocks."""
    lv, lh, x = Var("lv"), Var("lh"), Var("x")
    nonempty = Exists(x, LtP(lv, x))
    split = Forall(x, Iff(_leq(x, lv), _leq_v(x, lh)))
    return Exists(lv, Exists(lh, And(nonempty, split)))


def compile_minus_decomposable() -> Formula:
    """Sentence: sigma is a skew sum of two nonempty blocks."""
    lv, lh, x = Var("lv"), Var("lh"), Var("x")
    nonempty = Exists(x, LtP(lv, x))
    split = Forall(x, Iff(_leq(x, lv), Or(LtV(lh, x), Eq(x, lh))))
    return Exists(lv, Exists(lh, And(nonempty, split)))


def compile_interval() -> Formula:
    """Sentence: sigma has a non-trivial interval (a box of at least two
    points, missing at least one point of sigma)."""
    lv1, lv2, lh1, lh2 = Var("lv1"), Var("lv2"), Var("lh1"), Var("lh2")
    x, y = Var("x"), Var("y")
    wide = LtP(lv1, lv2)
    proper = Exists(y, Or(LtP(y, lv1), LtP(lv2, y)))
    inside_p = And(_leq(lv1, x), _leq(x, lv2))
    inside_v = And(_leq_v(lh1, x), _leq_v(x, lh2))
    box = Forall(x, Iff(inside_p, inside_v))
    body = and_all([wide, proper, box])
    return exists_many([lv1, lv2, lh1, lh2], body)


def compile_simple() -> Formula:
    """Sentence: sigma has no non-trivial interval."""
    return Not(compile_interval())

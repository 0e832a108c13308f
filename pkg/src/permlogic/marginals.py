"""Region matrices around pattern occurrences, the matching-marginals test
for stability, cycle-matrix decomposition of balanced matrices, balanced
matrix enumeration, and the expansion construction.

A size-k occurrence splits the other points of sigma into a (k+1) x (k+1)
grid of cells; the region matrix counts the points per cell, with rows
indexed bottom to top (row = value band, column = position band, both
1-based).  An occurrence is stable (its point set is a union of cycles)
exactly when every row sum equals the matching column sum; such balanced
matrices decompose as nonnegative integer combinations of cycle matrices,
the adjacency matrices of directed cycles on the band indices.
"""
from __future__ import annotations

import itertools
from typing import Iterator, Optional, Sequence

from .errors import (
    InvalidCycle,
    InvalidOccurrence,
    MatrixEnumerationOverflow,
    NotBalanced,
)
from .perms import Permutation

Matrix = tuple[tuple[int, ...], ...]
CycleSeq = tuple[int, ...]

ENUMERATION_COUNT_CAP = 200_000


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(v) for v in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square")
    if any(v < 0 for row in m for v in row):
        raise ValueError("matrix entries must be nonnegative")
    return m


def region_matrix(sigma: Permutation, occurrence: Sequence[int]) -> Matrix:
    """Cell counts around an increasing occurrence, rows bottom to top.

    Entry (i, j) counts the points outside the occurrence lying in value
    band i and position band j; all entries sum to n - k.
    """
    n = len(sigma)
    occ = tuple(occurrence)
    if any(not 1 <= p <= n for p in occ):
        raise InvalidOccurrence(f"positions {occ} outside 1..{n}")
    if any(a >= b for a, b in zip(occ, occ[1:])):
        raise InvalidOccurrence(f"positions {occ} are not strictly increasing")
    k = len(occ)
    occ_set = set(occ)
    occ_vals = sorted(sigma.word[p - 1] for p in occ)
    counts = [[0] * (k + 1) for _ in range(k + 1)]
    for p in range(1, n + 1):
        if p in occ_set:
            continue
        v = sigma.word[p - 1]
        col = sum(1 for q in occ if q < p)
        row = sum(1 for w in occ_vals if w < v)
        counts[row][col] += 1
    return tuple(tuple(r) for r in counts)


def has_matching_marginals(matrix: Sequence[Sequence[int]]) -> bool:
    """True when every row sum equals the corresponding column sum."""
    a = _as_matrix(matrix)
    m = len(a)
    return all(sum(a[i]) == sum(a[j][i] for j in range(m)) for i in range(m))


def canonical_cycle(seq: Sequence[int]) -> CycleSeq:
    """Rotate a cycle sequence to start at its minimum element."""
    seq = tuple(int(v) for v in seq)
    if len(set(seq)) != len(seq) or not seq:
        raise InvalidCycle(f"cycle {seq} must be a nonempty sequence of distinct indices")
    start = seq.index(min(seq))
    return seq[start:] + seq[:start]


def cycle_matrix(seq: Sequence[int], m: int) -> Matrix:
    """Adjacency matrix of the directed cycle seq[0] -> seq[1] -> ... ->
    seq[0] on [m]; a length-1 sequence gives a trivial (diagonal) matrix."""
    seq = tuple(int(v) for v in seq)
    if len(set(seq)) != len(seq) or not seq:
        raise InvalidCycle(f"cycle {seq} must consist of distinct indices")
    if any(not 1 <= v <= m for v in seq):
        raise InvalidCycle(f"cycle {seq} outside 1..{m}")
    a = [[0] * m for _ in range(m)]
    for s, t in zip(seq, seq[1:] + seq[:1]):
        a[s - 1][t - 1] += 1
    return tuple(tuple(r) for r in a)


def _simple_cycles(m: int, include_trivial: bool = True) -> list[CycleSeq]:
    """All directed simple cycles on [m] as canonical sequences, sorted
    lexicographically."""
    out: list[CycleSeq] = []
    if include_trivial:
        out.extend((v,) for v in range(1, m + 1))
    for r in range(2, m + 1):
        for subset in itertools.combinations(range(1, m + 1), r):
            first, rest = subset[0], subset[1:]
            for tail in itertools.permutations(rest):
                out.append((first,) + tail)
    return sorted(out)


def nontrivial_cycles(m: int) -> list[CycleSeq]:
    """All directed cycles on [m] of length at least 2 (canonical form)."""
    return _simple_cycles(m, include_trivial=False)


def cycle_decompose(matrix: Sequence[Sequence[int]]) -> list[tuple[CycleSeq, int]]:
    """Write a balanced matrix as a nonnegative integer combination of cycle
    matrices: repeatedly take the lexicographically smallest directed cycle
    present when the matrix is read as edge multiplicities, subtract it with
    the largest possible coefficient, and recurse.  Trivial cycles account
    for the diagonal.

    >>> cycle_decompose([[0, 1], [1, 0]])
    [((1, 2), 1)]
    """
    a = [list(row) for row in _as_matrix(matrix)]
    m = len(a)
    if not has_matching_marginals(a):
        raise NotBalanced("row and column marginals do not match")
    candidates = _simple_cycles(m)
    out: list[tuple[CycleSeq, int]] = []
    while any(v for row in a for v in row):
        for seq in candidates:
            edges = list(zip(seq, seq[1:] + seq[:1]))
            coeff = min(a[s - 1][t - 1] for s, t in edges)
            if coeff > 0:
                for s, t in edges:
                    a[s - 1][t - 1] -= coeff
                out.append((seq, coeff))
                break
        else:
            raise NotBalanced("no cycle found in a nonzero balanced matrix")
    return out


def recompose(terms: Sequence[tuple[CycleSeq, int]], m: int) -> Matrix:
    """Sum of coeff * cycle_matrix over the given terms."""
    a = [[0] * m for _ in range(m)]
    for seq, coeff in terms:
        cm = cycle_matrix(seq, m)
        for i in range(m):
            for j in range(m):
                a[i][j] += coeff * cm[i][j]
    return tuple(tuple(r) for r in a)


def enumerate_balanced(
    m: int, total: int, count_cap: int = ENUMERATION_COUNT_CAP
) -> Iterator[Matrix]:
    """All m x m matrices with zero diagonal, matching marginals and entry
    sum at most `total`, each exactly once in lexicographic (row-major)
    order.

    >>> [a for a in enumerate_balanced(2, 2)]
    [((0, 0), (0, 0)), ((0, 1), (1, 0))]
    """
    if m < 1 or total < 0:
        raise ValueError("need m >= 1 and a nonnegative total")
    cells = [(i, j) for i in range(m) for j in range(m) if i != j]
    emitted = 0
    current = [[0] * m for _ in range(m)]

    def fill(idx: int, budget: int) -> Iterator[Matrix]:
        nonlocal emitted
        if idx == len(cells):
            if has_matching_marginals(current):
                emitted += 1
                if emitted > count_cap:
                    raise MatrixEnumerationOverflow(
                        f"more than {count_cap} balanced matrices for m={m}, total={total}"
                    )
                yield tuple(tuple(row) for row in current)
            return
        i, j = cells[idx]
        for v in range(budget + 1):
            current[i][j] = v
            yield from fill(idx + 1, budget - v)
        current[i][j] = 0

    yield from fill(0, total)


def expansion(pi: Permutation, seq: Sequence[int]) -> Permutation:
    """The expansion of pi by a cycle on [k+1]: the unique permutation of
    length k + r carrying a stable occurrence of pi whose region matrix is
    the cycle matrix of seq.  Each edge (a, b) of the cycle contributes one
    point in cell (row a, column b): positionally right after the (b-1)-th
    chosen point and in value right above the (a-1)-th chosen value.

    >>> expansion(Permutation([2, 4, 1, 3]), (1, 2, 5))
    Permutation('7416253')
    """
    k = len(pi)
    seq = tuple(int(v) for v in seq)
    if len(set(seq)) != len(seq) or not seq:
        raise InvalidCycle(f"cycle {seq} must consist of distinct indices")
    if any(not 1 <= v <= k + 1 for v in seq):
        raise InvalidCycle(f"cycle {seq} outside 1..{k + 1}")
    edges = list(zip(seq, seq[1:] + seq[:1]))
    # at most one new point per position band and per value band
    by_col = {b: a for a, b in edges}
    by_row = {a: b for a, b in edges}
    # positions: bands 1..k+1 left to right; band b sits before chosen point b
    layout: list[Optional[int]] = []  # None marks a new point, else pattern index
    for b in range(1, k + 2):
        if b in by_col:
            layout.append(-b)  # new point in position band b
        if b <= k:
            layout.append(b)
    # values bottom to top: value band a sits below chosen value a
    value_order: list[int] = []
    for a in range(1, k + 2):
        if a in by_row:
            value_order.append(-a)  # new point in value band a
        if a <= k:
            value_order.append(pi.inverse(a))  # pattern index holding value a
    rank = {key: i + 1 for i, key in enumerate(value_order)}
    word = []
    for key in layout:
        if key < 0:
            b = -key
            word.append(rank[-by_col[b]])
        else:
            word.append(rank[key])
    return Permutation(word)


def expansion_occurrence(pi: Permutation, seq: Sequence[int]) -> tuple[int, ...]:
    """Positions of the distinguished pi-occurrence inside expansion(pi, seq)."""
    k = len(pi)
    seq = tuple(int(v) for v in seq)
    targets = {b for _, b in zip(seq, seq[1:] + seq[:1])}
    positions = []
    pos = 0
    for b in range(1, k + 2):
        if b in targets:
            pos += 1
        if b <= k:
            pos += 1
            positions.append(pos)
    return tuple(positions)


def expansion_inflated(
    pi: Permutation, seq: Sequence[int], thetas: Sequence[Permutation]
) -> Permutation:
    """Inflate the new points of expansion(pi, seq), in left-to-right order,
    by the given permutations."""
    from .perms import inflate, inc

    seq = tuple(int(v) for v in seq)
    if len(thetas) != len(seq):
        raise InvalidCycle(f"{len(seq)} inflating permutations expected, got {len(thetas)}")
    base = expansion(pi, seq)
    marked = set(expansion_occurrence(pi, seq))
    blocks = []
    it = iter(thetas)
    for p in range(1, len(base) + 1):
        blocks.append(inc(1) if p in marked else next(it))
    return inflate(base, blocks)

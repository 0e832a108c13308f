import itertools
import random

import pytest

from permlogic.errors import (
    InvalidCycle,
    InvalidOccurrence,
    MatrixEnumerationOverflow,
    NotBalanced,
)
from permlogic.marginals import (
    canonical_cycle,
    cycle_decompose,
    cycle_matrix,
    enumerate_balanced,
    expansion,
    expansion_inflated,
    expansion_occurrence,
    has_matching_marginals,
    nontrivial_cycles,
    recompose,
    region_matrix,
)
from permlogic.perms import (
    Permutation,
    dec,
    enumerate_sn,
    inc,
    parse_perm,
    pattern_of,
    stable_occurrences,
)

PAPER_MATRIX = ((2, 1, 0, 1), (0, 1, 2, 2), (1, 2, 1, 2), (2, 0, 0, 0))


def paper_sigma20():
    coords = [
        (0.1, 2.8), (0.3, 3.9), (0.5, 0.6), (0.7, 3.2), (0.9, 0.5), (1.0, 2.0),
        (1.2, 1.1), (1.4, 2.5), (1.6, 2.7), (1.8, 0.4), (2.0, 3.0), (2.25, 2.2),
        (2.5, 1.3), (2.75, 1.6), (3.0, 1.0), (3.1, 1.8), (3.3, 0.2), (3.5, 2.4),
        (3.7, 1.4), (3.9, 2.1),
    ]
    coords.sort()
    ys = sorted(c[1] for c in coords)
    return Permutation(ys.index(c[1]) + 1 for c in coords)


class TestRegionMatrix:
    def test_worked_example(self):
        sigma = paper_sigma20()
        assert pattern_of(sigma, (6, 11, 15)) == parse_perm("231")
        assert region_matrix(sigma, (6, 11, 15)) == PAPER_MATRIX
        assert not has_matching_marginals(PAPER_MATRIX)

    def test_full_occurrence_gives_zero_matrix(self):
        s = parse_perm("2413")
        assert region_matrix(s, (1, 2, 3, 4)) == tuple(
            tuple(0 for _ in range(5)) for _ in range(5)
        )

    def test_entries_sum_to_remainder(self):
        s = parse_perm("4356712")
        for k in (1, 2, 3):
            for occ in itertools.combinations(range(1, 8), k):
                a = region_matrix(s, occ)
                assert sum(map(sum, a)) == len(s) - k

    def test_validation(self):
        with pytest.raises(InvalidOccurrence):
            region_matrix(parse_perm("21"), (2, 1))
        with pytest.raises(InvalidOccurrence):
            region_matrix(parse_perm("21"), (0,))


class TestMarginals:
    def test_diagonal_matrices_balance(self):
        assert has_matching_marginals([[3, 0], [0, 5]])

    def test_cycle_matrices_balance(self):
        for m in (2, 3, 4):
            for seq in nontrivial_cycles(m):
                assert has_matching_marginals(cycle_matrix(seq, m))

    def test_stability_equivalence_small(self):
        for n in range(0, 6):
            for s in enumerate_sn(n):
                for k in range(1, min(3, n) + 1):
                    for occ in itertools.combinations(range(1, n + 1), k):
                        stable = {s(i) for i in occ} == set(occ)
                        assert stable == has_matching_marginals(region_matrix(s, occ))


class TestCycleMatrix:
    def test_adjacency(self):
        a = cycle_matrix((1, 2, 5), 5)
        assert a[0][1] == a[1][4] == a[4][0] == 1
        assert sum(map(sum, a)) == 3

    def test_trivial_loop(self):
        assert cycle_matrix((2,), 3) == ((0, 0, 0), (0, 1, 0), (0, 0, 0))

    def test_canonical_rotation(self):
        assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
        with pytest.raises(InvalidCycle):
            canonical_cycle((1, 1))


class TestDecomposition:
    def test_examples(self):
        assert cycle_decompose([[0, 1], [1, 0]]) == [((1, 2), 1)]
        assert cycle_decompose([[0, 0], [0, 0]]) == []
        triple = recompose([((1, 2, 5), 3)], 5)
        assert cycle_decompose(triple) == [((1, 2, 5), 3)]

    def test_loops_cover_diagonal(self):
        out = cycle_decompose([[2, 0], [0, 1]])
        assert out == [((1,), 2), ((2,), 1)]

    def test_unbalanced_rejected(self):
        with pytest.raises(NotBalanced):
            cycle_decompose([[0, 1], [0, 0]])

    def test_random_recomposition(self):
        rng = random.Random(11)
        for _ in range(200):
            m = rng.randint(1, 6)
            pool = nontrivial_cycles(m) + [(v,) for v in range(1, m + 1)]
            terms = [(rng.choice(pool), rng.randint(1, 3)) for _ in range(rng.randint(0, 5))]
            a = recompose(terms, m)
            assert recompose(cycle_decompose(a), m) == a

    def test_deterministic(self):
        a = recompose([((1, 2), 2), ((1, 3, 2), 1)], 3)
        assert cycle_decompose(a) == cycle_decompose(a)


class TestEnumerateBalanced:
    def test_m2_example(self):
        got = list(enumerate_balanced(2, 2))
        assert got == [((0, 0), (0, 0)), ((0, 1), (1, 0))]

    def test_total_zero(self):
        assert list(enumerate_balanced(3, 0)) == [
            tuple(tuple(0 for _ in range(3)) for _ in range(3))
        ]

    def test_all_emitted_qualify_and_order(self):
        got = list(enumerate_balanced(3, 3))
        assert got == sorted(set(got))
        for a in got:
            assert has_matching_marginals(a)
            assert all(a[i][i] == 0 for i in range(3))
            assert sum(map(sum, a)) <= 3

    def test_matches_brute_force(self):
        def brute(m, total):
            cells = [(i, j) for i in range(m) for j in range(m)]
            out = []
            for values in itertools.product(range(total + 1), repeat=len(cells)):
                a = [[0] * m for _ in range(m)]
                for (i, j), v in zip(cells, values):
                    a[i][j] = v
                if (
                    sum(values) <= total
                    and all(a[i][i] == 0 for i in range(m))
                    and has_matching_marginals(a)
                ):
                    out.append(tuple(tuple(r) for r in a))
            return sorted(set(out))

        assert list(enumerate_balanced(2, 3)) == brute(2, 3)
        assert list(enumerate_balanced(3, 2)) == brute(3, 2)

    def test_overflow_guard(self):
        with pytest.raises(MatrixEnumerationOverflow):
            list(enumerate_balanced(4, 8, count_cap=10))


class TestExpansion:
    def test_paper_example(self):
        assert expansion(parse_perm("2413"), (1, 2, 5)) == parse_perm("7416253")

    def test_defining_property(self):
        for k in (1, 2, 3):
            for pi in enumerate_sn(k):
                for seq in nontrivial_cycles(k + 1) + [(v,) for v in range(1, k + 2)]:
                    e = expansion(pi, seq)
                    occ = expansion_occurrence(pi, seq)
                    assert len(e) == k + len(seq)
                    assert pattern_of(e, occ) == pi
                    assert region_matrix(e, occ) == cycle_matrix(seq, k + 1)
                    assert occ in stable_occurrences(e, pi)

    def test_uniqueness_across_cycles(self):
        for k in (1, 2, 3):
            for pi in enumerate_sn(k):
                seen = {}
                for seq in nontrivial_cycles(k + 1):
                    e = expansion(pi, seq)
                    assert e not in seen, (pi, seq, seen[e])
                    seen[e] = seq

    def test_validation(self):
        with pytest.raises(InvalidCycle):
            expansion(parse_perm("21"), (1, 1))
        with pytest.raises(InvalidCycle):
            expansion(parse_perm("21"), (4,))

    def test_inflated(self):
        pi = parse_perm("21")
        base = expansion(pi, (1, 3))
        got = expansion_inflated(pi, (1, 3), [inc(2), dec(2)])
        assert len(got) == len(base) + 2
        # the inflated result still contains a stable occurrence of pi
        assert stable_occurrences(got, pi)
        with pytest.raises(InvalidCycle):
            expansion_inflated(pi, (1, 3), [inc(2)])

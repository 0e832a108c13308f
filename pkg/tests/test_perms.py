import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permlogic.errors import (
    ArityMismatch,
    EmptyBlock,
    IndexOutOfRange,
    InvalidWord,
    SizeCapExceeded,
)
from permlogic.perms import (
    Partition,
    Permutation,
    av_set,
    bubble_sort,
    compose,
    conjugate,
    contains_pattern,
    cycle_type,
    cycles,
    dec,
    direct_sum,
    enumerate_sn,
    from_one_line,
    grow,
    inc,
    inflate,
    is_identity,
    is_simple_oracle,
    occurrences,
    parse_perm,
    partitions,
    pattern_of,
    queue_bypass_sort,
    skew_sum,
    stable_occurrences,
    stack_sort,
    support,
)

perm_words = st.integers(min_value=0, max_value=7).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))
)


def perms(draw_words):
    return Permutation(draw_words)


class TestConstruction:
    def test_from_one_line(self):
        assert from_one_line([3, 5, 1, 4, 2]).word == (3, 5, 1, 4, 2)
        assert len(from_one_line([])) == 0

    @pytest.mark.parametrize("bad", [[1, 1], [0], [2], [1, 3]])
    def test_invalid_words(self, bad):
        with pytest.raises(InvalidWord):
            from_one_line(bad)

    def test_text_formats(self):
        assert str(parse_perm("35142")) == "35142"
        assert parse_perm("10,3,1,2,4,5,6,7,8,9").word[0] == 10
        assert parse_perm("") == Permutation([])
        with pytest.raises(InvalidWord):
            parse_perm("3x1")

    def test_points_and_call(self):
        s = parse_perm("35142")
        assert s(1) == 3 and s(5) == 2
        assert s.points[0] == (1, 3)
        with pytest.raises(IndexOutOfRange):
            s(6)


class TestPatterns:
    def test_pattern_of_examples(self):
        s = parse_perm("35142")
        assert pattern_of(s, (1, 2, 3)) == parse_perm("231")
        assert pattern_of(s, tuple(range(1, 6))) == s
        # rank-normalizing the value subsequence (4, 3) gives 21
        assert pattern_of(parse_perm("2413"), (2, 4)) == parse_perm("21")

    def test_pattern_of_validation(self):
        with pytest.raises(IndexOutOfRange):
            pattern_of(parse_perm("21"), (1, 3))

    def test_occurrences_lex_order(self):
        s = parse_perm("2413")
        occ = occurrences(s, parse_perm("231"))
        assert occ == [(1, 2, 3)]  # the pattern of 241 is 231
        assert contains_pattern(s, parse_perm("231"))
        multi = occurrences(parse_perm("3142"), parse_perm("21"))
        assert multi == sorted(multi) and len(multi) == 3

    def test_self_containment_and_trivial(self):
        s = parse_perm("35142")
        assert occurrences(s, s) == [tuple(range(1, 6))]
        assert not contains_pattern(inc(6), parse_perm("21"))
        assert occurrences(s, Permutation([])) == [()]

    @given(perm_words)
    def test_full_restriction_is_identity(self, word):
        s = Permutation(word)
        assert pattern_of(s, tuple(range(1, len(s) + 1))) == s


class TestInflation:
    def test_examples(self):
        assert inflate(parse_perm("21"), [inc(2), inc(1)]) == parse_perm("231")
        assert inflate(parse_perm("1"), [parse_perm("35142")]) == parse_perm("35142")
        assert inflate(parse_perm("321"), [inc(2), inc(1), inc(2)]) == parse_perm("45312")

    def test_errors(self):
        with pytest.raises(ArityMismatch):
            inflate(parse_perm("21"), [inc(1)])
        with pytest.raises(EmptyBlock):
            inflate(parse_perm("21"), [inc(1), Permutation([])])

    def test_sums(self):
        assert direct_sum(inc(2), inc(2)) == inc(4)
        assert skew_sum(inc(1), inc(1)) == parse_perm("21")
        assert direct_sum(Permutation([]), inc(2)) == inc(2)

    @given(
        st.permutations([1, 2, 3]),
        st.lists(
            st.integers(min_value=1, max_value=3).flatmap(
                lambda n: st.permutations(list(range(1, n + 1)))
            ),
            min_size=3,
            max_size=3,
        ),
    )
    def test_blocks_are_patterns_of_inflation(self, skeleton, block_words):
        pi = Permutation(skeleton)
        blocks = [Permutation(w) for w in block_words]
        big = inflate(pi, blocks)
        for b in blocks:
            assert contains_pattern(big, b)
        assert contains_pattern(big, pi)


class TestCycles:
    def test_cycle_type_examples(self):
        assert cycle_type(parse_perm("35142")) == Partition([2, 2, 1])
        assert cycle_type(inc(4)) == Partition([1, 1, 1, 1])
        assert support(inc(4)) == frozenset()
        for n in (2, 4, 6):
            rotated = inflate(parse_perm("21"), [inc(n - 1), inc(1)])
            assert cycle_type(rotated) == Partition([n])

    def test_support_counts(self):
        s = parse_perm("35142")
        assert support(s) == {1, 2, 3, 5}
        ct = cycle_type(s)
        assert ct.size == len(s)
        assert len(support(s)) == len(s) - ct.ones()

    @given(perm_words, perm_words)
    def test_conjugation_preserves_cycle_type(self, w1, w2):
        s = Permutation(w1)
        if len(w2) != len(w1):
            w2 = list(range(1, len(w1) + 1))
        g = Permutation(w2)
        assert cycle_type(conjugate(s, g)) == cycle_type(s)

    def test_compose_convention(self):
        a, b = parse_perm("231"), parse_perm("321")
        # (a o b)(i) = a(b(i))
        assert compose(a, b) == Permutation([a(b(i)) for i in range(1, 4)])


class TestStableOccurrences:
    def test_examples(self):
        assert (1, 4, 6) in stable_occurrences(parse_perm("4356712"), parse_perm("231"))
        assert stable_occurrences(parse_perm("2413"), parse_perm("231")) == []
        s = parse_perm("321")
        assert stable_occurrences(s, parse_perm("1")) == [(2,)]

    @given(perm_words)
    def test_stability_postcondition(self, word):
        s = Permutation(word)
        for k in range(1, min(3, len(s)) + 1):
            for pi in enumerate_sn(k):
                for occ in stable_occurrences(s, pi):
                    assert {s(i) for i in occ} == set(occ)
                    assert pattern_of(s, occ) == pi


class TestSorting:
    def test_stack_examples(self):
        assert stack_sort(parse_perm("231")) == parse_perm("213")
        assert stack_sort(parse_perm("42531")) == parse_perm("24135")
        assert stack_sort(inc(5)) == inc(5)
        assert stack_sort(Permutation([])) == Permutation([])

    def test_bubble_queue_examples(self):
        assert bubble_sort(parse_perm("321")) == parse_perm("213")
        assert queue_bypass_sort(parse_perm("321")) == parse_perm("213")

    @given(perm_words)
    def test_size_preserved(self, word):
        s = Permutation(word)
        for op in (stack_sort, bubble_sort, queue_bypass_sort):
            assert len(op(s)) == len(s)

    @pytest.mark.slow
    def test_sortable_characterizations_exhaustive(self):
        b231 = [parse_perm("231")]
        b321 = [parse_perm("321")]
        for n in range(0, 9):
            av1 = {s.word for s in av_set(n, b231)}
            av2 = {s.word for s in av_set(n, b321)}
            av_both = {s.word for s in av_set(n, b231 + b321)}
            for s in enumerate_sn(n):
                s_sortable = is_identity(stack_sort(s))
                q_sortable = is_identity(queue_bypass_sort(s))
                b_sortable = is_identity(bubble_sort(s))
                assert s_sortable == (s.word in av1)
                assert q_sortable == (s.word in av2)
                assert b_sortable == (s.word in av_both)
                assert b_sortable == (s_sortable and q_sortable)


class TestSimpleAndGrow:
    def test_simple_examples(self):
        assert is_simple_oracle(parse_perm("2413"))
        assert not is_simple_oracle(parse_perm("2134"))
        assert is_simple_oracle(parse_perm("1"))
        assert is_simple_oracle(Permutation([]))
        assert is_simple_oracle(parse_perm("21"))

    def test_no_simple_of_size_three(self):
        assert not any(is_simple_oracle(s) for s in enumerate_sn(3))

    def test_grow_examples(self):
        assert grow(parse_perm("1"), 1) == parse_perm("21")
        with pytest.raises(IndexOutOfRange):
            grow(Permutation([]), 1)

    @given(perm_words.filter(lambda w: len(w) >= 1), st.data())
    def test_grow_extends_h_cycle(self, word, data):
        s = Permutation(word)
        h = data.draw(st.integers(min_value=1, max_value=len(s)))
        grown = grow(s, h)
        assert len(grown) == len(s) + 1
        before = sorted(len(c) for c in cycles(s))
        h_len = next(len(c) for c in cycles(s) if h in c)
        before.remove(h_len)
        after = sorted(len(c) for c in cycles(grown))
        after.remove(h_len + 1)
        assert before == after


class TestEnumeration:
    def test_counts_and_order(self):
        all3 = list(enumerate_sn(3))
        assert len(all3) == 6
        assert all3 == sorted(all3)
        assert list(enumerate_sn(0)) == [Permutation([])]

    def test_cap(self):
        with pytest.raises(SizeCapExceeded):
            list(enumerate_sn(10))

    def test_partitions(self):
        assert [p.parts for p in partitions(4)] == [
            (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)
        ]
        assert [p.parts for p in partitions(0)] == [()]


class TestPartition:
    def test_normalization(self):
        assert Partition([1, 3, 2]).parts == (3, 2, 1)
        assert Partition([2]).padded(2) == Partition([2, 1, 1])
        with pytest.raises(ValueError):
            Partition([0])

    def test_accessors(self):
        lam = Partition([3, 1, 1])
        assert lam.size == 5 and len(lam) == 3 and lam.ones() == 2

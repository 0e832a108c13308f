import itertools

import pytest

from permlogic.errors import NotASentence, SizeCapExceeded, UnboundVariable
from permlogic.evaluate import CompiledFormula, count_models, eval_formula, models
from permlogic.logic import Var, count_exactly, Not, Exists, LtP
from permlogic.parser import parse
from permlogic.perms import (
    Permutation,
    conjugate,
    cycle_type,
    enumerate_sn,
    parse_perm,
)

X, Y = Var("x"), Var("y")


class TestEval:
    def test_order_example(self):
        phi = parse("E x . E y . (x <P y & y <V x)")
        assert eval_formula(parse_perm("35142"), phi)
        assert not eval_formula(parse_perm("123"), phi)

    def test_bijection_marked_example(self):
        phi = parse("E y . (x R y & y R x)")
        s = parse_perm("35142")
        assert eval_formula(s, phi, {X: s.point_at(1)})
        assert eval_formula(s, parse("x R x"), {X: s.point_at(4)})
        three_cycle = parse_perm("231")
        assert not eval_formula(three_cycle, phi, {X: three_cycle.point_at(1)})

    def test_tautology(self):
        for s in (Permutation([]), parse_perm("21"), parse_perm("35142")):
            assert eval_formula(s, parse("A x . x = x"))

    def test_unbound_and_foreign_points(self):
        phi = parse("x <P y")
        s = parse_perm("21")
        with pytest.raises(UnboundVariable):
            eval_formula(s, phi, {X: s.point_at(1)})
        with pytest.raises(UnboundVariable):
            eval_formula(s, phi, {X: (1, 1), Y: s.point_at(2)})

    def test_shadowed_quantifiers(self):
        # same name bound twice; inner binding wins in its scope
        phi = parse("E x . (x <P x | E x . x <V x)")
        assert not eval_formula(parse_perm("312"), phi)

    def test_count_exactly_positional_minimum(self):
        is_min = Not(Exists(Y, LtP(Y, X)))
        phi = count_exactly(1, X, is_min)
        for n in range(1, 6):
            for s in enumerate_sn(n):
                assert eval_formula(s, phi)
        assert not eval_formula(Permutation([]), phi)


class TestModels:
    def test_identity_sentence(self):
        phi = parse("A x . A y . (x <P y <-> x <V y)")
        assert [str(m) for m in models(phi, 4)] == ["1234"]
        assert count_models(phi, 5) == 1
        assert models(phi, 0) == [Permutation([])]

    def test_rejects_free_vars_and_cap(self):
        with pytest.raises(NotASentence):
            models(parse("x = x"), 3)
        with pytest.raises(SizeCapExceeded):
            models(parse("A x . x = x"), 9)

    def test_threaded_matches_sequential(self):
        phi = parse("E x . E y . (x <P y & y <V x)")
        assert models(phi, 5) == models(phi, 5, threads=4)

    def test_word_lex_order(self):
        phi = parse("E x . E y . (x <P y & y <V x)")
        out = models(phi, 4)
        assert out == sorted(out)

    def test_cache_does_not_change_results(self):
        phi = parse("E x . (E y . (x <P y & y <V x)) & (E y . (x <P y & y <V x))")
        for n in range(0, 5):
            assert models(phi, n, cache=True) == models(phi, n, cache=False)


class TestInvariance:
    def test_word_determines_semantics(self):
        # two independently constructed permutations with the same word are
        # indistinguishable to eval; points carry no extra identity
        phi = parse("E x . E y . (x <P y & y <V x)")
        a = Permutation([2, 4, 1, 3])
        b = parse_perm("2413")
        assert eval_formula(a, phi) == eval_formula(b, phi)

    def test_ob_sentences_constant_on_conjugacy_classes(self):
        sentences = [
            parse("E x . x R x"),
            parse("E x . E y . (!x = y & x R y & y R x)"),
            parse("A x . E y . (x R y & !x = y)"),
            parse("E x . E y . E z . (x R y & y R z & z R x & !x = y & !y = z & !x = z)"),
        ]
        for n in range(0, 6):
            for phi in sentences:
                by_type = {}
                for s in enumerate_sn(n):
                    value = eval_formula(s, phi)
                    key = cycle_type(s)
                    assert by_type.setdefault(key, value) == value

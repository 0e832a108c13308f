import itertools

import pytest

from permlogic.errors import UnsupportedConstraint
from permlogic.evaluate import CompiledFormula, eval_formula, models
from permlogic.logic import free_vars, qdepth, Var
from permlogic.parser import parse, print_formula
from permlogic.patterns import (
    BarredPattern,
    DecoratedPattern,
    GridSpec,
    MeshPattern,
    barred_occurrences,
    compile_avoids,
    compile_barred,
    compile_classical,
    compile_contains,
    compile_decorated,
    compile_grid,
    compile_grid_branch,
    compile_interval,
    compile_mesh,
    compile_minus_decomposable,
    compile_plus_decomposable,
    compile_simple,
    decorated_occurrences,
    default_vars,
    grid_member_oracle,
    mesh_occurrences,
)
from permlogic.perms import (
    Permutation,
    av_set,
    contains_pattern,
    enumerate_sn,
    is_simple_oracle,
    occurrences,
    parse_perm,
    skew_sum,
)

P231 = parse_perm("231")
CATALAN = [1, 1, 2, 5, 14, 42, 132]


def formula_occurrences(sigma, phi, k):
    comp = CompiledFormula(phi, default_vars(k))
    pts = [tuple(p) for p in sigma.points]
    return [
        occ
        for occ in itertools.combinations(range(1, len(sigma) + 1), k)
        if comp.run(sigma, tuple(pts[p - 1] for p in occ))
    ]


class TestClassical:
    def test_231_shape(self):
        assert compile_classical(P231) == parse("(x <P y & y <P z) & (z <V x & x <V y)")

    def test_singleton_is_trivial_truth(self):
        phi = compile_classical(parse_perm("1"))
        assert phi == parse("x = x")
        assert free_vars(phi) == {Var("x")}

    def test_formula_matches_oracle(self):
        for k in (1, 2, 3):
            for pi in enumerate_sn(k):
                phi = compile_classical(pi)
                for n in range(0, 6):
                    for sigma in enumerate_sn(n):
                        assert formula_occurrences(sigma, phi, k) == occurrences(sigma, pi)

    def test_contains_and_qdepth(self):
        phi = compile_contains(P231)
        assert qdepth(phi) == 3
        assert [str(m) for m in models(phi, 3)] == ["231"]
        assert [str(m) for m in models(compile_contains(parse_perm("12")), 2)] == ["12"]

    def test_avoids_catalan(self):
        phi = compile_avoids([P231])
        for n in range(0, 7):
            assert len(models(phi, n)) == CATALAN[n]

    def test_avoids_21_is_increasing(self):
        phi = compile_avoids([parse_perm("21")])
        for n in range(0, 6):
            got = models(phi, n)
            assert [str(m) for m in got] == ["".join(map(str, range(1, n + 1)))]


class TestMesh:
    PAPER = MeshPattern(parse_perm("132"), {(0, 2), (1, 2), (2, 2)})

    def test_paper_formula(self):
        expected = parse(
            "((((x <P y & y <P z) & (x <V z & z <V y))"
            " & (!(E t . (t <P x & (z <V t & t <V y)))))"
            " & (!(E t . ((x <P t & t <P y) & (z <V t & t <V y)))))"
            " & (!(E t . ((y <P t & t <P z) & (z <V t & t <V y))))"
        )
        assert compile_mesh(self.PAPER) == expected

    def test_empty_shading_is_classical(self):
        for pi in (parse_perm("1"), parse_perm("21"), P231):
            assert compile_mesh(MeshPattern(pi, set())) == compile_classical(pi)

    def test_oracle_agreement(self):
        cases = [
            self.PAPER,
            MeshPattern(parse_perm("21"), {(1, 1)}),
            MeshPattern(parse_perm("12"), {(0, 0), (2, 2)}),
            MeshPattern(parse_perm("1"), {(0, 0)}),
        ]
        for mp in cases:
            phi = compile_mesh(mp)
            k = len(mp.pattern)
            for n in range(0, 6):
                for sigma in enumerate_sn(n):
                    assert formula_occurrences(sigma, phi, k) == mesh_occurrences(sigma, mp)

    def test_cell_validation(self):
        with pytest.raises(ValueError):
            MeshPattern(parse_perm("21"), {(3, 0)})


class TestBarred:
    PAPER = BarredPattern(parse_perm("1324"), {1, 3})

    def test_paper_formula(self):
        expected = parse(
            "((x <P y) & (x <V y))"
            " & (!(E u . E t . ((u <P x & x <P t & t <P y)"
            " & (u <V t & t <V x & x <V y))))"
        )
        got = compile_barred(self.PAPER)
        # same shape: unbarred 12 formula plus the non-extendability clause
        assert got == parse(print_formula(got))
        assert free_vars(got) == {Var("x"), Var("y")}
        assert got == expected

    def test_no_bars_is_classical(self):
        assert compile_barred(BarredPattern(P231, set())) == compile_classical(P231)

    def test_validation(self):
        with pytest.raises(ValueError):
            BarredPattern(parse_perm("21"), {1, 2})

    def test_oracle_agreement(self):
        cases = [
            self.PAPER,
            BarredPattern(parse_perm("21"), {1}),
            BarredPattern(P231, {2}),
        ]
        for bp in cases:
            phi = compile_barred(bp)
            k = len(bp.pattern) - len(bp.barred)
            for n in range(0, 6):
                for sigma in enumerate_sn(n):
                    assert formula_occurrences(sigma, phi, k) == barred_occurrences(sigma, bp)


class TestDecorated:
    PAPER = DecoratedPattern(parse_perm("21"), [((1, 1), parse_perm("12"))])

    def test_paper_formula(self):
        expected = parse(
            "((x <P y) & (y <V x))"
            " & (!(E t . E u . ((((x <P t & t <P y) & (x <P u & u <P y))"
            " & ((y <V t & t <V x) & (y <V u & u <V x)))"
            " & ((t <P u) & (t <V u)))))"
        )
        assert compile_decorated(self.PAPER) == expected

    def test_multi_cell_constraint_rejected(self):
        with pytest.raises(UnsupportedConstraint):
            DecoratedPattern(parse_perm("21"), [(((1, 1), (1, 2)), parse_perm("12"))])

    def test_size_one_forbidden_pattern_is_emptiness(self):
        dp = DecoratedPattern(parse_perm("21"), [((1, 1), parse_perm("1"))])
        mp = MeshPattern(parse_perm("21"), {(1, 1)})
        phi_dp, phi_mp = compile_decorated(dp), compile_mesh(mp)
        for n in range(0, 6):
            for sigma in enumerate_sn(n):
                assert formula_occurrences(sigma, phi_dp, 2) == formula_occurrences(
                    sigma, phi_mp, 2
                )

    def test_oracle_agreement(self):
        cases = [
            self.PAPER,
            DecoratedPattern(P231, [((0, 0), parse_perm("21")), ((3, 3), parse_perm("1"))]),
        ]
        for dp in cases:
            phi = compile_decorated(dp)
            k = len(dp.pattern)
            for n in range(0, 6):
                for sigma in enumerate_sn(n):
                    assert formula_occurrences(sigma, phi, k) == decorated_occurrences(sigma, dp)


class TestGrid:
    PAPER = GridSpec(
        [
            [[parse_perm("123")], None],
            [[parse_perm("21")], [parse_perm("12")]],
        ]
    )

    def test_paper_branch_literal(self):
        expected = parse(
            "E lv . E lh . ("
            "  (!(E x . E y . E z . ("
            "    ((x <P lv | x = lv) & (y <P lv | y = lv) & (z <P lv | z = lv))"
            "    & ((lh <V x) & (lh <V y) & (lh <V z))"
            "    & ((x <P y & y <P z) & (x <V y & y <V z)))))"
            "& (!(E x . E y . ("
            "    ((x <P lv | x = lv) & (y <P lv | y = lv))"
            "    & ((x <V lh | x = lh) & (y <V lh | y = lh))"
            "    & ((x <P y) & (y <V x)))))"
            "& (!(E x . E y . ("
            "    ((lv <P x) & (lv <P y))"
            "    & ((x <V lh | x = lh) & (y <V lh | y = lh))"
            "    & ((x <P y) & (x <V y)))))"
            "& (!(E x . ((lv <P x) & (lh <V x))))"
            ")"
        )
        assert compile_grid_branch(self.PAPER, 0, 0) == expected

    def test_one_by_one_grid_is_avoidance(self):
        basis = [P231, parse_perm("12")]
        g = GridSpec([[basis]])
        assert compile_grid(g) == compile_avoids(basis)

    def test_membership_oracle(self):
        phi = compile_grid(self.PAPER)
        for n in range(0, 6):
            expected = [str(s) for s in enumerate_sn(n) if grid_member_oracle(s, self.PAPER)]
            assert [str(m) for m in models(phi, n)] == expected

    def test_empty_permutation_member(self):
        assert grid_member_oracle(Permutation([]), self.PAPER)
        assert models(compile_grid(self.PAPER), 0) == [Permutation([])]

    def test_three_band_grid(self):
        g = GridSpec([[None, [parse_perm("21")]], [[parse_perm("21")], None], [None, None]])
        phi = compile_grid(g)
        for n in range(0, 5):
            expected = [str(s) for s in enumerate_sn(n) if grid_member_oracle(s, g)]
            assert [str(m) for m in models(phi, n)] == expected


class TestSubstitutionDecomposition:
    def test_simple_models(self):
        phi = compile_simple()
        assert [str(m) for m in models(phi, 4)] == ["2413", "3142"]
        for n in range(0, 6):
            expected = [str(s) for s in enumerate_sn(n) if is_simple_oracle(s)]
            assert [str(m) for m in models(phi, n)] == expected

    def test_sizes_up_to_two_are_simple(self):
        phi = compile_simple()
        for n in (0, 1, 2):
            assert len(models(phi, n)) == len(list(enumerate_sn(n)))

    def test_plus_decomposable(self):
        phi = compile_plus_decomposable()
        assert [str(m) for m in models(phi, 2)] == ["12"]
        assert models(phi, 1) == []
        from permlogic.perms import direct_sum, inc

        for n in range(0, 5):
            expected = [
                str(s)
                for s in enumerate_sn(n)
                if any(
                    s == direct_sum(a, b)
                    for cut in range(1, n)
                    for a in enumerate_sn(cut)
                    for b in enumerate_sn(n - cut)
                )
            ]
            assert [str(m) for m in models(phi, n)] == expected

    def test_minus_decomposable(self):
        phi = compile_minus_decomposable()
        assert [str(m) for m in models(phi, 2)] == ["21"]
        for n in range(0, 5):
            expected = [
                str(s)
                for s in enumerate_sn(n)
                if any(
                    s == skew_sum(a, b)
                    for cut in range(1, n)
                    for a in enumerate_sn(cut)
                    for b in enumerate_sn(n - cut)
                )
            ]
            assert [str(m) for m in models(phi, n)] == expected

    def test_interval_sentence_on_singletons(self):
        phi = compile_interval()
        assert models(phi, 1) == []
        assert models(phi, 2) == []
        assert len(models(phi, 3)) == 6

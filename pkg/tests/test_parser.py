import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permlogic.errors import MixedSignature, ParseError
from permlogic.logic import (
    And,
    Eq,
    Exists,
    Forall,
    Iff,
    Implies,
    LtP,
    LtV,
    Not,
    Or,
    Rel,
    Var,
)
from permlogic.parser import parse, print_formula
from permlogic.randgen import random_formula

X, Y, Z = Var("x"), Var("y"), Var("z")


class TestParse:
    def test_order_sentence(self):
        phi = parse("E x . E y . (x <P y & y <V x)")
        assert phi == Exists(X, Exists(Y, And(LtP(X, Y), LtV(Y, X))))

    def test_bijection_sentence(self):
        assert parse("A x . x R x") == Forall(X, Rel(X, X))

    def test_chain_desugaring(self):
        assert parse("x <P y <P z") == And(LtP(X, Y), LtP(Y, Z))
        assert parse("x <P y <V z") == And(LtP(X, Y), LtV(Y, Z))
        assert parse("x = y = z") == And(Eq(X, Y), Eq(Y, Z))

    def test_precedence(self):
        got = parse("x = x | y = y & z = z")
        assert got == Or(Eq(X, X), And(Eq(Y, Y), Eq(Z, Z)))
        got = parse("x = x -> y = y -> z = z")
        assert got == Implies(Eq(X, X), Implies(Eq(Y, Y), Eq(Z, Z)))
        got = parse("x = x <-> y = y <-> z = z")
        assert got == Iff(Iff(Eq(X, X), Eq(Y, Y)), Eq(Z, Z))
        assert parse("!x = x & y = y") == And(Not(Eq(X, X)), Eq(Y, Y))

    def test_quantifier_maximal_scope(self):
        assert parse("E x . x = x & x = x") == Exists(X, And(Eq(X, X), Eq(X, X)))
        assert parse("(E x . x = x) & y = y") == And(Exists(X, Eq(X, X)), Eq(Y, Y))

    def test_position_reporting(self):
        with pytest.raises(ParseError) as err:
            parse("E x .\n x <P ?")
        assert err.value.line == 2
        with pytest.raises(ParseError):
            parse("x <P")
        with pytest.raises(ParseError):
            parse("E R . x = x")
        with pytest.raises(ParseError):
            parse("x <P y y")

    def test_reserved_names(self):
        parse("_t0 = _t0")  # generated bound names round-trip
        with pytest.raises(ParseError):
            parse("_x = _x")

    def test_mixed_signature_rejected(self):
        with pytest.raises(MixedSignature):
            parse("x R y & x <P y")


class TestPrint:
    def test_atom_is_bare(self):
        assert print_formula(LtP(X, Y)) == "x <P y"
        assert print_formula(Rel(X, Y)) == "x R y"

    def test_canonical_idempotence(self):
        text = print_formula(parse("E x . E y . (x <P y & y <V x)"))
        assert print_formula(parse(text)) == text

    @given(st.integers(min_value=0, max_value=2**30), st.booleans())
    def test_roundtrip_random(self, seed, use_ob):
        rng = random.Random(seed)
        phi = random_formula(
            rng,
            signature="OB" if use_ob else "TO",
            quant_budget=3,
            depth=4,
            scope=(Var("a"), Var("b")),
        )
        assert parse(print_formula(phi)) == phi

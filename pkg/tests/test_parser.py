"""DSL parsing, rendering, round-trips, and error locations."""

import random
from fractions import Fraction

import pytest

from ncweyl.algebra import Expr, UnknownAlgebra, UnknownGenerator, normal_order
from ncweyl.coeff import Coefficient
from ncweyl.operators import DEFORMED, HATBOSE, HBAR, I, KAPPA, THETA, XI
from ncweyl.parser import ParseError, parse, render
from conftest import random_expr

ONE = Coefficient.one()


def test_commutator_function_form():
    e = parse("comm(xh1, xh2)", "deformed")
    assert e == Expr.identity(DEFORMED, I * XI ** 2 * THETA)
    assert render(e) == "i*xi^2*theta"


def test_defining_relation_is_zero():
    assert render(parse("xh1*ph1 - ph1*xh1 - i*hbar", "deformed")) == "0"


def test_adjoint_builds_number_operator():
    e = parse("adj(ah1)*ah1", "hatbose")
    assert e == Expr.word(HATBOSE, ("ah1_dag", "ah1"))
    assert render(e) == "adj(ah1)*ah1"


def test_parse_normalizes():
    assert render(parse("ph1*xh1", "deformed")) == "xh1*ph1 - i*hbar"


def test_rational_literals_and_division():
    assert parse("3/4", "deformed") == Expr.identity(DEFORMED, Coefficient.rational(3, 4))
    assert parse("1/(2*hbar)", "deformed") == Expr.identity(
        DEFORMED, ONE / (2 * HBAR)
    )


def test_rendered_cross_commutator_reparses():
    text = "(i/hbar)*xi^2*theta^(1/2)*eta^(1/2)"
    e = parse(text, "hatbose")
    assert e == Expr.identity(HATBOSE, KAPPA)
    assert render(e) == text


def test_precedence():
    # * binds tighter than +; ^ tighter than *
    e = parse("xh1 + xh2*ph1", "deformed")
    want = Expr.generator(DEFORMED, "xh1") + Expr.word(DEFORMED, ("xh2", "ph1"))
    assert e == want
    e = parse("2*xh1^2", "deformed")
    assert e == 2 * Expr.word(DEFORMED, ("xh1", "xh1"))
    e = parse("-xh1 + xh2", "deformed")
    assert e == -Expr.generator(DEFORMED, "xh1") + Expr.generator(DEFORMED, "xh2")


def test_precedence_against_explicit_parenthesization(rng):
    # random two-operator combinations match their fully bracketed forms
    gens = ("xh1", "xh2", "ph1", "ph2")
    for _ in range(200):
        a, b, c = (rng.choice(gens) for _ in range(3))
        flat = parse(f"{a} + {b}*{c}", "deformed")
        bracketed = parse(f"{a} + ({b}*{c})", "deformed")
        assert flat == bracketed
        flat = parse(f"{a}*{b}^2", "deformed")
        bracketed = parse(f"{a}*({b}^2)", "deformed")
        assert flat == bracketed


def test_roundtrip_random_exprs(rng):
    tables = (DEFORMED, HATBOSE)
    for _ in range(300):
        e = normal_order(random_expr(rng, rng.choice(tables), max_terms=3, max_len=6))
        text = render(e)
        assert parse(text, e.algebra) == e


def test_error_locations():
    with pytest.raises(ParseError) as err:
        parse("xh1 + (xh2", "deformed")
    assert err.value.line == 1 and err.value.column == 11
    with pytest.raises(ParseError) as err:
        parse("xh1 *\n* xh2", "deformed")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse("xh1 xh2", "deformed")


def test_unknown_names():
    with pytest.raises(UnknownGenerator):
        parse("a1", "deformed")  # a1 lives in bose, not deformed
    with pytest.raises(UnknownAlgebra):
        parse("xh1", "nosuch")


def test_operator_misuse_errors():
    with pytest.raises(ParseError):
        parse("1/xh1", "deformed")
    with pytest.raises(ParseError):
        parse("xh1^(1/2)", "deformed")
    with pytest.raises(ParseError):
        parse("xh1^-1", "deformed")


def test_zero_renders_as_zero():
    assert render(Expr.zero(DEFORMED)) == "0"
    assert render(Expr.identity(DEFORMED, I * HBAR)) == "i*hbar"


def test_fractional_exponent_forms():
    assert parse("theta^(1/2)", "deformed") == Expr.identity(DEFORMED, THETA.sqrt())
    assert parse("theta^(-1/2)", "deformed") == Expr.identity(
        DEFORMED, ONE / THETA.sqrt()
    )
    assert parse("2^(1/2)", "deformed") == Expr.identity(
        DEFORMED, Coefficient.rational(2).sqrt()
    )

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depict.poly import (
    GREVLEX,
    LEX,
    MAX_EXPONENT,
    CoefficientField,
    ContextMismatchError,
    ParseError,
    Polynomial,
    UnknownVariableError,
    VarContext,
    arith,
    block_order,
    compare_monomials,
    parse_poly,
)

XY = VarContext(("x", "y"))
XYZ = VarContext(("x", "y", "z"))


def P(text, ctx=XY):
    return parse_poly(text, ctx)


def test_parse_basic():
    f = P("x*y + 1")
    assert f.as_dict() == {(1, 1): 1, (0, 0): 1}
    assert P("0").is_zero()
    assert P("x^2 - x").as_dict() == {(2, 0): 1, (1, 0): -1}


def test_parse_rationals_and_powers():
    f = P("1/2*x**2 - (x - y)^2 + 3")
    assert f == Polynomial(XY, {(2, 0): Fraction(-1, 2), (1, 1): 2, (0, 2): -1, (0, 0): 3})
    assert P("-x^2") == -P("x^2")
    with pytest.raises(ParseError):
        P("2(x + 1)")  # no implicit multiplication


def test_parse_errors_carry_position():
    with pytest.raises(UnknownVariableError) as e:
        P("q + 1")
    assert e.value.name == "q" and e.value.pos == 0
    with pytest.raises(ParseError) as e:
        P("x + * y")
    assert e.value.pos == 4
    with pytest.raises(ParseError):
        P("(x + y")
    with pytest.raises(ParseError):
        P("x^y")


def test_arith_examples():
    assert arith(P("x + y"), P("x - y"), "add") == P("2*x")
    assert arith(P("x"), P("x - 1"), "mul") == P("x^2 - x")
    assert arith(P("x^3 + y"), P("0"), "mul").is_zero()
    assert arith(P("x"), P("x"), "sub").is_zero()
    with pytest.raises(ContextMismatchError):
        arith(P("x"), parse_poly("x", XYZ), "add")


def test_compare_monomials():
    assert compare_monomials((1, 0), (0, 5), LEX) == 1
    assert compare_monomials((2, 0), (1, 1), GREVLEX) == 1
    assert compare_monomials((0, 3), (2, 0), GREVLEX) == 1
    for order in (LEX, GREVLEX, block_order(1)):
        assert compare_monomials((1, 2), (1, 2), order) == 0
    # grevlex tie-break: smaller last exponent wins
    assert compare_monomials((1, 1, 0), (1, 0, 1), GREVLEX) == 1
    with pytest.raises(ValueError):
        compare_monomials((1, 0), (1, 0, 0), LEX)


def test_block_order_eliminates_first_block():
    # any monomial with x beats any monomial without
    assert compare_monomials((1, 0, 0), (0, 5, 5), block_order(1)) == 1
    assert compare_monomials((0, 2, 0), (0, 1, 1), block_order(1)) == 1


def test_exponent_overflow_is_checked():
    big = Polynomial.monomial(XY, (MAX_EXPONENT, 0))
    with pytest.raises(OverflowError):
        big * P("x")


def test_prime_field_mode():
    F7 = VarContext(("x", "y"), CoefficientField(7))
    f = parse_poly("8*x + 1/2", F7)
    assert f.as_dict() == {(1, 0): 1, (0, 0): 4}
    assert (parse_poly("7*x", F7)).is_zero()
    with pytest.raises(ValueError):
        CoefficientField(8)


def test_substitute_and_evaluate():
    f = P("x^2*y - 1")
    g = f.substitute([parse_poly("x*z", XYZ), parse_poly("y + 1", XYZ)])
    assert g == parse_poly("x^2*z^2*y + x^2*z^2 - 1", XYZ)
    assert f.evaluate({"x": 2, "y": Fraction(1, 4)}) == 0


def test_to_context_by_name():
    f = P("x*y")
    g = f.to_context(VarContext(("y", "w", "x")))
    assert str(g) == "y*x"  # printed in the target context's variable order
    assert g.to_context(XY) == f
    with pytest.raises(ContextMismatchError):
        parse_poly("z", XYZ).to_context(XY)


# ---------------------------------------------------------------------------
# properties

coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=4)
monos = st.tuples(*[st.integers(0, 4)] * 3)
polys = st.dictionaries(monos, coeffs, max_size=5).map(lambda d: Polynomial(XYZ, d))
orders = st.sampled_from([LEX, GREVLEX, block_order(1), block_order(2)])


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f - f == Polynomial(XYZ, {})


@settings(max_examples=150, deadline=None)
@given(polys)
def test_parse_print_round_trip(f):
    assert parse_poly(str(f), XYZ) == f


@settings(max_examples=200, deadline=None)
@given(monos, monos, monos, orders)
def test_monomial_order_axioms(a, b, c, order):
    ab = compare_monomials(a, b, order)
    assert compare_monomials(b, a, order) == -ab
    if ab >= 0 and compare_monomials(b, c, order) >= 0:
        assert compare_monomials(a, c, order) >= 0
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert compare_monomials(ac, bc, order) == ab
    assert compare_monomials(a, (0, 0, 0), order) >= 0


@settings(max_examples=100, deadline=None)
@given(polys, orders)
def test_terms_sorted_descending(f, order):
    g = f.with_order(order)
    ms = [m for m, _ in g.terms]
    for a, b in zip(ms, ms[1:]):
        assert compare_monomials(a, b, order) == 1
    assert g == f

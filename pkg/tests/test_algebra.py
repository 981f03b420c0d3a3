from fractions import Fraction

import pytest

from radialfol.algebra import (
    MPoly,
    NotDivisible,
    ParseError,
    PolyMap,
    RatFunc,
    UnknownVariable,
    divide_by_var_power,
    generic_order,
    parse_poly,
    rational_roots,
    resultant,
    substitute,
    univariate_gcd,
)

XYZ = ("x", "y", "z")


def P(s, vars=XYZ):
    return parse_poly(s, vars)


def test_parse_reads_terms():
    f = P("y^2 + x*z^3")
    assert f.terms == {(0, 2, 0): 1, (1, 0, 3): 1}


@pytest.mark.parametrize("text", ["0", "3/2*x - 3/2*x", "x*y - y*x"])
def test_parse_cancels_to_zero(text):
    f = P(text)
    assert f.is_zero() and f.terms == {}


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        P("x +* y")
    with pytest.raises(UnknownVariable):
        P("w + 1")


def test_printing_round_trips():
    for s in ["y^2 + x*z^3", "-1/3*x^2*y + 7", "x - y - z"]:
        f = P(s)
        assert P(str(f)) == f


def test_substitute_monomial_chart():
    m = PolyMap.from_strings(XYZ, XYZ, {"x": "x", "y": "y", "z": "y*z"})
    assert substitute(P("z^3"), m) == P("y^3*z^3")
    assert substitute(P("y^2 - x*z^2"), m) == P("y^2 - x*y^2*z^2")
    assert substitute(P("y^2 + x*z^3"), PolyMap.identity(XYZ)) == P("y^2 + x*z^3")


@pytest.mark.parametrize("f, expected", [("y^2 + x*z^3", 2), ("x", 0), ("x*y*z + z^5", 2), ("x^3*z + y^4", 1)])
def test_generic_order(f, expected):
    assert generic_order(P(f), ("y", "z")) == expected


def test_generic_order_of_zero_is_infinite():
    assert generic_order(P("0"), ("y", "z")) == float("inf")


def test_divide_by_var_power():
    assert divide_by_var_power(P("y^2*x + y^3"), "y", 2) == P("x + y")
    assert divide_by_var_power(P("-x^2"), "x", 2) == P("-1")
    with pytest.raises(NotDivisible):
        divide_by_var_power(P("x + y"), "y", 1)


def test_resultant_examples():
    assert resultant(P("-z"), P("y"), "z") == P("y")
    assert resultant(P("-z^2"), P("2*y*z"), "z").is_zero()
    # Sylvester convention with rows of f first: Res(y-1, y+1) = 2
    r = resultant(P("y - 1"), P("y + 1"), "y")
    assert r.is_constant() and r.constant_value() == 2


def test_resultant_detects_common_root():
    f = P("(y - 2)*(y + x)")
    g = P("(y - 2)*(y^2 + 1)")
    assert resultant(f, g, "y").is_zero()


def test_gcd_and_roots():
    X = ("t",)
    f = parse_poly("(t - 1)^2*(t + 1/2)*(t^2 + 1)", X)
    g = univariate_gcd(f, f.diff("t"))
    assert g.degree_in("t") == 1
    assert sorted(rational_roots(f)) == [Fraction(-1, 2), Fraction(1)]


def test_ratfunc_derivative_and_cancellation():
    phi = RatFunc(P("x*y + z^2"), P("y"))
    d = phi.diff("y")
    assert d == RatFunc(P("-z^2"), P("y^2"))
    assert RatFunc(P("x*y"), P("y")) == RatFunc(P("x"), P("1"))


def test_polymap_composition():
    a = PolyMap.from_strings(XYZ, XYZ, {"x": "x", "y": "y", "z": "y*z"})
    b = PolyMap.from_strings(XYZ, XYZ, {"x": "x", "y": "y*z", "z": "z"})
    c = a.then(b)
    f = P("x + y^2 + z^3")
    assert substitute(f, c) == substitute(substitute(f, a), b)


def test_mpoly_evaluation_is_exact():
    f = P("1/3*x^2 - y*z")
    assert f((Fraction(1, 2), 3, Fraction(1, 7))) == Fraction(1, 12) - Fraction(3, 7)
    assert isinstance(MPoly.const(XYZ, 5).constant_value(), Fraction)

from fractions import Fraction

import pytest

from freecourant.poly import (
    Derivation,
    NvarsMismatch,
    Poly,
    PolyParseError,
    apply_derivation,
    commutator,
    monomials,
    parse_derivation,
    parse_poly,
)

XY = ["x", "y"]


def P(text, names=XY):
    return parse_poly(text, names)


def test_difference_of_squares():
    assert P("x + 1") * P("x - 1") == P("x^2 - 1")


def test_additive_identity():
    p = P("3/2*x^2*y - x + 1")
    assert p + Poly.zero(2) == p


def test_rational_product():
    assert P("1/2*x") * P("2/3*y") == P("1/3*x*y")


def test_format_round_trip():
    p = P("3/2*x^2*y - x + 1")
    assert p.format(XY) == "3/2*x^2*y - x + 1"
    assert parse_poly(p.format(XY), XY) == p


def test_whitespace_is_insignificant():
    assert P(" 3 / 2 * x ^ 2 * y-x+1 ") == P("3/2*x^2*y - x + 1")


@pytest.mark.parametrize("bad", ["x^", "1/0", "z", "x**2", "2*"])
def test_parse_errors_report_a_column(bad):
    with pytest.raises(PolyParseError) as ei:
        P(bad)
    assert "column" in str(ei.value)


def test_nvars_mismatch():
    with pytest.raises(NvarsMismatch):
        Poly.var(0, 1) + Poly.var(0, 2)


def test_power_rule():
    dx = Derivation.partial(0, 1)
    assert apply_derivation(dx, P("x^2", ["x"])) == P("2*x", ["x"])


def test_euler_operator():
    xdx = parse_derivation(["x"], ["x"])
    assert xdx(P("x^3", ["x"])) == P("3*x^3", ["x"])


def test_derivation_kills_constants():
    D = parse_derivation(["x^2*y", "y - 1"], XY)
    assert not D(Poly.const(Fraction(7, 3), 2))


def test_commutator_dx_xdx():
    dx = parse_derivation(["1"], ["x"])
    xdx = parse_derivation(["x"], ["x"])
    assert commutator(dx, xdx) == dx
    for k in range(6):
        f = Poly.monomial((k,))
        assert commutator(dx, xdx)(f) == dx(xdx(f)) - xdx(dx(f))


def test_commutator_trivial_cases():
    D = parse_derivation(["x*y", "x^2"], XY)
    assert not commutator(D, D)
    assert not commutator(Derivation.partial(0, 2), Derivation.partial(1, 2))


def test_monomials_count_and_order():
    ms = monomials(2, 2)
    assert len(ms) == 6
    assert ms[0] == (0, 0)
    assert sum(ms[-1]) == 2

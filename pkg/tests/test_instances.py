from fractions import Fraction

import pytest

from freecourant import Dorfman, StructureConstants
from freecourant.poly import Poly, parse_poly


def test_abelian_bracket():
    A = StructureConstants.abelian(2)
    assert not A.bracket(A.basis(0), A.basis(1))


def test_n2_table(sc_n2):
    e1, e2 = sc_n2.basis(0), sc_n2.basis(1)
    assert sc_n2.bracket(e1, e1) == e2
    assert not sc_n2.bracket(e1, e2)


def test_n1_bracket(sc_bad):
    e = sc_bad.basis(0)
    assert sc_bad.bracket(e, e) == e


def test_sc_rejects_nonconstant_coefficients(sc_n2):
    with pytest.raises(ValueError):
        sc_n2.act(parse_poly("x", ["x"]), sc_n2.basis(0))


def test_sc_config_dim_mismatch():
    with pytest.raises(ValueError):
        StructureConstants.from_config({"type": "sc", "dim": 3, "table": [[[0]]]})


def test_sc_parse(sc_n2):
    assert sc_n2.parse("[e1, e1] + 2 e2") == sc_n2.basis(1) * 3


def test_representation_ok(sc_n2):
    # rep(e2) must equal [rep e1, rep e1] = 0
    assert sc_n2.representation_ok([[[1, 2], [0, 3]], [[0, 0], [0, 0]]])
    assert not sc_n2.representation_ok([[[0, 1], [0, 0]], [[1, 0], [0, 1]]])


@pytest.fixture(scope="module")
def D2():
    return Dorfman(["x", "y"])


def test_cartan_formula(dorfman1):
    D = dorfman1
    assert D.bracket(D.parse("∂x"), D.parse("x*dx")) == D.parse("dx")


def test_self_bracket_is_exact(D2):
    u = D2.parse("y*∂x + x^2*∂y + x*y*dx - dy")
    X, xi = u.vec, u.form
    iX = sum((a * b for a, b in zip(X, xi)), Poly.zero(2))
    assert D2.bracket(u, u) == D2.element(None, [iX.diff(0), iX.diff(1)])


def test_coordinate_fields_commute(D2):
    assert not D2.bracket(D2.parse("∂x"), D2.parse("∂y"))


def test_pairing_convention(D2):
    assert D2.pairing(D2.parse("∂x"), D2.parse("dx")) == Poly.const(Fraction(1, 2), 2)
    assert not D2.pairing(D2.parse("∂x"), D2.parse("∂y"))
    u, v = D2.parse("x*∂x + dy"), D2.parse("y*dx + ∂y")
    assert D2.pairing(u, v) == D2.pairing(v, u)


def test_D(dorfman1, D2):
    D = dorfman1
    assert D.D(parse_poly("x", ["x"])) == D.parse("2*dx")
    assert not D.D(Poly.one(1))
    for text in ("x*∂x + y*dx", "∂y + x^2*dy - dx"):
        u = D2.parse(text)
        assert D2.D(D2.pairing(u, u)) == D2.symmetrized(u, u)


def test_dorfman_format_round_trip(D2):
    for text in ("∂x + x*dx", "-2*x*y*∂y + (x + 1)*dx", "3/2*dy"):
        u = D2.parse(text)
        assert D2.parse(D2.format(u)) == u
    assert D2.parse("@x") == D2.parse("∂x")


def test_dorfman_parse_error(D2):
    with pytest.raises(ValueError):
        D2.parse("∂z")

import pytest

from freecourant import FreeLeibniz, build_quotient, check_symmetric
from freecourant.poly import Poly
from freecourant.symmetric import j1_generator, j2_generator, s2b_residual

from conftest import module


@pytest.fixture(scope="module")
def F2():
    return FreeLeibniz(module(["x"], ["e1", "e2"], [["1"], ["1"]]), 3, 2)


def x():
    return Poly.var(0, 1)


def test_j1_scalar_f_vanishes(F2):
    X, Y = F2.parse("e1"), F2.parse("(x*e2)⊗(e1)")
    assert not j1_generator(F2, Poly.const(3, 1), X, Y)


def test_j1_diagonal_vanishes(F2):
    e = F2.parse("e1")
    assert not j1_generator(F2, x(), e, e)


def test_j1_weight_one(F2):
    got = j1_generator(F2, x(), F2.parse("e1"), F2.parse("e2"))
    assert got == F2.parse("(e1)⊗(x*e2) + (x*e2)⊗(e1) - (x*e1)⊗(e2) - (e2)⊗(x*e1)")


def test_j2_scalar_f_vanishes(F2):
    X, Y, Z = (F2.parse(t) for t in ("e1", "e2", "(x*e1)"))
    assert not j2_generator(F2, Poly.const(2, 1), X, Y, Z)


def test_j2_recorded_value(quotient33):
    F = quotient33.free
    e = F.parse("e")
    # [xe, 2 e⊗e] - (e⊗e)∘(xe) - (xe)∘(e⊗e): 2 - 1 - 1 copies of (xe)⊗e⊗e
    assert not j2_generator(F, x(), e, e, e)
    # hand expansion with X = xe, Y = Z = e, using [m⊗w, v] = [m,[w,v]] - [w,[m,v]]
    got = j2_generator(F, x(), F.parse("(x*e)"), e, e)
    want = "2 (x^2*e)⊗(e)⊗(e) - 2 (x*e)⊗(x*e)⊗(e) - 2 (x*e)⊗(e)⊗(x*e) + 2 (e)⊗(x*e)⊗(x*e)"
    assert got == F.parse(want)


def test_zero_anchor_action_is_not_diagonal():
    # f only decorates the last factor, so J2 survives a zero anchor once d >= 1
    M = module(["x"], ["e1", "e2"], [["0"], ["0"]])
    F = FreeLeibniz(M, 3, 2)
    assert F.act(x(), F.parse("e1⊗e2")) == F.parse("(e1)⊗(x*e2)")
    X, Y, Z = (F.parse(t) for t in ("e1", "e2", "e1"))
    got = j2_generator(F, x(), X, Y, Z)
    assert got == F.parse("(x*e1)⊗(e2)⊗(e1) - (x*e2)⊗(e1)⊗(e1) - (e1)⊗(e2)⊗(x*e1) + (e2)⊗(e1)⊗(x*e1)")


def test_quotient_dims(quotient33):
    assert quotient33.dims() == [(1, 4, 0, 4), (2, 10, 3, 7), (3, 20, 13, 7)]
    h = quotient33.saturation.history
    assert h[-1] == h[-2] == h[-3]


def test_quotient_is_symmetric(quotient33):
    reps = check_symmetric(quotient33)
    assert all(r.verdict and r.samples > 0 for r in reps)


def test_relations_killed_by_projection(quotient33):
    for g in quotient33.generators:
        assert not quotient33.project(g.element)


def test_anchor_vanishes_on_relations(quotient33):
    assert quotient33.generators
    for g in quotient33.generators:
        assert not quotient33.free.anchor(g.element)
    for row in quotient33.relation_rows():
        assert not quotient33.free.anchor(row)


def test_s2b_equals_s2_in_quotient(quotient33):
    Q = quotient33
    X, Y, Z = Q.parse("e"), Q.parse("(x*e)"), Q.parse("e")
    assert not s2b_residual(Q, x(), X, Y, Z)


def test_zero_anchor_without_variables_is_free():
    M = module([], ["e1", "e2"], [[], []])
    Q = build_quotient(FreeLeibniz(M, 3, 0))
    assert all(n == d for _, n, _, d in Q.dims())


def test_quotient_parse_projects(quotient33):
    Q = quotient33
    u = Q.parse("(x*e)⊗(e) + (e)⊗(x*e)")
    assert set(u.terms) <= set(Q.labels)

import pytest

from freecourant import FreeLeibniz, TruncationOverflow
from freecourant.poly import Poly, parse_derivation

from conftest import module


@pytest.fixture(scope="module")
def F3():
    return FreeLeibniz(module(["x"], ["e1", "e2", "e3"], [["1"], ["1"], ["1"]]), 3, 2)


@pytest.fixture(scope="module")
def F1(one_gen):
    return FreeLeibniz(one_gen, 3, 3)


def x():
    return Poly.var(0, 1)


def test_include_generator(two_gen):
    F = FreeLeibniz(two_gen, 2, 2)
    assert F.include(two_gen.generator(0)).terms == {(((0,), 0),): 1}


def test_include_decorated(two_gen):
    F = FreeLeibniz(two_gen, 2, 2)
    assert F.include(two_gen.element(["x", "0"])).terms == {(((1,), 0),): 1}
    assert F.include(two_gen.element(["x + 1", "0"])) == F.parse("(x*e1) + (e1)")


def test_module_action_unfolds_once(F1):
    # x(e⊗e) = e⊗(xe) - a(e)(x) e
    assert F1.act(x(), F1.parse("e⊗e")) == F1.parse("(e)⊗(x*e) - (e)")


def test_unit_action(F1):
    u = F1.parse("(e)⊗(x*e) - 2/3 (x^2*e)")
    assert F1.act(Poly.one(1), u) == u


def test_weight_one_action(F1):
    assert F1.act(x(), F1.parse("e")) == F1.parse("(x*e)")


def test_bracket_examples(F3):
    assert F3.format(F3.parse("[e1, e2]")) == "(e1)⊗(e2)"
    assert F3.format(F3.parse("[e1⊗e2, e3]")) == "(e1)⊗(e2)⊗(e3) - (e2)⊗(e1)⊗(e3)"


def test_bracket_cancels_on_equal_letters(F1):
    assert not F1.parse("[e⊗e, e]")


def test_symmetrized(F3, F1):
    e1, e2 = F3.parse("e1"), F3.parse("e2")
    assert F3.symmetrized(e1, e2) == F3.parse("e1⊗e2 + e2⊗e1")
    e = F1.parse("e")
    assert F1.symmetrized(e, e) == F1.parse("2 e⊗e")
    assert F3.symmetrized(e1, F3.parse("(x*e2)")) == F3.parse("(e1)⊗(x*e2) + (x*e2)⊗(e1)")


def test_induced_anchor(two_gen, F1):
    F = FreeLeibniz(two_gen, 2, 1)
    assert F.anchor(F.parse("e1⊗e2")) == parse_derivation(["1"], ["x"])
    assert not F1.anchor(F1.parse("e⊗e"))
    assert F.anchor(F.parse("e2")) == two_gen.anchor[1]


def test_ascii_tensor(F3):
    u = F3.parse("[e1 ox e2, e3]")
    assert F3.format(u, ascii=True) == "(e1) ox (e2) ox (e3) - (e2) ox (e1) ox (e3)"


def test_truncation_is_a_hard_error(one_gen):
    F = FreeLeibniz(one_gen, 2, 1)
    with pytest.raises(TruncationOverflow):
        F.parse("[e⊗e, e]")
    with pytest.raises(TruncationOverflow):
        F.act(Poly.monomial((2,)), F.parse("e"))


def test_word_labels_are_graded(one_gen):
    F = FreeLeibniz(one_gen, 2, 1)
    # weight 1: e, xe; weight 2: pdeg <= 1 pairs
    assert len(F.labels) == 2 + 3

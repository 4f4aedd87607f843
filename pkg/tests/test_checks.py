import pytest

from freecourant import (
    Dorfman,
    FreeLeibniz,
    StructureConstants,
    check_courant,
    check_leibniz,
    check_loday,
    check_module,
    check_symmetric,
    format_reports,
    natural_courant,
)
from freecourant.checks import Item, grid, poly_items, reports_json


def by_id(reports):
    return {r.identity: r for r in reports}


def passes(reports):
    return all(r.verdict and r.samples > 0 for r in reports)


def test_free_algebra_is_leibniz(two_gen):
    assert passes(check_leibniz(FreeLeibniz(two_gen, 3, 2)))


def test_jacobi_violation_witness(sc_bad):
    reps = by_id(check_leibniz(sc_bad))
    jac = reps["jacobi"]
    assert not jac.verdict
    assert jac.failures == [(("e", "e", "e"), "e")]
    assert reps["leibniz_rule"].verdict


def test_abelian_is_leibniz_and_symmetric():
    A = StructureConstants.abelian(2)
    assert passes(check_leibniz(A) + check_symmetric(A))


def test_free_algebra_is_not_symmetric(two_gen):
    reps = by_id(check_symmetric(FreeLeibniz(two_gen, 3, 2)))
    assert reps["S1"].failures and reps["S2"].failures
    assert reps["S2<=>S2b"].verdict


def test_dorfman_suites(dorfman1):
    D = dorfman1
    assert passes(check_symmetric(D))
    assert passes(check_courant(D))
    assert passes(check_loday(D))
    assert passes(check_module(natural_courant(D)))


def test_unsymmetrized_right_anchor_fails_lods1(dorfman1):
    D = dorfman1

    def lopsided(f, X, Y):
        eta_of_X = sum((a * b for a, b in zip(Y.form, X.vec)), D.poly("0"))
        return D.act(eta_of_X, D.D(f))

    reps = by_id(check_loday(D, lopsided))
    assert reps["LodS1"].failures


def test_sc_loday_with_zero_right_anchor(sc_n2):
    assert passes(check_loday(sc_n2, lambda f, X, Y: sc_n2.zero()))


def test_scaled_pairing_breaks_diffcondfirst():
    reps = by_id(check_courant(Dorfman(["x"], pairing_scale=2)))
    assert reps["DiffCondFirst"].failures
    assert reps["AnchorSelfPair"].verdict


def test_trivial_courant_with_symmetric_pairing():
    A = StructureConstants([[[0, 0], [0, 0]], [[0, 0], [0, 0]]], pairing=[[1, 2], [2, 0]])
    assert passes(check_courant(A))


def test_grid_respects_bounds():
    items = [Item("a", 1, (1, 0)), Item("b", 2, (1, 1)), Item("c", 3, (2, 2))]
    tuples, mode = grid([items, items], bounds=(2, 1))
    assert [tuple(i.text for i in t) for t in tuples] == [("a", "a"), ("a", "b"), ("b", "a")]
    assert mode == "exhaustive 3"


def test_grid_sampling_is_seeded():
    items = [Item(str(k), k, (0, 0)) for k in range(30)]
    a, mode = grid([items, items], max_tuples=50, seed=1, tag="t")
    b, _ = grid([items, items], max_tuples=50, seed=1, tag="t")
    c, _ = grid([items, items], max_tuples=50, seed=2, tag="t")
    assert mode == "sampled 50/900 seed=1"
    assert a == b
    assert a != c


def test_sampled_mode_reaches_reports(two_gen):
    reps = check_leibniz(FreeLeibniz(two_gen, 3, 2), max_tuples=20, seed=5)
    assert any(r.mode.startswith("sampled 20/") for r in reps)
    assert passes(reps)


def test_poly_items_over_q():
    assert [i.text for i in poly_items(0, 3)] == ["2"]
    assert [i.text for i in poly_items(1, 2, ["x"])] == ["x", "x^2"]


def test_report_formats(sc_bad):
    reps = check_leibniz(sc_bad)
    text = format_reports(reps, "n=1")
    assert text.splitlines()[0] == "== n=1"
    assert "witness (e, e, e) residual e" in text
    assert '"verdict": "fail"' in reports_json(reps)


def test_missing_right_anchor(sc_n2):
    with pytest.raises(ValueError):
        check_loday(sc_n2)

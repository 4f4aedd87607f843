from fractions import Fraction

import pytest

from freecourant import FreeLeibniz, SaturationFailure, TruncationOverflow, build_quotient
from freecourant.linquot import (
    FilteredPiece,
    LengthMismatch,
    Operator,
    QuotientSpace,
    Subspace,
    echelonize,
    restricted_rows,
    saturate,
)

from conftest import module

AB = FilteredPiece(["a", "b"])


def test_duplicate_rows():
    s = echelonize([(1, 1), (1, 1)], AB)
    assert s.rank == 1
    assert s.rows() == [{"a": 1, "b": 1}]


def test_empty_span():
    assert echelonize([], AB).rank == 0


def test_standard_reduction():
    s = echelonize([(1, 0), (1, 1)], AB)
    assert s.rank == 2
    assert s.rows() == [{"a": 1}, {"b": 1}]


def test_rows_are_reduced_with_unit_pivots():
    piece = FilteredPiece("abcd")
    s = echelonize([{"a": 2, "b": 4, "c": 6}, {"b": 3, "d": 1}], piece)
    assert s.rows() == [{"a": 1, "c": 3, "d": Fraction(-2, 3)}, {"b": 1, "d": Fraction(1, 3)}]


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        echelonize([(1, 2, 3)], AB)
    with pytest.raises(LengthMismatch):
        echelonize([{"z": 1}], AB)


def test_projection():
    piece = FilteredPiece("abc")
    rel = echelonize([{"a": 1, "b": -1}], piece)
    q = QuotientSpace(piece, rel)
    assert q.cobasis == ["b", "c"]
    assert q.project({"a": 1, "b": -1}) == {}
    assert q.project({"a": 1}) == q.project({"b": 1})
    trivial = QuotientSpace(piece, Subspace(piece))
    assert trivial.project({"a": 2, "c": 1}) == {"a": 2, "c": 1}


def test_graded_dims():
    piece = FilteredPiece(["a1", "b1", "c2"], grade=lambda lab: int(lab[1]))
    q = QuotientSpace(piece, echelonize([{"b1": 1}], piece))
    assert q.graded_dims() == [(1, 2, 1, 1), (2, 1, 0, 1)]


def test_restricted_rows_intersects_coordinate_subspace():
    piece = FilteredPiece("abc")
    s = echelonize([{"a": 1, "c": 1}, {"b": 1, "c": 1}], piece)
    # span ∩ {c = 0} is spanned by a - b
    rows = restricted_rows(s, lambda lab: lab != "c")
    assert rows == [{"a": 1, "b": -1}]


def test_saturate_closes_under_operators():
    # shift operator a -> b -> c on a 3-dim piece; defined except at c
    piece = FilteredPiece("abc")
    nxt = {"a": "b", "b": "c"}
    shift = Operator(lambda row: {nxt[k]: v for k, v in row.items()}, lambda lab: lab != "c")

    def gens(delta):
        if delta == 0:
            yield lambda: {"a": 1}

    res = saturate(piece, gens, [shift])
    assert res.space.rank == 3
    assert res.history == [3, 3, 3]


def test_saturate_counts_overflow():
    piece = FilteredPiece("a")

    def boom():
        raise TruncationOverflow("outside")

    res = saturate(piece, lambda d: [boom] if d == 0 else [])
    assert res.discarded == 1
    assert res.space.rank == 0


def test_saturation_failure_carries_history():
    piece = FilteredPiece(range(20))
    with pytest.raises(SaturationFailure) as ei:
        saturate(piece, lambda d: [lambda d=d: {d: 1}], delta_max=4)
    assert ei.value.history == [1, 2, 3, 4, 5]


def test_zero_anchor_abelian_rank_zero():
    M = module([], ["e1", "e2"], [[], []])
    Q = build_quotient(FreeLeibniz(M, 3, 0))
    assert Q.saturation.space.rank == 0


def test_stable_relations_are_idempotent(quotient33):
    F = quotient33.free
    again = build_quotient(F, delta_start=0)
    assert again.saturation.space.rows() == quotient33.saturation.space.rows()
    # one extra round on an already stable span changes nothing
    sat = saturate(quotient33.piece, lambda d: [], initial=quotient33.saturation.space)
    assert sat.history == [quotient33.saturation.space.rank] * 3

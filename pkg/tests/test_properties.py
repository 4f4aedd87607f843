"""Randomized exact identities (hypothesis)."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from freecourant import AnchoredModule, Dorfman, FreeLeibniz, build_quotient
from freecourant.linquot import FilteredPiece, echelonize
from freecourant.poly import Derivation, Poly, commutator

NV = 2
rats = st.fractions(min_value=-3, max_value=3, max_denominator=4)
exps = st.tuples(*[st.integers(0, 2)] * NV)
polys = st.dictionaries(exps, rats, max_size=4).map(lambda d: Poly(d, NV))
derivs = st.lists(polys, min_size=NV, max_size=NV).map(lambda cs: Derivation(cs, NV))

settings.register_profile("exact", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("exact")


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == Poly.zero(NV)


@given(derivs, polys, polys)
def test_derivation_leibniz(D, f, g):
    assert D(f * g) == D(f) * g + f * D(g)


@given(derivs, derivs, derivs, polys)
def test_commutator_is_lie(D1, D2, D3, f):
    assert commutator(D1, D2)(f) == D1(D2(f)) - D2(D1(f))
    jac = commutator(D1, commutator(D2, D3)) + commutator(D2, commutator(D3, D1)) + commutator(D3, commutator(D1, D2))
    assert not jac


M = AnchoredModule.from_config({"vars": ["x"], "generators": ["e1", "e2"], "anchor": [["1"], ["x"]]})
F = FreeLeibniz(M, 3, 2)
W1 = [w for w in F.labels if len(w) == 1]


def combos(words):
    return st.dictionaries(st.sampled_from(words), rats, min_size=1, max_size=3).map(
        lambda d: sum((F.basis(w) * c for w, c in d.items()), F.zero()))


low = [w for w in W1 if sum(w[0][0]) == 0]


@given(combos(low), combos(low), combos(W1))
def test_free_jacobi_and_anchor(X, Y, Z):
    assert F.bracket(X, F.bracket(Y, Z)) == F.bracket(F.bracket(X, Y), Z) + F.bracket(Y, F.bracket(X, Z))
    assert F.anchor(F.bracket(X, Y)) == commutator(F.anchor(X), F.anchor(Y))


@given(combos(low), combos(low), st.sampled_from([Poly.var(0, 1), Poly.const(Fraction(2, 3), 1)]))
def test_free_right_leibniz(X, Y, f):
    assert F.bracket(X, F.act(f, Y)) == F.act(f, F.bracket(X, Y)) + F.act(F.anchor(X)(f), Y)


Q = build_quotient(FreeLeibniz(AnchoredModule.from_config({"vars": ["x"], "generators": ["e"], "anchor": [["1"]]}), 3, 3))
qrows = Q.relation_rows()


@given(st.lists(rats, min_size=len(qrows), max_size=len(qrows)), st.sampled_from(Q.free.labels))
def test_projection_kills_relations(cs, w):
    rel = sum((r * c for r, c in zip(qrows, cs)), Q.free.zero())
    u = Q.free.basis(w)
    assert Q.project(u + rel) == Q.project(u)
    assert Q.project(Q.project(u)) == Q.project(u)


vecs = st.lists(st.lists(rats, min_size=4, max_size=4), max_size=5)


@given(vecs, st.randoms(use_true_random=False))
def test_echelon_form_is_canonical(vs, rnd):
    piece = FilteredPiece("abcd")
    a = echelonize(vs, piece)
    shuffled = list(vs)
    rnd.shuffle(shuffled)
    b = echelonize([[2 * x for x in v] for v in shuffled], piece)
    assert a.rows() == b.rows()


D = Dorfman(["x", "y"])
dpolys = st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1)), rats, max_size=2).map(lambda d: Poly(d, 2))
delems = st.lists(dpolys, min_size=4, max_size=4).map(lambda cs: D.element(cs[:2], cs[2:]))


@given(delems, delems, delems)
def test_dorfman_courant_axioms(X, Y, Z):
    br, pr = D.bracket, D.pairing
    assert br(X, br(Y, Z)) == br(br(X, Y), Z) + br(Y, br(X, Z))
    assert D.anchor(X)(pr(Y, Z)) == pr(br(X, Y), Z) + pr(Y, br(X, Z))
    assert D.symmetrized(Y, Y) == D.D(pr(Y, Y))

import pytest

from freecourant import (
    AnchoredMap,
    AnchorIncompatible,
    Dorfman,
    FreeLeibniz,
    NonVanishingOnIdeal,
    NonVanishingOnInv,
    StructureConstants,
    build_associated_courant,
    descend_to_symmetric,
    extend_to_free,
    natural_courant,
    universal_pipeline,
)
from freecourant.universal import broken_equal_target, identity_target

from conftest import module


@pytest.fixture(scope="module")
def C33(quotient33):
    return build_associated_courant(quotient33)


@pytest.fixture(scope="module")
def D():
    return Dorfman(["x"])


def test_inclusion_into_free_is_identity_on_words(one_gen):
    F = FreeLeibniz(one_gen, 3, 2)
    Fi = extend_to_free(AnchoredMap(one_gen, F, [F.generator(0)]), F)
    for w in F.labels:
        assert Fi(F.basis(w)) == F.basis(w)


def test_free_extension_into_dorfman(one_gen, quotient33, D):
    F = extend_to_free(AnchoredMap(one_gen, D, [D.parse("∂x")]), quotient33.free)
    assert not F(quotient33.free.parse("e⊗e"))
    F = extend_to_free(AnchoredMap(one_gen, D, [D.parse("∂x + x*dx")]), quotient33.free)
    assert F(quotient33.free.parse("e⊗e")) == D.parse("dx")


def test_anchor_incompatible_map(one_gen, quotient33, D):
    with pytest.raises(AnchorIncompatible):
        extend_to_free(AnchoredMap(one_gen, D, [D.parse("dx")]), quotient33.free)


def test_pipeline_into_dorfman(one_gen, C33, D):
    m = universal_pipeline(C33, AnchoredMap(one_gen, D, [D.parse("∂x + x*dx")]), natural_courant(D))
    assert all(r.verdict and r.samples > 0 for r in m.reports)
    assert {r.identity for r in m.reports} >= {"phi1∘i=phi", "RespScProd", "RespActs(l)", "RespActs(r)"}


def test_self_target_is_identity(one_gen, C33):
    T, images = identity_target(C33)
    Q = C33.base
    m = universal_pipeline(C33, AnchoredMap(one_gen, Q, images), T)
    assert all(m.phi1.images[w] == Q.basis(w) for w in Q.labels)
    sq = C33.residue.square
    assert all(v == sq.basis(k) for k, v in m.phi2.items())


def test_non_symmetric_target(one_gen, quotient33):
    F1 = FreeLeibniz(one_gen, 3, 3)
    Fphi = extend_to_free(AnchoredMap(one_gen, F1, [F1.generator(0)]), quotient33.free)
    with pytest.raises(NonVanishingOnIdeal) as ei:
        descend_to_symmetric(Fphi, quotient33)
    assert ei.value.witness.kind == "J1"


def test_abelian_target_with_zero_anchor():
    M = module([], ["e"], [[]])
    from freecourant import build_quotient

    Q = build_quotient(FreeLeibniz(M, 3, 0))
    A = StructureConstants.abelian(2)
    Fphi = extend_to_free(AnchoredMap(M, A, [A.basis(0) + A.basis(1)]), Q.free)
    phi1 = descend_to_symmetric(Fphi, Q)
    assert not phi1(Q.parse("e⊗e"))


def test_broken_equal_target(one_gen, C33, D):
    with pytest.raises(NonVanishingOnInv) as ei:
        universal_pipeline(C33, AnchoredMap(one_gen, D, [D.parse("∂x + x*dx")]), broken_equal_target(D))
    assert str(ei.value).startswith("phi2 does not vanish on I(")
    assert ei.value.image

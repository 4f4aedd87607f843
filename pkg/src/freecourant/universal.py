"""Universal maps out of F M, FS M and C(FS M).

An anchored map phi: M -> E1 extends to F phi on words by nested brackets,
descends to phi1 on FS M once it kills J1 + J2, and pairs with the target
scalar product to give phi2 on R(FS M).  Every commuting diagram is checked
exactly on the finite cobasis grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .anchored import AnchoredMap, validate_anchored_map
from .checks import CheckReport
from .courant import GenCourantData, natural_courant
from .errors import AnchorIncompatible, NonVanishingOnIdeal, NonVanishingOnInv, TruncationOverflow
from .free import FreeElement, FreeLeibniz
from .poly import Poly, monomials


class FreeMap:
    """F phi: F M -> E1, memoized per word."""

    def __init__(self, phi: AnchoredMap, free: FreeLeibniz):
        self.phi = phi
        self.free = free
        self.target = phi.target
        self._cache: dict = {}

    def word(self, w):
        got = self._cache.get(w)
        if got is None:
            head = self.phi.image_of_factor(*w[0])
            got = head if len(w) == 1 else self.target.bracket(head, self.word(w[1:]))
            self._cache[w] = got
        return got

    def __call__(self, u):
        out = self.target.zero()
        for w, c in u.terms.items():
            out = out + self.word(w) * c
        return out


def extend_to_free(phi: AnchoredMap, free: FreeLeibniz) -> FreeMap:
    """F phi(v1⊗...⊗vk) = [phi v1, [phi v2, ...]]' (requires an anchored phi)."""
    rep = validate_anchored_map(phi)
    if not rep.verdict:
        raise AnchorIncompatible("generator images do not preserve the anchor:\n" + rep.format(free.var_names))
    return FreeMap(phi, free)


class SymMap:
    """phi1: FS M -> E1 stored as images of the quotient cobasis."""

    def __init__(self, quotient, images: dict, target):
        self.quotient = quotient
        self.images = images
        self.target = target

    def __call__(self, u):
        u = self.quotient.project(u)
        out = self.target.zero()
        for w, c in u.terms.items():
            out = out + self.images[w] * c
        return out


def descend_to_symmetric(F: FreeMap, quotient) -> SymMap:
    """Check F phi on every J1/J2 generator and relation row, then tabulate phi1."""
    fmt = F.target.format
    for g in quotient.generators:
        img = F(g.element)
        if img:
            args = ", ".join(quotient.free.format_word(w) for w in g.args)
            raise NonVanishingOnIdeal(
                f"F phi does not vanish on {g.kind}(f={g.f.format(quotient.var_names)}; {args}): {fmt(img)}",
                witness=g, image=img)
    for k, row in enumerate(quotient.relation_rows()):
        img = F(row)
        if img:
            raise NonVanishingOnIdeal(f"F phi does not vanish on relation row {k}: {fmt(img)}", witness=row, image=img)
    return SymMap(quotient, {w: F.word(w) for w in quotient.labels}, F.target)


@dataclass
class ExtendedMorphism:
    phi: AnchoredMap
    F: FreeMap
    phi1: SymMap
    phi2: dict  # R(FS M) cobasis pair -> target value
    target: GenCourantData
    source: GenCourantData
    reports: list = field(default_factory=list)

    def apply_phi2(self, w):
        return _phi2_raw(self.phi1, self.target, w)


def _phi2_raw(phi1: SymMap, target: GenCourantData, w):
    """(−|−)'(phi1⊙phi1) on any combination of pair labels."""
    out = target.value_zero()
    for (a, b), c in w.terms.items():
        out = out + target.pairing(phi1.images[a], phi1.images[b]) * c
    return out


def courant_morphism(phi1: SymMap, target: GenCourantData, source: GenCourantData):
    """phi2 on R(FS M); raises NonVanishingOnInv when the target is not pre-Courant."""
    res = source.residue
    fmt = target.format_value
    sq = res.square
    for g in res.generators:
        img = _phi2_raw(phi1, target, g.element)
        if img:
            args = ", ".join(sq._fmt_factor(a) for a in g.args)
            raise NonVanishingOnInv(f"phi2 does not vanish on I({args}): {fmt(img)}", witness=g, image=img)
    for k, row in enumerate(res.relation_rows()):
        img = _phi2_raw(phi1, target, row)
        if img:
            raise NonVanishingOnInv(f"phi2 does not vanish on relation row {k} of R: {fmt(img)}",
                                    witness=row, image=img)
    return {lab: target.pairing(phi1.images[lab[0]], phi1.images[lab[1]]) for lab in res.labels}


def _report(identity, cases, fn, fmt):
    rep = CheckReport(identity)
    n = 0
    for texts, args in cases:
        n += 1
        try:
            r = fn(*args)
        except TruncationOverflow:
            rep.skipped += 1
            continue
        rep.samples += 1
        if r:
            rep.failures.append((texts, fmt(r)))
    rep.mode = f"exhaustive {n}"
    return rep


def verify_morphism(m: ExtendedMorphism, f_degree: int | None = None) -> list[CheckReport]:
    """Every diagram of the universal property on the full cobasis grid."""
    Q = m.phi1.quotient
    free = Q.free
    T1 = m.target.base
    src, tgt = m.source, m.target
    phi1, phi2 = m.phi1, m.apply_phi2
    res = src.residue
    sq = res.square
    tfmt, vfmt = T1.format, tgt.format_value
    cost = {w: Q.label_cost(w) for w in Q.labels}
    cost.update({lab: sq.label_cost(lab) for lab in res.labels})

    def fits(*labs):
        return sq._fits((sum(cost[l][0] for l in labs), sum(cost[l][1] for l in labs)))

    cob = [(w, Q.format(Q.basis(w)), Q.basis(w)) for w in Q.labels]
    vals = [(lab, sq.format_pair(lab), sq.basis(lab)) for lab in res.labels]
    wmax, pmax = Q.bounds
    deg = f_degree if f_degree is not None else pmax
    polys = [(Poly.monomial(e), sum(e)) for e in monomials(Q.nvars, deg, 1)] or [(Poly.const(2, Q.nvars), 0)]
    names = Q.var_names
    M = m.phi.source
    pairs = [((a, b), (u, v)) for x, a, u in cob for y, b, v in cob if fits(x, y)]
    acts = [((a, b), (u, w)) for x, a, u in cob for y, b, w in vals if fits(x, y)]
    triples = [((a, b, c), (u, v, w)) for x, a, u in cob for y, b, v in cob for z, c, w in cob if fits(x, y, z)]

    def jtext(g):
        return (g.kind, g.f.format(names), *(free.format_word(w) for w in g.args))

    reports = [
        _report("phi1∘i=phi", [((g,), (i,)) for i, g in enumerate(M.gens)],
                lambda i: phi1(Q.generator(i)) - m.phi.images[i], tfmt),
        _report("FphiVanishesOnJ", [(jtext(g), (g,)) for g in Q.generators], lambda g: m.F(g.element), tfmt),
        _report("phi1WellDefined", [((free.format_word(w),), (w,)) for w in free.labels],
                lambda w: m.F.word(w) - phi1(free.basis(w)), tfmt),
        _report("phi1Bracket", pairs, lambda u, v: phi1(Q.bracket(u, v)) - T1.bracket(phi1(u), phi1(v)), tfmt),
        _report("phi1ALinear",
                [((f.format(names), a), (f, u)) for f, d in polys for x, a, u in cob if cost[x][1] + d <= pmax],
                lambda f, u: phi1(Q.act(f, u)) - T1.act(f, phi1(u)), tfmt),
        _report("phi1Anchor", [((a,), (u,)) for _, a, u in cob],
                lambda u: T1.anchor(phi1(u)) - Q.anchor(u), lambda d: d.format(names)),
        _report("phi2VanishesOnInv", [(tuple(sq._fmt_factor(a) for a in g.args), (g,)) for g in res.generators],
                lambda g: phi2(g.element), vfmt),
        _report("RespScProd", pairs, lambda u, v: tgt.pairing(phi1(u), phi1(v)) - phi2(src.pairing(u, v)), vfmt),
        _report("RespActs(l)", acts, lambda u, w: tgt.mu_left(phi1(u), phi2(w)) - phi2(src.mu_left(u, w)), vfmt),
        _report("RespActs(r)", acts, lambda u, w: tgt.mu_right(phi1(u), phi2(w)) - phi2(src.mu_right(u, w)), vfmt),
        _report("RightDiagram", triples,
                lambda u, v, w: phi2(src.mu_right(u, src.pairing(v, w)))
                + tgt.pairing(T1.symmetrized(phi1(v), phi1(w)), phi1(u)), vfmt),
    ]
    return reports


def universal_pipeline(source: GenCourantData, phi: AnchoredMap, target: GenCourantData,
                       f_degree: int | None = None) -> ExtendedMorphism:
    """phi -> (F phi, phi1, phi2) with all diagrams verified; errors carry witnesses."""
    Q = source.base
    F = extend_to_free(phi, Q.free)
    phi1 = descend_to_symmetric(F, Q)
    phi2 = courant_morphism(phi1, target, source)
    m = ExtendedMorphism(phi, F, phi1, phi2, target, source)
    m.reports = verify_morphism(m, f_degree)
    return m


def identity_target(source: GenCourantData) -> tuple[GenCourantData, list]:
    """C(FS M) as its own target, with phi the canonical inclusion i."""
    Q = source.base
    return source, [Q.generator(i) for i in range(Q.module.ngens)]


def broken_equal_target(dorfman) -> GenCourantData:
    """Dorfman with the non-invariant pairing sum X^i Y^i: Equal fails, a negative control."""

    def pairing(u, v):
        s = Poly.zero(dorfman.nvars)
        for a, b in zip(u.vec, v.vec):
            s = s + a * b
        return s

    return natural_courant(dorfman, pairing=pairing, name="dorfman-broken")


__all__ = [
    "FreeMap",
    "SymMap",
    "ExtendedMorphism",
    "extend_to_free",
    "descend_to_symmetric",
    "courant_morphism",
    "verify_morphism",
    "universal_pipeline",
    "identity_target",
    "broken_equal_target",
]

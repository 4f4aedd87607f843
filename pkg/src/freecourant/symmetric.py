"""The ideals J1, J2 and the free symmetric Leibniz pseudoalgebra F M / (J1 + J2)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TruncationOverflow
from .free import FreeElement, FreeLeibniz, pdeg
from .instances import Pseudoalgebra
from .linquot import FilteredPiece, Operator, QuotientSpace, SaturationResult, saturate
from .poly import Poly, monomials


def j1_generator(inst, f: Poly, X, Y):
    """X o fY - (fX) o Y; also the residual of the first symmetry condition."""
    return inst.symmetrized(X, inst.act(f, Y)) - inst.symmetrized(inst.act(f, X), Y)


def j2_generator(inst, f: Poly, X, Y, Z):
    """[fX, Y o Z] - [X, Y] o fZ - (fY) o [X, Z]."""
    return (
        inst.bracket(inst.act(f, X), inst.symmetrized(Y, Z))
        - inst.symmetrized(inst.bracket(X, Y), inst.act(f, Z))
        - inst.symmetrized(inst.act(f, Y), inst.bracket(X, Z))
    )


def s2b_residual(inst, f: Poly, X, Y, Z):
    """([fX, Y] - f[X, Y]) o Z + Y o ([fX, Z] - f[X, Z])."""
    fX = inst.act(f, X)
    a = inst.bracket(fX, Y) - inst.act(f, inst.bracket(X, Y))
    b = inst.bracket(fX, Z) - inst.act(f, inst.bracket(X, Z))
    return inst.symmetrized(a, Z) + inst.symmetrized(Y, b)


@dataclass
class RelationGenerator:
    kind: str  # "J1" or "J2"
    f: Poly
    args: tuple  # basis words
    element: FreeElement


class SymLeibnizQuotient(Pseudoalgebra):
    """F M / (<J1> + <J2>) within the truncation, computed on normal-form representatives.

    Elements are FreeElements supported on the cobasis (non-pivot) words.
    """

    name = "quotient"

    def __init__(self, free: FreeLeibniz, piece: FilteredPiece, saturation: SaturationResult, generators):
        self.free = free
        self.module = free.module
        self.nvars = free.nvars
        self.var_names = free.var_names
        self.bounds = free.bounds
        self.piece = piece
        self.saturation = saturation
        self.quotient = QuotientSpace(piece, saturation.space)
        self.generators: list[RelationGenerator] = generators
        self.labels = self.quotient.cobasis

    def project(self, u: FreeElement) -> FreeElement:
        return FreeElement(self.quotient.project(u), self.bounds)

    def zero(self):
        return self.free.zero()

    def basis(self, word):
        return self.project(self.free.basis(word))

    def label_cost(self, word):
        return self.free.label_cost(word)

    def include(self, m):
        return self.project(self.free.include(m))

    def generator(self, i):
        return self.project(self.free.generator(i))

    def bracket(self, u, v):
        return self.project(self.free.bracket(u, v))

    def act(self, f, u):
        return self.project(self.free.act(f, u))

    def anchor(self, u):
        return self.free.anchor(u)

    def format(self, u, ascii=False):
        return self.free.format(u, ascii)

    def parse(self, text):
        return self.project(self.free.parse(text))

    def relation_rows(self) -> list[FreeElement]:
        return [FreeElement(r, self.bounds) for r in self.quotient.relations.rows()]

    def dims(self):
        """Per tensor weight k: (k, dim_free, dim_relations, dim_quotient) of the associated graded."""
        return self.quotient.graded_dims()


def _word_pairs(words, wmax, budget):
    for X in words:
        for Y in words:
            if len(X) + len(Y) <= wmax and pdeg(X) + pdeg(Y) <= budget:
                yield X, Y


def build_quotient(
    free: FreeLeibniz,
    delta_max: int = 8,
    delta_start: int = 0,
    bracket_closure: bool = True,
) -> SymLeibnizQuotient:
    """Saturate <J1> + <J2> inside the truncated piece and return the quotient instance.

    Round delta adds J1/J2 generators with f a monomial of degree delta and
    X, Y, Z basis words whose weights and degrees fit the bounds, then closes
    the span under the A-action and, optionally, two-sided brackets with basis
    words.  Bracket closure leaves the true ideal unchanged (it is already an
    ideal) and recovers relations that truncation would otherwise hide.
    """
    words = free.labels
    piece = FilteredPiece(words, grade=len)
    wmax, pmax = free.bounds
    generators: list[RelationGenerator] = []

    def gens(delta):
        for exps in monomials(free.nvars, delta, delta):
            f = Poly.monomial(exps)
            budget = pmax - delta
            for X, Y in _word_pairs(words, wmax, budget):
                if word_index[X] < word_index[Y]:
                    yield _recorder("J1", f, (X, Y), lambda f=f, X=X, Y=Y: j1_generator(
                        free, f, free.basis(X), free.basis(Y)))
            for X, Y in _word_pairs(words, wmax - 1, budget):
                for Z in words:
                    if len(X) + len(Y) + len(Z) <= wmax and pdeg(X) + pdeg(Y) + pdeg(Z) <= budget:
                        yield _recorder("J2", f, (X, Y, Z), lambda f=f, X=X, Y=Y, Z=Z: j2_generator(
                            free, f, free.basis(X), free.basis(Y), free.basis(Z)))

    def _recorder(kind, f, args, thunk):
        def run():
            el = thunk()
            if el:
                generators.append(RelationGenerator(kind, f, args, el))
            return el
        return run

    word_index = {w: i for i, w in enumerate(words)}

    def as_el(row):
        return FreeElement(row, free.bounds)

    ops = [
        Operator(lambda row, x=Poly.var(j, free.nvars): free.act(x, as_el(row)),
                 lambda w: pdeg(w) < pmax, "act")
        for j in range(free.nvars)
    ]
    if bracket_closure:
        for W in words:
            lw, pw = len(W), pdeg(W)
            if lw >= wmax:
                continue
            dom = (lambda w, lw=lw, pw=pw: len(w) + lw <= wmax and pdeg(w) + pw <= pmax)
            B = free.basis(W)
            ops.append(Operator(lambda row, B=B: free.bracket(B, as_el(row)), dom, ("br", lw, pw)))
            ops.append(Operator(lambda row, B=B: free.bracket(as_el(row), B), dom, ("br", lw, pw)))

    sat = saturate(piece, gens, ops, delta_start=delta_start, delta_max=delta_max)
    return SymLeibnizQuotient(free, piece, sat, generators)


__all__ = [
    "j1_generator",
    "j2_generator",
    "s2b_residual",
    "build_quotient",
    "SymLeibnizQuotient",
    "RelationGenerator",
    "TruncationOverflow",
]

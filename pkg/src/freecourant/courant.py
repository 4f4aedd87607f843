"""Generalized (pre-)Courant data and the associated construction C(E) = (E, R(E), ...).

E⊙² is built in two stages on a finite piece of symmetric pairs of base labels:
first the balancing relations (fY)⊙Z = Y⊙(fZ), then the A-submodule generated
by Inv.  The intermediate stage is kept so that the bimodule lemma can be
checked on E⊙² itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import SymmetryViolation, TruncationOverflow
from .lincomb import LinComb, format_lincomb
from .linquot import FilteredPiece, Operator, QuotientSpace, SaturationResult, saturate
from .poly import Poly, apply_derivation


class SymSquare:
    """E⊙² over A for a base instance with a finite label set, modulo balancing.

    Pair labels are (a, b) with a not after b in the base label order and
    combined (weight, degree) within ``bounds``.  Base labels without a cost
    (structure-constant algebras) count as weight 1, degree 0.
    """

    def __init__(self, base, bounds=None, delta_max: int = 8):
        if base.labels is None:
            raise ValueError(f"{base.name} has no finite basis; E⊙² needs labelled elements")
        self.base = base
        self.nvars = base.nvars
        self.bounds = tuple(bounds) if bounds is not None else base.bounds
        self._index = {lab: i for i, lab in enumerate(base.labels)}
        self._basis = {lab: base.basis(lab) for lab in base.labels}
        labels = base.labels
        pairs = [(a, b) for i, a in enumerate(labels) for b in labels[i:] if self._fits(self._pair_cost(a, b))]
        pairs.sort(key=self._pair_key)
        self.piece = FilteredPiece(pairs, grade=lambda p: self._pair_cost(*p)[0])
        self.saturation = self._balance(delta_max)
        self.quotient = QuotientSpace(self.piece, self.saturation.space)
        self.labels = self.quotient.cobasis

    # -- costs and ordering
    def cost(self, label):
        c = self.base.label_cost(label)
        return c if c is not None else (1, 0)

    def _pair_cost(self, a, b):
        ca, cb = self.cost(a), self.cost(b)
        return (ca[0] + cb[0], ca[1] + cb[1])

    def _fits(self, cost):
        return self.bounds is None or (cost[0] <= self.bounds[0] and cost[1] <= self.bounds[1])

    def _pair_key(self, p):
        w, d = self._pair_cost(*p)
        return (-w, -d, self._index[p[0]], self._index[p[1]])

    # -- raw bilinear operations
    def sym(self, u, v) -> LinComb:
        """u⊙v for base elements, expanded on pair labels (no projection)."""
        out: dict = {}
        for a, x in u.terms.items():
            for b, y in v.terms.items():
                key = (a, b) if self._index[a] <= self._index[b] else (b, a)
                if key not in self.piece:
                    raise TruncationOverflow(f"pair {key!r} exceeds the pair bounds {self.bounds}", key)
                s = out.get(key, 0) + x * y
                if s:
                    out[key] = s
                else:
                    del out[key]
        return LinComb(out)

    def _bilinear(self, p, fn) -> LinComb:
        out = LinComb()
        for (a, b), c in p.terms.items():
            out = out + fn(self._basis[a], self._basis[b]) * c
        return out

    def project(self, p) -> LinComb:
        return LinComb(self.quotient.project(p))

    def _act_raw(self, f, p):
        return self._bilinear(p, lambda a, b: self.sym(self.base.act(f, a), b))

    def _balancing_generator(self, j, a, b):
        x = Poly.var(j, self.nvars)
        A, B = self._basis[a], self._basis[b]
        return self.sym(self.base.act(x, A), B) - self.sym(A, self.base.act(x, B))

    def _balance(self, delta_max) -> SaturationResult:
        labels = self.base.labels

        def gens(delta):
            if delta != 1:
                return
            for j in range(self.nvars):
                for i, a in enumerate(labels):
                    for b in labels[i + 1:]:
                        c = self._pair_cost(a, b)
                        if self._fits((c[0], c[1] + 1)):
                            yield lambda j=j, a=a, b=b: self._balancing_generator(j, a, b)

        return saturate(self.piece, gens, self.act_operators(), delta_max=delta_max)

    def act_operators(self) -> list[Operator]:
        """Multiplication by each variable, defined where the degree has room."""
        if self.bounds is None:
            dom = None
        else:
            dom = (lambda p: self._pair_cost(*p)[1] < self.bounds[1])
        return [
            Operator(lambda row, x=Poly.var(j, self.nvars): self._act_raw(x, LinComb(row)), dom, "act")
            for j in range(self.nvars)
        ]

    # -- module structure, projected through balancing
    def act(self, f: Poly, p) -> LinComb:
        """f·(Y⊙Z) = (fY)⊙Z."""
        return self.project(self._act_raw(f, p))

    def mu_left(self, X, p) -> LinComb:
        br = self.base.bracket
        return self.project(self._bilinear(p, lambda a, b: self.sym(br(X, a), b) + self.sym(a, br(X, b))))

    def mu_right(self, X, p) -> LinComb:
        so = self.base.symmetrized
        return self.project(self._bilinear(p, lambda a, b: -self.sym(so(a, b), X)))

    def inv_raw(self, X, Y, Z) -> LinComb:
        br = self.base.bracket
        return self.sym(br(X, Y), Z) + self.sym(Y, br(X, Z)) - self.sym(X, self.base.symmetrized(Y, Z))

    def inv_generator(self, X, Y, Z) -> LinComb:
        """[X,Y]⊙Z + Y⊙[X,Z] - X⊙(Y∘Z), projected through balancing."""
        return self.project(self.inv_raw(X, Y, Z))

    def pair(self, X, Y) -> LinComb:
        return self.project(self.sym(X, Y))

    def zero(self):
        return LinComb()

    def basis(self, label):
        return LinComb({label: 1})

    def label_cost(self, label):
        return self._pair_cost(*label)

    def format_pair(self, label) -> str:
        return "⊙".join(self._fmt_factor(x) for x in label)

    def _fmt_factor(self, lab):
        s = self.base.format(self._basis[lab])
        return f"({s})" if (" " in s or "⊗" in s) else s

    def format(self, p) -> str:
        return format_lincomb(sorted(p.terms.items(), key=lambda kv: self.piece.index[kv[0]]), self.format_pair)

    def dims(self):
        return self.quotient.graded_dims()


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


@dataclass
class InvGenerator:
    args: tuple  # base labels (X, Y, Z)
    element: LinComb


class Residue:
    """R(E) = E⊙² / <Inv>: balancing span plus the A-submodule generated by Inv."""

    def __init__(self, square: SymSquare, delta_max: int = 8, action_closure: bool = False):
        self.square = square
        self.base = square.base
        self.nvars = square.nvars
        self.piece = square.piece
        self.generators: list[InvGenerator] = []
        labels = self.base.labels
        sq = square

        def record(args):
            def run():
                el = sq.inv_raw(*(sq._basis[a] for a in args))
                if el:
                    self.generators.append(InvGenerator(args, el))
                return el
            return run

        def gens(delta):
            if delta != 0:
                return
            for X in labels:
                for Y in labels:
                    cxy = sq._pair_cost(X, Y)
                    if not sq._fits(cxy):
                        continue
                    for Z in labels:
                        cz = sq.cost(Z)
                        if sq._fits((cxy[0] + cz[0], cxy[1] + cz[1])):
                            yield record((X, Y, Z))

        ops = sq.act_operators()
        if action_closure:
            for W in labels:
                B, cw = sq._basis[W], sq.cost(W)
                dom = None if sq.bounds is None else (
                    lambda p, cw=cw: sq._fits(_add(sq._pair_cost(*p), cw)))
                ops.append(Operator(lambda row, B=B: sq.mu_left(B, LinComb(row)), dom, ("mu", cw)))
                ops.append(Operator(lambda row, B=B: sq.mu_right(B, LinComb(row)), dom, ("mu", cw)))

        self.saturation = saturate(self.piece, gens, ops, delta_max=delta_max, initial=square.saturation.space)
        self.quotient = QuotientSpace(self.piece, self.saturation.space)
        self.labels = self.quotient.cobasis

    def project(self, p) -> LinComb:
        return LinComb(self.quotient.project(p))

    def relation_rows(self) -> list[LinComb]:
        return [LinComb(r) for r in self.quotient.relations.rows()]

    def pairing(self, X, Y) -> LinComb:
        return self.project(self.square.sym(X, Y))

    def act(self, f, w) -> LinComb:
        return self.project(self.square._act_raw(f, w))

    def mu_left(self, X, w) -> LinComb:
        return self.project(self.square.mu_left(X, w))

    def mu_right(self, X, w) -> LinComb:
        return self.project(self.square.mu_right(X, w))

    def format(self, w) -> str:
        return self.square.format(w)

    def dims(self):
        return self.quotient.graded_dims()


@dataclass
class GenCourantData:
    """(E1, E2, [-,-], (-|-), a, mu_left, mu_right) with E2 given by its operations."""

    base: Any
    pairing: Callable
    mu_left: Callable
    mu_right: Callable
    value_act: Callable
    value_zero: Callable
    format_value: Callable
    name: str = "courant"
    residue: Residue | None = None
    info: dict = field(default_factory=dict)
    values: list | None = None  # explicit sample values of E2, when E2 is finite


def natural_courant(inst, pairing=None, name=None) -> GenCourantData:
    """(E, A, a, -a) with the instance's own A-valued scalar product."""
    names = inst.var_names
    return GenCourantData(
        base=inst,
        pairing=pairing or inst.pairing,
        mu_left=lambda X, g: apply_derivation(inst.anchor(X), g),
        mu_right=lambda X, g: -apply_derivation(inst.anchor(X), g),
        value_act=lambda f, g: f * g,
        value_zero=lambda: Poly.zero(inst.nvars),
        format_value=lambda g: g.format(names),
        name=name or f"{inst.name}+A",
    )


def build_associated_courant(
    base,
    bounds=None,
    delta_max: int = 8,
    action_closure: bool = False,
    verify: bool = True,
    seed: int = 0,
) -> GenCourantData:
    """C(E) with the universal scalar product (X|Y) = class of X⊙Y in R(E).

    With ``verify`` the base is first run through the symmetric checks and a
    SymmetryViolation is raised when any of them fails.
    """
    if verify:
        from .checks import check_symmetric

        reports = check_symmetric(base, seed=seed)
        bad = [r for r in reports if not r.verdict]
        if bad:
            raise SymmetryViolation(f"{base.name} is not symmetric: " + ", ".join(r.identity for r in bad), bad)
    square = SymSquare(base, bounds, delta_max)
    res = Residue(square, delta_max, action_closure)
    return GenCourantData(
        base=base,
        pairing=res.pairing,
        mu_left=res.mu_left,
        mu_right=res.mu_right,
        value_act=res.act,
        value_zero=LinComb,
        format_value=res.format,
        name=f"C({base.name})",
        residue=res,
        info={"balancing": square.saturation.history, "inv": res.saturation.history},
    )


def square_module(square: SymSquare) -> GenCourantData:
    """E⊙² (balanced, before Inv) as an E-module, for checking the bimodule lemma."""
    return GenCourantData(
        base=square.base,
        pairing=square.pair,
        mu_left=square.mu_left,
        mu_right=square.mu_right,
        value_act=square.act,
        value_zero=LinComb,
        format_value=square.format,
        name=f"{square.base.name}⊙²",
        info={"balancing": square.saturation.history},
    )


def representation_module(sc, rep, names=None) -> GenCourantData:
    """(W, nabla, -nabla) for a representation rep of a structure-constant algebra.

    W = Q^m with basis labels 0..m-1; rep[i] is the matrix of nabla(e_i).
    Only the module slots are meaningful: the pairing is the zero map.
    """
    from fractions import Fraction

    if not sc.representation_ok(rep):
        raise ValueError("rep does not respect the bracket")
    mats = [[[Fraction(x) for x in row] for row in m] for m in rep]
    m = len(mats[0])
    names = list(names) if names else [f"w{k + 1}" for k in range(m)]

    def nabla(X, w):
        out: dict = {}
        for i, a in X.terms.items():
            for c, b in w.terms.items():
                for r in range(m):
                    x = mats[i][r][c]
                    if x:
                        out[r] = out.get(r, 0) + a * b * x
        return LinComb(out)

    data = GenCourantData(
        base=sc,
        pairing=lambda X, Y: LinComb(),
        mu_left=nabla,
        mu_right=lambda X, w: -nabla(X, w),
        value_act=lambda f, w: sc.act(f, w),
        value_zero=LinComb,
        format_value=lambda w: format_lincomb(sorted(w.terms.items()), lambda k: names[k]),
        name=f"{sc.name}-rep",
        values=[LinComb({k: 1}) for k in range(m)],
    )
    return data

"""Exact identity checkers over deterministic sample grids.

Each check evaluates a residual on every tuple of a grid built from basis
elements and monomials.  A tuple contributes its summed (weight, degree) cost,
and only tuples within the bounds are enumerated.  Grids larger than
``max_tuples`` are replaced by a seeded uniform subsample, and the report says
which mode ran.  A pass means every residual is literally zero.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import TruncationOverflow
from .poly import Derivation, Poly, commutator, monomials

MAX_TUPLES = 10_000


@dataclass
class Item:
    text: str
    value: object
    cost: tuple | None = None


@dataclass
class CheckReport:
    identity: str
    samples: int = 0
    skipped: int = 0
    mode: str = "exhaustive"
    failures: list = field(default_factory=list)  # (witness texts, residual text)

    @property
    def verdict(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "samples": self.samples,
            "skipped": self.skipped,
            "mode": self.mode,
            "verdict": "pass" if self.verdict else "fail",
            "failures": [{"witness": list(w), "residual": r} for w, r in self.failures],
        }


def format_reports(reports: Sequence[CheckReport], title: str | None = None, max_witnesses: int = 3) -> str:
    lines = []
    if title:
        lines.append(f"== {title}")
    lines.append(f"{'identity':<22} {'samples':>7} {'skipped':>7} {'fail':>5}  verdict  mode")
    for r in reports:
        v = "pass" if r.verdict else "FAIL"
        lines.append(f"{r.identity:<22} {r.samples:>7} {r.skipped:>7} {len(r.failures):>5}  {v:<7}  {r.mode}")
        for w, res in r.failures[:max_witnesses]:
            lines.append(f"    witness ({', '.join(w)}) residual {res}")
    return "\n".join(lines)


def reports_json(reports: Sequence[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False)


# -- sample grids

def _add(a, b):
    if a is None or b is None:
        return a or b
    return (a[0] + b[0], a[1] + b[1])


def _within(cost, bounds):
    if bounds is None or cost is None:
        return True
    w, p = bounds
    return (w is None or cost[0] <= w) and (p is None or cost[1] <= p)


def grid(slots: Sequence[Sequence[Item]], bounds=None, max_tuples=MAX_TUPLES, seed=0, tag=""):
    """Tuples of items (one per slot) whose summed cost fits ``bounds``.

    Returns (tuples, mode).  Enumeration is in slot order; pruning uses the
    fact that costs are non-negative.
    """
    out: list = []
    total = 0
    cap = max_tuples
    reservoir = random.Random(f"{seed}:{tag}")

    def rec(i, prefix, cost):
        nonlocal total
        if i == len(slots):
            total += 1
            if len(out) < cap:
                out.append(tuple(prefix))
            else:
                # reservoir sampling keeps a seeded uniform subsample
                j = reservoir.randrange(total)
                if j < cap:
                    out[j] = tuple(prefix)
            return
        for it in slots[i]:
            c = _add(cost, it.cost)
            if _within(c, bounds):
                prefix.append(it)
                rec(i + 1, prefix, c)
                prefix.pop()

    rec(0, [], (0, 0))
    if total <= cap:
        return out, f"exhaustive {total}"
    return out, f"sampled {cap}/{total} seed={seed}"


def element_items(inst, pmax=None) -> list[Item]:
    if hasattr(inst, "sample_items"):
        return inst.sample_items(pmax)
    if inst.labels is None:
        raise ValueError(f"{inst.name} exposes no sample basis")
    out = []
    for lab in inst.labels:
        u = inst.basis(lab)
        c = inst.label_cost(lab)
        out.append(Item(inst.format(u), u, c if c is not None else (1, 0)))
    return out


def poly_items(nvars, max_deg, names=None) -> list[Item]:
    """Monomials of degree 1..max_deg, or the constant 2 when A = Q."""
    if nvars == 0 or max_deg < 1:
        return [Item("2", Poly.const(2, nvars), (0, 0))]
    names = names or [f"x{i + 1}" for i in range(nvars)]
    out = []
    for exps in monomials(nvars, max_deg, 1):
        f = Poly.monomial(exps)
        out.append(Item(f.format(names), f, (0, sum(exps))))
    return out


class _Runner:
    def __init__(self, inst, bounds, seed, max_tuples, fmt):
        self.inst = inst
        self.bounds = bounds
        self.seed = seed
        self.max_tuples = max_tuples
        self.fmt = fmt

    def run(self, identity, slots, fn, fmt=None) -> CheckReport:
        fmt = fmt or self.fmt
        tuples, mode = grid(slots, self.bounds, self.max_tuples, self.seed, identity)
        rep = CheckReport(identity, mode=mode)
        for tup in tuples:
            try:
                res = fn(*(it.value for it in tup))
            except TruncationOverflow:
                rep.skipped += 1
                continue
            rep.samples += 1
            if res:
                rep.failures.append((tuple(it.text for it in tup), fmt(res)))
        return rep


def _bounds(inst, bounds):
    if bounds is not None:
        return bounds
    if inst.bounds is not None:
        return inst.bounds
    return getattr(inst, "sample_bounds", None)


def _fdeg(bounds, f_degree):
    if f_degree is not None:
        return f_degree
    if bounds is not None and bounds[1] is not None:
        return bounds[1]
    return 1


def _formatter(inst):
    names = inst.var_names

    def fmt(x):
        if isinstance(x, (Derivation, Poly)):
            return x.format(names)
        return inst.format(x)

    return fmt


def _setup(inst, bounds, seed, max_tuples, f_degree):
    b = _bounds(inst, bounds)
    r = _Runner(inst, b, seed, max_tuples, _formatter(inst))
    E = element_items(inst, b[1] if b else None)
    F = poly_items(inst.nvars, _fdeg(b, f_degree), inst.var_names)
    return r, E, F


# -- suites

def check_leibniz(inst, *, bounds=None, seed=0, max_tuples=MAX_TUPLES, f_degree=None) -> list[CheckReport]:
    """Jacobi, the Leibniz rule, the anchor morphism property and A-linearity of the anchor."""
    r, E, F = _setup(inst, bounds, seed, max_tuples, f_degree)
    br, act, a = inst.bracket, inst.act, inst.anchor

    def jacobi(X, Y, Z):
        return br(br(X, Y), Z) + br(Y, br(X, Z)) - br(X, br(Y, Z))

    def leibniz_rule(f, X, Y):
        return br(X, act(f, Y)) - act(f, br(X, Y)) - act(a(X)(f), Y)

    def anchor_morphism(X, Y):
        return a(br(X, Y)) - commutator(a(X), a(Y))

    def anchor_linearity(f, X):
        return a(act(f, X)) - a(X) * f

    return [
        r.run("jacobi", [E, E, E], jacobi),
        r.run("leibniz_rule", [F, E, E], leibniz_rule),
        r.run("anchor_morphism", [E, E], anchor_morphism),
        r.run("anchor_linearity", [F, E], anchor_linearity),
    ]


def check_symmetric(inst, *, bounds=None, seed=0, max_tuples=MAX_TUPLES, f_degree=None) -> list[CheckReport]:
    """S1, S2, S1b, S2b and the per-sample agreement of S2 with S2b under S1."""
    from .symmetric import j1_generator, j2_generator, s2b_residual

    r, E, F = _setup(inst, bounds, seed, max_tuples, f_degree)
    br = inst.bracket

    def s1(f, X, Y):
        return j1_generator(inst, f, X, Y)

    def s2(f, X, Y, Z):
        return j2_generator(inst, f, X, Y, Z)

    def s2b(f, X, Y, Z):
        return s2b_residual(inst, f, X, Y, Z)

    def agree(f, X, Y, Z):
        # when S1 holds on the two derived pairs, S2 and S2b must agree
        if s1(f, br(X, Y), Z) or s1(f, Y, br(X, Z)):
            return inst.zero()
        a, b = s2(f, X, Y, Z), s2b(f, X, Y, Z)
        return a - b if bool(a) != bool(b) else inst.zero()

    return [
        r.run("S1", [F, E, E], s1),
        r.run("S2", [F, E, E, E], s2),
        r.run("S1b", [F, E, E], s1),
        r.run("S2b", [F, E, E, E], s2b),
        r.run("S2<=>S2b", [F, E, E, E], agree),
    ]


def check_loday(inst, D: Callable | None = None, *, bounds=None, seed=0, max_tuples=MAX_TUPLES,
                f_degree=None) -> list[CheckReport]:
    """RightDiffProp, LodS1 and LodS2 for a right anchor D(f, X, Y)."""
    if D is None:
        D = getattr(inst, "loday_D", None)
        if D is None:
            raise ValueError(f"{inst.name}: the Loday suite needs a right anchor D")
    r, E, F = _setup(inst, bounds, seed, max_tuples, f_degree)
    br, act, a = inst.bracket, inst.act, inst.anchor

    def right_diff(f, X, Y):
        return br(act(f, X), Y) - act(f, br(X, Y)) + act(a(Y)(f), X) - D(f, X, Y)

    def lod_s1(f, X, Y):
        return D(f, X, Y) - D(f, Y, X)

    def lod_s2(f, X, Y, Z):
        return D(f, X, inst.symmetrized(Y, Z)) - D(f, br(X, Y), Z) - D(f, Y, br(X, Z))

    return [
        r.run("RightDiffProp", [F, E, E], right_diff),
        r.run("LodS1", [F, E, E], lod_s1),
        r.run("LodS2", [F, E, E, E], lod_s2),
    ]


def value_items(data, pmax=None) -> list[Item]:
    """Sample values of a module: pair classes for R(E), monomials for A."""
    if data.values is not None:
        return [Item(data.format_value(v), v, (0, 0)) for v in data.values]
    res = data.residue
    if res is not None:
        sq = res.square
        return [Item(data.format_value(sq.basis(lab)), sq.basis(lab), sq.label_cost(lab)) for lab in res.labels]
    base = data.base
    out = []
    for exps in monomials(base.nvars, pmax if pmax is not None else 2):
        g = Poly.monomial(exps)
        out.append(Item(g.format(base.var_names), g, (0, sum(exps))))
    return out


def check_module(data, *, values=None, bounds=None, seed=0, max_tuples=MAX_TUPLES, f_degree=None) -> list[CheckReport]:
    """Bimodule axioms VVW, WVV, VWV and the Leibniz rule of the left action."""
    inst = data.base
    b = _bounds(inst, bounds)
    r = _Runner(inst, b, seed, max_tuples, data.format_value)
    E = element_items(inst, b[1] if b else None)
    F = poly_items(inst.nvars, _fdeg(b, f_degree), inst.var_names)
    V = values if values is not None else value_items(data, b[1] if b else None)
    br = inst.bracket
    ml, mr, vact = data.mu_left, data.mu_right, data.value_act

    def vvw(x, y, w):
        return mr(br(x, y), w) - mr(y, mr(x, w)) - ml(x, mr(y, w))

    def wvv(x, y, w):
        return mr(br(x, y), w) - ml(x, mr(y, w)) + mr(y, ml(x, w))

    def vwv(x, y, w):
        return ml(br(x, y), w) - ml(x, ml(y, w)) + ml(y, ml(x, w))

    def leib(f, x, w):
        return ml(x, vact(f, w)) - vact(f, ml(x, w)) - vact(inst.anchor(x)(f), w)

    return [
        r.run("VVW", [E, E, V], vvw),
        r.run("WVV", [E, E, V], wvv),
        r.run("VWV", [E, E, V], vwv),
        r.run("LeibRule", [F, E, V], leib),
    ]


def check_courant(inst, *, bounds=None, seed=0, max_tuples=MAX_TUPLES, f_degree=None) -> list[CheckReport]:
    """Courant axioms and their consequences for an A-valued scalar product with D."""
    if not inst.has_pairing:
        raise ValueError(f"{inst.name} has no scalar product")
    r, E, F = _setup(inst, bounds, seed, max_tuples, f_degree)
    br, act, a, pr, D = inst.bracket, inst.act, inst.anchor, inst.pairing, inst.D
    so = inst.symmetrized

    def anchor_self(X, Y):
        return a(X)(pr(Y, Y)) - pr(X, br(Y, Y)) * 2

    def anchor_bracket_self(X, Y):
        return a(X)(pr(Y, Y)) - pr(br(X, Y), Y) * 2

    def ax_def(X, Y):
        return pr(br(X, Y), Y) - pr(X, br(Y, Y))

    def anchor_sym(X, Y, Z):
        return a(X)(pr(Y, Z)) - pr(X, so(Y, Z))

    def inv1(X, Y, Z):
        return a(X)(pr(Y, Z)) - pr(br(X, Y), Z) - pr(Y, br(X, Z))

    def inv3(X, Y, Z):
        return pr(br(X, Y), Z) + pr(Y, br(X, Z)) - pr(X, so(Y, Z))

    def zr(f, X, Y):
        return br(X, act(f, Y)) - act(f, br(X, Y)) - act(a(X)(f), Y)

    def dd(f, X):
        return pr(D(f), X) - a(X)(f)

    def d_sym(Y, Z):
        return D(pr(Y, Z)) - so(Y, Z)

    def diff_first(f, X, Y):
        return br(act(f, X), Y) - act(f, br(X, Y)) + act(a(Y)(f), X) - act(pr(X, Y), D(f))

    return [
        r.run("AnchorSelfPair", [E, E], anchor_self),
        r.run("AnchorBracketSelfPair", [E, E], anchor_bracket_self),
        r.run("([X,Y]|Y)=(X|[Y,Y])", [E, E], ax_def),
        r.run("AnchorSymPair", [E, E, E], anchor_sym),
        r.run("Inv1", [E, E, E], inv1),
        r.run("Inv2", [E, E, E], anchor_sym),
        r.run("Inv3", [E, E, E], inv3),
        r.run("zr", [F, E, E], zr),
        r.run("D", [F, E], dd),
        r.run("DPairSym", [E, E], d_sym),
        r.run("DiffCondFirst", [F, E, E], diff_first),
    ]


def check_precourant(data, *, bounds=None, seed=0, max_tuples=MAX_TUPLES, f_degree=None) -> list[CheckReport]:
    """LeftAct, RightAct, Equal, symmetry and A-bilinearity of a module-valued pairing."""
    inst = data.base
    b = _bounds(inst, bounds)
    r = _Runner(inst, b, seed, max_tuples, data.format_value)
    E = element_items(inst, b[1] if b else None)
    F = poly_items(inst.nvars, _fdeg(b, f_degree), inst.var_names)
    br, so, pr = inst.bracket, inst.symmetrized, data.pairing
    ml, mr = data.mu_left, data.mu_right

    def left_act(X, Y, Z):
        return ml(X, pr(Y, Z)) - pr(br(X, Y), Z) - pr(Y, br(X, Z))

    def right_act(X, Y, Z):
        return -mr(X, pr(Y, Z)) - pr(so(Y, Z), X)

    def equal(X, Y, Z):
        return pr(br(X, Y), Z) + pr(Y, br(X, Z)) - pr(so(Y, Z), X)

    def symmetry(X, Y):
        return pr(X, Y) - pr(Y, X)

    def bilinear(f, X, Y):
        return pr(inst.act(f, X), Y) - data.value_act(f, pr(X, Y))

    return [
        r.run("LeftAct", [E, E, E], left_act),
        r.run("RightAct", [E, E, E], right_act),
        r.run("Equal", [E, E, E], equal),
        r.run("PairingSymmetric", [E, E], symmetry),
        r.run("PairingALinear", [F, E, E], bilinear),
    ]


def check_well_defined(data) -> list[CheckReport]:
    """The induced actions on R(E) kill every relation row (truncated rows are skipped)."""
    res = data.residue
    if res is None:
        return []
    inst = data.base
    rows = res.relation_rows()
    E = element_items(inst)
    out = []
    for ident, fn in (("ActsWellDefined(l)", res.mu_left), ("ActsWellDefined(r)", res.mu_right)):
        rep = CheckReport(ident, mode=f"exhaustive {len(rows) * len(E)}")
        for k, row in enumerate(rows):
            for it in E:
                try:
                    img = fn(it.value, row)
                except TruncationOverflow:
                    rep.skipped += 1
                    continue
                rep.samples += 1
                if img:
                    rep.failures.append(((f"row{k}", it.text), data.format_value(img)))
        out.append(rep)
    return out


def check_square(square, *, bounds=None, seed=0, max_tuples=MAX_TUPLES, f_degree=None) -> list[CheckReport]:
    """The E⊙² lemma: bimodule axioms, Inv covariance, mu_r killing f·Inv, [Y∘Z, X] = 0."""
    from .courant import square_module

    inst = square.base
    data = square_module(square)
    b = bounds if bounds is not None else (square.bounds or getattr(inst, "sample_bounds", None))
    V = [Item(square.format_pair(lab), square.basis(lab), square.label_cost(lab)) for lab in square.labels]
    reports = check_module(data, values=V, bounds=b, seed=seed, max_tuples=max_tuples, f_degree=f_degree)
    r = _Runner(inst, b, seed, max_tuples, square.format)
    E = element_items(inst, b[1] if b else None)
    F = poly_items(inst.nvars, _fdeg(b, f_degree), inst.var_names)
    br, I = inst.bracket, square.inv_generator

    def covariance(W, X, Y, Z):
        return square.mu_left(W, I(X, Y, Z)) - I(br(W, X), Y, Z) - I(X, br(W, Y), Z) - I(X, Y, br(W, Z))

    def right_kill(f, W, X, Y, Z):
        return square.mu_right(W, square.act(f, I(X, Y, Z)))

    reports.append(r.run("InvCovariance", [E, E, E, E], covariance))
    reports.append(r.run("InvRightKill", [F, E, E, E, E], right_kill))
    reports.append(r.run("RightAdjSym", [E, E, E], lambda X, Y, Z: br(inst.symmetrized(Y, Z), X), inst.format))
    return reports


SUITES = ("leibniz", "symmetric", "loday", "module", "courant")

"""Free anchored modules (M, a) over Q[x_1..x_d] and anchored maps out of them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import AnchorIncompatible
from .poly import Derivation, Poly, parse_derivation, parse_poly


class AnchoredModule:
    """Free A-module on named generators with anchor rows a(e_i) in Der A."""

    def __init__(self, vars: Sequence[str], gens: Sequence[str], anchor: Sequence[Derivation]):
        self.vars = list(vars)
        self.gens = list(gens)
        self.nvars = len(self.vars)
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("generator names must be distinct")
        if len(anchor) != len(self.gens):
            raise ValueError(f"anchor has {len(anchor)} rows for {len(self.gens)} generators")
        for row in anchor:
            if row.nvars != self.nvars:
                raise ValueError("anchor row has the wrong number of variables")
        self.anchor = list(anchor)

    @classmethod
    def from_config(cls, cfg: dict) -> "AnchoredModule":
        names = cfg.get("vars", [])
        gens = cfg["generators"]
        rows = cfg.get("anchor")
        if rows is None:
            rows = [["0"] * len(names) for _ in gens]
        if len(rows) != len(gens) or any(len(r) != len(names) for r in rows):
            raise ValueError(f"anchor must be a {len(gens)}x{len(names)} matrix of polynomials")
        return cls(names, gens, [parse_derivation(r, names) for r in rows])

    def to_config(self) -> dict:
        return {
            "vars": self.vars,
            "generators": self.gens,
            "anchor": [[c.format(self.vars) for c in row.coeffs] for row in self.anchor],
        }

    @property
    def ngens(self):
        return len(self.gens)

    def gen_index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def poly(self, text: str) -> Poly:
        return parse_poly(text, self.vars)

    def element(self, coords: Sequence[Poly | str]) -> "ModuleElement":
        coords = [self.poly(c) if isinstance(c, str) else c for c in coords]
        return ModuleElement(self, coords)

    def generator(self, i: int) -> "ModuleElement":
        return ModuleElement(
            self, [Poly.one(self.nvars) if k == i else Poly.zero(self.nvars) for k in range(self.ngens)]
        )

    def anchor_of(self, m: "ModuleElement") -> Derivation:
        return anchor_of(m)

    def __repr__(self):
        rows = ", ".join(f"a({g})={a.format(self.vars)}" for g, a in zip(self.gens, self.anchor))
        return f"AnchoredModule(vars={self.vars}, {rows})"


@dataclass(frozen=True)
class ModuleElement:
    module: AnchoredModule
    coords: tuple

    def __init__(self, module, coords):
        coords = tuple(coords)
        if len(coords) != module.ngens:
            raise ValueError(f"expected {module.ngens} coordinates, got {len(coords)}")
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "coords", coords)

    def __add__(self, other):
        return ModuleElement(self.module, [a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, f: Poly) -> "ModuleElement":
        return ModuleElement(self.module, [f * c for c in self.coords])


def anchor_of(m: ModuleElement) -> Derivation:
    """A-linear extension of the anchor: sum_i coords[i] * a(e_i)."""
    mod = m.module
    out = Derivation.zero(mod.nvars)
    for c, row in zip(m.coords, mod.anchor):
        if c:
            out = out + row * c
    return out


@dataclass
class AnchoredMap:
    """Generator images of an anchored map M -> target (a pseudoalgebra instance)."""

    source: AnchoredModule
    target: object
    images: list

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise ValueError("one image per generator is required")

    def image_of_factor(self, exps, gen):
        """phi(x^exps e_gen) = x^exps . phi(e_gen)."""
        return self.target.act(Poly.monomial(exps), self.images[gen])


@dataclass
class MapReport:
    rows: list  # (generator name, expected, got, ok)

    @property
    def verdict(self) -> bool:
        return all(ok for *_, ok in self.rows)

    def format(self, names) -> str:
        lines = []
        for g, want, got, ok in self.rows:
            lines.append(f"{g}: {'pass' if ok else 'FAIL'} a(phi({g}))={got.format(names)} a({g})={want.format(names)}")
        return "\n".join(lines)


def validate_anchored_map(phi: AnchoredMap) -> MapReport:
    anchor = getattr(phi.target, "anchor", None)
    if anchor is None:
        raise AnchorIncompatible("target instance has no anchor")
    rows = []
    for name, want, img in zip(phi.source.gens, phi.source.anchor, phi.images):
        got = anchor(img)
        rows.append((name, want, got, got == want))
    return MapReport(rows)

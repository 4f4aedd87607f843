"""Polynomial coefficient algebra Q[x_1..x_d] and its derivations.

Polynomials are sparse maps from exponent tuples to nonzero Fractions.
Terms are kept in graded-lexicographic order when printed or iterated.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Sequence


class NvarsMismatch(ValueError):
    pass


class PolyParseError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.text = text
        self.pos = pos


def glex_key(exps):
    """Sort key putting higher total degree first, then lex-larger first."""
    return (-sum(exps), tuple(-e for e in exps))


def monomials(nvars: int, max_deg: int, min_deg: int = 0) -> list[tuple[int, ...]]:
    """All exponent tuples with min_deg <= total degree <= max_deg, ascending degree."""
    out = []
    for deg in range(min_deg, max_deg + 1):
        layer = []
        for combo in combinations_with_replacement(range(nvars), deg):
            exps = [0] * nvars
            for j in combo:
                exps[j] += 1
            layer.append(tuple(exps))
        if nvars == 0 and deg > 0:
            layer = []
        layer.sort(key=lambda e: tuple(-x for x in e))
        out.extend(layer)
    return out


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms=None, nvars: int = 1):
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise NvarsMismatch(f"exponent {exps} does not have length {nvars}")
                c = Fraction(c)
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms, nvars):
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @classmethod
    def const(cls, c, nvars):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def zero(cls, nvars):
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars):
        return cls.const(1, nvars)

    @classmethod
    def var(cls, j, nvars):
        exps = [0] * nvars
        exps[j] = 1
        return cls._raw({tuple(exps): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff}, len(exps))

    # -- inspection

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        for exps in sorted(self.terms, key=glex_key):
            yield exps, self.terms[exps]

    def is_monomial(self):
        return len(self.terms) == 1 and next(iter(self.terms.values())) == 1

    def leading_exps(self):
        return min(self.terms, key=glex_key)

    # -- arithmetic

    def _check(self, other):
        if self.nvars != other.nvars:
            raise NvarsMismatch(f"nvars {self.nvars} != {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.nvars)
            return Poly._raw({e: c * other for e, c in self.terms.items()}, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly._raw(terms, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly.one(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def diff(self, j: int) -> "Poly":
        terms = {}
        for e, c in self.terms.items():
            if e[j]:
                ne = list(e)
                ne[j] -= 1
                terms[tuple(ne)] = c * e[j]
        return Poly._raw(terms, self.nvars)

    # -- text

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = format_monomial(exps, names)
            a = abs(c)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self.format(default_names(self.nvars))})"

    __str__ = __repr__


def default_names(nvars):
    if nvars <= 3:
        return ["x", "y", "z"][:nvars]
    return [f"x{j + 1}" for j in range(nvars)]


def format_monomial(exps, names) -> str:
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


_TOKEN = re.compile(r"\s*(?:(\d+)(?:\s*/\s*(\d+))?|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise PolyParseError("zero denominator", text, start)
            out.append(("rat", Fraction(int(m.group(1)), den), start))
        elif m.group(3) is not None:
            out.append(("name", m.group(3), start))
        elif m.group(4):
            out.append(("^", None, start))
        elif m.group(5):
            out.append(("*", None, start))
        else:
            out.append(("sign", m.group(6), start))
        pos = m.end()
    return out


def parse_monomial_factors(tokens, i, names, text):
    """Parse ``factor ('*' factor)*`` starting at tokens[i]; returns (coeff, exps, i)."""
    coeff = Fraction(1)
    exps = [0] * len(names)
    index = {n: j for j, n in enumerate(names)}
    expect_factor = True
    while i < len(tokens):
        kind, val, pos = tokens[i]
        if expect_factor:
            if kind == "rat":
                coeff *= val
                i += 1
            elif kind == "name":
                if val not in index:
                    raise PolyParseError(f"unknown variable {val!r}", text, pos)
                power = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == "^":
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "rat" or tokens[i + 1][1].denominator != 1:
                        raise PolyParseError("expected integer exponent", text, tokens[i][2])
                    power = int(tokens[i + 1][1])
                    i += 2
                exps[index[val]] += power
            else:
                raise PolyParseError("expected number or variable", text, pos)
            expect_factor = False
        elif kind == "*":
            expect_factor = True
            i += 1
        else:
            break
    if expect_factor:
        pos = tokens[i][2] if i < len(tokens) else len(text)
        raise PolyParseError("expected factor", text, pos)
    return coeff, tuple(exps), i


def parse_poly(text: str, names: Sequence[str]) -> Poly:
    """Parse e.g. ``3/2*x^2*y - x + 1`` over the given variable names."""
    tokens = _tokens(text)
    nvars = len(names)
    result: dict = {}
    i = 0
    if not tokens:
        raise PolyParseError("empty polynomial", text, 0)
    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "sign":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError("expected '+' or '-'", text, tokens[i][2])
        coeff, exps, i = parse_monomial_factors(tokens, i, names, text)
        result[exps] = result.get(exps, 0) + sign * coeff
        first = False
    return Poly(result, nvars)


class Derivation:
    """Polynomial vector field sum_j coeffs[j] * d/dx_j acting on Q[x]."""

    __slots__ = ("coeffs", "nvars")

    def __init__(self, coeffs: Iterable[Poly], nvars: int | None = None):
        coeffs = tuple(coeffs)
        if nvars is None:
            nvars = len(coeffs)
        if len(coeffs) != nvars:
            raise NvarsMismatch(f"derivation needs {nvars} components, got {len(coeffs)}")
        for c in coeffs:
            if c.nvars != nvars:
                raise NvarsMismatch("component nvars mismatch")
        self.coeffs = coeffs
        self.nvars = nvars

    @classmethod
    def zero(cls, nvars):
        return cls([Poly.zero(nvars) for _ in range(nvars)], nvars)

    @classmethod
    def partial(cls, j, nvars):
        return cls([Poly.one(nvars) if k == j else Poly.zero(nvars) for k in range(nvars)], nvars)

    def __call__(self, f: Poly) -> Poly:
        return apply_derivation(self, f)

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        _check_d(self, other)
        return Derivation([a + b for a, b in zip(self.coeffs, other.coeffs)], self.nvars)

    def __sub__(self, other):
        _check_d(self, other)
        return Derivation([a - b for a, b in zip(self.coeffs, other.coeffs)], self.nvars)

    def __neg__(self):
        return Derivation([-a for a in self.coeffs], self.nvars)

    def __mul__(self, other):
        # scaling by a rational or by a polynomial (module structure of Der A)
        return Derivation([c * other for c in self.coeffs], self.nvars)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def format(self, names) -> str:
        parts = []
        for name, c in zip(names, self.coeffs):
            if not c:
                continue
            if c == 1:
                parts.append(f"∂{name}")
            elif c == -1:
                parts.append(f"-∂{name}")
            else:
                parts.append(f"({c.format(names)})∂{name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Derivation({self.format(default_names(self.nvars))})"


def _check_d(a, b):
    if a.nvars != b.nvars:
        raise NvarsMismatch(f"nvars {a.nvars} != {b.nvars}")


def apply_derivation(D: Derivation, f: Poly) -> Poly:
    if D.nvars != f.nvars:
        raise NvarsMismatch(f"derivation on {D.nvars} vars applied to poly in {f.nvars}")
    out = Poly.zero(f.nvars)
    for j, c in enumerate(D.coeffs):
        if c:
            df = f.diff(j)
            if df:
                out = out + c * df
    return out


def commutator(D1: Derivation, D2: Derivation) -> Derivation:
    """[D1, D2] = D1 D2 - D2 D1, in coefficient form."""
    _check_d(D1, D2)
    return Derivation(
        [apply_derivation(D1, b) - apply_derivation(D2, a) for a, b in zip(D1.coeffs, D2.coeffs)],
        D1.nvars,
    )


def parse_derivation(components: Sequence[str], names: Sequence[str]) -> Derivation:
    return Derivation([parse_poly(c, names) for c in components], len(names))

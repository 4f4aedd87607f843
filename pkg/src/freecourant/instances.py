"""Pseudoalgebra instances: the common interface, structure-constant Leibniz
algebras over Q, and the polynomial Dorfman bracket on A^d + (A^d)*.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .lincomb import LinComb, format_lincomb
from .poly import Derivation, Poly, apply_derivation, commutator, monomials, parse_poly


class Pseudoalgebra:
    """Interface shared by every instance the checkers understand.

    Elements must support ``+``, ``-``, unary ``-``, scaling by rationals and
    truth testing (falsy means zero).  Instances with a finite Q-basis expose
    ``labels`` and ``basis(label)``; the others leave ``labels`` as None.
    """

    nvars: int = 0
    var_names: list = []
    labels: list | None = None
    bounds: tuple | None = None
    has_pairing = False
    name = "instance"

    def bracket(self, u, v):
        raise NotImplementedError

    def act(self, f: Poly, u):
        raise NotImplementedError

    def anchor(self, u) -> Derivation:
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def symmetrized(self, u, v):
        return self.bracket(u, v) + self.bracket(v, u)

    def basis(self, label):
        raise NotImplementedError

    def label_cost(self, label):
        return None

    def format(self, u) -> str:
        return str(u)

    def pairing(self, u, v) -> Poly:
        raise NotImplementedError(f"{self.name} has no scalar product")

    def D(self, f: Poly):
        raise NotImplementedError(f"{self.name} has no scalar product")

    def poly(self, text: str) -> Poly:
        return parse_poly(text, self.var_names)

    def capabilities_consistent(self) -> bool:
        if not self.has_pairing:
            return True
        return callable(getattr(self, "pairing", None)) and callable(getattr(self, "D", None))


def _frac(x) -> Fraction:
    return Fraction(x) if not isinstance(x, str) else Fraction(x.replace(" ", ""))


class StructureConstants(Pseudoalgebra):
    """Leibniz bracket [e_i, e_j] = sum_k c[i][j][k] e_k on Q^n, zero anchor, A = Q.

    Jacobi is not assumed; non-Leibniz tables are legitimate negative controls.
    An optional symmetric Gram matrix gives a Q-valued pairing.
    """

    name = "sc"
    nvars = 0
    var_names: list = []

    def __init__(self, table, names: Sequence[str] | None = None, pairing=None):
        n = len(table)
        self.dim = n
        self.c = [[[_frac(x) for x in table[i][j]] for j in range(n)] for i in range(n)]
        for i in range(n):
            if len(table[i]) != n or any(len(v) != n for v in table[i]):
                raise ValueError("structure constants must form an n x n x n array")
        self.names = list(names) if names else [f"e{i + 1}" for i in range(n)]
        self.labels = list(range(n))
        self.gram = None
        if pairing is not None:
            self.gram = [[_frac(x) for x in row] for row in pairing]
            if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
                raise ValueError("pairing matrix must be symmetric")
            self.has_pairing = True

    @classmethod
    def from_config(cls, cfg: dict) -> "StructureConstants":
        table = cfg["table"]
        if "dim" in cfg and cfg["dim"] != len(table):
            raise ValueError(f"dim={cfg['dim']} but table has {len(table)} rows")
        return cls(table, cfg.get("names"), cfg.get("pairing"))

    @classmethod
    def abelian(cls, n):
        return cls([[[0] * n for _ in range(n)] for _ in range(n)])

    def zero(self):
        return LinComb()

    def basis(self, i):
        return LinComb({i: 1})

    def bracket(self, u, v):
        out: dict = {}
        for i, a in u.terms.items():
            for j, b in v.terms.items():
                for k, x in enumerate(self.c[i][j]):
                    if x:
                        out[k] = out.get(k, 0) + a * b * x
        return LinComb(out)

    def _scalar(self, f):
        if isinstance(f, Poly):
            if not f.is_constant():
                raise ValueError("structure-constant instances have coefficient algebra Q")
            return f.constant()
        return Fraction(f)

    def act(self, f, u):
        return u * self._scalar(f)

    def anchor(self, u):
        return Derivation.zero(0)

    def pairing(self, u, v) -> Poly:
        if self.gram is None:
            return super().pairing(u, v)
        s = sum((a * b * self.gram[i][j] for i, a in u.terms.items() for j, b in v.terms.items()), Fraction(0))
        return Poly.const(s, 0)

    def D(self, f):
        if self.gram is None:
            return super().D(f)
        return self.zero()

    def format(self, u) -> str:
        return format_lincomb(sorted(u.terms.items()), lambda i: self.names[i])

    def parse(self, text: str):
        from .free import parse_expression

        def word(factors):
            if len(factors) != 1 or any(factors[0][0]):
                raise ValueError(f"structure-constant elements are weight-1 generators: {text!r}")
            return self.basis(self.names.index(factors[0][1]))

        return parse_expression(text, word, self.bracket, [])

    def representation_ok(self, rep) -> bool:
        """True when rep[i] (square matrices on W) satisfy rep([ei, ej]) = [rep ei, rep ej]."""
        mats = [[[_frac(x) for x in row] for row in m] for m in rep]
        m = len(mats[0])

        def mul(a, b):
            return [[sum((a[r][t] * b[t][c] for t in range(m)), Fraction(0)) for c in range(m)] for r in range(m)]

        for i in range(self.dim):
            for j in range(self.dim):
                lhs = [[sum((x * mats[k][r][c] for k, x in enumerate(self.c[i][j])), Fraction(0))
                        for c in range(m)] for r in range(m)]
                ab, ba = mul(mats[i], mats[j]), mul(mats[j], mats[i])
                if any(lhs[r][c] != ab[r][c] - ba[r][c] for r in range(m) for c in range(m)):
                    return False
        return True


class DorfmanElement:
    """X + xi with X a polynomial vector field and xi a polynomial 1-form."""

    __slots__ = ("vec", "form")

    def __init__(self, vec: Sequence[Poly], form: Sequence[Poly]):
        self.vec = tuple(vec)
        self.form = tuple(form)
        if len(self.vec) != len(self.form):
            raise ValueError("vector and form parts need the same number of components")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return DorfmanElement([a + b for a, b in zip(self.vec, other.vec)],
                              [a + b for a, b in zip(self.form, other.form)])

    __radd__ = __add__

    def __sub__(self, other):
        return DorfmanElement([a - b for a, b in zip(self.vec, other.vec)],
                              [a - b for a, b in zip(self.form, other.form)])

    def __neg__(self):
        return DorfmanElement([-a for a in self.vec], [-a for a in self.form])

    def __mul__(self, s):
        if not isinstance(s, (int, Fraction, Poly)):
            return NotImplemented
        return DorfmanElement([a * s for a in self.vec], [a * s for a in self.form])

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.vec) or any(self.form)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self
        if not isinstance(other, DorfmanElement):
            return NotImplemented
        return self.vec == other.vec and self.form == other.form

    __hash__ = None

    def __repr__(self):
        return f"DorfmanElement(vec={self.vec}, form={self.form})"


_DTERM = re.compile(r"^(?:(?P<coef>.*?)\s*\*\s*)?(?P<kind>∂|@|d)(?P<var>[A-Za-z_][A-Za-z_0-9]*)$")


class Dorfman(Pseudoalgebra):
    """Polynomial Dorfman/Courant pseudoalgebra on A^d + (A^d)*.

    [X + xi, Y + eta] = [X, Y] + L_X eta - i_Y d xi
    (X + xi | Y + eta) = scale * (eta(X) + xi(Y)) / 2
    D f = 2 df, so that (Df | X) = X(f) when scale = 1.
    """

    name = "dorfman"
    has_pairing = True

    def __init__(self, names: Sequence[str], pairing_scale=1, sample_degree=3):
        self.var_names = list(names)
        self.nvars = len(self.var_names)
        self.pairing_scale = Fraction(pairing_scale)
        # checkers enumerate tuples of basis elements with summed degree <= this
        self.sample_bounds = (None, sample_degree)

    @classmethod
    def from_config(cls, cfg: dict) -> "Dorfman":
        return cls(cfg["vars"], cfg.get("pairing_scale", 1), cfg.get("sample_degree", 3))

    def _zeros(self):
        return [Poly.zero(self.nvars)] * self.nvars

    def zero(self):
        return DorfmanElement(self._zeros(), self._zeros())

    def element(self, vec=None, form=None):
        def conv(parts):
            if parts is None:
                return self._zeros()
            return [self.poly(p) if isinstance(p, str) else p for p in parts]

        return DorfmanElement(conv(vec), conv(form))

    def vector_field(self, j, coeff=None):
        vec = self._zeros()
        vec[j] = coeff if coeff is not None else Poly.one(self.nvars)
        return DorfmanElement(vec, self._zeros())

    def one_form(self, j, coeff=None):
        form = self._zeros()
        form[j] = coeff if coeff is not None else Poly.one(self.nvars)
        return DorfmanElement(self._zeros(), form)

    def basis_elements(self, max_deg: int) -> list[DorfmanElement]:
        """Q-basis x^a d/dx_j, x^a dx_j with deg x^a <= max_deg."""
        out = []
        for exps in monomials(self.nvars, max_deg):
            m = Poly.monomial(exps)
            for j in range(self.nvars):
                out.append(self.vector_field(j, m))
            for j in range(self.nvars):
                out.append(self.one_form(j, m))
        return out

    def sample_items(self, max_deg=None):
        from .checks import Item

        deg = max_deg if max_deg is not None else self.sample_bounds[1]
        return [Item(self.format(u), u, (1, self._degree(u))) for u in self.basis_elements(deg)]

    @staticmethod
    def _degree(u):
        return max(c.degree() for c in (*u.vec, *u.form) if c)

    def _derivation(self, u):
        return Derivation(u.vec, self.nvars)

    def lie_derivative(self, X: Derivation, eta: Sequence[Poly]) -> list[Poly]:
        n = self.nvars
        out = []
        for j in range(n):
            s = apply_derivation(X, eta[j])
            for i in range(n):
                if eta[i]:
                    s = s + eta[i] * X.coeffs[i].diff(j)
            out.append(s)
        return out

    def contract_d(self, Y: Sequence[Poly], xi: Sequence[Poly]) -> list[Poly]:
        """i_Y d xi in components: sum_i Y^i (d_i xi_j - d_j xi_i)."""
        n = self.nvars
        out = []
        for j in range(n):
            s = Poly.zero(n)
            for i in range(n):
                if Y[i]:
                    s = s + Y[i] * (xi[j].diff(i) - xi[i].diff(j))
            out.append(s)
        return out

    def bracket(self, u, v):
        X, Y = self._derivation(u), self._derivation(v)
        vec = commutator(X, Y).coeffs
        lx = self.lie_derivative(X, v.form)
        iy = self.contract_d(v.vec, u.form)
        return DorfmanElement(vec, [a - b for a, b in zip(lx, iy)])

    def act(self, f: Poly, u):
        return u * f

    def anchor(self, u) -> Derivation:
        return self._derivation(u)

    def pairing(self, u, v) -> Poly:
        s = Poly.zero(self.nvars)
        for j in range(self.nvars):
            s = s + v.form[j] * u.vec[j] + u.form[j] * v.vec[j]
        return s * (self.pairing_scale / 2)

    def D(self, f: Poly):
        return DorfmanElement(self._zeros(), [f.diff(j) * 2 for j in range(self.nvars)])

    def loday_D(self, f: Poly, X, Y):
        """Right anchor (Df)(X, Y) = (X|Y) Df."""
        return self.act(self.pairing(X, Y), self.D(f))

    def format(self, u) -> str:
        items = []
        for prefix, parts in (("∂", u.vec), ("d", u.form)):
            for name, c in zip(self.var_names, parts):
                if c:
                    items.append((prefix + name, c))
        if not items:
            return "0"
        out = []
        for sym, c in items:
            if len(c.terms) == 1:
                (exps, k), = c.terms.items()
                mono = Poly.monomial(exps).format(self.var_names)
                a = abs(k)
                body = sym if mono == "1" else f"{mono}*{sym}"
                if a != 1:
                    body = f"{a}*{body}"
                neg = k < 0
            else:
                body = f"({c.format(self.var_names)})*{sym}"
                neg = False
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def parse(self, text: str) -> DorfmanElement:
        """Parse e.g. ``∂x + x*dx - (x + 1)*dy``; ``@x`` is the ASCII form of ``∂x``."""
        out = self.zero()
        for sign, term in _split_top(text):
            m = _DTERM.match(term.strip())
            if not m or m.group("var") not in self.var_names:
                raise ValueError(f"cannot parse Dorfman term {term!r}")
            coef = m.group("coef")
            c = Poly.one(self.nvars)
            if coef:
                coef = coef.strip()
                if coef.startswith("(") and coef.endswith(")"):
                    coef = coef[1:-1]
                c = self.poly(coef)
            j = self.var_names.index(m.group("var"))
            piece = self.one_form(j, c) if m.group("kind") == "d" else self.vector_field(j, c)
            out = out + piece * sign
        return out


def _split_top(text: str):
    """Split on top-level +/- (outside parentheses), yielding (sign, term)."""
    depth = 0
    sign = 1
    cur = ""
    out = []
    stripped = text.strip()
    for ch in stripped:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith(("*", "^", "/")):
            out.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
            continue
        if depth == 0 and ch in "+-" and not cur.strip():
            sign *= 1 if ch == "+" else -1
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur))
    if not out:
        raise ValueError(f"empty element {text!r}")
    return out


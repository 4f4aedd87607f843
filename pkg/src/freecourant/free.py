"""The free Leibniz pseudoalgebra on an anchored module, truncated.

A word is a tuple of factors ``(exps, gen)`` standing for the tensor product
(over Q) of the module elements ``x^exps e_gen``.  Elements are rational
combinations of words; every element carries the truncation bounds
``(W_max, P_max)`` on tensor weight and total polynomial degree.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Callable

from .anchored import AnchoredModule, ModuleElement
from .errors import BoundsMismatch, TruncationOverflow
from .instances import Pseudoalgebra
from .lincomb import LinComb, format_lincomb
from .poly import Derivation, Poly, apply_derivation, commutator, format_monomial, monomials

TENSOR = "⊗"
ASCII_TENSOR = " ox "


def weight(word) -> int:
    return len(word)


def pdeg(word) -> int:
    return sum(sum(e) for e, _ in word)


def word_key(word):
    """Canonical order: higher weight first, then graded-lex on the factor sequence."""
    flat = []
    for exps, gen in word:
        flat.append((-sum(exps), tuple(-e for e in exps), gen))
    return (-len(word), -pdeg(word), tuple(flat))


class FreeElement(LinComb):
    __slots__ = ("bounds",)

    def __init__(self, terms=None, bounds=None):
        super().__init__(terms)
        self.bounds = bounds

    def _new(self, terms):
        out = FreeElement.__new__(FreeElement)
        out.terms = terms
        out.bounds = self.bounds
        return out

    def _compatible(self, other):
        b = getattr(other, "bounds", None)
        if b is not None and self.bounds is not None and b != self.bounds:
            raise BoundsMismatch(f"elements truncated at {self.bounds} and {b}")

    def words(self):
        return sorted(self.terms, key=word_key)

    def items(self):
        return [(w, self.terms[w]) for w in self.words()]

    @property
    def max_weight(self):
        return max((len(w) for w in self.terms), default=0)


def _acc(out, key, c):
    s = out.get(key, 0) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class FreeLeibniz(Pseudoalgebra):
    """F M = (reduced tensor algebra, universal Leibniz bracket, induced anchor)."""

    name = "free"

    def __init__(self, module: AnchoredModule, wmax: int, pmax: int):
        if wmax < 1 or pmax < 0:
            raise ValueError("bounds must satisfy wmax >= 1, pmax >= 0")
        self.module = module
        self.nvars = module.nvars
        self.var_names = module.vars
        self.wmax = wmax
        self.pmax = pmax
        self.bounds = (wmax, pmax)
        self._labels = None
        self._bracket_memo: dict = {}
        self._act_memo: dict = {}
        self._anchor_memo: dict = {}
        self._factor_anchor = {}

    # -- basis

    @property
    def labels(self) -> list:
        if self._labels is None:
            self._labels = self.words()
        return self._labels

    def words(self, max_weight=None, max_pdeg=None) -> list:
        """All words within the bounds, in canonical order."""
        wmax = self.wmax if max_weight is None else max_weight
        pmax = self.pmax if max_pdeg is None else max_pdeg
        factors = [(e, i) for e in monomials(self.nvars, pmax) for i in range(self.module.ngens)]
        out = []

        def grow(prefix, budget):
            if prefix:
                out.append(tuple(prefix))
            if len(prefix) == wmax:
                return
            for f in factors:
                d = sum(f[0])
                if d <= budget:
                    prefix.append(f)
                    grow(prefix, budget - d)
                    prefix.pop()

        grow([], pmax)
        out.sort(key=word_key)
        return out

    def label_cost(self, word):
        return (len(word), pdeg(word))

    def fits(self, word) -> bool:
        return len(word) <= self.wmax and pdeg(word) <= self.pmax

    def element(self, terms) -> FreeElement:
        for w, c in terms.items():
            if c and not self.fits(w):
                raise TruncationOverflow(
                    f"word {self.format_word(w)} exceeds bounds (W_max={self.wmax}, P_max={self.pmax})", w
                )
        return FreeElement(terms, self.bounds)

    def zero(self) -> FreeElement:
        return FreeElement({}, self.bounds)

    def basis(self, word) -> FreeElement:
        return self.element({tuple(word): Fraction(1)})

    def _own(self, u):
        if not isinstance(u, FreeElement):
            raise TypeError(f"expected a FreeElement, got {type(u).__name__}")
        if u.bounds != self.bounds:
            raise BoundsMismatch(f"element truncated at {u.bounds}, context at {self.bounds}")

    # -- inclusion of M

    def include(self, m: ModuleElement) -> FreeElement:
        terms: dict = {}
        for i, coeff in enumerate(m.coords):
            for exps, c in coeff.terms.items():
                _acc(terms, (((tuple(exps), i),)), c)
        return self.element(terms)

    def generator(self, i: int) -> FreeElement:
        return self.basis((((0,) * self.nvars, i),))

    # -- the A-module structure

    def factor_anchor(self, factor) -> Derivation:
        """a(x^exps e_i) = x^exps a(e_i)."""
        d = self._factor_anchor.get(factor)
        if d is None:
            exps, i = factor
            d = self.module.anchor[i] * Poly.monomial(exps)
            self._factor_anchor[factor] = d
        return d

    def _act_word(self, beta, word) -> dict:
        key = (beta, word)
        hit = self._act_memo.get(key)
        if hit is not None:
            return hit
        if len(word) == 1:
            (alpha, i), = word
            out = {((tuple(a + b for a, b in zip(alpha, beta)), i),): Fraction(1)}
        else:
            m1, rest = word[0], word[1:]
            out = {}
            for w, c in self._act_word(beta, rest).items():
                _acc(out, (m1,) + w, c)
            g = apply_derivation(self.factor_anchor(m1), Poly.monomial(beta))
            for gamma, c in g.terms.items():
                for w, c2 in self._act_word(gamma, rest).items():
                    _acc(out, w, -c * c2)
        self._act_memo[key] = out
        return out

    def act(self, f: Poly, u: FreeElement) -> FreeElement:
        """f . u by the recursion f(m1 (x) rest) = m1 (x) f(rest) - a(m1)(f) rest."""
        self._own(u)
        if f.nvars != self.nvars:
            raise ValueError("polynomial over the wrong number of variables")
        out: dict = {}
        for beta, c in f.terms.items():
            for w, cw in u.terms.items():
                for w2, c2 in self._act_word(beta, w).items():
                    _acc(out, w2, c * cw * c2)
        return self.element(out)

    # -- bracket

    def _bracket_words(self, u, v) -> dict:
        key = (u, v)
        hit = self._bracket_memo.get(key)
        if hit is not None:
            return hit
        if len(u) == 1:
            out = {u + v: Fraction(1)}
        else:
            # [m (x) w, v] = [m, [w, v]] - [w, [m, v]]
            m, w = u[:1], u[1:]
            out = {}
            for t, c in self._bracket_words(w, v).items():
                _acc(out, m + t, c)
            for t, c in self._bracket_words(w, m + v).items():
                _acc(out, t, -c)
        self._bracket_memo[key] = out
        return out

    def bracket(self, u: FreeElement, v: FreeElement) -> FreeElement:
        self._own(u)
        self._own(v)
        for a in u.terms:
            for b in v.terms:
                if len(a) + len(b) > self.wmax or pdeg(a) + pdeg(b) > self.pmax:
                    raise TruncationOverflow(
                        f"bracket of {self.format_word(a)} and {self.format_word(b)} exceeds bounds", a + b
                    )
        out: dict = {}
        for a, ca in u.terms.items():
            for b, cb in v.terms.items():
                for t, c in self._bracket_words(a, b).items():
                    _acc(out, t, ca * cb * c)
        return FreeElement(out, self.bounds)

    # -- anchor

    def word_anchor(self, word) -> Derivation:
        d = self._anchor_memo.get(word)
        if d is None:
            if len(word) == 1:
                d = self.factor_anchor(word[0])
            else:
                d = commutator(self.factor_anchor(word[0]), self.word_anchor(word[1:]))
            self._anchor_memo[word] = d
        return d

    def anchor(self, u: FreeElement) -> Derivation:
        """Induced anchor: nested commutators [a(v1), [a(v2), ...]]."""
        out = Derivation.zero(self.nvars)
        for w, c in u.terms.items():
            out = out + self.word_anchor(w) * c
        return out

    # -- text

    def format_factor(self, factor) -> str:
        exps, i = factor
        mono = format_monomial(exps, self.var_names)
        gen = self.module.gens[i]
        return f"({gen})" if mono == "1" else f"({mono}*{gen})"

    def format_word(self, word, ascii=False) -> str:
        return (ASCII_TENSOR if ascii else TENSOR).join(self.format_factor(f) for f in word)

    def format(self, u, ascii=False) -> str:
        items = sorted(u.terms.items(), key=lambda kv: word_key(kv[0]))
        return format_lincomb(items, lambda w: self.format_word(w, ascii))

    def parse(self, text: str) -> FreeElement:
        """Parse an element or bracket expression, e.g. ``[(e1), (x*e1)] - 2/3 (e1)``."""
        return parse_expression(text, self._word_from_factors, self.bracket, self.var_names)

    def _word_from_factors(self, factors):
        word = tuple((exps, self.module.gen_index(g)) for exps, g in factors)
        return self.basis(word)


class ExpressionError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.pos = pos


_RAT = re.compile(r"(\d+)(?:\s*/\s*(\d+))?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def parse_expression(text: str, word: Callable, bracket: Callable, var_names) -> object:
    """Recursive-descent parser shared by the element grammars.

    expr := ['+'|'-'] term (('+'|'-') term)* ; term := [rat ['*']] atom ;
    atom := '[' expr ',' expr ']' | factor (('⊗' | ' ox ') factor)* ;
    factor := '(' [varpow ('*' varpow)* '*'?] gen ')' | gen
    """
    pos = 0
    n = len(text)

    def ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def err(msg):
        raise ExpressionError(msg, text, pos)

    def factor():
        nonlocal pos
        ws()
        bare = _NAME.match(text, pos)
        if bare:
            pos = bare.end()
            return (tuple([0] * len(var_names)), bare.group(0))
        if pos >= n or text[pos] != "(":
            err("expected '(' or a generator name")
        close = text.find(")", pos)
        if close < 0:
            err("unclosed '('")
        inner = text[pos + 1:close]
        toks = [t for t in re.split(r"[\s*]+", inner.strip()) if t]
        if not toks:
            err("empty factor")
        gen = toks[-1]
        exps = [0] * len(var_names)
        for t in toks[:-1]:
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", t)
            if t == "1":
                continue
            if not m or m.group(1) not in var_names:
                err(f"bad monomial factor {t!r}")
            exps[var_names.index(m.group(1))] += int(m.group(2) or 1)
        pos = close + 1
        return (tuple(exps), gen)

    def is_tensor():
        nonlocal pos
        save = pos
        ws()
        if text.startswith(TENSOR, pos):
            pos += len(TENSOR)
            return True
        if text.startswith("ox", pos) and pos > save:
            after = pos + 2
            if after < n and (text[after].isspace() or text[after] == "("):
                pos = after
                return True
        pos = save
        return False

    def atom():
        nonlocal pos
        ws()
        if pos < n and text[pos] == "[":
            pos += 1
            a = expr()
            ws()
            if pos >= n or text[pos] != ",":
                err("expected ','")
            pos += 1
            b = expr()
            ws()
            if pos >= n or text[pos] != "]":
                err("expected ']'")
            pos += 1
            return bracket(a, b)
        start = pos
        factors = [factor()]
        while is_tensor():
            factors.append(factor())
        try:
            return word(factors)
        except (KeyError, ValueError) as ex:
            pos = start
            err(ex.args[0] if ex.args else "bad word")

    def term():
        nonlocal pos
        ws()
        coeff = Fraction(1)
        m = _RAT.match(text, pos)
        if m:
            den = int(m.group(2) or 1)
            if den == 0:
                err("zero denominator")
            coeff = Fraction(int(m.group(1)), den)
            pos = m.end()
            ws()
            if pos < n and text[pos] == "*":
                pos += 1
        return atom() * coeff

    def expr():
        nonlocal pos
        ws()
        sign = 1
        if pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        total = term() * sign
        while True:
            ws()
            if pos < n and text[pos] in "+-":
                s = -1 if text[pos] == "-" else 1
                pos += 1
                total = total + term() * s
            else:
                return total

    result = expr()
    ws()
    if pos != n:
        err("unexpected trailing input")
    return result

from __future__ import annotations

from fractions import Fraction


class LinComb:
    """Finite Q-linear combination of hashable basis labels.

    Zero coefficients are never stored.  Subclasses that carry extra context
    (truncation bounds, a formatter) override ``_new``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = Fraction(c)
        self.terms = clean

    def _new(self, terms):
        out = self.__class__.__new__(self.__class__)
        LinComb.__init__(out)
        out.terms = terms
        return out

    def _compatible(self, other):
        pass

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, label):
        return self.terms.get(label, Fraction(0))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, LinComb):
            return NotImplemented
        self._compatible(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return self._new(terms)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        self._compatible(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) - c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return self._new(terms)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        if not scalar:
            return self._new({})
        return self._new({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {c}" for k, c in self.terms.items())
        return f"{self.__class__.__name__}({{{inner}}})"


def format_lincomb(items, fmt_label, sep=" ") -> str:
    """Render ``[(label, coeff), ...]`` as ``a - 2/3 b + c``; unit coefficients are omitted."""
    parts = []
    for label, c in items:
        a = abs(c)
        body = fmt_label(label) if a == 1 else f"{a}{sep}{fmt_label(label)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"

"""Exact linear algebra over Q on finite pieces: echelon spans, saturation, quotients.

Vectors are sparse dicts ``label -> Fraction`` (or ``LinComb`` instances) over
the labels of a ``FilteredPiece``.  Pivots are the first nonzero column in the
piece order, so the reduced row-echelon form is canonical regardless of the
order in which vectors were added.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .errors import SaturationFailure, TruncationOverflow
from .lincomb import LinComb


class LengthMismatch(ValueError):
    pass


class FilteredPiece:
    """Ordered finite set of basis labels.

    ``grade`` maps a label to the filtration degree used for per-grade
    reporting (tensor weight for words, combined weight for pairs).
    """

    def __init__(self, labels: Sequence[Hashable], grade: Callable | None = None):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("piece labels must be distinct")
        self.grade = grade or (lambda lab: 0)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self.index

    def to_cols(self, vec) -> dict[int, Fraction]:
        terms = vec.terms if isinstance(vec, LinComb) else vec
        out = {}
        for lab, c in terms.items():
            if c:
                try:
                    out[self.index[lab]] = Fraction(c)
                except KeyError:
                    raise LengthMismatch(f"label {lab!r} is not in the piece") from None
        return out

    def from_cols(self, cols) -> dict:
        return {self.labels[i]: c for i, c in sorted(cols.items())}

    def dense(self, vec) -> list[Fraction]:
        cols = self.to_cols(vec)
        return [cols.get(i, Fraction(0)) for i in range(len(self.labels))]


class Subspace:
    """Span of vectors in a piece, kept in reduced row-echelon form with unit pivots."""

    def __init__(self, piece: FilteredPiece):
        self.piece = piece
        self._rows: dict[int, dict[int, Fraction]] = {}
        self._occ: dict[int, set[int]] = defaultdict(set)

    def copy(self) -> "Subspace":
        s = Subspace(self.piece)
        s._rows = {p: dict(r) for p, r in self._rows.items()}
        for p, r in s._rows.items():
            for c in r:
                s._occ[c].add(p)
        return s

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def pivot_labels(self) -> list:
        return [self.piece.labels[p] for p in self.pivots]

    def rows(self) -> list[dict]:
        """Basis rows as label dicts, in pivot order."""
        return [self.piece.from_cols(self._rows[p]) for p in self.pivots]

    def _reduce_cols(self, v: dict[int, Fraction]) -> dict[int, Fraction]:
        v = dict(v)
        for p in [c for c in v if c in self._rows]:
            f = v.get(p)
            if not f:
                continue
            for c, x in self._rows[p].items():
                s = v.get(c, 0) - f * x
                if s:
                    v[c] = s
                else:
                    v.pop(c, None)
        return v

    def add(self, vec) -> bool:
        """Add a vector to the span; returns True when the rank grew."""
        v = self._reduce_cols(self.piece.to_cols(vec))
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        for q in list(self._occ.get(p, ())):
            row = self._rows[q]
            f = row[p]
            for c, x in v.items():
                s = row.get(c, 0) - f * x
                if s:
                    if c not in row:
                        self._occ[c].add(q)
                    row[c] = s
                else:
                    if c in row:
                        del row[c]
                        self._occ[c].discard(q)
        self._rows[p] = v
        for c in v:
            self._occ[c].add(p)
        return True

    def reduce(self, vec) -> dict:
        return self.piece.from_cols(self._reduce_cols(self.piece.to_cols(vec)))

    def contains(self, vec) -> bool:
        return not self._reduce_cols(self.piece.to_cols(vec))


def echelonize(vectors: Iterable, piece: FilteredPiece) -> Subspace:
    space = Subspace(piece)
    for v in vectors:
        if not isinstance(v, (dict, LinComb)):
            v = list(v)
            if len(v) != len(piece):
                raise LengthMismatch(f"vector of length {len(v)} in piece of size {len(piece)}")
            v = {piece.labels[i]: x for i, x in enumerate(v) if x}
        space.add(v)
    return space


class QuotientSpace:
    """piece / relations, with projection onto the non-pivot (cobasis) labels."""

    def __init__(self, piece: FilteredPiece, relations: Subspace):
        if relations.piece is not piece:
            raise ValueError("relations live in a different piece")
        self.piece = piece
        self.relations = relations
        pivots = set(relations.pivots)
        self.cobasis = [lab for i, lab in enumerate(piece.labels) if i not in pivots]

    def project(self, vec) -> dict:
        return self.relations.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self.cobasis)

    def graded_dims(self) -> list[tuple[object, int, int, int]]:
        """Per filtration grade: (grade, dim_free, dim_relations, dim_quotient)."""
        free = defaultdict(int)
        rel = defaultdict(int)
        for lab in self.piece.labels:
            free[self.piece.grade(lab)] += 1
        for lab in self.relations.pivot_labels():
            rel[self.piece.grade(lab)] += 1
        return [(g, free[g], rel[g], free[g] - rel[g]) for g in sorted(free)]


def project(vec, q: QuotientSpace) -> dict:
    return q.project(vec)


@dataclass
class SaturationResult:
    space: Subspace
    delta: int
    history: list[int]
    discarded: int = 0
    generated: list = field(default_factory=list)


@dataclass
class Operator:
    """A linear map to close a span under.

    ``domain(label)`` says on which coordinates the map stays inside the
    piece; the span is closed on its intersection with that coordinate
    subspace.  Operators with the same ``key`` share a domain.
    """

    apply: Callable[[dict], object]
    domain: Callable[[Hashable], bool] | None = None
    key: Hashable = None


def restricted_rows(space: Subspace, allowed: Callable[[Hashable], bool] | None) -> list[dict]:
    """A basis of space ∩ span{labels with allowed(label)}.

    Re-echelonizes with the disallowed columns first; rows whose pivot is
    allowed then have no disallowed entries, and they span the intersection.
    """
    if allowed is None:
        return space.rows()
    labels = space.piece.labels
    flags = [bool(allowed(lab)) for lab in labels]
    if all(flags):
        return space.rows()
    order = [lab for lab, ok in zip(labels, flags) if not ok] + [lab for lab, ok in zip(labels, flags) if ok]
    tmp = Subspace(FilteredPiece(order))
    for row in space.rows():
        tmp.add(row)
    return [r for p, r in zip(tmp.pivots, tmp.rows()) if flags[space.piece.index[order[p]]]]


def close_span(space: Subspace, operators: Sequence[Operator], run, seen: dict | None = None) -> None:
    """Grow ``space`` until op(space ∩ dom op) ⊆ space for every operator.

    ``seen`` caches the rows already pushed through each operator group and
    may be reused across calls on the same growing space.
    """
    groups: dict = {}
    for op in operators:
        groups.setdefault(op.key, []).append(op)
    seen = {} if seen is None else seen
    for k in groups:
        seen.setdefault(k, set())
    changed = True
    while changed:
        changed = False
        for key, ops in groups.items():
            for row in restricted_rows(space, ops[0].domain):
                sig = frozenset(row.items())
                if sig in seen[key]:
                    continue
                seen[key].add(sig)
                for op in ops:
                    w = run(lambda op=op, row=row: op.apply(row))
                    if w is not None and space.add(w):
                        changed = True


def saturate(
    piece: FilteredPiece,
    generators: Callable[[int], Iterable[Callable[[], object]]],
    operators: Sequence[Operator] = (),
    delta_start: int = 0,
    delta_max: int = 8,
    initial: Subspace | None = None,
    keep_generated: bool = False,
) -> SaturationResult:
    """Grow a span until its rank is unchanged for two consecutive rounds.

    Round ``delta`` adds ``generators(delta)`` (thunks; those raising
    TruncationOverflow are discarded and counted) and then closes the span
    under ``operators``, typically multiplication by each variable and, for
    ideals, brackets with basis elements.  Closure under the variables gives
    closure under every monomial that keeps a vector inside the piece.
    """
    space = initial.copy() if initial is not None else Subspace(piece)
    history: list[int] = []
    discarded = 0
    generated = []
    seen: dict = {}

    def run(thunk):
        nonlocal discarded
        try:
            return thunk()
        except TruncationOverflow:
            discarded += 1
            return None

    for delta in range(delta_start, delta_max + 1):
        for thunk in generators(delta):
            v = run(thunk)
            if v is None:
                continue
            if keep_generated:
                generated.append(v)
            space.add(v)
        close_span(space, operators, run, seen)
        history.append(space.rank)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return SaturationResult(space, delta, history, discarded, generated)
    raise SaturationFailure(f"rank did not stabilize by delta={delta_max}", history)

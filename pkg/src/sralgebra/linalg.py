"""Sparse exact linear algebra over a NumberField.

Vectors are dicts ``column -> FieldScalar`` with integer columns; column order
is the integer order.  :class:`Echelon` maintains an incremental row-echelon
form whose pivot is always the smallest column of its row.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass


def axpy(target: dict, factor, row: dict) -> None:
    """target += factor * row, dropping zeros."""
    for col, val in row.items():
        cur = target.get(col)
        if cur is None:
            target[col] = factor * val
        else:
            s = cur + factor * val
            if s:
                target[col] = s
            else:
                del target[col]


class Echelon:
    """Incremental row-echelon form; pivots normalized to 1."""

    def __init__(self, field):
        self.field = field
        self.rows = {}  # pivot column -> row

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Reduce ``vec`` by the current rows (processing columns in increasing order)."""
        vec = dict(vec)
        heap = list(vec)
        heapq.heapify(heap)
        seen = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen:
                continue
            seen.add(col)
            val = vec.get(col)
            if val is None:
                continue
            prow = self.rows.get(col)
            if prow is None:
                continue
            factor = -val
            for c2, v2 in prow.items():
                cur = vec.get(c2)
                if cur is None:
                    vec[c2] = factor * v2
                    if c2 not in seen:
                        heapq.heappush(heap, c2)
                else:
                    s = cur + factor * v2
                    if s:
                        vec[c2] = s
                    else:
                        del vec[c2]
        return vec

    def add(self, vec: dict) -> int | None:
        """Insert a row; returns its new pivot column, or None if dependent."""
        vec = self.reduce(vec)
        if not vec:
            return None
        pivot = min(vec)
        inv = vec[pivot].inv()
        row = {c: v * inv for c, v in vec.items()}
        row[pivot] = self.field.one
        self.rows[pivot] = row
        return pivot

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def reduced_rows(self) -> list:
        """Rows in reduced echelon form, sorted by pivot."""
        pivots = sorted(self.rows)
        out = {}
        for p in reversed(pivots):
            row = dict(self.rows[p])
            for q in list(row):
                if q != p and q in out:
                    axpy(row, -row[q], out[q])
            out[p] = row
        return [out[p] for p in pivots]


def nullspace(rows, columns, field) -> list:
    """Basis of {x : r . x = 0 for all rows}, x supported on ``columns`` (ordered).

    Returned vectors are in reduced echelon form with respect to ``columns``.
    """
    index = {c: k for k, c in enumerate(columns)}
    ech = Echelon(field)
    for r in rows:
        vec = {index[c]: v for c, v in r.items() if v}
        if vec:
            ech.add(vec)
    rref = ech.reduced_rows()
    pivots = [min(r) for r in rref]
    pivset = set(pivots)
    basis = []
    for free in range(len(columns)):
        if free in pivset:
            continue
        vec = {free: field.one}
        for p, r in zip(pivots, rref):
            v = r.get(free)
            if v:
                vec[p] = -v
        basis.append(vec)
    return canonical_rows([{columns[k]: v for k, v in b.items()} for b in basis], columns, field)


def canonical_rows(vectors, columns, field) -> list:
    """Reduced echelon basis of span(vectors) in the order given by ``columns``."""
    index = {c: k for k, c in enumerate(columns)}
    ech = Echelon(field)
    for v in vectors:
        vec = {index[c]: x for c, x in v.items() if x}
        if vec:
            ech.add(vec)
    return [{columns[k]: x for k, x in r.items()} for r in ech.reduced_rows()]


def left_kernel(rows, field) -> list:
    """Basis of {a : sum_i a_i rows[i] = 0}; vectors are dicts over row indices."""
    n = len(rows)
    # column-major: transpose into equations over row indices
    cols = {}
    for i, r in enumerate(rows):
        for c, v in r.items():
            if v:
                cols.setdefault(c, {})[i] = v
    return nullspace(list(cols.values()), list(range(n)), field)


@dataclass(frozen=True)
class Subspace:
    """Subspace of a coordinate space with ordered ``columns`` (e.g. monomials).

    ``rows`` are in reduced echelon form, so equality of Subspaces is equality
    of their rows.
    """

    columns: tuple
    rows: tuple  # tuple of tuples of (column, scalar) in column order

    @classmethod
    def from_vectors(cls, vectors, columns, field) -> "Subspace":
        columns = tuple(columns)
        rows = canonical_rows(vectors, columns, field)
        return cls._pack(rows, columns)

    @classmethod
    def _pack(cls, rows, columns):
        index = {c: k for k, c in enumerate(columns)}
        packed = tuple(
            tuple(sorted(r.items(), key=lambda kv: index[kv[0]])) for r in rows
        )
        return cls(columns, packed)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vectors(self) -> list:
        return [dict(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rows == other.rows and set(self.columns) == set(other.columns)

    def __hash__(self):
        return hash(self.rows)

    def contains(self, vec: dict, field) -> bool:
        index = {c: k for k, c in enumerate(self.columns)}
        ech = Echelon(field)
        for r in self.rows:
            ech.add({index[c]: v for c, v in r})
        return ech.contains({index[c]: v for c, v in vec.items() if v})

    def intersect(self, other: "Subspace", field) -> "Subspace":
        if not self.rows or not other.rows:
            return Subspace(self.columns, ())
        stacked = self.vectors() + [{c: -v for c, v in r.items()} for r in other.vectors()]
        combos = left_kernel(stacked, field)
        k = len(self.rows)
        vecs = []
        for combo in combos:
            vec = {}
            for i, a in combo.items():
                if i < k:
                    axpy(vec, a, stacked[i])
            vecs.append(vec)
        return Subspace.from_vectors(vecs, self.columns, field)

    def __le__(self, other):
        raise TypeError("use contains()/intersect() with an explicit field")

"""Exact sparse linear algebra over the rationals.

Everything here is fraction-free on the inside: rows are scaled to integer
content and eliminated by cross-multiplication with gcd normalization, so no
floating point and no uncontrolled denominator growth.  Only the final
back-substitution (reduced echelon form, kernel vectors) produces Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


class SparseMatrix:
    """Sparse matrix over the rationals; absent entries are zero."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    def __getitem__(self, key):
        return self.entries.get(key, Fraction(0))

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {key} out of range")
        v = Fraction(value)
        if v:
            self.entries[key] = v
        else:
            self.entries.pop(key, None)

    def row_dicts(self):
        """Rows as integer dicts col -> value, denominators cleared per row."""
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        out = []
        for row in rows:
            if row:
                scale = lcm(*(v.denominator for v in row.values()))
                row = {j: int(v * scale) for j, v in row.items()}
            out.append(_strip_content(row))
        return out

    def mul_vector(self, vec):
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            out[i] += v * vec[j]
        return out


def _strip_content(row):
    """Divide an integer row by the gcd of its entries."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _combine(row, prow, col):
    """Eliminate `col` from `row` using pivot row `prow`, staying integral."""
    a = prow[col]
    b = row[col]
    out = {}
    for j in row.keys() | prow.keys():
        v = a * row.get(j, 0) - b * prow.get(j, 0)
        if v:
            out[j] = v
    return _strip_content(out)


def _echelon(rows, cols):
    """Forward elimination; returns [(pivot_col, integer pivot row), ...].

    Pivoting is deterministic: leftmost column first, ties broken by the
    first remaining row, so kernel bases are reproducible across runs.
    """
    pending = [r for r in rows if r]
    pivots = []
    for c in range(cols):
        idx = None
        for k, r in enumerate(pending):
            if r.get(c):
                idx = k
                break
        if idx is None:
            continue
        prow = pending.pop(idx)
        pending = [_combine(r, prow, c) if r.get(c) else r for r in pending]
        pending = [r for r in pending if r]
        pivots.append((c, prow))
        if not pending:
            break
    return pivots


def rank(m: SparseMatrix) -> int:
    """Exact rank over the rationals."""
    return len(_echelon(m.row_dicts(), m.cols))


def _rref(pivots):
    """Back-substitute echelon pivot rows to reduced form with unit pivots."""
    reduced = []  # processed bottom-up, pivot columns decreasing
    for c, row in reversed(pivots):
        r = {j: Fraction(v, row[c]) for j, v in row.items()}
        for c2, r2 in reduced:
            f = r.get(c2)
            if f:
                for j, v in r2.items():
                    w = r.get(j, Fraction(0)) - f * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
        reduced.append((c, r))
    reduced.reverse()
    return reduced


def kernel_basis(m: SparseMatrix):
    """Basis of the right null space of `m`, as lists of Fractions.

    One basis vector per free column, in column order; the vector for free
    column f has entry 1 there and is supported on pivot columns otherwise.
    """
    pivots = _echelon(m.row_dicts(), m.cols)
    reduced = _rref(pivots)
    pivot_cols = {c for c, _ in reduced}
    basis = []
    for f in range(m.cols):
        if f in pivot_cols:
            continue
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for c, row in reduced:
            coef = row.get(f)
            if coef:
                vec[c] = -coef
        basis.append(vec)
    return basis


class SpanReducer:
    """Incremental dimension counter for a span of sparse rational vectors.

    Rows are dicts keyed by integer coordinate indices.  `add` returns True
    when the vector enlarged the span.
    """

    def __init__(self):
        self.pivots = {}  # leading col -> normalized integer row

    @property
    def dimension(self):
        return len(self.pivots)

    def add(self, row) -> bool:
        ints = {}
        denoms = [v.denominator for v in row.values() if isinstance(v, Fraction)]
        scale = lcm(*denoms) if denoms else 1
        for j, v in row.items():
            w = int(v * scale)
            if w:
                ints[j] = w
        ints = _strip_content(ints)
        while ints:
            c = min(ints)
            prow = self.pivots.get(c)
            if prow is None:
                self.pivots[c] = ints
                return True
            ints = _combine(ints, prow, c)
        return False

"""The free metabelian associative algebra on x_1..x_d, in normal form.

An element is a rational linear combination of ordered monomials
x_1^{a_1}...x_d^{a_d} (the "unit part") and basis keys
x_1^{a_1}...x_d^{a_d}[x_{j1},x_{j2},x_{j3},...,x_{jn}] with j1 > j2 and
j2 <= j3 <= ... <= jn (the "commutator part").  Products of two commutator
parts vanish, and commutator factors absorb left multiplications as u-actions
and adjoint multiplications as v-actions; this makes equality of elements
plain coefficient-map equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement


def check_rank(d):
    if d < 2:
        raise ValueError("rank must be at least 2")


@dataclass(frozen=True)
class CommutatorKey:
    """Basis key prefix * [head[0], head[1], *tail] of the commutator ideal."""

    prefix: tuple  # exponents of x_1..x_d multiplied on the left
    head: tuple    # (j1, j2) with j1 > j2
    tail: tuple    # weakly increasing indices, all >= head[1]

    def __post_init__(self):
        j1, j2 = self.head
        if j1 <= j2:
            raise ValueError("head indices must descend")
        if any(a > b for a, b in zip(self.tail, self.tail[1:])) \
                or (self.tail and self.tail[0] < j2):
            raise ValueError("tail must be weakly increasing from head[1]")

    def degree(self):
        return sum(self.prefix) + 2 + len(self.tail)

    def sort_key(self):
        return (self.degree(), self.prefix, self.head, self.tail)


def _comm_accumulate(prefix, entries, coeff, out):
    """Add coeff * prefix*[entries] to `out` in normal form.

    Rewrites [a,b,...] with a <= b by antisymmetry and pulls the smallest
    index into the second slot via [a,b,c] = [a,c,b] - [b,c,a] (c < b).
    """
    j1, j2 = entries[0], entries[1]
    tail = tuple(sorted(entries[2:]))
    if j1 == j2:
        return
    if j1 < j2:
        j1, j2, coeff = j2, j1, -coeff
    if tail and tail[0] < j2:
        m, rest = tail[0], tail[1:]
        _comm_accumulate(prefix, (j1, m) + tuple(sorted(rest + (j2,))), coeff, out)
        _comm_accumulate(prefix, (j2, m) + tuple(sorted(rest + (j1,))), -coeff, out)
        return
    key = CommutatorKey(prefix, (j1, j2), tail)
    out[key] = out.get(key, 0) + coeff


def _merge(acc, items, factor=1):
    for k, v in items:
        w = acc.get(k, 0) + factor * v
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)


def _word_of(exps):
    word = []
    for j, e in enumerate(exps, start=1):
        word.extend([j] * e)
    return tuple(word)


def _exps_of(word, d):
    exps = [0] * d
    for j in word:
        exps[j - 1] += 1
    return tuple(exps)


class MetabelianElement:
    """Element of F_d in normal form; immutable by convention."""

    __slots__ = ("d", "unit", "comm")

    def __init__(self, d, unit=None, comm=None):
        check_rank(d)
        self.d = d
        self.unit = {k: v for k, v in (unit or {}).items() if v}
        self.comm = {k: v for k, v in (comm or {}).items() if v}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, d):
        return cls(d)

    @classmethod
    def one(cls, d):
        return cls(d, unit={(0,) * d: Fraction(1)})

    @classmethod
    def generator(cls, d, j):
        if not 1 <= j <= d:
            raise ValueError(f"generator index {j} out of range 1..{d}")
        exps = [0] * d
        exps[j - 1] = 1
        return cls(d, unit={tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, d, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != d or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector")
        return cls(d, unit={exps: Fraction(coeff)})

    @classmethod
    def from_key(cls, d, key, coeff=1):
        return cls(d, comm={key: Fraction(coeff)})

    @classmethod
    def commutator_basis(cls, d, j1, j2, tail=(), prefix=None, coeff=1):
        prefix = tuple(prefix) if prefix is not None else (0,) * d
        out = {}
        _comm_accumulate(prefix, (j1, j2) + tuple(tail), Fraction(coeff), out)
        return cls(d, comm=out)

    # -- ring structure ----------------------------------------------------

    def is_zero(self):
        return not self.unit and not self.comm

    def __eq__(self, other):
        return (isinstance(other, MetabelianElement) and self.d == other.d
                and self.unit == other.unit and self.comm == other.comm)

    def __hash__(self):
        raise TypeError("unhashable")

    def __add__(self, other):
        self._check(other)
        unit = dict(self.unit)
        comm = dict(self.comm)
        _merge(unit, other.unit.items())
        _merge(comm, other.comm.items())
        return MetabelianElement(self.d, unit, comm)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return MetabelianElement.zero(self.d)
        return MetabelianElement(
            self.d,
            {k: c * v for k, v in self.unit.items()},
            {k: c * v for k, v in self.comm.items()},
        )

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def _check(self, other):
        if not isinstance(other, MetabelianElement) or other.d != self.d:
            raise ValueError("rank mismatch")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        d = self.d
        unit, comm = {}, {}
        # unit * unit: append the letters of the right monomial one by one
        for ea, ca in self.unit.items():
            for eb, cb in other.unit.items():
                cur = MetabelianElement.monomial(d, ea, ca * cb)
                for j in _word_of(eb):
                    cur = _times_letter(cur, j)
                _merge(unit, cur.unit.items())
                _merge(comm, cur.comm.items())
        # unit * comm: left multiplication is the u-action on the prefix
        for ea, ca in self.unit.items():
            for key, cb in other.comm.items():
                pref = tuple(p + e for p, e in zip(key.prefix, ea))
                k2 = CommutatorKey(pref, key.head, key.tail)
                _merge(comm, [(k2, ca * cb)])
        # comm * unit: each right letter acts as u_j + v_j
        if self.comm:
            base = MetabelianElement(d, comm=self.comm)
            for eb, cb in other.unit.items():
                cur = base.scale(cb)
                for j in _word_of(eb):
                    cur = cur.act_u(j) + cur.act_v(j)
                _merge(comm, cur.comm.items())
        # comm * comm = 0 (metabelian identity)
        return MetabelianElement(d, unit, comm)

    # -- module actions ----------------------------------------------------

    def act_u(self, i):
        """Right action of u_i on an element of the commutator ideal."""
        if self.unit:
            raise ValueError("u/v actions require zero unit part")
        comm = {}
        for key, c in self.comm.items():
            pref = list(key.prefix)
            pref[i - 1] += 1
            _merge(comm, [(CommutatorKey(tuple(pref), key.head, key.tail), c)])
        return MetabelianElement(self.d, comm=comm)

    def act_v(self, i):
        """Right action of v_i (adjoint by x_i) on the commutator ideal."""
        if self.unit:
            raise ValueError("u/v actions require zero unit part")
        comm = {}
        for key, c in self.comm.items():
            _comm_accumulate(key.prefix, key.head + key.tail + (i,), c, comm)
        return MetabelianElement(self.d, comm=comm)

    def act_uv(self, uexps, vexps):
        """Apply the monomial u^uexps v^vexps; requires zero unit part."""
        if self.unit:
            raise ValueError("u/v actions require zero unit part")
        cur = self
        for i, e in enumerate(uexps, start=1):
            for _ in range(e):
                cur = cur.act_u(i)
        for i, e in enumerate(vexps, start=1):
            for _ in range(e):
                cur = cur.act_v(i)
        return cur

    # -- grading -----------------------------------------------------------

    def degrees(self):
        degs = {sum(e) for e in self.unit}
        degs.update(k.degree() for k in self.comm)
        return degs

    def pad(self, d2):
        """Re-read the element in a larger rank, extra variables unused."""
        if d2 < self.d:
            raise ValueError("cannot shrink rank")
        ext = (0,) * (d2 - self.d)
        return MetabelianElement(
            d2,
            {e + ext: c for e, c in self.unit.items()},
            {CommutatorKey(k.prefix + ext, k.head, k.tail): c
             for k, c in self.comm.items()},
        )

    def __repr__(self):
        from .grammar import element_to_str
        return f"<{element_to_str(self)}>"


def _times_letter(elem, j):
    """Right-multiply a normal-form element by the generator x_j."""
    d = elem.d
    unit, comm = {}, {}
    for key, c in elem.comm.items():
        pref = list(key.prefix)
        pref[j - 1] += 1
        _merge(comm, [(CommutatorKey(tuple(pref), key.head, key.tail), c)])
        _comm_accumulate(key.prefix, key.head + key.tail + (j,), c, comm)
    for exps, c in elem.unit.items():
        bumped = list(exps)
        bumped[j - 1] += 1
        _merge(unit, [(tuple(bumped), c)])
        # letters with larger index stand to the right of the insertion
        # point; passing x_j through each of them leaves a commutator
        bigger = [k for k in range(j + 1, d + 1) for _ in range(exps[k - 1])]
        if bigger:
            left = list(exps)
            for k in range(j, d):
                left[k] = 0
            for pos, k in enumerate(bigger):
                pref = list(left)
                for q in bigger[:pos]:
                    pref[q - 1] += 1
                base = MetabelianElement.from_key(
                    d, CommutatorKey(tuple(pref), (k, j), ()), c)
                for r in bigger[pos + 1:]:
                    base = base.act_u(r) + base.act_v(r)
                _merge(comm, base.comm.items())
    return MetabelianElement(d, unit, comm)


def word_element(d, word, coeff=1):
    """Normal form of an arbitrary word in the generators."""
    unit, comm = {}, {}
    _word_accumulate(d, tuple(word), Fraction(coeff), unit, comm)
    return MetabelianElement(d, unit, comm)


def _word_accumulate(d, word, coeff, unit, comm):
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if a > b:
            swapped = word[:p] + (b, a) + word[p + 2:]
            _word_accumulate(d, swapped, coeff, unit, comm)
            pref = _exps_of(word[:p], d)
            base = MetabelianElement.from_key(
                d, CommutatorKey(pref, (a, b), ()), coeff)
            for r in word[p + 2:]:
                base = base.act_u(r) + base.act_v(r)
            _merge(comm, base.comm.items())
            return
    _merge(unit, [(_exps_of(word, d), coeff)])


# -- derivations -----------------------------------------------------------


class Derivation:
    """Nilpotent linear derivation delta(x_j) = sum_i matrix[i][j] x_i."""

    __slots__ = ("d", "matrix", "partition", "_images")

    def __init__(self, d, matrix, partition=None):
        check_rank(d)
        rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError("matrix must be d x d")
        if not _is_nilpotent(rows, d):
            raise ValueError("derivation matrix must be nilpotent")
        self.d = d
        self.matrix = rows
        self.partition = tuple(partition) if partition is not None else None
        self._images = tuple(
            tuple((i + 1, rows[i][j]) for i in range(d) if rows[i][j])
            for j in range(d))

    @classmethod
    def from_partition(cls, parts):
        parts = tuple(parts)
        if not parts or any(p < 0 for p in parts):
            raise ValueError("partition entries must be nonnegative")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError("partition must be sorted descending")
        d = sum(p + 1 for p in parts)
        check_rank(d)
        matrix = [[0] * d for _ in range(d)]
        j = 0
        for p in parts:
            for k in range(p):
                matrix[j + k][j + k + 1] = 1
            j += p + 1
        return cls(d, matrix, partition=parts)

    def image(self, j):
        """delta(x_j) as a list of (i, coefficient)."""
        return self._images[j - 1]

    def annihilates(self, j):
        return not self._images[j - 1]

    def apply(self, e: MetabelianElement) -> MetabelianElement:
        """Leibniz extension of the matrix action to the whole algebra."""
        if e.d != self.d:
            raise ValueError("rank mismatch")
        d = self.d
        unit, comm = {}, {}
        for exps, c in e.unit.items():
            word = _word_of(exps)
            for p, j in enumerate(word):
                for i, a in self.image(j):
                    _word_accumulate(d, word[:p] + (i,) + word[p + 1:],
                                     c * a, unit, comm)
        for key, c in e.comm.items():
            entries = key.head + key.tail
            for p, j in enumerate(entries):
                for i, a in self.image(j):
                    _comm_accumulate(key.prefix,
                                     entries[:p] + (i,) + entries[p + 1:],
                                     c * a, comm)
            for idx, exp in enumerate(key.prefix):
                if exp:
                    for i, a in self.image(idx + 1):
                        pref = list(key.prefix)
                        pref[idx] -= 1
                        pref[i - 1] += 1
                        _comm_accumulate(tuple(pref), entries,
                                         c * a * exp, comm)
        return MetabelianElement(d, unit, comm)


def _is_nilpotent(rows, d):
    m = [list(r) for r in rows]
    power = m
    for _ in range(d - 1):
        power = [[sum(power[i][k] * m[k][j] for k in range(d))
                  for j in range(d)] for i in range(d)]
    return all(v == 0 for row in power for v in row)


# -- graded bases and bidegrees -------------------------------------------


def exponent_vectors(d, n):
    """All exponent vectors of total degree n over d variables, lex order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), n, d)
    out.sort()
    return out


def graded_basis(d, n, restrict_comm=False):
    """Canonically ordered basis keys of the degree-n slice of F_d.

    Unit monomials (skipped when restrict_comm is set) come first in lex
    order, then commutator keys sorted on (prefix, head, tail).
    """
    check_rank(d)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    keys = []
    if not restrict_comm:
        keys.extend(exponent_vectors(d, n))
    comm_keys = []
    for c in range(2, n + 1):
        prefixes = exponent_vectors(d, n - c)
        for b in range(1, d):
            for tail in combinations_with_replacement(range(b, d + 1), c - 2):
                for j1 in range(b + 1, d + 1):
                    for prefix in prefixes:
                        comm_keys.append(CommutatorKey(prefix, (j1, b), tail))
    comm_keys.sort(key=lambda k: (k.prefix, k.head, k.tail))
    keys.extend(comm_keys)
    return keys


def weights_from_partition(parts):
    """Bidegree (q_j, r_j) of each variable, Jordan cell by Jordan cell."""
    weights = []
    for p in parts:
        for k in range(p + 1):
            weights.append((p - k, k))
    return tuple(weights)


def bidegree_of_key(key, weights):
    """GL2 bidegree of a basis key (exponent vector or CommutatorKey)."""
    q = r = 0
    if isinstance(key, CommutatorKey):
        for j, e in enumerate(key.prefix):
            q += weights[j][0] * e
            r += weights[j][1] * e
        for j in key.head + key.tail:
            q += weights[j - 1][0]
            r += weights[j - 1][1]
    else:
        for j, e in enumerate(key):
            q += weights[j][0] * e
            r += weights[j][1] * e
    return (q, r)

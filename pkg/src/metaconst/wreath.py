"""Wreath product carrying the free metabelian algebra, and the lifting map pi.

A wreath element is a pair (polynomial in y_1..y_d, d coordinates in
K[u_1..u_d, v_1..v_d]); the coordinate module squares to zero.  Left
multiplication by y_j multiplies coordinates by u_j, right multiplication by
v_j + u_j (coordinates are stored in the v-variables, with the shift
v = v' - u already applied).
"""

from __future__ import annotations

from fractions import Fraction

from .metabelian import (
    CommutatorKey,
    Derivation,
    MetabelianElement,
    check_rank,
    _merge,
    _word_of,
)


class PolyUV:
    """Polynomial in the commuting variables u_1..u_d, v_1..v_d."""

    __slots__ = ("d", "terms")

    def __init__(self, d, terms=None):
        check_rank(d)
        self.d = d
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, d):
        return cls(d)

    @classmethod
    def one(cls, d):
        return cls(d, {((0,) * d, (0,) * d): Fraction(1)})

    @classmethod
    def u(cls, d, i):
        if not 1 <= i <= d:
            raise ValueError(f"variable index {i} out of range 1..{d}")
        e = [0] * d
        e[i - 1] = 1
        return cls(d, {(tuple(e), (0,) * d): Fraction(1)})

    @classmethod
    def v(cls, d, i):
        if not 1 <= i <= d:
            raise ValueError(f"variable index {i} out of range 1..{d}")
        e = [0] * d
        e[i - 1] = 1
        return cls(d, {((0,) * d, tuple(e)): Fraction(1)})

    @classmethod
    def monomial(cls, d, uexps, vexps, coeff=1):
        return cls(d, {(tuple(uexps), tuple(vexps)): Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, PolyUV) and self.d == other.d
                and self.terms == other.terms)

    def __hash__(self):
        raise TypeError("unhashable")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        _merge(terms, other.terms.items())
        return PolyUV(self.d, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return PolyUV(self.d, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        terms = {}
        for (ua, va), ca in self.terms.items():
            for (ub, vb), cb in other.terms.items():
                key = (tuple(a + b for a, b in zip(ua, ub)),
                       tuple(a + b for a, b in zip(va, vb)))
                _merge(terms, [(key, ca * cb)])
        return PolyUV(self.d, terms)

    def _check(self, other):
        if not isinstance(other, PolyUV) or other.d != self.d:
            raise ValueError("rank mismatch")

    def degrees(self):
        return {sum(u) + sum(v) for u, v in self.terms}

    def homogeneous_part(self, n):
        return PolyUV(self.d, {k: c for k, c in self.terms.items()
                               if sum(k[0]) + sum(k[1]) == n})

    def pad(self, d2):
        if d2 < self.d:
            raise ValueError("cannot shrink rank")
        ext = (0,) * (d2 - self.d)
        return PolyUV(d2, {(u + ext, v + ext): c
                           for (u, v), c in self.terms.items()})

    def in_omega(self):
        """True when every monomial contains a v-variable."""
        return all(sum(v) > 0 for _, v in self.terms)

    def derive(self, delta: Derivation):
        """Leibniz action of delta, same matrix on the u's and the v's."""
        if delta.d != self.d:
            raise ValueError("rank mismatch")
        terms = {}
        for (ue, ve), c in self.terms.items():
            for idx, e in enumerate(ue):
                if e:
                    for i, a in delta.image(idx + 1):
                        u2 = list(ue)
                        u2[idx] -= 1
                        u2[i - 1] += 1
                        _merge(terms, [((tuple(u2), ve), c * e * a)])
            for idx, e in enumerate(ve):
                if e:
                    for i, a in delta.image(idx + 1):
                        v2 = list(ve)
                        v2[idx] -= 1
                        v2[i - 1] += 1
                        _merge(terms, [((ue, tuple(v2)), c * e * a)])
        return PolyUV(self.d, terms)

    def __repr__(self):
        from .grammar import polyuv_to_str
        return f"<{polyuv_to_str(self)}>"


def act_poly(e: MetabelianElement, p: PolyUV) -> MetabelianElement:
    """Apply a u/v polynomial to an element of the commutator ideal."""
    if e.d != p.d:
        raise ValueError("rank mismatch")
    out = MetabelianElement.zero(e.d)
    for (ue, ve), c in p.terms.items():
        out = out + e.act_uv(ue, ve).scale(c)
    return out


class WreathElement:
    """Pair (y-polynomial, coordinate vector of u/v polynomials)."""

    __slots__ = ("d", "y", "coords")

    def __init__(self, d, y=None, coords=None):
        check_rank(d)
        self.d = d
        self.y = {k: v for k, v in (y or {}).items() if v}
        self.coords = tuple(coords) if coords is not None \
            else tuple(PolyUV.zero(d) for _ in range(d))
        if len(self.coords) != d:
            raise ValueError("coordinate vector must have length d")

    @classmethod
    def zero(cls, d):
        return cls(d)

    @classmethod
    def one(cls, d):
        return cls(d, y={(0,) * d: Fraction(1)})

    @classmethod
    def gen_image(cls, d, j):
        """The image y_j + a_j of the j-th algebra generator."""
        e = [0] * d
        e[j - 1] = 1
        coords = [PolyUV.zero(d) for _ in range(d)]
        coords[j - 1] = PolyUV.one(d)
        return cls(d, y={tuple(e): Fraction(1)}, coords=coords)

    def is_zero(self):
        return not self.y and all(c.is_zero() for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, WreathElement) and self.d == other.d
                and self.y == other.y and self.coords == other.coords)

    def __hash__(self):
        raise TypeError("unhashable")

    def __add__(self, other):
        self._check(other)
        y = dict(self.y)
        _merge(y, other.y.items())
        coords = tuple(a + b for a, b in zip(self.coords, other.coords))
        return WreathElement(self.d, y, coords)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return WreathElement(self.d,
                             {k: c * v for k, v in self.y.items()},
                             tuple(p.scale(c) for p in self.coords))

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def _check(self, other):
        if not isinstance(other, WreathElement) or other.d != self.d:
            raise ValueError("rank mismatch")

    def _left_poly(self):
        """The y-part read through the left action y_j -> u_j."""
        d = self.d
        out = PolyUV.zero(d)
        for ye, c in self.y.items():
            out = out + PolyUV.monomial(d, ye, (0,) * d, c)
        return out

    def _right_poly(self):
        """The y-part read through the right action y_j -> v_j + u_j."""
        d = self.d
        out = PolyUV.zero(d)
        for ye, c in self.y.items():
            cur = PolyUV.one(d).scale(c)
            for j in _word_of(ye):
                cur = cur * (PolyUV.u(d, j) + PolyUV.v(d, j))
            out = out + cur
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        y = {}
        for ya, ca in self.y.items():
            for yb, cb in other.y.items():
                _merge(y, [(tuple(a + b for a, b in zip(ya, yb)), ca * cb)])
        right = other._right_poly()
        left = self._left_poly()
        coords = tuple(m * right + left * m2
                       for m, m2 in zip(self.coords, other.coords))
        return WreathElement(self.d, y, coords)

    def derive(self, delta: Derivation):
        if delta.d != self.d:
            raise ValueError("rank mismatch")
        d = self.d
        y = {}
        for ye, c in self.y.items():
            for idx, e in enumerate(ye):
                if e:
                    for i, a in delta.image(idx + 1):
                        y2 = list(ye)
                        y2[idx] -= 1
                        y2[i - 1] += 1
                        _merge(y, [(tuple(y2), c * e * a)])
        coords = [p.derive(delta) for p in self.coords]
        for j in range(1, d + 1):
            for i, a in delta.image(j):
                coords[i - 1] = coords[i - 1] + self.coords[j - 1].scale(a)
        return WreathElement(d, y, tuple(coords))


def embed(e: MetabelianElement) -> WreathElement:
    """Embedding x_j -> y_j + a_j, extended multiplicatively and linearly."""
    d = e.d
    out = WreathElement.zero(d)
    for exps, c in e.unit.items():
        cur = WreathElement.one(d).scale(c)
        for j in _word_of(exps):
            cur = cur * WreathElement.gen_image(d, j)
        out = out + cur
    for key, c in e.comm.items():
        j1, j2 = key.head
        poly = PolyUV.monomial(d, key.prefix, (0,) * d, c)
        for t in key.tail:
            poly = poly * PolyUV.v(d, t)
        coords = [PolyUV.zero(d) for _ in range(d)]
        coords[j1 - 1] = coords[j1 - 1] + PolyUV.v(d, j2) * poly
        coords[j2 - 1] = coords[j2 - 1] - PolyUV.v(d, j1) * poly
        out = out + WreathElement(d, coords=coords)
    return out


def pi(p: PolyUV, delta: Derivation | None = None) -> MetabelianElement:
    """Lift of a u/v polynomial in the first d-1 index pairs into F_d'.

    The monomial v_{j1}...v_{jn} maps to sum_k [x_d, x_{jk}] v_{j1}...
    (v_{jk} omitted) ...v_{jn}; u-monomials transfer through the module
    action and pure u-monomials map to zero.  Only valid alongside a
    derivation that annihilates x_d, when one is supplied.
    """
    d = p.d
    if delta is not None:
        if delta.d != d:
            raise ValueError("rank mismatch")
        if not delta.annihilates(d):
            raise ValueError("pi requires delta(x_d) = 0")
    out = MetabelianElement.zero(d)
    for (ue, ve), c in p.terms.items():
        if ue[d - 1] or ve[d - 1]:
            raise ValueError("pi input must not involve u_d or v_d")
        if sum(ve) == 0:
            continue
        for i, e in enumerate(ve, start=1):
            if e:
                rest = list(ve)
                rest[i - 1] -= 1
                base = MetabelianElement.commutator_basis(d, d, i)
                out = out + base.act_uv(ue, rest).scale(c * e)
    return out

"""Nice rational functions, truncated bigraded series, and the Schur pipeline.

A NiceRational is numerator / product of (1 - monomial) factors, which is
closed under the substitutions and reductions used here.  Truncation is by
the degree of the distinguished variable ``z`` (total degree counts z once
per monomial occurrence).
"""

from __future__ import annotations

import json


class ExpansionError(ValueError):
    pass


class AsymmetricSliceError(ValueError):
    pass


# -- integer polynomial helpers (dict monomial-exponent-tuple -> int) ------


def poly_add(a, b, factor=1):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + factor * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_mul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            key = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _mono_str(mono, names):
    parts = []
    for e, name in zip(mono, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class NiceRational:
    """numerator / prod (1 - m)^mult with integer numerator coefficients."""

    __slots__ = ("vars", "num", "den")

    def __init__(self, vars, num, den=()):
        self.vars = tuple(vars)
        self.num = {tuple(m): int(c) for m, c in dict(num).items() if c}
        dd = {}
        for m, mult in dict(den).items():
            m = tuple(m)
            if not any(m):
                raise ValueError("denominator monomials must be nonconstant")
            if mult:
                dd[m] = dd.get(m, 0) + int(mult)
        self.den = tuple(sorted(dd.items()))

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def from_poly(cls, vars, num):
        return cls(vars, num)

    def is_zero(self):
        return not self.num

    def _check(self, other):
        if not isinstance(other, NiceRational) or other.vars != self.vars:
            raise ValueError("variable sets differ")

    def __add__(self, other):
        self._check(other)
        da = dict(self.den)
        db = dict(other.den)
        common = {m: max(da.get(m, 0), db.get(m, 0)) for m in da.keys() | db.keys()}
        num_a = self.num
        num_b = other.num
        for m, mult in common.items():
            fac = {(0,) * len(self.vars): 1, m: -1}
            for _ in range(mult - da.get(m, 0)):
                num_a = poly_mul(num_a, fac)
            for _ in range(mult - db.get(m, 0)):
                num_b = poly_mul(num_b, fac)
        return NiceRational(self.vars, poly_add(num_a, num_b), common)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return NiceRational(self.vars, {m: c * v for m, v in self.num.items()},
                            dict(self.den))

    def __mul__(self, other):
        self._check(other)
        den = dict(self.den)
        for m, mult in other.den:
            den[m] = den.get(m, 0) + mult
        return NiceRational(self.vars, poly_mul(self.num, other.num), den)

    def mul_monomial(self, mono, coeff=1):
        mono = tuple(mono)
        num = {tuple(a + b for a, b in zip(m, mono)): coeff * c
               for m, c in self.num.items()}
        return NiceRational(self.vars, num, dict(self.den))

    def with_extra_factors(self, extra):
        """Append (1 - m)^mult denominator factors."""
        den = dict(self.den)
        for m, mult in dict(extra).items():
            den[tuple(m)] = den.get(tuple(m), 0) + mult
        return NiceRational(self.vars, self.num, den)

    def substitute(self, new_vars, mapping):
        """Replace each variable by a monomial in new_vars.

        `mapping`: old variable name -> exponent tuple over new_vars.
        Denominator factors stay of the (1 - monomial) shape.
        """
        new_vars = tuple(new_vars)
        images = [tuple(mapping[v]) for v in self.vars]
        width = len(new_vars)

        def sub_mono(m):
            out = [0] * width
            for e, img in zip(m, images):
                if e:
                    for i, w in enumerate(img):
                        out[i] += e * w
            return tuple(out)

        num = {}
        for m, c in self.num.items():
            key = sub_mono(m)
            num[key] = num.get(key, 0) + c
        den = {}
        for m, mult in self.den:
            key = sub_mono(m)
            den[key] = den.get(key, 0) + mult
        return NiceRational(new_vars, num, den)

    def swap_vars(self, a, b):
        ia, ib = self.vars.index(a), self.vars.index(b)

        def sw(m):
            m = list(m)
            m[ia], m[ib] = m[ib], m[ia]
            return tuple(m)

        return NiceRational(self.vars, {sw(m): c for m, c in self.num.items()},
                            {sw(m): mult for m, mult in self.den})

    # -- expansion ---------------------------------------------------------

    def expand(self, bound, cap=None):
        """Exact coefficients up to z-degree `bound` as a TruncatedSeries.

        Denominator factors must have positive z-degree; a factor without z
        is only expandable when `cap` bounds the degree of one of its
        variables (cap: variable name -> max degree).
        """
        if "z" not in self.vars:
            raise ExpansionError("expansion needs a distinguished z variable")
        zi = self.vars.index("z")
        caps = {self.vars.index(k): v for k, v in (cap or {}).items()}

        def admissible(m):
            total = 0
            if m[zi]:
                return bound // m[zi]
            best = None
            for i, lim in caps.items():
                if m[i]:
                    k = lim // m[i]
                    best = k if best is None else min(best, k)
            if best is None:
                raise ExpansionError(
                    f"factor 1 - {_mono_str(m, self.vars)} has no z-degree "
                    "and no variable cap")
            return best

        def truncate(p):
            out = {}
            for m, c in p.items():
                if m[zi] <= bound and all(m[i] <= lim for i, lim in caps.items()):
                    out[m] = c
            return out

        series = truncate(self.num)
        for mono, mult in self.den:
            kmax = admissible(mono)
            geo = {tuple(k * e for e in mono): 1 for k in range(kmax + 1)}
            for _ in range(mult):
                series = truncate(poly_mul(series, geo))
        tvars = tuple(v for v in self.vars if v != "z")
        slices = [dict() for _ in range(bound + 1)]
        for m, c in series.items():
            tm = tuple(e for i, e in enumerate(m) if i != zi)
            slices[m[zi]][tm] = slices[m[zi]].get(tm, 0) + c
        return TruncatedSeries(tvars, bound, slices)

    # -- exact rational-function equality ----------------------------------

    def den_poly(self):
        out = {(0,) * len(self.vars): 1}
        for m, mult in self.den:
            fac = {(0,) * len(self.vars): 1, m: -1}
            for _ in range(mult):
                out = poly_mul(out, fac)
        return out

    def eq_rational(self, other):
        """Equality as rational functions (cross multiplication)."""
        self._check(other)
        return poly_mul(self.num, other.den_poly()) == \
            poly_mul(other.num, self.den_poly())

    # -- serialization -----------------------------------------------------

    def to_json(self):
        num = sorted((list(m), c) for m, c in self.num.items())
        den = sorted((list(m), mult) for m, mult in self.den)
        return {"vars": list(self.vars),
                "num": [[c, m] for m, c in num],
                "den": [[m, mult] for m, mult in den]}

    @classmethod
    def from_json(cls, data):
        vars = tuple(data["vars"])
        num = {tuple(m): c for c, m in data["num"]}
        den = {tuple(m): mult for m, mult in data["den"]}
        return cls(vars, num, den)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text):
        return cls.from_json(json.loads(text))

    def __str__(self):
        terms = []
        for m, c in sorted(self.num.items()):
            ms = _mono_str(m, self.vars)
            if ms == "1":
                terms.append(f"{c:+d}")
            elif c == 1:
                terms.append(f"+{ms}")
            elif c == -1:
                terms.append(f"-{ms}")
            else:
                terms.append(f"{c:+d}*{ms}")
        num = "".join(terms).lstrip("+") or "0"
        if not self.den:
            return num
        fs = []
        for m, mult in self.den:
            base = f"(1-{_mono_str(m, self.vars)})"
            fs.append(base if mult == 1 else base + f"^{mult}")
        return f"({num}) / ({' '.join(fs)})"

    def __eq__(self, other):
        return (isinstance(other, NiceRational) and self.vars == other.vars
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        raise TypeError("unhashable")


class TruncatedSeries:
    """Coefficients up to a z-degree bound; each slice a polynomial in tvars."""

    __slots__ = ("tvars", "bound", "slices")

    def __init__(self, tvars, bound, slices):
        self.tvars = tuple(tvars)
        self.bound = bound
        self.slices = [dict(s) for s in slices]
        if len(self.slices) != bound + 1:
            raise ValueError("slice count must equal bound + 1")

    def coeffs(self):
        """Total (t=1) coefficients per z-degree."""
        return [sum(s.values()) for s in self.slices]

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries)
                and self.tvars == other.tvars and self.bound == other.bound
                and self.slices == other.slices)

    def __hash__(self):
        raise TypeError("unhashable")


# -- closed forms of the free metabelian algebra ---------------------------


def _zvars(d):
    return tuple(f"z{j}" for j in range(1, d + 1))


def _unit_monos(d):
    out = []
    for j in range(d):
        m = [0] * d
        m[j] = 1
        out.append(tuple(m))
    return out


def hseries_free_metabelian(d):
    """Multigraded Hilbert series of the whole algebra, over z1..zd."""
    if d < 2:
        raise ValueError("rank must be at least 2")
    monos = _unit_monos(d)
    one = {(0,) * d: 1}
    prod = dict(one)
    for m in monos:
        prod = poly_mul(prod, poly_add(one, {m: -1}))
    lin = poly_add({m: 1 for m in monos}, one, factor=-1)
    num = poly_add({k: 2 * v for k, v in prod.items()}, lin)
    return NiceRational(_zvars(d), num, {m: 2 for m in monos})


def hseries_commutator_ideal(d):
    """Hilbert series of the commutator ideal of the free metabelian algebra."""
    if d < 2:
        raise ValueError("rank must be at least 2")
    monos = _unit_monos(d)
    one = {(0,) * d: 1}
    prod = dict(one)
    for m in monos:
        prod = poly_mul(prod, poly_add(one, {m: -1}))
    num = poly_add(prod, poly_add({m: 1 for m in monos}, one, factor=-1))
    return NiceRational(_zvars(d), num, {m: 2 for m in monos})


def hseries_metabelian_lie(d):
    """Hilbert series of the commutator ideal of the free metabelian Lie algebra."""
    if d < 2:
        raise ValueError("rank must be at least 2")
    monos = _unit_monos(d)
    one = {(0,) * d: 1}
    prod = dict(one)
    for m in monos:
        prod = poly_mul(prod, poly_add(one, {m: -1}))
    num = poly_add(prod, poly_add({m: 1 for m in monos}, one, factor=-1))
    return NiceRational(_zvars(d), num, {m: 1 for m in monos})


def specialize_total(f):
    """Send every z_j to the single grading variable z."""
    mapping = {v: (1,) for v in f.vars}
    return f.substitute(("z",), mapping)


def substitute_gl2(f, partition):
    """Replace z1..zd by the cell-wise weight monomials t1^q t2^r z."""
    from .metabelian import weights_from_partition
    weights = weights_from_partition(partition)
    if len(weights) != len(f.vars):
        raise ValueError("partition does not match the variable count")
    mapping = {v: (q, r, 1) for v, (q, r) in zip(f.vars, weights)}
    return f.substitute(("t1", "t2", "z"), mapping)


def hseries_polyuv(d, partition):
    """Bigraded Hilbert series of K[U_d, V_d] under the cell weights."""
    from .metabelian import weights_from_partition
    weights = weights_from_partition(partition)
    if len(weights) != d:
        raise ValueError("partition does not match the rank")
    den = {}
    for q, r in weights:
        key = (q, r, 1)
        den[key] = den.get(key, 0) + 2  # one u and one v of this weight
    return NiceRational(("t1", "t2", "z"), {(0, 0, 0): 1}, den)


# -- Schur decomposition ---------------------------------------------------


def schur_polynomial(l1, l2):
    """S_(l1,l2)(t1,t2) as a dict (a,b) -> 1."""
    if l1 < l2 or l2 < 0:
        raise ValueError("partition must satisfy l1 >= l2 >= 0")
    return {(l1 + l2 - i, i): 1 for i in range(l2, l1 + 1)}


def schur_extract(ts: TruncatedSeries):
    """Decompose each z-slice into Schur functions in t1, t2.

    Returns a list of (l1, l2, n, multiplicity), greedily peeling the
    lexicographically greatest monomial of each slice.
    """
    if ts.tvars != ("t1", "t2"):
        raise ValueError("expected a bigraded series in t1, t2")
    out = []
    for n, sl in enumerate(ts.slices):
        work = dict(sl)
        for (a, b), c in sl.items():
            if work.get((b, a), 0) != c:
                raise AsymmetricSliceError(f"slice {n} is not symmetric")
        while work:
            a, b = max(work)
            if a < b:
                raise AsymmetricSliceError(f"slice {n} is not symmetric")
            mult = work[(a, b)]
            for m, c in schur_polynomial(a, b).items():
                v = work.get(m, 0) - mult * c
                if v:
                    work[m] = v
                else:
                    work.pop(m, None)
            out.append((a, b, n, mult))
    return out


def schur_resum(decomposition, bound):
    """Inverse of schur_extract: rebuild the bigraded character slices."""
    slices = [dict() for _ in range(bound + 1)]
    for l1, l2, n, mult in decomposition:
        if n <= bound:
            for m, c in schur_polynomial(l1, l2).items():
                slices[n][m] = slices[n].get(m, 0) + mult * c
    for sl in slices:
        for m in [m for m, c in sl.items() if not c]:
            del sl[m]
    return TruncatedSeries(("t1", "t2"), bound, slices)


def constants_series(decomposition, bound):
    """Replace each Schur summand by its highest-weight monomial t1^l1 t2^l2."""
    slices = [dict() for _ in range(bound + 1)]
    for l1, l2, n, mult in decomposition:
        if n <= bound and mult:
            key = (l1, l2)
            v = slices[n].get(key, 0) + mult
            if v:
                slices[n][key] = v
            else:
                slices[n].pop(key, None)
    return TruncatedSeries(("t1", "t2"), bound, slices)


def gl2_constants_series(f, partition, bound):
    """Full pipeline: substitute, expand, Schur-extract, re-monomialize."""
    h = substitute_gl2(f, partition)
    return constants_series(schur_extract(h.expand(bound)), bound)


# -- consistency identity and series reduction -----------------------------


def divide_by_t1_minus_t2(sl):
    """Exact division of a t1,t2 polynomial slice by (t1 - t2)."""
    rem = dict(sl)
    quot = {}
    while rem:
        a, b = max(rem)  # largest t1-degree first (lex max)
        c = rem.pop((a, b))
        if a == 0:
            raise AsymmetricSliceError("slice not divisible by t1 - t2")
        key = (a - 1, b)
        quot[key] = quot.get(key, 0) + c
        low = (a - 1, b + 1)
        v = rem.get(low, 0) + c
        if v:
            rem[low] = v
        else:
            rem.pop(low, None)
    return quot


def consistency_report(f: NiceRational, h: NiceRational, bound):
    """Check h == (t1 f(t1,t2,z) - t2 f(t2,t1,z)) / (t1 - t2) up to z^bound.

    Returns (ok, mismatch) where mismatch names the first differing
    (z-degree, t-monomial, got, expected), or None.
    """
    if f.vars != ("t1", "t2", "z") or h.vars != ("t1", "t2", "z"):
        raise ValueError("expected series in (t1, t2, z)")
    g = f.mul_monomial((1, 0, 0)) - f.swap_vars("t1", "t2").mul_monomial((0, 1, 0))
    gts = g.expand(bound)
    hts = h.expand(bound)
    for n in range(bound + 1):
        got = divide_by_t1_minus_t2(gts.slices[n])
        want = hts.slices[n]
        if got != want:
            for m in sorted(got.keys() | want.keys()):
                if got.get(m, 0) != want.get(m, 0):
                    return False, (n, m, got.get(m, 0), want.get(m, 0))
    return True, None


def consistency_check(f, h, bound):
    ok, _ = consistency_report(f, h, bound)
    return ok


def reduce_series(h_prev: NiceRational, h_omega: NiceRational) -> NiceRational:
    """One-variable reduction: (h_prev + z * h_omega) / (1 - z)^2."""
    if h_prev.vars != h_omega.vars or "z" not in h_prev.vars:
        raise ValueError("inputs must share a variable set containing z")
    zi = h_prev.vars.index("z")
    zmono = tuple(1 if i == zi else 0 for i in range(len(h_prev.vars)))
    total = h_prev + h_omega.mul_monomial(zmono)
    return total.with_extra_factors({zmono: 2})

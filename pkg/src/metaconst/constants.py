"""Degree-by-degree constants, span certification, and generator lifting.

Kernels are computed per graded slice.  When the derivation comes from a
Jordan partition the slice splits into bidegree blocks (the derivation
shifts the bidegree by (+1, -1)), which keeps the elimination matrices
small.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .linalg import SparseMatrix, SpanReducer, kernel_basis
from .metabelian import (
    CommutatorKey,
    Derivation,
    MetabelianElement,
    bidegree_of_key,
    graded_basis,
    weights_from_partition,
)
from .wreath import PolyUV, act_poly, pi

SPACES = ("full", "commutator", "polyUV", "polyUV_omega")


@dataclass
class GradedConstantsBasis:
    """Constants of one graded slice: independent vectors killed by delta."""

    degree: int
    vectors: list = field(default_factory=list)

    @property
    def dimension(self):
        return len(self.vectors)


def uv_monomials(d, n, omega=False):
    """Monomials of K[U_d, V_d] of total degree n, canonical order.

    With `omega` set, only monomials with positive v-degree are kept."""
    out = []
    for uv in combinations_with_replacement(range(2 * d), n):
        ue = [0] * d
        ve = [0] * d
        for i in uv:
            if i < d:
                ue[i] += 1
            else:
                ve[i - d] += 1
        if omega and not sum(ve):
            continue
        out.append((tuple(ue), tuple(ve)))
    out.sort()
    return out


def _slice_keys(delta, d, n, space):
    if space == "full":
        return graded_basis(d, n)
    if space == "commutator":
        return graded_basis(d, n, restrict_comm=True)
    if space in ("polyUV", "polyUV_omega"):
        return uv_monomials(d, n, omega=space == "polyUV_omega")
    raise ValueError(f"unknown space {space!r}")


def _key_element(d, key, space):
    if space in ("polyUV", "polyUV_omega"):
        return PolyUV.monomial(d, key[0], key[1])
    if isinstance(key, CommutatorKey):
        return MetabelianElement.from_key(d, key)
    return MetabelianElement.monomial(d, key)


def _image_coords(delta, d, key, space):
    if space in ("polyUV", "polyUV_omega"):
        return PolyUV.monomial(d, key[0], key[1]).derive(delta).terms
    img = delta.apply(_key_element(d, key, space))
    coords = dict(img.unit)
    coords.update(img.comm)
    return coords


def _uv_bidegree(key, weights):
    q = r = 0
    for exps in key:
        for j, e in enumerate(exps):
            q += weights[j][0] * e
            r += weights[j][1] * e
    return (q, r)


def _blocks(delta, d, keys, space):
    """Group slice keys by GL2 bidegree; one block when no partition."""
    if delta.partition is None:
        return {None: keys}
    weights = weights_from_partition(delta.partition)
    blocks = {}
    for key in keys:
        if space in ("polyUV", "polyUV_omega"):
            w = _uv_bidegree(key, weights)
        else:
            w = bidegree_of_key(key, weights)
        blocks.setdefault(w, []).append(key)
    return blocks


def kernel_slice(delta: Derivation, d, n, space="full") -> GradedConstantsBasis:
    """Basis of the degree-n constants of the requested space."""
    if delta.d != d:
        raise ValueError("rank mismatch")
    keys = _slice_keys(delta, d, n, space)
    blocks = _blocks(delta, d, keys, space)
    basis = GradedConstantsBasis(n)
    for w in sorted(blocks, key=lambda x: (x is None, x)):
        block = blocks[w]
        # images live in the block of bidegree w + (1, -1); index its keys
        images = [_image_coords(delta, d, key, space) for key in block]
        out_keys = {}
        for img in images:
            for k in img:
                if k not in out_keys:
                    out_keys[k] = len(out_keys)
        m = SparseMatrix(len(out_keys), len(block))
        for col, img in enumerate(images):
            for k, c in img.items():
                m[out_keys[k], col] = c
        for vec in kernel_basis(m):
            elem = None
            for col, c in enumerate(vec):
                if c:
                    term = _key_element(d, block[col], space).scale(c)
                    elem = term if elem is None else elem + term
            basis.vectors.append(elem)
    return basis


def kernel_dims(delta, d, bound, space="full"):
    """Kernel dimensions per degree 0..bound."""
    return [kernel_slice(delta, d, n, space).dimension
            for n in range(bound + 1)]


# -- span computations -----------------------------------------------------


def _check_ring_constants(ring_gens, delta):
    for g in ring_gens:
        img = g.derive(delta)
        if not img.is_zero():
            from .grammar import polyuv_to_str
            raise ValueError(
                f"ring generator {polyuv_to_str(g)} is not a constant; "
                f"its image is {polyuv_to_str(img)}")


def _check_module_constants(module_gens, delta):
    for g in module_gens:
        if g.unit:
            raise ValueError("module generators must lie in the commutator ideal")
        img = delta.apply(g)
        if not img.is_zero():
            from .grammar import element_to_str
            raise ValueError(
                f"module generator {element_to_str(g)} is not a constant; "
                f"its image is {element_to_str(img)}")


def ring_monomials(ring_gens, bound):
    """All power products of the generators with total degree <= bound.

    Yields (degree, PolyUV); the empty product is included."""
    degs = [min(g.degrees(), default=0) for g in ring_gens]
    for g in ring_gens:
        if len(g.degrees()) > 1:
            raise ValueError("ring generators must be homogeneous")
    out = []

    def rec(idx, deg, poly):
        out.append((deg, poly))
        for k in range(idx, len(ring_gens)):
            nd = deg + degs[k]
            if nd <= bound and degs[k] > 0:
                rec(k, nd, poly * ring_gens[k])

    d = ring_gens[0].d if ring_gens else None
    if d is None:
        return []
    rec(0, 0, PolyUV.one(d))
    return out


def _comm_index(d, n):
    return {key: i for i, key in
            enumerate(graded_basis(d, n, restrict_comm=True))}


def _uv_index(d, n):
    return {key: i for i, key in enumerate(uv_monomials(d, n))}


def module_span_dims(module_gens, ring_gens, delta: Derivation, bound):
    """Dimensions, per degree, of the module spanned by the generators.

    The module generators must be constants in the commutator ideal, the
    ring generators constants in K[U_d, V_d]; the span closes under
    multiplication by ring-generator power products."""
    d = delta.d
    _check_module_constants(module_gens, delta)
    _check_ring_constants(ring_gens, delta)
    reducers = [SpanReducer() for _ in range(bound + 1)]
    indexes = {}
    for gen in module_gens:
        gen_degs = gen.degrees()
        if len(gen_degs) != 1:
            raise ValueError("module generators must be homogeneous")
        gdeg = gen_degs.pop()
        for mdeg, mono in ring_monomials(ring_gens, bound - gdeg):
            n = gdeg + mdeg
            vec = act_poly(gen, mono)
            if n not in indexes:
                indexes[n] = _comm_index(d, n)
            idx = indexes[n]
            reducers[n].add({idx[k]: c for k, c in vec.comm.items()})
    return [r.dimension for r in reducers]


def subalgebra_span_dims(ring_gens, delta: Derivation, bound):
    """Dimensions, per degree, of the unital subalgebra the generators span."""
    d = delta.d
    _check_ring_constants(ring_gens, delta)
    reducers = [SpanReducer() for _ in range(bound + 1)]
    indexes = {}
    for mdeg, mono in ring_monomials(ring_gens, bound):
        if mdeg not in indexes:
            indexes[mdeg] = _uv_index(d, mdeg)
        idx = indexes[mdeg]
        reducers[mdeg].add({idx[k]: c for k, c in mono.terms.items()})
    return [r.dimension for r in reducers]


def verify_relation(combination, delta: Derivation) -> bool:
    """Evaluate sum of (element, u/v polynomial) pairs and test exact zero."""
    total = None
    for elem, poly in combination:
        if elem.d != delta.d or poly.d != delta.d:
            raise ValueError("rank mismatch in relation")
        term = act_poly(elem, poly)
        total = term if total is None else total + term
    if total is None:
        raise ValueError("empty relation")
    return total.is_zero()


# -- lifting ---------------------------------------------------------------


@dataclass
class GeneratorSet:
    """Module generators in the commutator ideal plus ring generators."""

    module_gens: list
    ring_gens: list


def split_omega(p: PolyUV):
    """Split into (pure-u part, part whose monomials all contain a v)."""
    e_part = {k: c for k, c in p.terms.items() if not sum(k[1])}
    f_part = {k: c for k, c in p.terms.items() if sum(k[1])}
    return PolyUV(p.d, e_part), PolyUV(p.d, f_part)


def lift_generators(prev: GeneratorSet, delta: Derivation) -> GeneratorSet:
    """Lift a rank d-1 generating set to rank d through the pi map.

    Requires the derivation to annihilate x_d.  Ring generators with both
    pure-u and v-containing monomials are split before lifting."""
    d = delta.d
    if not delta.annihilates(d):
        raise ValueError("lifting requires delta(x_d) = 0")
    module_gens = [g.pad(d) if g.d < d else g for g in prev.module_gens]
    ring_gens = []
    f_parts = []
    for g in prev.ring_gens:
        g = g.pad(d) if g.d < d else g
        e_part, f_part = split_omega(g)
        ring_gens.append(g)
        if not f_part.is_zero():
            f_parts.append(f_part)
    lifted = module_gens + [pi(f, delta) for f in f_parts]
    new_ring = ring_gens + [PolyUV.u(d, d), PolyUV.v(d, d)]
    return GeneratorSet(lifted, new_ring)


def lift_basis(prev_module_bases, prev_omega_bases, delta: Derivation, bound):
    """Bases of the rank-d commutator-ideal constants from rank d-1 data.

    `prev_module_bases[n]` are constants of the smaller commutator ideal,
    `prev_omega_bases[n]` constants of the omega ideal of the smaller
    polynomial algebra; each element gets every u_d^m v_d^k attached."""
    d = delta.d
    if not delta.annihilates(d):
        raise ValueError("lifting requires delta(x_d) = 0")
    out = [GradedConstantsBasis(n) for n in range(bound + 1)]
    ud = [0] * d
    vd = [0] * d

    def attach(elem, n0):
        for m in range(bound + 1 - n0):
            for k in range(bound + 1 - n0 - m):
                ue, ve = list(ud), list(vd)
                ue[d - 1] = m
                ve[d - 1] = k
                yield n0 + m + k, elem.act_uv(ue, ve)

    candidates = [[] for _ in range(bound + 1)]
    for n0, basis in enumerate(prev_module_bases):
        if n0 > bound:
            break
        for e in basis.vectors:
            for n, vec in attach(e.pad(d) if e.d < d else e, n0):
                candidates[n].append(vec)
    for n0, basis in enumerate(prev_omega_bases):
        if n0 + 1 > bound:
            break
        for g in basis.vectors:
            lifted = pi(g.pad(d) if g.d < d else g, delta)
            for n, vec in attach(lifted, n0 + 1):
                candidates[n].append(vec)
    for n in range(bound + 1):
        idx = _comm_index(d, n)
        reducer = SpanReducer()
        for vec in candidates[n]:
            if not delta.apply(vec).is_zero():
                raise AssertionError("lifted vector is not a constant")
            if reducer.add({idx[k]: c for k, c in vec.comm.items()}):
                out[n].vectors.append(vec)
            else:
                raise AssertionError("lifted vectors are not independent")
    return out


# -- named verification cases ---------------------------------------------


def _degree_rows(bound, kernel, span):
    return [{"n": n, "kernel_dim": kernel[n], "span_dim": span[n],
             "match": kernel[n] == span[n]} for n in range(bound + 1)]


def _run_d2_block2(bound):
    from . import tables
    delta = Derivation.from_partition((1,))
    gens = GeneratorSet(tables.rank2_module_generators(),
                        tables.rank2_ring_generators())
    kernel = kernel_dims(delta, 2, bound, space="commutator")
    span = module_span_dims(gens.module_gens, gens.ring_gens, delta, bound)
    ring_dims = subalgebra_span_dims(gens.ring_gens, delta, bound)
    uv_kernel = kernel_dims(delta, 2, bound, space="polyUV")
    # freeness of the cyclic module: span dims must equal the free count
    free = [0, 0] + ring_dims[:max(bound - 1, 0)]
    relations = [
        {"name": "ring constants span == polynomial constants",
         "holds": ring_dims == uv_kernel},
        {"name": "cyclic module free to the bound",
         "holds": span == free[:bound + 1]},
    ]
    return {"degrees": _degree_rows(bound, kernel, span),
            "relations": relations}


def _run_d3_block21(bound):
    from . import tables
    delta = Derivation.from_partition((1, 0))
    prev = GeneratorSet(tables.rank2_module_generators(),
                        tables.rank2_ring_generators())
    gens = lift_generators(prev, delta)
    kernel = kernel_dims(delta, 3, bound, space="commutator")
    span = module_span_dims(gens.module_gens, gens.ring_gens, delta, bound)
    delta2 = Derivation.from_partition((1,))
    prev_module = [kernel_slice(delta2, 2, n, space="commutator")
                   for n in range(bound + 1)]
    prev_omega = [kernel_slice(delta2, 2, n, space="polyUV_omega")
                  for n in range(bound + 1)]
    lifted = lift_basis(prev_module, prev_omega, delta, bound)
    lift_counts = [b.dimension for b in lifted]
    relations = [{"name": name, "holds": verify_relation(combo, delta)}
                 for name, combo in tables.rank3_lift_relation()]
    relations.append({"name": "lifted basis counts == kernel dims",
                      "holds": lift_counts == kernel})
    return {"degrees": _degree_rows(bound, kernel, span),
            "relations": relations}


def _run_d3_block3(bound):
    from . import tables
    delta = Derivation.from_partition((2,))
    cs = tables.rank3_c_generators()
    fs = tables.rank3_f_generators()
    relations = []
    for i, c in enumerate(cs, start=1):
        relations.append({"name": f"delta(c{i}) = 0",
                          "holds": delta.apply(c).is_zero()})
    for name, combo in tables.rank3_module_relations():
        pairs = [(cs[idx - 1], poly) for idx, poly in combo]
        relations.append({"name": name,
                          "holds": verify_relation(pairs, delta)})
    for name, residual in tables.rank3_ring_relations():
        relations.append({"name": name, "holds": residual.is_zero()})
    kernel = kernel_dims(delta, 3, bound, space="commutator")
    span = module_span_dims(cs, fs, delta, bound)
    ring_dims = subalgebra_span_dims(fs, delta, bound)
    uv_kernel = kernel_dims(delta, 3, bound, space="polyUV")
    relations.append({"name": "ring constants span == polynomial constants",
                      "holds": ring_dims == uv_kernel})
    report = {"degrees": _degree_rows(bound, kernel, span),
              "relations": relations}
    # the published algebra-level generating statement uses two-sided
    # products; this case certifies the module-level decomposition only
    report["notes"] = ["algebra-level generators certified via the module "
                       "span; two-sided product bookkeeping is out of scope"]
    return report


CASES = {
    "d2-block2": _run_d2_block2,
    "d3-block21": _run_d3_block21,
    "d3-block3": _run_d3_block3,
}


def run_case(name, bound):
    """Run a named certification case; returns the JSON-ready report."""
    if name not in CASES:
        raise ValueError(f"unknown case {name!r}; choose from {sorted(CASES)}")
    start = time.monotonic()
    report = CASES[name](bound)
    report["case"] = name
    report["elapsed"] = round(time.monotonic() - start, 3)
    report["ok"] = (all(row["match"] for row in report["degrees"])
                    and all(r["holds"] for r in report["relations"]))
    return report

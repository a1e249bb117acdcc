"""Acceptance gate: one test per criterion, exact integer equality throughout.

A terminal-summary hook in conftest.py prints one PASS/FAIL line per
criterion at the end of the run.
"""

import random
import time

from metaconst import tables
from metaconst.constants import kernel_dims, kernel_slice, lift_basis, \
    run_case
from metaconst.metabelian import Derivation, MetabelianElement
from metaconst.series import (NiceRational, consistency_check,
                              constants_series, gl2_constants_series,
                              hseries_free_metabelian, hseries_polyuv,
                              reduce_series, schur_extract, substitute_gl2)
from metaconst.wreath import act_poly, embed, pi
from util import rand_element, rand_polyuv


def criterion(label):
    def mark(fn):
        fn.criterion = label
        return fn
    return mark


@criterion("1 dimension oracle, rank 2")
def test_criterion_1():
    start = time.monotonic()
    delta = Derivation.from_partition((1,))
    dims = kernel_dims(delta, 2, 8)
    elapsed = time.monotonic() - start
    expected = tables.F_CONSTANTS_Z[(2, (1,))].expand(8).coeffs()
    assert expected == [1, 1, 2, 3, 5, 7, 10, 13, 17]
    assert dims == expected
    assert elapsed < 1.0


@criterion("2 dimension oracle, rank 3")
def test_criterion_2():
    start = time.monotonic()
    delta = Derivation.from_partition((2,))
    dims = kernel_dims(delta, 3, 8)
    expected = tables.F_CONSTANTS_Z[(3, (2,))].expand(8).coeffs()
    assert expected[:7] == [1, 1, 3, 7, 16, 32, 58]
    assert dims == expected

    delta2 = Derivation.from_partition((1, 0))
    comm_dims = kernel_dims(delta2, 3, 8, space="commutator")
    series = tables.GL2_FPRIME_CONSTANTS[(3, (1, 0))]
    assert comm_dims == series.expand(8).coeffs()
    elapsed = time.monotonic() - start
    assert elapsed < 10.0


@criterion("3 dimension oracle, ranks 4 and 5")
def test_criterion_3():
    start = time.monotonic()
    jobs = [(4, (3,), 6), (4, (1, 1), 6), (5, (4,), 5), (5, (2, 1), 5)]
    for d, part, bound in jobs:
        delta = Derivation.from_partition(part)
        key = (d, part)
        full = kernel_dims(delta, d, bound)
        assert full == tables.F_CONSTANTS_Z[key].expand(bound).coeffs(), key
        uv = kernel_dims(delta, d, bound, space="polyUV")
        assert uv == tables.UV_CONSTANTS_Z[key].expand(bound).coeffs(), key
    elapsed = time.monotonic() - start
    assert elapsed < 300.0


@criterion("4 consistency identity")
def test_criterion_4():
    for d, part in ((2, (1,)), (3, (2,))):
        f = tables.GL2_F_CONSTANTS[(d, part)]
        h = substitute_gl2(hseries_free_metabelian(d), part)
        assert consistency_check(f, h, 10)
        # every single-coefficient perturbation of the numerator must fail
        for mono in f.num:
            bad = f + NiceRational(f.vars, {mono: 1})
            assert not consistency_check(bad, h, 10), (d, part, mono)
        bad = f + NiceRational(f.vars, {(1, 0, 1): 1})
        assert not consistency_check(bad, h, 10)


@criterion("5 Schur extraction pipeline")
def test_criterion_5():
    for d, part in ((2, (1,)), (3, (2,))):
        got = gl2_constants_series(hseries_free_metabelian(d), part, 8)
        want = tables.GL2_F_CONSTANTS[(d, part)].expand(8)
        assert got.slices == want.slices, (d, part)


@criterion("6 reduction pipeline and lifted basis")
def test_criterion_6():
    got = reduce_series(tables.GL2_FPRIME_CONSTANTS[(2, (1,))],
                        tables.GL2_OMEGA_CONSTANTS[(2, (1,))])
    want = tables.GL2_FPRIME_CONSTANTS[(3, (1, 0))]
    assert got.eq_rational(want)

    bound = 6
    delta2 = Derivation.from_partition((1,))
    delta3 = Derivation.from_partition((1, 0))
    prev_module = [kernel_slice(delta2, 2, n, space="commutator")
                   for n in range(bound + 1)]
    prev_omega = [kernel_slice(delta2, 2, n, space="polyUV_omega")
                  for n in range(bound + 1)]
    counts = [b.dimension
              for b in lift_basis(prev_module, prev_omega, delta3, bound)]
    assert counts == want.expand(bound).coeffs()


@criterion("7 generator certification, rank 3 single cell")
def test_criterion_7():
    start = time.monotonic()
    report = run_case("d3-block3", 8)
    elapsed = time.monotonic() - start
    names = {rel["name"] for rel in report["relations"] if rel["holds"]}
    for i in range(1, 6):
        assert f"delta(c{i}) = 0" in names
    for tag in ("R1", "R2", "R3", "R4", "R5", "R6"):
        assert any(n.startswith(tag) for n in names), tag
    assert any(n.startswith("f6^2") for n in names)
    assert any(n.startswith("f7") for n in names)
    assert any(n.startswith("f8") for n in names)
    assert all(rel["holds"] for rel in report["relations"])
    assert all(row["match"] for row in report["degrees"])
    assert len(report["degrees"]) == 9
    assert elapsed < 60.0


@criterion("8 free cyclic module, rank 2")
def test_criterion_8():
    report = run_case("d2-block2", 8)
    assert report["ok"]
    kernel = [row["kernel_dim"] for row in report["degrees"]]
    span = [row["span_dim"] for row in report["degrees"]]
    delta = Derivation.from_partition((1,))
    assert kernel == kernel_dims(delta, 2, 8, space="commutator")
    assert span == kernel
    # free count: one generator of degree 2 times the ring constants
    ring = tables.UV_CONSTANTS_Z[(2, (1,))].expand(6).coeffs()
    assert span == [0, 0] + ring
    assert any(rel["name"] == "cyclic module free to the bound"
               and rel["holds"] for rel in report["relations"])


@criterion("9 structural property suite")
def test_criterion_9():
    rng = random.Random(99)
    delta3 = Derivation.from_partition((2,))
    delta21 = Derivation.from_partition((1, 0))
    X = MetabelianElement.generator
    for _ in range(100):
        a = rand_element(rng, 3, max_len=2)
        b = rand_element(rng, 3, max_len=2)
        c = rand_element(rng, 3, max_len=1)
        # Leibniz
        assert delta3.apply(a * b) == \
            delta3.apply(a) * b + a * delta3.apply(b)
        # associativity
        assert (a * b) * c == a * (b * c)
        # metabelian identity
        assert ((a * b - b * a) * (c * a - a * c)).is_zero()
        # embedding is multiplicative
        assert embed(a * b) == embed(a) * embed(b)
        # embedding commutes with the derivation
        assert embed(delta3.apply(a)) == embed(a).derive(delta3)
        # pi Leibniz on the augmentation ideal of K[V]
        v = rand_polyuv(rng, 3, vars_upto=2, pure_v=True, max_deg=2)
        w = rand_polyuv(rng, 3, vars_upto=2, pure_v=True, max_deg=2)
        assert pi(v * w) == act_poly(pi(v), w) + act_poly(pi(w), v)
        # pi commutes with a derivation annihilating the last generator
        p = rand_polyuv(rng, 3, vars_upto=2, need_v=True, max_deg=3)
        assert pi(p.derive(delta21), delta21) == \
            delta21.apply(pi(p, delta21))

import pytest

from metaconst import tables
from metaconst.series import (AsymmetricSliceError, NiceRational,
                              TruncatedSeries, consistency_check,
                              consistency_report, constants_series,
                              divide_by_t1_minus_t2, gl2_constants_series,
                              hseries_commutator_ideal,
                              hseries_free_metabelian, hseries_polyuv,
                              reduce_series, schur_extract, schur_polynomial,
                              schur_resum, specialize_total, substitute_gl2)

FREE_DIMS = {
    2: [1, 2, 4, 8, 15, 26, 42, 64, 93],
    3: [1, 3, 9, 27, 72, 168, 350, 666, 1179],
    4: [1, 4, 16, 64, 220, 640, 1620, 3672, 7623],
    5: [1, 5, 25, 125, 525, 1825, 5425, 14245, 33880],
}

F_TABLE_DIMS = {
    (2, (1,)): [1, 1, 2, 3, 5, 7, 10, 13, 17],
    (3, (2,)): [1, 1, 3, 7, 16, 32, 58, 98, 155],
    (4, (3,)): [1, 1, 4, 12, 36, 90, 204],
    (4, (1, 1)): [1, 2, 8, 24, 78, 184, 432],
    (5, (4,)): [1, 1, 5, 19, 69, 209],
    (5, (2, 1)): [1, 2, 9, 37, 135, 410],
}
UV_TABLE_DIMS = {
    (2, (1,)): [1, 2, 4, 6, 9, 12, 16, 20, 25],
    (3, (2,)): [1, 2, 7, 12, 26, 40, 70, 100, 155],
    (4, (3,)): [1, 2, 8, 20, 50, 98, 192],
    (4, (1, 1)): [1, 4, 16, 40, 100, 200, 400],
    (5, (4,)): [1, 2, 11, 32, 87, 210],
    (5, (2, 1)): [1, 4, 19, 60, 167, 408],
}
FPRIME_TABLE_DIMS = {
    (2, (1,)): [0, 0, 1, 2, 4, 6, 9, 12, 16],
    (3, (2,)): [0, 0, 1, 5, 13, 29, 54, 94, 150],
    (3, (1, 0)): [0, 0, 2, 9, 25, 55, 105, 182, 294],
}


def test_free_series_expansion():
    for d, dims in FREE_DIMS.items():
        f = specialize_total(hseries_free_metabelian(d))
        assert f.expand(8).coeffs() == dims


def test_commutator_plus_polynomial():
    for d in (2, 3, 4):
        whole = specialize_total(hseries_free_metabelian(d)).expand(8).coeffs()
        comm = specialize_total(hseries_commutator_ideal(d)).expand(8).coeffs()
        poly = [len(list(_unit(d, n))) for n in range(9)]
        assert [c + p for c, p in zip(comm, poly)] == whole


def _unit(d, n):
    from itertools import combinations_with_replacement
    return combinations_with_replacement(range(d), n)


def _units(d):
    for j in range(d):
        m = [0] * d
        m[j] = 1
        yield tuple(m)


def test_table_expansions():
    for key, dims in F_TABLE_DIMS.items():
        got = tables.F_CONSTANTS_Z[key].expand(len(dims) - 1).coeffs()
        assert got == dims, key
    for key, dims in UV_TABLE_DIMS.items():
        got = tables.UV_CONSTANTS_Z[key].expand(len(dims) - 1).coeffs()
        assert got == dims, key
    for key, dims in FPRIME_TABLE_DIMS.items():
        got = tables.FPRIME_CONSTANTS_Z[key].expand(len(dims) - 1).coeffs()
        assert got == dims, key


def test_constants_split():
    # whole-algebra constants = ordered-monomial constants plus
    # commutator-ideal constants
    for d, part in ((2, (1,)), (3, (2,))):
        n = 8
        key = (d, part)
        whole = tables.F_CONSTANTS_Z[key].expand(n).coeffs()
        comm = tables.FPRIME_CONSTANTS_Z[key].expand(n).coeffs()
        poly = NiceRational(tuple(f"z{j}" for j in range(1, d + 1)),
                            {(0,) * d: 1},
                            {m: 1 for m in _units(d)})
        unit = gl2_constants_series(poly, part, n).coeffs()
        assert [a + b for a, b in zip(unit, comm)] == whole


def test_bigraded_specializes_to_single():
    for table, single in ((tables.GL2_F_CONSTANTS, tables.F_CONSTANTS_Z),
                          (tables.GL2_UV_CONSTANTS, tables.UV_CONSTANTS_Z),
                          (tables.GL2_FPRIME_CONSTANTS,
                           tables.FPRIME_CONSTANTS_Z)):
        for key, f in table.items():
            assert f.expand(8).coeffs() == single[key].expand(8).coeffs(), key


def test_schur_polynomial():
    assert schur_polynomial(2, 0) == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    assert schur_polynomial(3, 1) == {(3, 1): 1, (2, 2): 1, (1, 3): 1}
    with pytest.raises(ValueError):
        schur_polynomial(1, 2)


def test_schur_extract_and_resum():
    f = substitute_gl2(hseries_free_metabelian(3), (2,))
    ts = f.expand(6)
    dec = schur_extract(ts)
    assert all(mult >= 0 for _, _, _, mult in dec)
    assert schur_resum(dec, 6) == ts


def test_schur_extract_rejects_asymmetric():
    bad = TruncatedSeries(("t1", "t2"), 0, [{(1, 0): 1}])
    with pytest.raises(AsymmetricSliceError):
        schur_extract(bad)


def test_pipeline_matches_closed_forms():
    for d, part in ((2, (1,)), (3, (2,))):
        got = gl2_constants_series(hseries_free_metabelian(d), part, 8)
        want = tables.GL2_F_CONSTANTS[(d, part)].expand(8)
        assert got.slices == want.slices
        uv_dec = schur_extract(hseries_polyuv(d, part).expand(8))
        got_uv = constants_series(uv_dec, 8)
        want_uv = tables.GL2_UV_CONSTANTS[(d, part)].expand(8)
        assert got_uv.slices == want_uv.slices


def test_divide_by_t1_minus_t2():
    quot = divide_by_t1_minus_t2({(2, 0): 1, (0, 2): -1})
    assert quot == {(1, 0): 1, (0, 1): 1}
    with pytest.raises(AsymmetricSliceError):
        divide_by_t1_minus_t2({(0, 0): 1})


def test_consistency_identity():
    for d, part in ((2, (1,)), (3, (2,))):
        f = tables.GL2_F_CONSTANTS[(d, part)]
        h = substitute_gl2(hseries_free_metabelian(d), part)
        ok, mismatch = consistency_report(f, h, 10)
        assert ok and mismatch is None


def test_consistency_detects_perturbation():
    f = tables.GL2_F_CONSTANTS[(2, (1,))]
    h = substitute_gl2(hseries_free_metabelian(2), (1,))
    bad = f + NiceRational(f.vars, {(1, 0, 1): 1})
    ok, mismatch = consistency_report(bad, h, 10)
    assert not ok and mismatch is not None


def test_reduce_series():
    got = reduce_series(tables.GL2_FPRIME_CONSTANTS[(2, (1,))],
                        tables.GL2_OMEGA_CONSTANTS[(2, (1,))])
    want = tables.GL2_FPRIME_CONSTANTS[(3, (1, 0))]
    assert got.eq_rational(want)


def test_json_roundtrip():
    f = tables.GL2_F_CONSTANTS[(3, (2,))]
    again = NiceRational.loads(f.dumps())
    assert again == f
    assert again.dumps() == f.dumps()


def test_substitute():
    f = tables.F_CONSTANTS_Z[(2, (1,))]
    g = f.substitute(("z", "w"), {"z": (1, 0)})
    assert g.vars == ("z", "w")
    assert g.expand(8).coeffs() == f.expand(8).coeffs()

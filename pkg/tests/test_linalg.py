from fractions import Fraction

from metaconst.linalg import SparseMatrix, SpanReducer, kernel_basis, rank


def mat(rows):
    m = SparseMatrix(len(rows), len(rows[0]) if rows else 0)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            m[i, j] = Fraction(v)
    return m


def test_rank_small():
    assert rank(mat([[1, 2], [2, 4]])) == 1
    assert rank(mat([[1, 0], [0, 1]])) == 2
    assert rank(mat([[0, 0], [0, 0]])) == 0
    assert rank(mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 2


def test_kernel_basis():
    m = mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    basis = kernel_basis(m)
    assert len(basis) == 1
    for vec in basis:
        assert all(c == 0 for c in m.mul_vector(vec))


def test_kernel_of_zero_map():
    m = SparseMatrix(3, 4)
    basis = kernel_basis(m)
    assert len(basis) == 4


def test_kernel_fractions():
    m = mat([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])
    assert rank(m) == 1
    basis = kernel_basis(m)
    assert len(basis) == 1
    assert all(c == 0 for c in m.mul_vector(basis[0]))


def test_kernel_dimension_theorem():
    import random
    rng = random.Random(7)
    for _ in range(20):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = SparseMatrix(rows, cols)
        for i in range(rows):
            for j in range(cols):
                if rng.random() < 0.5:
                    m[i, j] = Fraction(rng.randint(-4, 4))
        basis = kernel_basis(m)
        assert len(basis) == cols - rank(m)
        for vec in basis:
            assert all(c == 0 for c in m.mul_vector(vec))


def test_span_reducer():
    r = SpanReducer()
    assert r.add({0: Fraction(1), 1: Fraction(2)})
    assert not r.add({0: Fraction(2), 1: Fraction(4)})
    assert r.add({1: Fraction(1)})
    assert r.dimension == 2
    assert not r.add({0: Fraction(1, 3)})
    assert not r.add({})
    assert r.dimension == 2

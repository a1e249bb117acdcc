import random
from fractions import Fraction

import pytest

from metaconst.metabelian import (CommutatorKey, Derivation, MetabelianElement,
                                  bidegree_of_key, graded_basis, word_element,
                                  weights_from_partition)
from util import rand_element

X = MetabelianElement.generator

FULL_DIMS = {
    2: [1, 2, 4, 8, 15, 26, 42, 64, 93],
    3: [1, 3, 9, 27, 72, 168, 350, 666, 1179],
    4: [1, 4, 16, 64, 220, 640, 1620, 3672, 7623],
    5: [1, 5, 25, 125, 525, 1825, 5425, 14245, 33880],
}
COMM_DIMS = {
    2: [0, 0, 1, 4, 10, 20, 35, 56, 84],
    3: [0, 0, 3, 17, 57, 147, 322, 630, 1134],
    4: [0, 0, 6, 44, 185, 584, 1536, 3552, 7458],
    5: [0, 0, 10, 90, 455, 1699, 5215, 13915, 33385],
}


def test_basic_product_normal_form():
    x1, x2 = X(2, 1), X(2, 2)
    p = x2 * x1
    assert p == MetabelianElement.monomial(2, (1, 1)) \
        + MetabelianElement.commutator_basis(2, 2, 1)


def test_commutator_rewrite():
    # [a, b, c] with c < b rewrites through [a,c,b] - [b,c,a]
    x1, x2, x3 = (X(3, j) for j in (1, 2, 3))
    c32 = x3 * x2 - x2 * x3
    lhs = c32 * x1 - x1 * c32
    want = MetabelianElement.commutator_basis(3, 3, 1, tail=(2,)) \
        - MetabelianElement.commutator_basis(3, 2, 1, tail=(3,))
    assert lhs == want


def test_left_normed_tail_is_sorted():
    e = MetabelianElement.commutator_basis(3, 3, 1, tail=(2, 2))
    (key,) = e.comm
    assert key.head == (3, 1) and key.tail == (2, 2)


def test_key_validation():
    with pytest.raises(ValueError):
        CommutatorKey((0, 0), (1, 2), ())  # head must descend
    # unsorted tails are normalized, not rejected
    e = MetabelianElement.commutator_basis(3, 3, 1, tail=(3, 2))
    assert e == MetabelianElement.commutator_basis(3, 3, 1, tail=(2, 3))


def test_metabelian_identity():
    rng = random.Random(3)
    for _ in range(30):
        a, b = rand_element(rng, 3), rand_element(rng, 3)
        c, e = rand_element(rng, 3), rand_element(rng, 3)
        lhs = (a * b - b * a) * (c * e - e * c)
        assert lhs.is_zero()


def test_associativity():
    rng = random.Random(4)
    for _ in range(30):
        a, b, c = (rand_element(rng, 3, max_len=2) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_module_action_matches_multiplication():
    x1, x2 = X(2, 1), X(2, 2)
    c = x2 * x1 - x1 * x2
    assert c.act_u(1) == x1 * c
    assert c.act_v(1) == c * x1 - x1 * c


def test_act_uv_rejects_unit_part():
    with pytest.raises(ValueError):
        X(2, 1).act_u(1)


def test_graded_basis_counts():
    for d, dims in FULL_DIMS.items():
        got = [len(graded_basis(d, n)) for n in range(9)]
        assert got == dims
    for d, dims in COMM_DIMS.items():
        got = [len(graded_basis(d, n, restrict_comm=True)) for n in range(9)]
        assert got == dims


def test_word_element_sorts():
    w = word_element(3, (2, 1, 3))
    total = X(3, 2) * X(3, 1) * X(3, 3)
    assert w == total


def test_derivation_from_partition():
    delta = Derivation.from_partition((2,))
    assert delta.apply(X(3, 1)).is_zero()
    assert delta.apply(X(3, 2)) == X(3, 1)
    assert delta.apply(X(3, 3)) == X(3, 2)


def test_derivation_requires_nilpotent():
    with pytest.raises(ValueError):
        Derivation(2, [[Fraction(1), Fraction(0)],
                       [Fraction(0), Fraction(1)]])


def test_leibniz():
    rng = random.Random(5)
    delta = Derivation.from_partition((1, 0))
    for _ in range(30):
        a, b = rand_element(rng, 3), rand_element(rng, 3)
        assert delta.apply(a * b) == \
            delta.apply(a) * b + a * delta.apply(b)


def test_known_constant():
    # x2^2 - (x1 x3 + x3 x1) is killed by the single-cell rank-3 derivation
    x1, x2, x3 = (X(3, j) for j in (1, 2, 3))
    delta = Derivation.from_partition((2,))
    e = x2 * x2 - (x1 * x3 + x3 * x1)
    assert delta.apply(e).is_zero()


def test_bidegrees():
    weights = weights_from_partition((2,))
    assert weights == ((2, 0), (1, 1), (0, 2))
    key = CommutatorKey((1, 0, 0), (3, 1), ())
    assert bidegree_of_key(key, weights) == (2 + 2 + 0, 0 + 2 + 0)


def test_pad():
    e = rand_element(random.Random(9), 2)
    p = e.pad(3)
    assert p.d == 3 and p.degrees() == e.degrees()

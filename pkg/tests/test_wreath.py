import random

import pytest

from metaconst.metabelian import Derivation, MetabelianElement
from metaconst.wreath import PolyUV, WreathElement, act_poly, embed, pi
from util import rand_element, rand_polyuv

X = MetabelianElement.generator


def test_embed_generator_and_commutator():
    w = embed(X(2, 2) * X(2, 1) - X(2, 1) * X(2, 2))
    assert not w.y
    assert w.coords[1] == PolyUV.v(2, 1)
    assert w.coords[0] == -PolyUV.v(2, 2)


def test_embed_multiplicative():
    rng = random.Random(11)
    for _ in range(30):
        a, b = rand_element(rng, 3, max_len=2), rand_element(rng, 3, max_len=2)
        assert embed(a * b) == embed(a) * embed(b)


def test_embed_commutes_with_derivation():
    rng = random.Random(12)
    delta = Derivation.from_partition((2,))
    for _ in range(30):
        a = rand_element(rng, 3)
        assert embed(delta.apply(a)) == embed(a).derive(delta)


def test_act_poly_matches_embedding():
    # on the coordinates of an embedded commutator-ideal element the
    # module action is plain polynomial multiplication
    rng = random.Random(13)
    for _ in range(30):
        a = rand_element(rng, 3, max_len=2)
        c = a * X(3, 1) - X(3, 1) * a  # lands in the commutator ideal
        p = rand_polyuv(rng, 3, max_deg=2)
        w = embed(c)
        assert not w.y
        want = WreathElement(3, coords=tuple(q * p for q in w.coords))
        assert embed(act_poly(c, p)) == want


def test_pi_examples():
    assert pi(PolyUV.v(3, 1)) == MetabelianElement.commutator_basis(3, 3, 1)
    got = pi(PolyUV.u(3, 1) * PolyUV.v(3, 2) - PolyUV.u(3, 2) * PolyUV.v(3, 1))
    c32 = MetabelianElement.commutator_basis(3, 3, 2)
    c31 = MetabelianElement.commutator_basis(3, 3, 1)
    assert got == c32.act_u(1) - c31.act_u(2)
    assert pi(PolyUV.v(3, 1) * PolyUV.v(3, 1)) == \
        MetabelianElement.commutator_basis(3, 3, 1, tail=(1,)).scale(2)


def test_pi_rejects_last_pair():
    with pytest.raises(ValueError):
        pi(PolyUV.v(3, 3))
    with pytest.raises(ValueError):
        pi(PolyUV.v(3, 1), Derivation.from_partition((2,)))


def test_pi_kills_pure_u():
    assert pi(PolyUV.u(3, 1) * PolyUV.u(3, 2)).is_zero()


def test_pi_leibniz():
    rng = random.Random(14)
    for _ in range(30):
        v = rand_polyuv(rng, 3, vars_upto=2, pure_v=True)
        w = rand_polyuv(rng, 3, vars_upto=2, pure_v=True)
        assert pi(v * w) == act_poly(pi(v), w) + act_poly(pi(w), v)


def test_pi_commutes_with_derivation():
    rng = random.Random(15)
    delta = Derivation.from_partition((1, 0))
    for _ in range(30):
        p = rand_polyuv(rng, 3, vars_upto=2, need_v=True)
        assert pi(p.derive(delta), delta) == delta.apply(pi(p, delta))


def test_wreath_mult_associative():
    rng = random.Random(16)
    for _ in range(20):
        a, b, c = (embed(rand_element(rng, 2, max_len=2)) for _ in range(3))
        assert (a * b) * c == a * (b * c)

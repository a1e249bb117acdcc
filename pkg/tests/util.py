"""Shared random element builders for the property tests."""

from fractions import Fraction

from metaconst.metabelian import MetabelianElement, word_element
from metaconst.wreath import PolyUV


def rand_word(rng, d, max_len):
    return tuple(rng.randint(1, d) for _ in range(rng.randint(0, max_len)))


def rand_element(rng, d, max_len=3, terms=2):
    """Random combination of short generator words."""
    out = MetabelianElement.zero(d)
    for _ in range(rng.randint(1, terms)):
        c = Fraction(rng.randint(-3, 3))
        out = out + word_element(d, rand_word(rng, d, max_len), c)
    return out


def rand_polyuv(rng, d, max_deg=3, terms=2, vars_upto=None, pure_v=False,
                need_v=False):
    """Random u/v polynomial, optionally restricted to the first indices."""
    top = vars_upto or d
    out = PolyUV.zero(d)
    for _ in range(rng.randint(1, terms)):
        ue = [0] * d
        ve = [0] * d
        deg = rng.randint(1 if (pure_v or need_v) else 0, max_deg)
        for _ in range(deg):
            i = rng.randint(0, top - 1)
            if pure_v or rng.random() < 0.5:
                ve[i] += 1
            else:
                ue[i] += 1
        if need_v and not sum(ve):
            ve[rng.randint(0, top - 1)] += 1
        c = Fraction(rng.randint(-3, 3))
        out = out + PolyUV.monomial(d, ue, ve, c)
    return out

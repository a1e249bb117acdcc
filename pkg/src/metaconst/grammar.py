"""Parser and printer for the element expression language.

    element  := ["-"] term (("+" | "-") term)*
    term     := rational factor* | factor+
    factor   := gen | "[" element ("," element)+ "]" | "(" element ")"
    gen      := ("x" | "u" | "v") integer
    rational := integer ["/" positive-integer]

Whitespace is insignificant.  x-generators are legal only where an algebra
element is expected; u/v-generators only where a u/v polynomial is expected.
Brackets are left-normed commutators.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .metabelian import CommutatorKey, MetabelianElement
from .wreath import PolyUV


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([xuv])(\d+)|([-+/\[\](),]))")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {text[pos:pos + 10]!r}")
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("gen", (m.group(2), int(m.group(3)))))
        else:
            tokens.append(("sym", m.group(4)))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent evaluator over a small algebra adapter."""

    def __init__(self, tokens, algebra):
        self.tokens = tokens
        self.pos = 0
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, sym):
        tok = self.take()
        if tok != ("sym", sym):
            raise ParseError(f"expected {sym!r}, got {tok!r}")

    def parse(self):
        value = self.element()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return value

    def element(self):
        sign = 1
        tok = self.peek()
        if tok == ("sym", "-"):
            self.take()
            sign = -1
        elif tok == ("sym", "+"):
            self.take()
        value = self.term().scale(sign)
        while self.peek() in (("sym", "+"), ("sym", "-")):
            sign = 1 if self.take() == ("sym", "+") else -1
            value = value + self.term().scale(sign)
        return value

    def term(self):
        coeff = Fraction(1)
        saw_number = False
        tok = self.peek()
        if tok is not None and tok[0] == "num":
            saw_number = True
            coeff = Fraction(self.take()[1])
            if self.peek() == ("sym", "/"):
                self.take()
                den = self.take()
                if den[0] != "num" or den[1] == 0:
                    raise ParseError("expected a positive denominator")
                coeff /= den[1]
        factors = []
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok[0] == "gen" or tok in (("sym", "["), ("sym", "(")):
                factors.append(self.factor())
            else:
                break
        if not factors:
            if not saw_number:
                raise ParseError("empty term")
            return self.algebra.one().scale(coeff)
        value = factors[0]
        for f in factors[1:]:
            value = value * f
        return value.scale(coeff)

    def factor(self):
        tok = self.take()
        if tok[0] == "gen":
            kind, index = tok[1]
            return self.algebra.gen(kind, index)
        if tok == ("sym", "("):
            value = self.element()
            self.expect(")")
            return value
        if tok == ("sym", "["):
            args = [self.element()]
            while self.peek() == ("sym", ","):
                self.take()
                args.append(self.element())
            self.expect("]")
            if len(args) < 2:
                raise ParseError("commutator needs at least two arguments")
            value = args[0]
            for arg in args[1:]:
                value = value * arg - arg * value
            return value
        raise ParseError(f"unexpected token {tok!r}")


class _ElementAlgebra:
    def __init__(self, d):
        self.d = d

    def one(self):
        return MetabelianElement.one(self.d)

    def gen(self, kind, index):
        if kind != "x":
            raise ParseError(f"{kind}{index} is not legal in an algebra element")
        return MetabelianElement.generator(self.d, index)


class _PolyAlgebra:
    def __init__(self, d):
        self.d = d

    def one(self):
        return PolyUV.one(self.d)

    def gen(self, kind, index):
        if kind == "u":
            return PolyUV.u(self.d, index)
        if kind == "v":
            return PolyUV.v(self.d, index)
        raise ParseError(f"{kind}{index} is not legal in a u/v polynomial")


def parse_element(text, d) -> MetabelianElement:
    """Parse an expression into an element of F_d."""
    return _Parser(tokenize(text), _ElementAlgebra(d)).parse()


def parse_uv(text, d) -> PolyUV:
    """Parse an expression into a polynomial in u_1..u_d, v_1..v_d."""
    return _Parser(tokenize(text), _PolyAlgebra(d)).parse()


# -- printing --------------------------------------------------------------


def _coeff_prefix(c, first):
    if c < 0:
        sign = "-" if first else " - "
        c = -c
    else:
        sign = "" if first else " + "
    if c == 1:
        return sign
    return f"{sign}{c}"


def _gen_run(name, index, exp):
    return f"{name}{index}" * exp


def element_to_str(e: MetabelianElement) -> str:
    """Render an element; the output re-parses to an equal element."""
    parts = []
    first = True
    for exps in sorted(e.unit):
        c = e.unit[exps]
        body = "".join(_gen_run("x", j + 1, x) for j, x in enumerate(exps))
        coeff = _coeff_prefix(c, first)
        if not body:
            coeff = coeff if coeff.strip("+- ") else coeff + "1"
        parts.append(coeff + body)
        first = False
    for key in sorted(e.comm, key=lambda k: k.sort_key()):
        c = e.comm[key]
        prefix = "".join(_gen_run("x", j + 1, x)
                         for j, x in enumerate(key.prefix))
        inner = ",".join(f"x{j}" for j in key.head + key.tail)
        parts.append(_coeff_prefix(c, first) + prefix + f"[{inner}]")
        first = False
    return "".join(parts) if parts else "0"


def polyuv_to_str(p: PolyUV) -> str:
    """Render a u/v polynomial; the output re-parses to an equal polynomial."""
    parts = []
    first = True
    for ue, ve in sorted(p.terms):
        c = p.terms[(ue, ve)]
        body = "".join(_gen_run("u", j + 1, x) for j, x in enumerate(ue))
        body += "".join(_gen_run("v", j + 1, x) for j, x in enumerate(ve))
        coeff = _coeff_prefix(c, first)
        if not body:
            coeff = coeff if coeff.strip("+- ") else coeff + "1"
        parts.append(coeff + body)
        first = False
    return "".join(parts) if parts else "0"

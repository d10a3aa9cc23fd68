"""Expression grammar for elements of K = F[pi, 1/pi] and their rendering.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' ['-'] integer)?
    atom   := integer | 'y' | 'pi' | 'g' | '(' expr ')'

``g`` denotes the class of t in GF(p)[t]/(modulus).  Negative exponents and
division are only allowed on units of F[pi, 1/pi], i.e. monomials c*pi^k.
Rendering produces strings in this grammar, so ``parse(render(x)) == x``.
"""

from __future__ import annotations

import re

from .errors import DivisionByZero, ParseError
from .field import FieldConfig, LaurentElem, ResidueElem

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(src):
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN.match(src, pos)
        if m is None:  # only trailing whitespace
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*/^()":
                raise ParseError("unexpected character %r" % ch, start,
                                 ["integer", "y", "pi", "g", "(", "operator"])
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, cfg: FieldConfig):
        self.src = src
        self.cfg = cfg
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch, expected):
        tok = self.take()
        if tok[0] != "op" or tok[1] != ch:
            raise ParseError("unexpected %s" % _describe(tok), tok[2], expected)
        return tok

    def parse(self) -> LaurentElem:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected %s" % _describe(tok), tok[2],
                             ["+", "-", "*", "/", "^", "end of input"])
        return value

    def expr(self):
        negate = False
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs_tok = self.peek()
                rhs = self.factor()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    value = value * self._invert(rhs, rhs_tok[2])
            else:
                return value

    def _invert(self, value, pos):
        if value.is_zero():
            raise DivisionByZero("division by zero at position %d" % pos)
        if not value.is_unit():
            raise ParseError("divisor is not a unit c*pi^k of F[pi, 1/pi]", pos)
        return value.inverse()

    def factor(self):
        base_tok = self.peek()
        value = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            neg = False
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("unexpected %s" % _describe(tok), tok[2], ["integer"])
            k = int(tok[1])
            if neg:
                value = self._invert(value, base_tok[2]) ** k
            else:
                value = value ** k
        return value

    def atom(self):
        tok = self.take()
        kind, text, pos = tok
        cfg = self.cfg
        if kind == "int":
            return cfg.laurent({0: cfg.constant(int(text))})
        if kind == "name":
            if text == "pi":
                return cfg.pi
            if text == "g":
                return cfg.laurent({0: cfg.g})
            if text == cfg.var and not cfg.perfect:
                return cfg.laurent({0: cfg.y})
            raise ParseError("unknown symbol %r" % text, pos, _atoms(cfg))
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect_op(")", [")"])
            return value
        raise ParseError("unexpected %s" % _describe(tok), pos, _atoms(cfg))


def _atoms(cfg):
    names = ["integer", "pi", "g", "("]
    if not cfg.perfect:
        names.insert(1, cfg.var)
    return names


def _describe(tok):
    if tok[0] == "end":
        return "end of input"
    return "%r" % tok[1]


def parse_element(src: str, cfg: FieldConfig) -> LaurentElem:
    """Parse an expression into an exact element of F[pi, 1/pi]."""
    return _Parser(src, cfg).parse()


def parse_residue(src: str, cfg: FieldConfig) -> ResidueElem:
    """Parse an expression that must lie in F (no pi)."""
    value = parse_element(src, cfg)
    if value.is_zero():
        return cfg.zero
    if set(value.terms) != {0}:
        raise ParseError("expected an element of the residue field (no pi)", 0)
    return value.terms[0]


# --------------------------------------------------------------------------
# rendering


def _sum(parts):
    return " + ".join(parts) if parts else "0"


def render_gf(cfg: FieldConfig, code: int) -> str:
    gf = cfg.gf
    if gf.e == 1:
        return str(code)
    digits = gf._digits(code)
    parts = []
    for k in range(len(digits) - 1, -1, -1):
        c = digits[k]
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mono = "g" if k == 1 else "g^%d" % k
            parts.append(mono if c == 1 else "%d*%s" % (c, mono))
    return _sum(parts)


def _wrap(s):
    return "(%s)" % s if (" " in s) else s


def render_poly(cfg: FieldConfig, poly: tuple) -> str:
    parts = []
    var = cfg.var
    for k in range(len(poly) - 1, -1, -1):
        c = poly[k]
        if not c:
            continue
        cs = render_gf(cfg, c)
        if k == 0:
            parts.append(cs)
            continue
        mono = var if k == 1 else "%s^%d" % (var, k)
        parts.append(mono if cs == "1" else "%s*%s" % (_wrap(cs), mono))
    return _sum(parts)


def render_residue(f: ResidueElem) -> str:
    num = render_poly(f.cfg, f.num)
    if f.is_polynomial():
        return num
    return "%s/%s" % (_wrap(num), _wrap(render_poly(f.cfg, f.den)))


def render_laurent(x: LaurentElem) -> str:
    parts = []
    for k in sorted(x.terms):
        cs = render_residue(x.terms[k])
        if k == 0:
            parts.append(cs)
            continue
        mono = "pi" if k == 1 else "pi^%d" % k
        if cs == "1":
            parts.append(mono)
        else:
            if "/" in cs and " " not in cs:
                cs = "(%s)" % cs
            parts.append("%s*%s" % (_wrap(cs), mono))
    return _sum(parts)


def render(x) -> str:
    if isinstance(x, LaurentElem):
        return render_laurent(x)
    if isinstance(x, ResidueElem):
        return render_residue(x)
    raise TypeError("cannot render %r" % (x,))

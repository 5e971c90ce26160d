"""Recursive-descent parser for scalar and algebra-element expressions.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | NAME ('(' INT (',' INT)* ')')? | '(' expr ')'

The parser is independent of what the atoms mean; callers supply a
``resolve(name, args, pos)`` callback plus a ``lift`` for rational literals.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, resolve, lift):
        self.tokens = tokenize(text)
        self.i = 0
        self.resolve = resolve
        self.lift = lift

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, val, pos = self.take()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r}", pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                value = value * self.unary()
            else:
                return value

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            out = self.lift(Fraction(1))
            for _ in range(exp):
                out = out * base
            return out
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, dpos = self.take()
                if dk != "int":
                    raise ParseError("expected integer denominator", dpos)
                if dv == 0:
                    raise ParseError("zero denominator", dpos)
                return self.lift(Fraction(val, dv))
            return self.lift(Fraction(val))
        if kind == "name":
            args = None
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "(":
                self.take()
                args = [self.signed_int()]
                while True:
                    nk, nv, npos = self.take()
                    if nk == "op" and nv == ",":
                        args.append(self.signed_int())
                    elif nk == "op" and nv == ")":
                        break
                    else:
                        raise ParseError("expected ',' or ')'", npos)
            return self.resolve(val, args, pos)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)

    def signed_int(self):
        sign = 1
        kind, val, pos = self.take()
        if kind == "op" and val == "-":
            sign = -1
            kind, val, pos = self.take()
        if kind != "int":
            raise ParseError("expected integer argument", pos)
        return sign * val


def parse_expression(text: str, resolve, lift):
    return _Parser(text, resolve, lift).parse()


def parse_scalar_expression(text: str, field):
    """Parse scalar syntax such as ``3/2 + 1/2*c`` into ``field``."""

    def resolve(name, args, pos):
        if name == "c" and args is None and not field.is_rational:
            return field.gen
        raise ParseError(f"unknown scalar atom {name!r}", pos)

    return parse_expression(text, resolve, field.scalar)


def parse_element(text: str, algebra):
    """Parse an algebra-element expression (atoms ``a0_1``, ``e``, ``rot(k)``,
    ``ref(k)``, ``perm(...)``, scalar generator ``c``) and return its normal form."""
    group = algebra.group
    labels = {el.label: el.index for el in group.elements}
    gen_re = re.compile(r"a([01])_(\d+)$")

    def resolve(name, args, pos):
        if args is None:
            m = gen_re.match(name)
            if m:
                i = int(m.group(2))
                if not 1 <= i <= algebra.N:
                    raise ParseError(f"generator index out of range in {name!r}", pos)
                return algebra.gen(int(m.group(1)), i - 1)
            if name == "e":
                return algebra.one()
            if name == "c" and not algebra.field.is_rational:
                return algebra.scalar(algebra.field.gen)
            raise ParseError(f"unknown atom {name!r}", pos)
        if name in ("rot", "ref"):
            if len(args) != 1:
                raise ParseError(f"{name} takes one argument", pos)
            k = args[0] % algebra.rs.param if algebra.rs.family == "I2" else None
            label = "e" if name == "rot" and k == 0 else f"{name}({k})"
            if algebra.rs.family != "I2" or label not in labels:
                raise ParseError(f"unknown group element {name}({args[0]})", pos)
            return algebra.group_element(labels[label])
        if name == "perm":
            label = "perm(" + ",".join(str(a) for a in args) + ")"
            if args == list(range(1, len(args) + 1)) and len(args) == algebra.N:
                label = "e"
            if label not in labels:
                raise ParseError(f"unknown group element {label}", pos)
            return algebra.group_element(labels[label])
        raise ParseError(f"unknown atom {name!r}", pos)

    return parse_expression(text, resolve, algebra.scalar)

"""Expression language for scalars and noncommutative elements.

Grammar (whitespace-insensitive, ``*`` is mandatory between factors)::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := ['-'] atom ['^' exponent]
    atom     := generator | integer | 'r' | 's' | '(' expr ')'
    exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'

Products are taken left to right in the order written.  ``x / y`` means
``x * y^-1`` and needs ``y`` invertible.  Rational exponents are allowed on
``r`` and ``s`` only, with denominator 1 or 3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSignature, Element, InvertibilityError
from .scalars import R, S, Scalar, scalar_from_rs


class ParseError(ValueError):
    pass


class UnknownSymbol(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op in "+-*/^()":
            tokens.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} at position {m.start(3)}")
        pos = m.end()
    tokens.append(("end", ""))
    return tokens


# ----------------------------------------------------------------------- AST


@dataclass(frozen=True)
class Num:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Sym:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg:
    arg: "Expr"

    def __str__(self) -> str:
        return f"-{_wrap(self.arg, 3)}"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: Fraction

    def __str__(self) -> str:
        e = self.exp
        exp = str(e.numerator) if e.denominator == 1 else f"({e})"
        return f"{_wrap(self.base, 4)}^{exp}"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        prec = _PREC[self.op]
        # left-associative: the right operand needs parentheses at equal precedence
        return f"{_wrap(self.left, prec)} {self.op} {_wrap(self.right, prec + 1)}" if prec == 1 else (
            f"{_wrap(self.left, prec)}{self.op}{_wrap(self.right, prec + 1)}"
        )


Expr = Num | Sym | Neg | Pow | BinOp
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _level(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _wrap(e: Expr, need: int) -> str:
    s = str(e)
    return f"({s})" if _level(e) < need else s


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, val: str | None = None) -> str:
        k, v = self.take()
        if k != kind or (val is not None and v != val):
            raise ParseError(f"expected {val or kind}, found {v or 'end of input'!r}")
        return v

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                node = BinOp(tok[1], node, self.factor())
            elif tok[0] in ("name", "num") or tok == ("op", "("):
                raise ParseError(f"missing '*' before {tok[1]!r}")
            else:
                return node

    def factor(self) -> Expr:
        neg = False
        if self.peek() == ("op", "-"):
            self.take()
            neg = True
        node = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            node = Pow(node, self.exponent())
        return Neg(node) if neg else node

    def atom(self) -> Expr:
        k, v = self.take()
        if k == "num":
            return Num(int(v))
        if k == "name":
            return Sym(v)
        if (k, v) == ("op", "("):
            node = self.expr()
            self.expect("op", ")")
            return node
        raise ParseError(f"unexpected {v or 'end of input'!r}")

    def _signed_int(self) -> int:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        k, v = self.take()
        if k != "num":
            raise ParseError(f"malformed exponent near {v or 'end of input'!r}")
        return sign * int(v)

    def exponent(self) -> Fraction:
        if self.peek() == ("op", "("):
            self.take()
            num = self._signed_int()
            den = 1
            if self.peek() == ("op", "/"):
                self.take()
                k, v = self.take()
                if k != "num" or int(v) == 0:
                    raise ParseError("malformed rational exponent")
                den = int(v)
            self.expect("op", ")")
            return Fraction(num, den)
        return Fraction(self._signed_int())


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    if p.peek()[0] != "end":
        raise ParseError(f"unexpected {p.peek()[1]!r} after expression")
    return node


def evaluate(node: Expr, sig: AlgebraSignature) -> Element:
    if isinstance(node, Num):
        return sig.scalar(node.value)
    if isinstance(node, Sym):
        if node.name == "r":
            return sig.scalar(R)
        if node.name == "s":
            return sig.scalar(S)
        if node.name not in sig.index:
            raise UnknownSymbol(f"unknown symbol {node.name!r} in {sig.name}")
        return sig.gen(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.arg, sig)
    if isinstance(node, Pow):
        e = node.exp
        if e.denominator != 1:
            if not (isinstance(node.base, Sym) and node.base.name in ("r", "s")):
                raise ParseError("rational exponents are only allowed on r and s")
            if e.denominator != 3:
                raise ParseError(f"malformed rational exponent {e}: denominator must be 1 or 3")
            return sig.scalar(scalar_from_rs(e, 0) if node.base.name == "r" else scalar_from_rs(0, e))
        base = evaluate(node.base, sig)
        if e < 0 and base.is_zero():
            raise ParseError("negative power of zero")
        return base ** int(e)
    if isinstance(node, BinOp):
        a, b = evaluate(node.left, sig), evaluate(node.right, sig)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b.is_zero():
            raise ParseError("division by zero")
        return a * b.inverse()
    raise TypeError(node)


def parse(text: str, sig: AlgebraSignature) -> Element:
    """Parse ``text`` into its normal form in ``sig``."""
    return evaluate(parse_expr(text), sig)


def parse_scalar(text: str) -> Scalar:
    """Parse an expression that must denote a scalar (no generators)."""
    from .algebra import preset

    x = parse(text, preset("Uplus"))
    if not x.is_scalar():
        raise ParseError(f"{text!r} is not a scalar")
    return x.constant_term()


# ----------------------------------------------------------------- rendering


def render_monomial(sig: AlgebraSignature, mono) -> str:
    parts = []
    for g, e in zip(sig.generators, mono):
        if e == 1:
            parts.append(g.symbol)
        elif e:
            parts.append(f"{g.symbol}^{e}")
    return "*".join(parts)


def _coeff_text(c: Scalar, alone: bool) -> str:
    text = c.to_text()
    if c.den.is_one() and not c.num.is_term() and not alone:
        return f"({text})"
    return text


def render(x: Element) -> str:
    """Deterministic text in decreasing monomial order; ``parse(render(x)) == x``."""
    if x.is_zero():
        return "0"
    single = len(x.terms) == 1
    out = []
    for mono, c in x.sorted_terms():
        neg, mag = c.signed_parts()
        m = render_monomial(x.sig, mono)
        if not m:
            body = _coeff_text(mag, single)
        elif mag.is_one():
            body = m
        else:
            body = f"{_coeff_text(mag, False)}*{m}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


__all__ = [
    "ParseError",
    "UnknownSymbol",
    "InvertibilityError",
    "parse",
    "parse_expr",
    "parse_scalar",
    "evaluate",
    "render",
    "render_monomial",
    "tokenize",
]

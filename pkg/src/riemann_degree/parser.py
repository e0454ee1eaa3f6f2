"""Expression language for polynomials in z and conj(z).

Grammar (whitespace is ignored between tokens)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?            # right-associative
    atom    := NUMBER | 'i' | 'z' | 'zbar' | 'conj' '(' expr ')' | '(' expr ')'
    NUMBER  := decimal literal, optionally written as a rational 'p/q'

Exponents must fold to nonnegative integer constants.  There is no division
operator and no implicit multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .bipoly import BiPoly, GaussianRational
from .errors import ExprSyntaxError, NegativeExponent, NonIntegerExponent


@dataclass(frozen=True)
class Const:
    value: Fraction | complex  # Fraction for real literals, complex(0, 1) for i
    offset: int = 0


@dataclass(frozen=True)
class Var:
    offset: int = 0


@dataclass(frozen=True)
class Conj:
    arg: "Expr"
    offset: int = 0


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    offset: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-' or '*'
    left: "Expr"
    right: "Expr"
    offset: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    offset: int = 0


Expr = Union[Const, Var, Conj, Neg, BinOp, Pow]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)

_NAMES = frozenset({"z", "zbar", "i", "conj"})
_ATOM_START = frozenset({"NUMBER", "z", "zbar", "i", "conj", "(", "-"})


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _byte_offset(src: str, idx: int) -> int:
    return len(src[:idx].encode("utf-8"))


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}",
                                  _byte_offset(src, pos), _ATOM_START)
        kind = m.lastgroup
        text = m.group()
        if kind == "num":
            toks.append(_Tok("NUMBER", text, _byte_offset(src, pos)))
        elif kind == "name":
            if text not in _NAMES:
                raise ExprSyntaxError(f"unknown identifier {text!r}",
                                      _byte_offset(src, pos), _NAMES)
            toks.append(_Tok(text, text, _byte_offset(src, pos)))
        elif kind == "op":
            toks.append(_Tok(text, text, _byte_offset(src, pos)))
        pos = m.end()
    toks.append(_Tok("EOF", "", _byte_offset(src, len(src))))
    return toks


def _number(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        if Fraction(den) == 0:
            raise ZeroDivisionError
        return Fraction(num) / Fraction(den)
    return Fraction(text)


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.fail({kind})
        return self.advance()

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {found}", t.offset, frozenset(expected))

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "EOF":
            self.fail({"+", "-", "*", "^", "end of input"})
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance()
            left = BinOp(op.kind, left, self.term(), op.offset)
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.tok.kind == "*":
            op = self.advance()
            left = BinOp("*", left, self.unary(), op.offset)
        return left

    def unary(self) -> Expr:
        if self.tok.kind == "-":
            op = self.advance()
            return Neg(self.unary(), op.offset)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.kind != "^":
            return base
        op = self.advance()
        exp_offset = self.tok.offset
        exponent = self.unary()
        return Pow(base, _fold_exponent(exponent, exp_offset), op.offset)

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "NUMBER":
            self.advance()
            try:
                return Const(_number(t.text), t.offset)
            except ZeroDivisionError:
                raise ExprSyntaxError("rational literal with zero denominator", t.offset) from None
        if t.kind == "z":
            self.advance()
            return Var(t.offset)
        if t.kind == "zbar":
            self.advance()
            return Conj(Var(t.offset), t.offset)
        if t.kind == "i":
            self.advance()
            return Const(complex(0, 1), t.offset)
        if t.kind == "conj":
            self.advance()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Conj(inner, t.offset)
        if t.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.fail(_ATOM_START)


def _fold_exponent(e: Expr, offset: int) -> int:
    value = _constant_value(e, offset)
    if isinstance(value, complex):
        raise NonIntegerExponent("exponent must be a real integer", offset)
    if value.denominator != 1:
        raise NonIntegerExponent(f"exponent {value} is not an integer", offset)
    if value < 0:
        raise NegativeExponent(f"negative exponent {value}", offset)
    return int(value)


def _constant_value(e: Expr, offset: int):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Neg):
        return -_constant_value(e.arg, offset)
    if isinstance(e, Pow):
        return _constant_value(e.base, offset) ** e.exponent
    if isinstance(e, BinOp):
        a, b = _constant_value(e.left, offset), _constant_value(e.right, offset)
        return a + b if e.op == "+" else a - b if e.op == "-" else a * b
    raise NonIntegerExponent("exponent must be an integer literal", offset)


def parse(src: str) -> Expr:
    """Parse ``src`` into an expression tree."""
    return _Parser(src).parse()


def lower(ast: Expr, exact: bool = False) -> BiPoly:
    """Expand an expression tree into a :class:`BiPoly`.

    With ``exact=True`` coefficients are :class:`GaussianRational`; otherwise
    they are floating complex numbers.
    """
    if isinstance(ast, Const):
        if exact:
            c = GaussianRational(0, 1) if isinstance(ast.value, complex) else GaussianRational(ast.value)
        else:
            c = complex(ast.value) if isinstance(ast.value, complex) else complex(float(ast.value))
        return BiPoly.const(c)
    if isinstance(ast, Var):
        return BiPoly.monomial(1, 0, GaussianRational(1) if exact else complex(1))
    if isinstance(ast, Conj):
        return lower(ast.arg, exact).conj()
    if isinstance(ast, Neg):
        return -lower(ast.arg, exact)
    if isinstance(ast, Pow):
        return lower(ast.base, exact) ** ast.exponent
    if isinstance(ast, BinOp):
        a, b = lower(ast.left, exact), lower(ast.right, exact)
        if ast.op == "+":
            return a + b
        if ast.op == "-":
            return a - b
        return a * b
    raise TypeError(f"not an expression node: {ast!r}")


def interpret(ast: Expr, w: complex) -> complex:
    """Evaluate the tree directly at ``w`` without expanding it."""
    if isinstance(ast, Const):
        return complex(ast.value) if isinstance(ast.value, complex) else complex(float(ast.value))
    if isinstance(ast, Var):
        return complex(w)
    if isinstance(ast, Conj):
        return interpret(ast.arg, w).conjugate()
    if isinstance(ast, Neg):
        return -interpret(ast.arg, w)
    if isinstance(ast, Pow):
        return interpret(ast.base, w) ** ast.exponent
    a, b = interpret(ast.left, w), interpret(ast.right, w)
    return a + b if ast.op == "+" else a - b if ast.op == "-" else a * b


def parse_bipoly(src: str, exact: bool = False) -> BiPoly:
    return lower(parse(src), exact=exact)

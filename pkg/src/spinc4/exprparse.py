"""Recursive-descent parser for polynomial expressions in z, zb, s, t.

The grammar accepts complex literals (3, 2.5i, and sums like 1+2i), the
variables z, zb, s, t, the operators + - * ^ with nonnegative integer
exponents, unary minus, and parentheses.  zb is the formal conjugate of z;
all four variables are treated as independent for differentiation, so d/dz
and d/dzb are Wirtinger derivatives of the parsed polynomial.

Syntax errors carry the offending position in the source string.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Expr", "ExpressionError", "parse_expression", "VARIABLES"]

VARIABLES = ("z", "zb", "s", "t")


class ExpressionError(ValueError):
    """Parse or evaluation error, with the source position when known."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

class Expr:
    def evaluate(self, env: dict[str, complex]) -> complex:
        raise NotImplementedError

    def derivative(self, var: str) -> "Expr":
        raise NotImplementedError

    def variables(self) -> set[str]:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    value: complex

    def evaluate(self, env):
        return self.value

    def derivative(self, var):
        return Const(0.0)

    def variables(self):
        return set()


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def evaluate(self, env):
        return env[self.name]

    def derivative(self, var):
        return Const(1.0 if var == self.name else 0.0)

    def variables(self):
        return {self.name}


def _is_zero(e: Expr) -> bool:
    return isinstance(e, Const) and e.value == 0


def _is_one(e: Expr) -> bool:
    return isinstance(e, Const) and e.value == 1


def _add(a: Expr, b: Expr) -> Expr:
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return Add(a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_zero(a) or _is_zero(b):
        return Const(0.0)
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return Mul(a, b)


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def evaluate(self, env):
        return self.left.evaluate(env) + self.right.evaluate(env)

    def derivative(self, var):
        return _add(self.left.derivative(var), self.right.derivative(var))

    def variables(self):
        return self.left.variables() | self.right.variables()


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def evaluate(self, env):
        return -self.arg.evaluate(env)

    def derivative(self, var):
        d = self.arg.derivative(var)
        return Const(0.0) if _is_zero(d) else Neg(d)

    def variables(self):
        return self.arg.variables()


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def evaluate(self, env):
        return self.left.evaluate(env) * self.right.evaluate(env)

    def derivative(self, var):
        return _add(_mul(self.left.derivative(var), self.right),
                    _mul(self.left, self.right.derivative(var)))

    def variables(self):
        return self.left.variables() | self.right.variables()


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def evaluate(self, env):
        return self.base.evaluate(env) ** self.exponent

    def derivative(self, var):
        if self.exponent == 0:
            return Const(0.0)
        inner = self.base.derivative(var)
        if self.exponent == 1:
            return inner
        outer = _mul(Const(self.exponent), Pow(self.base, self.exponent - 1))
        return _mul(outer, inner)

    def variables(self):
        return self.base.variables()


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # num, imag, ident, op, end
    text: str
    value: complex
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append(_Token("op", ch, 0.0, i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < n and (src[j].isdigit() or src[j] == "."):
                j += 1
            if j < n and src[j] in "eE" and j + 1 < n and (
                    src[j + 1].isdigit() or src[j + 1] in "+-"):
                j += 2
                while j < n and src[j].isdigit():
                    j += 1
            text = src[i:j]
            try:
                value = float(text)
            except ValueError:
                raise ExpressionError(f"bad number literal {text!r}", i)
            if j < n and src[j] == "i" and (j + 1 >= n or not src[j + 1].isalnum()):
                tokens.append(_Token("imag", text + "i", value * 1j, i))
                j += 1
            else:
                tokens.append(_Token("num", text, value, i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(_Token("ident", src[i:j], 0.0, i))
            i = j
            continue
        raise ExpressionError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", 0.0, n))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[_Token], allowed: tuple[str, ...]):
        self.tokens = tokens
        self.k = 0
        self.allowed = allowed

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def next(self) -> _Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, text: str) -> None:
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            raise ExpressionError(f"expected {text!r}, found {tok.text!r}", tok.pos)

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExpressionError(f"unexpected trailing {tok.text!r}", tok.pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.next()
                rhs = self.term()
                e = Add(e, rhs) if tok.text == "+" else Add(e, Neg(rhs))
            else:
                return e

    def term(self) -> Expr:
        e = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.next()
                e = Mul(e, self.unary())
            else:
                return e

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.next()
            etok = self.next()
            if etok.kind != "num":
                raise ExpressionError("exponent must be an integer literal", etok.pos)
            if etok.value.real != int(etok.value.real):
                raise ExpressionError(f"non-integer exponent {etok.text!r}", etok.pos)
            exponent = int(etok.value.real)
            if exponent < 0:
                raise ExpressionError("negative exponents are not polynomial", etok.pos)
            return Pow(base, exponent)
        return base

    def atom(self) -> Expr:
        tok = self.next()
        if tok.kind in ("num", "imag"):
            return Const(tok.value)
        if tok.kind == "ident":
            if tok.text == "i":
                return Const(1j)
            if tok.text in self.allowed:
                return Var(tok.text)
            if tok.text in VARIABLES:
                raise ExpressionError(
                    f"variable {tok.text!r} is not available in this domain", tok.pos)
            raise ExpressionError(f"unknown variable {tok.text!r}", tok.pos)
        if tok.kind == "op" and tok.text == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ExpressionError(f"unexpected token {tok.text!r}", tok.pos)


def parse_expression(src: str, allowed: tuple[str, ...] = VARIABLES) -> Expr:
    """Parse a polynomial expression over the given variable set."""
    return _Parser(_tokenize(src), allowed).parse()

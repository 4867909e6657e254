"""Closed-form signal expressions in the single variable ``t``.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := '-' term | factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' integer)?
    base   := number | 't' | '(' expr ')' | func '(' expr ')'
    func   := exp | ln | sin | cos | sqrt

A leading minus applies to the whole multiplicative chain that follows it,
so ``-t^2/2`` reads as ``-(t^2/2)``.  Exponents are integers (optionally
signed or parenthesised); real powers are written ``exp(p*ln(x))``.

Expressions are immutable trees of frozen dataclasses.  :func:`evaluate`
accepts a float or a NumPy array for ``t``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DomainError, ParseError

Number = Union[float, np.ndarray]


class Expression:
    """Base class of all expression nodes."""

    __slots__ = ()

    def __call__(self, t: Number) -> Number:
        return evaluate(self, t)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Const(Expression):
    value: float


@dataclass(frozen=True)
class Var(Expression):
    pass


@dataclass(frozen=True)
class Neg(Expression):
    arg: Expression


@dataclass(frozen=True)
class Add(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Sub(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Mul(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Div(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class IntPow(Expression):
    base: Expression
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool):
            raise TypeError("IntPow exponent must be an int")


@dataclass(frozen=True)
class Exp(Expression):
    arg: Expression


@dataclass(frozen=True)
class Ln(Expression):
    arg: Expression


@dataclass(frozen=True)
class Sin(Expression):
    arg: Expression


@dataclass(frozen=True)
class Cos(Expression):
    arg: Expression


@dataclass(frozen=True)
class Sqrt(Expression):
    arg: Expression


FUNCTIONS: dict[str, type] = {
    "exp": Exp,
    "ln": Ln,
    "sin": Sin,
    "cos": Cos,
    "sqrt": Sqrt,
}
_FUNC_NAMES = {cls: name for name, cls in FUNCTIONS.items()}
_BINARY_SYMBOLS = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


# --------------------------------------------------------------------------
# Tokenizer and recursive-descent parser
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str):
        kind, value, pos = self.peek()
        if kind == "eof":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"{message}, got {value!r}", pos)

    def expect_op(self, symbol: str):
        kind, value, _ = self.peek()
        if kind != "op" or value != symbol:
            self.error(f"expected {symbol!r}")
        self.advance()

    def is_op(self, *symbols: str) -> bool:
        kind, value, _ = self.peek()
        return kind == "op" and value in symbols

    def parse(self) -> Expression:
        node = self.expr()
        if self.peek()[0] != "eof":
            self.error("unexpected token")
        return node

    def expr(self) -> Expression:
        node = self.term()
        while self.is_op("+", "-"):
            op = self.advance()[1]
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expression:
        if self.is_op("-"):
            self.advance()
            return Neg(self.term())
        node = self.factor()
        while self.is_op("*", "/"):
            op = self.advance()[1]
            right = self.factor()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def factor(self) -> Expression:
        if self.is_op("-"):
            self.advance()
            return Neg(self.factor())
        node = self.base()
        if self.is_op("^"):
            self.advance()
            node = IntPow(node, self.integer())
        return node

    def integer(self) -> int:
        if self.is_op("("):
            self.advance()
            value = self.integer()
            self.expect_op(")")
            return value
        sign = 1
        if self.is_op("-", "+"):
            sign = -1 if self.advance()[1] == "-" else 1
        kind, value, _ = self.peek()
        if kind != "number" or not value.isdigit():
            self.error("integer exponent expected")
        self.advance()
        return sign * int(value)

    def base(self) -> Expression:
        kind, value, pos = self.peek()
        if kind == "number":
            self.advance()
            return Const(float(value))
        if kind == "name":
            self.advance()
            if value == "t":
                return Var()
            if value not in FUNCTIONS:
                if self.is_op("("):
                    raise ParseError(f"unknown function {value!r}", pos)
                raise ParseError(f"unknown identifier {value!r}", pos)
            self.expect_op("(")
            arg = self.expr()
            self.expect_op(")")
            return FUNCTIONS[value](arg)
        if self.is_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        self.error("expected a number, 't', '(' or a function")


def parse(text: str) -> Expression:
    """Parse ``text`` into an :class:`Expression`.

    Raises :class:`~taylorbiorth.errors.ParseError` (carrying ``position``)
    on malformed input or an unknown function name.
    """
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------

def _check(cond_bad, message: str):
    if np.any(cond_bad):
        raise DomainError(message)


def evaluate(e: Expression, t: Number) -> Number:
    """Value of ``e`` at ``t`` (float or array) with IEEE semantics.

    Raises DomainError for ``ln`` of a non-positive argument, ``sqrt`` of a
    negative one and division by zero.
    """
    if isinstance(t, np.ndarray):
        with np.errstate(over="ignore", under="ignore"):
            return _eval_array(e, t)
    return float(_eval_scalar(e, float(t)))


def _eval_scalar(e: Expression, t: float) -> float:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return t
    if isinstance(e, Neg):
        return -_eval_scalar(e.arg, t)
    if isinstance(e, Add):
        return _eval_scalar(e.left, t) + _eval_scalar(e.right, t)
    if isinstance(e, Sub):
        return _eval_scalar(e.left, t) - _eval_scalar(e.right, t)
    if isinstance(e, Mul):
        return _eval_scalar(e.left, t) * _eval_scalar(e.right, t)
    if isinstance(e, Div):
        den = _eval_scalar(e.right, t)
        if den == 0.0:
            raise DomainError(f"division by zero at t={t!r}")
        return _eval_scalar(e.left, t) / den
    if isinstance(e, IntPow):
        base = _eval_scalar(e.base, t)
        if base == 0.0 and e.exponent < 0:
            raise DomainError(f"division by zero at t={t!r}")
        try:
            return base ** e.exponent
        except OverflowError:
            return math.copysign(math.inf, base) if e.exponent % 2 else math.inf
    arg = _eval_scalar(e.arg, t)
    if isinstance(e, Exp):
        try:
            return math.exp(arg)
        except OverflowError:
            return math.inf
    if isinstance(e, Ln):
        if not arg > 0.0:
            raise DomainError(f"ln of non-positive argument {arg!r} at t={t!r}")
        return math.log(arg)
    if isinstance(e, Sin):
        return math.sin(arg)
    if isinstance(e, Cos):
        return math.cos(arg)
    if isinstance(e, Sqrt):
        if arg < 0.0:
            raise DomainError(f"sqrt of negative argument {arg!r} at t={t!r}")
        return math.sqrt(arg)
    raise TypeError(f"not an expression node: {e!r}")


def _eval_array(e: Expression, t: np.ndarray) -> np.ndarray:
    if isinstance(e, Const):
        return np.full(t.shape, e.value)
    if isinstance(e, Var):
        return np.asarray(t, dtype=float)
    if isinstance(e, Neg):
        return -_eval_array(e.arg, t)
    if isinstance(e, Add):
        return _eval_array(e.left, t) + _eval_array(e.right, t)
    if isinstance(e, Sub):
        return _eval_array(e.left, t) - _eval_array(e.right, t)
    if isinstance(e, Mul):
        return _eval_array(e.left, t) * _eval_array(e.right, t)
    if isinstance(e, Div):
        den = _eval_array(e.right, t)
        _check(den == 0.0, "division by zero")
        return _eval_array(e.left, t) / den
    if isinstance(e, IntPow):
        base = _eval_array(e.base, t)
        if e.exponent < 0:
            _check(base == 0.0, "division by zero")
        mag = np.abs(base) ** abs(e.exponent)
        if e.exponent % 2:
            mag = np.where(base < 0, -mag, mag)
        return 1.0 / mag if e.exponent < 0 else mag
    arg = _eval_array(e.arg, t)
    if isinstance(e, Exp):
        return np.exp(arg)
    if isinstance(e, Ln):
        _check(~(arg > 0.0), "ln of non-positive argument")
        return np.log(arg)
    if isinstance(e, Sin):
        return np.sin(arg)
    if isinstance(e, Cos):
        return np.cos(arg)
    if isinstance(e, Sqrt):
        _check(arg < 0.0, "sqrt of negative argument")
        return np.sqrt(arg)
    raise TypeError(f"not an expression node: {e!r}")


def as_function(e: Expression) -> Callable[[Number], Number]:
    return lambda t: evaluate(e, t)


# --------------------------------------------------------------------------
# Tree utilities
# --------------------------------------------------------------------------

def substitute(e: Expression, replacement: Expression) -> Expression:
    """Return ``e`` with every occurrence of ``t`` replaced by ``replacement``."""
    if isinstance(e, Var):
        return replacement
    if isinstance(e, Const):
        return e
    if isinstance(e, IntPow):
        return IntPow(substitute(e.base, replacement), e.exponent)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(substitute(e.left, replacement), substitute(e.right, replacement))
    return type(e)(substitute(e.arg, replacement))


def reflect(e: Expression) -> Expression:
    """The expression of ``f(-t)``."""
    return substitute(e, Neg(Var()))


def to_text(e: Expression) -> str:
    """Render ``e`` in the input grammar; ``parse(to_text(e)) == e`` for parsed trees."""
    if isinstance(e, Const):
        text = repr(float(e.value))
        return f"({text})" if e.value < 0 else text
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Neg):
        return f"-{_wrap(e.arg)}"
    if isinstance(e, IntPow):
        return f"{_wrap(e.base)}^{e.exponent}"
    if isinstance(e, (Add, Sub, Mul, Div)):
        sym = _BINARY_SYMBOLS[type(e)]
        left = to_text(e.left) if isinstance(e, (Add, Sub)) else _wrap_mul(e.left)
        return f"{left} {sym} {_wrap(e.right)}"
    return f"{_FUNC_NAMES[type(e)]}({to_text(e.arg)})"


def _wrap(e: Expression) -> str:
    if isinstance(e, (Var, Exp, Ln, Sin, Cos, Sqrt)) or (
        isinstance(e, Const) and e.value >= 0
    ):
        return to_text(e)
    return f"({to_text(e)})"


def _wrap_mul(e: Expression) -> str:
    # left operand of * or / may itself be a product without parentheses
    if isinstance(e, (Mul, Div, IntPow)):
        return to_text(e) if isinstance(e, (Mul, Div)) else _wrap(e)
    return _wrap(e)

"""Truncated Taylor series ("jets") and Taylor-mode differentiation.

A :class:`Jet` of order ``N`` at base point ``b`` holds the normalized
coefficients ``f^(k)(b) / k!`` for ``k = 0..N``.  Normalized storage keeps
coefficients representable far beyond the point where ``k!`` overflows and
makes Horner evaluation direct.

:func:`lift` pushes an :class:`~taylorbiorth.expr.Expression` through jet
arithmetic, so every derivative is exact up to floating-point rounding; no
finite differences are ever taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import expr as ex
from .errors import DomainError, ValidationError

if TYPE_CHECKING:  # pragma: no cover
    from .biorth import DistributionalSeries

#: Default ceiling on the order accepted by :func:`lift`.
MAX_ORDER = 64

#: Denominator constant terms smaller than this are treated as a pole.
DIVISION_FLOOR = 1e-300


class JetDivisionError(DomainError):
    """Division by a jet whose constant term (numerically) vanishes."""


@dataclass(frozen=True, eq=False)
class Jet:
    """Normalized Taylor coefficients of a function at ``base``."""

    base: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("jet coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise DomainError("jet coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "base", float(self.base))

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __repr__(self) -> str:
        return f"Jet(base={self.base!r}, coeffs={self.coeffs.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.base == other.base and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    # arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.base != self.base or other.order != self.order:
                raise ValueError("jets must share base point and order")
            return other
        return constant(float(other), self.base, self.order)

    def __add__(self, other):
        return Jet(self.base, self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.base, self.coeffs - self._coerce(other).coeffs)

    def __rsub__(self, other):
        return Jet(self.base, self._coerce(other).coeffs - self.coeffs)

    def __neg__(self):
        return Jet(self.base, -self.coeffs)

    def __mul__(self, other):
        return jet_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return jet_div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return jet_div(self._coerce(other), self)

    def __pow__(self, n: int):
        return jet_intpow(self, n)


def constant(value: float, base: float, order: int) -> Jet:
    c = np.zeros(order + 1)
    c[0] = value
    return Jet(base, c)


def variable(base: float, order: int) -> Jet:
    c = np.zeros(order + 1)
    c[0] = base
    if order >= 1:
        c[1] = 1.0
    return Jet(base, c)


# --------------------------------------------------------------------------
# Primitive recurrences.  All operate on normalized coefficients.
# --------------------------------------------------------------------------

def jet_mul(a: Jet, b: Jet) -> Jet:
    """Cauchy product truncated at the common order."""
    n = a.order + 1
    return Jet(a.base, np.convolve(a.coeffs, b.coeffs)[:n])


def jet_div(a: Jet, b: Jet) -> Jet:
    """``a / b`` by forward substitution on ``b * c = a``."""
    bc = b.coeffs
    if abs(bc[0]) < DIVISION_FLOOR:
        raise JetDivisionError(
            f"division by a jet with vanishing constant term at t={b.base!r}"
        )
    n = a.order + 1
    c = np.zeros(n)
    ac = a.coeffs
    for k in range(n):
        # sum_{j=1..k} b_j c_{k-j}
        s = np.dot(bc[1:k + 1], c[k - 1::-1]) if k else 0.0
        c[k] = (ac[k] - s) / bc[0]
    return Jet(a.base, c)


def jet_intpow(a: Jet, n: int) -> Jet:
    if n < 0:
        return jet_div(constant(1.0, a.base, a.order), jet_intpow(a, -n))
    result = constant(1.0, a.base, a.order)
    square = a
    while n:
        if n & 1:
            result = jet_mul(result, square)
        n >>= 1
        if n:
            square = jet_mul(square, square)
    return result


def _weighted(f: np.ndarray) -> np.ndarray:
    # j * f_j, the normalized coefficients of t * f'(t)
    return np.arange(f.size) * f


def jet_exp(a: Jet) -> Jet:
    """``g = exp(f)``: ``k g_k = sum_{j=1..k} j f_j g_{k-j}``."""
    f = a.coeffs
    jf = _weighted(f)
    g = np.zeros(f.size)
    try:
        g[0] = math.exp(f[0])
    except OverflowError:
        raise DomainError(f"exp overflow at t={a.base!r}") from None
    for k in range(1, f.size):
        g[k] = np.dot(jf[1:k + 1], g[k - 1::-1]) / k
    return Jet(a.base, g)


def jet_ln(a: Jet) -> Jet:
    """``g = ln(f)``: ``f_0 k g_k = k f_k - sum_{j=1..k-1} j g_j f_{k-j}``."""
    f = a.coeffs
    if not f[0] > 0.0:
        raise DomainError(f"ln of non-positive value {f[0]!r} at t={a.base!r}")
    g = np.zeros(f.size)
    g[0] = math.log(f[0])
    jg = np.zeros(f.size)
    for k in range(1, f.size):
        s = np.dot(jg[1:k], f[k - 1:0:-1]) if k > 1 else 0.0
        g[k] = (k * f[k] - s) / (k * f[0])
        jg[k] = k * g[k]
    return Jet(a.base, g)


def jet_sincos(a: Jet) -> tuple[Jet, Jet]:
    """Coupled recurrences for ``sin(f)`` and ``cos(f)``."""
    f = a.coeffs
    jf = _weighted(f)
    s = np.zeros(f.size)
    c = np.zeros(f.size)
    s[0] = math.sin(f[0])
    c[0] = math.cos(f[0])
    for k in range(1, f.size):
        s[k] = np.dot(jf[1:k + 1], c[k - 1::-1]) / k
        c[k] = -np.dot(jf[1:k + 1], s[k - 1::-1]) / k
    return Jet(a.base, s), Jet(a.base, c)


def jet_sqrt(a: Jet) -> Jet:
    """``g = sqrt(f)``: ``2 g_0 g_k = f_k - sum_{j=1..k-1} g_j g_{k-j}``."""
    f = a.coeffs
    if not f[0] > 0.0:
        # sqrt is not differentiable at 0
        raise DomainError(f"sqrt of non-positive value {f[0]!r} at t={a.base!r}")
    g = np.zeros(f.size)
    g[0] = math.sqrt(f[0])
    for k in range(1, f.size):
        s = np.dot(g[1:k], g[k - 1:0:-1]) if k > 1 else 0.0
        g[k] = (f[k] - s) / (2.0 * g[0])
    return Jet(a.base, g)


# --------------------------------------------------------------------------
# Public operations
# --------------------------------------------------------------------------

def lift(e: ex.Expression, b: float, order: int, *, max_order: int | None = None) -> Jet:
    """Jet of order ``order`` of the expression ``e`` at base point ``b``.

    Parameters
    ----------
    e : Expression
        Signal definition; must be C-infinity near ``b``.
    b : float
        Expansion point.
    order : int
        Highest derivative kept.
    max_order : int, optional
        Ceiling on ``order``; defaults to :data:`MAX_ORDER`.

    Raises
    ------
    DomainError
        If ``b`` lies outside the domain of ``e`` (``ln(1-t)`` at ``b >= 1``)
        or a denominator vanishes there (:class:`JetDivisionError`).
    """
    limit = MAX_ORDER if max_order is None else max_order
    if order < 0:
        raise ValidationError(f"order must be >= 0, got {order}")
    if order > limit:
        raise ValidationError(f"order {order} exceeds max_order {limit}")
    if not math.isfinite(b):
        raise ValidationError(f"base point must be finite, got {b!r}")
    return _lift(e, float(b), order)


def _lift(e: ex.Expression, b: float, n: int) -> Jet:
    if isinstance(e, ex.Const):
        return constant(e.value, b, n)
    if isinstance(e, ex.Var):
        return variable(b, n)
    if isinstance(e, ex.Neg):
        return -_lift(e.arg, b, n)
    if isinstance(e, ex.Add):
        return _lift(e.left, b, n) + _lift(e.right, b, n)
    if isinstance(e, ex.Sub):
        return _lift(e.left, b, n) - _lift(e.right, b, n)
    if isinstance(e, ex.Mul):
        return jet_mul(_lift(e.left, b, n), _lift(e.right, b, n))
    if isinstance(e, ex.Div):
        return jet_div(_lift(e.left, b, n), _lift(e.right, b, n))
    if isinstance(e, ex.IntPow):
        return jet_intpow(_lift(e.base, b, n), e.exponent)
    inner = _lift(e.arg, b, n)
    if isinstance(e, ex.Exp):
        return jet_exp(inner)
    if isinstance(e, ex.Ln):
        return jet_ln(inner)
    if isinstance(e, ex.Sin):
        return jet_sincos(inner)[0]
    if isinstance(e, ex.Cos):
        return jet_sincos(inner)[1]
    if isinstance(e, ex.Sqrt):
        return jet_sqrt(inner)
    raise TypeError(f"not an expression node: {e!r}")


def derivative(j: Jet, n: int) -> float:
    """``f^(n)(b) = n! * coeffs[n]``, computed in log space when ``n!`` is large."""
    if not 0 <= n <= j.order:
        raise ValidationError(f"derivative order {n} outside 0..{j.order}")
    c = float(j.coeffs[n])
    if n <= 170:
        return float(math.factorial(n)) * c
    if c == 0.0:
        return 0.0
    return math.copysign(math.exp(math.lgamma(n + 1) + math.log(abs(c))), c)


def derivatives(j: Jet) -> list[float]:
    return [derivative(j, n) for n in range(j.order + 1)]


def truncated_taylor_eval(j: Jet, t: float) -> float:
    """Horner evaluation of ``sum_k coeffs[k] (t - b)^k``."""
    x = t - j.base
    acc = 0.0
    for c in j.coeffs[::-1]:
        acc = acc * x + c
    return float(acc)


def taylor_kernel(N: int, t: float) -> "DistributionalSeries":
    """The truncated Taylor kernel as a distribution centred at 0.

    Its weight on ``(-1)^n delta^(n)`` is ``t^n / n!``, so that the action
    on ``g`` is ``sum_{n<=N} g^(n)(0) t^n / n!``.
    """
    from .biorth import DistributionalSeries

    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    # (-t)^n/n! * delta^(n) == (t^n/n!) * (-1)^n delta^(n)
    coeffs = [power_over_factorial(t, n) for n in range(N + 1)]
    return DistributionalSeries(0.0, coeffs)


def power_over_factorial(t: float, n: int) -> float:
    if n <= 20:
        return t ** n / math.factorial(n)
    if t == 0.0:
        return 0.0
    mag = math.exp(n * math.log(abs(t)) - math.lgamma(n + 1))
    return -mag if (t < 0 and n % 2) else mag


def coefficients_close(a: Sequence[float], b: Sequence[float], rtol: float, atol: float = 0.0) -> bool:
    return bool(np.allclose(np.asarray(a), np.asarray(b), rtol=rtol, atol=atol))

"""Double-exponential quadrature on finite, semi-infinite and infinite intervals.

Three variable transforms of the trapezoidal rule are used:

* finite ``(lo, hi)``: tanh-sinh, ``x = c + r tanh(pi/2 sinh u)``;
* ``(lo, inf)`` or ``(-inf, hi)``: exp-sinh, ``x = lo + exp(pi/2 sinh u)``;
* ``(-inf, inf)``: sinh-sinh, ``x = sinh(pi/2 sinh u)``.

The step in ``u`` is halved level by level, reusing every previous node,
until two successive levels agree to ``tol * max(1, |I|)``.  Nodes never
touch a finite endpoint, which makes integrable endpoint singularities such
as ``ln^2(1 - t)`` at ``t = 1`` harmless.

Nodes mirrored through the centre are summed in pairs, so odd integrands on
symmetric intervals integrate to exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import QuadratureError, ValidationError

DEFAULT_TOL = 1e-10
MAX_EVALUATIONS = 2 ** 20
MIN_LEVEL = 4

_HALF_PI = 0.5 * math.pi
# |u| beyond which nodes are either at the endpoint in double precision or
# carry weights far below any meaningful contribution
_U_MAX = 4.5


@dataclass(frozen=True)
class Interval:
    """Integration region; either end may be infinite."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi) or not lo < hi:
            raise ValidationError(f"invalid interval ({lo!r}, {hi!r}): need lo < hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains_interior(self, x: float) -> bool:
        return self.lo < x < self.hi

    def is_symmetric(self) -> bool:
        return self.lo == -self.hi

    def __str__(self) -> str:
        return f"({_fmt_end(self.lo)}, {_fmt_end(self.hi)})"


def _fmt_end(x: float) -> str:
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return repr(x)


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int


# --------------------------------------------------------------------------
# Node generators.  Each returns (x_right, x_left, w_right, w_left) for u > 0,
# and (x0, w0) for u = 0.  Weights include the Jacobian dx/du.
# --------------------------------------------------------------------------

def _tanh_sinh(iv: Interval):
    lo, hi = iv.lo, iv.hi
    r = 0.5 * (hi - lo)
    c = 0.5 * (hi + lo)

    def pair(u: np.ndarray):
        s = _HALF_PI * np.sinh(u)
        q = np.exp(-2.0 * s)
        # distance to the endpoint, 1 - tanh(s), without cancellation
        d = r * 2.0 * q / (1.0 + q)
        w = r * _HALF_PI * np.cosh(u) * 4.0 * q / (1.0 + q) ** 2
        return hi - d, lo + d, w, w

    return (c, r * _HALF_PI), pair


def _exp_sinh(iv: Interval):
    if math.isfinite(iv.lo):
        a, sign = iv.lo, 1.0
    else:
        a, sign = iv.hi, -1.0

    def pair(u: np.ndarray):
        sh = _HALF_PI * np.sinh(u)
        ch = _HALF_PI * np.cosh(u)
        e_pos = np.exp(sh)
        e_neg = np.exp(-sh)
        return a + sign * e_pos, a + sign * e_neg, ch * e_pos, ch * e_neg

    return (a + sign, _HALF_PI), pair


def _sinh_sinh(iv: Interval):
    def pair(u: np.ndarray):
        s = _HALF_PI * np.sinh(u)
        x = np.sinh(s)
        w = _HALF_PI * np.cosh(u) * np.cosh(s)
        return x, -x, w, w

    return (0.0, _HALF_PI), pair


def _transform(iv: Interval):
    if iv.is_finite:
        return _tanh_sinh(iv)
    if math.isinf(iv.lo) and math.isinf(iv.hi):
        return _sinh_sinh(iv)
    return _exp_sinh(iv)


def _apply(f: Callable, x: np.ndarray, vectorized: bool) -> np.ndarray:
    if x.size == 0:
        return np.empty(0)
    if vectorized:
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            y = np.broadcast_to(y, x.shape).astype(float)
    else:
        y = np.fromiter((f(float(xi)) for xi in x), dtype=float, count=x.size)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise QuadratureError(f"non-finite integrand sample at interior node t={bad!r}")
    return y


def _level_sum(f, iv: Interval, pair, u: np.ndarray, vectorized: bool):
    """Weighted sum over nodes +-u; returns (sum, abs_sum, evaluations)."""
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        xr, xl, wr, wl = pair(u)
    keep_r = (xr > iv.lo) & (xr < iv.hi) & (wr > 0) & np.isfinite(wr) & np.isfinite(xr)
    keep_l = (xl > iv.lo) & (xl < iv.hi) & (wl > 0) & np.isfinite(wl) & np.isfinite(xl)
    fr = np.zeros(u.size)
    fl = np.zeros(u.size)
    fr[keep_r] = _apply(f, xr[keep_r], vectorized) * wr[keep_r]
    fl[keep_l] = _apply(f, xl[keep_l], vectorized) * wl[keep_l]
    terms = fr + fl
    total = math.fsum(terms)
    return total, float(np.sum(np.abs(fr)) + np.sum(np.abs(fl))), int(keep_r.sum() + keep_l.sum())


def integrate(
    f: Callable,
    iv: Interval,
    tol: float = DEFAULT_TOL,
    *,
    vectorized: bool = False,
    max_evaluations: int = MAX_EVALUATIONS,
) -> QuadResult:
    """Integral of ``f`` over ``iv``.

    Parameters
    ----------
    f : callable
        Integrand.  With ``vectorized=True`` it is called on NumPy arrays of
        nodes, otherwise once per node with a float.
    iv : Interval
        Integration region.
    tol : float
        Stop once successive levels differ by at most ``tol * max(1, |I|)``.
    max_evaluations : int
        Node budget.

    Raises
    ------
    QuadratureError
        If the budget runs out before convergence, or the integrand returns a
        non-finite value at an interior node.
    """
    if not tol > 0:
        raise ValidationError(f"tol must be positive, got {tol!r}")
    (x0, w0), pair = _transform(iv)

    evaluations = 0
    total = 0.0
    abs_total = 0.0
    if iv.lo < x0 < iv.hi:
        y0 = _apply(f, np.array([x0]), vectorized)[0]
        total = w0 * y0
        abs_total = abs(total)
        evaluations = 1

    # level 0: u = 1, 2, ..., floor(U_MAX)
    u = np.arange(1.0, math.floor(_U_MAX) + 1.0)
    s, a, n = _level_sum(f, iv, pair, u, vectorized)
    total += s
    abs_total += a
    evaluations += n
    h = 1.0
    estimate = h * total
    level = 0
    error = math.inf
    while True:
        level += 1
        h *= 0.5
        u = np.arange(h, _U_MAX, 2.0 * h)
        if evaluations + 2 * u.size > max_evaluations:
            raise QuadratureError(
                f"quadrature did not converge within {max_evaluations} evaluations "
                f"(estimate {estimate!r}, error {error!r})"
            )
        s, a, n = _level_sum(f, iv, pair, u, vectorized)
        total += s
        abs_total += a
        evaluations += n
        new_estimate = h * total
        error = abs(new_estimate - estimate)
        estimate = new_estimate
        if level >= MIN_LEVEL and error <= tol * max(1.0, abs(estimate)):
            roundoff = 4.0 * np.finfo(float).eps * h * abs_total
            return QuadResult(float(estimate), float(error + roundoff), evaluations)


def signed_power(x: np.ndarray, n: int) -> np.ndarray:
    """``x**n`` computed as ``sign * |x|**n`` so that ``(-x)**n == -(x**n)`` for odd ``n``."""
    mag = np.abs(x) ** n
    return np.where(x < 0, -mag, mag) if n % 2 else mag


def moment_integrand(f: Callable[[np.ndarray], np.ndarray], n: int, t0: float) -> Callable:
    """Vectorized ``f(t) (t - t0)^n`` that never forms ``inf * 0``."""

    def g(t: np.ndarray) -> np.ndarray:
        v = f(t)
        if n == 0:
            return v
        d = t - t0
        with np.errstate(over="ignore", invalid="ignore", under="ignore", divide="ignore"):
            out = v * signed_power(d, n)
            bad = ~np.isfinite(out) & np.isfinite(v)
            if np.any(bad):
                vb, db = v[bad], d[bad]
                logmag = n * np.log(np.abs(db)) + np.log(np.abs(vb))
                sign = np.sign(vb) * np.where((db < 0) & (n % 2 == 1), -1.0, 1.0)
                out[bad] = np.where(vb == 0.0, 0.0, sign * np.exp(logmag))
        return out

    return g


def moment(s, n: int, t0: float, tol: float = DEFAULT_TOL) -> float:
    """Un-normalized moment ``int_rc f(t) (t - t0)^n dt`` of a signal."""
    if n < 0:
        raise ValidationError(f"moment order must be >= 0, got {n}")
    if not math.isfinite(t0):
        raise ValidationError(f"t0 must be finite, got {t0!r}")
    from .expr import evaluate

    integrand = moment_integrand(lambda t: evaluate(s.expr, t), n, t0)
    return integrate(integrand, s.rc, tol, vectorized=True).value

"""Impulsive wavelets, their monomial duals and the Parseval-Taylor identity.

The analysis family is the scaling distribution ``delta(t)`` plus the
impulsive wavelets ``psi_{a,b}(t) = (-1)^a delta^(a)(t - b)``; the synthesis
family is ``1`` plus the monomials ``(t - b)^a / a!``.  Pairing a signal
with the analysis family yields its derivatives at ``b`` (wavelet
coefficients); pairing it with the synthesis family yields its moments about
``b`` (dual coefficients).  Their products, divided by ``n!``, split the
signal energy level by level.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import expr as ex
from . import jet as jt
from . import quad
from .errors import ValidationError
from .quad import DEFAULT_TOL, Interval

INF = math.inf


# --------------------------------------------------------------------------
# Signals
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Signal:
    """A closed-form signal and the region on which it is analysed.

    ``rc`` doubles as the region of convergence of the Taylor series and the
    integration region of every moment and energy.
    """

    name: str
    expr: ex.Expression
    rc: Interval

    def __call__(self, t):
        return ex.evaluate(self.expr, t)

    def with_rc(self, rc: Interval) -> "Signal":
        return Signal(self.name, self.expr, rc)


def _builtin(name: str, text: str, lo: float, hi: float) -> Signal:
    return Signal(name, ex.parse(text), Interval(lo, hi))


#: The two worked examples.  The Gaussian pulse is ``exp(-t^2/2)``: its
#: energy is sqrt(pi) and its moments are ``2^{k+1/2} Gamma(k+1/2)``.
BUILTIN_SIGNALS: dict[str, Signal] = {
    "gaussian": _builtin("gaussian", "exp(-t^2/2)", -INF, INF),
    "logpulse": _builtin("logpulse", "ln(1-t)", 0.0, 1.0),
}


def get_signal(selector: str, rc: Interval | None = None) -> Signal:
    """Built-in signal by name, or an inline expression.

    Inline expressions default to ``rc = (-inf, inf)``.
    """
    key = selector.strip()
    if key in BUILTIN_SIGNALS:
        s = BUILTIN_SIGNALS[key]
        return s if rc is None else s.with_rc(rc)
    return Signal(key, ex.parse(key), rc if rc is not None else Interval(-INF, INF))


def _require_in_rc(s: Signal, b: float):
    # closed region: the log pulse is expanded at the endpoint 0 of (0, 1);
    # points where f itself is singular are rejected later by the jet
    if not (s.rc.lo <= b <= s.rc.hi and math.isfinite(b)):
        raise ValidationError(
            f"base point outside region of convergence: b={b!r} not in {s.rc} for {s.name!r}"
        )


# --------------------------------------------------------------------------
# Distributions supported on a point
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DistributionalSeries:
    """``sum_n d_n (-1)^n delta^(n)(t - t0)``.

    Its action on a test function ``phi`` is ``sum_n d_n phi^(n)(t0)``.
    """

    t0: float
    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        if not all(math.isfinite(v) for v in c):
            raise ValidationError("distributional series coefficients must be finite")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "t0", float(self.t0))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "DistributionalSeries") -> "DistributionalSeries":
        if other.t0 != self.t0:
            raise ValidationError("series must share the same centre")
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0.0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0.0] * (n - len(other.coeffs))
        return DistributionalSeries(self.t0, [x + y for x, y in zip(a, b)])

    def scale(self, k: float) -> "DistributionalSeries":
        return DistributionalSeries(self.t0, [k * c for c in self.coeffs])

    def derivative(self) -> "DistributionalSeries":
        """Distributional derivative: ``<phi, T'> = -<phi', T>``.

        ``d/dt [(-1)^n delta^(n)] = -(-1)^{n+1} delta^(n+1)``, so every
        weight moves up one order and changes sign.
        """
        return DistributionalSeries(self.t0, [0.0] + [-c for c in self.coeffs])


def dirac(t0: float = 0.0) -> DistributionalSeries:
    """The Dirac distribution ``delta(t - t0)``."""
    return DistributionalSeries(t0, [1.0])


def dist_apply(ds: DistributionalSeries, phi: ex.Expression | str, *, max_order: int | None = None) -> float:
    """Pair the series with the test function ``phi``: ``sum d_n phi^(n)(t0)``."""
    if isinstance(phi, str):
        phi = ex.parse(phi)
    limit = max(ds.order, jt.MAX_ORDER) if max_order is None else max_order
    j = jt.lift(phi, ds.t0, ds.order, max_order=limit)
    # phi^(n)(t0) = n! * coeffs[n]; the factorial is applied last to dodge overflow
    terms = [_times_factorial(float(j.coeffs[n]) * d, n) for n, d in enumerate(ds.coeffs)]
    return math.fsum(terms)


# --------------------------------------------------------------------------
# Analysis and synthesis families
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ImpulsiveWavelet:
    """``psi_{a,b}(t) = (-1)^a delta^(a)(t - b)``, supported on ``{b}``."""

    order: int
    shift: float

    def __post_init__(self):
        if self.order < 1:
            raise ValidationError("impulsive wavelets have order >= 1; order 0 is the scaling function")

    @property
    def support(self) -> tuple[float, float]:
        return (self.shift, self.shift)

    def as_series(self) -> DistributionalSeries:
        return DistributionalSeries(self.shift, [0.0] * self.order + [1.0])

    def pair(self, phi: ex.Expression) -> float:
        """``<phi, psi_{a,b}> = phi^(a)(b)``."""
        return dist_apply(self.as_series(), phi)

    def spectrum(self, w: float) -> complex:
        return wavelet_spectrum(self.order, self.shift, w)


@dataclass(frozen=True)
class DualWavelet:
    """``(t - b)^a / a!``; the dual scaling function is the constant 1."""

    order: int
    shift: float

    def __post_init__(self):
        if self.order < 1:
            raise ValidationError("dual wavelets have order >= 1; order 0 is the constant 1")

    def __call__(self, t: float) -> float:
        return jt.power_over_factorial(t - self.shift, self.order)

    def as_expression(self) -> ex.Expression:
        base = ex.Sub(ex.Var(), ex.Const(self.shift)) if self.shift else ex.Var()
        return ex.Div(ex.IntPow(base, self.order), ex.Const(float(math.factorial(self.order))))


#: Scaling function ``delta(t)`` and its dual ``1``.
SCALING = dirac(0.0)
DUAL_SCALING = ex.Const(1.0)


def wavelet_spectrum(a: int, b: float, w: float) -> complex:
    """Fourier transform ``(-j w)^a exp(-j w b)`` of ``psi_{a,b}``."""
    if a < 1:
        raise ValidationError(f"wavelet order must be >= 1, got {a}")
    return (-1j * w) ** a * cmath.exp(-1j * w * b)


# --------------------------------------------------------------------------
# Coefficients
# --------------------------------------------------------------------------

def wavelet_coefficient(s: Signal, a: int, b: float, *, max_order: int | None = None) -> float:
    """``c_{a,b} = <f, psi_{a,b}> = f^(a)(b)``; ``a = 0`` gives ``f(b)``.

    Derivatives come from jet propagation, never from differencing.
    """
    if a < 0:
        raise ValidationError(f"order must be >= 0, got {a}")
    _require_in_rc(s, b)
    return jt.derivative(jt.lift(s.expr, b, a, max_order=max_order), a)


def _times_factorial(x: float, n: int) -> float:
    if n <= 170 or x == 0.0:
        return x * float(math.factorial(n)) if n <= 170 else 0.0
    return math.copysign(math.exp(math.log(abs(x)) + math.lgamma(n + 1)), x)


def _divide_factorial(x: float, n: int) -> float:
    if n <= 20:
        return x / math.factorial(n)
    if x == 0.0:
        return 0.0
    return math.copysign(math.exp(math.log(abs(x)) - math.lgamma(n + 1)), x)


def dual_coefficient(s: Signal, a: int, b: float, tol: float = DEFAULT_TOL) -> float:
    """``<f, (t-b)^a / a!>`` integrated over ``s.rc``."""
    if a < 0:
        raise ValidationError(f"order must be >= 0, got {a}")
    return _divide_factorial(quad.moment(s, a, b, tol), a)


def biorthogonality_check(n: int, m: int, t0: float) -> float:
    """Exact ``<psi_{n,t0}, psi~_{m,t0}> = (1/m!) d^n/dt^n (t-t0)^m |_{t=t0}``.

    ``d^n (t-t0)^m = m!/(m-n)! (t-t0)^(m-n)`` for ``n <= m`` and vanishes
    otherwise; at ``t = t0`` only ``m = n`` survives.
    """
    if n < 1 or m < 1:
        raise ValidationError("orders must be >= 1")
    if n > m:
        return 0.0
    falling = math.perm(m, n)
    remaining = 1 if m == n else 0  # (t0 - t0)^(m-n)
    return float(falling * remaining) / float(math.factorial(m))


def dual_taylor_series(s: Signal, t0: float, N: int, tol: float = DEFAULT_TOL) -> DistributionalSeries:
    """Weights ``d_n = f^(n~)(t0) / n!`` of the distributional dual series."""
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    return DistributionalSeries(t0, [dual_coefficient(s, n, t0, tol) for n in range(N + 1)])


def reconstruct(s: Signal, b: float, N: int, t: float, *, max_order: int | None = None) -> float:
    """Synthesis ``c_0 * 1 + sum_{n=1..N} c_{n,b} psi~_{n,b}(t)``: the Taylor polynomial."""
    _require_in_rc(s, b)
    j = jt.lift(s.expr, b, N, max_order=max_order)
    terms = [float(j.coeffs[0])]
    for n in range(1, N + 1):
        # c_n * (t-b)^n/n!, with c_n/n! taken straight from the jet
        terms.append(float(j.coeffs[n]) * (t - b) ** n)
    return math.fsum(terms)


# --------------------------------------------------------------------------
# Energy
# --------------------------------------------------------------------------

@dataclass
class EnergyDecomposition:
    """Level-by-level split of the signal energy at base point ``b``.

    ``c[n] = f^(n)(b)``, ``c_dual[n] = f^(n~)(b) / n!``,
    ``de[n] = c[n] * c_dual[n]`` (signed), ``cumulative[k] = sum_{n<=k} de[n]``.
    """

    signal: str
    b: float
    order: int
    c: list[float]
    c_dual: list[float]
    de: list[float]
    cumulative: list[float]
    quadrature_energy: float
    moments: list[float] = field(default_factory=list)

    @property
    def gap(self) -> float:
        return abs(self.cumulative[-1] - self.quadrature_energy)

    def to_dict(self) -> dict:
        return {
            "signal": self.signal,
            "b": self.b,
            "levels": self.order + 1,
            "quadrature_energy": self.quadrature_energy,
            "partial_energy": self.cumulative[-1],
            "gap": self.gap,
            "rows": [
                {"n": n, "c": self.c[n], "c_dual": self.c_dual[n], "DE": self.de[n], "E": self.cumulative[n]}
                for n in range(self.order + 1)
            ],
        }


def energy(s: Signal, tol: float = DEFAULT_TOL) -> float:
    """``int_rc f^2``."""

    def square(t):
        v = ex.evaluate(s.expr, t)
        return v * v

    return quad.integrate(square, s.rc, tol, vectorized=True).value


def energy_densities(s: Signal, b: float, N: int, tol: float = DEFAULT_TOL, *, max_order: int | None = None) -> tuple[jt.Jet, list[float], list[float]]:
    """Jet at ``b``, raw moments about ``b`` and the densities ``DE_0..DE_N``."""
    _require_in_rc(s, b)
    j = jt.lift(s.expr, b, N, max_order=max_order)
    moments = [quad.moment(s, n, b, tol) for n in range(N + 1)]
    # f^(n)(b) f^(n~)(b) / n! == (normalized coefficient) * (raw moment)
    de = [float(j.coeffs[n]) * moments[n] + 0.0 for n in range(N + 1)]
    return j, moments, de


def parseval_taylor(s: Signal, b: float, N: int, tol: float = DEFAULT_TOL, *, max_order: int | None = None) -> EnergyDecomposition:
    """Energy decomposition ``sum_n f^(n)(b) f^(n~)(b) / n!`` against ``int_rc f^2``."""
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    j, moments, de = energy_densities(s, b, N, tol, max_order=max_order)
    # + 0.0 folds negative zeros so tables never show "-0"
    c = [jt.derivative(j, n) + 0.0 for n in range(N + 1)]
    c_dual = [_divide_factorial(m, n) + 0.0 for n, m in enumerate(moments)]
    cumulative = list(np.cumsum(de))
    return EnergyDecomposition(
        signal=s.name,
        b=float(b),
        order=N,
        c=c,
        c_dual=c_dual,
        de=de,
        cumulative=[float(v) for v in cumulative],
        quadrature_energy=energy(s, tol),
        moments=moments,
    )


# --------------------------------------------------------------------------
# Symmetry
# --------------------------------------------------------------------------

def even_odd_split(s: Signal) -> tuple[Signal, Signal]:
    """Even part ``(f(t)+f(-t))/2`` and odd part ``(f(t)-f(-t))/2`` on the same rc."""
    if not s.rc.is_symmetric():
        raise ValidationError(f"region {s.rc} is not symmetric about 0")
    mirrored = ex.reflect(s.expr)
    two = ex.Const(2.0)
    even = ex.Div(ex.Add(s.expr, mirrored), two)
    odd = ex.Div(ex.Sub(s.expr, mirrored), two)
    return Signal(f"even({s.name})", even, s.rc), Signal(f"odd({s.name})", odd, s.rc)


def moment_symmetry_report(s: Signal, kmax: int, tol: float = DEFAULT_TOL) -> list[tuple[int, float]]:
    """Raw moments ``0..kmax`` about 0; parity-forbidden entries should vanish."""
    if not s.rc.is_symmetric():
        raise ValidationError(f"region {s.rc} is not symmetric about 0")
    return [(k, quad.moment(s, k, 0.0, tol)) for k in range(kmax + 1)]


# --------------------------------------------------------------------------
# Frequency domain
# --------------------------------------------------------------------------

_MINUS_J_POWERS = (1.0 + 0j, -1j, -1.0 + 0j, 1j)


def spectral_moment(s: Signal, n: int, tol: float = DEFAULT_TOL) -> complex:
    """``F^(n)(0) = (-j)^n int_rc t^n f(t) dt``, so ``j^n F^(n)(0)`` is the raw moment."""
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    return _MINUS_J_POWERS[n % 4] * quad.moment(s, n, 0.0, tol)


def kronecker_matrix(orders: Sequence[int], t0: float) -> list[list[float]]:
    return [[biorthogonality_check(n, m, t0) for m in orders] for n in orders]

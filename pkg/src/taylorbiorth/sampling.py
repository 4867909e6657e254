"""Shannon sampling as a biorthogonal pair: sinc analysis, Dirac-comb synthesis.

Analysis functions are ``Sa(2 pi B t - n pi)`` and their duals are the
impulses ``delta(t - n / 2B)``.  A band-limited signal is rebuilt from its
samples with the truncated cardinal series over ``m = -M..M``.

Sinc evaluations go through :func:`sa_pi`, which is exact (1 or 0) at
integers, so the biorthogonality matrix is an exact identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from . import quad
from .errors import ValidationError

_SERIES_CUTOFF = 1e-4


def sa(x: float) -> float:
    """``sin(x)/x`` with ``sa(0) = 1``; a short series near 0."""
    if abs(x) < _SERIES_CUTOFF:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


def _sinpi(x: float) -> float:
    """``sin(pi x)``, exactly 0 at integers."""
    if x == math.floor(x):
        return 0.0
    # reduce to [-1, 1) then to [-1/2, 1/2] where sin is accurate
    r = math.fmod(x, 2.0)
    if r >= 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def sa_pi(x: float) -> float:
    """``Sa(pi x)``: 1 at 0, exactly 0 at the other integers."""
    if abs(x) < _SERIES_CUTOFF:
        return sa(math.pi * x)
    return _sinpi(x) / (math.pi * x) + 0.0


def _check_bandwidth(B: float):
    if not (B > 0 and math.isfinite(B)):
        raise ValidationError(f"bandwidth must be a positive finite number, got {B!r}")


def sample_time(m: int, B: float) -> float:
    return m / (2.0 * B)


def analysis_function(n: int, B: float) -> Callable[[float], float]:
    """``t -> Sa(2 pi B t - n pi)``."""
    _check_bandwidth(B)
    return lambda t: sa_pi(2.0 * B * t - n)


def sinc_biorth(n: int, m: int, B: float) -> float:
    """``<Sa(2 pi B t - n pi), delta(t - m/2B)> = Sa(pi (m - n))``, an exact Kronecker delta."""
    _check_bandwidth(B)
    # 2 pi B (m / 2B) - n pi reduces to pi (m - n) with integer m - n
    return sa_pi(m - n)


@dataclass(frozen=True)
class SampledSignal:
    """Samples ``f(m / 2B)`` for ``m = -M..M``."""

    bandwidth: float
    samples: Mapping[int, float]
    truncation: int

    def __post_init__(self):
        _check_bandwidth(self.bandwidth)
        if self.truncation < 0:
            raise ValidationError(f"truncation must be >= 0, got {self.truncation}")
        missing = [m for m in range(-self.truncation, self.truncation + 1) if m not in self.samples]
        if missing:
            raise ValidationError(f"samples missing for indices {missing[:5]}")

    @classmethod
    def from_function(cls, f: Callable[[float], float], B: float, M: int) -> "SampledSignal":
        _check_bandwidth(B)
        return cls(B, {m: float(f(sample_time(m, B))) for m in range(-M, M + 1)}, M)


def shannon_reconstruct(ss: SampledSignal, t: float) -> float:
    """``sum_{m=-M..M} f(m/2B) Sa(2 pi B t - m pi)``."""
    x = 2.0 * ss.bandwidth * t
    terms = [ss.samples[m] * sa_pi(x - m) for m in range(-ss.truncation, ss.truncation + 1)]
    return math.fsum(terms)


@dataclass(frozen=True)
class SampleTrain:
    """Dirac comb ``sum_n w_n delta(t - n/2B)`` stored as an index -> weight map."""

    bandwidth: float
    weights: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        _check_bandwidth(self.bandwidth)

    def apply(self, phi: Callable[[float], float]) -> float:
        """Distributional action ``sum_n w_n phi(n/2B)``."""
        return math.fsum(w * phi(sample_time(n, self.bandwidth)) for n, w in self.weights.items())

    def coefficient(self, n: int) -> float:
        """Action on the analysis function of index ``n``; by biorthogonality the weight ``w_n``."""
        return math.fsum(w * sinc_biorth(n, m, self.bandwidth) for m, w in self.weights.items())


def sinc_coefficient(f: Callable[[float], float], n: int, B: float, M: int,
                     tol: float = quad.DEFAULT_TOL) -> float:
    """``c_n = int f(t) Sa(2 pi B t - n pi) dt`` over the window ``|t| <= (M + 8) / 2B``.

    For a band-limited ``f`` this tends to ``f(n/2B) / 2B``.
    """
    _check_bandwidth(B)
    W = (M + 8) / (2.0 * B)
    g = analysis_function(n, B)
    return quad.integrate(lambda t: f(t) * g(t), quad.Interval(-W, W), tol,
                          max_evaluations=1 << 18).value


def sinc_test_signal(B: float) -> Callable[[float], float]:
    """``Sa(pi B t)^2``: band-limited to ``B`` with samples decaying like ``1/m^2``."""
    _check_bandwidth(B)
    return lambda t: sa_pi(B * t) ** 2


def two_sinc_signal(B: float, shift: int = 3, weight: float = 0.5) -> Callable[[float], float]:
    """``Sa(2 pi B t) + weight * Sa(2 pi B t - shift pi)``."""
    _check_bandwidth(B)
    return lambda t: sa_pi(2.0 * B * t) + weight * sa_pi(2.0 * B * t - shift)


def reconstruction_errors(f: Callable[[float], float], B: float, t: float,
                          truncations: Iterable[int]) -> list[tuple[int, float]]:
    """``|f(t) - reconstruction_M(t)|`` for each truncation ``M``."""
    exact = f(t)
    out = []
    for M in truncations:
        ss = SampledSignal.from_function(f, B, M)
        out.append((M, abs(shannon_reconstruct(ss, t) - exact)))
    return out

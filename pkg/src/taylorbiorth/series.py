"""Partial sums, convergence flags and Aitken acceleration for the energy series.

The four series here are the numerical identities that fall out of the
Parseval-Taylor decomposition of the Gaussian and logarithmic pulses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import specfun
from .errors import ValidationError

DEFAULT_DEPTH = 5
_GUARD = 1e-14


@dataclass(frozen=True)
class SeriesReport:
    terms_used: int
    partial_sums: tuple[float, ...]
    raw_estimate: float
    accelerated_estimate: float
    monotone: bool
    oscillatory: bool
    target: float | None = None

    @property
    def raw_error(self) -> float | None:
        return None if self.target is None else abs(self.raw_estimate - self.target)

    @property
    def accelerated_error(self) -> float | None:
        return None if self.target is None else abs(self.accelerated_estimate - self.target)


#: Reference limits reported alongside each series.
TARGETS = {
    "converg1": math.sqrt(math.pi / 2.0),
    "converg2": 2.0 - specfun.EULER_GAMMA,
    "harmonic": 2.0,
    "alternating": 2.0 * (math.log(2.0) ** 2 - 2.0 * math.log(2.0) + 1.0),
}

#: Closed-form value of sum_{n>=1} (-1)^n H_{n+1} / (n (n+1)), which differs
#: from TARGETS["alternating"].
ALTERNATING_LOG_LIMIT = 2.0 - 2.0 * math.log(2.0) + math.log(2.0) ** 2 - math.pi ** 2 / 6.0


def aitken_accelerate(partial_sums: Sequence[float], depth: int) -> float:
    """Iterated Aitken delta-squared on a sequence of partial sums.

    Each pass maps ``s`` to ``s[i+2] - (s[i+2]-s[i+1])**2 / (s[i+2]-2 s[i+1]+s[i])``
    and shortens the sequence by two.  When a denominator falls below
    ``1e-14 * |numerator|`` (including the 0/0 of a constant sequence) the
    iteration stops and the last value of the current pass is returned.
    """
    if depth < 1:
        raise ValidationError(f"depth must be >= 1, got {depth}")
    s = [float(v) for v in partial_sums]
    if len(s) < 2 * depth + 1:
        raise ValidationError(
            f"aitken depth {depth} needs at least {2 * depth + 1} partial sums, got {len(s)}"
        )
    for _ in range(depth):
        nxt = []
        for i in range(len(s) - 2):
            d1 = s[i + 2] - s[i + 1]
            d2 = s[i + 2] - 2.0 * s[i + 1] + s[i]
            num = d1 * d1
            if d2 == 0.0 or abs(d2) <= _GUARD * num:
                return s[-1]
            nxt.append(s[i + 2] - num / d2)
        s = nxt
    return s[-1]


def _flags(partial_sums: Sequence[float]) -> tuple[bool, bool]:
    diffs = [b - a for a, b in zip(partial_sums, partial_sums[1:])]
    if not diffs:
        return False, False
    monotone = all(d > 0 for d in diffs) or all(d < 0 for d in diffs)
    oscillatory = all(d != 0 for d in diffs) and all(
        (a > 0) != (b > 0) for a, b in zip(diffs, diffs[1:])
    ) and len(diffs) >= 2
    return monotone, oscillatory


def summarize(terms: Iterable[float], depth: int = DEFAULT_DEPTH, target: float | None = None) -> SeriesReport:
    """Build a :class:`SeriesReport` from the terms of a series.

    ``depth`` is reduced to what the number of terms allows.
    """
    partial = []
    acc = 0.0
    comp = 0.0
    for term in terms:
        # Kahan-compensated running sum
        y = term - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
        partial.append(acc)
    if not partial:
        raise ValidationError("series has no terms")
    usable = min(depth, (len(partial) - 1) // 2)
    accelerated = aitken_accelerate(partial, usable) if usable >= 1 else partial[-1]
    monotone, oscillatory = _flags(partial)
    return SeriesReport(
        terms_used=len(partial),
        partial_sums=tuple(partial),
        raw_estimate=partial[-1],
        accelerated_estimate=accelerated,
        monotone=monotone,
        oscillatory=oscillatory,
        target=target,
    )


def converg1_term(k: int) -> float:
    """``(-1)^k Gamma(k + 1/2) / Gamma(k + 1)`` via log-gamma differences."""
    mag = math.exp(specfun.lgamma(k + 0.5) - specfun.lgamma(k + 1.0))
    return -mag if k % 2 else mag


def converg1(N: int, depth: int = DEFAULT_DEPTH) -> SeriesReport:
    """Partial sums ``k = 0..N`` of ``sum (-1)^k Gamma(k+1/2)/Gamma(k+1)`` -> sqrt(pi/2)."""
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    return summarize((converg1_term(k) for k in range(N + 1)), depth, TARGETS["converg1"])


def converg2(N: int, depth: int = DEFAULT_DEPTH) -> SeriesReport:
    """Partial sums ``k = 1..N`` of ``sum psi(k+2) / (k (k+1))`` -> 2 - C."""
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    terms = (specfun.digamma(k + 2.0) / (k * (k + 1.0)) for k in range(1, N + 1))
    return summarize(terms, depth, TARGETS["converg2"])


def _harmonic_terms(N: int, sign: Callable[[int], float]):
    h = 1.0  # H_1
    for n in range(1, N + 1):
        h += 1.0 / (n + 1)
        yield sign(n) * h / (n * (n + 1.0))


def harmonic_identity_series(N: int, depth: int = DEFAULT_DEPTH) -> SeriesReport:
    """Partial sums of ``sum_{n>=1} H_{n+1} / (n (n+1))`` -> 2."""
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    return summarize(_harmonic_terms(N, lambda n: 1.0), depth, TARGETS["harmonic"])


def alternating_log_series(N: int, depth: int = DEFAULT_DEPTH) -> SeriesReport:
    """Partial sums of ``sum_{n>=1} (-1)^n H_{n+1} / (n (n+1))``.

    ``target`` holds ``2 (ln^2 2 - 2 ln 2 + 1)``, the value the (-1, 1)
    energy balance suggests.  Numerically the series converges to
    :data:`ALTERNATING_LOG_LIMIT` (about -0.5508) instead.
    """
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    return summarize(
        _harmonic_terms(N, lambda n: -1.0 if n % 2 else 1.0), depth, TARGETS["alternating"]
    )


SERIES = {
    "converg1": converg1,
    "converg2": converg2,
    "harmonic": harmonic_identity_series,
    "alternating": alternating_log_series,
}

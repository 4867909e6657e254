"""Taylor series as a biorthogonal impulsive-wavelet decomposition.

Derivatives at a base point are the wavelet coefficients, moments about it
are the dual coefficients, and their products per level split the signal
energy into signed Taylor energy densities.
"""

from importlib import resources
import json

from .biorth import (
    BUILTIN_SIGNALS,
    DistributionalSeries,
    DualWavelet,
    EnergyDecomposition,
    ImpulsiveWavelet,
    Signal,
    dirac,
    dist_apply,
    dual_coefficient,
    dual_taylor_series,
    energy,
    get_signal,
    parseval_taylor,
    reconstruct,
    wavelet_coefficient,
)
from .errors import DomainError, ParseError, QuadratureError, TaylorBiorthError, ValidationError
from .expr import evaluate, parse
from .jet import Jet, lift
from .quad import Interval, QuadResult, integrate

__version__ = "0.1.0"


def load_schema(name: str) -> dict:
    """JSON schema shipped with the package, e.g. ``load_schema("analyze")``."""
    text = resources.files(__package__).joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


__all__ = [
    "BUILTIN_SIGNALS", "DistributionalSeries", "DomainError", "DualWavelet",
    "EnergyDecomposition", "ImpulsiveWavelet", "Interval", "Jet", "ParseError",
    "QuadResult", "QuadratureError", "Signal", "TaylorBiorthError", "ValidationError",
    "dirac", "dist_apply", "dual_coefficient", "dual_taylor_series", "energy",
    "evaluate", "get_signal", "integrate", "lift", "load_schema", "parse",
    "parseval_taylor", "reconstruct", "wavelet_coefficient",
]

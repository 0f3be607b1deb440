"""
Single-photon scattering and switching in one-dimensional waveguides.

Closed-form transmission and reflection amplitudes for an emitter coupled to
a continuum waveguide, an emitter inside a cavity, and an emitter side-coupled
to a coupled-resonator waveguide; transfer-matrix cascades of these; wave
packet switching metrics; and brute-force lattice oracles.
"""
__version__ = "0.1.0"

from .core import (  # noqa: E402
    CavityParams,
    CrwParams,
    EmitterWaveguideParams,
    FrequencyGrid,
    GridMismatch,
    NearTotalReflection,
    OracleError,
    OutsideBand,
    SpectralResponse,
    ValidationError,
    WqedError,
    make_grid,
    validate,
)
from . import cascade, cavity, continuum, crw, oracles, packets  # noqa: E402

__all__ = [
    "__version__",
    "CavityParams",
    "CrwParams",
    "EmitterWaveguideParams",
    "FrequencyGrid",
    "GridMismatch",
    "NearTotalReflection",
    "OracleError",
    "OutsideBand",
    "SpectralResponse",
    "ValidationError",
    "WqedError",
    "make_grid",
    "validate",
    "cascade",
    "cavity",
    "continuum",
    "crw",
    "oracles",
    "packets",
]

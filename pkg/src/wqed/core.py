"""
Shared parameter types, frequency grids and the spectrum container.

All frequencies and rates are plain floats in one angular-frequency unit of
the caller's choosing (hbar = 1). Only ratios matter; nothing in the package
converts units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Optional, Union

import numpy as np

__all__ = [
    "WqedError",
    "ValidationError",
    "OutsideBand",
    "NearTotalReflection",
    "GridMismatch",
    "OracleError",
    "EmitterWaveguideParams",
    "CavityParams",
    "CrwParams",
    "FrequencyGrid",
    "SpectralResponse",
    "Violation",
    "FRAMES",
    "make_grid",
    "validate",
    "require_valid",
    "absolute_frequencies",
]

FRAMES = ("absolute", "detuning-from-emitter", "detuning-from-cavity")

# flux-closure slack for |t|^2 + |r|^2
FLUX_TOL = 1e-12


class WqedError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(WqedError, ValueError):
    """A parameter block or grid violates one of its invariants."""

    def __init__(self, message: str, field_name: Optional[str] = None):
        super().__init__(message)
        self.field = field_name


class OutsideBand(WqedError, ValueError):
    """Frequency outside (or on the edge of) a lattice propagation band."""


class NearTotalReflection(WqedError, ArithmeticError):
    """Site transmission too small for a finite transfer matrix."""


class GridMismatch(WqedError, ValueError):
    """Two objects that must share a frequency grid do not."""


class OracleError(WqedError, RuntimeError):
    """A brute-force oracle run was infeasible or failed its own checks."""


def _check_finite(obj) -> None:
    for f in fields(obj):
        v = getattr(obj, f.name)
        if isinstance(v, (int, float)) and not math.isfinite(v):
            raise ValidationError(f"{f.name} must be finite, got {v!r}", f.name)


@dataclass(frozen=True)
class EmitterWaveguideParams:
    """Two-level emitter side-coupled to a continuous waveguide.

    ``omega_e`` is measured in the frame shifted by the linearisation
    frequency, so photon frequencies ``omega`` passed to the backends live in
    the same frame.
    """

    gamma_right: float
    gamma_left: float
    gamma_loss: float = 0.0
    omega_e: float = 0.0

    def __post_init__(self):
        _check_finite(self)

    @classmethod
    def symmetric(cls, gamma: float, gamma_loss: float = 0.0, omega_e: float = 0.0):
        return cls(gamma, gamma, gamma_loss, omega_e)


@dataclass(frozen=True)
class CavityParams:
    """Emitter in a single-mode cavity that is side-coupled to a waveguide.

    ``gamma_right``/``gamma_left`` are the cavity decay rates into the two
    waveguide directions; ``kappa`` and ``gamma_loss`` are the non-guided
    losses of the cavity and the emitter.
    """

    g: float
    omega_c: float = 0.0
    omega_e: float = 0.0
    gamma_right: float = 1.0
    gamma_left: float = 1.0
    kappa: float = 0.0
    gamma_loss: float = 0.0

    def __post_init__(self):
        _check_finite(self)

    @classmethod
    def from_q(cls, g: float, omega_c: float, q: float, **kwargs):
        """Build with symmetric waveguide rates ``omega_c / 2q``."""
        from .cavity import gamma_from_q

        rate = gamma_from_q(omega_c, q)
        return cls(g=g, omega_c=omega_c, gamma_right=rate, gamma_left=rate, **kwargs)

    @property
    def regime(self) -> str:
        """``"strong"`` iff g exceeds both loss rates. Diagnostic only."""
        return "strong" if self.g > max(self.kappa, self.gamma_loss) else "weak"


@dataclass(frozen=True)
class CrwParams:
    """Emitter coupled to one site of a coupled-resonator waveguide.

    Lattice constant is 1, so wave numbers are dimensionless. ``gamma_loss``
    is an experimental extension (same complex-frequency substitution as the
    continuum model); the lossless case is the validated one.
    """

    omega_c: float
    xi: float
    g: float
    omega_e: float = 0.0
    gamma_loss: float = 0.0

    def __post_init__(self):
        _check_finite(self)

    @property
    def band(self) -> tuple[float, float]:
        return (self.omega_c - 2 * self.xi, self.omega_c + 2 * self.xi)


Params = Union[EmitterWaveguideParams, CavityParams, CrwParams]


@dataclass(frozen=True)
class Violation:
    field: str
    message: str

    def __str__(self):
        return self.message


_NONNEGATIVE = {
    EmitterWaveguideParams: ("gamma_right", "gamma_left", "gamma_loss"),
    CavityParams: ("g", "kappa", "gamma_loss", "gamma_right", "gamma_left"),
    CrwParams: ("g", "gamma_loss"),
}


def validate(params) -> Optional[Violation]:
    """Return the first violated invariant of ``params``, or None if valid."""
    kind = type(params)
    if kind not in _NONNEGATIVE:
        return Violation("params", f"unsupported parameter type {kind.__name__}")
    for f in fields(params):
        v = getattr(params, f.name)
        if not math.isfinite(v):
            return Violation(f.name, f"{f.name} not finite")
    for name in _NONNEGATIVE[kind]:
        if getattr(params, name) < 0:
            return Violation(name, f"{name} negative")
    if kind is CrwParams and params.xi <= 0:
        return Violation("xi", "xi must be positive")
    return None


def require_valid(params) -> None:
    v = validate(params)
    if v is not None:
        raise ValidationError(v.message, v.field)


def _readonly(a, dtype) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Strictly increasing sample points tagged with their frequency frame."""

    points: np.ndarray
    frame: str = "absolute"

    def __post_init__(self):
        if self.frame not in FRAMES:
            raise ValidationError(f"unknown frame {self.frame!r}", "frame")
        pts = _readonly(self.points, float)
        if pts.ndim != 1 or pts.size < 2:
            raise ValidationError("grid needs at least 2 points", "points")
        if not np.all(np.isfinite(pts)):
            raise ValidationError("grid points must be finite", "points")
        if np.any(np.diff(pts) <= 0):
            raise ValidationError("grid points must be strictly increasing", "points")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size

    @property
    def uniform(self) -> bool:
        d = np.diff(self.points)
        return bool(np.allclose(d, d[0], rtol=1e-9, atol=0.0))

    @property
    def spacing(self) -> float:
        """Largest gap between neighbouring points."""
        return float(np.max(np.diff(self.points)))

    def same_as(self, other: "FrequencyGrid") -> bool:
        return (
            self.frame == other.frame
            and self.points.shape == other.points.shape
            and bool(np.array_equal(self.points, other.points))
        )

    def shifted(self, offset: float, frame: str) -> "FrequencyGrid":
        return FrequencyGrid(self.points + offset, frame)


def make_grid(center: float, half_width: float, n: int, frame: str = "absolute") -> FrequencyGrid:
    """Uniform grid of ``n`` points on ``[center - half_width, center + half_width]``."""
    if not (math.isfinite(center) and math.isfinite(half_width)):
        raise ValidationError("grid center and half_width must be finite")
    if half_width <= 0:
        raise ValidationError("half_width must be positive", "half_width")
    if int(n) != n or n < 2:
        raise ValidationError("grid needs n >= 2 points", "n")
    pts = np.linspace(center - half_width, center + half_width, int(n))
    # exact center for odd n so resonant rows are hit exactly
    if n % 2 == 1:
        pts[n // 2] = center
    return FrequencyGrid(pts, frame)


def absolute_frequencies(grid: FrequencyGrid, params) -> np.ndarray:
    """Photon frequencies of ``grid`` in the absolute frame of ``params``."""
    if grid.frame == "absolute":
        return grid.points
    if grid.frame == "detuning-from-emitter":
        return grid.points + params.omega_e
    if not hasattr(params, "omega_c"):
        raise ValidationError("detuning-from-cavity frame needs a model with omega_c", "frame")
    return grid.points + params.omega_c


@dataclass(frozen=True, eq=False)
class SpectralResponse:
    """Complex transmission and reflection amplitudes sampled on a grid.

    ``flagged`` marks points whose values were substituted (for example a
    near-totally-reflecting cascade site); it is None when nothing was.
    """

    grid: FrequencyGrid
    t: np.ndarray
    r: np.ndarray
    flagged: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        t = _readonly(self.t, complex)
        r = _readonly(self.r, complex)
        if t.shape != self.grid.points.shape or r.shape != t.shape:
            raise ValidationError("t and r must have one sample per grid point")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(r))):
            raise ValidationError("amplitudes must be finite")
        flux = np.abs(t) ** 2 + np.abs(r) ** 2
        if np.any(flux > 1 + FLUX_TOL):
            i = int(np.argmax(flux))
            raise ValidationError(
                f"|t|^2+|r|^2 = {flux[i]!r} exceeds 1 at point {self.grid.points[i]!r}"
            )
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)
        if self.flagged is not None:
            object.__setattr__(self, "flagged", _readonly(self.flagged, bool))

    @property
    def T(self) -> np.ndarray:
        return np.abs(self.t) ** 2

    @property
    def R(self) -> np.ndarray:
        return np.abs(self.r) ** 2

    @property
    def loss(self) -> np.ndarray:
        return 1.0 - self.T - self.R

    @property
    def n_flagged(self) -> int:
        return 0 if self.flagged is None else int(self.flagged.sum())

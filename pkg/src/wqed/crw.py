"""
Emitter coupled to one site of an infinite coupled-resonator waveguide.

Tight-binding chain with on-site frequency ``omega_c`` and hopping ``xi``
(lattice constant 1): ``omega_k = omega_c - 2 xi cos k``. Propagating
solutions exist only strictly inside the band ``|omega - omega_c| < 2 xi``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    CrwParams,
    FrequencyGrid,
    OutsideBand,
    SpectralResponse,
    ValidationError,
    absolute_frequencies,
    require_valid,
)

__all__ = [
    "BandPoint",
    "EDGE_EPS",
    "dispersion",
    "band_point",
    "inverse_dispersion",
    "amplitudes",
    "probabilities_resonant",
    "wave_numbers",
    "response",
]

# sweeps clamp k into [EDGE_EPS, pi - EDGE_EPS]
EDGE_EPS = 1e-9 * np.pi


@dataclass(frozen=True)
class BandPoint:
    k: float
    omega_k: float


def dispersion(params: CrwParams, k):
    """Band frequency ``omega_c - 2 xi cos k``."""
    w = params.omega_c - 2.0 * params.xi * np.cos(k)
    return float(w) if np.ndim(w) == 0 else w


def band_point(params: CrwParams, k: float) -> BandPoint:
    return BandPoint(float(k), dispersion(params, k))


def inverse_dispersion(params: CrwParams, omega):
    """Positive-branch wave number in (0, pi) for an in-band frequency.

    Raises
    ------
    OutsideBand
        If any ``|omega - omega_c| >= 2 xi``.
    """
    require_valid(params)
    x = (params.omega_c - np.asarray(omega, dtype=float)) / (2.0 * params.xi)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) >= 1.0):
        raise OutsideBand("photon frequency is not strictly inside the band")
    k = np.arccos(x)
    return float(k) if k.ndim == 0 else k


def _amplitudes(params: CrwParams, k):
    s = 2j * params.xi * np.sin(k)
    detuning = params.omega_c - 2.0 * params.xi * np.cos(k) - params.omega_e
    detuning = detuning + 0.5j * params.gamma_loss
    g2 = params.g**2
    denom = s * detuning - g2
    return (denom + g2) / denom, g2 / denom


def amplitudes(params: CrwParams, k):
    """Transmission and reflection amplitudes for an incoming wave number ``k``.

    ``k`` must lie strictly inside (0, pi); at the band edges the propagating
    ansatz degenerates (the limits there are ``t = 0``, ``r = -1`` for g > 0).
    """
    require_valid(params)
    kk = np.asarray(k, dtype=float)
    if np.any(~np.isfinite(kk)) or np.any(kk <= 0) or np.any(kk >= np.pi):
        raise OutsideBand("wave number must lie strictly inside (0, pi)")
    t, r = _amplitudes(params, kk)
    if t.ndim == 0:
        return complex(t), complex(r)
    return t, r


def probabilities_resonant(params: CrwParams, delta):
    """``(T, R)`` for an emitter resonant with the cavities, at detuning ``delta``."""
    require_valid(params)
    if params.omega_e != params.omega_c:
        raise ValidationError("resonant formula needs omega_e == omega_c", "omega_e")
    d = np.asarray(delta, dtype=float)
    if np.any(~np.isfinite(d)) or np.any(np.abs(d) >= 2.0 * params.xi):
        raise OutsideBand("detuning must satisfy |delta| < 2 xi")
    a = d**2 * (4.0 * params.xi**2 - d**2)
    g4 = params.g**4
    if g4 == 0:
        T = np.ones_like(a)
        R = np.zeros_like(a)
    else:
        T = a / (a + g4)
        R = g4 / (a + g4)
    if T.ndim == 0:
        return float(T), float(R)
    return T, R


def wave_numbers(params: CrwParams, omega) -> np.ndarray:
    """Like :func:`inverse_dispersion`, but band-edge points are clamped inward.

    Points beyond the band edge by more than rounding still raise.
    """
    require_valid(params)
    x = (params.omega_c - np.asarray(omega, dtype=float)) / (2.0 * params.xi)
    if np.any(np.abs(x) > 1.0 + 1e-12):
        raise OutsideBand("photon frequency lies outside the band")
    return np.clip(np.arccos(np.clip(x, -1.0, 1.0)), EDGE_EPS, np.pi - EDGE_EPS)


def response(params: CrwParams, grid: FrequencyGrid) -> SpectralResponse:
    """Amplitudes across ``grid``; edge rows come out as their limits."""
    k = wave_numbers(params, absolute_frequencies(grid, params))
    t, r = _amplitudes(params, k)
    return SpectralResponse(grid, t, r)

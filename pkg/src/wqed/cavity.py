"""
Emitter inside a single-mode cavity that is side-coupled to a waveguide.

The amplitudes are evaluated in the form multiplied through by the emitter
detuning, which removes the pole of the textbook expression at
``omega == omega_e``. For a directly coupled (in-line) cavity the roles of
transmission and reflection are swapped; only the side-coupled geometry is
modelled here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CavityParams,
    EmitterWaveguideParams,
    FrequencyGrid,
    SpectralResponse,
    ValidationError,
    absolute_frequencies,
    require_valid,
)
from . import continuum

__all__ = ["JcLevel", "jc_energies", "amplitudes", "response", "rabi_switch_contrast", "gamma_from_q"]


@dataclass(frozen=True)
class JcLevel:
    """Dressed-state doublet of the n-excitation Jaynes-Cummings manifold."""

    n: int
    e_plus: float
    e_minus: float

    @property
    def splitting(self) -> float:
        return self.e_plus - self.e_minus


def jc_energies(n: int, omega_c: float, g: float) -> JcLevel:
    """Resonant Jaynes-Cummings ladder energies ``n*omega_c +/- sqrt(n)*g``."""
    if int(n) != n or n < 1:
        raise ValidationError("n must be a positive integer (vacuum has no doublet)", "n")
    if g < 0 or not math.isfinite(g) or not math.isfinite(omega_c):
        raise ValidationError("g must be finite and non-negative", "g")
    n = int(n)
    split = math.sqrt(n) * g
    return JcLevel(n, n * omega_c + split, n * omega_c - split)


def amplitudes(params: CavityParams, omega):
    """Transmission and reflection amplitudes at photon frequency ``omega``."""
    require_valid(params)
    w = np.asarray(omega, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ValidationError("frequency must be finite", "omega")
    if params.g == 0:
        # empty cavity: a Lorentzian scatterer with the cavity as the emitter
        empty = EmitterWaveguideParams(
            params.gamma_right, params.gamma_left, params.kappa, params.omega_c
        )
        return continuum.amplitudes(empty, w - params.omega_c)
    gr, gl = params.gamma_right, params.gamma_left
    if gr + gl == 0:
        # cavity not coupled to the guide
        t = np.ones_like(w, dtype=complex)
        r = np.zeros_like(w, dtype=complex)
        return (complex(t), complex(r)) if t.ndim == 0 else (t, r)
    # per-point rate scale; the amplitudes depend only on ratios
    s = (
        np.abs(w - params.omega_e) + np.abs(w - params.omega_c)
        + params.gamma_loss + params.kappa + params.g + gr + gl
    )
    de = (w - params.omega_e) / s + 0.5j * (params.gamma_loss / s)
    dc = (w - params.omega_c) / s + 0.5j * (params.kappa / s)
    core = dc * de - (params.g / s) ** 2
    denom = core + 0.5j * de * (gr + gl) / s
    with np.errstate(invalid="ignore"):  # 0/0 only where de == 0, replaced below
        t = (core - 0.5j * de * (gr - gl) / s) / denom
        # ratio under the root is O(1), so tiny rates near a resonance survive
        gs = gr + gl
        r = -1j * (np.sqrt((gl / gs) * (gr / gs)) * (gs / s)) * de / denom
    # exact limit at the emitter frequency, even when g^2 underflows
    at_emitter = de == 0
    if np.any(at_emitter):
        t = np.where(at_emitter, 1.0 + 0j, t)
        r = np.where(at_emitter, 0j, r)
    if t.ndim == 0:
        return complex(t), complex(r)
    return t, r


def response(params: CavityParams, grid: FrequencyGrid) -> SpectralResponse:
    t, r = amplitudes(params, absolute_frequencies(grid, params))
    return SpectralResponse(grid, t, r)


def rabi_switch_contrast(params_weak: CavityParams, params_strong: CavityParams, probe: float):
    """Reflection probabilities at ``probe`` for two couplings of the same cavity."""
    if params_weak.__class__ is not params_strong.__class__:
        raise ValidationError("both parameter sets must be CavityParams")
    a = {k: v for k, v in vars(params_weak).items() if k != "g"}
    b = {k: v for k, v in vars(params_strong).items() if k != "g"}
    if a != b:
        raise ValidationError("weak and strong parameters may differ only in g", "g")
    _, r_weak = amplitudes(params_weak, probe)
    _, r_strong = amplitudes(params_strong, probe)
    return abs(r_weak) ** 2, abs(r_strong) ** 2


def gamma_from_q(omega_c: float, q: float) -> float:
    """Cavity-waveguide rate for symmetric coupling, ``omega_c / (2 q)``."""
    if not q > 0:
        raise ValidationError("quality factor must be positive", "q")
    if math.isinf(q):
        return 0.0
    return omega_c / (2.0 * q)

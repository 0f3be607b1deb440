"""
Two-level emitter in a continuous waveguide.

Closed-form single-photon amplitudes for asymmetric (including chiral)
coupling, with non-guided loss entering as ``delta -> delta + i*gamma/2``.
Rates are restricted to real non-negative values.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .core import (
    EmitterWaveguideParams,
    FrequencyGrid,
    SpectralResponse,
    ValidationError,
    absolute_frequencies,
    make_grid,
    require_valid,
)

__all__ = [
    "DetuningSweepResult",
    "amplitudes",
    "probabilities",
    "beta_factor",
    "fwhm_reflection",
    "response",
    "sweep",
    "detuning_switch_contrast",
    "chiral_switch_contrast",
]


def amplitudes(params: EmitterWaveguideParams, delta):
    """Transmission and reflection amplitudes at photon-emitter detuning ``delta``.

    Parameters
    ----------
    params : EmitterWaveguideParams
    delta : float or array_like
        Photon frequency minus ``params.omega_e``.

    Returns
    -------
    t, r : complex or ndarray of complex
    """
    require_valid(params)
    d = np.asarray(delta, dtype=float)
    if not np.all(np.isfinite(d)):
        raise ValidationError("detuning must be finite", "delta")
    gr, gl = params.gamma_right, params.gamma_left
    if gr + gl == 0:
        # uncoupled emitter: free propagation
        t = np.ones_like(d, dtype=complex)
        r = np.zeros_like(d, dtype=complex)
    else:
        # only ratios matter; scaling every point to O(1) keeps tiny rates
        # from underflowing
        s = 2 * np.abs(d) + params.gamma_loss + gr + gl
        dl = (2 * d) / s + 1j * (params.gamma_loss / s)
        a, b = (gr + gl) / s, (gr - gl) / s
        denom = dl + 1j * a
        t = (dl - 1j * b) / denom
        r = -2j * np.sqrt((gl / s) * (gr / s)) / denom
    if t.ndim == 0:
        return complex(t), complex(r)
    return t, r


def probabilities(params: EmitterWaveguideParams, delta):
    """Return ``(T, R, L)`` with ``L = 1 - T - R`` the loss probability."""
    t, r = amplitudes(params, delta)
    T = np.abs(t) ** 2
    R = np.abs(r) ** 2
    L = 1.0 - T - R
    if np.ndim(T) == 0:
        return float(T), float(R), float(L)
    return T, R, L


def beta_factor(params: EmitterWaveguideParams) -> float:
    """Fraction of emission that goes into the guided modes."""
    require_valid(params)
    guided = params.gamma_right + params.gamma_left
    total = guided + params.gamma_loss
    if total == 0:
        raise ValidationError("beta factor undefined when every rate is zero")
    return guided / total


def fwhm_reflection(params: EmitterWaveguideParams, rtol: float = 1e-10) -> float:
    """Full width at half maximum of the reflection line, found numerically.

    The half-maximum crossing on the positive-detuning side is bracketed
    around the analytic half width ``(gamma_right + gamma_left + gamma_loss)/2``
    and refined by bisection.
    """
    require_valid(params)
    if params.gamma_right == 0 or params.gamma_left == 0:
        raise ValidationError("reflection is identically zero; FWHM undefined")
    half = 0.5 * (params.gamma_right + params.gamma_left + params.gamma_loss)
    r_max = probabilities(params, 0.0)[1]

    def excess(d):
        return probabilities(params, d)[1] - 0.5 * r_max

    lo, hi = 0.5 * half, 2.0 * half
    while excess(hi) > 0:
        hi *= 2.0
    crossing = bisect(excess, lo, hi, xtol=rtol * half * 1e-2, rtol=rtol * 1e-2, maxiter=500)
    return 2.0 * crossing


def response(params: EmitterWaveguideParams, grid: FrequencyGrid) -> SpectralResponse:
    """Evaluate the amplitudes on every point of ``grid``."""
    delta = absolute_frequencies(grid, params) - params.omega_e
    t, r = amplitudes(params, delta)
    return SpectralResponse(grid, t, r)


@dataclass(frozen=True, eq=False)
class DetuningSweepResult:
    response: SpectralResponse
    loss_per_point: np.ndarray


def sweep(
    params: EmitterWaveguideParams,
    half_width: float = 10.0,
    n: int = 1001,
    grid: FrequencyGrid | None = None,
) -> DetuningSweepResult:
    """Detuning sweep centred on the emitter; ``half_width`` is in rate units."""
    if grid is None:
        grid = make_grid(0.0, half_width, n, frame="detuning-from-emitter")
    resp = response(params, grid)
    return DetuningSweepResult(resp, resp.loss)


def detuning_switch_contrast(params: EmitterWaveguideParams, shift: float, probe: float):
    """Reflection at a fixed probe before and after ``omega_e -> omega_e + shift``.

    ``probe`` is the detuning from the *initial* emitter frequency.
    """
    before = probabilities(params, probe)[1]
    after = probabilities(params, probe - shift)[1]
    return before, after


def chiral_switch_contrast(gamma_total: float, probe: float):
    """Reflection at ``probe`` for symmetric coupling and for one-sided coupling.

    Symmetric means ``gamma_right = gamma_left = gamma_total``; the chiral
    configuration keeps only ``gamma_left``. Both are lossless.
    """
    sym = EmitterWaveguideParams(gamma_total, gamma_total)
    chiral = EmitterWaveguideParams(0.0, gamma_total)
    return probabilities(sym, probe)[1], probabilities(chiral, probe)[1]

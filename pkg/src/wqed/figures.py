"""
Datasets for the standard single-photon switching curves.

Every dataset is regenerated from the closed-form amplitudes. Frequencies and
rates are in units of the emitter (or cavity) decay rate Gamma, except the
lattice datasets which use the hopping rate xi (``crw-band``) or the
emitter-cavity coupling g (``crw-scatter``).

===================  ==========================================================
id                   columns
===================  ==========================================================
lorentzian           delta, T, R
lorentzian-loss      delta, T, R, loss             (gamma = 2/9 Gamma)
crw-band             k, omega                      (omega_c = 0, xi = 1)
crw-scatter          delta, T, R                   (xi = 2 g, edges as limits)
detuning-switch      delta, R_before, R_shift_1fwhm, R_shift_5fwhm
chiral-switch        delta, R_symmetric, R_chiral
rabi-switch          delta, R_weak, R_strong       (g = 0 and g = 5 Gamma)
===================  ==========================================================
"""
from __future__ import annotations

import numpy as np

from .core import CavityParams, CrwParams, EmitterWaveguideParams, ValidationError, make_grid
from . import cavity, continuum, crw

__all__ = ["FIGURES", "figure_data"]


def _axis(half_width, n, center=0.0):
    return make_grid(center, half_width, n).points


def _lorentzian():
    d = _axis(10, 1001)
    T, R, _ = continuum.probabilities(EmitterWaveguideParams.symmetric(1.0), d)
    return ["delta", "T", "R"], [d, T, R]


def _lorentzian_loss():
    d = _axis(10, 1001)
    T, R, L = continuum.probabilities(EmitterWaveguideParams.symmetric(1.0, 2.0 / 9.0), d)
    return ["delta", "T", "R", "loss"], [d, T, R, L]


def _crw_band():
    k = np.linspace(-np.pi, np.pi, 1001)
    return ["k", "omega"], [k, crw.dispersion(CrwParams(0.0, 1.0, 0.0), k)]


def _crw_scatter():
    p = CrwParams(omega_c=0.0, xi=2.0, g=1.0, omega_e=0.0)
    d = _axis(4, 801)
    T = np.empty_like(d)
    R = np.empty_like(d)
    inner = np.abs(d) < 2 * p.xi
    T[inner], R[inner] = crw.probabilities_resonant(p, d[inner])
    # band edges: transmission limit 0, reflection limit 1
    T[~inner], R[~inner] = 0.0, 1.0
    return ["delta", "T", "R"], [d, T, R]


def _detuning_switch():
    d = _axis(12.5, 1251, 2.5)
    p = EmitterWaveguideParams.symmetric(1.0)
    R0 = continuum.probabilities(p, d)[1]
    R1 = continuum.probabilities(p, d - 2.0)[1]
    R5 = continuum.probabilities(p, d - 10.0)[1]
    return ["delta", "R_before", "R_shift_1fwhm", "R_shift_5fwhm"], [d, R0, R1, R5]


def _chiral_switch():
    d = _axis(10, 1001)
    R_sym = continuum.probabilities(EmitterWaveguideParams(1.0, 1.0), d)[1]
    R_chi = continuum.probabilities(EmitterWaveguideParams(0.0, 1.0), d)[1]
    return ["delta", "R_symmetric", "R_chiral"], [d, R_sym, R_chi]


def _rabi_switch():
    d = _axis(10, 4001)
    weak = CavityParams(g=0.0)
    strong = CavityParams(g=5.0)
    R_w = np.abs(cavity.amplitudes(weak, d)[1]) ** 2
    R_s = np.abs(cavity.amplitudes(strong, d)[1]) ** 2
    return ["delta", "R_weak", "R_strong"], [d, R_w, R_s]


FIGURES = {
    "lorentzian": _lorentzian,
    "lorentzian-loss": _lorentzian_loss,
    "crw-band": _crw_band,
    "crw-scatter": _crw_scatter,
    "detuning-switch": _detuning_switch,
    "chiral-switch": _chiral_switch,
    "rabi-switch": _rabi_switch,
}


def figure_data(figure_id: str):
    """Return ``(column_names, rows)`` for one dataset."""
    try:
        make = FIGURES[figure_id]
    except KeyError:
        raise ValidationError(f"unknown figure {figure_id!r}; choose from {sorted(FIGURES)}") from None
    names, cols = make()
    rows = [tuple(float(c[i]) for c in cols) for i in range(len(cols[0]))]
    return names, rows

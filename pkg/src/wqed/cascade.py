"""
Transfer-matrix composition of localized scatterers.

Each site is a symmetric two-port with amplitudes ``(t, r)``. Fields on either
side are written as ``A e^{ikx} + B e^{-ikx}`` in coordinates local to the
site, and the site matrix maps the left pair ``(A, B)`` onto the right pair.
Gaps between sites are plane-wave phase matrices. For a chain the total
matrix is ``M_N P_{N-1} ... P_1 M_1`` and the cascade amplitudes are
``t = 1/M22``, ``r = -M21/M22`` (every factor has unit determinant).
``transfer_product`` builds exactly that product. Sweeps go through
``cascade_amplitudes``, which composes the same sites pairwise as two-ports
(the scattering-matrix form of the product); it gives the same amplitudes
without the large intermediate entries the matrix product picks up near a
resonance.

The transmitted amplitude is referred to the last site's local origin, so it
carries the propagation phase ``exp(i k L)`` across the total length ``L``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    CavityParams,
    CrwParams,
    EmitterWaveguideParams,
    FrequencyGrid,
    NearTotalReflection,
    SpectralResponse,
    ValidationError,
    absolute_frequencies,
)
from . import cavity, continuum, crw

__all__ = [
    "SiteScatterer",
    "CascadeLayout",
    "TINY_T",
    "site_matrix",
    "scatterer_from_matrix",
    "propagation_matrix",
    "linear_dispersion",
    "lattice_dispersion",
    "site_amplitudes",
    "transfer_product",
    "cascade_amplitudes",
    "reflection_bandwidth",
]

TINY_T = 1e-12


@dataclass(frozen=True)
class SiteScatterer:
    t: complex
    r: complex

    def __post_init__(self):
        if abs(self.t) ** 2 + abs(self.r) ** 2 > 1 + 1e-12:
            raise ValidationError("|t|^2 + |r|^2 exceeds 1")


@dataclass(frozen=True)
class CascadeLayout:
    """Ordered scatterers and the gaps between them.

    ``sites`` holds parameter objects (emitter, cavity or lattice emitter);
    ``separations[i]`` is the distance between site ``i`` and ``i + 1`` in
    inverse wave-number units (lattice sites for a coupled-resonator chain).
    """

    sites: tuple
    separations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(self.sites))
        object.__setattr__(self, "separations", tuple(float(d) for d in self.separations))
        if not self.sites:
            raise ValidationError("a cascade needs at least one site", "sites")
        if len(self.separations) != len(self.sites) - 1:
            raise ValidationError("need exactly len(sites) - 1 separations", "separations")
        if any(not d > 0 for d in self.separations):
            raise ValidationError("separations must be positive", "separations")
        lattice = [isinstance(s, CrwParams) for s in self.sites]
        if any(lattice) and not all(lattice):
            raise ValidationError("lattice sites cannot be mixed with continuum sites", "sites")

    @property
    def on_lattice(self) -> bool:
        return isinstance(self.sites[0], CrwParams)


def site_matrix(s: SiteScatterer) -> np.ndarray:
    """Transfer matrix of a single symmetric scatterer."""
    t, r = complex(s.t), complex(s.r)
    if abs(t) <= TINY_T:
        raise NearTotalReflection("site transmission is zero; no finite transfer matrix")
    return np.array([[(t * t - r * r) / t, r / t], [-r / t, 1.0 / t]], dtype=complex)


def scatterer_from_matrix(m: np.ndarray) -> SiteScatterer:
    """Inverse of :func:`site_matrix` for a unit-determinant product."""
    return SiteScatterer(1.0 / m[1, 1], -m[1, 0] / m[1, 1])


def propagation_matrix(k, d: float) -> np.ndarray:
    """Free propagation over ``d``: ``diag(e^{ikd}, e^{-ikd})``."""
    if not d >= 0:
        raise ValidationError("propagation length must be non-negative", "d")
    phase = np.exp(1j * np.asarray(k, dtype=float) * d)
    if phase.ndim == 0:
        return np.diag([complex(phase), 1.0 / complex(phase)])
    out = np.zeros(phase.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = phase
    out[..., 1, 1] = 1.0 / phase
    return out


def linear_dispersion(v_g: float = 1.0, k0: float = 0.0, omega0: float = 0.0) -> Callable:
    """``k(omega) = k0 + (omega - omega0) / v_g`` for a continuous waveguide."""
    if not v_g > 0:
        raise ValidationError("group velocity must be positive", "v_g")

    def k_of_omega(omega):
        return k0 + (np.asarray(omega, dtype=float) - omega0) / v_g

    return k_of_omega


def lattice_dispersion(params: CrwParams) -> Callable:
    """Band-edge-clamped inverse dispersion of a coupled-resonator chain."""

    def k_of_omega(omega):
        return crw.wave_numbers(params, omega)

    return k_of_omega


def site_amplitudes(site, omega: np.ndarray, k: np.ndarray):
    """Single-site ``(t, r)`` arrays at absolute frequencies ``omega``."""
    if isinstance(site, EmitterWaveguideParams):
        return continuum.amplitudes(site, np.asarray(omega) - site.omega_e)
    if isinstance(site, CavityParams):
        return cavity.amplitudes(site, omega)
    if isinstance(site, CrwParams):
        return crw._amplitudes(site, k)
    raise ValidationError(f"unsupported site type {type(site).__name__}", "sites")


def _stack(t, r):
    m = np.empty(t.shape + (2, 2), dtype=complex)
    m[..., 0, 0] = (t * t - r * r) / t
    m[..., 0, 1] = r / t
    m[..., 1, 0] = -r / t
    m[..., 1, 1] = 1.0 / t
    return m


def _site_data(layout, grid, k_of_omega):
    omega = np.asarray(absolute_frequencies(grid, layout.sites[0]), dtype=float)
    if k_of_omega is None:
        k_of_omega = lattice_dispersion(layout.sites[0]) if layout.on_lattice else linear_dispersion()
    k = np.asarray(k_of_omega(omega), dtype=float)
    site_tr = [site_amplitudes(s, omega, k) for s in layout.sites]
    blocked = np.zeros(omega.shape, dtype=bool)
    for t, _ in site_tr:
        blocked |= np.abs(t) <= TINY_T
    return omega, k, site_tr, blocked


def transfer_product(
    layout: CascadeLayout,
    grid: FrequencyGrid,
    k_of_omega: Callable | None = None,
) -> np.ndarray:
    """Total transfer matrix ``M_N P ... P M_1`` at every grid point.

    Returns an array of shape ``(len(grid), 2, 2)``; ``t_N = 1 / M[:, 1, 1]``
    and ``r_N = -M[:, 1, 0] / M[:, 1, 1]``.

    Raises
    ------
    NearTotalReflection
        If any site has ``|t| <= TINY_T`` at any grid point.
    """
    _, k, site_tr, blocked = _site_data(layout, grid, k_of_omega)
    if blocked.any():
        raise NearTotalReflection(f"{int(blocked.sum())} grid point(s) hit a totally reflecting site")
    total = _stack(*site_tr[0])
    for (t, r), d in zip(site_tr[1:], layout.separations):
        total = _stack(t, r) @ (propagation_matrix(k, d) @ total)
    return total


def cascade_amplitudes(
    layout: CascadeLayout,
    grid: FrequencyGrid,
    k_of_omega: Callable | None = None,
) -> SpectralResponse:
    """Spectrum of the whole chain of scatterers.

    Grid frames other than ``absolute`` are taken relative to the first site.
    ``t`` is referred to the origin of the last site and ``r`` to the first,
    so for sites spread over a length ``L`` the transmission seen from the
    first site is ``t * exp(-1j * k * L)``.

    Points where some site has ``|t| <= TINY_T`` have no transfer matrix;
    there the chain is blocked (``t = 0``, and for lossless sites ``|r| = 1``)
    and the point is marked in ``SpectralResponse.flagged``.
    """
    omega, k, site_tr, blocked = _site_data(layout, grid, k_of_omega)

    # Compose with the scattering-matrix (star) product rather than by
    # multiplying transfer matrices: near resonance the transfer-matrix product
    # grows like prod 1/|t_i| and loses ~1e-9 of flux at N = 6, while the star
    # product stays O(1). Both give the same (t_N, r_N); tests check this.
    t_tot, r_left, r_right = (np.array(a, dtype=complex) for a in (site_tr[0][0], site_tr[0][1], site_tr[0][1]))
    for i, (t, r) in enumerate(site_tr[1:]):
        phase = np.exp(1j * k * layout.separations[i])
        loop = 1.0 - r_right * r * phase**2
        stuck = loop == 0  # only when light is already blocked
        loop = np.where(stuck, 1.0, loop)
        new_t = np.where(stuck, 0.0, t_tot * t * phase / loop)
        new_left = np.where(stuck, r_left, r_left + t_tot**2 * r * phase**2 / loop)
        new_right = np.where(stuck, r, r + t**2 * r_right * phase**2 / loop)
        t_tot, r_left, r_right = new_t, new_left, new_right

    if blocked.any():
        return SpectralResponse(grid, t_tot, r_left, flagged=blocked)
    return SpectralResponse(grid, t_tot, r_left)


def reflection_bandwidth(response: SpectralResponse, threshold: float) -> float:
    """Width of the contiguous ``R >= threshold`` window around the global R maximum.

    Crossings are located by linear interpolation between grid points; a
    window that reaches the grid boundary stops there. Returns 0 when the
    maximum is below the threshold.
    """
    if not 0 < threshold <= 1:
        raise ValidationError("threshold must lie in (0, 1]", "threshold")
    x = response.grid.points
    R = response.R
    i = int(np.argmax(R))
    if R[i] < threshold:
        return 0.0

    lo = i
    while lo > 0 and R[lo - 1] >= threshold:
        lo -= 1
    hi = i
    while hi < len(R) - 1 and R[hi + 1] >= threshold:
        hi += 1

    def crossing(inside, outside):
        frac = (R[inside] - threshold) / (R[inside] - R[outside])
        return x[inside] + frac * (x[outside] - x[inside])

    left = crossing(lo, lo - 1) if lo > 0 else x[0]
    right = crossing(hi, hi + 1) if hi < len(R) - 1 else x[-1]
    return float(right - left)

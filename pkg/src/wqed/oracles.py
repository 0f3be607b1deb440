"""
Brute-force checks for the lattice model.

``finite_chain_solve`` assembles the stationary single-excitation equations
of a finite tight-binding chain with emitters attached to interior sites and
solves them as one sparse linear system, with plane-wave rows at the two
ends fixing the incoming, reflected and transmitted waves.

``propagate_packet`` integrates the time-dependent Schrodinger equation of
the same chain for a Gaussian wave packet with classical fixed-step RK4 and
reads off the reflected and transmitted probability after the scattering has
finished. Both work in the frame rotating at ``omega_c``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from .core import CrwParams, OracleError, OutsideBand, ValidationError, require_valid
from . import crw

__all__ = [
    "Attachment",
    "FiniteChainProblem",
    "PropagationState",
    "PacketRun",
    "finite_chain_solve",
    "propagate_packet",
    "carrier_to_detuning",
    "detuning_to_carrier",
]


@dataclass(frozen=True)
class Attachment:
    """Emitter attached to lattice ``site`` (relative to the first emitter)."""

    site: int
    g: float
    omega_e: float


@dataclass(frozen=True)
class FiniteChainProblem:
    """Stationary scattering problem on an odd-length chain.

    Site indices run from ``-(n_sites // 2)`` to ``n_sites // 2``. Without an
    explicit ``emitters`` list a single emitter with ``params.g`` and
    ``params.omega_e`` sits at site 0.
    """

    n_sites: int
    params: CrwParams
    k_in: float
    emitters: Optional[tuple] = None

    def __post_init__(self):
        require_valid(self.params)
        if self.n_sites < 41 or self.n_sites % 2 == 0:
            raise ValidationError("n_sites must be odd and at least 41", "n_sites")
        if self.emitters is None:
            att = (Attachment(0, self.params.g, self.params.omega_e),)
        else:
            att = tuple(self.emitters)
        half = self.n_sites // 2
        for a in att:
            if abs(a.site) > half - 10:
                raise ValidationError("emitters must sit at least 10 sites from either end", "emitters")
            if a.g < 0:
                raise ValidationError("emitter coupling must be non-negative", "emitters")
        if len({a.site for a in att}) != len(att):
            raise ValidationError("at most one emitter per site", "emitters")
        object.__setattr__(self, "emitters", att)

    @property
    def half(self) -> int:
        return self.n_sites // 2


def finite_chain_solve(problem: FiniteChainProblem):
    """Solve the finite chain for the amplitudes ``(t, r)``.

    Unknowns are the site amplitudes ``u_j``, the emitter amplitudes, and
    ``r``, ``t``. Interior sites get the lattice equation
    ``(omega - omega_c) u_j + xi (u_{j-1} + u_{j+1}) - g u_e delta_{j,s} = 0``,
    each emitter ``(omega - omega_e) u_e - g u_s = 0``, and the two outermost
    sites on each side are pinned to ``e^{ikj} + r e^{-ikj}`` and
    ``t e^{ikj}``. ``t`` and ``r`` are referred to site 0.
    """
    p = problem.params
    k = problem.k_in
    if not 0 < k < math.pi:
        raise OutsideBand("k_in must lie strictly inside (0, pi)")
    omega = crw.dispersion(p, k)
    half = problem.half
    n = problem.n_sites
    ne = len(problem.emitters)
    idx_r, idx_t = n + ne, n + ne + 1
    size = n + ne + 2

    def col(j):
        return j + half

    rows, cols, vals = [], [], []
    rhs = np.zeros(size, dtype=complex)

    def put(i, j, v):
        rows.append(i)
        cols.append(j)
        vals.append(v)

    row = 0
    for j in range(-half + 1, half):
        put(row, col(j), omega - p.omega_c)
        put(row, col(j - 1), p.xi)
        put(row, col(j + 1), p.xi)
        row += 1
    for m, a in enumerate(problem.emitters):
        # couple emitter m into the equation of its host site
        put(col(a.site) - 1, n + m, -a.g)
        put(row, n + m, omega - a.omega_e + 0.5j * p.gamma_loss)
        put(row, col(a.site), -a.g)
        row += 1
    for j in (-half, -half + 1):
        put(row, col(j), 1.0)
        put(row, idx_r, -np.exp(-1j * k * j))
        rhs[row] = np.exp(1j * k * j)
        row += 1
    for j in (half - 1, half):
        put(row, col(j), 1.0)
        put(row, idx_t, -np.exp(1j * k * j))
        row += 1
    assert row == size

    a_mat = sp.csc_matrix((vals, (rows, cols)), shape=(size, size), dtype=complex)
    sol = spsolve(a_mat, rhs)
    if not np.all(np.isfinite(sol)):
        dense = a_mat.toarray()
        raise OracleError(f"singular chain system (condition ~ {np.linalg.cond(dense):.3g})")
    return complex(sol[idx_t]), complex(sol[idx_r])


def carrier_to_detuning(k0: float, params: CrwParams) -> float:
    """Photon-emitter detuning of the band mode with wave number ``k0``."""
    if not 0 < k0 < math.pi:
        raise OutsideBand("carrier wave number must lie strictly inside (0, pi)")
    return crw.dispersion(params, k0) - params.omega_e


def detuning_to_carrier(delta: float, params: CrwParams) -> float:
    """Inverse of :func:`carrier_to_detuning` on the positive branch."""
    return crw.inverse_dispersion(params, params.omega_e + delta)


@dataclass
class PropagationState:
    u_sites: np.ndarray
    u_emitters: np.ndarray
    time: float = 0.0

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.u_sites) ** 2) + np.sum(np.abs(self.u_emitters) ** 2))


@dataclass
class PacketRun:
    T_est: float
    R_est: float
    norm_drift: float
    t_final: float
    steps: int
    trajectory: list = field(default_factory=list)
    final: Optional[PropagationState] = None


def _rhs(u, ue, site_idx, g, de, xi):
    # i du/dt = H u in the frame rotating at omega_c
    du = np.zeros_like(u)
    du[1:] += xi * u[:-1]
    du[:-1] += xi * u[1:]
    du *= 1j  # -i * (-xi) hopping
    du[site_idx] += -1j * g * ue
    due = -1j * (de * ue + g * u[site_idx])
    return du, due


def propagate_packet(
    lattice_length: int,
    params: CrwParams,
    packet_center: int,
    packet_width: float,
    k0: float = math.pi / 2,
    t_final: Optional[float] = None,
    dt: Optional[float] = None,
    emitter_site: Optional[int] = None,
    sample_every: int = 0,
    max_time: Optional[float] = None,
    edge_tol: float = 1e-10,
) -> PacketRun:
    """Scatter a Gaussian lattice packet off one emitter and measure T and R.

    Parameters
    ----------
    lattice_length : int
        Number of sites; sites are indexed ``0 .. lattice_length - 1``.
    params : CrwParams
        Chain and emitter parameters (``g = 0`` means no emitter).
    packet_center, packet_width : int, float
        Initial centre site and standard deviation (in sites) of ``|u|^2``.
    k0 : float
        Carrier wave number.
    t_final : float, optional
        Fixed end time. By default the run stops at the first time after the
        packet centroid has passed ``5 * packet_width`` beyond the emitter at
        which the emitter population is below 1e-6.
    dt : float, optional
        Step size, default ``0.05 / xi``.
    emitter_site : int, optional
        Default is the middle of the lattice.
    sample_every : int
        Record ``(time, site, |u|^2)`` rows every this many steps (0 = never).

    Raises
    ------
    OracleError
        On norm drift above 1e-6, or when the packet reaches the lattice ends.
    """
    require_valid(params)
    n = int(lattice_length)
    xi = params.xi
    if emitter_site is None:
        emitter_site = n // 2
    if not 0 < k0 < math.pi:
        raise OutsideBand("carrier must be a propagating wave number")
    if not (0 < packet_center < emitter_site < n - 1):
        raise ValidationError("packet must start left of the emitter, inside the lattice")
    if packet_width <= 0:
        raise ValidationError("packet width must be positive", "packet_width")
    if dt is None:
        dt = 0.05 / xi
    v_g = 2 * xi * math.sin(k0)
    if packet_center - 6 * packet_width < 0:
        raise OracleError("packet touched boundary: initial packet does not fit the lattice")

    j = np.arange(n)
    u = np.exp(-((j - packet_center) ** 2) / (4 * packet_width**2) + 1j * k0 * j).astype(complex)
    u /= np.sqrt(np.sum(np.abs(u) ** 2))
    ue = np.zeros(1, dtype=complex)
    g = params.g
    de = params.omega_e - params.omega_c - 0.5j * params.gamma_loss

    min_time = (emitter_site - packet_center + 5 * packet_width) / v_g
    if max_time is None:
        max_time = 4 * min_time
    edge = max(1, int(0.01 * n))

    norm0 = 1.0
    time = 0.0
    steps = 0
    traj = []
    max_drift = 0.0

    def edge_mass(u):
        return float(np.sum(np.abs(u[:edge]) ** 2) + np.sum(np.abs(u[-edge:]) ** 2))

    while True:
        if t_final is not None:
            if time >= t_final - 1e-12 * dt:
                break
        elif time >= min_time and abs(ue[0]) ** 2 < 1e-6:
            break
        if time > max_time:
            raise OracleError("scattering did not complete within the time limit")
        h = dt if t_final is None else min(dt, t_final - time)
        k1, l1 = _rhs(u, ue[0], emitter_site, g, de, xi)
        k2, l2 = _rhs(u + 0.5 * h * k1, ue[0] + 0.5 * h * l1, emitter_site, g, de, xi)
        k3, l3 = _rhs(u + 0.5 * h * k2, ue[0] + 0.5 * h * l2, emitter_site, g, de, xi)
        k4, l4 = _rhs(u + h * k3, ue[0] + h * l3, emitter_site, g, de, xi)
        u = u + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        ue = ue + (h / 6) * (l1 + 2 * l2 + 2 * l3 + l4)
        time += h
        steps += 1
        if steps % 200 == 0:
            if edge_mass(u) > edge_tol:
                raise OracleError("packet touched boundary")
            if params.gamma_loss == 0:
                drift = abs(np.sum(np.abs(u) ** 2) + abs(ue[0]) ** 2 - norm0)
                max_drift = max(max_drift, drift)
                if drift > 1e-6:
                    raise OracleError(f"norm drift {drift:.3g} exceeds 1e-6")
        if sample_every and steps % sample_every == 0:
            dens = np.abs(u) ** 2
            traj.extend((time, int(s), float(dens[s])) for s in range(n))

    if edge_mass(u) > edge_tol:
        raise OracleError("packet touched boundary")
    dens = np.abs(u) ** 2
    if params.gamma_loss == 0:
        max_drift = max(max_drift, abs(dens.sum() + abs(ue[0]) ** 2 - norm0))
    state = PropagationState(u, ue, time)
    return PacketRun(
        T_est=float(dens[emitter_site + 1:].sum()),
        R_est=float(dens[:emitter_site].sum()),
        norm_drift=float(max_drift),
        t_final=time,
        steps=steps,
        trajectory=traj,
        final=state,
    )

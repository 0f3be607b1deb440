"""
Many emitters, finite packets
=============================

Identical emitters a quarter wavelength apart act like a Bragg mirror:
the band of near-perfect reflection widens with the number of emitters.
Real photons are wave packets, not plane waves, so the last part measures
how much of a Gaussian packet a switch actually routes.
"""

import math

from wqed import EmitterWaveguideParams, cascade, continuum, make_grid, packets

p = EmitterWaveguideParams.symmetric(1.0)
grid = make_grid(0.0, 5.0, 20001, "detuning-from-emitter")
# kd = pi/2 at resonance; the group velocity sets how fast the phase drifts
k_of = cascade.linear_dispersion(v_g=100.0, k0=math.pi / 2, omega0=0.0)

for n in (1, 2, 4, 8):
    layout = cascade.CascadeLayout((p,) * n, (1.0,) * (n - 1))
    resp = cascade.cascade_amplitudes(layout, grid, k_of)
    print(f"N = {n}: width of R >= 0.99 is {cascade.reflection_bandwidth(resp, 0.99):.4f}")

###############################################################################
# Packets
# -------
# A packet much narrower than the line is reflected almost entirely; one as
# wide as the line loses a third of its reflection.

for sigma in (0.01, 0.1, 1.0):
    g = make_grid(0.0, 10 * sigma, 641, "detuning-from-emitter")
    resp = continuum.response(p, g)
    pk = packets.gaussian_packet(0.0, sigma, g)
    e_t, e_r, p_t, p_r = packets.efficiency(resp, pk)
    f_t, f_r = packets.fidelity(resp, pk)
    print(f"sigma = {sigma:5.2f}: p_r = {p_r:.5f}  E_r = {e_r:.5f}  F_r = {f_r:.5f}")

###############################################################################
# A detuning switch for a narrow packet: on = resonant, off = shifted 10.

g = make_grid(0.0, 0.1, 641, "absolute")
pk = packets.gaussian_packet(0.0, 0.01, g)
on = continuum.response(p, g)
off = continuum.response(EmitterWaveguideParams.symmetric(1.0, omega_e=10.0), g)
print(packets.switch_report(on, off, pk))

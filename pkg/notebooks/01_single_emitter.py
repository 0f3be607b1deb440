"""
A single emitter in a waveguide
===============================

One two-level emitter sits on a waveguide and decays into both directions
at the same rate. On resonance it is a perfect mirror; a photon detuned by
more than a couple of linewidths sails past.
"""

import numpy as np

from wqed import EmitterWaveguideParams, continuum

# rates are in units of the one-way decay rate
p = EmitterWaveguideParams.symmetric(1.0)

res = continuum.sweep(p, half_width=10.0, n=21)
for d, T, R in zip(res.response.grid.points, res.response.T, res.response.R):
    print(f"delta = {d:6.1f}   T = {T:.4f}   R = {R:.4f}")

# The reflection line is a Lorentzian twice as wide as the one-way rate.
print("FWHM of R:", continuum.fwhm_reflection(p))

###############################################################################
# Loss
# ----
# A non-guided decay channel leaks some of the photon out of the waveguide.
# With gamma = 2/9 the emitter sends 90% of its light into the guide.

lossy = EmitterWaveguideParams.symmetric(1.0, 2.0 / 9.0)
T, R, L = continuum.probabilities(lossy, 0.0)
print(f"on resonance: T = {T:.4f}, R = {R:.4f}, lost = {L:.4f}")
print("beta factor:", continuum.beta_factor(lossy))

###############################################################################
# Two ways to switch
# ------------------
# Shifting the emitter by one or five linewidths switches a probe that was
# on resonance from reflected to transmitted.

for shift in (2.0, 10.0):
    before, after = continuum.detuning_switch_contrast(p, shift, probe=0.0)
    print(f"shift {shift:4.1f}: R {before:.3f} -> {after:.4f}")

# Coupling to only one direction removes reflection altogether.
r_sym, r_chiral = continuum.chiral_switch_contrast(1.0, probe=np.array(0.0))
print("symmetric R =", r_sym, " one-sided R =", r_chiral)

"""
Emitter in a cavity: the vacuum Rabi doublet
============================================

A single-mode cavity side-coupled to a waveguide reflects on its own
resonance. Put a resonant emitter inside and the single reflection line
splits into a doublet at +-g, leaving the bare cavity frequency transparent.
"""

import numpy as np

from wqed import CavityParams, make_grid
from wqed.cavity import gamma_from_q, jc_energies, rabi_switch_contrast, response

empty = CavityParams(g=0.0)
strong = CavityParams(g=5.0)

grid = make_grid(0.0, 10.0, 4001, "detuning-from-cavity")
R_empty = response(empty, grid).R
R_strong = response(strong, grid).R
x = grid.points

peaks = x[np.argmax(np.where(x < 0, R_strong, -1))], x[np.argmax(np.where(x > 0, R_strong, -1))]
print("strong-coupling reflection maxima at", peaks)
print("R at the cavity frequency: empty", R_empty[2000], " with emitter", R_strong[2000])

# Tuning g between the two regimes is itself a switch for a probe at w_c.
print("R (g = 0, g = 5):", rabi_switch_contrast(empty, strong, 0.0))

###############################################################################
# The ladder
# ----------
# The dressed-state splitting grows like sqrt(n), which is what makes the
# system nonlinear at the single-photon level.

for n in (1, 2, 3):
    lvl = jc_energies(n, omega_c=0.0, g=5.0)
    print(f"n = {n}: E+ = {lvl.e_plus:+.3f}, E- = {lvl.e_minus:+.3f}, splitting {lvl.splitting:.3f}")

# A cavity with Q = 1e4 at w_c = 1 leaks at rate 5e-5 into each direction.
print("rate from Q:", gamma_from_q(1.0, 1e4))

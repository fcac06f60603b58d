"""Coherence spectra of the seven wavelet species and the type-4 tail.

Runs at n=128 by default; pass a grid size (e.g. 256) as the first argument.
"""
import sys

import numpy as np

from helwave import coherence_spectrum, ray_profile, species_center, synth_basis_function, tail_fit
from helwave.meyer import max_level

n = int(sys.argv[1]) if len(sys.argv) > 1 else 128
j = max_level(n)
print(f"n={n}, j={j}")
print("eps  |u|^2 shell at r=0.25   z part     at r=0.4")
for eps in range(1, 8):
    u = synth_basis_function((j, eps, (0, 0, 0)), "+", n)
    spec = coherence_spectrum(u, species_center(j, eps))
    i = np.argmin(np.abs(spec.radii - 0.25))
    print(f"{eps:>3d}  {spec.values[i]:.3e}           {spec.component('z')[i]:.3e}  {spec.at(0.4):.3e}")

u = synth_basis_function((j, 4, (0, 0, 0)), "+", n)
c = species_center(j, 4)
for label, direction in [("in-plane diagonal", (1, 1, 0)), ("polar", (0, 0, 1))]:
    fit = tail_fit(ray_profile(u, "x", c, direction))
    print(f"{label:>17s}: exponent {fit.exponent:+.3f}, power-law rms {fit.residual:.3f}, "
          f"exponential rms {fit.exponential_residual:.3f}, algebraic={fit.algebraic}")

"""Split a random field into positive/negative helicity, gradient and mean."""
import numpy as np

from helwave import decompose, fft_vector, project, spectral_divergence
from helwave.fieldio import generate

u = generate("random", (42,), 32)
U = fft_vector(u)

energies = decompose(U).energies()
for name, e in energies.items():
    print(f"{name:>9s}  {e:.6f}")
print(f"{'sum':>9s}  {sum(energies.values()):.6f}   |U|^2 = {U.l2_norm() ** 2:.6f}")

# The Sigma+ part carries no divergence
plus = project(U, "+")
print("max |div P+ u| :", np.max(np.abs(spectral_divergence(plus).coeffs)))

# Known eigenfields fall into a single subspace
for kind, params in [("abc", (1, 1, 1)), ("beltrami-minus", ()), ("gradient", ()), ("constant", (1, 2, 3))]:
    e = decompose(fft_vector(generate(kind, params, 16))).energies()
    print(f"{kind:>15s} ->", max(e, key=e.get))

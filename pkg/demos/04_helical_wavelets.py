"""Divergence-free helical wavelets and the vector transform."""
import numpy as np

from helwave import fft_vector, forward, inverse, spectral_divergence, synth_basis_function
from helwave.fieldio import default_band, generate

n, jmax = 32, 3
u = generate("random-solenoidal", (7, default_band(n, jmax)), n)
C = forward(u, jmax)
print("coefficients per polarity:", C.plus.count() - 1, " harmonic:", C.harmonic)
print("energy  field:", u.mean_square(), " coefficients:", C.energy())
print("round trip max error:", np.max(np.abs(inverse(C).samples - u.samples)))
print("energy in Sigma-:", C.minus.energy(), " in D:", C.zero.energy())

w, imag = synth_basis_function((2, 3, (1, 0, 2)), "+", n, return_imag=True)
print("basis function norm:", np.sqrt(w.mean_square()), " discarded imaginary part:", imag)
print("max spectral divergence:", np.max(np.abs(spectral_divergence(fft_vector(w)).coeffs)))

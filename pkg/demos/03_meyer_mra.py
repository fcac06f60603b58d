"""The Meyer filters and the periodic 3D wavelet transform of a scalar."""
import numpy as np

from helwave import analyze, meyer_phi_hat, meyer_psi_hat, partition_check, synthesize
from helwave.fourier import GridScalarField, fft_scalar

k = np.linspace(0, 1.5, 7)
print("k          ", k)
print("phi_hat    ", np.round(meyer_phi_hat(k), 4))
print("|psi_hat|  ", np.round(np.abs(meyer_psi_hat(k)), 4))
print("partition of unity deviation:", partition_check(np.linspace(-2, 2, 10_000)))

n = 32
x = np.arange(n) / n
X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
f = np.exp(np.cos(2 * np.pi * X) + 0.5 * np.sin(2 * np.pi * (Y - Z)))
F = fft_scalar(GridScalarField(n, f))

C = analyze(F, 3)
print("coefficients:", C.count(), " lossy:", C.lossy, f" residual energy: {C.residual:.2e}")
for j, block in enumerate(C.levels):
    print(f"level {j}: energy {np.sum(np.abs(block) ** 2):.3e}")
back = synthesize(C)
print("max spectral difference (the out-of-band remainder):", np.max(np.abs(back.coeffs - F.coeffs)))

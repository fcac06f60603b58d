"""Helical wavelet transform of vector fields.

A field ``u`` is represented by the coefficients

    u_{lambda,s} = < P_s^dagger psi_lambda, u >,   s in {+, -, 0}

over the zero-mean Meyer system ``psi_lambda`` (levels ``0..jmax``) plus its
uniform (harmonic) part. The forward transform is FFT, projection on the
helical vectors, then scalar wavelet analysis; the last two steps are done
together in the Fourier domain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fourier import (
    GridVectorField,
    SpectralVector,
    check_grid_size,
    fft_vector,
    ifft_vector,
    ifft_vector_complex,
)
from .helical import POLARITIES, Polarity, uniform_triad
from .hodge import pull_up, pull_up_adjoint
from .meyer import (
    WaveletCoeffs,
    WaveletIndex,
    analyze,
    check_level,
    scaling_fourier_coeffs,
    synthesize,
    wavelet_fourier_coeffs,
)

__all__ = [
    "HelicalWaveletCoeffs",
    "forward",
    "forward_spectral",
    "inverse",
    "inverse_spectral",
    "basis_spectrum",
    "synth_basis_function",
    "solenoidal_scaling_function",
]


@dataclass
class HelicalWaveletCoeffs:
    """Per-polarity wavelet coefficients plus the harmonic vector."""

    n: int
    jmax: int
    plus: WaveletCoeffs
    minus: WaveletCoeffs
    zero: WaveletCoeffs
    harmonic: np.ndarray

    def __post_init__(self):
        check_grid_size(self.n)
        self.harmonic = np.asarray(self.harmonic, dtype=float).reshape(3)

    def __getitem__(self, s) -> WaveletCoeffs:
        s = Polarity.parse(s)
        return {Polarity.PLUS: self.plus, Polarity.MINUS: self.minus, Polarity.ZERO: self.zero}[s]

    @classmethod
    def zeros(cls, n: int, jmax: int) -> "HelicalWaveletCoeffs":
        return cls(n, jmax, *(WaveletCoeffs.zeros(n, jmax) for _ in POLARITIES), np.zeros(3))

    def count(self) -> int:
        return sum(self[s].count() - 1 for s in POLARITIES) + 3

    def energy(self) -> float:
        return sum(self[s].energy() for s in POLARITIES) + float(np.sum(self.harmonic**2))

    @property
    def residual(self) -> float:
        """Energy of the input that fell outside the represented band."""
        return sum(self[s].residual for s in POLARITIES)

    @property
    def lossy(self) -> bool:
        return any(self[s].lossy for s in POLARITIES)


def forward_spectral(U: SpectralVector, jmax: int) -> HelicalWaveletCoeffs:
    check_level(jmax, U.n)
    parts = []
    for s in POLARITIES:
        coeffs = analyze(pull_up_adjoint(U, s), jmax)
        coeffs.mean = 0j
        parts.append(coeffs)
    harmonic = U.coeffs[:, 0, 0, 0].real
    return HelicalWaveletCoeffs(U.n, jmax, *parts, harmonic)


def forward(u: GridVectorField, jmax: int) -> HelicalWaveletCoeffs:
    """Helical wavelet coefficients of a real grid field.

    Content outside the band of level ``jmax`` is not an error: it is reported
    through ``residual`` and ``lossy`` on the result.
    """
    return forward_spectral(fft_vector(u), jmax)


def inverse_spectral(C: HelicalWaveletCoeffs) -> SpectralVector:
    coeffs = np.zeros((3,) + (C.n,) * 3, dtype=complex)
    for s in POLARITIES:
        scalar = synthesize(C[s])
        scalar.coeffs[0, 0, 0] = 0.0
        coeffs += pull_up(scalar, s).coeffs
    coeffs[:, 0, 0, 0] = C.harmonic
    return SpectralVector(C.n, coeffs, True)


def inverse(C: HelicalWaveletCoeffs) -> GridVectorField:
    return ifft_vector(inverse_spectral(C))


def basis_spectrum(idx, s, n: int) -> SpectralVector:
    """Spectrum of the helical wavelet ``P_s^dagger psi_idx``."""
    return pull_up(wavelet_fourier_coeffs(idx, n), s)


def synth_basis_function(idx, s, n: int, *, return_imag: bool = False):
    """Grid samples of the helical wavelet ``P_s^dagger psi_idx``.

    The field is real up to rounding; with ``return_imag=True`` the largest
    discarded imaginary part is returned alongside it.
    """
    idx = WaveletIndex(int(idx[0]), int(idx[1]), tuple(int(c) for c in idx[2]))
    U = basis_spectrum(idx, s, n)
    values = ifft_vector_complex(U)
    field = GridVectorField(n, values.real)
    if return_imag:
        return field, float(np.max(np.abs(values.imag)))
    return field


def solenoidal_scaling_function(j: int, s, n: int, loc=(0, 0, 0)) -> GridVectorField:
    """Pulled-up scaling function ``phi_hat_j(0) h(0, s) + P_s^dagger phi_{j,loc}``.

    The uniform part uses :func:`helwave.helical.uniform_triad`; the real part
    of the field is returned.
    """
    s = Polarity.parse(s)
    n = check_grid_size(n)
    phi = scaling_fourier_coeffs(j, loc, n)
    U = pull_up(phi, s)
    coeffs = U.coeffs.copy()
    coeffs[:, 0, 0, 0] = phi.coeffs[0, 0, 0] * uniform_triad(s)
    return GridVectorField(n, ifft_vector_complex(SpectralVector(n, coeffs)).real)

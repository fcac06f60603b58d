"""Grid and spectral fields on the periodic unit cube.

Grid samples live at ``x = (i/N, j/N, k/N)`` and are stored as arrays indexed
``[ix, iy, iz]``; flattening with ``order="F"`` gives the x-fastest layout used
on disk. Spectra use the FFT-native layout of ``scipy.fft``: array index ``i``
along an axis holds wavenumber ``i`` for ``i < N/2`` and ``i - N`` otherwise.
The coefficient at ``k`` multiplies ``exp(2 pi i k.x)`` and the forward
transform carries the ``1/N^3`` factor.

The Nyquist plane (``|k_i| = N/2`` on any axis) is not retained: it is zeroed
on analysis and synthesis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import scipy.fft

__all__ = [
    "Wavevector",
    "GridScalarField",
    "GridVectorField",
    "SpectralScalar",
    "SpectralVector",
    "check_grid_size",
    "wavenumbers",
    "retained_mask",
    "index_of",
    "wavevector_at",
    "fft_scalar",
    "ifft_scalar",
    "fft_vector",
    "ifft_vector",
    "ifft_vector_complex",
    "spectral_divergence",
    "spectral_curl",
    "sobolev_norm",
    "parity",
    "grid_coordinates",
]


class Wavevector(NamedTuple):
    """Integer wavevector (cycles per unit length)."""

    kx: int
    ky: int
    kz: int

    def __neg__(self) -> "Wavevector":
        return Wavevector(-self.kx, -self.ky, -self.kz)

    def norm(self) -> float:
        return float(np.sqrt(self.kx**2 + self.ky**2 + self.kz**2))


def check_grid_size(n: int) -> int:
    """Validate a per-axis grid size and return it as an ``int``."""
    n = int(n)
    if n < 4 or n & (n - 1):
        raise ValueError(f"grid size must be a power of two >= 4, got {n}")
    return n


def _check_samples(samples: np.ndarray, n: int, leading: tuple[int, ...]) -> None:
    expected = leading + (n, n, n)
    if samples.shape != expected:
        raise ValueError(f"expected array of shape {expected}, got {samples.shape}")


@dataclass(frozen=True)
class GridScalarField:
    """Real samples of a scalar field on an ``n^3`` lattice."""

    n: int
    samples: np.ndarray

    def __post_init__(self):
        check_grid_size(self.n)
        samples = np.asarray(self.samples, dtype=float)
        _check_samples(samples, self.n, ())
        object.__setattr__(self, "samples", samples)


@dataclass(frozen=True)
class GridVectorField:
    """Real samples of a vector field, array of shape ``(3, n, n, n)``."""

    n: int
    samples: np.ndarray

    def __post_init__(self):
        check_grid_size(self.n)
        samples = np.asarray(self.samples, dtype=float)
        _check_samples(samples, self.n, (3,))
        object.__setattr__(self, "samples", samples)

    @property
    def ux(self) -> np.ndarray:
        return self.samples[0]

    @property
    def uy(self) -> np.ndarray:
        return self.samples[1]

    @property
    def uz(self) -> np.ndarray:
        return self.samples[2]

    @classmethod
    def from_components(cls, ux, uy, uz) -> "GridVectorField":
        ux = np.asarray(ux, dtype=float)
        return cls(ux.shape[0], np.stack([ux, uy, uz]))

    def mean_square(self) -> float:
        return float(np.mean(np.sum(self.samples**2, axis=0)))


@dataclass(frozen=True)
class SpectralScalar:
    """Fourier coefficients of a scalar field in FFT-native layout.

    ``real_origin`` records that the coefficients came from (or must
    synthesize to) a real field, i.e. they are Hermitian symmetric.
    """

    n: int
    coeffs: np.ndarray
    real_origin: bool = False

    def __post_init__(self):
        check_grid_size(self.n)
        coeffs = np.asarray(self.coeffs, dtype=complex)
        _check_samples(coeffs, self.n, ())
        object.__setattr__(self, "coeffs", coeffs)

    def __getitem__(self, k) -> complex:
        return complex(self.coeffs[index_of(k, self.n)])

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))


@dataclass(frozen=True)
class SpectralVector:
    """Cartesian Fourier coefficients, array of shape ``(3, n, n, n)``."""

    n: int
    coeffs: np.ndarray
    real_origin: bool = False

    def __post_init__(self):
        check_grid_size(self.n)
        coeffs = np.asarray(self.coeffs, dtype=complex)
        _check_samples(coeffs, self.n, (3,))
        object.__setattr__(self, "coeffs", coeffs)

    def component(self, axis: int) -> SpectralScalar:
        return SpectralScalar(self.n, self.coeffs[axis], self.real_origin)

    @classmethod
    def from_components(cls, fx: SpectralScalar, fy: SpectralScalar, fz: SpectralScalar):
        real = fx.real_origin and fy.real_origin and fz.real_origin
        return cls(fx.n, np.stack([fx.coeffs, fy.coeffs, fz.coeffs]), real)

    def __getitem__(self, k) -> np.ndarray:
        return self.coeffs[(slice(None),) + index_of(k, self.n)]

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))


@lru_cache(maxsize=None)
def _wavenumbers(n: int) -> np.ndarray:
    k = np.rint(np.fft.fftfreq(n, 1.0 / n)).astype(np.int64)
    k.flags.writeable = False
    return k


def wavenumbers(n: int) -> np.ndarray:
    """Signed integer wavenumbers along one axis, FFT-native order."""
    return _wavenumbers(check_grid_size(n))


@lru_cache(maxsize=None)
def _retained_mask(n: int) -> np.ndarray:
    ok = np.abs(_wavenumbers(n)) < n // 2
    mask = ok[:, None, None] & ok[None, :, None] & ok[None, None, :]
    mask.flags.writeable = False
    return mask


def retained_mask(n: int) -> np.ndarray:
    """Boolean ``(n, n, n)`` mask of modes with every ``|k_i| <= n/2 - 1``."""
    return _retained_mask(check_grid_size(n))


def index_of(k, n: int) -> tuple[int, int, int]:
    """Array index of wavevector ``k`` in the FFT-native layout."""
    half = n // 2
    out = []
    for c in k:
        c = int(c)
        if not -half < c < half:
            raise ValueError(f"wavevector {tuple(k)} outside the retained band of n={n}")
        out.append(c % n)
    return tuple(out)


def wavevector_at(index, n: int) -> Wavevector:
    """Inverse of :func:`index_of`."""
    k = wavenumbers(n)
    return Wavevector(*(int(k[i]) for i in index))


def _squared_magnitude(n: int) -> np.ndarray:
    k = wavenumbers(n).astype(float)
    return k[:, None, None] ** 2 + k[None, :, None] ** 2 + k[None, None, :] ** 2


def fft_scalar(f: GridScalarField) -> SpectralScalar:
    coeffs = scipy.fft.fftn(f.samples) / f.n**3
    coeffs[~retained_mask(f.n)] = 0.0
    return SpectralScalar(f.n, coeffs, real_origin=True)


def _synthesize(coeffs: np.ndarray, n: int, axes) -> np.ndarray:
    c = np.where(retained_mask(n), coeffs, 0.0)
    return scipy.fft.ifftn(c, axes=axes) * n**3


def ifft_scalar(F: SpectralScalar) -> GridScalarField:
    """Synthesize grid samples; the imaginary part is discarded."""
    return GridScalarField(F.n, _synthesize(F.coeffs, F.n, (0, 1, 2)).real)


def fft_vector(u: GridVectorField) -> SpectralVector:
    coeffs = scipy.fft.fftn(u.samples, axes=(1, 2, 3)) / u.n**3
    coeffs[:, ~retained_mask(u.n)] = 0.0
    return SpectralVector(u.n, coeffs, real_origin=True)


def ifft_vector(U: SpectralVector) -> GridVectorField:
    return GridVectorField(U.n, _synthesize(U.coeffs, U.n, (1, 2, 3)).real)


def ifft_vector_complex(U: SpectralVector) -> np.ndarray:
    """Complex synthesis, for checking how far a spectrum is from a real field."""
    return _synthesize(U.coeffs, U.n, (1, 2, 3))


def _ik(n: int):
    k = 2j * np.pi * wavenumbers(n)
    return k[:, None, None], k[None, :, None], k[None, None, :]


def spectral_divergence(U: SpectralVector) -> SpectralScalar:
    ikx, iky, ikz = _ik(U.n)
    c = U.coeffs
    return SpectralScalar(U.n, ikx * c[0] + iky * c[1] + ikz * c[2], U.real_origin)


def spectral_curl(U: SpectralVector) -> SpectralVector:
    ikx, iky, ikz = _ik(U.n)
    c = U.coeffs
    curl = np.stack(
        [
            iky * c[2] - ikz * c[1],
            ikz * c[0] - ikx * c[2],
            ikx * c[1] - iky * c[0],
        ]
    )
    return SpectralVector(U.n, curl, U.real_origin)


def sobolev_norm(F: SpectralScalar, r: float) -> float:
    """Sobolev-type norm with weight ``(1 + |k|^2)^(r/2)`` on ``|F(k)|^2``."""
    r = float(r)
    if not np.isfinite(r):
        raise ValueError("Sobolev order must be finite")
    weight = (1.0 + _squared_magnitude(F.n)) ** (r / 2)
    return float(np.sqrt(np.sum(weight * np.abs(F.coeffs) ** 2)))


def _reflect(coeffs: np.ndarray) -> np.ndarray:
    # index i -> (-i) mod n on the last three axes
    out = coeffs
    for axis in (-3, -2, -1):
        out = np.roll(np.flip(out, axis=axis), 1, axis=axis)
    return out


def parity(F):
    """Spectrum of the reflected field ``u(-x)``.

    For real-origin input this is the complex conjugate of every coefficient.
    Accepts :class:`SpectralScalar` or :class:`SpectralVector`.
    """
    return type(F)(F.n, _reflect(F.coeffs), F.real_origin)


def grid_coordinates(n: int) -> np.ndarray:
    """Sample positions ``i/n`` along one axis."""
    return np.arange(check_grid_size(n)) / n

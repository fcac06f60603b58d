"""Orthogonal split of vector fields into Sigma+, Sigma-, D and harmonic parts.

Every nonzero mode ``U(k)`` is expanded on the helical triad,
``U(k) = u+(k) h+(k) + u-(k) h-(k) + u0(k) h0(k)`` with
``u_s(k) = U(k) . conj(h_s(k))``; the ``k = 0`` coefficient is the harmonic
(uniform) part. The split is unitary mode by mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fourier import SpectralScalar, SpectralVector, check_grid_size, retained_mask
from .helical import POLARITIES, Polarity, helical_table

__all__ = [
    "HelicalCoeffs",
    "decompose",
    "assemble",
    "project",
    "project_harmonic",
    "pull_up",
    "pull_up_adjoint",
    "constantin_majda",
    "inner",
]


@dataclass(frozen=True)
class HelicalCoeffs:
    """Helical Fourier coefficients of a vector field.

    ``plus``, ``minus`` and ``zero`` have a vanishing ``k = 0`` entry; the
    mean of the field is carried by ``harmonic``.
    """

    n: int
    plus: SpectralScalar
    minus: SpectralScalar
    zero: SpectralScalar
    harmonic: np.ndarray

    def __post_init__(self):
        check_grid_size(self.n)
        object.__setattr__(self, "harmonic", np.asarray(self.harmonic, dtype=complex).reshape(3))

    def __getitem__(self, s) -> SpectralScalar:
        s = Polarity.parse(s)
        return {Polarity.PLUS: self.plus, Polarity.MINUS: self.minus, Polarity.ZERO: self.zero}[s]

    def energies(self) -> dict[str, float]:
        """Squared L2 norm of each of the four parts."""
        return {
            "plus": float(np.sum(np.abs(self.plus.coeffs) ** 2)),
            "minus": float(np.sum(np.abs(self.minus.coeffs) ** 2)),
            "zero": float(np.sum(np.abs(self.zero.coeffs) ** 2)),
            "harmonic": float(np.sum(np.abs(self.harmonic) ** 2)),
        }


def inner(a, b) -> complex:
    """L2 inner product on the torus, conjugate-linear in the first slot.

    Works for any pair of spectra with matching coefficient arrays.
    """
    return complex(np.vdot(a.coeffs, b.coeffs))


def pull_up_adjoint(U: SpectralVector, s) -> SpectralScalar:
    h = helical_table(U.n, s)
    coeffs = np.einsum("i...,i...->...", U.coeffs, h.conj())
    return SpectralScalar(U.n, coeffs, U.real_origin)


def pull_up(F: SpectralScalar, s) -> SpectralVector:
    """Multiply every nonzero mode by ``h_s(k)``; the mean is dropped."""
    h = helical_table(F.n, s)
    return SpectralVector(F.n, h * F.coeffs[None], F.real_origin)


def decompose(U: SpectralVector) -> HelicalCoeffs:
    plus, minus, zero = (pull_up_adjoint(U, s) for s in POLARITIES)
    harmonic = U.coeffs[:, 0, 0, 0].copy()
    if U.real_origin:
        harmonic = harmonic.real
    return HelicalCoeffs(U.n, plus, minus, zero, harmonic)


def assemble(H: HelicalCoeffs) -> SpectralVector:
    coeffs = sum(pull_up(H[s], s).coeffs for s in POLARITIES)
    coeffs[:, 0, 0, 0] = H.harmonic
    real = H.plus.real_origin and H.minus.real_origin and H.zero.real_origin
    return SpectralVector(H.n, coeffs, real)


def project(U: SpectralVector, s) -> SpectralVector:
    return pull_up(pull_up_adjoint(U, s), s)


def project_harmonic(U: SpectralVector) -> SpectralVector:
    coeffs = np.zeros_like(U.coeffs)
    coeffs[:, 0, 0, 0] = U.coeffs[:, 0, 0, 0]
    return SpectralVector(U.n, coeffs, U.real_origin)


def constantin_majda(U: SpectralVector, sign: int) -> SpectralVector:
    """Split ``(U +/- i e_r x U) / sqrt 2`` of a solenoidal spectrum.

    For ``k . U(k) = 0`` this equals ``sqrt(2) u_s(k) h_s(k)`` with ``s`` the
    polarity matching ``sign``. The ``k = 0`` mode is set to zero.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    e_r = 1j * helical_table(U.n, Polarity.ZERO)  # h0 = -i e_r
    cross = np.cross(e_r, U.coeffs, axis=0)
    out = (U.coeffs + sign * 1j * cross) / np.sqrt(2.0)
    out[:, ~retained_mask(U.n)] = 0.0
    out[:, 0, 0, 0] = 0.0
    return SpectralVector(U.n, out, False)

"""Spherical triads and helical vectors in wavevector space.

At each nonzero ``k`` the triad ``(e_r, e_theta, e_phi)`` is

    e_r     = k / |k|
    e_phi   = e_z x e_r / |e_z x e_r|     (e_r x e_x on the z axis)
    e_theta = e_phi x e_r

and the helical vectors are ``h+ = (e_theta + i e_phi)/sqrt 2``,
``h- = (e_theta - i e_phi)/sqrt 2``, ``h0 = -i e_r``. ``h+`` and ``h-`` are
eigenvectors of ``i k x`` with eigenvalues ``+|k|`` and ``-|k|``; ``h0`` is
parallel to ``k``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fourier import Wavevector, check_grid_size, retained_mask, wavenumbers

__all__ = [
    "Polarity",
    "RealTriad",
    "HelicalVector",
    "spherical_triad",
    "helical_vector",
    "uniform_triad",
    "helical_table",
]

_SQRT_HALF = np.sqrt(0.5)


class Polarity(enum.Enum):
    """Positive-helicity solenoidal, negative-helicity solenoidal, dilatational."""

    PLUS = "+"
    MINUS = "-"
    ZERO = "0"

    @classmethod
    def parse(cls, value) -> "Polarity":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "+": cls.PLUS, "+1": cls.PLUS, "1": cls.PLUS, "plus": cls.PLUS, "sigma+": cls.PLUS, "σ+": cls.PLUS, "s+": cls.PLUS,
            "-": cls.MINUS, "-1": cls.MINUS, "minus": cls.MINUS, "sigma-": cls.MINUS, "σ-": cls.MINUS,
            "s-": cls.MINUS, "−": cls.MINUS, "σ−": cls.MINUS,
            "0": cls.ZERO, "zero": cls.ZERO, "d": cls.ZERO,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown polarity {value!r}") from None

    @property
    def mirror(self) -> "Polarity":
        """Polarity exchanged by reflection ``x -> -x``."""
        return {Polarity.PLUS: Polarity.MINUS, Polarity.MINUS: Polarity.PLUS}.get(self, self)


POLARITIES = (Polarity.PLUS, Polarity.MINUS, Polarity.ZERO)


@dataclass(frozen=True)
class RealTriad:
    e_r: np.ndarray
    e_theta: np.ndarray
    e_phi: np.ndarray


@dataclass(frozen=True)
class HelicalVector:
    value: np.ndarray
    k: Wavevector
    polarity: Polarity


def _triad_arrays(kx, ky, kz):
    """Vectorized triad for integer wavevector arrays (no zero vectors)."""
    kx, ky, kz = (np.asarray(c, dtype=float) for c in (kx, ky, kz))
    kmag = np.sqrt(kx**2 + ky**2 + kz**2)
    e_r = np.stack([kx / kmag, ky / kmag, kz / kmag])

    rho = np.sqrt(kx**2 + ky**2)
    pole = rho == 0
    safe = np.where(pole, 1.0, rho)
    # e_r x e_x = (0, e_r_z, -e_r_y) reduces to (0, sign kz, 0) on the pole
    e_phi = np.stack(
        [
            np.where(pole, 0.0, -ky / safe),
            np.where(pole, np.sign(kz), kx / safe),
            np.zeros_like(kmag),
        ]
    )
    e_theta = np.cross(e_phi, e_r, axis=0)
    return e_r, e_theta, e_phi


def spherical_triad(k) -> RealTriad:
    k = Wavevector(*(int(c) for c in k))
    if k == (0, 0, 0):
        raise ValueError("the triad is undefined at k = 0; use uniform_triad")
    e_r, e_theta, e_phi = _triad_arrays(*k)
    return RealTriad(e_r, e_theta, e_phi)


def _helical_from_triad(e_r, e_theta, e_phi, s: Polarity):
    if s is Polarity.PLUS:
        return (e_theta + 1j * e_phi) * _SQRT_HALF
    if s is Polarity.MINUS:
        return (e_theta - 1j * e_phi) * _SQRT_HALF
    return -1j * e_r


def helical_vector(k, s) -> HelicalVector:
    s = Polarity.parse(s)
    t = spherical_triad(k)
    value = _helical_from_triad(t.e_r, t.e_theta, t.e_phi, s)
    return HelicalVector(value, Wavevector(*(int(c) for c in k)), s)


def uniform_triad(s) -> np.ndarray:
    """The fixed orthonormal triad used in place of helical vectors at ``k = 0``."""
    s = Polarity.parse(s)
    if s is Polarity.PLUS:
        return np.array([_SQRT_HALF, 1j * _SQRT_HALF, 0.0])
    if s is Polarity.MINUS:
        return np.array([_SQRT_HALF, -1j * _SQRT_HALF, 0.0])
    return np.array([0.0, 0.0, -1j])


@lru_cache(maxsize=16)
def _table(n: int, s: Polarity) -> np.ndarray:
    k = wavenumbers(n)
    kx, ky, kz = np.meshgrid(k, k, k, indexing="ij")
    zero = (kx == 0) & (ky == 0) & (kz == 0)
    kz_safe = np.where(zero, 1, kz)
    e_r, e_theta, e_phi = _triad_arrays(kx, ky, kz_safe)
    h = _helical_from_triad(e_r, e_theta, e_phi, s)
    h[:, zero | ~retained_mask(n)] = 0.0
    h.flags.writeable = False
    return h


def helical_table(n: int, s) -> np.ndarray:
    """Helical vectors for every mode of an ``n`` grid, shape ``(3, n, n, n)``.

    Entries at ``k = 0`` and outside the retained band are zero.
    """
    return _table(check_grid_size(n), Polarity.parse(s))

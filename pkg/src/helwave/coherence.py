"""Localization diagnostics for sampled vector fields.

The coherence spectrum bins ``|u(x)|^2 / N^3`` into spherical shells about a
centre, using the periodic minimum-image distance. Shell ``m`` has radius
``m/N`` and covers ``[m/N - 1/(2N), m/N + 1/(2N))``, so each grid point lands
in exactly one shell and the shells sum to the mean square of the field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fourier import GridVectorField, grid_coordinates
from .meyer import species_bits

__all__ = [
    "CoherenceSpectrum",
    "RayProfile",
    "TailFit",
    "coherence_spectrum",
    "ray_profile",
    "tail_fit",
    "species_center",
    "MIN_FIT_SAMPLES",
]

MIN_FIT_SAMPLES = 8


@dataclass(frozen=True)
class CoherenceSpectrum:
    """Shell sums of ``|u|^2 / N^3``.

    ``components`` has shape ``(n_shells, 3)`` and sums to ``values`` along
    the last axis. ``partial`` marks shells extending past the inscribed
    sphere (radius 1/2), whose coverage of the sphere is incomplete.
    """

    center: np.ndarray
    radii: np.ndarray
    width: float
    values: np.ndarray
    components: np.ndarray
    partial: np.ndarray

    def component(self, axis) -> np.ndarray:
        return self.components[:, _axis(axis)]

    def at(self, r: float) -> float:
        """Value of the shell whose radius is nearest to ``r``."""
        return float(self.values[int(np.argmin(np.abs(self.radii - r)))])


@dataclass(frozen=True)
class RayProfile:
    radii: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class TailFit:
    """Least-squares power law ``value ~ r^exponent`` over a radius window.

    ``algebraic`` is False when a straight line in (r, log value), i.e. an
    exponential, fits the window better than the power law does.
    """

    window: tuple[float, float]
    exponent: float
    residual: float
    exponential_residual: float
    samples: int

    @property
    def algebraic(self) -> bool:
        return self.residual <= self.exponential_residual


def _axis(axis) -> int:
    if isinstance(axis, str):
        return "xyz".index(axis.lower())
    return int(axis)


def _min_image(x: np.ndarray, c: float) -> np.ndarray:
    return (x - c + 0.5) % 1.0 - 0.5


def coherence_spectrum(u: GridVectorField, center) -> CoherenceSpectrum:
    n = u.n
    center = np.asarray(center, dtype=float).reshape(3) % 1.0
    x = grid_coordinates(n)
    dx, dy, dz = (_min_image(x, c) for c in center)
    dist = np.sqrt(dx[:, None, None] ** 2 + dy[None, :, None] ** 2 + dz[None, None, :] ** 2)
    shell = np.floor(dist * n + 0.5).astype(np.int64).ravel()
    n_shells = int(shell.max()) + 1
    components = np.stack(
        [np.bincount(shell, weights=(c**2).ravel(), minlength=n_shells) for c in u.samples],
        axis=1,
    ) / n**3
    radii = np.arange(n_shells) / n
    width = 1.0 / (2 * n)
    return CoherenceSpectrum(
        center=center,
        radii=radii,
        width=width,
        values=components.sum(axis=1),
        components=components,
        partial=radii + width > 0.5,
    )


def ray_profile(u: GridVectorField, component, center, direction) -> RayProfile:
    """``|u_component|`` at the grid points nearest ``center + r direction``.

    Radii run over ``m/N`` for ``m = 0..N/2``.
    """
    n = u.n
    direction = np.asarray(direction, dtype=float).reshape(3)
    direction = direction / np.linalg.norm(direction)
    center = np.asarray(center, dtype=float).reshape(3)
    radii = np.arange(n // 2 + 1) / n
    points = center[None, :] + radii[:, None] * direction[None, :]
    idx = np.rint(points * n).astype(np.int64) % n
    values = np.abs(u.samples[_axis(component)][idx[:, 0], idx[:, 1], idx[:, 2]])
    return RayProfile(radii, values)


def tail_fit(profile, r_min: float = 0.05, r_max: float = 0.3) -> TailFit:
    """Fit ``log value = a + exponent log r`` over ``[r_min, r_max]``.

    Accepts a :class:`CoherenceSpectrum` or :class:`RayProfile`. Samples with
    nonpositive values are dropped; fewer than eight remaining is an error.
    """
    if not r_min < r_max:
        raise ValueError("r_min must be below r_max")
    r = np.asarray(profile.radii, dtype=float)
    v = np.asarray(profile.values, dtype=float)
    keep = (r >= r_min) & (r <= r_max) & (v > 0)
    if keep.sum() < MIN_FIT_SAMPLES:
        raise ValueError(
            f"only {int(keep.sum())} positive samples in [{r_min}, {r_max}]; need {MIN_FIT_SAMPLES}"
        )
    r, logv = r[keep], np.log(v[keep])

    def rms_residual(x):
        A = np.column_stack([np.ones_like(x), x])
        coef, *_ = np.linalg.lstsq(A, logv, rcond=None)
        return coef, float(np.sqrt(np.mean((A @ coef - logv) ** 2)))

    (_, slope), residual = rms_residual(np.log(r))
    _, exp_residual = rms_residual(r)
    return TailFit((float(r_min), float(r_max)), float(slope), residual, exp_residual, int(keep.sum()))


def species_center(j: int, eps: int) -> np.ndarray:
    """Point where the level-``j`` scalar Meyer wavelet of species ``eps`` at
    location zero peaks: ``2^(-j-1)`` along each axis carrying a wavelet factor.
    """
    return np.array(species_bits(eps), dtype=float) * 2.0 ** (-j - 1)

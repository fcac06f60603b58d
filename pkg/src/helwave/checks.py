"""Self-check suite run by ``helwave check --suite invariants``.

Each check returns the worst observed deviation next to its tolerance, so a
report shows how much headroom there is and not just a verdict.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .fourier import (
    SpectralVector,
    check_grid_size,
    fft_vector,
    ifft_vector,
    retained_mask,
    spectral_curl,
    spectral_divergence,
    wavenumbers,
)
from .fieldio import generate
from .helical import POLARITIES, Polarity, helical_table
from .hodge import assemble, decompose, inner, project, project_harmonic
from .meyer import max_level
from .transform import forward, inverse

__all__ = ["CheckResult", "run_invariants", "SUITES"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.deviation < self.tolerance)

    def as_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def _k_vectors(n: int) -> np.ndarray:
    k = wavenumbers(n).astype(float)
    return np.stack(np.meshgrid(k, k, k, indexing="ij"))


def _helical_algebra(n: int) -> list[CheckResult]:
    mask = retained_mask(n).copy()
    mask[0, 0, 0] = False
    h = {s: helical_table(n, s)[:, mask] for s in POLARITIES}
    k = _k_vectors(n)[:, mask]
    knorm = np.linalg.norm(k, axis=0)

    gram = 0.0
    for a in POLARITIES:
        for b in POLARITIES:
            dot = np.sum(h[a] * h[b].conj(), axis=0)
            gram = max(gram, float(np.max(np.abs(dot - (a is b)))))

    trans = max(float(np.max(np.abs(np.sum(k * h[s], axis=0)))) for s in (Polarity.PLUS, Polarity.MINUS))
    curl = 0.0
    for s, sign in ((Polarity.PLUS, 1), (Polarity.MINUS, -1)):
        lhs = 1j * np.cross(k, h[s], axis=0)
        curl = max(curl, float(np.max(np.abs(lhs - sign * knorm * h[s]))))

    conj = 0.0
    for s in POLARITIES:
        table = helical_table(n, s)
        flipped = table
        for axis in (1, 2, 3):
            flipped = np.roll(np.flip(flipped, axis=axis), 1, axis=axis)
        conj = max(conj, float(np.max(np.abs(table.conj() - flipped))))

    return [
        CheckResult("helical_orthonormality", gram, 1e-12),
        CheckResult("helical_transversality", trans, 1e-12),
        CheckResult("helical_curl_eigen", curl / max(1.0, float(knorm.max())), 1e-12),
        CheckResult("helical_conjugation", conj, 1e-12),
    ]


def _hodge(n: int, seed: int) -> list[CheckResult]:
    U = fft_vector(generate("random", (seed,), n))
    parts = [project(U, s) for s in POLARITIES] + [project_harmonic(U)]
    total = sum(p.coeffs for p in parts)
    scale = U.l2_norm()
    ortho = max(
        abs(inner(parts[a], parts[b])) for a in range(4) for b in range(a + 1, 4)
    )
    energy = sum(decompose(U).energies().values())
    div = max(
        float(np.max(np.abs(spectral_divergence(parts[i]).coeffs))) for i in (0, 1)
    )
    curl = float(np.max(np.abs(spectral_curl(parts[2]).coeffs)))
    back = assemble(decompose(U))
    return [
        CheckResult("hodge_reconstruction", float(np.max(np.abs(total - U.coeffs))), 1e-12),
        CheckResult("hodge_assemble", float(np.max(np.abs(back.coeffs - U.coeffs))), 1e-12),
        CheckResult("hodge_orthogonality", ortho / scale**2, 1e-12),
        CheckResult("hodge_energy", abs(energy - scale**2) / scale**2, 1e-10),
        CheckResult("solenoidal_divergence", div / (2 * np.pi * n), 1e-12),
        CheckResult("dilatational_curl", curl / (2 * np.pi * n), 1e-12),
    ]


def _transform(n: int, seed: int) -> list[CheckResult]:
    jmax = max_level(n)
    if jmax < 0:
        return []
    u = generate("random-solenoidal", (seed,), n)
    grad = generate("gradient", (), n)
    u = type(u)(n, u.samples + grad.samples + 0.5)
    C = forward(u, jmax)
    back = inverse(C)
    scale = float(np.sqrt(u.mean_square()))
    return [
        CheckResult("transform_round_trip", float(np.max(np.abs(back.samples - u.samples))) / scale, 1e-10),
        CheckResult("transform_energy", abs(C.energy() - u.mean_square()) / u.mean_square(), 1e-10),
        CheckResult("transform_band_residual", C.residual / u.mean_square(), 1e-12),
    ]


def _real_synthesis(n: int, seed: int) -> list[CheckResult]:
    U = fft_vector(generate("random", (seed + 1,), n))
    R = SpectralVector(n, sum(project(U, s).coeffs for s in POLARITIES), True)
    resynth = fft_vector(ifft_vector(R))
    return [CheckResult("real_synthesis", float(np.max(np.abs(resynth.coeffs - R.coeffs))), 1e-12)]


SUITES = {"invariants"}


def run_invariants(n: int = 16, seed: int = 0) -> list[CheckResult]:
    """Algebraic and round-trip invariants on an ``n`` grid."""
    n = check_grid_size(n)
    results = _helical_algebra(n)
    results += _hodge(n, seed)
    results += _transform(n, seed)
    results += _real_synthesis(n, seed)
    return results

"""Binary field and coefficient files, and deterministic test fields.

FieldFile (little endian)::

    b"VF3T"  u32 version=1  u32 n  u32 flags(bit0: vector)
    float64 samples, x fastest, components concatenated (x, y, z)

CoeffFile (little endian)::

    b"HWC1"  u32 n  u32 jmax
    3 blocks (Sigma+, Sigma-, D) of 8^(jmax+1) - 1 records
        u32 j, u32 eps, u32 lx, u32 ly, u32 lz, f64 re, f64 im
    sorted by (j, eps, lx, ly, lz)
    3 x f64 harmonic vector

Random generators draw from numpy's Philox generator, a counter-based
bit generator, keyed by the integer seed; a given seed gives the same field
on every platform.
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .fourier import (
    GridScalarField,
    GridVectorField,
    SpectralScalar,
    SpectralVector,
    check_grid_size,
    fft_scalar,
    grid_coordinates,
    ifft_vector,
    wavenumbers,
)
from .helical import POLARITIES, Polarity
from .hodge import pull_up
from .meyer import WaveletCoeffs, max_level
from .transform import HelicalWaveletCoeffs

__all__ = [
    "FormatError",
    "write_field",
    "read_field",
    "write_coeffs",
    "read_coeffs",
    "generate",
    "GENERATOR_KINDS",
    "default_band",
]

FIELD_MAGIC = b"VF3T"
COEFF_MAGIC = b"HWC1"
FIELD_VERSION = 1
_FIELD_HEADER = struct.Struct("<4sIII")
_COEFF_HEADER = struct.Struct("<4sII")
RECORD_DTYPE = np.dtype(
    [("j", "<u4"), ("eps", "<u4"), ("lx", "<u4"), ("ly", "<u4"), ("lz", "<u4"), ("re", "<f8"), ("im", "<f8")]
)


class FormatError(ValueError):
    """Malformed or inconsistent field/coefficient file."""


def _atomic_write(path, payload: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _pack_samples(samples: np.ndarray) -> bytes:
    return np.asarray(samples, dtype="<f8").ravel(order="F").tobytes()


def write_field(path, field) -> None:
    """Write a :class:`GridScalarField` or :class:`GridVectorField`."""
    if isinstance(field, GridVectorField):
        flags = 1
        payload = b"".join(_pack_samples(c) for c in field.samples)
    elif isinstance(field, GridScalarField):
        flags = 0
        payload = _pack_samples(field.samples)
    else:
        raise TypeError(f"cannot serialize {type(field).__name__}")
    header = _FIELD_HEADER.pack(FIELD_MAGIC, FIELD_VERSION, field.n, flags)
    _atomic_write(path, header + payload)


def read_field(path):
    data = Path(path).read_bytes()
    if len(data) < _FIELD_HEADER.size:
        raise FormatError("file too short for a field header")
    magic, version, n, flags = _FIELD_HEADER.unpack_from(data)
    if magic != FIELD_MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != FIELD_VERSION:
        raise FormatError(f"unsupported version {version}")
    try:
        check_grid_size(n)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    ncomp = 3 if flags & 1 else 1
    expected = ncomp * n**3 * 8
    payload = data[_FIELD_HEADER.size:]
    if len(payload) != expected:
        raise FormatError(f"payload is {len(payload)} bytes, expected {expected}")
    values = np.frombuffer(payload, dtype="<f8").astype(float)
    comps = [values[i * n**3:(i + 1) * n**3].reshape((n, n, n), order="F") for i in range(ncomp)]
    if ncomp == 3:
        return GridVectorField(n, np.stack(comps))
    return GridScalarField(n, comps[0])


def _records(coeffs: WaveletCoeffs) -> np.ndarray:
    out = np.empty(coeffs.count() - 1, dtype=RECORD_DTYPE)
    pos = 0
    for j, block in enumerate(coeffs.levels):
        m = 2**j
        eps, lx, ly, lz = np.meshgrid(np.arange(1, 8), *(np.arange(m),) * 3, indexing="ij")
        size = block.size
        sl = slice(pos, pos + size)
        out["j"][sl] = j
        out["eps"][sl] = eps.ravel()
        out["lx"][sl] = lx.ravel()
        out["ly"][sl] = ly.ravel()
        out["lz"][sl] = lz.ravel()
        out["re"][sl] = block.real.ravel()
        out["im"][sl] = block.imag.ravel()
        pos += size
    return out


def write_coeffs(path, C: HelicalWaveletCoeffs) -> None:
    parts = [_COEFF_HEADER.pack(COEFF_MAGIC, C.n, C.jmax)]
    parts += [_records(C[s]).tobytes() for s in POLARITIES]
    parts.append(np.asarray(C.harmonic, dtype="<f8").tobytes())
    _atomic_write(path, b"".join(parts))


def read_coeffs(path) -> HelicalWaveletCoeffs:
    data = Path(path).read_bytes()
    if len(data) < _COEFF_HEADER.size:
        raise FormatError("file too short for a coefficient header")
    magic, n, jmax = _COEFF_HEADER.unpack_from(data)
    if magic != COEFF_MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    try:
        check_grid_size(n)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    count = 8 ** (jmax + 1) - 1
    expected = _COEFF_HEADER.size + 3 * count * RECORD_DTYPE.itemsize + 24
    if len(data) != expected:
        raise FormatError(f"file is {len(data)} bytes, expected {expected}")
    pos = _COEFF_HEADER.size
    parts = []
    for _ in POLARITIES:
        rec = np.frombuffer(data, dtype=RECORD_DTYPE, count=count, offset=pos)
        pos += count * RECORD_DTYPE.itemsize
        reference = _records(WaveletCoeffs.zeros(n, jmax))
        for name in ("j", "eps", "lx", "ly", "lz"):
            if not np.array_equal(rec[name], reference[name]):
                raise FormatError("coefficient records are not in canonical order")
        parts.append(WaveletCoeffs.from_vector(n, jmax, rec["re"] + 1j * rec["im"]))
    harmonic = np.frombuffer(data, dtype="<f8", count=3, offset=pos).astype(float)
    return HelicalWaveletCoeffs(n, jmax, *parts, harmonic)


def default_band(n: int, jmax: int | None = None) -> int:
    """Largest ``|k_i|`` represented exactly by wavelet levels ``0..jmax``.

    ``jmax`` defaults to the top admissible level of grid ``n``.
    """
    top = max_level(n) if jmax is None else int(jmax)
    return int(2 ** (top + 1) // 3) if top >= 0 else 0


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def _band_limited_noise(rng: np.random.Generator, n: int, band: int) -> SpectralScalar:
    F = fft_scalar(GridScalarField(n, rng.standard_normal((n, n, n))))
    k = np.abs(wavenumbers(n))
    keep = (k[:, None, None] <= band) & (k[None, :, None] <= band) & (k[None, None, :] <= band)
    coeffs = np.where(keep, F.coeffs, 0.0)
    coeffs[0, 0, 0] = 0.0
    return SpectralScalar(n, coeffs, True)


def _gen_constant(n, c=(1.0, 0.0, 0.0)):
    c = np.asarray(c, dtype=float).reshape(3)
    return GridVectorField(n, np.broadcast_to(c[:, None, None, None], (3, n, n, n)).copy())


def _gen_gradient(n):
    x = grid_coordinates(n)[:, None, None]
    ux = np.broadcast_to(2 * np.pi * np.cos(2 * np.pi * x), (n, n, n))
    zero = np.zeros((n, n, n))
    return GridVectorField.from_components(ux, zero, zero)


def _gen_beltrami_minus(n):
    z = grid_coordinates(n)[None, None, :]
    ux = np.broadcast_to(np.cos(2 * np.pi * z), (n, n, n))
    uy = np.broadcast_to(np.sin(2 * np.pi * z), (n, n, n))
    return GridVectorField.from_components(ux, uy, np.zeros((n, n, n)))


def _gen_abc(n, A=1.0, B=1.0, C=1.0):
    x = grid_coordinates(n)
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    tau = 2 * np.pi
    return GridVectorField.from_components(
        A * np.sin(tau * Z) + C * np.cos(tau * Y),
        B * np.sin(tau * X) + A * np.cos(tau * Z),
        C * np.sin(tau * Y) + B * np.cos(tau * X),
    )


def _gen_random_solenoidal(n, seed=0, band=None):
    band = default_band(n) if band is None else int(band)
    rng = _rng(seed)
    a = _band_limited_noise(rng, n, band)
    b = _band_limited_noise(rng, n, band)
    U = pull_up(a, Polarity.PLUS).coeffs + pull_up(b, Polarity.MINUS).coeffs
    return ifft_vector(SpectralVector(n, U, True))


def _gen_random(n, seed=0, band=None):
    """Gaussian noise with the Nyquist plane (or everything above ``band``) removed."""
    rng = _rng(seed)
    band = n // 2 - 1 if band is None else int(band)
    comps = []
    for _ in range(3):
        F = fft_scalar(GridScalarField(n, rng.standard_normal((n, n, n))))
        k = np.abs(wavenumbers(n))
        keep = (k[:, None, None] <= band) & (k[None, :, None] <= band) & (k[None, None, :] <= band)
        comps.append(np.where(keep, F.coeffs, 0.0))
    return ifft_vector(SpectralVector(n, np.stack(comps), True))


GENERATOR_KINDS = {
    "constant": _gen_constant,
    "gradient": _gen_gradient,
    "beltrami-minus": _gen_beltrami_minus,
    "abc": _gen_abc,
    "random-solenoidal": _gen_random_solenoidal,
    "random": _gen_random,
}


def generate(kind: str, params=(), n: int = 32) -> GridVectorField:
    """Deterministic test field.

    ``params`` is positional: ``constant`` takes the vector ``(c1, c2, c3)``,
    ``abc`` takes ``(A, B, C)``, and the random kinds take ``(seed[, band])``.
    """
    try:
        make = GENERATOR_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown field kind {kind!r}; choose from {sorted(GENERATOR_KINDS)}") from None
    n = check_grid_size(n)
    params = tuple(params)
    if kind == "constant" and params:
        return make(n, params)
    return make(n, *params)

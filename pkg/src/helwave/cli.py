"""``helwave`` command-line interface.

Exit codes: 0 success, 1 a verification reported failure, 2 usage or I/O
error. Reports go to stdout as JSON.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import checks
from .coherence import RayProfile, coherence_spectrum, tail_fit
from .fieldio import (
    GENERATOR_KINDS,
    FormatError,
    generate,
    read_coeffs,
    read_field,
    write_coeffs,
    write_field,
)
from .fourier import GridVectorField, fft_vector, ifft_vector
from .helical import Polarity
from .hodge import decompose, project, project_harmonic
from .meyer import WaveletIndex
from .transform import forward, inverse, synth_basis_function

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _triple(text: str, kind=float):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
    try:
        return tuple(kind(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _params(text: str):
    if not text:
        return ()
    out = []
    for p in text.split(","):
        value = float(p)
        out.append(int(value) if value.is_integer() else value)
    return tuple(out)


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _vector_field(path) -> GridVectorField:
    field = read_field(path)
    if not isinstance(field, GridVectorField):
        raise UsageError(f"{path}: expected a vector field")
    return field


def cmd_gen(args) -> int:
    try:
        u = generate(args.kind, _params(args.params), args.n)
    except TypeError as exc:
        raise UsageError(f"bad parameters for {args.kind}: {exc}") from None
    write_field(args.out, u)
    _emit({"kind": args.kind, "n": u.n, "out": str(args.out), "mean_square": u.mean_square()})
    return EXIT_OK


def cmd_decompose(args) -> int:
    u = _vector_field(args.input)
    U = fft_vector(u)
    parts = {s.name.lower(): project(U, s) for s in (Polarity.PLUS, Polarity.MINUS, Polarity.ZERO)}
    parts["harmonic"] = project_harmonic(U)
    prefix = str(args.out_prefix)
    files = {}
    for name, P in parts.items():
        path = f"{prefix}_{name}.vf3"
        write_field(path, ifft_vector(P))
        files[name] = path
    energies = decompose(U).energies()
    total = u.mean_square()
    split = sum(energies.values())
    # Nyquist content is not representable and is reported, not hidden.
    retained = U.l2_norm() ** 2
    error = abs(split - retained) / max(retained, np.finfo(float).tiny)
    report = {
        "n": u.n,
        "energies": energies,
        "total_energy": total,
        "retained_energy": retained,
        "parseval_relative_error": error,
        "files": files,
        "passed": bool(error < 1e-10),
    }
    Path(f"{prefix}_energy.json").write_text(json.dumps(report, indent=2, sort_keys=True))
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_transform(args) -> int:
    u = _vector_field(args.input)
    try:
        C = forward(u, args.jmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_coeffs(args.out, C)
    back = inverse(C)
    scale = max(float(np.max(np.abs(u.samples))), np.finfo(float).tiny)
    error = float(np.max(np.abs(back.samples - u.samples))) / scale
    _emit(
        {
            "n": u.n,
            "jmax": C.jmax,
            "coefficients": C.count(),
            "energy": C.energy(),
            "residual": C.residual,
            "lossy": C.lossy,
            "round_trip_error": error,
            "out": str(args.out),
        }
    )
    return EXIT_OK


def cmd_itransform(args) -> int:
    C = read_coeffs(args.input)
    u = inverse(C)
    write_field(args.out, u)
    _emit({"n": C.n, "jmax": C.jmax, "mean_square": u.mean_square(), "out": str(args.out)})
    return EXIT_OK


def cmd_basis(args) -> int:
    try:
        idx = WaveletIndex(args.j, args.eps, args.loc).validate()
        s = Polarity.parse(args.pol)
        u, imag = synth_basis_function(idx, s, args.n, return_imag=True)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_field(args.out, u)
    _emit(
        {
            "j": idx.j,
            "eps": idx.eps,
            "loc": list(idx.loc),
            "polarity": s.name.lower(),
            "n": args.n,
            "norm": float(np.sqrt(u.mean_square())),
            "max_imag": imag,
            "out": str(args.out),
        }
    )
    return EXIT_OK


def cmd_coherence(args) -> int:
    u = _vector_field(args.input)
    spec = coherence_spectrum(u, args.center)
    with open(args.csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        if args.component:
            writer.writerow(["r", "value"])
            rows = zip(spec.radii, spec.component(args.component))
        else:
            writer.writerow(["r", "vx", "vy", "vz"])
            rows = ([r, *c] for r, c in zip(spec.radii, spec.components))
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])
    _emit({"n": u.n, "center": spec.center.tolist(), "shells": len(spec.radii), "csv": str(args.csv)})
    return EXIT_OK


def _read_profile(path) -> RayProfile:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "r":
            raise UsageError(f"{path}: expected a CSV with header 'r,value' or 'r,vx,vy,vz'")
        rows = [[float(x) for x in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, len(header))
    values = data[:, 1] if len(header) == 2 else data[:, 1:].sum(axis=1)
    return RayProfile(data[:, 0], values)


def cmd_tailfit(args) -> int:
    profile = _read_profile(args.csv)
    try:
        fit = tail_fit(profile, args.rmin, args.rmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(
        {
            "exponent": fit.exponent,
            "residual": fit.residual,
            "exponential_residual": fit.exponential_residual,
            "algebraic": fit.algebraic,
            "samples": fit.samples,
            "window": list(fit.window),
        }
    )
    return EXIT_OK


def cmd_check(args) -> int:
    results = checks.run_invariants(args.n, args.seed)
    passed = all(r.passed for r in results)
    _emit({"suite": args.suite, "n": args.n, "passed": passed, "checks": [r.as_dict() for r in results]})
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="helwave", description="Helical Meyer wavelets on the periodic cube.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a deterministic test field")
    p.add_argument("--kind", required=True, choices=sorted(GENERATOR_KINDS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--params", default="", help="comma-separated, e.g. 1,2,3 or a seed")
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="Sigma+/Sigma-/D/harmonic split")
    p.add_argument("--in", dest="input", required=True, type=Path)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("transform", help="forward helical wavelet transform")
    p.add_argument("--in", dest="input", required=True, type=Path)
    p.add_argument("--jmax", type=int, required=True)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("itransform", help="inverse helical wavelet transform")
    p.add_argument("--in", dest="input", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_itransform)

    p = sub.add_parser("basis", help="sample one helical wavelet")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--eps", type=int, required=True)
    p.add_argument("--loc", type=lambda t: _triple(t, int), default=(0, 0, 0))
    p.add_argument("--pol", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("coherence", help="shell spectrum of |u|^2 about a centre")
    p.add_argument("--in", dest="input", required=True, type=Path)
    p.add_argument("--center", type=_triple, required=True)
    p.add_argument("--component", choices=("x", "y", "z"))
    p.add_argument("--csv", required=True, type=Path)
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("tailfit", help="power-law fit of a radial profile")
    p.add_argument("--csv", required=True, type=Path)
    p.add_argument("--rmin", type=float, default=0.05)
    p.add_argument("--rmax", type=float, default=0.3)
    p.set_defaults(func=cmd_tailfit)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(checks.SUITES))
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, OSError, ValueError) as exc:
        print(f"helwave {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

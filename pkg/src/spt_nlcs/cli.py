"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 the moment sequence is not positive definite.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__, bargmann, cstates, hankel, shiftpoly, verify
from .errors import DomainError, ExactnessError, MomentPositivityError
from .moments import (
    Convention,
    SequenceSpec,
    as_rational,
    custom_moments,
    format_rational,
    moments_for,
    parse_convention,
)
from .poly import format_poly

SCHEMA_VERSION = "v1"
N_MAX_GUARD = 256
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_POSITIVITY = 0, 1, 2, 3


class InputError(Exception):
    pass


def parse_gamma(text: str) -> Fraction:
    try:
        g = as_rational(text)
    except (DomainError, TypeError) as exc:
        raise InputError(str(exc)) from None
    if g < 0:
        raise InputError(f"gamma must be >= 0, got {text}")
    return g


def parse_complex(text: str) -> complex:
    """Parse ``"a+bi"``, ``"a-bj"``, ``"2i"`` or a real number."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def parse_tolerances(items) -> dict:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"tolerance override must be name=value, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise InputError(f"bad tolerance value in {item!r}") from None
    unknown = set(out) - set(verify.DEFAULT_TOLERANCES)
    if unknown:
        raise InputError(f"unknown tolerance names: {', '.join(sorted(unknown))}")
    return out


def _check_nmax(n: int):
    if n < 0 or n > N_MAX_GUARD:
        raise InputError(f"--nmax must lie in [0, {N_MAX_GUARD}]")


def _envelope(command: str, config: dict, data) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "header": {"command": command, "config": config, "version": __version__},
        "data": data,
    }


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ----------------------------------------------------------------------
# polys


def cmd_polys(args) -> int:
    _check_nmax(args.nmax)
    if args.family == "shift":
        return _polys_shift(args)
    if args.even_moments:
        try:
            values = [as_rational(v) for v in args.even_moments.split(",")]
            mu = custom_moments(values)
        except (DomainError, TypeError) as exc:
            raise InputError(str(exc)) from None
        if len(values) < args.nmax + 1:
            raise InputError(f"need {args.nmax + 1} even moments for --nmax {args.nmax}")
    else:
        try:
            conv = parse_convention(args.convention)
            gamma = None if args.gamma is None else parse_gamma(args.gamma)
            mu = moments_for(SequenceSpec(conv, gamma), args.nmax)
        except (DomainError, ExactnessError) as exc:
            raise InputError(str(exc)) from None
    sys_ = hankel.monic_ops(mu, args.nmax)
    config = {"family": "hankel", "convention": sys_.spec.label,
              "gamma": None if sys_.spec.gamma is None else format_rational(sys_.spec.gamma),
              "nmax": args.nmax}
    if args.format == "json":
        text = _dump_json(_envelope("polys", config, sys_.to_dict()))
    elif args.format == "csv":
        rows = [[n, p.degree, format_poly(p), format_rational(sys_.xi[n])]
                for n, p in enumerate(sys_.polys)]
        text = _csv(rows, ["n", "degree", "poly", "xi"])
    else:
        text = "".join(f"P_{n} = {format_poly(p)}    xi_{n} = {format_rational(sys_.xi[n])}\n"
                       for n, p in enumerate(sys_.polys))
    _emit(text, args.output)
    return EXIT_OK


def _polys_shift(args) -> int:
    try:
        if args.sigma is not None:
            fam = shiftpoly.sigma_family(parse_gamma(args.sigma))
        else:
            fam = shiftpoly.family_for(parse_gamma(args.gamma or "0"))
    except DomainError as exc:
        raise InputError(str(exc)) from None
    polys = fam.polys(args.nmax)
    cross = _shift_crosscheck(fam, polys)
    config = {"family": "shift", "name": fam.name, "nmax": args.nmax}
    if args.format == "json":
        data = shiftpoly.family_to_dict(fam, polys)
        data["crosscheck_max_rel"] = cross
        text = _dump_json(_envelope("polys", config, data))
    elif args.format == "csv":
        text = _csv([[n, p.degree, str(p)] for n, p in enumerate(polys)], ["n", "degree", "poly"])
    else:
        text = "".join(f"phi_{n} = {p}\n" for n, p in enumerate(polys))
        text += f"# closed-form cross-check max rel = {cross:.3e}\n"
    _emit(text, args.output)
    return EXIT_OK if cross < 1e-10 else EXIT_FAIL


def _shift_crosscheck(fam, polys) -> float:
    """Compare against the Pollaczek recurrence at four points."""
    name = fam.name
    if name == "gamma=1":
        params = shiftpoly.PollaczekParams(Fraction(1, 2), math.pi / 2, 1)
    elif name == "gamma=0":
        params = shiftpoly.PollaczekParams(Fraction(1, 2), math.pi / 2, 0)
    else:
        params = shiftpoly.PollaczekParams(Fraction(name.split("=")[1]), math.pi / 2, 0)
    worst = 0.0
    for x in (-2.0, -0.5, 0.3, 1.7):
        vals = shiftpoly.pollaczek_values(params, x / math.sqrt(2), len(polys) - 1)
        for p, v in zip(polys, vals):
            worst = max(worst, abs(p(x) - v) / max(1.0, abs(v)))
    return worst


# ----------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    if args.nmax is not None:
        _check_nmax(args.nmax)
    tol = parse_tolerances(args.tol)
    records = verify.run(args.suite, args.nmax, tol)
    config = {"suite": args.suite, "nmax": args.nmax, "tolerances": tol}
    if args.format == "json":
        text = _dump_json(_envelope("verify", config, [r.to_dict() for r in records]))
    else:
        text = "".join(f"{r.status:4s}  {r.suite}/{r.check}: {r.detail}\n" for r in records)
        for r in records:
            if r.check in ("xi-constants", "Q6-printed"):
                text += f"      {r.check}: " + ", ".join(f"{k}={v}" for k, v in sorted(r.data.items())) + "\n"
            if r.check == "A-range":
                text += "      n   A_n/n\n" + "".join(
                    f"      {row['n']:<3d} {row['A_n_over_n']:.10f}\n" for row in r.data["rows"])
    _emit(text, args.output)
    return verify.exit_code(records)


# ----------------------------------------------------------------------
# cs and bargmann


def cmd_cs(args) -> int:
    z = parse_complex(args.z)
    gamma = float(parse_gamma(args.gamma))
    nu = gamma if args.nu is None else float(parse_gamma(args.nu))
    if args.grid < 2:
        raise InputError("--grid must be >= 2")
    try:
        params = cstates.CSParams(gamma, nu, args.alpha)
    except DomainError as exc:
        raise InputError(str(exc)) from None
    method = args.method
    if method == "closed" and nu != gamma:
        raise InputError("the closed form needs nu = gamma; use --method series")
    if method == "auto":
        method = "closed" if nu == gamma else "series"
    theta = np.linspace(-params.half_width, params.half_width, args.grid)
    if method == "closed":
        psi = cstates.wavefunction_closed(theta, z, gamma, args.alpha)
    else:
        psi = cstates.wavefunction_series(theta, z, params)
    rows = [[repr(float(t)), repr(float(p.real)), repr(float(p.imag)), repr(float(abs(p) ** 2))]
            for t, p in zip(theta, psi)]
    _emit(_csv(rows, ["theta", "re_psi", "im_psi", "abs_psi_sq"]), args.output)
    return EXIT_OK


def cmd_bargmann(args) -> int:
    z = parse_complex(args.z)
    gamma = float(parse_gamma(args.gamma))
    if gamma < 1:
        raise InputError("the transform is implemented for gamma >= 1")
    if args.basis < 0:
        raise InputError("--basis must be >= 0")
    tv = bargmann.basis_image(args.basis, z, gamma, args.alpha, args.nodes, args.variant)
    exact = bargmann.monomial_image(args.basis, z, gamma)
    rel = abs(tv.value - exact) / abs(exact) if exact != 0 else abs(tv.value)
    record = {
        "check": "monomial-image",
        "gamma": gamma,
        "n": args.basis,
        "z": [z.real, z.imag],
        "variant": args.variant,
        "exact": [exact.real, exact.imag],
        "numeric": [tv.value.real, tv.value.imag],
        "rel_err": rel,
        "node_doubling_change": tv.change,
        "nodes": tv.nodes,
    }
    config = {"gamma": format_rational(as_rational(args.gamma)), "basis": args.basis,
              "z": args.z, "alpha": args.alpha, "variant": args.variant}
    if args.format == "json":
        text = _dump_json(_envelope("bargmann", config, record))
    else:
        text = "".join(f"{k}: {record[k]}\n" for k in sorted(record))
    _emit(text, args.output)
    return EXIT_OK


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spt-nlcs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("polys", help="orthogonal polynomial tables")
    sp.add_argument("--family", choices=["hankel", "shift"], default="hankel")
    sp.add_argument("--convention", default="factorial-squared",
                    help="generalized-factorial | factorial-squared | shifted-factorial-squared")
    sp.add_argument("--gamma", help='rational literal, e.g. "5/2"')
    sp.add_argument("--sigma", help="sigma parameter of the shift family")
    sp.add_argument("--even-moments", help="comma-separated mu_0, mu_2, ... (custom sequence)")
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_polys)

    sv = sub.add_parser("verify", help="run verification suites")
    sv.add_argument("--suite", choices=["all", *verify.SUITES], default="all")
    sv.add_argument("--nmax", type=int)
    sv.add_argument("--tol", action="append", metavar="NAME=VALUE",
                    help="override a tolerance: " + ", ".join(sorted(verify.DEFAULT_TOLERANCES)))
    sv.add_argument("--format", choices=["json", "pretty"], default="pretty")
    sv.add_argument("--output")
    sv.set_defaults(func=cmd_verify)

    sc = sub.add_parser("cs", help="coherent-state wavefunction on a theta grid (CSV)")
    sc.add_argument("--gamma", default="1")
    sc.add_argument("--nu", help="defaults to gamma")
    sc.add_argument("--alpha", type=float, default=1.0)
    sc.add_argument("--z", default="1+0i")
    sc.add_argument("--grid", type=int, default=101)
    sc.add_argument("--method", choices=["auto", "closed", "series"], default="auto")
    sc.add_argument("--output")
    sc.set_defaults(func=cmd_cs)

    sb = sub.add_parser("bargmann", help="transform of a basis function against z^n/sqrt(w_n)")
    sb.add_argument("--gamma", default="1")
    sb.add_argument("--basis", type=int, default=0)
    sb.add_argument("--z", default="1+0i")
    sb.add_argument("--alpha", type=float, default=1.0)
    sb.add_argument("--nodes", type=int, default=128)
    sb.add_argument("--variant", choices=["cos", "sin"], default="cos")
    sb.add_argument("--format", choices=["json", "pretty"], default="json")
    sb.add_argument("--output")
    sb.set_defaults(func=cmd_bargmann)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MomentPositivityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POSITIVITY
    except (InputError, DomainError, ExactnessError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: verify / spectrum / trajectory / oracle /
eigenfunction / laughlin.  Data goes to stdout or ``--out``; diagnostics
to stderr.  Exit codes: 0 success, 1 strict-verify failure, 2 usage
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classical, manybody, models, numverify, spectra


EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _parse_range(text):
    """'0..4' -> [0, 1, 2, 3, 4]; '3' -> [3]."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _build_parser():
    p = argparse.ArgumentParser(
        prog="curvedhall",
        description="Landau-problem identities, spectra, and oracles on "
                    "flat, half-plane, and disk geometries "
                    "(natural units hbar = m = 1 by default).")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the exact identity suite")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--strict", action="store_true",
                   help="count the documented expansion diff as a failure")
    v.add_argument("--out")

    s = sub.add_parser("spectrum", help="closed-form energy levels")
    s.add_argument("--geometry", choices=("flat", "halfplane", "sphere"),
                   required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out")
    s.add_argument("--omega-c", type=float, default=1.0)
    s.add_argument("--hbar", type=float, default=1.0)
    s.add_argument("--n", help="flat Landau index or range, e.g. 0..2")
    s.add_argument("--beta", type=float)
    s.add_argument("--m", type=float, default=1.0)
    s.add_argument("--a", type=float, default=1.0)
    s.add_argument("--levels", help="half-plane l, range, or 'all'")
    s.add_argument("--k", type=int)
    s.add_argument("--rho", type=float, default=1.0)
    s.add_argument("--l", help="sphere l or range")

    t = sub.add_parser("trajectory", help="integrate the classical motion")
    t.add_argument("--x0", type=float, default=0.0)
    t.add_argument("--y0", type=float, default=1.0)
    t.add_argument("--px0", type=float, default=-1.0)
    t.add_argument("--py0", type=float, default=0.0)
    t.add_argument("--beta", type=float, default=4.0)
    t.add_argument("--a", type=float, default=1.0)
    t.add_argument("--dt", type=float, required=True)
    t.add_argument("--steps", type=int, required=True)
    t.add_argument("--out")

    o = sub.add_parser("oracle", help="finite-difference bound-state solver")
    o.add_argument("--beta", type=float, required=True)
    o.add_argument("--smin", type=float, default=1e-3)
    o.add_argument("--smax", type=float, required=True)
    o.add_argument("--points", type=int, required=True)
    o.add_argument("--levels", type=int, required=True)
    o.add_argument("--m", type=float, default=1.0)
    o.add_argument("--a", type=float, default=1.0)
    o.add_argument("--out")

    e = sub.add_parser("eigenfunction", help="sample a bound eigenfunction")
    e.add_argument("--beta", type=float, required=True)
    e.add_argument("--l", type=int, required=True)
    e.add_argument("--c", type=float, required=True)
    e.add_argument("--x", type=float, default=0.0)
    e.add_argument("--y", required=True,
                   help="y value or comma-separated list")
    e.add_argument("--out")

    lg = sub.add_parser("laughlin", help="evaluate the pair-product state")
    lg.add_argument("--m", type=int, required=True)
    lg.add_argument("--config", required=True,
                    help="JSON file {\"z0\": r, \"points\": [[re, im], ...]}")
    lg.add_argument("--out")
    return p


def _cmd_verify(args):
    reports = models.run_identity_suite()
    _emit(models.render_suite(reports, fmt=args.format), args.out)
    bad = [r for r in reports if r.status == "fail"]
    diff = [r for r in reports if r.status == "documented-diff"]
    if bad:
        print(f"# {len(bad)} identity failure(s)", file=sys.stderr)
        return EXIT_VERIFY
    if args.strict and diff:
        print(f"# strict mode: {len(diff)} documented diff(s) counted as "
              "failures", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_spectrum(args, parser):
    if args.geometry == "flat":
        if args.n is None:
            parser.error("flat geometry needs --n")
        lines = [spectra.landau_flat(n, args.omega_c, args.hbar)
                 for n in _parse_range(args.n)]
        params = {"omega_c": args.omega_c, "hbar": args.hbar}
    elif args.geometry == "halfplane":
        if args.beta is None or args.levels is None:
            parser.error("halfplane geometry needs --beta and --levels")
        if args.levels == "all":
            ls = spectra.halfplane_window(args.beta)
        else:
            ls = _parse_range(args.levels)
        lines = [spectra.landau_halfplane(args.beta, l, args.m, args.a)
                 for l in ls]
        params = {"beta": args.beta, "m": args.m, "a": args.a}
    else:
        if args.k is None or args.l is None:
            parser.error("sphere geometry needs --k and --l")
        lines = [spectra.sphere_spectrum(l, args.k, args.rho)
                 for l in _parse_range(args.l)]
        params = {"k": args.k, "rho": args.rho}
    if args.format == "json":
        _emit(spectra.spectrum_json(args.geometry, params, lines), args.out)
    else:
        _emit(spectra.spectrum_csv(lines), args.out)
    return EXIT_OK


def _cmd_trajectory(args, parser):
    if args.y0 <= 0:
        parser.error("--y0 must be positive (upper half-plane)")
    if args.dt <= 0 or args.steps < 0:
        parser.error("--dt must be positive and --steps nonnegative")
    s0 = classical.PhaseState(0.0, args.x0, args.y0, args.px0, args.py0)
    traj = classical.integrate_rk4(s0, args.a, args.beta, args.dt, args.steps)
    import io
    buf = io.StringIO()
    classical.trajectory_csv(traj, buf)
    _emit(buf.getvalue(), args.out)
    drift = classical.drift_summary(traj)
    print("# drift " + " ".join(f"{k}={v:.3e}" for k, v in drift.items()),
          file=sys.stderr)
    if traj.domain_exit:
        print("# trajectory left the upper half-plane; partial output",
              file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_oracle(args):
    grid = numverify.FDGrid(args.smin, args.smax, args.points)
    spec = numverify.whittaker_oracle(args.beta, grid, args.levels,
                                      m=args.m, a=args.a)
    analytic = [spectra.landau_halfplane(args.beta, l, args.m, args.a).energy
                for l in range(args.levels)]
    _emit(numverify.oracle_report(spec, analytic), args.out)
    return EXIT_OK


def _cmd_eigenfunction(args):
    ys = [float(v) for v in str(args.y).split(",")]
    rows = ["x,y,re,im,abs"]
    for y in ys:
        v = spectra.eigenfunction_halfplane(args.beta, args.l, args.c,
                                            (args.x, y))
        rows.append(f"{args.x:.17g},{y:.17g},{v.real:.17g},{v.imag:.17g},"
                    f"{abs(v):.17g}")
    _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def _cmd_laughlin(args):
    with open(args.config) as fh:
        cfg = manybody.ParticleConfig.from_json(fh.read())
    val = manybody.laughlin(cfg, args.m)
    ok = manybody.antisymmetry_check(cfg, args.m)
    sym = "antisymmetry" if args.m % 2 else "symmetry"
    _emit(f"{val.real:.17g}{val.imag:+.17g}j\n"
          f"{sym}: {'PASS' if ok else 'FAIL'}\n", args.out)
    return EXIT_OK if ok else EXIT_NUMERIC


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        # argparse exits 2 on usage errors already; normalize anything else
        raise SystemExit(EXIT_USAGE if ex.code not in (0,) else 0)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "spectrum":
            return _cmd_spectrum(args, parser)
        if args.command == "trajectory":
            return _cmd_trajectory(args, parser)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "eigenfunction":
            return _cmd_eigenfunction(args)
        if args.command == "laughlin":
            return _cmd_laughlin(args)
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, RuntimeError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

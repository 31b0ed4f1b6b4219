"""Command-line interface: point evaluation, grid tabulation, verification
suites, and exact-oracle coefficient dumps.

Exit codes: 0 ok, 1 usage, 2 domain error, 3 convergence failure,
4 verification failure.  Config precedence: flags > OPDAM_* environment
variables > defaults (quad order 48, tol 1e-8).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import poly_oracle, verify
from .cherednik_numeric import g_a2
from .errors import ConvergenceError, DomainError, OpdamError, ParameterError
from .gauss_2f1 import jacobi_phi
from .hyp_f import HypFContext, f_total
from .hyp_fstar import fstar_total
from .laplace_kernel import kernel_transform
from .quadrature import EvalResult
from .root_lattice import (
    ChamberPoint,
    VPoint,
    chamber_reduce,
    project_trace_zero,
    project_trace_zero_complex,
)

EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_VERIFY = 4


def _env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


def _env_float(name: str, default: float) -> float:
    return float(os.environ.get(name, default))


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _parse_floats(text: str, n: int, what: str) -> tuple[float, ...]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != n:
        raise ParameterError(f"{what} needs {n} comma-separated reals, got {len(parts)}")
    return tuple(float(p) for p in parts)


def _parse_lambda(text: str) -> tuple[complex, complex, complex]:
    """Six reals re1,im1,re2,im2,re3,im3 (or three reals), projected to trace zero."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) == 3:
        vals = [complex(float(p), 0.0) for p in parts]
    elif len(parts) == 6:
        fs = [float(p) for p in parts]
        vals = [complex(fs[2 * i], fs[2 * i + 1]) for i in range(3)]
    else:
        raise ParameterError("--lambda needs 3 or 6 comma-separated reals")
    s = sum(vals)
    if abs(s) > 1e-9:
        print(f"warning: lambda projected to trace zero (moved by {abs(s) / 3:.3e})", file=sys.stderr)
    return project_trace_zero_complex(vals).coords


def _parse_x(text: str) -> VPoint:
    vals = _parse_floats(text, 3, "--x")
    s = sum(vals)
    if abs(s) > 1e-9:
        print(f"warning: x projected to trace zero (moved by {abs(s) / 3:.3e})", file=sys.stderr)
    return project_trace_zero(vals)


def _eval_point(func: str, ctx: HypFContext, lam, x: VPoint, grid_order: int) -> EvalResult:
    if func == "f":
        return f_total(ctx, lam, x)
    if func == "fstar":
        return fstar_total(ctx, lam, x)
    if func == "g":
        return g_a2(ctx, lam, x)
    if func == "kernel":
        c, _ = chamber_reduce(x)
        return kernel_transform(ctx.k, lam, c, grid_order=grid_order)
    raise ParameterError(f"unknown function {func!r}")


def cmd_eval(args) -> int:
    ctx = HypFContext(k=args.k, quad_order=args.quad_order, tol=args.tol)
    if args.function == "phi":
        if args.t is None:
            raise ParameterError("phi needs --t")
        eta = complex(args.eta) if args.eta is not None else 0.0
        val = jacobi_phi(args.k, eta, args.t)
        res = EvalResult(val, 0.0, 1, True)
        lam_out = [eta.real, eta.imag]
        x_out = [args.t]
    else:
        if args.lam is None or args.x is None:
            raise ParameterError(f"{args.function} needs --lambda and --x")
        lam = _parse_lambda(args.lam)
        x = _parse_x(args.x)
        res = _eval_point(args.function, ctx, lam, x, args.kernel_order)
        lam_out = [c for v in lam for c in (v.real, v.imag)]
        x_out = list(x.coords)
    doc = {
        "function": args.function,
        "k": float(args.k),
        "lambda": [float(_fmt(v)) for v in lam_out],
        "x": [float(_fmt(v)) for v in x_out],
        "value_re": float(_fmt(res.value.real)),
        "value_im": float(_fmt(res.value.imag)),
        "err_estimate": float(_fmt(res.err_estimate)),
        "nodes_used": res.nodes_used,
        "converged": res.converged,
    }
    json.dump(doc, sys.stdout)
    sys.stdout.write("\n")
    return 0


def _parse_grid(text: str):
    """'a:b:n,c:d:m' -> (linspace(a,b,n), linspace(c,d,m))."""
    try:
        s_spec, t_spec = text.split(",")
        a, b, n = s_spec.split(":")
        c, d, m = t_spec.split(":")
        return (np.linspace(float(a), float(b), int(n)),
                np.linspace(float(c), float(d), int(m)))
    except ValueError as exc:
        raise ParameterError(f"bad --grid spec {text!r}: {exc}") from None


def cmd_table(args) -> int:
    ctx = HypFContext(k=args.k, quad_order=args.quad_order, tol=args.tol)
    svals, tvals = _parse_grid(args.grid)
    lam = _parse_lambda(args.lam) if args.lam else None
    x = _parse_x(args.x) if args.x else None
    if args.slice == "x" and lam is None:
        raise ParameterError("slice over x needs --lambda")
    if args.slice == "lambda" and x is None:
        raise ParameterError("slice over lambda needs --x")

    def one(point):
        s, t = point
        try:
            if args.slice == "x":
                res = _eval_point(args.function, ctx, lam, project_trace_zero((s, t, -s - t)),
                                  args.kernel_order)
            else:
                lam_st = project_trace_zero_complex((s, t, -s - t)).coords
                res = _eval_point(args.function, ctx, lam_st, x, args.kernel_order)
            return (res.value.real, res.value.imag, res.err_estimate, "")
        except OpdamError as exc:
            return (math.nan, math.nan, math.nan, type(exc).__name__)

    points = [(s, t) for s in svals for t in tvals]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(one, points))
    else:
        rows = [one(p) for p in points]

    writer = csv.writer(sys.stdout, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(["s", "t", "value_re", "value_im", "err_estimate", "flag"])
    for (s, t), (re, im, err, flag) in zip(points, rows):
        writer.writerow([_fmt(s), _fmt(t), _fmt(re), _fmt(im), _fmt(err), flag])
    return 0


def cmd_verify(args) -> int:
    names = None if not args.suite or "all" in args.suite else args.suite
    opts = {
        "seed": args.seed,
        "quad_order": args.quad_order,
    }
    if args.tol_scale != 1.0:
        opts["tol_scale"] = args.tol_scale
    records = verify.run_suites(names, **opts)
    ok = True
    for r in records:
        if args.tol_scale != 1.0 and r.tolerance > 0:
            r.verdict = "pass" if r.residual <= r.tolerance * args.tol_scale else "fail"
        ok = ok and r.passed
        json.dump(r.to_dict(), sys.stdout)
        sys.stdout.write("\n")
    summary = {
        "suite": "summary",
        "total": len(records),
        "failed": sum(not r.passed for r in records),
    }
    json.dump(summary, sys.stdout)
    sys.stdout.write("\n")
    return 0 if ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    k = Fraction(args.k_rational)
    a, b = (int(v) for v in args.weight.split(","))
    mu = poly_oracle.weight_from_ab(a, b)
    if args.poly == "E":
        E = poly_oracle.opdam_E(k, mu, height_bound=max(8, a + b))
        terms = E.poly.terms
        extra = {"spectral": [str(v) for v in E.spectral]}
    else:
        P = poly_oracle.jacobi_P(k, mu, height_bound=max(8, a + b))
        terms = P.terms
        extra = {}
    doc = {
        "poly": args.poly,
        "k": str(k),
        "weight": [a, b],
        "coefficients": {",".join(map(str, w)): str(c) for w, c in sorted(terms.items())},
        **extra,
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opdam",
                                description="Heckman-Opdam hypergeometric functions of type A2")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--k", type=float, default=1.0, help="multiplicity parameter")
        sp.add_argument("--quad-order", dest="quad_order", type=int,
                        default=_env_int("OPDAM_QUAD_ORDER", 48))
        sp.add_argument("--tol", type=float, default=_env_float("OPDAM_TOL", 1e-8))
        sp.add_argument("--kernel-order", dest="kernel_order", type=int, default=24)

    pe = sub.add_parser("eval", help="evaluate one function at one point")
    common(pe)
    pe.add_argument("--function", choices=["f", "g", "fstar", "phi", "kernel"], required=True)
    pe.add_argument("--lambda", dest="lam", help="3 reals or 6 reals re,im per coordinate")
    pe.add_argument("--x", help="3 reals, trace-zero enforced by projection")
    pe.add_argument("--eta", help="phi only: real or complex 'a+bj'")
    pe.add_argument("--t", type=float, help="phi only: argument")
    pe.set_defaults(fn=cmd_eval)

    pt = sub.add_parser("table", help="CSV table over a 2-D slice")
    common(pt)
    pt.add_argument("--function", choices=["f", "g", "fstar", "kernel"], default="f")
    pt.add_argument("--slice", choices=["x", "lambda"], default="x")
    pt.add_argument("--grid", required=True, help="'a:b:n,c:d:m' over slice parameters (s,t)")
    pt.add_argument("--lambda", dest="lam")
    pt.add_argument("--x")
    pt.add_argument("--jobs", type=int, default=_env_int("OPDAM_JOBS", 1))
    pt.set_defaults(fn=cmd_table)

    pv = sub.add_parser("verify", help="run verification suites (JSON lines)")
    common(pv)
    pv.add_argument("--suite", action="append",
                    help=f"suite name or 'all'; available: {sorted(verify.SUITES)}")
    pv.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    pv.add_argument("--tol-scale", dest="tol_scale", type=float, default=1.0,
                    help="multiply all tolerances (override)")
    pv.add_argument("--jobs", type=int, default=_env_int("OPDAM_JOBS", 1))
    pv.set_defaults(fn=cmd_verify)

    po = sub.add_parser("oracle", help="dump exact polynomial coefficient tables")
    po.add_argument("--k-rational", default="1", help="k as an exact rational, e.g. 1/2")
    po.add_argument("--weight", default="1,1", help="dominant weight 'a,b'")
    po.add_argument("--poly", choices=["E", "P"], default="E")
    po.set_defaults(fn=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError,) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ParameterError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line front end.

Subcommands: ``potential``, ``fraclap``, ``validate``, ``matpow``,
``diffuse``.  Output is CSV with a header row and 17-significant-digit
doubles; runs with ``--out`` also write ``FILE.manifest.json`` capturing all
parameters so identical manifests imply bit-identical CSV.

Exit codes: 0 success, 1 failed validation checks, 2 argument errors,
3 numerical errors (the error class name goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, discrete
from .domain import BoundaryData, TestFunction, boundary_quadrature, make_interval_grid, make_rectangle_grid
from .errors import FracLapError, GammaPole, MissingBoundaryData, NotPositiveDefinite, NotSymmetric, UnsupportedOperation
from .operators import Definition, FracLapRequest, evaluate
from .riesz import PotentialRequest, RuleParams, riesz_potential_field
from .special import ConstantMode
from .validate import run_suite

_NOTES = [
    "green identity surface term evaluated with the field itself (the stray "
    "symbol in the identity's surface integrand is read as the field)",
    "augmented surface kernels default to the rigorous variant derived from "
    "the green identity; the as-printed variant is available for comparison",
]


def _fmt(v):
    return f"{float(v):.17g}"


def _write_output(args, header, rows, extra_params):
    text = header + "\n" + "\n".join(rows) + ("\n" if rows else "")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        manifest = {
            "version": __version__,
            "command": args.command,
            "parameters": extra_params,
            "threads": os.environ.get("FRACLAP_THREADS", "0"),
            "notes": _NOTES,
        }
        with open(args.out + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        sys.stdout.write(text)


def _parse_domain(text, d):
    parts = [float(t) for t in text.split(",")]
    if d == 1:
        if len(parts) != 2:
            raise ValueError("1D domain needs two comma-separated bounds a,b")
        return make_interval_grid(parts[0], parts[1], 21)
    if len(parts) != 4:
        raise ValueError("2D domain needs four bounds a1,b1,a2,b2")
    return make_rectangle_grid(parts[0], parts[1], parts[2], parts[3], 13, 13)


def _parse_func(spec, grid):
    d = grid.dim
    name, _, rest = spec.partition(":")
    if name == "const":
        return TestFunction.constant(float(rest or "1"), dim=d)
    if name == "affine":
        vals = [float(t) for t in rest.split(",")]
        if len(vals) != d + 1:
            raise ValueError(f"affine spec needs {d + 1} values in {d}D "
                             "(gradient components then offset)")
        return TestFunction.affine(vals[:-1], vals[-1], dim=d)
    if name == "quad":
        return TestFunction.quadratic(dim=d)
    if name == "gauss":
        vals = [float(t) for t in rest.split(",")]
        if len(vals) != d + 1:
            raise ValueError(f"gauss spec needs {d} center coordinates and a width")
        return TestFunction.gaussian_bump(vals[:-1], vals[-1])
    if name == "sine":
        return TestFunction.sine_mode(int(rest or "1"), grid)
    raise ValueError(f"unknown function spec {spec!r}")


def _parse_points(text, d):
    if d == 1:
        return np.asarray([float(t) for t in text.split(",")], float)
    pts = []
    for pair in text.split(";"):
        xy = [float(t) for t in pair.split(",")]
        if len(xy) != 2:
            raise ValueError("2D points are semicolon-separated x,y pairs")
        pts.append(xy)
    return np.asarray(pts, float)


def _eval_points(args, grid):
    if args.all_interior:
        return grid.interior_nodes()
    if not args.points:
        raise ValueError("either --points or --all-interior is required")
    return _parse_points(args.points, grid.dim)


def _rule(args):
    return RuleParams(levels=args.levels, ratio=args.ratio, gauss_order=args.gauss)


def _common_params(args, grid):
    return {
        "d": grid.dim,
        "domain": list(grid.bounds),
        "constant_mode": args.constant,
        "levels": args.levels,
        "ratio": args.ratio,
        "gauss_order": args.gauss,
    }


# ---------------------------------------------------------------------------

def _cmd_potential(args):
    grid = _parse_domain(args.domain, args.d)
    phi = _parse_func(args.func, grid)
    req = PotentialRequest(grid=grid, phi=phi, sigma=args.sigma,
                           eval_points=_eval_points(args, grid),
                           mode=ConstantMode.parse(args.constant), rule=_rule(args))
    results = riesz_potential_field(req)
    header = "x,value" if grid.dim == 1 else "x,y,value"
    rows = []
    for p, v in results:
        coords = [p] if grid.dim == 1 else list(p)
        rows.append(",".join(_fmt(c) for c in coords) + "," + _fmt(v))
    params = _common_params(args, grid)
    params.update({"sigma": args.sigma, "func": args.func,
                   "points": args.points, "all_interior": args.all_interior})
    _write_output(args, header, rows, params)
    return 0


def _cmd_fraclap(args):
    grid = _parse_domain(args.domain, args.d)
    phi = _parse_func(args.func, grid)
    defs = [Definition.parse(t) for t in args.definition]
    if not defs:
        raise ValueError("at least one --def is required")
    boundary = None
    needs_bc = any(d in (Definition.AUGMENTED, Definition.AUGMENTED_AS_PRINTED) for d in defs)
    if needs_bc:
        bq = boundary_quadrature(grid)
        if args.bc_from_func:
            boundary = BoundaryData.from_function(bq, phi)
        elif args.dirichlet is not None and args.neumann is not None:
            boundary = BoundaryData.from_values(bq, args.dirichlet, args.neumann)
        else:
            raise MissingBoundaryData(
                "augmented definitions need --bc-from-func or both "
                "--dirichlet and --neumann")
    pts = _eval_points(args, grid)
    columns = {}
    for dfn in defs:
        req = FracLapRequest(grid=grid, phi=phi, s=args.s, eval_points=pts,
                             mode=ConstantMode.parse(args.constant),
                             definition=dfn, boundary=boundary, rule=_rule(args))
        columns[dfn.value] = [v for _, v in evaluate(req)]
    coord_hdr = "x" if grid.dim == 1 else "x,y"
    rows = []
    if len(defs) == 1:
        header = f"{coord_hdr},value,definition"
        vals = columns[defs[0].value]
        for p, v in zip(np.atleast_1d(pts if grid.dim == 1 else [tuple(q) for q in pts]), vals):
            coords = [p] if grid.dim == 1 else list(p)
            rows.append(",".join(_fmt(c) for c in coords) + f",{_fmt(v)},{defs[0].value}")
    else:
        names = [d.value for d in defs]
        pair_cols = [f"reldiff_{a}_{b}" for i, a in enumerate(names) for b in names[i + 1:]]
        header = ",".join([coord_hdr] + names + pair_cols)
        for i in range(len(pts)):
            p = pts[i]
            coords = [p] if grid.dim == 1 else list(p)
            vals = [columns[n][i] for n in names]
            diffs = []
            for j, a in enumerate(names):
                for b in names[j + 1:]:
                    denom = max(abs(columns[a][i]), abs(columns[b][i]), 1e-300)
                    diffs.append(abs(columns[a][i] - columns[b][i]) / denom)
            rows.append(",".join(_fmt(c) for c in coords)
                        + "," + ",".join(_fmt(v) for v in vals)
                        + ("," + ",".join(_fmt(v) for v in diffs) if diffs else ""))
    params = _common_params(args, grid)
    params.update({"s": args.s, "func": args.func, "definitions": [d.value for d in defs],
                   "points": args.points, "all_interior": args.all_interior,
                   "bc_from_func": args.bc_from_func,
                   "dirichlet": args.dirichlet, "neumann": args.neumann})
    _write_output(args, header, rows, params)
    return 0


def _cmd_validate(args):
    recs = run_suite(args.suite, refinements=args.refinements)
    width = max(len(r["check"]) for r in recs)
    for r in recs:
        status = "PASS" if r["pass"] else "FAIL"
        print(f'{status}  {r["suite"]:<9} {r["check"]:<{width}}  '
              f'measured={r["measured"]:.3e}  tol={r["tolerance"]:.1e}')
    report = {"suite": args.suite, "checks": recs,
              "all_pass": all(r["pass"] for r in recs)}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    else:
        print(json.dumps(report))
    return 0 if report["all_pass"] else 1


def _parse_assemble(spec):
    kind, _, rest = spec.partition(":")
    if kind == "1d":
        n, ln = rest.split(",")
        return discrete.assemble_laplacian_1d(int(n), float(ln))
    if kind == "2d":
        nx, ny, lx, ly = rest.split(",")
        return discrete.assemble_laplacian_2d(int(nx), int(ny), float(lx), float(ly))
    raise ValueError(f"unknown assembly spec {spec!r}")


def _matrix_rows(m):
    return [",".join(_fmt(v) for v in row) for row in np.atleast_2d(m)]


def _cmd_matpow(args):
    if args.matrix:
        K = discrete.load_matrix_csv(args.matrix)
    elif args.assemble:
        K = _parse_assemble(args.assemble)
    else:
        raise ValueError("--matrix or --assemble is required")
    eig = discrete.sym_eigendecompose(K)
    alpha = args.s / 2.0
    params = {"matrix": args.matrix, "assemble": args.assemble, "s": args.s,
              "apply": args.apply, "check": args.check,
              "boundary_conditions": "homogeneous dirichlet"}
    if args.check:
        if args.check == "spectral":
            power = discrete.matrix_fractional_power(eig, alpha)
            lam = np.sort(np.linalg.eigvalsh(power))
            measured = float(np.max(np.abs(lam - eig.eigenvalues ** alpha)
                                    / np.maximum(eig.eigenvalues ** alpha, 1e-300)))
            tol = 1e-10
        else:
            pa = discrete.matrix_fractional_power(eig, alpha / 2.0)
            pab = discrete.matrix_fractional_power(eig, alpha)
            measured = float(np.linalg.norm(pa @ pa - pab, "fro")
                             / np.linalg.norm(pab, "fro"))
            tol = 1e-8
        ok = measured <= tol
        report = {"check": args.check, "measured": measured, "tolerance": tol, "pass": ok}
        print(json.dumps(report))
        return 0 if ok else 1
    if args.apply:
        vec = discrete.load_matrix_csv(args.apply).reshape(-1)
        out = discrete.apply_fraclap_discrete(eig, args.s, vec)
        _write_output(args, "value", [_fmt(v) for v in out], params)
        return 0
    power = discrete.matrix_fractional_power(eig, alpha)
    rows = _matrix_rows(power)
    _write_output(args, ",".join(f"c{j}" for j in range(power.shape[1])), rows, params)
    return 0


def _parse_ic(spec, n):
    name, _, rest = spec.partition(":")
    if name == "sine":
        k = int(rest or "1")
        j = np.arange(1, n + 1)
        return np.sin(k * np.pi * j / (n + 1))
    if name == "point":
        j = int(rest)
        if not 0 <= j < n:
            raise ValueError(f"point source node {j} outside 0..{n - 1}")
        u0 = np.zeros(n)
        u0[j] = 1.0
        return u0
    if name == "file":
        return discrete.load_matrix_csv(rest).reshape(-1)
    raise ValueError(f"unknown initial-condition spec {spec!r}")


def _cmd_diffuse(args):
    K = _parse_assemble(args.assemble)
    eig = discrete.sym_eigendecompose(K)
    u0 = _parse_ic(args.ic, eig.n)
    times = [float(t) for t in args.times.split(",")]
    sols = discrete.modal_diffusion_solve(eig, args.s, u0, times)
    rows = []
    for t, u in zip(times, sols):
        norm = float(np.linalg.norm(u))
        for node, v in enumerate(u):
            rows.append(f"{_fmt(t)},{node},{_fmt(v)},{_fmt(norm)}")
    params = {"assemble": args.assemble, "s": args.s, "ic": args.ic,
              "times": times, "boundary_conditions": "homogeneous dirichlet"}
    _write_output(args, "t,node,value,norm", rows, params)
    return 0


# ---------------------------------------------------------------------------

def _add_rule_flags(p):
    p.add_argument("--constant", choices=["paper", "standard"], default="paper")
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--ratio", type=float, default=0.5)
    p.add_argument("--gauss", type=int, default=8)
    p.add_argument("--out", default=None)


def build_parser():
    ap = argparse.ArgumentParser(prog="fraclap", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potential", help="truncated Riesz potential field")
    p.add_argument("--d", type=int, choices=[1, 2], required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--func", required=True)
    p.add_argument("--points", default=None)
    p.add_argument("--all-interior", action="store_true")
    _add_rule_flags(p)
    p.set_defaults(fn=_cmd_potential)

    p = sub.add_parser("fraclap", help="fractional Laplacian evaluators")
    p.add_argument("--d", type=int, choices=[1, 2], required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--def", dest="definition", action="append", default=[],
                   choices=[d.value for d in Definition])
    p.add_argument("--func", required=True)
    p.add_argument("--points", default=None)
    p.add_argument("--all-interior", action="store_true")
    p.add_argument("--bc-from-func", action="store_true")
    p.add_argument("--dirichlet", type=float, default=None)
    p.add_argument("--neumann", type=float, default=None)
    _add_rule_flags(p)
    p.set_defaults(fn=_cmd_fraclap)

    p = sub.add_parser("validate", help="run the invariant suites")
    p.add_argument("--suite", default="all",
                   choices=["special", "riesz", "fraclap", "greens", "discrete", "all"])
    p.add_argument("--refinements", type=int, default=3)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("matpow", help="matrix fractional power K^(s/2)")
    p.add_argument("--matrix", default=None)
    p.add_argument("--assemble", default=None)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--apply", default=None)
    p.add_argument("--check", choices=["semigroup", "spectral"], default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_matpow)

    p = sub.add_parser("diffuse", help="modal anomalous-diffusion solve")
    p.add_argument("--assemble", required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--ic", required=True)
    p.add_argument("--times", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_diffuse)
    return ap


_NUMERICAL_ERRORS = (GammaPole, NotSymmetric, NotPositiveDefinite, UnsupportedOperation)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except _NUMERICAL_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (MissingBoundaryData, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FracLapError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

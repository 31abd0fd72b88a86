"""Command-line entry points.

Subcommands: ``check-quadrangle``, ``turnover``, ``gkl``, ``figure``,
``scan``.  Exit-code contract: 0 pass, 2 checked failure (a certificate or
solver said no), 3 invalid input.  All outputs are byte-reproducible given
identical inputs, tolerances, and seed.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .disc import disc_distance, triangle_vertices
from .errors import ConvergenceError, GeometryError, InvalidSolutionError
from .invariants import InvariantReport, euler_via_mesh, invariant_report, toledo_via_coning
from .io import (
    SchemaError,
    load_quadrangle,
    quadrangle_to_json_dict,
    representation_to_json_dict,
    write_json,
)
from .meshes import turnover_section_mesh
from .quadrangle import validate_quadrangle
from .representations import (
    SolverSeed,
    TurnoverSignature,
    elliptic_fixed_point,
    fuchsian_turnover,
    orbifold_euler,
    turnover_solve,
)
from .svg import FigureSpec, write_svg
from .tolerances import TOL

EXIT_PASS = 0
EXIT_FAIL = 2
EXIT_INVALID = 3


def _tolerances(args):
    if getattr(args, "tol", None) is None:
        return TOL
    return dataclasses.replace(TOL, strict_margin=args.tol)


def _bend_tag(bend: float) -> str:
    s = f"{bend:.6f}".rstrip("0").rstrip(".")
    return (s or "0").replace("-", "m").replace(".", "p")


def _refinement_for(sig: TurnoverSignature, h: float) -> int:
    z1, z2, z3 = triangle_vertices(*sig.angles())
    side = max(disc_distance(z1, z2), disc_distance(z2, z3), disc_distance(z3, z1))
    return int(np.clip(np.ceil(side / h), 2, 24))


def run_turnover(sig: TurnoverSignature, bend: float, seed: int, mesh_h: float,
                 out_dir: Path, tol=TOL) -> dict:
    """Full turnover pipeline; returns a summary row and writes artifacts."""
    row = {
        "signature": list(sig.orders()),
        "bend": bend,
        "converged": False,
        "certificate_passed": None,
        "worst_relation_residual": None,
        "error": None,
    }
    tag = f"turnover_{sig.n1}-{sig.n2}-{sig.n3}_bend{_bend_tag(bend)}"
    try:
        if bend == 0.0:
            rep, quad = fuchsian_turnover(sig, tol=tol)
        else:
            rep, quad = turnover_solve(sig, bend, SolverSeed(seed=seed), tol=tol)
    except (ConvergenceError, InvalidSolutionError) as exc:
        row["error"] = str(exc)
        return row
    row["converged"] = True
    cert = quad.certificate
    row["certificate_passed"] = cert.passed
    row["worst_relation_residual"] = max(rep.relation_residuals().values())

    fixed = {name: elliptic_fixed_point(g) for name, g in rep.generators.items()}
    tau_raw = toledo_via_coning(rep, fixed, tol=tol)
    chi = orbifold_euler(sig)
    if bend == 0.0:
        mesh = turnover_section_mesh(sig.n1, sig.n2, sig.n3,
                                     refinement=_refinement_for(sig, mesh_h))
        degrees = euler_via_mesh(mesh, tol=tol)
        report = invariant_report(chi, tau_raw, degrees.euler_raw,
                                  mesh.snap_denominator(), tol=tol)
        if degrees.chi != chi:
            report.reliable = False
    else:
        # no section mesh away from the C-Fuchsian locus: no Euler degree
        report = InvariantReport(chi=chi, toledo_raw=tau_raw, euler_raw=None,
                                 reliable=False, tolerances=tol)

    out_dir.mkdir(parents=True, exist_ok=True)
    write_json(out_dir / f"{tag}.rep.json", representation_to_json_dict(rep))
    write_json(out_dir / f"{tag}.quad.json", quadrangle_to_json_dict(quad.config()))
    write_json(out_dir / f"{tag}.cert.json", cert.to_json_dict())
    write_json(out_dir / f"{tag}.report.json", report.to_json_dict())
    row["toledo_raw"] = tau_raw
    row["report_reliable"] = report.reliable
    return row


def cmd_check_quadrangle(args) -> int:
    try:
        config = load_quadrangle(args.input)
    except SchemaError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    cert = validate_quadrangle(config, tol=_tolerances(args))
    out_dir = Path(args.out) if args.out else Path(args.input).parent
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / (Path(args.input).stem + ".cert.json")
    write_json(out_path, cert.to_json_dict())
    print(f"certificate: {out_path}  pass={cert.passed}")
    if not cert.passed:
        for name, ok in (("K1", cert.k1), ("K2", cert.k2), ("K3", cert.k3)):
            if not ok:
                print(f"failed: {name}")
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _signature(ns) -> TurnoverSignature:
    n1, n2, n3 = ns
    return TurnoverSignature(n1, n2, n3)


def cmd_turnover(args) -> int:
    try:
        sig = _signature(args.n)
    except GeometryError as exc:
        print(f"invalid signature: {exc}", file=sys.stderr)
        return EXIT_INVALID
    row = run_turnover(sig, args.bend, args.seed, args.mesh,
                       Path(args.out), tol=_tolerances(args))
    if not row["converged"]:
        print(f"solver failed: {row['error']}", file=sys.stderr)
        return EXIT_FAIL
    print(
        f"signature {tuple(sig.orders())} bend {args.bend}: "
        f"certificate={'pass' if row['certificate_passed'] else 'fail'} "
        f"worst relation residual {row['worst_relation_residual']:.3g}"
    )
    return EXIT_PASS


def cmd_gkl(args) -> int:
    from .invariants import gkl_euler

    taus = [args.tau_abs] if args.tau_abs is not None else list(
        range(0, 2 * args.genus - 1, 2)
    )
    try:
        rows = [(tau_abs, gkl_euler(args.genus, tau_abs)) for tau_abs in taus]
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print("genus  |tau|  t  g1  g2  chi1  chi2  e  identity")
    for tau_abs, (e, chi1, chi2, t) in rows:
        g1 = -chi1 // 2
        g2 = -chi2 // 2
        ok = -3 * tau_abs == 2 * e + 2 * (2 - 2 * args.genus)
        print(f"{args.genus:5d}  {tau_abs:5d}  {t}  {g1:2d}  {g2:2d}  "
              f"{chi1:4d}  {chi2:4d}  {e:2d}  {'OK' if ok else 'FAIL'}")
    return EXIT_PASS


def cmd_figure(args) -> int:
    if not args.draw:
        print("nothing to draw", file=sys.stderr)
        return EXIT_INVALID
    try:
        sig = _signature(args.n)
    except GeometryError as exc:
        print(f"invalid signature: {exc}", file=sys.stderr)
        return EXIT_INVALID
    z1, z2, z3 = triangle_vertices(*sig.angles())
    z2m = z2 * np.exp(2j * np.pi / sig.n1)
    spec = FigureSpec(title=f"turnover ({sig.n1},{sig.n2},{sig.n3}) fundamental domain")
    if "polygon" in args.draw:
        spec.arcs += [(z1, z2), (z2, z3), (z3, z2m), (z2m, z1)]
        spec.labels += [("C1", z1), ("C2", z2), ("C3", z3)]
    if "quadrangle" in args.draw:
        for name, z in (("C1", z1), ("C2", z2), ("C3", z3), ("C4", z2m)):
            spec.markers.append((z, 0.04))
            if name == "C4":
                spec.labels.append((name, z))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_svg(out, spec)
    print(f"figure: {out}")
    return EXIT_PASS


def cmd_scan(args) -> int:
    grid = []
    seen = set()
    for ns in args.n:
        for bend in args.bend:
            key = (tuple(ns), float(bend))
            if key in seen:
                print(f"warning: duplicate grid point {key} skipped", file=sys.stderr)
                continue
            seen.add(key)
            grid.append(key)
    grid.sort()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    tol = _tolerances(args)

    def worker(key):
        ns, bend = key
        try:
            sig = _signature(ns)
        except GeometryError as exc:
            return {"signature": list(ns), "bend": bend, "converged": False,
                    "certificate_passed": None, "worst_relation_residual": None,
                    "error": f"invalid signature: {exc}"}
        try:
            return run_turnover(sig, bend, args.seed, args.mesh, out_dir, tol=tol)
        except GeometryError as exc:
            return {"signature": list(ns), "bend": bend, "converged": False,
                    "certificate_passed": None, "worst_relation_residual": None,
                    "error": str(exc)}

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        rows = list(pool.map(worker, grid))
    summary = {"format": "chdisc/1", "kind": "scan_summary", "rows": rows}
    write_json(out_dir / "summary.json", summary)
    for row in rows:
        status = "ok" if row["converged"] else f"failed ({row['error']})"
        print(f"{tuple(row['signature'])} bend {row['bend']}: {status}")
    print(f"summary: {out_dir / 'summary.json'}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chdisc",
        description="Quadrangles of bisectors, turnover representations, and "
                    "disc-bundle invariants in the complex hyperbolic plane.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-quadrangle", help="certify a quadrangle JSON file")
    p.add_argument("input", help="quadrangle JSON file (four polars)")
    p.add_argument("--out", help="output directory (default: alongside input)")
    p.add_argument("--tol", type=float, help="strict-margin tolerance override")
    p.set_defaults(func=cmd_check_quadrangle)

    p = sub.add_parser("turnover", help="build a turnover representation and invariants")
    p.add_argument("--n", type=int, nargs=3, required=True, metavar=("N1", "N2", "N3"))
    p.add_argument("--bend", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mesh", type=float, default=0.05, help="target mesh edge length")
    p.add_argument("--tol", type=float, help="strict-margin tolerance override")
    p.add_argument("--out", default="out", help="output directory")
    p.set_defaults(func=cmd_turnover)

    p = sub.add_parser("gkl", help="Euler numbers of the GKL disc-bundle construction")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--tau-abs", type=int, default=None)
    p.set_defaults(func=cmd_gkl)

    p = sub.add_parser("figure", help="SVG figure of a fundamental domain")
    p.add_argument("--n", type=int, nargs=3, required=True, metavar=("N1", "N2", "N3"))
    p.add_argument("--draw", nargs="+", choices=["polygon", "quadrangle"],
                   default=["polygon"])
    p.add_argument("--out", default="figure.svg")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("scan", help="run the turnover pipeline over a grid")
    p.add_argument("--n", type=int, nargs=3, action="append", required=True,
                   metavar=("N1", "N2", "N3"))
    p.add_argument("--bend", type=float, nargs="+", default=[0.0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mesh", type=float, default=0.05)
    p.add_argument("--tol", type=float, help="strict-margin tolerance override")
    p.add_argument("--jobs", type=int, default=2)
    p.add_argument("--out", default="scan_out")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

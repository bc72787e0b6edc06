"""Batch command-line interface.

Subcommands: gen, udg, prop1, lindep, certify, check, verify, pipeline.
Exit codes: 0 success, 1 verified failure (contract/check/counterexample),
2 usage errors. Module failures emit a structured error JSON on stdout.
All randomized paths take an explicit seed (default 0).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio
from .certify import certify_box, sample_verify, witness_norm
from .checker import check_certificate
from .colored import CoverFailure, EdgeColoredGraph, color_cover
from .dependence import DependenceConfig, ExtractionFailure, extract_dependences
from .norms import (
    AngleBound,
    NormOracle,
    PolygonError,
    SymmetricPolygon,
    choose_delta0,
    polygon_approx,
    square,
)
from .pointsets import (
    flat_side_quadratic,
    generic_unit_vectors,
    grid_pointset,
    subset_sum_pointset,
)
from .ratlin import Vec2
from .udg import build_udg


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from exc


def _emit(payload: dict, path: str | None):
    if path:
        jsonio.write_json(path, payload)
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _error(kind: str, message: str, **extra) -> int:
    payload = {"error": kind, "message": message}
    payload.update(extra)
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 1


# built-in certificate polygon for the pipeline: a rational 10-gon (m = 5)
# with unit-circle normals, η-short at sin²η = 2/5
def pipeline_decagon() -> SymmetricPolygon:
    return SymmetricPolygon.from_pairs([
        (Vec2.of(1, 0), 1),
        (Vec2.of(Fraction(4, 5), Fraction(3, 5)), 1),
        (Vec2.of(Fraction(7, 25), Fraction(24, 25)), 1),
        (Vec2.of(Fraction(-57, 185), Fraction(176, 185)), 1),
        (Vec2.of(Fraction(-4, 5), Fraction(3, 5)), 1),
    ])


def cmd_gen(args) -> int:
    if args.kind == "subset-sum":
        B = (jsonio.polygon_from_json(jsonio.read_json(args.polygon))
             if args.polygon else square())
        vectors = generic_unit_vectors(B, args.k)
        P = subset_sum_pointset(vectors)
    elif args.kind == "flat":
        P = flat_side_quadratic(args.n)
    elif args.kind == "grid":
        P = grid_pointset(args.w, args.h, args.step)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(args.kind)
    _emit(jsonio.points_to_json(P), args.out)
    return 0


def cmd_udg(args) -> int:
    P = jsonio.points_from_json(jsonio.read_json(args.points))
    B = jsonio.polygon_from_json(jsonio.read_json(args.polygon))
    G = build_udg(P, B)
    _emit(jsonio.udg_to_json(G), args.out)
    if args.csv:
        jsonio.write_color_csv(args.csv, G)
    if args.svg:
        jsonio.write_text(args.svg, jsonio.render_svg(P, G))
    return 0


def _load_colored_graph(path: str) -> EdgeColoredGraph:
    d = jsonio.read_json(path)
    if "sign" in d:
        return EdgeColoredGraph.from_udg(jsonio.udg_from_json(d))
    return jsonio.graph_from_json(d)


def cmd_prop1(args) -> int:
    G = _load_colored_graph(args.graph)
    try:
        res = color_cover(G, args.q, args.C, cap=args.exhaustive_cap,
                          seed=args.seed)
    except CoverFailure as exc:
        return _error("cover-failure", str(exc))
    _emit(jsonio.cover_to_json(res), args.out)
    return 0


def cmd_lindep(args) -> int:
    G = jsonio.udg_from_json(jsonio.read_json(args.udg))
    config = DependenceConfig(q=args.q, C=args.C, C0=args.C0,
                              exhaustive_cap=args.exhaustive_cap,
                              seed=args.seed)
    try:
        res = extract_dependences(G, config)
    except ExtractionFailure as exc:
        return _error("extraction-failure", str(exc))
    _emit(jsonio.system_to_json(res.system), args.out)
    if args.cover_out:
        jsonio.write_json(args.cover_out, jsonio.cover_to_json(res.cover))
    return 0


def cmd_certify(args) -> int:
    S = jsonio.system_from_json(jsonio.read_json(args.system))
    eta = AngleBound(args.eta_sin2)
    if args.polygon:
        B1 = jsonio.polygon_from_json(jsonio.read_json(args.polygon))
    elif args.oracle:
        oracle = jsonio.oracle_from_json(jsonio.read_json(args.oracle))
        B1 = polygon_approx(oracle, args.eps, eta)
    else:
        return _error("usage", "certify needs --polygon or --oracle")
    delta0 = args.delta0
    if delta0 is None:
        oracle = (jsonio.oracle_from_json(jsonio.read_json(args.oracle))
                  if args.oracle else NormOracle.of_polygon(B1))
        eps = args.eps if args.eps is not None else Fraction(1, 4)
        delta0 = choose_delta0(B1, oracle, eps, eta)
    cert = witness_norm(certify_box(S, B1, delta0, eta))
    _emit(jsonio.certificate_to_json(cert), args.out)
    return 0


def cmd_check(args) -> int:
    cert = jsonio.certificate_from_json(jsonio.read_json(args.cert))
    oracle = (jsonio.oracle_from_json(jsonio.read_json(args.oracle))
              if args.oracle else None)
    report = check_certificate(cert, oracle, args.eps)
    if report.ok:
        _emit({"ok": True}, args.out)
        return 0
    return _error("check-failed", "; ".join(report.failures),
                  failing_alphas=[[a + 1 for a in al]
                                  for al in report.failing_alphas])


def cmd_verify(args) -> int:
    cert = jsonio.certificate_from_json(jsonio.read_json(args.cert))
    report = sample_verify(cert, args.trials, args.seed)
    _emit(jsonio.report_to_json(report), args.out)
    return 1 if (report.counterexample_found or not report.sweep_ok) else 0


def cmd_pipeline(args) -> int:
    out = args.out_dir.rstrip("/")
    P = flat_side_quadratic(args.n)
    B_build = square()
    G = build_udg(P, B_build)
    jsonio.write_json(f"{out}/points.json", jsonio.points_to_json(P))
    jsonio.write_json(f"{out}/graph.json", jsonio.udg_to_json(G))
    jsonio.write_color_csv(f"{out}/graph.csv", G)
    jsonio.write_text(f"{out}/graph.svg", jsonio.render_svg(P, G))
    config = DependenceConfig(q=args.q, C=args.C,
                              exhaustive_cap=args.exhaustive_cap,
                              seed=args.seed)
    try:
        res = extract_dependences(G, config)
    except ExtractionFailure as exc:
        return _error("extraction-failure", str(exc))
    jsonio.write_json(f"{out}/system.json", jsonio.system_to_json(res.system))
    jsonio.write_json(f"{out}/cover.json", jsonio.cover_to_json(res.cover))
    B1 = (jsonio.polygon_from_json(jsonio.read_json(args.cert_polygon))
          if args.cert_polygon else pipeline_decagon())
    eta = AngleBound(args.eta_sin2)
    oracle = NormOracle.of_polygon(B1)
    delta0 = args.delta0 or choose_delta0(B1, oracle, args.eps, eta)
    cert = witness_norm(certify_box(res.system, B1, delta0, eta))
    jsonio.write_json(f"{out}/certificate.json",
                      jsonio.certificate_to_json(cert))
    check = check_certificate(cert, oracle, args.eps)
    verify = sample_verify(cert, args.trials, args.seed)
    jsonio.write_json(f"{out}/report.json", jsonio.report_to_json(verify))
    summary = {
        "points": len(P),
        "edges": G.edge_count,
        "colors": G.k,
        "ell": res.system.ell,
        "kills": len(cert.kills),
        "delta0": str(delta0),
        "delta": str(cert.delta),
        "check_ok": check.ok,
        "check_failures": check.failures,
        "counterexample_found": verify.counterexample_found,
        "sweep_ok": verify.sweep_ok,
    }
    jsonio.write_json(f"{out}/summary.json", summary)
    json.dump(summary, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    ok = check.ok and not verify.counterexample_found and verify.sweep_ok
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="udnorm",
        description="Unit-distance experiments and perturbation certificates "
                    "for planar polygonal norms.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a point sequence")
    p.add_argument("--kind", choices=["subset-sum", "flat", "grid"],
                   required=True)
    p.add_argument("--k", type=int, default=3,
                   help="subset-sum: number of generator vectors")
    p.add_argument("--n", type=int, default=10, help="flat: point count")
    p.add_argument("--w", type=int, default=3)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--step", type=_rational, default=Fraction(1))
    p.add_argument("--polygon", help="subset-sum: polygon JSON for unit vectors")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("udg", help="build the decorated unit-distance graph")
    p.add_argument("--points", required=True)
    p.add_argument("--polygon", required=True)
    p.add_argument("--out")
    p.add_argument("--csv", help="per-color edge counts (CSV)")
    p.add_argument("--svg", help="render points and edges (SVG)")
    p.set_defaults(func=cmd_udg)

    p = sub.add_parser("prop1", help="connected color cover search")
    p.add_argument("--graph", required=True,
                   help="edge-colored graph (or decorated UDG) JSON")
    p.add_argument("--q", type=_rational, default=Fraction(2001, 1000))
    p.add_argument("--C", type=_rational, default=Fraction(1))
    p.add_argument("--exhaustive-cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_prop1)

    p = sub.add_parser("lindep", help="extract direction dependences")
    p.add_argument("--udg", required=True)
    p.add_argument("--q", type=_rational, default=Fraction(2001, 1000))
    p.add_argument("--C", type=_rational, default=Fraction(1))
    p.add_argument("--C0", type=_rational, default=Fraction(1))
    p.add_argument("--exhaustive-cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--cover-out")
    p.set_defaults(func=cmd_lindep)

    p = sub.add_parser("certify", help="build a box certificate + witness")
    p.add_argument("--system", required=True)
    p.add_argument("--polygon", help="η-short certificate polygon JSON")
    p.add_argument("--oracle", help="norm oracle JSON to approximate instead")
    p.add_argument("--eps", type=_rational, default=None)
    p.add_argument("--eta-sin2", type=_rational, required=True,
                   help="(sin η)² as a rational")
    p.add_argument("--delta0", type=_rational, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check", help="independently re-validate a certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--oracle")
    p.add_argument("--eps", type=_rational, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="randomized + directed refutation search")
    p.add_argument("--cert", required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pipeline",
                       help="end to end: points → udg → lindep → certify → verify")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--q", type=_rational, default=Fraction(2001, 1000))
    p.add_argument("--C", type=_rational, default=Fraction(1, 4))
    p.add_argument("--eta-sin2", type=_rational, default=Fraction(2, 5))
    p.add_argument("--eps", type=_rational, default=Fraction(1, 4))
    p.add_argument("--delta0", type=_rational, default=None)
    p.add_argument("--cert-polygon")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--exhaustive-cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_pipeline)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PolygonError, ValueError, OSError) as exc:
        return _error(type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())

"""JSON (de)serialization for every public type, plus atomic file writes,
CSV color-count emission, and a minimal SVG renderer for point/edge sets.

All rationals serialize as canonical strings ('n' or 'num/den' in lowest
terms); side-assignment values are 1-based on the wire.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from typing import Optional

from .certify import (
    AdmissibleAssignment,
    AffineForm,
    KillRecord,
    NormCertificate,
    OffsetBox,
    VerifyReport,
)
from .colored import CoverResult, CutParams, EdgeColoredGraph, GreedyTrace, RobustCoreResult, WeakCut
from .dependence import DependenceSystem
from .norms import AngleBound, NormOracle, OffsetVector, SymmetricPolygon
from .pointsets import PointSeq
from .ratlin import Vec2, rat_from_str, rat_to_str
from .udg import DecoratedUDG


def _vec(v: Vec2) -> list[str]:
    return [rat_to_str(v.x), rat_to_str(v.y)]


def _unvec(pair) -> Vec2:
    return Vec2(rat_from_str(pair[0]), rat_from_str(pair[1]))


def polygon_to_json(B: SymmetricPolygon) -> dict:
    return {
        "m": B.m,
        "normals": [_vec(n) for n in B.normals],
        "offsets": [rat_to_str(c) for c in B.offsets],
    }


def polygon_from_json(d: dict) -> SymmetricPolygon:
    B = SymmetricPolygon.from_pairs(
        (_unvec(n), rat_from_str(c)) for n, c in zip(d["normals"], d["offsets"])
    )
    if "m" in d and d["m"] != B.m:
        raise ValueError("polygon side-pair count does not match payload")
    return B


def oracle_to_json(o: NormOracle) -> dict:
    if o.kind == "polygon":
        return {"kind": "polygon", "polygon": polygon_to_json(o.polygon)}
    if o.kind == "pnorm":
        return {"kind": "pnorm", "p": rat_to_str(o.p)}
    return {"kind": "euclidean"}


def oracle_from_json(d: dict) -> NormOracle:
    kind = d["kind"]
    if kind == "polygon":
        return NormOracle.of_polygon(polygon_from_json(d["polygon"]))
    if kind == "pnorm":
        return NormOracle.pnorm(rat_from_str(d["p"]))
    if kind == "euclidean":
        return NormOracle.euclidean()
    raise ValueError(f"unknown norm kind {kind!r}")


def points_to_json(P: PointSeq) -> dict:
    return {"points": [_vec(p) for p in P]}


def points_from_json(d: dict) -> PointSeq:
    return PointSeq(tuple(_unvec(p) for p in d["points"]))


def _edge_key(e) -> str:
    return f"{e[0]},{e[1]}"


def _parse_edge(s: str) -> tuple[int, int]:
    a, b = s.split(",")
    return (int(a), int(b))


def udg_to_json(G: DecoratedUDG) -> dict:
    out = {
        "n": G.n,
        "edges": [list(e) for e in G.edges],
        "color": {_edge_key(e): c for e, c in zip(G.edges, G.colors)},
        "sign": {_edge_key(e): s for e, s in zip(G.edges, G.signs)},
    }
    if G.directions is not None:
        out["directions"] = [_vec(u) for u in G.directions]
    return out


def udg_from_json(d: dict) -> DecoratedUDG:
    edges = tuple(sorted((int(a), int(b)) for a, b in d["edges"]))
    colors = tuple(int(d["color"][_edge_key(e)]) for e in edges)
    signs = tuple(int(d["sign"][_edge_key(e)]) for e in edges)
    directions = None
    if d.get("directions") is not None:
        directions = tuple(_unvec(u) for u in d["directions"])
    return DecoratedUDG(int(d["n"]), edges, colors, signs, directions)


def graph_to_json(G: EdgeColoredGraph) -> dict:
    return {
        "n": G.n,
        "edges": [list(e) for e in G.edges],
        "color": {_edge_key(e): c for e, c in zip(G.edges, G.colors)},
    }


def graph_from_json(d: dict) -> EdgeColoredGraph:
    edges = tuple(sorted((int(a), int(b)) for a, b in d["edges"]))
    colors = tuple(int(d["color"][_edge_key(e)]) for e in edges)
    return EdgeColoredGraph(int(d["n"]), edges, colors)


def cover_to_json(res: CoverResult) -> dict:
    return {
        "W": list(res.W),
        "I": list(res.I),
        "colors_in_W": res.colors_in_W,
        "trace": {
            "colors": list(res.trace.colors_chosen),
            "component_counts": list(res.trace.component_counts),
        },
        "robust": {
            "W": list(res.robust.W),
            "cuts": [
                {"A": list(c.A), "B": list(c.B), "delta": c.delta}
                for c in res.robust.trace
            ],
            "hypothesis_met": res.robust.hypothesis_met,
        },
        "params": {
            "r": rat_to_str(res.params.r),
            "q": rat_to_str(res.params.q),
            "C": rat_to_str(res.params.C),
        },
        "edge_hypothesis_met": res.edge_hypothesis_met,
    }


def cover_from_json(d: dict) -> CoverResult:
    return CoverResult(
        W=tuple(d["W"]),
        I=tuple(d["I"]),
        colors_in_W=int(d["colors_in_W"]),
        trace=GreedyTrace(
            tuple(d["trace"]["colors"]),
            tuple(d["trace"]["component_counts"]),
        ),
        robust=RobustCoreResult(
            W=tuple(d["robust"]["W"]),
            trace=tuple(
                WeakCut(tuple(c["A"]), tuple(c["B"]), int(c["delta"]))
                for c in d["robust"]["cuts"]
            ),
            hypothesis_met=bool(d["robust"]["hypothesis_met"]),
        ),
        params=CutParams(
            r=rat_from_str(d["params"]["r"]),
            q=rat_from_str(d["params"]["q"]),
            C=rat_from_str(d["params"]["C"]),
        ),
        edge_hypothesis_met=bool(d["edge_hypothesis_met"]),
    )


def system_to_json(S: DependenceSystem) -> dict:
    return {
        "l": S.ell,
        "indices": list(S.indices),
        "coeffs": [list(row) for row in S.coeffs],
    }


def system_from_json(d: dict) -> DependenceSystem:
    return DependenceSystem(
        ell=int(d["l"]),
        indices=tuple(int(i) for i in d["indices"]),
        coeffs=tuple(tuple(int(c) for c in row) for row in d["coeffs"]),
    )


def box_to_json(box: OffsetBox) -> dict:
    return {
        "lo": [rat_to_str(v) for v in box.lo],
        "hi": [rat_to_str(v) for v in box.hi],
    }


def box_from_json(d: dict) -> OffsetBox:
    return OffsetBox(
        OffsetVector(tuple(rat_from_str(v) for v in d["lo"])),
        OffsetVector(tuple(rat_from_str(v) for v in d["hi"])),
    )


def _affine_to_json(h: AffineForm) -> dict:
    return {
        "const": rat_to_str(h.const),
        "coeffs": [rat_to_str(c) for c in h.coeffs],
    }


def _affine_from_json(d: dict) -> AffineForm:
    return AffineForm(
        rat_from_str(d["const"]),
        tuple(rat_from_str(c) for c in d["coeffs"]),
    )


def certificate_to_json(cert: NormCertificate) -> dict:
    out = {
        "polygon": polygon_to_json(cert.polygon),
        "box": box_to_json(cert.box),
        "system": system_to_json(cert.system),
        "eta_sin_sq": rat_to_str(cert.eta.sin_sq),
        "degenerate": cert.degenerate,
        "kills": [
            {
                # 1-based side ids on the wire
                "alpha": [a + 1 for a in rec.alpha.alpha],
                "y": [rat_to_str(v) for v in rec.y],
                "h": _affine_to_json(rec.h),
                "sign": rec.sign,
            }
            for rec in cert.kills
        ],
    }
    if cert.has_witness():
        out["witness"] = {
            "in": polygon_to_json(cert.witness_in),
            "mid": polygon_to_json(cert.witness_mid),
            "out": polygon_to_json(cert.witness_out),
        }
        out["delta"] = rat_to_str(cert.delta)
    return out


def certificate_from_json(d: dict) -> NormCertificate:
    witness = d.get("witness")
    return NormCertificate(
        polygon=polygon_from_json(d["polygon"]),
        box=box_from_json(d["box"]),
        kills=tuple(
            KillRecord(
                alpha=AdmissibleAssignment(tuple(int(a) - 1 for a in k["alpha"])),
                y=tuple(rat_from_str(v) for v in k["y"]),
                h=_affine_from_json(k["h"]),
                sign=int(k["sign"]),
            )
            for k in d["kills"]
        ),
        system=system_from_json(d["system"]),
        eta=AngleBound(rat_from_str(d["eta_sin_sq"])),
        degenerate=bool(d.get("degenerate", False)),
        witness_in=polygon_from_json(witness["in"]) if witness else None,
        witness_mid=polygon_from_json(witness["mid"]) if witness else None,
        witness_out=polygon_from_json(witness["out"]) if witness else None,
        delta=rat_from_str(d["delta"]) if "delta" in d else None,
    )


def report_to_json(rep: VerifyReport) -> dict:
    return {
        "trials": rep.trials,
        "alphas_checked": rep.alphas_checked,
        "sweep_ok": rep.sweep_ok,
        "counterexample_found": rep.counterexample_found,
        "hits": [
            {
                "alpha": [a + 1 for a in h.alpha.alpha],
                "t": [rat_to_str(v) for v in h.t],
                "directions": [_vec(u) for u in h.directions],
                "in_trapezoids": h.in_trapezoids,
                "eta_separated": h.eta_separated,
                "source": h.source,
            }
            for h in rep.hits
        ],
    }


# --- files --------------------------------------------------------------------


def write_json(path: str, payload: dict):
    """Atomic write: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def write_color_csv(path: str, G: DecoratedUDG):
    """Per-color edge counts: color id, canonical direction (when known),
    edge count."""
    counts: dict[int, int] = {}
    for c in G.colors:
        counts[c] = counts.get(c, 0) + 1
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["color", "direction_x", "direction_y", "edges"])
        for c in sorted(counts):
            if G.directions is not None:
                u = G.directions[c - 1]
                writer.writerow([c, rat_to_str(u.x), rat_to_str(u.y), counts[c]])
            else:
                writer.writerow([c, "", "", counts[c]])
    os.replace(tmp, path)


def render_svg(P: PointSeq, G: Optional[DecoratedUDG] = None,
               size: int = 640) -> str:
    """Display-only SVG of the point set with unit-distance edges."""
    xs = [float(p.x) for p in P]
    ys = [float(p.y) for p in P]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.08 * span
    scale = size / (span + 2 * pad)

    def sx(x):
        return (x - x0 + pad) * scale

    def sy(y):
        return size - (y - y0 + pad) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    palette = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
    if G is not None:
        for (a, b), c in zip(G.edges, G.colors):
            pa, pb = P[a - 1], P[b - 1]
            color = palette[(c - 1) % len(palette)]
            parts.append(
                f'<line x1="{sx(float(pa.x)):.2f}" y1="{sy(float(pa.y)):.2f}" '
                f'x2="{sx(float(pb.x)):.2f}" y2="{sy(float(pb.y)):.2f}" '
                f'stroke="{color}" stroke-width="1.2"/>'
            )
    for p in P:
        parts.append(
            f'<circle cx="{sx(float(p.x)):.2f}" cy="{sy(float(p.y)):.2f}" '
            f'r="3" fill="black"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def write_text(path: str, content: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(content)
    os.replace(tmp, path)

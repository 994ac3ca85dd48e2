"""JSON, CSV and DOT formats.

Rationals travel as "p/q" strings so files stay exact; float mirrors sit
next to them where a plotting tool might want them.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .complex import IsoCertificate, SimplicialComplex
from .exact import fmt, fmt_vec, vec
from .geometry import ConvexCover, ConvexFamily, GeometricStar, Separator, VPolytope
from .mapper import Box, IndexedCover, Interval, Lens, MapperOutput, NodeInfo, PointCloud, PointSet, StarOf


class FormatError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from e


def _floats(v) -> list[float]:
    return [float(x) for x in v]


# complexes


def complex_to_json(K: SimplicialComplex) -> dict:
    return {"faces": [list(s) for s in K.facets()]}


def complex_from_json(obj: Any) -> SimplicialComplex:
    if isinstance(obj, dict) and "complex" in obj:
        obj = obj["complex"]
    if not isinstance(obj, dict) or not isinstance(obj.get("faces"), list):
        raise FormatError('complex JSON needs a "faces" list')
    try:
        return SimplicialComplex.from_faces(obj["faces"])
    except (TypeError, ValueError) as e:
        raise FormatError(f"bad complex: {e}") from e


# point clouds


def read_points_csv(path) -> PointCloud:
    text = Path(path).read_text()
    return points_from_csv(text, str(path))


def points_from_csv(text: str, name: str = "<csv>") -> PointCloud:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows or rows[0][0].strip() != "id":
        raise FormatError(f"{name}: header must start with 'id'")
    pts = {}
    for lineno, r in enumerate(rows[1:], start=2):
        if len(r) != len(rows[0]):
            raise FormatError(f"{name}:{lineno}: expected {len(rows[0])} fields")
        try:
            pid = int(r[0])
            coords = vec(c for c in r[1:])
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(f"{name}:{lineno}: {e}") from e
        if pid in pts:
            raise FormatError(f"{name}:{lineno}: duplicate point id {pid}")
        pts[pid] = coords
    return PointCloud(pts)


def points_to_csv(X: PointCloud) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id"] + [f"x{i}" for i in range(X.ambient_dim)])
    for pid, p in X.points.items():
        w.writerow([pid] + fmt_vec(p))
    return buf.getvalue()


# lenses


def lens_to_json(f: Lens) -> dict:
    if f.kind == "projection":
        return {"kind": "projection", "axis": f.axis}
    if f.kind == "face":
        return {"kind": "face", "table": {str(k): list(v) for k, v in f.table.items()}}
    return {
        "kind": "point",
        "table": {str(k): fmt_vec(v) for k, v in f.table.items()},
        "table_float": {str(k): _floats(v) for k, v in f.table.items()},
    }


def lens_from_json(obj: Any) -> Lens:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FormatError('lens JSON needs a "kind" of face, point or projection')
    try:
        if obj["kind"] == "projection":
            return Lens("projection", axis=int(obj["axis"]))
        table = obj.get("table")
        if not isinstance(table, dict):
            raise FormatError('lens JSON needs a "table" object')
        return Lens(obj["kind"], {int(k): v for k, v in table.items()})
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad lens: {e}") from e


# covers


def shape_to_json(s) -> dict:
    if isinstance(s, StarOf):
        return {"type": "star", "vertex": s.vertex}
    if isinstance(s, Interval):
        return {"type": "interval", "lo": fmt(s.lo), "hi": fmt(s.hi)}
    if isinstance(s, Box):
        return {"type": "box", "lo": fmt_vec(s.lo), "hi": fmt_vec(s.hi)}
    if isinstance(s, VPolytope):
        return {"type": "polytope", "generators": [fmt_vec(g) for g in s.generators]}
    if isinstance(s, PointSet):
        return {"type": "points", "ids": sorted(s.ids)}
    if isinstance(s, GeometricStar):
        return {
            "type": "geometric-star",
            "vertex": s.vertex,
            "faces": [{"face": list(f), "points": [fmt_vec(p) for p in pts]} for f, pts in s.faces],
        }
    raise FormatError(f"cannot serialize cover shape {s!r}")


def shape_from_json(obj: Any):
    try:
        kind = obj["type"]
        if kind == "star":
            return StarOf(int(obj["vertex"]))
        if kind == "interval":
            return Interval(obj["lo"], obj["hi"])
        if kind == "box":
            return Box(obj["lo"], obj["hi"])
        if kind == "polytope":
            return VPolytope(tuple(obj["generators"]))
        if kind == "points":
            return PointSet(frozenset(obj["ids"]))
        if kind == "geometric-star":
            faces = tuple(
                (tuple(int(v) for v in f["face"]), tuple(vec(p) for p in f["points"])) for f in obj["faces"]
            )
            return GeometricStar(int(obj["vertex"]), faces)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad cover element {obj!r}: {e}") from e
    raise FormatError(f"unknown cover element type {obj.get('type')!r}")


def cover_to_json(cover: IndexedCover) -> list:
    return [shape_to_json(s) for s in cover.shapes]


def cover_from_json(obj: Any) -> IndexedCover:
    if not isinstance(obj, list):
        raise FormatError("cover JSON must be a list of cover elements")
    return IndexedCover(tuple(shape_from_json(o) for o in obj))


# convex families


def family_to_json(F: ConvexFamily) -> dict:
    return {
        "sets": [[fmt_vec(g) for g in P.generators] for P in F.sets],
        "sets_float": [[_floats(g) for g in P.generators] for P in F.sets],
        "witnesses": [{"indices": list(k), "point": fmt_vec(p)} for k, p in sorted(F.witnesses.items())],
        "separators": [
            {"pair": list(k), "normal": fmt_vec(s.normal), "offset": fmt(s.offset)}
            for k, s in sorted(F.separators.items())
        ],
        "empty": [list(k) for k in F.empty_tuples],
    }


def family_from_json(obj: Any) -> ConvexFamily:
    if isinstance(obj, dict) and "family" in obj:
        obj = obj["family"]
    try:
        sets = tuple(VPolytope(tuple(g)) for g in obj["sets"])
        wit = {tuple(w["indices"]): vec(w["point"]) for w in obj.get("witnesses", [])}
        seps = {
            tuple(s["pair"]): Separator(vec(s["normal"]), Fraction(s["offset"]))
            for s in obj.get("separators", [])
        }
        empty = tuple(tuple(e) for e in obj.get("empty", []))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(f"bad convex family: {e}") from e
    return ConvexFamily(sets, wit, seps, empty)


# outputs


def mapper_to_json(out: MapperOutput) -> dict:
    return {
        "complex": complex_to_json(out.complex),
        "provenance": {
            str(v): {"cover_index": n.cover_index, "cluster": n.cluster, "members": sorted(n.members)}
            for v, n in sorted(out.provenance.items())
        },
    }


def mapper_from_json(obj: Any) -> MapperOutput:
    K = complex_from_json(obj)
    prov = {
        int(v): NodeInfo(int(n["cover_index"]), int(n["cluster"]), frozenset(n["members"]))
        for v, n in obj.get("provenance", {}).items()
    }
    return MapperOutput(K, prov)


def cert_to_json(cert: IsoCertificate | None) -> dict:
    if cert is None:
        return {"isomorphic": False}
    return {"isomorphic": True, "mapping": {str(k): v for k, v in sorted(cert.mapping.items())}}


def convex_cover_to_json(cc: ConvexCover) -> dict:
    return {
        "backend": "convex",
        "complex": complex_to_json(cc.complex),
        "family": family_to_json(cc.family),
        "lens": lens_to_json(cc.lens),
        "anchors": [{"face": list(s), "point": fmt_vec(p)} for s, p in cc.anchors.items()],
        "trial": cc.trial,
        "fatten": fmt(cc.fatten),
        "stats": dict(cc.stats),
    }


def to_dot(obj: MapperOutput | SimplicialComplex, name: str = "mapper") -> str:
    """Graphviz text for the 1-skeleton; Mapper vertices list their member points."""
    K = obj.complex if isinstance(obj, MapperOutput) else obj
    lines = [f"graph {name} {{"]
    for v in K.vertices:
        if isinstance(obj, MapperOutput):
            n = obj.provenance[v]
            members = ",".join(str(p) for p in sorted(n.members))
            label = f"U{n.cover_index}" + (f".{n.cluster}" if n.cluster else "") + f"\\n{{{members}}}"
        else:
            label = str(v)
        lines.append(f'  v{v} [label="{label}"];')
    for a, b in K.edges:
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def convex_cover_from_json(obj: Any) -> ConvexCover:
    try:
        anchors = {tuple(a["face"]): vec(a["point"]) for a in obj["anchors"]}
        return ConvexCover(
            complex_from_json(obj["complex"]),
            family_from_json(obj["family"]),
            lens_from_json(obj["lens"]),
            anchors,
            int(obj.get("trial", 0)),
            Fraction(obj.get("fatten", "0")),
            dict(obj.get("stats", {})),
        )
    except (KeyError, TypeError) as e:
        raise FormatError(f"bad convex parameters: {e}") from e


def lipschitz_data_to_json(points: PointCloud, values: dict) -> dict:
    return {
        "points": {str(k): fmt_vec(p) for k, p in points.points.items()},
        "values": {str(k): fmt_vec(v) for k, v in sorted(values.items())},
    }

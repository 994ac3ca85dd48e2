"""Command-line entry point.

Exit codes: 0 ok, 1 negative answer (not isomorphic / mismatch / changed),
2 malformed input, 3 lens and cover incompatible, 4 convex search exhausted,
5 too few points, 6 new point outside every safety ball.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import platform
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .complex import ComplexError, isomorphic
from .exact import fmt, fmt_vec
from .extension import (
    ExtensionError,
    LipschitzData,
    PointOutsideU,
    mcshane_extend,
    safety_radii,
    verify_stability,
)
from .geometry import GeometryError, SearchConfig, SearchExhausted, certify_family, geometric_star_cover, synthesize_convex_cover
from .inverse import InsufficientPoints, synthesize_star_params
from .mapper import IncompatibleCoverShape, MapperError, PointCloud, SingleLinkage, mapper_run, mapper_trivial
from . import serialize as ser

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_INCOMPATIBLE, EXIT_EXHAUSTED, EXIT_POINTS, EXIT_OUTSIDE = range(7)


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    seed: int | None = None
    versions: dict[str, str] = field(default_factory=dict)
    outcome: dict = field(default_factory=dict)


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _manifest(args, argv, paths: dict) -> RunManifest:
    return RunManifest(
        command=list(argv),
        inputs={k: _digest(p) for k, p in sorted(paths.items()) if p},
        seed=getattr(args, "seed", None),
        versions={"mapperforge": __version__, "python": platform.python_version()},
    )


def _write(out_dir, files: dict[str, str]) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in sorted(files.items()):
        (out / name).write_text(text)


def _fail(code: int, msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def cmd_mapper(args, argv) -> int:
    X = ser.read_points_csv(args.points)
    lens = ser.lens_from_json(ser.load_json(args.lens))
    cover = ser.cover_from_json(ser.load_json(args.cover))
    method = "trivial" if args.cluster == "trivial" else SingleLinkage(Fraction(args.eps))
    try:
        out = mapper_run(X, lens, cover, method, args.max_dim)
    except IncompatibleCoverShape as e:
        return _fail(EXIT_INCOMPATIBLE, str(e))
    files = {"mapper.json": ser.dumps(ser.mapper_to_json(out)), "mapper.dot": ser.to_dot(out)}
    if args.out_dir:
        man = _manifest(args, argv, {"points": args.points, "lens": args.lens, "cover": args.cover})
        man.outcome = {"vertices": len(out.complex.vertices), "faces": len(out.complex)}
        files["manifest.json"] = ser.dumps(asdict(man))
        _write(args.out_dir, files)
    else:
        sys.stdout.write(files["mapper.dot" if args.format == "dot" else "mapper.json"])
    return EXIT_OK


def cmd_inverse(args, argv) -> int:
    K = ser.complex_from_json(ser.load_json(args.complex))
    X = ser.read_points_csv(args.points)
    d = args.dim if args.dim is not None else max(K.dim, 1)
    man = _manifest(args, argv, {"complex": args.complex, "points": args.points})
    try:
        if args.backend == "star":
            p = synthesize_star_params(K, X)
            cover, lens = p.cover, p.lens
            params = {"backend": "star", "complex": ser.complex_to_json(K)}
        elif args.backend == "geometric-star":
            g = geometric_star_cover(K, X, d)
            cover, lens = g.cover, g.lens
            params = {
                "backend": "geometric-star",
                "complex": ser.complex_to_json(K),
                "embedding": {str(v): fmt(t) for v, t in g.embedding.parameters.items()},
                "ambient_dim": g.embedding.ambient_dim,
            }
        else:
            cfg = SearchConfig(seed=args.seed, max_trials=args.max_trials)
            cc = synthesize_convex_cover(K, X, d, cfg)
            cover, lens = cc.cover(), cc.lens
            params = ser.convex_cover_to_json(cc)
    except InsufficientPoints as e:
        return _fail(EXIT_POINTS, f"{e} (the construction needs |X| >= |K\\V| + |I|)")
    except SearchExhausted as e:
        print(json.dumps({"search_exhausted": e.stats}), file=sys.stdout)
        return _fail(EXIT_EXHAUSTED, str(e))

    out = mapper_trivial(X, lens, cover, max(K.dim, 0))
    cert = isomorphic(out.complex, K)
    if cert is None:
        return _fail(EXIT_NO, "round trip produced a non-isomorphic complex (bug)")
    params.setdefault("cover", ser.cover_to_json(cover))
    params.setdefault("lens", ser.lens_to_json(lens))
    params["certificate"] = ser.cert_to_json(cert)
    text = ser.dumps(params)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    if args.out_dir:
        man.outcome = {"backend": args.backend, "isomorphic": True}
        _write(
            args.out_dir,
            {
                "params.json": text,
                "cover.json": ser.dumps(ser.cover_to_json(cover)),
                "lens.json": ser.dumps(ser.lens_to_json(lens)),
                "complex.json": ser.dumps(ser.complex_to_json(K)),
                "mapper.json": ser.dumps(ser.mapper_to_json(out)),
                "mapper.dot": ser.to_dot(out),
                "certificate.json": ser.dumps(ser.cert_to_json(cert)),
                "manifest.json": ser.dumps(asdict(man)),
            },
        )
    if not args.out and not args.out_dir:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_certify(args, argv) -> int:
    fam = ser.family_from_json(ser.load_json(args.family))
    K = ser.complex_from_json(ser.load_json(args.complex))
    res = certify_family(fam, K, args.max_dim)
    if not res:
        print(json.dumps({"certified": False, "vertices": list(res.vertices), "expected_face": res.expected_face}))
        return EXIT_NO
    sys.stdout.write(ser.dumps({"certified": True, "family": ser.family_to_json(res.family)}))
    return EXIT_OK


def cmd_iso(args, argv) -> int:
    A = ser.complex_from_json(ser.load_json(args.first))
    B = ser.complex_from_json(ser.load_json(args.second))
    cert = isomorphic(A, B)
    if cert is None:
        diff = {"f_vector": [list(A.f_vector()), list(B.f_vector())]}
        print(json.dumps({"isomorphic": False, **diff}))
        return EXIT_NO
    sys.stdout.write(ser.dumps(ser.cert_to_json(cert)))
    return EXIT_OK


def _load_data(path) -> LipschitzData:
    obj = ser.load_json(path)
    try:
        X = PointCloud({int(k): v for k, v in obj["points"].items()})
        lip_sq = Fraction(obj["lip_sq"]) if "lip_sq" in obj else None
        return LipschitzData(X, {int(k): v for k, v in obj["values"].items()}, lip_sq)
    except (KeyError, TypeError, ZeroDivisionError) as e:
        raise ser.FormatError(f"bad Lipschitz data: {e}") from e


def _radii_json(r) -> dict:
    return {
        "lip_sq": fmt(r.data.lip_sq),
        "lip_bound": fmt(r.data.lip_bound),
        "extension": "coordinate-wise McShane; Lipschitz constant at most sqrt(d)*L, radii shrunk by sqrt(d)",
        "radii": {str(k): fmt(v) for k, v in r.radii.items()},
        "radii_float": {str(k): float(v) for k, v in r.radii.items()},
        "home_set": {str(k): v for k, v in r.home.items()},
    }


def cmd_extend(args, argv) -> int:
    if args.action == "eval":
        data = _load_data(args.data)
        Q = ser.read_points_csv(args.query)
        vals = {str(pid): fmt_vec(mcshane_extend(data, Q[pid])) for pid in Q.ids}
        sys.stdout.write(ser.dumps({"values": vals}))
        return EXIT_OK
    if args.action == "radii":
        data = _load_data(args.data)
        fam = ser.family_from_json(ser.load_json(args.omega))
        text = ser.dumps(_radii_json(safety_radii(data, fam)))
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    # verify
    cc = ser.convex_cover_from_json(ser.load_json(args.params))
    X = ser.read_points_csv(args.points)
    X2 = ser.read_points_csv(args.new_points)
    data = LipschitzData.from_lens(X, cc.lens)
    radii = safety_radii(data, cc.family)
    try:
        res = verify_stability(cc, X, radii, X2)
    except PointOutsideU as e:
        print(json.dumps({"stable": False, "outside": e.pid}))
        return _fail(EXIT_OUTSIDE, str(e))
    report = {
        "stable": res.stable,
        "added": sorted(sorted(map(list, f)) for f in res.added),
        "removed": sorted(sorted(map(list, f)) for f in res.removed),
        "new_values": {str(k): fmt_vec(v) for k, v in res.new_values.items()},
    }
    sys.stdout.write(ser.dumps(report))
    return EXIT_OK if res.stable else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mapperforge", description="Forward and inverse Mapper constructions.")
    sub = p.add_subparsers(dest="cmd", required=True)

    m = sub.add_parser("mapper", help="run Mapper on a point cloud")
    m.add_argument("--points", required=True)
    m.add_argument("--lens", required=True)
    m.add_argument("--cover", required=True)
    m.add_argument("--cluster", choices=["trivial", "single-linkage"], default="trivial")
    m.add_argument("--eps", default="0")
    m.add_argument("--max-dim", type=int, default=1)
    m.add_argument("--out-dir")
    m.add_argument("--format", choices=["json", "dot"], default="json")
    m.set_defaults(func=cmd_mapper)

    inv = sub.add_parser("inverse", help="synthesize Mapper parameters for a target complex")
    inv.add_argument("backend", choices=["star", "geometric-star", "convex"])
    inv.add_argument("--complex", required=True)
    inv.add_argument("--points", required=True)
    inv.add_argument("--dim", type=int, help="target dimension d; ambient space is R^(2d+1)")
    inv.add_argument("--seed", type=int, default=0)
    inv.add_argument("--max-trials", type=int, default=10_000)
    inv.add_argument("--out")
    inv.add_argument("--out-dir")
    inv.set_defaults(func=cmd_inverse)

    c = sub.add_parser("certify", help="certify a convex family's nerve against a complex")
    c.add_argument("--family", required=True)
    c.add_argument("--complex", required=True)
    c.add_argument("--max-dim", type=int, default=1)
    c.set_defaults(func=cmd_certify)

    i = sub.add_parser("iso", help="isomorphism test between two complexes")
    i.add_argument("first")
    i.add_argument("second")
    i.set_defaults(func=cmd_iso)

    e = sub.add_parser("extend", help="Lipschitz extension tools")
    e.add_argument("action", choices=["eval", "radii", "verify"])
    e.add_argument("--data")
    e.add_argument("--query")
    e.add_argument("--omega")
    e.add_argument("--params")
    e.add_argument("--points")
    e.add_argument("--new-points")
    e.add_argument("--out")
    e.set_defaults(func=cmd_extend)
    return p


_REQUIRED = {"eval": ("data", "query"), "radii": ("data", "omega"), "verify": ("params", "points", "new_points")}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cmd == "extend":
        missing = [f"--{a.replace('_', '-')}" for a in _REQUIRED[args.action] if getattr(args, a) is None]
        if missing:
            parser.error(f"extend {args.action} needs {' '.join(missing)}")
    try:
        return args.func(args, argv)
    except IncompatibleCoverShape as e:
        return _fail(EXIT_INCOMPATIBLE, str(e))
    except (ser.FormatError, MapperError, ComplexError, GeometryError, ExtensionError, OSError) as e:
        return _fail(EXIT_INPUT, str(e))


if __name__ == "__main__":
    sys.exit(main())

"""Geometric realizations and convex covers with exact certificates.

Everything that ends up in a certificate is computed in rational arithmetic
through :mod:`mapperforge.lp`; randomness only chooses candidate placements.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complex import Simplex, SimplicialComplex, isomorphic
from .exact import Vector, add, affinely_independent, dot, scale, sq_norm, sub, vec
from .inverse import InsufficientPoints, lens_targets, round_robin
from .lp import feasible_point
from .mapper import IndexedCover, Lens, MapperOutput, PointCloud, mapper_trivial


class GeometryError(ValueError):
    pass


class DimensionMismatch(GeometryError):
    pass


class DimensionTooSmall(GeometryError):
    pass


class PointOutside(GeometryError):
    pass


class UnsupportedDimension(GeometryError):
    pass


class SearchExhausted(RuntimeError):
    def __init__(self, max_trials: int, stats: Mapping[str, int]):
        super().__init__(f"no certified convex cover within {max_trials} trials ({dict(stats)})")
        self.max_trials = max_trials
        self.stats = dict(stats)


# -- polytopes and certificates ---------------------------------------------


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of a finite, possibly redundant, generator list."""

    generators: tuple[Vector, ...]

    def __post_init__(self):
        gens = tuple(vec(g) for g in self.generators)
        if not gens:
            raise GeometryError("a V-polytope needs at least one generator")
        if len({len(g) for g in gens}) != 1:
            raise DimensionMismatch("generators differ in dimension")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    def __contains__(self, p) -> bool:
        return in_hull(vec(p), self) is not None

    # cover-shape protocol
    def compatible(self, lens: Lens) -> bool:
        return lens.kind == "point" and lens.target_dim() in (self.dim, None)

    def contains(self, pid, target) -> bool:
        return target in self


@dataclass(frozen=True)
class Witness:
    """A point in several hulls, optionally with the convex weights proving it."""

    point: Vector
    weights: tuple[tuple[Fraction, ...], ...] = ()

    def verify(self, *polys: VPolytope) -> bool:
        if not self.weights:
            return all(self.point in P for P in polys)
        if len(self.weights) != len(polys):
            return False
        for lam, P in zip(self.weights, polys):
            if len(lam) != len(P.generators) or any(x < 0 for x in lam) or sum(lam) != 1:
                return False
            combo = tuple(
                sum((x * g[c] for x, g in zip(lam, P.generators)), Fraction(0)) for c in range(P.dim)
            )
            if combo != self.point:
                return False
        return True


@dataclass(frozen=True)
class Separator:
    """Hyperplane with <normal, a> < offset < <normal, b> for all a in A, b in B."""

    normal: Vector
    offset: Fraction

    def verify(self, A: VPolytope, B: VPolytope) -> bool:
        return all(dot(self.normal, a) < self.offset for a in A.generators) and all(
            dot(self.normal, b) > self.offset for b in B.generators
        )


def _check_dims(polys: Sequence[VPolytope]) -> int:
    dims = {P.dim for P in polys}
    if len(dims) != 1:
        raise DimensionMismatch(f"polytopes live in different dimensions {sorted(dims)}")
    return dims.pop()


def in_hull(p: Vector, P: VPolytope) -> list[Fraction] | None:
    """Convex-combination coefficients writing p from P's generators, or None."""
    if len(p) != P.dim:
        raise DimensionMismatch("point and polytope dimensions differ")
    gens = P.generators
    A = [[g[c] for g in gens] for c in range(P.dim)] + [[1] * len(gens)]
    return feasible_point(A, list(p) + [1])


def common_witness(polys: Sequence[VPolytope]) -> Witness | None:
    """A rational point in every hull with its weights, or None if the hulls share no point."""
    n = _check_dims(polys)
    sizes = [len(P.generators) for P in polys]
    offsets = np.cumsum([0] + sizes).tolist()
    nvars = offsets[-1]
    A: list[list] = []
    b: list = []
    for j, P in enumerate(polys):
        row = [0] * nvars
        for k in range(sizes[j]):
            row[offsets[j] + k] = 1
        A.append(row)
        b.append(1)
    first = polys[0]
    for j in range(1, len(polys)):
        for c in range(n):
            row = [0] * nvars
            for k, g in enumerate(first.generators):
                row[k] = g[c]
            for k, g in enumerate(polys[j].generators):
                row[offsets[j] + k] = -g[c]
            A.append(row)
            b.append(0)
    lam = feasible_point(A, b)
    if lam is None:
        return None
    point = tuple(
        sum((lam[k] * g[c] for k, g in enumerate(first.generators)), Fraction(0)) for c in range(n)
    )
    weights = tuple(tuple(lam[offsets[j]:offsets[j + 1]]) for j in range(len(polys)))
    return Witness(point, weights)


def common_point(polys: Sequence[VPolytope]) -> Vector | None:
    w = common_witness(polys)
    return None if w is None else w.point


def find_separator(A: VPolytope, B: VPolytope) -> Separator | None:
    """Strictly separating hyperplane (margin-one LP), or None if the hulls meet."""
    n = _check_dims([A, B])
    na, nb = len(A.generators), len(B.generators)
    nvars = 2 * n + 2 + na + nb
    rows, rhs = [], []
    for i, a in enumerate(A.generators):
        row = list(a) + [-x for x in a] + [-1, 1] + [0] * (na + nb)
        row[2 * n + 2 + i] = 1
        rows.append(row)
        rhs.append(-1)
    for i, bb in enumerate(B.generators):
        row = list(bb) + [-x for x in bb] + [-1, 1] + [0] * (na + nb)
        row[2 * n + 2 + na + i] = -1
        rows.append(row)
        rhs.append(1)
    x = feasible_point(rows, rhs)
    if x is None:
        return None
    normal = tuple(x[c] - x[n + c] for c in range(n))
    return Separator(normal, x[2 * n] - x[2 * n + 1])


def polytope_intersection(A: VPolytope, B: VPolytope) -> Witness | Separator:
    """Exact classification of a pair: a shared point or a strict separator."""
    _check_dims([A, B])
    w = common_witness([A, B])
    if w is not None:
        if not w.verify(A, B):
            raise ArithmeticError("LP witness failed exact verification")
        return w
    sep = find_separator(A, B)
    if sep is None or not sep.verify(A, B):
        raise ArithmeticError("LP reported neither a common point nor a separator")
    return sep


# -- families and certification ---------------------------------------------


@dataclass(frozen=True)
class ConvexFamily:
    """Ordered polytopes plus the certificates gathered about their intersections."""

    sets: tuple[VPolytope, ...]
    witnesses: Mapping[tuple[int, ...], Vector] = field(default_factory=dict)
    separators: Mapping[tuple[int, int], Separator] = field(default_factory=dict)
    empty_tuples: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))

    def __len__(self) -> int:
        return len(self.sets)

    def cover(self) -> IndexedCover:
        return IndexedCover(self.sets)

    def verify(self) -> bool:
        """Re-check every stored certificate exactly."""
        for key, p in self.witnesses.items():
            if not Witness(p).verify(*(self.sets[i] for i in key)):
                return False
        for (i, j), sep in self.separators.items():
            if not sep.verify(self.sets[i], self.sets[j]):
                return False
        for key in self.empty_tuples:
            if common_point([self.sets[i] for i in key]) is not None:
                return False
        return True


@dataclass(frozen=True)
class CertifiedPattern:
    family: ConvexFamily
    correspondence: tuple[int, ...]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Mismatch:
    vertices: tuple[int, ...]
    expected_face: bool

    def __bool__(self) -> bool:
        return False


def certify_family(
    F: ConvexFamily | Sequence[VPolytope],
    K: SimplicialComplex,
    max_dim: int = 1,
    correspondence: Sequence[int] | None = None,
) -> CertifiedPattern | Mismatch:
    """Check that the family's nerve up to max_dim equals K's skeleton.

    ``correspondence[i]`` is the vertex of K matched with set i (default: K's
    vertices in ascending order). Pairs get a witness or a separator; larger
    faces get a witness point; minimal non-faces get an exact emptiness proof,
    which covers every larger non-face too.
    """
    sets = tuple(F.sets if isinstance(F, ConvexFamily) else F)
    verts = list(correspondence) if correspondence is not None else K.vertices
    if len(sets) != len(verts) or sorted(verts) != K.vertices:
        raise GeometryError("family size does not match the complex's vertex set")
    if sets:
        _check_dims(sets)
    pos = {v: i for i, v in enumerate(verts)}

    witnesses: dict[tuple[int, ...], Vector] = {}
    separators: dict[tuple[int, int], Separator] = {}
    empty: list[tuple[int, ...]] = []

    def idx(face: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(pos[v] for v in face))

    for u, v in combinations(sorted(verts), 2):
        key = idx((u, v))
        A, B = sets[key[0]], sets[key[1]]
        if (u, v) in K.faces:
            p = common_point([A, B])
            if p is None:
                return Mismatch((u, v), True)
            witnesses[key] = p
        else:
            sep = find_separator(A, B)
            if sep is None:
                return Mismatch((u, v), False)
            assert sep.verify(A, B)
            separators[key] = sep

    for k in range(3, max_dim + 2):
        for face in K.faces_of_dim(k - 1):
            key = idx(face)
            p = common_point([sets[i] for i in key])
            if p is None:
                return Mismatch(face, True)
            witnesses[key] = p
        # minimal non-faces: every (k-1)-subset is a face
        seen = set()
        for sub_face in K.faces_of_dim(k - 2):
            for w in verts:
                if w in sub_face:
                    continue
                cand = tuple(sorted(sub_face + (w,)))
                if cand in seen or cand in K.faces:
                    continue
                seen.add(cand)
                if all(tuple(c) in K.faces for c in combinations(cand, k - 1)):
                    key = idx(cand)
                    if common_point([sets[i] for i in key]) is not None:
                        return Mismatch(cand, False)
                    empty.append(key)

    fam = ConvexFamily(sets, witnesses, separators, tuple(sorted(empty)))
    return CertifiedPattern(fam, tuple(verts))


# -- moment curve and embeddings ---------------------------------------------


def moment_curve(t, n: int) -> Vector:
    if n < 1:
        raise GeometryError("dimension must be at least 1")
    t = Fraction(t)
    return tuple(t**k for k in range(1, n + 1))


@dataclass(frozen=True)
class EmbeddingConfig:
    parameters: Mapping[int, Fraction]
    ambient_dim: int

    def __post_init__(self):
        if self.ambient_dim < 3 or self.ambient_dim % 2 == 0:
            raise GeometryError("ambient dimension must be odd and at least 3")
        if len(set(self.parameters.values())) != len(self.parameters):
            raise GeometryError("moment-curve parameters must be distinct")

    @property
    def points(self) -> dict[int, Vector]:
        return {v: moment_curve(t, self.ambient_dim) for v, t in self.parameters.items()}


def embed_complex(K: SimplicialComplex, d: int) -> EmbeddingConfig:
    """Vertices on the moment curve of R^(2d+1) at parameters 1, 2, ..."""
    if K.dim > d:
        raise DimensionTooSmall(f"complex has dimension {K.dim} > {d}")
    return EmbeddingConfig({v: Fraction(i + 1) for i, v in enumerate(K.vertices)}, 2 * d + 1)


def certify_realization(K: SimplicialComplex, emb: EmbeddingConfig) -> bool:
    """Every pair of facets spans affinely independent points, so hulls meet only in shared faces."""
    pts = emb.points
    facets = K.facets()
    for i, s in enumerate(facets):
        for t in facets[i:]:
            if not affinely_independent([pts[v] for v in sorted(set(s) | set(t))]):
                return False
    return True


def barycentric(p: Vector, pts: Sequence[Vector]) -> list[Fraction] | None:
    """Unique affine coordinates of p w.r.t. affinely independent pts, or None."""
    rows = [[q[c] for q in pts] + [p[c]] for c in range(len(p))]
    rows.append([Fraction(1)] * len(pts) + [Fraction(1)])
    m = [list(map(Fraction, r)) for r in rows]
    k = len(pts)
    r = 0
    piv_cols = []
    for col in range(k):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            raise GeometryError("points are not affinely independent")
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / pr[col]
                m[i] = [a - f * b for a, b in zip(m[i], pr)]
        piv_cols.append(col)
        r += 1
    if any(m[i][k] != 0 for i in range(r, len(m))):
        return None
    return [m[i][k] / m[i][i] for i in range(k)]


@dataclass(frozen=True)
class GeometricStar:
    """Open star of a realized vertex: faces through it, minus the opposite boundary."""

    vertex: int
    faces: tuple[tuple[Simplex, tuple[Vector, ...]], ...]

    def compatible(self, lens: Lens) -> bool:
        return lens.kind == "point"

    def contains(self, pid, target) -> bool:
        for face, pts in self.faces:
            lam = barycentric(target, pts)
            if lam is not None and all(x >= 0 for x in lam) and lam[face.index(self.vertex)] > 0:
                return True
        return False


@dataclass(frozen=True)
class GeometricStarCover:
    embedding: EmbeddingConfig
    cover: IndexedCover
    lens: Lens


def _barycenter(pts: Sequence[Vector]) -> Vector:
    n = Fraction(1, len(pts))
    acc = pts[0]
    for q in pts[1:]:
        acc = add(acc, q)
    return scale(n, acc)


def geometric_star_cover(K: SimplicialComplex, X: PointCloud, d: int) -> GeometricStarCover:
    emb = embed_complex(K, d)
    if not certify_realization(K, emb):
        raise ArithmeticError("moment-curve embedding failed its independence check")
    pts = emb.points
    stars = []
    for v in K.vertices:
        faces = tuple((s, tuple(pts[u] for u in s)) for s in K.star(v))
        stars.append(GeometricStar(v, faces))
    table = round_robin(X.ids, [_barycenter([pts[u] for u in s]) for s in lens_targets(K)])
    return GeometricStarCover(emb, IndexedCover(tuple(stars)), Lens("point", table))


# -- randomized convex-cover synthesis ----------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    max_trials: int = 10_000
    shrink: tuple[Fraction, ...] = (Fraction(1, 8), Fraction(1, 64), Fraction(1, 512))
    jitter: Fraction = Fraction(1, 4)
    threads: int | None = None


@dataclass(frozen=True)
class ConvexCover:
    """Certified convex-cover Mapper parameters for a complex."""

    complex: SimplicialComplex
    family: ConvexFamily
    lens: Lens
    anchors: Mapping[Simplex, Vector]
    trial: int
    fatten: Fraction
    stats: Mapping[str, int]

    def cover(self) -> IndexedCover:
        return self.family.cover()

    def run(self, X: PointCloud, max_dim: int | None = None) -> MapperOutput:
        if max_dim is None:
            max_dim = max(self.complex.dim, 0)
        return mapper_trivial(X, self.lens, self.cover(), max_dim)


def _simplex_offsets(n: int) -> list[Vector]:
    """Vertices of a simplex centred at the origin: e_1..e_n and -(e_1+..+e_n)."""
    out = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    out.append(tuple(Fraction(-1) for _ in range(n)))
    return out


def _place_anchors(targets: list[Simplex], n: int, rng: np.random.Generator, jitter: Fraction) -> dict:
    m = len(targets)
    span = max(m, 3)
    params = rng.choice(np.arange(-span, span + 1), size=m, replace=False)
    denom = 8
    reach = int(jitter * denom)
    anchors = {}
    for s, t in zip(targets, params.tolist()):
        base = moment_curve(t, n)
        if reach:
            noise = rng.integers(-reach, reach + 1, size=n).tolist()
            base = tuple(x + Fraction(e, denom) for x, e in zip(base, noise))
        anchors[s] = base
    return anchors


def _bodies(K: SimplicialComplex, anchors: Mapping[Simplex, Vector], eps: Fraction, n: int) -> list[VPolytope]:
    offs = _simplex_offsets(n) if eps else [tuple(Fraction(0) for _ in range(n))]
    bodies = []
    for v in K.vertices:
        if (v,) in anchors:
            base = [anchors[(v,)]]
        else:
            base = [anchors[s] for s in K.star(v) if len(s) > 1]
        gens = [add(a, scale(eps, o)) for a in base for o in offs]
        bodies.append(VPolytope(tuple(gens)))
    return bodies


def _trial(K, targets, n, max_dim, cfg: SearchConfig, t: int):
    rng = np.random.default_rng([cfg.seed, t])
    anchors = _place_anchors(targets, n, rng, cfg.jitter)
    skeleton = certify_family(_bodies(K, anchors, Fraction(0), n), K, max_dim)
    if not skeleton:
        return "skeleton", None
    for eps in cfg.shrink:
        cert = certify_family(_bodies(K, anchors, eps, n), K, max_dim)
        if cert:
            return "ok", (anchors, eps, cert.family)
    return "fatten", None


def synthesize_convex_cover(
    K: SimplicialComplex, X: PointCloud, d: int = 1, search: SearchConfig = SearchConfig()
) -> ConvexCover:
    """Search for full-dimensional polytopes in R^(2d+1) whose nerve is K.

    Each face of dimension >= 1 (and each isolated vertex) gets an anchor on a
    randomly re-parameterized, jittered moment curve; the body of vertex v is
    the hull of small simplices around the anchors of faces through v. A trial
    is accepted only when certify_family proves the pattern exactly; the
    lowest successful trial index wins, whatever the thread count.
    """
    if K.dim > d:
        raise DimensionTooSmall(f"complex has dimension {K.dim} > {d}")
    targets = lens_targets(K)
    if len(X) < len(targets):
        raise InsufficientPoints(len(targets), len(X))
    n = 2 * d + 1
    max_dim = max(K.dim, 1)
    threads = search.threads or int(os.environ.get("MAPPERFORGE_THREADS", "1") or 1)
    threads = max(1, threads)
    stats = {"trials": 0, "skeleton_rejects": 0, "fatten_rejects": 0}

    found = None
    t = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while t < search.max_trials and found is None:
            batch = list(range(t, min(t + threads, search.max_trials)))
            results = list(pool.map(lambda i: _trial(K, targets, n, max_dim, search, i), batch))
            for i, (status, payload) in zip(batch, results):
                stats["trials"] += 1
                if status == "ok":
                    found = (i, payload)
                    break
                stats[f"{status}_rejects"] += 1
            t = batch[-1] + 1
    if found is None:
        raise SearchExhausted(search.max_trials, stats)

    trial, (anchors, eps, family) = found
    table = round_robin(X.ids, [anchors[s] for s in targets])
    result = ConvexCover(K, family, Lens("point", table), anchors, trial, eps, stats)
    out = result.run(X)
    if isomorphic(out.complex, K) is None:
        raise ArithmeticError("certified family failed the end-to-end Mapper check")
    return result


# -- distances in R^3 ------------------------------------------------------------


def _cross(a: Vector, b: Vector) -> Vector:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def facet_planes(C: VPolytope) -> list[tuple[Vector, Fraction]]:
    """Outward facet inequalities <n, x> <= c of a full-dimensional polytope in R^3.

    Brute force over generator triples; fine for the few dozen generators used here.
    Returns [] when the hull is not full-dimensional.
    """
    if C.dim != 3:
        raise UnsupportedDimension(f"facet enumeration is implemented for R^3, got R^{C.dim}")
    pts = sorted(set(C.generators))
    planes: dict[tuple, tuple[Vector, Fraction]] = {}
    for i, j, k in combinations(range(len(pts)), 3):
        nrm = _cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]))
        if not any(nrm):
            continue
        c = dot(nrm, pts[i])
        side = {(dot(nrm, q) > c) - (dot(nrm, q) < c) for q in pts}
        side.discard(0)
        if len(side) != 1:
            continue
        if 1 in side:
            nrm, c = tuple(-x for x in nrm), -c
        key = _primitive(nrm, c)
        planes.setdefault(key, (nrm, c))
    return [planes[k] for k in sorted(planes)]


def _primitive(nrm: Vector, c: Fraction) -> tuple:
    from math import gcd, lcm

    vals = list(nrm) + [c]
    den = lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def boundary_distance_sq(p: Vector, C: VPolytope) -> Fraction:
    """Exact squared distance from a point of C to C's boundary."""
    p = vec(p)
    if C.dim != 3:
        raise UnsupportedDimension(f"boundary distance is implemented for R^3, got R^{C.dim}")
    if p not in C:
        raise PointOutside(f"{p} is not in the polytope")
    planes = facet_planes(C)
    if not planes:
        return Fraction(0)
    best = None
    for nrm, c in planes:
        gap = c - dot(nrm, p)
        val = gap * gap / sq_norm(nrm)
        if best is None or val < best:
            best = val
    return best


def distance_to_boundary(p, C: VPolytope) -> float:
    return float(boundary_distance_sq(p, C)) ** 0.5

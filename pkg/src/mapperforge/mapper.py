"""Forward Mapper: lens, cover, preimages, clustering and nerve."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Mapping, Protocol, Sequence, Union

from fractions import Fraction

from .complex import Simplex, SimplicialComplex
from .exact import Vector, sq_dist, to_fraction, vec


class MapperError(ValueError):
    pass


class IncompatibleCoverShape(MapperError):
    pass


class LensError(MapperError):
    pass


class NegativeEpsilon(MapperError):
    pass


@dataclass(frozen=True)
class PointCloud:
    """Ordered point ids with rational coordinates of a common length."""

    points: Mapping[int, Vector]

    def __post_init__(self):
        pts = {int(k): vec(v) for k, v in self.points.items()}
        dims = {len(v) for v in pts.values()}
        if len(dims) > 1:
            raise MapperError(f"points have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "points", dict(sorted(pts.items())))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], start: int = 0) -> "PointCloud":
        return cls({start + i: tuple(r) for i, r in enumerate(rows)})

    @classmethod
    def anonymous(cls, n: int, dim: int = 1) -> "PointCloud":
        """n points on the first axis at 0..n-1; for when only ids matter."""
        return cls({i: (i,) + (0,) * (dim - 1) for i in range(n)})

    @property
    def ids(self) -> list[int]:
        return list(self.points)

    @property
    def ambient_dim(self) -> int:
        return len(next(iter(self.points.values()))) if self.points else 0

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, pid: int) -> Vector:
        return self.points[pid]

    def union(self, other: "PointCloud") -> "PointCloud":
        clash = set(self.points) & set(other.points)
        if clash:
            raise MapperError(f"duplicate point ids {sorted(clash)}")
        return PointCloud({**self.points, **other.points})


LensKind = Literal["face", "point", "projection"]


@dataclass(frozen=True)
class Lens:
    """A finite lens: a lookup table (face or point targets) or a coordinate projection."""

    kind: LensKind
    table: Mapping[int, object] = field(default_factory=dict)
    axis: int | None = None

    def __post_init__(self):
        if self.kind == "face":
            tab = {int(k): tuple(sorted(int(v) for v in t)) for k, t in self.table.items()}
        elif self.kind == "point":
            tab = {int(k): vec(t) for k, t in self.table.items()}
        elif self.kind == "projection":
            if self.axis is None or self.axis < 0:
                raise LensError("projection lens needs a non-negative axis")
            tab = {}
        else:
            raise LensError(f"unknown lens kind {self.kind!r}")
        object.__setattr__(self, "table", dict(sorted(tab.items())))

    def target_dim(self) -> int | None:
        if self.kind == "projection":
            return 1
        if self.kind == "point" and self.table:
            return len(next(iter(self.table.values())))
        return None

    def check_total(self, X: PointCloud) -> None:
        if self.kind == "projection":
            if X.points and self.axis >= X.ambient_dim:
                raise LensError(f"axis {self.axis} out of range for {X.ambient_dim}-d points")
            return
        missing = [pid for pid in X.ids if pid not in self.table]
        if missing:
            raise LensError(f"lens has no value for point id {missing[0]}")

    def __call__(self, pid: int, X: PointCloud):
        if self.kind == "projection":
            return (X[pid][self.axis],)
        try:
            return self.table[pid]
        except KeyError:
            raise LensError(f"lens has no value for point id {pid}") from None


class Shape(Protocol):
    def compatible(self, lens: Lens) -> bool: ...

    def contains(self, pid: int, target) -> bool: ...


@dataclass(frozen=True)
class StarOf:
    """Open star of a vertex: a face lies in it iff it contains the vertex."""

    vertex: int

    def compatible(self, lens: Lens) -> bool:
        return lens.kind == "face"

    def contains(self, pid, target) -> bool:
        return self.vertex in target


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] of the real line."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", to_fraction(self.lo))
        object.__setattr__(self, "hi", to_fraction(self.hi))

    def compatible(self, lens: Lens) -> bool:
        return lens.kind in ("point", "projection") and lens.target_dim() in (1, None)

    def contains(self, pid, target) -> bool:
        return self.lo <= target[0] <= self.hi


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned box."""

    lo: Vector
    hi: Vector

    def __post_init__(self):
        object.__setattr__(self, "lo", vec(self.lo))
        object.__setattr__(self, "hi", vec(self.hi))
        if len(self.lo) != len(self.hi):
            raise MapperError("box corners differ in dimension")

    def compatible(self, lens: Lens) -> bool:
        return lens.kind in ("point", "projection") and lens.target_dim() in (len(self.lo), None)

    def contains(self, pid, target) -> bool:
        return all(a <= t <= b for a, t, b in zip(self.lo, target, self.hi))


@dataclass(frozen=True)
class PointSet:
    """Explicit set of point ids, independent of the lens."""

    ids: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "ids", frozenset(int(i) for i in self.ids))

    def compatible(self, lens: Lens) -> bool:
        return True

    def contains(self, pid, target) -> bool:
        return pid in self.ids


@dataclass(frozen=True)
class CoverElement:
    index: int
    shape: Shape


@dataclass(frozen=True)
class IndexedCover:
    """Ordered cover; repeated shapes are distinct elements."""

    shapes: tuple

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(self.shapes))

    def __iter__(self) -> Iterator[CoverElement]:
        return (CoverElement(i, s) for i, s in enumerate(self.shapes))

    def __len__(self) -> int:
        return len(self.shapes)

    def __getitem__(self, i: int) -> CoverElement:
        return CoverElement(i, self.shapes[i])


def preimage(X: PointCloud, f: Lens, U: CoverElement | Shape) -> frozenset[int]:
    shape = U.shape if isinstance(U, CoverElement) else U
    if not shape.compatible(f):
        raise IncompatibleCoverShape(f"{type(shape).__name__} cannot cover a {f.kind!r} lens")
    return frozenset(pid for pid in X.ids if shape.contains(pid, f(pid, X)))


@dataclass(frozen=True)
class SingleLinkage:
    eps: Fraction

    def __post_init__(self):
        eps = to_fraction(self.eps)
        if eps < 0:
            raise NegativeEpsilon(f"epsilon must be non-negative, got {eps}")
        object.__setattr__(self, "eps", eps)


Method = Union[Literal["trivial"], SingleLinkage]


def cluster(points: Iterable[int], X: PointCloud, method: Method = "trivial") -> list[frozenset[int]]:
    """Split a preimage into clusters, ordered by smallest member id."""
    pts = sorted(points)
    if not pts:
        return []
    if method == "trivial":
        return [frozenset(pts)]
    if not isinstance(method, SingleLinkage):
        raise MapperError(f"unknown clustering method {method!r}")
    eps2 = method.eps * method.eps
    parent = {p: p for p in pts}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            if sq_dist(X[p], X[q]) <= eps2:
                rp, rq = find(p), find(q)
                if rp != rq:
                    parent[max(rp, rq)] = min(rp, rq)
    groups: dict[int, set[int]] = {}
    for p in pts:
        groups.setdefault(find(p), set()).add(p)
    return [frozenset(g) for _, g in sorted(groups.items())]


def nerve(family: Sequence[Iterable[int]], max_dim: int = 1) -> SimplicialComplex:
    """Nerve of an ordered family: vertex i per non-empty set, faces up to max_dim."""
    if max_dim < 0:
        raise MapperError("max_dim must be non-negative")
    sets = [frozenset(s) for s in family]
    live = [i for i, s in enumerate(sets) if s]
    faces: set[Simplex] = set()

    def expand(face: tuple[int, ...], common: frozenset, start: int) -> None:
        faces.add(face)
        if len(face) > max_dim:
            return
        for k in range(start, len(live)):
            j = live[k]
            inter = common & sets[j]
            if inter:
                expand(face + (j,), inter, k + 1)

    for k, i in enumerate(live):
        expand((i,), sets[i], k + 1)
    return SimplicialComplex(frozenset(faces))


@dataclass(frozen=True)
class NodeInfo:
    cover_index: int
    cluster: int
    members: frozenset[int]


@dataclass(frozen=True)
class MapperOutput:
    complex: SimplicialComplex
    provenance: Mapping[int, NodeInfo]

    def pattern(self) -> frozenset:
        """Faces written in (cover index, cluster) labels, independent of member sets."""
        lab = {v: (n.cover_index, n.cluster) for v, n in self.provenance.items()}
        return frozenset(frozenset(lab[v] for v in s) for s in self.complex.faces)


def mapper_run(
    X: PointCloud,
    f: Lens,
    cover: IndexedCover,
    method: Method = "trivial",
    max_dim: int = 1,
) -> MapperOutput:
    f.check_total(X)
    family: list[frozenset[int]] = []
    provenance: dict[int, NodeInfo] = {}
    for U in cover:
        for ordinal, c in enumerate(cluster(preimage(X, f, U), X, method)):
            provenance[len(family)] = NodeInfo(U.index, ordinal, c)
            family.append(c)
    return MapperOutput(nerve(family, max_dim), provenance)


def mapper_trivial(X: PointCloud, f: Lens, cover: IndexedCover, max_dim: int = 1) -> MapperOutput:
    """Nerve of the cover's preimages, one vertex per non-empty preimage."""
    return mapper_run(X, f, cover, "trivial", max_dim)

"""Abstract simplicial complexes over integer vertex ids.

Faces are stored as sorted tuples of ints. Graphs are simply complexes of
dimension at most one.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    pass


class EmptyFace(ComplexError):
    pass


class NegativeVertex(ComplexError):
    pass


class UnknownVertex(ComplexError, KeyError):
    pass


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize an iterable of vertex ids into a Simplex."""
    vs = sorted(set(vertices))  # repeated ids collapse: faces are sets
    if not vs:
        raise EmptyFace("faces must be non-empty")
    for v in vs:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ComplexError(f"vertex ids must be integers, got {v!r}")
        if v < 0:
            raise NegativeVertex(f"negative vertex id {v}")
    return tuple(vs)


def face_key(s: Simplex) -> tuple[int, Simplex]:
    """Canonical order: by dimension, then lexicographically."""
    return (len(s), s)


def _closure(faces: Iterable[Simplex]) -> set[Simplex]:
    out: set[Simplex] = set()
    for s in faces:
        if s in out:
            continue
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return out


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite abstract simplicial complex, closed under non-empty subsets."""

    faces: frozenset[Simplex]
    _by_vertex: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        by_vertex: dict[int, list[Simplex]] = {}
        for s in self.faces:
            for v in s:
                by_vertex.setdefault(v, []).append(s)
        for v in by_vertex:
            by_vertex[v].sort(key=face_key)
        object.__setattr__(self, "_by_vertex", by_vertex)

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(frozenset(_closure(simplex(f) for f in faces)))

    @classmethod
    def graph(cls, vertices: Iterable[int], edges: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls.from_faces([[v] for v in vertices] + [list(e) for e in edges])

    @property
    def vertices(self) -> list[int]:
        return sorted(self._by_vertex)

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.faces), default=-1)

    def __len__(self) -> int:
        return len(self.faces)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self.faces

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.sorted_faces())

    def sorted_faces(self) -> list[Simplex]:
        return sorted(self.faces, key=face_key)

    def faces_of_dim(self, k: int) -> list[Simplex]:
        return sorted(s for s in self.faces if len(s) == k + 1)

    @property
    def edges(self) -> list[Simplex]:
        return self.faces_of_dim(1)

    def higher_faces(self) -> list[Simplex]:
        """K minus V: every face of dimension >= 1, canonically ordered."""
        return [s for s in self.sorted_faces() if len(s) > 1]

    def facets(self) -> list[Simplex]:
        out = []
        for s in self.faces:
            v0 = s[0]
            if not any(len(t) > len(s) and set(s) <= set(t) for t in self._by_vertex[v0]):
                out.append(s)
        return sorted(out, key=face_key)

    def f_vector(self) -> tuple[int, ...]:
        c = Counter(len(s) - 1 for s in self.faces)
        return tuple(c[k] for k in range(self.dim + 1))

    def star(self, v: int) -> list[Simplex]:
        """All faces containing v."""
        if v not in self._by_vertex:
            raise UnknownVertex(v)
        return list(self._by_vertex[v])

    def isolated_vertices(self) -> list[int]:
        return [v for v, fs in sorted(self._by_vertex.items()) if len(fs) == 1]

    def skeleton(self, k: int) -> "SimplicialComplex":
        if k < 0:
            raise ComplexError("skeleton dimension must be non-negative")
        return SimplicialComplex(frozenset(s for s in self.faces if len(s) <= k + 1))

    def relabel(self, mapping: Mapping[int, int]) -> "SimplicialComplex":
        return SimplicialComplex(frozenset(tuple(sorted(mapping[v] for v in s)) for s in self.faces))

    def neighbors(self, v: int) -> list[int]:
        return sorted({u for s in self.star(v) if len(s) == 2 for u in s if u != v})

    def __repr__(self) -> str:
        return f"SimplicialComplex(facets={[list(s) for s in self.facets()]})"


def validate(faces: Iterable[Iterable[int]]) -> tuple[SimplicialComplex, bool]:
    """Close a raw face list under subsets; also report whether it was closed already."""
    given = {simplex(list(f)) for f in faces}
    closed = _closure(given)
    return SimplicialComplex(frozenset(closed)), closed == given


def star(K: SimplicialComplex, v: int) -> list[Simplex]:
    return K.star(v)


def isolated_vertices(K: SimplicialComplex) -> list[int]:
    return K.isolated_vertices()


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    return K.skeleton(k)


@dataclass(frozen=True)
class IsoCertificate:
    """Vertex bijection carrying every face of one complex onto a face of the other."""

    mapping: Mapping[int, int]

    def inverse(self) -> "IsoCertificate":
        return IsoCertificate({w: v for v, w in self.mapping.items()})

    def compose(self, other: "IsoCertificate") -> "IsoCertificate":
        """First self, then other."""
        return IsoCertificate({v: other.mapping[w] for v, w in self.mapping.items()})

    def check(self, K1: SimplicialComplex, K2: SimplicialComplex) -> bool:
        if sorted(self.mapping) != K1.vertices:
            return False
        if len(set(self.mapping.values())) != len(self.mapping):
            return False
        return K1.relabel(self.mapping).faces == K2.faces


def _signature(K: SimplicialComplex, v: int, dim: int) -> tuple:
    c = Counter(len(s) - 1 for s in K.star(v))
    degs = tuple(sorted(len(K.star(u)) for u in K.neighbors(v)))
    return tuple(c[k] for k in range(dim + 1)) + (degs,)


def isomorphic(K1: SimplicialComplex, K2: SimplicialComplex) -> IsoCertificate | None:
    """Find the lexicographically least vertex isomorphism K1 -> K2, or None.

    Backtracking over K1's vertices in ascending order, trying K2 candidates in
    ascending order, pruned by per-vertex face-count signatures and incremental
    face checks in both directions.
    """
    if K1.f_vector() != K2.f_vector():
        return None
    dim = K1.dim
    sig1 = {v: _signature(K1, v, dim) for v in K1.vertices}
    sig2 = {w: _signature(K2, w, dim) for w in K2.vertices}
    if Counter(sig1.values()) != Counter(sig2.values()):
        return None

    order = K1.vertices
    cands = {v: [w for w in K2.vertices if sig2[w] == sig1[v]] for v in order}
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}

    def consistent(v: int, w: int) -> bool:
        for s in K1.star(v):
            if all(u in fwd for u in s):
                if tuple(sorted(fwd[u] for u in s)) not in K2.faces:
                    return False
        for t in K2.star(w):
            if all(u in bwd for u in t):
                if tuple(sorted(bwd[u] for u in t)) not in K1.faces:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in cands[v]:
            if w in bwd:
                continue
            fwd[v] = w
            bwd[w] = v
            if consistent(v, w) and search(i + 1):
                return True
            del fwd[v]
            del bwd[w]
        return False

    if search(0):
        return IsoCertificate(dict(fwd))
    return None

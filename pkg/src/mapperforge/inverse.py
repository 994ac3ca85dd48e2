"""Star-cover Mapper parameters that reproduce a given complex."""
from __future__ import annotations

from dataclasses import dataclass

from .complex import IsoCertificate, Simplex, SimplicialComplex, isomorphic
from .mapper import IndexedCover, Lens, MapperOutput, PointCloud, StarOf, mapper_trivial


class InsufficientPoints(ValueError):
    def __init__(self, needed: int, got: int):
        super().__init__(f"need |X| >= |K\\V| + |I| = {needed} points, got {got}")
        self.needed = needed
        self.got = got


class RoundTripFailed(AssertionError):
    pass


def lens_targets(K: SimplicialComplex) -> list[Simplex]:
    """Faces of dimension >= 1 in canonical order, then isolated vertices ascending."""
    return K.higher_faces() + [(v,) for v in K.isolated_vertices()]


def required_points(K: SimplicialComplex) -> int:
    return len(lens_targets(K))


def round_robin(ids: list[int], targets: list) -> dict[int, object]:
    if len(ids) < len(targets):
        raise InsufficientPoints(len(targets), len(ids))
    if not targets:
        if ids:
            raise ValueError("cannot map points into an empty complex")
        return {}
    return {pid: targets[i % len(targets)] for i, pid in enumerate(ids)}


@dataclass(frozen=True)
class StarParams:
    reference: SimplicialComplex
    cover: IndexedCover
    lens: Lens

    def run(self, X: PointCloud, max_dim: int | None = None) -> MapperOutput:
        if max_dim is None:
            max_dim = max(self.reference.dim, 0)
        return mapper_trivial(X, self.lens, self.cover, max_dim)


def synthesize_star_params(K: SimplicialComplex, X: PointCloud) -> StarParams:
    table = round_robin(X.ids, lens_targets(K))
    cover = IndexedCover(tuple(StarOf(v) for v in K.vertices))
    return StarParams(K, cover, Lens("face", table))


def verify_round_trip(K: SimplicialComplex, X: PointCloud) -> IsoCertificate:
    """Synthesize, run Mapper with trivial clustering, and certify output ~ K."""
    params = synthesize_star_params(K, X)
    out = params.run(X)
    cert = isomorphic(out.complex, K)
    if cert is None:
        raise RoundTripFailed(f"Mapper output {out.complex!r} is not isomorphic to {K!r}")
    return cert

"""Small-complex generators for experiments and tests."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .complex import SimplicialComplex, isomorphic


def _invariant(G: SimplicialComplex) -> tuple:
    degs = sorted(len(G.neighbors(v)) for v in G.vertices)
    nbr = sorted(tuple(sorted(len(G.neighbors(u)) for u in G.neighbors(v))) for v in G.vertices)
    return (len(G.edges), tuple(degs), tuple(nbr))


def graph_classes(n: int) -> list[SimplicialComplex]:
    """One representative per isomorphism class of graphs on vertices 0..n-1.

    Grown vertex by vertex: every class on n vertices has a representative
    whose last vertex can be deleted to give a class on n-1 vertices.
    """
    if n == 0:
        return [SimplicialComplex(frozenset())]
    reps = [SimplicialComplex.graph([0], [])]
    for k in range(1, n):
        buckets: dict[tuple, list[SimplicialComplex]] = {}
        for G in reps:
            for r in range(k + 1):
                for nbrs in combinations(range(k), r):
                    H = SimplicialComplex.graph(range(k + 1), G.edges + [(u, k) for u in nbrs])
                    bucket = buckets.setdefault(_invariant(H), [])
                    if all(isomorphic(H, J) is None for J in bucket):
                        bucket.append(H)
        reps = [H for key in sorted(buckets) for H in buckets[key]]
    return reps


def graphs_up_to(n: int) -> list[SimplicialComplex]:
    return [G for k in range(1, n + 1) for G in graph_classes(k)]


def random_complex(rng: np.random.Generator, max_faces: int = 12, max_dim: int = 3, n_vertices: int = 6) -> SimplicialComplex:
    """Closure of a few random facets, redrawn until it has at most max_faces faces."""
    while True:
        facets = []
        for _ in range(int(rng.integers(1, 4))):
            size = int(rng.integers(1, max_dim + 2))
            facets.append(rng.choice(n_vertices, size=min(size, n_vertices), replace=False).tolist())
        K = SimplicialComplex.from_faces(facets)
        if len(K) <= max_faces and K.dim <= max_dim:
            return K


def random_family(rng: np.random.Generator, max_sets: int = 8, universe: int = 32) -> list[frozenset[int]]:
    m = int(rng.integers(1, max_sets + 1))
    out = []
    for _ in range(m):
        p = rng.random()
        out.append(frozenset(int(i) for i in np.flatnonzero(rng.random(universe) < p * 0.5)))
    return out

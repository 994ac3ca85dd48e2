"""Lipschitz extension of finite lenses, safety radii and stability checks.

The extension is the coordinate-wise inf-formula, whose Lipschitz constant
can grow by sqrt(d) over the data's; the safety radii shrink by the same
factor, so a ball of radius r_i around x_i still lands inside a certified
convex set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .complex import SimplicialComplex, isomorphic
from .exact import Vector, sq_dist, sqrt_lower, sqrt_upper, vec
from .geometry import ConvexCover, ConvexFamily, VPolytope, boundary_distance_sq
from .mapper import Lens, MapperOutput, PointCloud, mapper_trivial


class ExtensionError(ValueError):
    pass


class DuplicateDomainPoints(ExtensionError):
    pass


class NotInInterior(ExtensionError):
    def __init__(self, pid: int):
        super().__init__(f"lens value of point {pid} is not interior to any convex set")
        self.pid = pid


class ZeroLipschitz(ExtensionError):
    pass


class PointOutsideU(ExtensionError):
    def __init__(self, pid: int):
        super().__init__(f"new point {pid} lies in no safety ball")
        self.pid = pid


def lipschitz_constant_sq(X: PointCloud, values: Mapping[int, Sequence]) -> Fraction:
    """Exact max over pairs of |f(x)-f(y)|^2 / |x-y|^2 (0 for fewer than two points)."""
    best = Fraction(0)
    ids = X.ids
    vals = {pid: vec(values[pid]) for pid in ids}
    for a, b in combinations(ids, 2):
        den = sq_dist(X[a], X[b])
        if den == 0:
            raise DuplicateDomainPoints(f"points {a} and {b} coincide")
        r = sq_dist(vals[a], vals[b]) / den
        if r > best:
            best = r
    return best


def lipschitz_constant(X: PointCloud, values: Mapping[int, Sequence]) -> float:
    return math.sqrt(lipschitz_constant_sq(X, values))


@dataclass(frozen=True)
class LipschitzData:
    """A finite map X -> R^d with a certified bound on its squared Lipschitz constant."""

    domain: PointCloud
    values: Mapping[int, Vector]
    lip_sq: Fraction | None = None

    def __post_init__(self):
        vals = {int(k): vec(v) for k, v in self.values.items()}
        if sorted(vals) != self.domain.ids:
            raise ExtensionError("values must be given for exactly the domain points")
        true_sq = lipschitz_constant_sq(self.domain, vals)
        lip_sq = true_sq if self.lip_sq is None else Fraction(self.lip_sq)
        if lip_sq < true_sq:
            raise ExtensionError(f"stated Lipschitz bound^2 {lip_sq} below the data's {true_sq}")
        object.__setattr__(self, "values", dict(sorted(vals.items())))
        object.__setattr__(self, "lip_sq", lip_sq)

    @classmethod
    def from_lens(cls, X: PointCloud, lens: Lens) -> "LipschitzData":
        return cls(X, {pid: lens(pid, X) for pid in X.ids})

    @property
    def value_dim(self) -> int:
        return len(next(iter(self.values.values())))

    @property
    def lip(self) -> float:
        return math.sqrt(self.lip_sq)

    @property
    def lip_bound(self) -> Fraction:
        """Rational upper bound on the Lipschitz constant; the one the extension uses."""
        return sqrt_upper(self.lip_sq)


def _dist_up(d2: Fraction) -> Fraction:
    """A rational >= sqrt(d2), within an ulp of it; exactly 0 for 0."""
    if d2 == 0:
        return Fraction(0)
    r = math.sqrt(float(d2))
    while Fraction(r) ** 2 < d2:
        r = math.nextafter(r, math.inf)
    return Fraction(r)


def mcshane_extend(data: LipschitzData, y: Sequence) -> Vector:
    """Evaluate F_i(y) = min_x f_i(x) + L |x - y| in rationals.

    Distances are rounded upward, so every term is at least its true value and
    the term at x = y is exact: F agrees with f on the domain exactly.
    """
    y = vec(y)
    L = data.lip_bound
    dists = {pid: L * _dist_up(sq_dist(x, y)) for pid, x in data.domain.points.items()}
    return tuple(
        min(data.values[pid][i] + dists[pid] for pid in data.domain.ids) for i in range(data.value_dim)
    )


def mcshane_extend_many(data: LipschitzData, Y) -> np.ndarray:
    """Float evaluation of the extension at each row of Y."""
    Xa = np.array([[float(c) for c in x] for x in data.domain.points.values()])
    Fa = np.array([[float(c) for c in v] for v in data.values.values()])
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    D = np.sqrt(((Y[:, None, :] - Xa[None, :, :]) ** 2).sum(axis=-1))
    return (Fa[None, :, :] + float(data.lip_bound) * D[:, :, None]).min(axis=1)


@dataclass(frozen=True)
class SafetyRadii:
    data: LipschitzData
    omega: tuple[VPolytope, ...]
    radii: Mapping[int, Fraction]
    delta_sq: Mapping[int, Fraction]
    home: Mapping[int, int] = field(default_factory=dict)

    def verify(self) -> bool:
        """Each image ball B(f(x_i), sqrt(d) L r_i) fits inside its home set."""
        d = self.data.value_dim
        Lb = self.data.lip_bound
        return all(
            r > 0 and d * Lb * Lb * r * r <= self.delta_sq[pid] for pid, r in self.radii.items()
        )

    def covering_ball(self, y: Sequence) -> int | None:
        """Id of a data point whose open safety ball contains y, if any."""
        y = vec(y)
        for pid, r in self.radii.items():
            if sq_dist(y, self.data.domain[pid]) < r * r:
                return pid
        return None


def safety_radii(data: LipschitzData, omega: ConvexFamily | Sequence[VPolytope]) -> SafetyRadii:
    """Radii r_i with F(B(x_i, r_i)) inside one convex set, rounded down to rationals."""
    sets = tuple(omega.sets if isinstance(omega, ConvexFamily) else omega)
    if data.lip_sq == 0:
        raise ZeroLipschitz("radii are undefined for a constant lens (L = 0)")
    d = data.value_dim
    Lb = data.lip_bound
    radii, deltas, home = {}, {}, {}
    for pid, p in data.values.items():
        best, where = Fraction(0), None
        for k, C in enumerate(sets):
            if p in C:
                dsq = boundary_distance_sq(p, C)
                if dsq > best:
                    best, where = dsq, k
        if where is None:
            raise NotInInterior(pid)
        deltas[pid] = best
        home[pid] = where
        radii[pid] = sqrt_lower(best / (d * Lb * Lb))
        if radii[pid] == 0:
            raise NotInInterior(pid)
    return SafetyRadii(data, sets, radii, deltas, home)


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    before: MapperOutput
    after: MapperOutput
    added: frozenset = frozenset()
    removed: frozenset = frozenset()
    new_values: Mapping[int, Vector] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.stable


def verify_stability(
    params: ConvexCover, X: PointCloud, radii: SafetyRadii, new_points: PointCloud
) -> StabilityResult:
    """Extend the lens to new points and compare the Mapper complexes.

    Every new point must sit in some safety ball; otherwise PointOutsideU.
    """
    for pid in new_points.ids:
        if radii.covering_ball(new_points[pid]) is None:
            raise PointOutsideU(pid)
    max_dim = max(params.complex.dim, 0)
    before = mapper_trivial(X, params.lens, params.cover(), max_dim)
    new_values = {pid: mcshane_extend(radii.data, new_points[pid]) for pid in new_points.ids}
    lens = Lens("point", {**params.lens.table, **new_values})
    after = mapper_trivial(X.union(new_points), lens, params.cover(), max_dim)
    pb, pa = before.pattern(), after.pattern()
    stable = pb == pa and isomorphic(before.complex, after.complex) is not None
    return StabilityResult(stable, before, after, pa - pb, pb - pa, new_values)

"""Search spaces: the ground sets patrolling and hiding games are played on.

A SearchSpace is one of: a metric network, a real interval, an axis-aligned
box, an elementary region between two piecewise-linear graphs (or a
path-connected union of those), a finite point set, a quarter-type Cantor
level set, or a closed disc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError, UnsupportedGeometryError
from .geometry import Norm, euclidean
from .network import Network


# ---------------------------------------------------------------------------
# Piecewise-linear boundary functions.


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function given by its knots."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or len(self.xs) < 2:
            raise DomainError("need matching xs/ys with at least two knots")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise DomainError("knot xs must be strictly increasing")

    @classmethod
    def constant(cls, value: float, lo: float = 0.0, hi: float = 1.0) -> "PiecewiseLinear":
        return cls((float(lo), float(hi)), (float(value), float(value)))

    def __call__(self, x: float) -> float:
        xs, ys = self.xs, self.ys
        if not xs[0] <= x <= xs[-1]:
            raise DomainError(f"{x} outside domain [{xs[0]}, {xs[-1]}]")
        for i in range(len(xs) - 1):
            if x <= xs[i + 1]:
                w = (x - xs[i]) / (xs[i + 1] - xs[i])
                return ys[i] + w * (ys[i + 1] - ys[i])
        return ys[-1]

    def integral(self) -> float:
        return sum(
            0.5 * (self.ys[i] + self.ys[i + 1]) * (self.xs[i + 1] - self.xs[i])
            for i in range(len(self.xs) - 1)
        )

    def total_variation(self) -> float:
        return sum(abs(b - a) for a, b in zip(self.ys, self.ys[1:]))

    def min_on(self, lo: float, hi: float) -> float:
        return min(self._samples_on(lo, hi))

    def max_on(self, lo: float, hi: float) -> float:
        return max(self._samples_on(lo, hi))

    def _samples_on(self, lo: float, hi: float):
        lo = max(lo, self.xs[0])
        hi = min(hi, self.xs[-1])
        vals = [self(lo), self(hi)]
        vals.extend(y for x, y in zip(self.xs, self.ys) if lo <= x <= hi)
        return vals


# ---------------------------------------------------------------------------
# The space kinds.


@dataclass(frozen=True)
class IntervalSpace:
    a: float
    b: float

    def __post_init__(self):
        if self.b <= self.a:
            raise DomainError("interval needs a < b")

    @property
    def dimension(self) -> int:
        return 1

    @property
    def measure(self) -> float:
        return self.b - self.a

    def contains(self, x) -> bool:
        return self.a <= float(x) <= self.b


@dataclass(frozen=True)
class BoxSpace:
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or not self.lo:
            raise DomainError("box needs matching lo/hi vectors")
        if any(h <= l for l, h in zip(self.lo, self.hi)):
            raise DomainError("box must have positive extent on every axis")

    @property
    def dimension(self) -> int:
        return len(self.lo)

    @property
    def measure(self) -> float:
        m = 1.0
        for l, h in zip(self.lo, self.hi):
            m *= h - l
        return m

    def contains(self, x) -> bool:
        return all(l <= v <= h for l, v, h in zip(self.lo, x, self.hi))


@dataclass(frozen=True)
class ElementaryRegion:
    """{(x, y): 0 <= x <= width, f2(x) <= y <= f1(x)} with f1 >= f2."""

    width: float
    f1: PiecewiseLinear
    f2: PiecewiseLinear

    def __post_init__(self):
        if self.width <= 0:
            raise DomainError("region width must be positive")
        xs = sorted(set(self.f1.xs) | set(self.f2.xs))
        if any(self.f1(x) < self.f2(x) for x in xs if x <= self.width):
            raise DomainError("upper boundary must dominate lower boundary")

    @classmethod
    def box(cls, width: float, height: float) -> "ElementaryRegion":
        return cls(
            width,
            PiecewiseLinear.constant(height, 0.0, width),
            PiecewiseLinear.constant(0.0, 0.0, width),
        )

    @property
    def dimension(self) -> int:
        return 2

    @property
    def measure(self) -> float:
        xs = sorted(x for x in set(self.f1.xs) | set(self.f2.xs) if x <= self.width)
        total = 0.0
        for a, b in zip(xs, xs[1:]):
            total += 0.5 * ((self.f1(a) - self.f2(a)) + (self.f1(b) - self.f2(b))) * (b - a)
        return total

    def contains(self, p) -> bool:
        x, y = p
        return 0.0 <= x <= self.width and self.f2(x) <= y <= self.f1(x)

    def bounding_box(self) -> tuple[tuple[float, float], tuple[float, float]]:
        lo_y = self.f2.min_on(0.0, self.width)
        hi_y = self.f1.max_on(0.0, self.width)
        return (0.0, lo_y), (self.width, hi_y)


@dataclass(frozen=True)
class SimpleSearchSpace:
    """Path-connected finite union of elementary regions (disjoint interiors)."""

    regions: tuple[ElementaryRegion, ...]
    offsets: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.regions:
            raise DomainError("need at least one region")
        if len(self.offsets) != len(self.regions):
            raise DomainError("one offset per region")

    @property
    def dimension(self) -> int:
        return 2

    @property
    def measure(self) -> float:
        return sum(r.measure for r in self.regions)

    def contains(self, p) -> bool:
        x, y = p
        return any(
            r.contains((x - ox, y - oy)) for r, (ox, oy) in zip(self.regions, self.offsets)
        )


@dataclass(frozen=True)
class FinitePointSet:
    points: tuple[tuple, ...]

    def __post_init__(self):
        if not self.points:
            raise DomainError("empty point set")

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    @property
    def measure(self) -> float:
        return 0.0

    def contains(self, p) -> bool:
        return tuple(p) in self.points


@dataclass(frozen=True)
class CantorLevelSet:
    """Level C_depth of C_n = (1/4)C_{n-1} ∪ (3/4 + (1/4)C_{n-1})."""

    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise DomainError("depth must be nonnegative")

    @property
    def dimension(self) -> int:
        return 1

    @property
    def measure(self) -> float:
        return 0.5**self.depth

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        return cantor_intervals(self.depth)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return any(lo <= x <= hi for lo, hi in self.intervals())


@dataclass(frozen=True)
class DiscSpace:
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise DomainError("disc radius must be positive")

    @property
    def dimension(self) -> int:
        return 2

    @property
    def measure(self) -> float:
        return math.pi * self.radius**2

    def contains(self, p) -> bool:
        x, y = p
        return x * x + y * y <= self.radius**2


@dataclass(frozen=True)
class NetworkSpace:
    network: Network

    @property
    def dimension(self) -> int:
        return 1

    @property
    def measure(self) -> float:
        return self.network.total_measure


SearchSpace = Union[
    IntervalSpace,
    BoxSpace,
    ElementaryRegion,
    SimpleSearchSpace,
    FinitePointSet,
    CantorLevelSet,
    DiscSpace,
    NetworkSpace,
]


def cantor_intervals(depth: int) -> list[tuple[Fraction, Fraction]]:
    intervals = [(Fraction(0), Fraction(1))]
    for _ in range(depth):
        nxt = []
        for lo, hi in intervals:
            nxt.append((lo / 4, hi / 4))
            nxt.append((Fraction(3, 4) + lo / 4, Fraction(3, 4) + hi / 4))
        intervals = sorted(nxt)
    return intervals


def cantor_endpoints(depth: int) -> list[Fraction]:
    pts: set[Fraction] = set()
    for lo, hi in cantor_intervals(depth):
        pts.add(lo)
        pts.add(hi)
    return sorted(pts)


def default_norm(space: SearchSpace) -> Norm:
    if isinstance(space, NetworkSpace):
        raise UnsupportedGeometryError("network spaces use the network metric, not a norm")
    return euclidean(space.dimension)


def space_distance(space: SearchSpace, x, y) -> float:
    """Metric of the space: network shortest path or Euclidean norm."""
    if isinstance(space, NetworkSpace):
        return space.network.distance(x, y)
    if space.dimension == 1:
        return abs(float(x) - float(y))
    return math.dist(tuple(map(float, x)), tuple(map(float, y)))


def uniform_grid(space: SearchSpace, resolution: int) -> list[tuple[object, float]]:
    """Measure-uniform atoms (point, weight), weights summing to 1.

    Networks use equal spacing along edges starting at each edge's first
    endpoint; regions use cell centers.
    """
    if resolution < 1:
        raise DomainError("resolution must be >= 1")
    if isinstance(space, NetworkSpace):
        net = space.network
        lam = net.total_measure
        if lam <= 0:
            raise DomainError("network has zero measure")
        atoms: dict = {}
        points: dict = {}
        for e in net.edges:
            if e.length == 0:
                continue
            n_e = max(1, round(resolution * e.length / lam))
            w = e.length / n_e / lam
            for j in range(n_e):
                p = net.point(e.index, j / n_e)
                key = net.canonical_key(p)
                atoms[key] = atoms.get(key, 0.0) + w
                points.setdefault(key, p)
        return [(points[k], w) for k, w in atoms.items()]
    if isinstance(space, IntervalSpace):
        k = resolution
        step = (space.b - space.a) / k
        return [(space.a + (j + 0.5) * step, 1.0 / k) for j in range(k)]
    if isinstance(space, BoxSpace) and space.dimension == 2:
        k = max(1, round(math.sqrt(resolution)))
        (x0, y0), (x1, y1) = (space.lo, space.hi)
        dx, dy = (x1 - x0) / k, (y1 - y0) / k
        return [
            ((x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy), 1.0 / (k * k))
            for i in range(k)
            for j in range(k)
        ]
    if isinstance(space, FinitePointSet):
        n = len(space.points)
        return [(p, 1.0 / n) for p in space.points]
    if isinstance(space, CantorLevelSet):
        ivs = space.intervals()
        return [(float((lo + hi) / 2), 1.0 / len(ivs)) for lo, hi in ivs]
    if isinstance(space, DiscSpace):
        k = max(1, round(math.sqrt(resolution * 4 / math.pi)))
        s = space.radius
        step = 2 * s / k
        pts = []
        for i in range(k):
            for j in range(k):
                p = (-s + (i + 0.5) * step, -s + (j + 0.5) * step)
                if space.contains(p):
                    pts.append(p)
        return [(p, 1.0 / len(pts)) for p in pts]
    if isinstance(space, (ElementaryRegion, SimpleSearchSpace)):
        regions = (
            [(space, (0.0, 0.0))]
            if isinstance(space, ElementaryRegion)
            else list(zip(space.regions, space.offsets))
        )
        pts = []
        k = max(1, round(math.sqrt(resolution)))
        for reg, (ox, oy) in regions:
            (x0, y0), (x1, y1) = reg.bounding_box()
            dx, dy = (x1 - x0) / k, (y1 - y0) / k
            for i in range(k):
                for j in range(k):
                    p = (x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy)
                    if reg.contains(p):
                        pts.append((p[0] + ox, p[1] + oy))
        if not pts:
            raise DomainError("grid resolution too coarse for the region")
        return [(p, 1.0 / len(pts)) for p in pts]
    raise UnsupportedGeometryError(f"no grid builder for {type(space).__name__}")


# ---------------------------------------------------------------------------
# JSON (de)serialization used by the CLI.


def space_to_json(space: SearchSpace) -> dict:
    if isinstance(space, NetworkSpace):
        return {"kind": "network", **space.network.to_json()}
    if isinstance(space, IntervalSpace):
        return {"kind": "interval", "a": space.a, "b": space.b}
    if isinstance(space, BoxSpace):
        return {"kind": "box", "lo": list(space.lo), "hi": list(space.hi)}
    if isinstance(space, FinitePointSet):
        return {"kind": "finite", "points": [list(map(float, p)) for p in space.points]}
    if isinstance(space, CantorLevelSet):
        return {"kind": "cantor", "depth": space.depth}
    if isinstance(space, DiscSpace):
        return {"kind": "disc", "radius": space.radius}
    raise UnsupportedGeometryError(f"no JSON form for {type(space).__name__}")


def space_from_json(data: dict) -> SearchSpace:
    kind = data.get("kind")
    if kind == "network":
        return NetworkSpace(Network.from_json(data))
    if kind == "interval":
        return IntervalSpace(float(data["a"]), float(data["b"]))
    if kind == "box":
        return BoxSpace(tuple(map(float, data["lo"])), tuple(map(float, data["hi"])))
    if kind == "finite":
        return FinitePointSet(tuple(tuple(map(float, p)) for p in data["points"]))
    if kind == "cantor":
        return CantorLevelSet(int(data["depth"]))
    if kind == "disc":
        return DiscSpace(float(data["radius"]))
    raise UnsupportedGeometryError(f"unknown space kind {kind!r}")

"""Metric networks: weighted multigraphs with interior edge points.

A point of the network is (edge, t) with t in [0, 1] measured from the
edge's first endpoint, so (a, b, t) and (b, a, 1-t) denote the same point
and t=0 / t=1 coincide with the endpoints.  Distances come from the
shortest-path metric, measure from edge lengths.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, UnreachableError

_SPEED_TOL = 1e-12


@dataclass(frozen=True)
class Edge:
    index: int
    a: str
    b: str
    length: float


@dataclass(frozen=True)
class NetworkPoint:
    edge: int
    t: float

    def __post_init__(self):
        if not 0.0 <= self.t <= 1.0:
            raise DomainError(f"edge coordinate {self.t} outside [0, 1]")


@dataclass(frozen=True)
class Tour:
    """Closed edge-path: points[i] -> points[i+1] runs along edge legs[i]."""

    points: tuple[NetworkPoint, ...]
    legs: tuple[int, ...]


class Network:
    def __init__(self, nodes, edges):
        """nodes: iterable of node names; edges: iterable of (a, b, length)."""
        self.nodes = [str(n) for n in nodes]
        if len(set(self.nodes)) != len(self.nodes):
            raise DomainError("duplicate node names")
        node_set = set(self.nodes)
        self.edges: list[Edge] = []
        for i, (a, b, length) in enumerate(edges):
            a, b = str(a), str(b)
            if a not in node_set or b not in node_set:
                raise DomainError(f"edge ({a}, {b}) references unknown node")
            if length < 0:
                raise DomainError("edge lengths must be nonnegative")
            self.edges.append(Edge(i, a, b, float(length)))
        self._node_dist: dict[str, dict[str, float]] = {}

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_json(cls, data) -> "Network":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["nodes"], [(e["a"], e["b"], e["len"]) for e in data["edges"]])

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "edges": [{"a": e.a, "b": e.b, "len": e.length} for e in self.edges],
        }

    # -- points ---------------------------------------------------------------

    def point(self, edge: int, t: float) -> NetworkPoint:
        if not 0 <= edge < len(self.edges):
            raise DomainError(f"no edge with index {edge}")
        return NetworkPoint(edge, float(t))

    def node_point(self, name: str) -> NetworkPoint:
        for e in self.edges:
            if e.a == name:
                return NetworkPoint(e.index, 0.0)
            if e.b == name:
                return NetworkPoint(e.index, 1.0)
        raise DomainError(f"node {name!r} is isolated or unknown")

    def node_of(self, p: NetworkPoint) -> str | None:
        """Node name if p sits on a node, else None."""
        e = self.edges[p.edge]
        if p.t == 0.0:
            return e.a
        if p.t == 1.0:
            return e.b
        return None

    def canonical_key(self, p: NetworkPoint):
        node = self.node_of(p)
        if node is not None:
            return ("node", node)
        return ("edge", p.edge, p.t)

    def same_point(self, p: NetworkPoint, q: NetworkPoint) -> bool:
        return self.canonical_key(p) == self.canonical_key(q)

    def alpha_on_edge(self, p: NetworkPoint, edge: int) -> float:
        """Coordinate of p on the given edge, or raise if p is not on it."""
        e = self.edges[edge]
        if p.edge == edge:
            return p.t
        node = self.node_of(p)
        if node == e.a:
            return 0.0
        if node == e.b:
            # for self-loops the e.a branch already matched
            return 1.0
        raise DomainError("point does not lie on the requested edge")

    # -- measure and metric ---------------------------------------------------

    @cached_property
    def total_measure(self) -> float:
        return sum(e.length for e in self.edges)

    def measure_of_interval(self, u: NetworkPoint, v: NetworkPoint) -> float:
        common = self._common_edges(u, v)
        if not common:
            raise DomainError("points do not share an edge")
        return min(
            self.edges[e].length * abs(self.alpha_on_edge(u, e) - self.alpha_on_edge(v, e))
            for e in common
        )

    def _common_edges(self, u: NetworkPoint, v: NetworkPoint) -> list[int]:
        def incident(p):
            node = self.node_of(p)
            if node is None:
                return {p.edge}
            return {e.index for e in self.edges if node in (e.a, e.b)}

        return sorted(incident(u) & incident(v))

    def _dijkstra(self, source: str) -> dict[str, float]:
        dist = {n: math.inf for n in self.nodes}
        dist[source] = 0.0
        heap = [(0.0, source)]
        adj: dict[str, list[tuple[float, str]]] = {n: [] for n in self.nodes}
        for e in self.edges:
            adj[e.a].append((e.length, e.b))
            adj[e.b].append((e.length, e.a))
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for w, u in adj[v]:
                nd = d + w
                if nd < dist[u]:
                    dist[u] = nd
                    heapq.heappush(heap, (nd, u))
        return dist

    def node_distance(self, a: str, b: str) -> float:
        if a not in self._node_dist:
            self._node_dist[a] = self._dijkstra(a)
        return self._node_dist[a][b]

    def distance(self, u: NetworkPoint, v: NetworkPoint) -> float:
        """Shortest-path distance; raises UnreachableError when disconnected."""
        best = math.inf
        for e in self._common_edges(u, v):
            edge = self.edges[e]
            best = min(
                best,
                edge.length * abs(self.alpha_on_edge(u, e) - self.alpha_on_edge(v, e)),
            )
        eu, ev = self.edges[u.edge], self.edges[v.edge]
        u_ends = [(eu.a, u.t * eu.length), (eu.b, (1.0 - u.t) * eu.length)]
        v_ends = [(ev.a, v.t * ev.length), (ev.b, (1.0 - v.t) * ev.length)]
        for na, da in u_ends:
            for nb, db in v_ends:
                best = min(best, da + self.node_distance(na, nb) + db)
        if math.isinf(best):
            raise UnreachableError("points lie in different components")
        return best

    # -- Euler machinery ------------------------------------------------------

    def degrees(self) -> dict[str, int]:
        deg = {n: 0 for n in self.nodes}
        for e in self.edges:
            deg[e.a] += 1
            deg[e.b] += 1
        return deg

    def is_connected(self) -> bool:
        """Connected as a topological space (isolated nodes are components)."""
        if not self.nodes:
            return False
        seen = {self.nodes[0]}
        frontier = [self.nodes[0]]
        adj: dict[str, set[str]] = {n: set() for n in self.nodes}
        for e in self.edges:
            adj[e.a].add(e.b)
            adj[e.b].add(e.a)
        while frontier:
            v = frontier.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        return len(seen) == len(self.nodes)

    def is_eulerian(self) -> bool:
        if not self.edges:
            raise DomainError("empty network")
        if not self.is_connected():
            return False
        return all(d % 2 == 0 for d in self.degrees().values())

    def eulerian_tour(self) -> Tour:
        """Closed tour traversing every edge exactly once (Hierholzer).

        Deterministic: adjacency is consumed in edge-index order from the
        first node.
        """
        if not self.is_eulerian():
            raise DomainError("network is not Eulerian")
        adj: dict[str, list[tuple[int, str]]] = {n: [] for n in self.nodes}
        for e in self.edges:
            adj[e.a].append((e.index, e.b))
            if e.b != e.a:
                adj[e.b].append((e.index, e.a))
        for n in self.nodes:
            adj[n].sort()
        ptr = {n: 0 for n in self.nodes}
        used = [False] * len(self.edges)
        start = self.edges[0].a
        stack: list[tuple[str, int | None]] = [(start, None)]
        path: list[tuple[str, int | None]] = []
        while stack:
            v, _ = stack[-1]
            lst = adj[v]
            while ptr[v] < len(lst) and used[lst[ptr[v]][0]]:
                ptr[v] += 1
            if ptr[v] == len(lst):
                path.append(stack.pop())
            else:
                eidx, w = lst[ptr[v]]
                used[eidx] = True
                stack.append((w, eidx))
        path.reverse()
        points = tuple(self.node_point(v) for v, _ in path)
        legs = tuple(e for _, e in path[1:])
        return Tour(points=points, legs=legs)

    def tour_length(self, tour: Tour) -> float:
        total = 0.0
        for i, leg in enumerate(tour.legs):
            a = self.alpha_on_edge(tour.points[i], leg)
            b = self.alpha_on_edge(tour.points[i + 1], leg)
            total += self.edges[leg].length * abs(a - b)
        return total

    def tour_is_closed(self, tour: Tour) -> bool:
        return self.same_point(tour.points[0], tour.points[-1])

    def parametrization(self, tour: Tour | None = None):
        """Unit-speed periodic walk tracing an Eulerian tour of the network.

        Zero-length legs are skipped; the result has period lambda(N).
        """
        from .trajectory import NetworkWalk

        if tour is None:
            tour = self.eulerian_tour()
        if not self.tour_is_closed(tour):
            raise DomainError("tour is not closed")
        if sorted(tour.legs) != list(range(len(self.edges))):
            raise DomainError("tour is not Eulerian (edges not covered exactly once)")
        knots = [(0.0, tour.points[0])]
        legs = []
        t = 0.0
        for i, leg in enumerate(tour.legs):
            length = self.edges[leg].length
            if length == 0.0:
                continue
            t += length
            a = self.alpha_on_edge(tour.points[i], leg)
            b = self.alpha_on_edge(tour.points[i + 1], leg)
            # rewrite the leg start on the leg's own edge
            knots[-1] = (knots[-1][0], NetworkPoint(leg, a))
            knots.append((t, NetworkPoint(leg, b)))
            legs.append(leg)
        if len(knots) == 1:
            raise DomainError("tour has zero total length")
        return NetworkWalk(self, knots, legs, period=self.total_measure)


def circle_network(circumference: float) -> Network:
    """A single node with one self-loop: the circle of given length."""
    return Network(["o"], [("o", "o", circumference)])

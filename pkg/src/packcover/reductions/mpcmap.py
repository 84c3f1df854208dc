"""Regular-graph independent set to maximum profit coverage.

Edges become unit-profit elements; each vertex contributes the set of its
incident edges at cost a-1.  The optimum profit equals the graph's
independence number.  The metric variant additionally presents elements as
points and sets as balls: distances come from the vertex-edge incidence
graph with hops of length ``radius``, so the ball of a vertex at that
radius is exactly its incident edge set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..core import Graph, WeightedSetSystem


@dataclass(frozen=True)
class MetricPresentation:
    radius: Fraction
    point_names: tuple[str, ...]     # one per universe element (edge)
    center_names: tuple[str, ...]    # one per set (vertex)
    distances: dict  # (name, name) -> Fraction, symmetric, shortest-path

    def ball(self, center_index: int) -> frozenset[int]:
        c = self.center_names[center_index]
        return frozenset(
            i
            for i, p in enumerate(self.point_names)
            if self.distances[(min(c, p), max(c, p))] <= self.radius
        )


def is_to_mpc(g: Graph, metric: bool = False, radius: Fraction = Fraction(1)):
    degrees = g.degrees()
    if not degrees:
        raise ValueError("empty graph")
    a = degrees[0]
    if any(d != a for d in degrees):
        raise ValueError("the graph must be regular")
    if a < 2:
        raise ValueError("degree must be at least 2")
    edge_index = {e: i for i, e in enumerate(g.edges)}
    sets = []
    for v in range(g.node_count):
        sets.append(
            frozenset(
                edge_index[(min(v, u), max(v, u))] for u in g.adjacency()[v]
            )
        )
    system = WeightedSetSystem(
        len(g.edges),
        tuple(Fraction(1) for _ in g.edges),
        tuple(sets),
        tuple(Fraction(a - 1) for _ in sets),
    )
    if not metric:
        return system

    point_names = tuple(f"edge{u}_{v}" for u, v in g.edges)
    center_names = tuple(f"vertex{v}" for v in range(g.node_count))
    names = list(point_names) + list(center_names)
    neighbors: dict[str, set[str]] = {n: set() for n in names}
    for i, (u, v) in enumerate(g.edges):
        neighbors[point_names[i]].update((center_names[u], center_names[v]))
        neighbors[center_names[u]].add(point_names[i])
        neighbors[center_names[v]].add(point_names[i])

    distances = {}
    for source in names:
        dist = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for x in frontier:
                for y in neighbors[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        for target, hops in dist.items():
            key = (min(source, target), max(source, target))
            distances[key] = radius * hops
    presentation = MetricPresentation(radius, point_names, center_names, distances)
    return system, presentation

"""Triangle packing to 2-label-cover instances via distance labelings.

One locus per origin node, plus one per (origin, shortened edge) pair: the
label of v is its distance from the origin, with the chosen edge given
length zero.  Triangles then see at most two labels on every locus while
non-triangles get three somewhere.  Nodes in a different component from
the origin receive that component's reserved label.

Lifting a label instance to allele pairs: under the 4-allele target every
label v becomes the pair (v, v') with v' a fresh mirror symbol; under the
2-allele target it becomes (v, v).  Both lifts make group feasibility
coincide with the <=2-labels-per-locus rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import Graph, LabelCoverInstance, SibInstance


@dataclass(frozen=True)
class LabelCoverCertificate:
    kind: str
    node_count: int
    loci: tuple  # ("origin", a) or ("origin_edge", a, (u, v))
    components: tuple[tuple[int, ...], ...]


def _bfs_dist(adj, source: int, n: int, zero_edge=None) -> list:
    # Dijkstra-light: edge lengths are 1 except the optional zero edge.
    INF = float("inf")
    dist = [INF] * n
    dist[source] = 0
    import heapq

    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v in adj[u]:
            w = 0 if zero_edge in ((u, v), (v, u)) else 1
            if d + w < dist[v]:
                dist[v] = d + w
                heapq.heappush(heap, (d + w, v))
    return dist


def tp_to_labelcover(g: Graph) -> tuple[LabelCoverInstance, LabelCoverCertificate]:
    n = g.node_count
    adj = [sorted(s) for s in g.adjacency()]

    comp_of = [-1] * n
    components: list[list[int]] = []
    for start in range(n):
        if comp_of[start] != -1:
            continue
        comp = [start]
        comp_of[start] = len(components)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if comp_of[v] == -1:
                    comp_of[v] = len(components)
                    comp.append(v)
                    stack.append(v)
        components.append(sorted(comp))

    # Distances never exceed n-1, so reserved labels live above that range.
    def label_of(dist_row, v: int, origin: int) -> int:
        if comp_of[v] != comp_of[origin]:
            return n + comp_of[v]
        return int(dist_row[v])

    loci = []
    columns = []
    for a in range(n):
        dist_row = _bfs_dist(adj, a, n)
        loci.append(("origin", a))
        columns.append([label_of(dist_row, v, a) for v in range(n)])
        for e in g.edges:
            dist_e = _bfs_dist(adj, a, n, zero_edge=e)
            loci.append(("origin_edge", a, e))
            columns.append([label_of(dist_e, v, a) for v in range(n)])

    rows = tuple(
        tuple(columns[j][v] for j in range(len(columns))) for v in range(n)
    )
    cert = LabelCoverCertificate(
        "tp_to_labelcover",
        n,
        tuple(loci),
        tuple(tuple(c) for c in components),
    )
    return LabelCoverInstance(rows), cert


def labelcover_to_allele(lc: LabelCoverInstance, k: int) -> SibInstance:
    if k == 2:
        rows = tuple(tuple((v, v) for v in row) for row in lc.rows)
    elif k == 4:
        # Mirror symbols: distinct labels map to disjoint pairs.
        rows = []
        rows = tuple(
            tuple((2 * v, 2 * v + 1) for v in row) for row in lc.rows
        )
    else:
        raise ValueError("k must be 2 or 4")
    return SibInstance(rows, lc.locus_count)


def triple_label_counts(lc: LabelCoverInstance, triple) -> int:
    """Largest number of distinct labels the triple shows on any locus."""
    worst = 0
    for j in range(lc.locus_count):
        worst = max(worst, len({lc.rows[i][j] for i in triple}))
    return worst


def check_star_properties(g: Graph, lc: LabelCoverInstance) -> list[str]:
    """Triangles must see <= 2 labels everywhere; non-triangles >= 3 somewhere."""
    edge_set = g.edge_set
    failures = []
    for triple in itertools.combinations(range(g.node_count), 3):
        is_triangle = all(
            (min(a, b), max(a, b)) in edge_set
            for a, b in itertools.combinations(triple, 2)
        )
        worst = triple_label_counts(lc, triple)
        if is_triangle and worst > 2:
            failures.append(f"triangle {triple} shows {worst} labels")
        if not is_triangle and worst <= 2:
            failures.append(f"non-triangle {triple} never shows 3 labels")
    return failures

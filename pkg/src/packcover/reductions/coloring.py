"""Graph coloring to sibling-group covering via forbidden triplets.

Every edge {i, j} contributes one locus labeling i and j with two private
symbols and everyone else with a third; any group containing i, j and a
third individual then shows three labels there.  Extra distinctness loci
separate identical individuals without constraining groups.  Independent
sets of size >= 3 correspond exactly to feasible groups, a k-coloring
yields a k-group cover, and any cover folds back into a coloring with at
most twice as many colors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import CoverSolution, Graph, LabelCoverInstance, SibInstance
from .labelcover import labelcover_to_allele


@dataclass(frozen=True)
class ColoringCertificate:
    kind: str
    node_count: int
    edges: tuple[tuple[int, int], ...]
    anchor_loci: tuple[tuple[int, int], ...]  # locus j anchors edge anchor_loci[j]
    distinctness_loci: int
    k: int  # allele condition the instance was lifted for


def coloring_to_allele(g: Graph, k: int = 4) -> tuple[SibInstance, ColoringCertificate]:
    n = g.node_count
    columns: list[list[int]] = []
    anchors: list[tuple[int, int]] = []
    for u, v in g.edges:
        col = [2] * n
        col[u] = 0
        col[v] = 1
        columns.append(col)
        anchors.append((u, v))

    # Distinctness: one locus per duplicate row beyond the first of its kind.
    distinct = 0

    def rows_now():
        return [tuple(col[i] for col in columns) for i in range(n)]

    seen: dict[tuple, int] = {}
    for i, row in enumerate(rows_now()):
        if row in seen:
            col = [0] * n
            col[i] = 1
            columns.append(col)
            distinct += 1
        else:
            seen[row] = i

    if not columns:  # edgeless singleton-free corner: one constant locus
        columns.append([0] * n)

    lc = LabelCoverInstance(
        tuple(tuple(col[i] for col in columns) for i in range(n))
    )
    inst = labelcover_to_allele(lc, k)
    cert = ColoringCertificate(
        "coloring_to_allele", n, g.edges, tuple(anchors), distinct, k
    )
    return inst, cert


def coloring_to_cover(coloring, cert: ColoringCertificate) -> CoverSolution:
    """Color classes become groups."""
    classes: dict[int, set[int]] = {}
    for v in range(cert.node_count):
        classes.setdefault(coloring[v], set()).add(v)
    groups = tuple(frozenset(c) for _, c in sorted(classes.items()))
    return CoverSolution(groups, len(groups))


def cover_to_coloring(cover: CoverSolution, cert: ColoringCertificate) -> list[int]:
    """Fold a cover into a proper coloring with at most twice the groups.

    Each individual keeps its first containing group.  Monochromatic edges
    then form a degree-<=1 subgraph, which two colors split; the product
    with the group index colors the whole graph.
    """
    owner = [-1] * cert.node_count
    for gi, grp in enumerate(cover.groups):
        for v in grp:
            if owner[v] == -1:
                owner[v] = gi
    if any(o == -1 for o in owner):
        raise ValueError("cover leaves individuals unassigned")
    mono = [
        (u, v) for u, v in cert.edges if owner[u] == owner[v]
    ]
    bit = [0] * cert.node_count
    for u, v in mono:
        # Degree <= 1 in the monochromatic subgraph: flip one endpoint.
        bit[v] = 1 - bit[u]
    return [2 * owner[v] + bit[v] for v in range(cert.node_count)]


def is_proper_coloring(g: Graph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges)


def independent_feasibility_failures(g: Graph, inst: SibInstance, k: int,
                                     max_size: int = 4) -> list[str]:
    """Cross-check: vertex sets of size >= 3 are independent exactly when
    the matching individual set is feasible."""
    from ..sibcheck import check_group

    edge_set = g.edge_set
    failures = []
    for size in range(3, max_size + 1):
        for combo in itertools.combinations(range(g.node_count), size):
            independent = not any(
                (min(a, b), max(a, b)) in edge_set
                for a, b in itertools.combinations(combo, 2)
            )
            feasible = check_group(inst, combo, k)
            if independent != feasible:
                failures.append(
                    f"{combo}: independent={independent}, feasible={feasible}"
                )
    return failures

"""Cubic max-cut to 2-allele covering via labeled grid gadgets.

Each source node becomes a 3x12 grid whose rows close into 12-edge rings
and whose every-fourth column closes into a 3-ring; the individuals of the
target instance are the edges of the assembled 4-regular graph (first
locus) decorated with a label alphabet (second locus).  Horizontal labels
cycle [alpha_u, beta, gamma, delta_u] by column; verticals carry lambda /
kappa; column-wrap edges carry the pair (alpha_u, delta_u); the six
vertical edges of each connection between two gadgets carry mu.

Every edge gets a potential: 0.5 on wrap edges and outer connection edges,
0 on center connection edges, 0.25 elsewhere.  Each source node's share
sums to 19.5, and no feasible group's potential exceeds 1, which lower-
bounds every cover by 13m sets.  A bipartition with c uncut edges maps to
a verified cover of exactly 39n + c sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..core import CoverSolution, Graph, SibInstance, make_sib_instance
from ..sibcheck import check_group

LAMBDA, KAPPA, BETA, GAMMA, MU = 0, 1, 2, 3, 4

GRAY_SQUARES = tuple(
    [(c, 0) for c in range(0, 12, 2)] + [(c, 1) for c in range(1, 12, 2)]
)
WHITE_SQUARES = tuple(
    [(c, 0) for c in range(1, 12, 2)] + [(c, 1) for c in range(0, 12, 2)]
)
WRAP_COLUMNS = (0, 4, 8)
BLOCK_COLUMNS = {b: (4 * b + 1, 4 * b + 2, 4 * b + 3) for b in range(3)}


@dataclass(frozen=True)
class GadgetRecord:
    source_node: int
    squares: dict  # color -> tuple of 12 groups (tuples of individual ids)
    triples: dict  # color -> tuple of 3 groups
    internal_ids: tuple[int, ...]


@dataclass(frozen=True)
class GridRecord:
    top: tuple[int, int]     # (source node, row)
    bottom: tuple[int, int]
    mu_ids: tuple[int, int, int]
    top_beta: int
    top_gamma: int
    bottom_beta: int
    bottom_gamma: int


@dataclass(frozen=True)
class ConnectionRecord:
    edge: tuple[int, int]
    grids: tuple[GridRecord, GridRecord]


@dataclass(frozen=True)
class CutCertificate:
    kind: str
    source_node_count: int
    source_edges: tuple[tuple[int, int], ...]
    individual_count: int
    potentials: tuple[Fraction, ...]
    gadgets: tuple[GadgetRecord, ...]
    connections: tuple[ConnectionRecord, ...]
    alphabet: dict  # label name -> symbol id (per-gadget labels suffixed)


def _alpha(u: int) -> int:
    return 5 + 2 * u


def _delta(u: int) -> int:
    return 6 + 2 * u


def cut_to_allele(g: Graph) -> tuple[SibInstance, CutCertificate]:
    if any(d != 3 for d in g.degrees()):
        raise ValueError("the source graph must be 3-regular")
    two_n = g.node_count

    def node(u: int, r: int, c: int) -> int:
        return 36 * u + 12 * r + c % 12

    rows: list[tuple[tuple[int, int], tuple[int, int]]] = []
    potentials: list[Fraction] = []

    def add_individual(a: int, b: int, label: tuple[int, int], pot: Fraction) -> int:
        rows.append(((min(a, b), max(a, b)), (min(label), max(label))))
        potentials.append(pot)
        return len(rows) - 1

    horiz: dict[tuple[int, int, int], int] = {}
    vert: dict[tuple[int, int, int], int] = {}
    wrap: dict[tuple[int, int], int] = {}
    h_letter = {}
    for u in range(two_n):
        h_letter[u] = {0: _alpha(u), 1: BETA, 2: GAMMA, 3: _delta(u)}
        for r in range(3):
            for c in range(12):
                letter = h_letter[u][c % 4]
                horiz[(u, r, c)] = add_individual(
                    node(u, r, c), node(u, r, c + 1), (letter, letter), Fraction(1, 4)
                )
        for c in range(12):
            vert[(u, c, 0)] = add_individual(
                node(u, 0, c), node(u, 1, c), (LAMBDA, LAMBDA), Fraction(1, 4)
            )
            vert[(u, c, 1)] = add_individual(
                node(u, 1, c), node(u, 2, c), (KAPPA, KAPPA), Fraction(1, 4)
            )
        for c in WRAP_COLUMNS:
            wrap[(u, c)] = add_individual(
                node(u, 2, c), node(u, 0, c), (_alpha(u), _delta(u)), Fraction(1, 2)
            )

    gadget_internal_ids = {
        u: tuple(
            [horiz[(u, r, c)] for r in range(3) for c in range(12)]
            + [vert[(u, c, rp)] for c in range(12) for rp in (0, 1)]
            + [wrap[(u, c)] for c in WRAP_COLUMNS]
        )
        for u in range(two_n)
    }

    incident: dict[int, list[tuple[int, int]]] = {u: [] for u in range(two_n)}
    for e in g.edges:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    block_of = {
        (u, e): pos
        for u in range(two_n)
        for pos, e in enumerate(sorted(incident[u]))
    }

    connections = []
    for e in g.edges:
        u, v = e
        bu, bv = block_of[(u, e)], block_of[(v, e)]
        grids = []
        for (tu, tr), (botu, botr) in (
            ((u, 0), (v, 2)),
            ((u, 2), (v, 0)),
        ):
            cu = BLOCK_COLUMNS[bu]
            cv = BLOCK_COLUMNS[bv]
            mu_ids = []
            for i in range(3):
                pot = Fraction(0) if i == 1 else Fraction(1, 2)
                mu_ids.append(
                    add_individual(
                        node(tu, tr, cu[i]), node(botu, botr, cv[i]), (MU, MU), pot
                    )
                )
            grids.append(
                GridRecord(
                    (tu, tr),
                    (botu, botr),
                    tuple(mu_ids),
                    horiz[(tu, tr, cu[0])],
                    horiz[(tu, tr, cu[1])],
                    horiz[(botu, botr, cv[0])],
                    horiz[(botu, botr, cv[1])],
                )
            )
        connections.append(ConnectionRecord(e, tuple(grids)))

    gadget_records = []
    for u in range(two_n):
        squares = {}
        for color, plan in (("gray", GRAY_SQUARES), ("white", WHITE_SQUARES)):
            groups = []
            for c, rp in plan:
                groups.append(
                    (
                        horiz[(u, rp, c)],
                        horiz[(u, rp + 1, c)],
                        vert[(u, c, rp)],
                        vert[(u, (c + 1) % 12, rp)],
                    )
                )
            squares[color] = tuple(groups)
        triples = {
            "gray": tuple(
                (horiz[(u, 0, (c - 1) % 12)], wrap[(u, c)], horiz[(u, 2, c)])
                for c in WRAP_COLUMNS
            ),
            "white": tuple(
                (horiz[(u, 0, c)], wrap[(u, c)], horiz[(u, 2, (c - 1) % 12)])
                for c in WRAP_COLUMNS
            ),
        }
        gadget_records.append(
            GadgetRecord(u, squares, triples, gadget_internal_ids[u])
        )

    alphabet = {"lambda": LAMBDA, "kappa": KAPPA, "beta": BETA, "gamma": GAMMA, "mu": MU}
    for u in range(two_n):
        alphabet[f"alpha_{u}"] = _alpha(u)
        alphabet[f"delta_{u}"] = _delta(u)

    inst = make_sib_instance(rows, locus_count=2)
    cert = CutCertificate(
        "cut_to_allele",
        two_n,
        g.edges,
        len(rows),
        tuple(potentials),
        tuple(gadget_records),
        tuple(connections),
        alphabet,
    )
    return inst, cert


def gadget_potential_sums(cert: CutCertificate) -> list[Fraction]:
    """Per source node: internal potentials plus half of each incident
    connection edge's potential."""
    sums = [Fraction(0)] * cert.source_node_count
    for rec in cert.gadgets:
        for i in rec.internal_ids:
            sums[rec.source_node] += cert.potentials[i]
    for conn in cert.connections:
        for grid in conn.grids:
            share = sum((cert.potentials[i] for i in grid.mu_ids), Fraction(0)) / 2
            sums[grid.top[0]] += share
            sums[grid.bottom[0]] += share
    return sums


def _uncovered_group_label(color: str, row: int) -> str:
    # Gray squares cover row-0 gammas and row-2 betas; white the reverse.
    if (color == "gray") == (row == 0):
        return "beta"
    return "gamma"


def cut_solution_to_cover(side_a, cert: CutCertificate) -> CoverSolution:
    """Cover of size exactly 39n + (uncut edges) from a bipartition."""
    a_set = set(side_a)
    for u in a_set:
        if not (0 <= u < cert.source_node_count):
            raise ValueError(f"source node {u} out of range")
    color_of = {
        u: ("gray" if u in a_set else "white")
        for u in range(cert.source_node_count)
    }
    groups: list[frozenset[int]] = []
    for rec in cert.gadgets:
        color = color_of[rec.source_node]
        groups.extend(frozenset(grp) for grp in rec.squares[color])
        groups.extend(frozenset(grp) for grp in rec.triples[color])
    for conn in cert.connections:
        leftovers: list[int] = []
        for grid in conn.grids:
            top_lbl = _uncovered_group_label(color_of[grid.top[0]], grid.top[1])
            bot_lbl = _uncovered_group_label(color_of[grid.bottom[0]], grid.bottom[1])
            mu0, mu1, mu2 = grid.mu_ids
            if top_lbl == "beta" and bot_lbl == "beta":
                groups.append(frozenset((grid.top_beta, grid.bottom_beta, mu0, mu1)))
                leftovers.append(mu2)
            elif top_lbl == "gamma" and bot_lbl == "gamma":
                groups.append(frozenset((grid.top_gamma, grid.bottom_gamma, mu1, mu2)))
                leftovers.append(mu0)
            else:
                beta_edge = grid.top_beta if top_lbl == "beta" else grid.bottom_beta
                gamma_edge = grid.bottom_gamma if top_lbl == "beta" else grid.top_gamma
                groups.append(frozenset((mu0, beta_edge, mu1)))
                groups.append(frozenset((gamma_edge, mu2)))
        if leftovers:
            if len(leftovers) != 2:
                raise AssertionError("cut connections leave exactly two edges")
            groups.append(frozenset(leftovers))
    return CoverSolution(tuple(groups), len(groups))


def _mini_instance(cert_rows, ids):
    return make_sib_instance([cert_rows[i] for i in ids], locus_count=2)


def enumerate_feasible_groups_in_gadget(inst: SibInstance, cert: CutCertificate,
                                        u: int) -> tuple[list, list]:
    """All feasible groups of size >= 3 among one gadget's individuals,
    split into (catalogued, unexpected).

    Catalogued shapes: subsets of label-feasible squares, and wrap triples
    (a wrap edge plus one adjacent horizontal at each of its endpoints).
    """
    rec = cert.gadgets[u]
    ids = rec.internal_ids
    pair_of = {i: inst.individuals[i][0] for i in ids}
    nodes = sorted({x for i in ids for x in pair_of[i]})
    adj: dict[int, set[int]] = {x: set() for x in nodes}
    edges_at: dict[int, list[int]] = {x: [] for x in nodes}
    for i in ids:
        a, b = pair_of[i]
        adj[a].add(b)
        adj[b].add(a)
        edges_at[a].append(i)
        edges_at[b].append(i)

    # Connected node subsets of size <= 4 carry every candidate group.
    subsets: set[frozenset[int]] = set()

    def grow(current: frozenset[int], frontier: set[int]):
        if len(current) > 4 or current in subsets:
            return
        subsets.add(current)
        if len(current) == 4:
            return
        for x in sorted(frontier):
            grow(current | {x}, (frontier | adj[x]) - current - {x})

    for x in nodes:
        grow(frozenset((x,)), set(adj[x]))

    square_sets = {
        frozenset(grp)
        for color in ("gray", "white")
        for grp in rec.squares[color]
    }
    wrap_triples = {
        frozenset(t)
        for color in ("gray", "white")
        for t in rec.triples[color]
    }
    catalogued, unexpected = [], []
    seen_groups: set[frozenset[int]] = set()
    for node_set in subsets:
        if len(node_set) < 2:
            continue
        inside = sorted(
            {
                i
                for x in node_set
                for i in edges_at[x]
                if set(pair_of[i]) <= node_set
            }
        )
        for r in range(3, len(inside) + 1):
            for combo in itertools.combinations(inside, r):
                grp = frozenset(combo)
                if grp in seen_groups:
                    continue
                seen_groups.add(grp)
                mini = _mini_instance(inst.individuals, sorted(grp))
                if not check_group(mini, range(len(grp)), 2):
                    continue
                if any(grp <= sq for sq in square_sets):
                    catalogued.append(grp)
                elif _is_wrap_triple(grp, inst, cert, u):
                    catalogued.append(grp)
                else:
                    unexpected.append(grp)
    return catalogued, unexpected


def max_feasible_group_potential(inst: SibInstance, cert: CutCertificate) -> Fraction:
    """Largest potential over every feasible group in the whole assembly.

    Pairs are bounded by two 0.5 edges; groups of size >= 3 live inside a
    connected first-locus node set of size <= 4, so enumerating those
    subsets covers everything.
    """
    pair_of = {i: inst.individuals[i][0] for i in range(inst.n)}
    adj: dict[int, set[int]] = {}
    edges_at: dict[int, list[int]] = {}
    for i, (a, b) in pair_of.items():
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
        edges_at.setdefault(a, []).append(i)
        edges_at.setdefault(b, []).append(i)

    top_two = sorted(cert.potentials, reverse=True)[:2]
    best = sum(top_two, Fraction(0))

    subsets: set[frozenset[int]] = set()

    def grow(current: frozenset[int], frontier: set[int]):
        if len(current) > 4 or current in subsets:
            return
        subsets.add(current)
        if len(current) == 4:
            return
        for x in sorted(frontier):
            grow(current | {x}, (frontier | adj[x]) - current - {x})

    for x in sorted(adj):
        grow(frozenset((x,)), set(adj[x]))

    seen: set[frozenset[int]] = set()
    for node_set in subsets:
        if len(node_set) < 3:
            continue
        inside = sorted(
            {
                i
                for x in node_set
                for i in edges_at[x]
                if set(pair_of[i]) <= node_set
            }
        )
        for r in range(3, len(inside) + 1):
            for combo in itertools.combinations(inside, r):
                grp = frozenset(combo)
                if grp in seen:
                    continue
                seen.add(grp)
                mini = _mini_instance(inst.individuals, sorted(grp))
                if check_group(mini, range(len(grp)), 2):
                    best = max(
                        best, sum((cert.potentials[i] for i in grp), Fraction(0))
                    )
    return best


def _is_wrap_triple(grp: frozenset[int], inst: SibInstance,
                    cert: CutCertificate, u: int) -> bool:
    if len(grp) != 3:
        return False
    wraps = [i for i in grp if inst.individuals[i][1][0] != inst.individuals[i][1][1]]
    if len(wraps) != 1:
        return False
    w = wraps[0]
    wa, wb = inst.individuals[w][0]
    others = [i for i in grp if i != w]
    ends = set()
    for i in others:
        a, b = inst.individuals[i][0]
        touching = {a, b} & {wa, wb}
        if len(touching) != 1:
            return False
        ends.add(next(iter(touching)))
        if inst.individuals[i][1][0] not in (
            cert.alphabet[f"alpha_{u}"], cert.alphabet[f"delta_{u}"]
        ):
            return False
    return ends == {wa, wb}

"""Equation systems to triangle packing: assembly, solution transport,
and packing normalization.

Construction outline for a system of E equations replicated m times:
every (equation, replication) pair expands into one triple of plain copies
and one triple of negated copies, so each variable sees equally many plain
and negated literal occurrences.  Each copy instantiates the validated
equation gadget for its right-hand bit; every variable gets one amplifier
whose white contacts carry its plain literal nodes and black contacts the
negated ones.  Self-sufficient gadget nodes are joined across the three
copies of a triple by one connecting triangle each.

With m_S = 2m the assembled graph has 228 * (E/2) * m_S nodes, and the
canonical packing for an assignment violating l of the E equations has
(76 * (E/2) - l) * m_S triangles, leaving 3 * m_S * l nodes uncovered.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..core import Graph, Lin2System, PackingSolution
from .amplifiers import build_amplifier
from .gadgets import EquationGadget, synth_equation_gadget

AMPLIFIER_K_FLOOR = 4


@dataclass(frozen=True)
class CopyRecord:
    """One instantiated equation gadget copy."""

    equation_index: int
    replication: int
    variant: str  # "plain" or "negated"
    copy_index: int  # 0..2 within its triple
    kind: str  # "=0" or "=1"
    lits: tuple  # ((var, negated) x 3) as instantiated
    node_map: tuple[int, ...]  # gadget-local id -> graph node


@dataclass(frozen=True)
class TripleRecord:
    copy_ids: tuple[int, int, int]
    ss_triangles: tuple  # ((local_ss_id, (n0, n1, n2)), ...)


@dataclass(frozen=True)
class VariableRecord:
    variable: int
    k: int
    white_triangles: tuple
    black_triangles: tuple
    contact_triangles: tuple  # ((contact_index, color, literal_node, triangle), ...)


@dataclass(frozen=True)
class Lin2TpCertificate:
    kind: str
    num_equations: int
    replication: int
    m_s: int
    node_count: int
    seed: int
    warnings: tuple[str, ...]
    copies: tuple[CopyRecord, ...]
    triples: tuple[TripleRecord, ...]
    variables: tuple[VariableRecord, ...]

    def variable_record(self, var: int) -> VariableRecord:
        for rec in self.variables:
            if rec.variable == var:
                return rec
        raise KeyError(var)


def _gadget_for(kind: str, cache: dict) -> EquationGadget:
    if kind not in cache:
        cache[kind] = synth_equation_gadget(kind)
    return cache[kind]


def lin2_to_tp(system: Lin2System, m: int = 1, seed: int = 0) -> tuple[Graph, Lin2TpCertificate]:
    if m < 1:
        raise ValueError("replication must be >= 1")
    gadget_cache: dict[str, EquationGadget] = {}
    edges: set[tuple[int, int]] = set()
    next_node = 0

    def alloc(count: int) -> list[int]:
        nonlocal next_node
        out = list(range(next_node, next_node + count))
        next_node += count
        return out

    def add_triangle_edges(tri):
        a, b, c = sorted(tri)
        edges.update(((a, b), (a, c), (b, c)))

    # Expand equations into copies; collect literal slots per variable.
    copies: list[dict] = []
    triples: list[dict] = []
    plain_slots: dict[int, list[int]] = {}
    negated_slots: dict[int, list[int]] = {}
    for eq_idx, eq in enumerate(system.equations):
        for rep in range(m):
            for variant in ("plain", "negated"):
                variant_eq = eq if variant == "plain" else eq.negated()
                kind = "=0" if variant_eq.rhs == 0 else "=1"
                copy_ids = []
                for copy_index in range(3):
                    copy_id = len(copies)
                    copy_ids.append(copy_id)
                    copies.append(
                        {
                            "equation_index": eq_idx,
                            "replication": rep,
                            "variant": variant,
                            "copy_index": copy_index,
                            "kind": kind,
                            "lits": variant_eq.lits,
                            "node_map": None,
                        }
                    )
                triples.append({"copy_ids": tuple(copy_ids), "kind": kind})

    # Literal nodes, one per (copy, position): these become contact privates.
    literal_node: dict[tuple[int, int], int] = {}
    for copy_id, copy in enumerate(copies):
        for pos, (var, neg) in enumerate(copy["lits"]):
            node = alloc(1)[0]
            literal_node[(copy_id, pos)] = node
            slot = negated_slots if neg else plain_slots
            slot.setdefault(var, []).append(node)

    warnings: list[str] = []
    variable_records = []
    for var in sorted(plain_slots.keys() | negated_slots.keys()):
        plains = plain_slots.get(var, [])
        negs = negated_slots.get(var, [])
        if len(plains) != len(negs):
            raise AssertionError("plain/negated occurrence counts must match")
        k = len(plains)
        if k < AMPLIFIER_K_FLOOR:
            warnings.append(
                f"variable {var}: amplifier parameter k={k} below floor "
                f"{AMPLIFIER_K_FLOOR}; consistency is only probabilistic"
            )
        amp = build_amplifier(k, seed=seed * 1_000_003 + var)
        edge_node = {e: n for e, n in zip(amp.edges, alloc(len(amp.edges)))}
        incident: dict[int, list[int]] = {u: [] for u in range(amp.node_count)}
        for (u, v), node in edge_node.items():
            incident[u].append(node)
            incident[v].append(node)
        whites, blacks, contact_records = [], [], []
        white_contacts = [c for c in amp.contacts if c % 2 == 0]
        black_contacts = [c for c in amp.contacts if c % 2 == 1]
        private_of = {}
        for slot_nodes, contacts, color in (
            (plains, white_contacts, "white"),
            (negs, black_contacts, "black"),
        ):
            for node, contact in zip(slot_nodes, contacts):
                private_of[contact] = node
        for u in range(amp.node_count):
            members = sorted(incident[u])
            if u % 7 == 0:
                members.append(private_of[u])
            tri = tuple(sorted(members))
            add_triangle_edges(tri)
            if u % 2 == 0:
                whites.append(tri)
            else:
                blacks.append(tri)
            if u % 7 == 0:
                contact_records.append(
                    (u, "white" if u % 2 == 0 else "black", private_of[u], tri)
                )
        variable_records.append(
            VariableRecord(var, k, tuple(whites), tuple(blacks), tuple(contact_records))
        )

    # Instantiate equation gadgets on top of the literal nodes.
    for copy_id, copy in enumerate(copies):
        gadget = _gadget_for(copy["kind"], gadget_cache)
        node_map = [None] * gadget.node_count
        for pos, lit_local in enumerate(gadget.literals):
            node_map[lit_local] = literal_node[(copy_id, pos)]
        fresh = alloc(len(gadget.self_sufficient) + len(gadget.others))
        for local, node in zip(gadget.self_sufficient + gadget.others, fresh):
            node_map[local] = node
        copy["node_map"] = tuple(node_map)
        for u, v in gadget.edges:
            a, b = node_map[u], node_map[v]
            edges.add((min(a, b), max(a, b)))

    # Connect the three copies of each triple at self-sufficient nodes.
    triple_records = []
    for triple in triples:
        gadget = _gadget_for(triple["kind"], gadget_cache)
        ss_triangles = []
        for local in gadget.self_sufficient:
            tri = tuple(
                sorted(copies[cid]["node_map"][local] for cid in triple["copy_ids"])
            )
            add_triangle_edges(tri)
            ss_triangles.append((local, tri))
        triple_records.append(
            TripleRecord(triple["copy_ids"], tuple(ss_triangles))
        )

    graph = Graph(next_node, tuple(sorted(edges)))
    cert = Lin2TpCertificate(
        kind="lin2_to_tp",
        num_equations=len(system.equations),
        replication=m,
        m_s=2 * m,
        node_count=next_node,
        seed=seed,
        warnings=tuple(warnings),
        copies=tuple(
            CopyRecord(
                c["equation_index"], c["replication"], c["variant"],
                c["copy_index"], c["kind"], c["lits"], c["node_map"],
            )
            for c in copies
        ),
        triples=tuple(triple_records),
        variables=tuple(variable_records),
    )
    return graph, cert


def _truth_subset(copy: CopyRecord, assignment) -> frozenset[int]:
    out = set()
    for pos, (var, neg) in enumerate(copy.lits):
        value = assignment[var] ^ (1 if neg else 0)
        if value == 1:
            out.add(pos)
    return frozenset(out)


def lin2_solution_to_packing(assignment, cert: Lin2TpCertificate) -> PackingSolution:
    """Canonical packing of an assignment: amplifier color per variable plus
    the frozen gadget cover per copy and the copy-linking triangles."""
    gadget_cache: dict[str, EquationGadget] = {}
    triangles: list[tuple[int, int, int]] = []
    for rec in cert.variables:
        value = assignment[rec.variable]
        triangles.extend(rec.white_triangles if value == 1 else rec.black_triangles)
    covers = {}
    for copy_id, copy in enumerate(cert.copies):
        gadget = _gadget_for(copy.kind, gadget_cache)
        truth = _truth_subset(copy, assignment)
        cover = gadget.covers[truth]
        covers[copy_id] = cover
        for tri in cover.triangles:
            triangles.append(tuple(sorted(copy.node_map[v] for v in tri)))
    for triple in cert.triples:
        cover = covers[triple.copy_ids[0]]
        linked = set(cover.separate_ss)
        for local, tri in triple.ss_triangles:
            if local in linked:
                triangles.append(tri)
    triangles.sort()
    return PackingSolution(tuple(triangles), len(triangles))


def expected_packing_size(cert: Lin2TpCertificate, violated: int) -> int:
    # (76n - l) * m_S with E = 2n input equations.
    if cert.num_equations % 2:
        raise ValueError("the size formula assumes an even equation count")
    n = cert.num_equations // 2
    return (76 * n - violated) * cert.m_s


def packing_to_assignment(packing: PackingSolution, cert: Lin2TpCertificate) -> dict[int, int]:
    """Majority vote per variable over its contact triangles."""
    selected = {tuple(sorted(t)) for t in packing.selected}
    assignment: dict[int, int] = {}
    for rec in cert.variables:
        votes_one = 0
        votes_zero = 0
        for _, color, _, tri in rec.contact_triangles:
            present = tri in selected
            if color == "white":
                votes_one += 1 if present else 0
                votes_zero += 0 if present else 1
            else:
                votes_zero += 1 if present else 0
                votes_one += 0 if present else 1
        assignment[rec.variable] = 1 if votes_one > votes_zero else 0
    return assignment


def normalize_packing(packing: PackingSolution, cert: Lin2TpCertificate) -> PackingSolution:
    """Rewrite any packing as the canonical packing of its majority assignment."""
    return lin2_solution_to_packing(packing_to_assignment(packing, cert), cert)

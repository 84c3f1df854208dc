"""Ring-plus-matching consistency amplifiers and their triangle translation.

An amplifier on 14k nodes is bipartite between even ("white") and odd
("black") indices: a full ring, plus a random perfect matching between
white and black nodes whose indices are not divisible by 7.  Index-
divisible-by-7 nodes are contacts; they keep degree 2 and additionally
belong to an equation gadget.

Translating to triangle packing turns every amplifier node into a triangle
and every amplifier edge into a shared node; each contact triangle gains a
private node (the literal).  Choosing all white triangles covers every
edge node and leaves exactly the black contacts' private nodes uncovered,
and symmetrically for black.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ..core import Graph


@dataclass(frozen=True)
class Amplifier:
    k: int
    ring_edges: tuple[tuple[int, int], ...]
    matching_edges: tuple[tuple[int, int], ...]

    @property
    def node_count(self) -> int:
        return 14 * self.k

    @property
    def contacts(self) -> tuple[int, ...]:
        return tuple(range(0, 14 * self.k, 7))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(set(self.ring_edges) | set(self.matching_edges)))

    def degrees(self) -> list[int]:
        deg = [0] * self.node_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def build_amplifier(k: int, seed: int) -> Amplifier:
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 14 * k
    ring = tuple(
        (min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)
    )
    rng = random.Random(("amplifier", k, seed).__repr__())
    whites = [i for i in range(0, n, 2) if i % 7 != 0]
    blacks = [i for i in range(1, n, 2) if i % 7 != 0]
    ring_set = set(ring)
    # Resample until the matching avoids ring edges, keeping the graph simple.
    for _ in range(10_000):
        shuffled = list(blacks)
        rng.shuffle(shuffled)
        matching = tuple(
            (min(w, b), max(w, b)) for w, b in zip(whites, shuffled)
        )
        if not ring_set.intersection(matching):
            return Amplifier(k, ring, matching)
    raise RuntimeError("could not sample a ring-avoiding matching")


@dataclass(frozen=True)
class AmplifierFragment:
    """Triangle-packing translation of an amplifier.

    ``triangle_of[u]`` lists the packing-graph nodes of amplifier node u's
    triangle; contacts additionally expose their private node.
    """

    amplifier: Amplifier
    node_count: int
    edges: tuple[tuple[int, int], ...]
    triangle_of: tuple[tuple[int, int, int], ...]
    private_of: dict  # contact -> private node id

    def graph(self) -> Graph:
        return Graph(self.node_count, self.edges)

    def white_triangles(self) -> list[tuple[int, int, int]]:
        return [self.triangle_of[u] for u in range(0, self.amplifier.node_count, 2)]

    def black_triangles(self) -> list[tuple[int, int, int]]:
        return [self.triangle_of[u] for u in range(1, self.amplifier.node_count, 2)]


def amplifier_to_tp_fragment(amp: Amplifier, first_node: int = 0,
                             private_nodes: dict | None = None) -> AmplifierFragment:
    """Translate amplifier nodes to triangles over shared edge nodes.

    ``private_nodes`` may pre-assign ids to contact privates (the literal
    nodes shared with equation gadgets); fresh ids are allocated otherwise.
    """
    next_id = first_node
    edge_node: dict[tuple[int, int], int] = {}
    for e in amp.edges:
        edge_node[e] = next_id
        next_id += 1
    private_of: dict[int, int] = {}
    for c in amp.contacts:
        if private_nodes and c in private_nodes:
            private_of[c] = private_nodes[c]
        else:
            private_of[c] = next_id
            next_id += 1

    incident: dict[int, list[int]] = {u: [] for u in range(amp.node_count)}
    for (u, v), node in edge_node.items():
        incident[u].append(node)
        incident[v].append(node)

    triangles = []
    for u in range(amp.node_count):
        members = sorted(incident[u])
        if u % 7 == 0:
            members.append(private_of[u])
        if len(members) != 3:
            raise ValueError(f"amplifier node {u} has degree {len(members)}")
        triangles.append(tuple(sorted(members)))

    edges = set()
    for tri in triangles:
        for a, b in itertools.combinations(tri, 2):
            edges.add((min(a, b), max(a, b)))
    return AmplifierFragment(
        amp, next_id, tuple(sorted(edges)), tuple(triangles), private_of
    )


def check_minority_property(amp: Amplifier, exhaustive_limit: int = 1 << 22,
                            samples: int = 200, seed: int = 0) -> tuple[int, int]:
    """Count violations of: an independent set covering i <= k minority-color
    contacts leaves at least i amplifier edges uncovered.

    Exhaustive over all independent sets when the state space fits the
    limit; otherwise adversarial sampling around perturbed two-colorings.
    Returns (violations, trials).
    """
    n = amp.node_count
    adjacency: dict[int, set[int]] = {u: set() for u in range(n)}
    for u, v in amp.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    contacts = set(amp.contacts)
    total_edges = len(amp.edges)

    def stats(selection: set[int]) -> tuple[int, int]:
        white_c = sum(1 for c in contacts if c in selection and c % 2 == 0)
        black_c = sum(1 for c in contacts if c in selection and c % 2 == 1)
        minority = min(white_c, black_c)
        covered = sum(
            1 for u, v in amp.edges if u in selection or v in selection
        )
        return minority, total_edges - covered

    violations = 0
    trials = 0

    if 2 ** n <= exhaustive_limit:
        def rec(u: int, selection: set[int]):
            nonlocal violations, trials
            if u == n:
                minority, uncovered = stats(selection)
                trials += 1
                if minority <= amp.k and uncovered < minority:
                    violations += 1
                return
            rec(u + 1, selection)
            if not adjacency[u] & selection:
                selection.add(u)
                rec(u + 1, selection)
                selection.remove(u)

        rec(0, set())
        return violations, trials

    rng = random.Random(("minority", amp.k, seed).__repr__())
    for _ in range(samples):
        # Independent sets biased toward one color with a few flips: the
        # adversarial shape for the minority bound.
        base = rng.choice((0, 1))
        flips = rng.randint(1, amp.k)
        flip_contacts = rng.sample(amp.contacts, min(flips, len(amp.contacts)))
        selection: set[int] = set()
        wanted = set(range(base, n, 2)) - {
            c for c in flip_contacts if c % 2 == base
        }
        wanted |= {c for c in flip_contacts if c % 2 != base}
        for u in sorted(wanted):
            if not adjacency[u] & selection:
                selection.add(u)
        minority, uncovered = stats(selection)
        trials += 1
        if minority <= amp.k and uncovered < minority:
            violations += 1
    return violations, trials

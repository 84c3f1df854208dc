"""Per-equation triangle gadgets and their exhaustive validation.

A gadget's nodes split into three literal nodes (shared with consistency
fragments), self-sufficient nodes (coverable by the triangles connecting
the three copies of the gadget), and filler nodes.  The binding contract
is the coverage table: with T the set of externally covered literals,

* ``kind "=0"``: |T| even -> every node outside T is coverable, letting
  self-sufficient nodes be covered separately; |T| odd -> the best packing
  leaves exactly one non-self-sufficient node uncovered.
* ``kind "=1"``: |T| odd -> full cover; |T| even -> exactly one node short.

Candidate edge sets are hand-built; construction re-validates them row by
row against exhaustive packing and fails closed on any mismatch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class GadgetValidationError(RuntimeError):
    """A candidate gadget failed its coverage table; building must stop."""


@dataclass(frozen=True)
class CanonicalCover:
    """Frozen cover used by solution transport for one truth subset."""

    triangles: tuple[tuple[int, int, int], ...]
    separate_ss: tuple[int, ...]  # self-sufficient nodes left to the copy link
    uncovered: tuple[int, ...]


@dataclass(frozen=True)
class EquationGadget:
    kind: str  # "=0" or "=1"
    literals: tuple[int, int, int]
    self_sufficient: tuple[int, ...]
    others: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    covers: dict  # frozenset truth subset (literal positions) -> CanonicalCover

    @property
    def node_count(self) -> int:
        return len(self.literals) + len(self.self_sufficient) + len(self.others)

    def triangles(self) -> list[tuple[int, int, int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(self.node_count)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        out = []
        for u, v in self.edges:
            for w in adj[u] & adj[v]:
                if w > v:
                    out.append((u, v, w))
        return out


# Node layout: literals 0,1,2 then self-sufficient nodes then fillers.

_ZERO_LITERALS = (0, 1, 2)
_ZERO_SS = (3, 4)          # s, t
_ZERO_OTHERS = (5, 6, 7, 8)  # o1..o4
_ZERO_EDGES = (
    (0, 3), (0, 8), (3, 8),      # {x, s, o4}
    (1, 4), (1, 5), (4, 5),      # {y, t, o1}
    (1, 8), (4, 8),              # {y, t, o4}
    (2, 3), (2, 8),              # {z, s, o4}
    (2, 6), (2, 7),              # {z, o2, o3}
    (5, 6), (5, 7), (6, 7),      # o-triangle {o1, o2, o3}
)

_ONE_LITERALS = (0, 1, 2)
_ONE_SS = (3,)               # s
_ONE_OTHERS = (4, 5, 6)      # o1..o3
_ONE_EDGES = (
    (0, 3), (1, 3), (2, 3),      # literals to the hub
    (3, 4), (3, 5), (3, 6),      # hub to fillers
    (4, 5), (4, 6), (5, 6),      # o-triangle
    (0, 4), (0, 5),              # x sees o1, o2
    (1, 5), (1, 6),              # y sees o2, o3
    (2, 6), (2, 4),              # z sees o3, o1
)

_ZERO_COVERS = {
    frozenset(): CanonicalCover(((0, 3, 8), (1, 4, 5), (2, 6, 7)), (), ()),
    frozenset({0}): CanonicalCover(((1, 4, 5), (2, 6, 7)), (3,), (8,)),
    frozenset({1}): CanonicalCover(((0, 3, 8), (2, 6, 7)), (4,), (5,)),
    frozenset({2}): CanonicalCover(((0, 3, 8), (5, 6, 7)), (4,), (1,)),
    frozenset({0, 1}): CanonicalCover(((2, 3, 8), (5, 6, 7)), (4,), ()),
    frozenset({0, 2}): CanonicalCover(((1, 4, 8), (5, 6, 7)), (3,), ()),
    frozenset({1, 2}): CanonicalCover(((0, 3, 8), (5, 6, 7)), (4,), ()),
    frozenset({0, 1, 2}): CanonicalCover(((5, 6, 7),), (3, 4), (8,)),
}

_ONE_COVERS = {
    frozenset(): CanonicalCover(((0, 3, 4), (1, 5, 6)), (), (2,)),
    frozenset({0}): CanonicalCover(((1, 3, 5), (2, 4, 6)), (), ()),
    frozenset({1}): CanonicalCover(((2, 3, 6), (0, 4, 5)), (), ()),
    frozenset({2}): CanonicalCover(((0, 3, 4), (1, 5, 6)), (), ()),
    frozenset({0, 1}): CanonicalCover(((4, 5, 6),), (3,), (2,)),
    frozenset({0, 2}): CanonicalCover(((4, 5, 6),), (3,), (1,)),
    frozenset({1, 2}): CanonicalCover(((4, 5, 6),), (3,), (0,)),
    frozenset({0, 1, 2}): CanonicalCover(((4, 5, 6),), (3,), ()),
}


def coverage_table(kind: str) -> dict:
    """Expected outcome per truth subset: (full_coverable, min_nonss_uncovered)."""
    if kind == "=0":
        return {
            frozenset(t): (len(t) % 2 == 0, 0 if len(t) % 2 == 0 else 1)
            for t in _all_subsets()
        }
    if kind == "=1":
        return {
            frozenset(t): (len(t) % 2 == 1, 0 if len(t) % 2 == 1 else 1)
            for t in _all_subsets()
        }
    raise ValueError(f"unknown gadget kind {kind!r}")


def _all_subsets():
    for r in range(4):
        yield from itertools.combinations((0, 1, 2), r)


def _max_packings(triangles, available: frozenset[int]):
    usable = [t for t in triangles if set(t) <= available]

    def rec(pos: int, used: frozenset[int]):
        yield used
        for nxt in range(pos, len(usable)):
            t = usable[nxt]
            if used & set(t):
                continue
            yield from rec(nxt + 1, used | set(t))

    yield from rec(0, frozenset())


def _validate(gadget: EquationGadget):
    table = coverage_table(gadget.kind)
    triangles = gadget.triangles()
    all_nodes = frozenset(range(gadget.node_count))
    ss = set(gadget.self_sufficient)
    for truth, (full_ok, min_uncovered) in table.items():
        removed = {gadget.literals[i] for i in truth}
        available = all_nodes - removed
        nonss_available = available - ss
        best_nonss_short = None
        full_found = False
        for covered in _max_packings(triangles, available):
            short = len(nonss_available - covered)
            if best_nonss_short is None or short < best_nonss_short:
                best_nonss_short = short
            if short == 0:
                full_found = True
        if full_ok != full_found or best_nonss_short != min_uncovered:
            raise GadgetValidationError(
                f"{gadget.kind} gadget violates its table at truth set "
                f"{sorted(truth)}: full={full_found}, short={best_nonss_short}"
            )
        # The frozen canonical cover must replay exactly.
        cover = gadget.covers[truth]
        used: set[int] = set()
        for tri in cover.triangles:
            if not set(tri) <= available:
                raise GadgetValidationError(
                    f"canonical cover for {sorted(truth)} uses removed node")
            if set(tri) not in [set(t) for t in triangles]:
                raise GadgetValidationError(
                    f"{tri} is not a triangle of the {gadget.kind} gadget")
            if used & set(tri):
                raise GadgetValidationError(
                    f"canonical cover for {sorted(truth)} overlaps itself")
            used |= set(tri)
        leftovers = available - used
        expected_left = set(cover.separate_ss) | set(cover.uncovered)
        if leftovers != expected_left:
            raise GadgetValidationError(
                f"canonical cover for {sorted(truth)} leaves {sorted(leftovers)}, "
                f"recorded {sorted(expected_left)}"
            )
        if not set(cover.separate_ss) <= ss:
            raise GadgetValidationError("separate nodes must be self-sufficient")
        if set(cover.uncovered) & ss:
            raise GadgetValidationError("self-sufficient nodes are never 'uncovered'")
        if len(cover.uncovered) != min_uncovered:
            raise GadgetValidationError(
                f"canonical cover for {sorted(truth)} is not tight")


def synth_equation_gadget(kind: str) -> EquationGadget:
    """Return the validated gadget for an equation of the given parity."""
    if kind == "=0":
        gadget = EquationGadget(
            kind, _ZERO_LITERALS, _ZERO_SS, _ZERO_OTHERS, _ZERO_EDGES, _ZERO_COVERS
        )
    elif kind == "=1":
        gadget = EquationGadget(
            kind, _ONE_LITERALS, _ONE_SS, _ONE_OTHERS, _ONE_EDGES, _ONE_COVERS
        )
    else:
        raise ValueError(f"unknown gadget kind {kind!r}")
    _validate(gadget)
    return gadget

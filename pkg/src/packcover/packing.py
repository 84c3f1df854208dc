"""Packing engines over explicit set collections, plus triangle front ends.

Engines: order-greedy, unweighted local search with bounded swap size,
a squared-weight local search for weighted collections, and an exact
branch-and-bound oracle.  ``pack_triangles`` wires them to the triangles
of a graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import BudgetExceededError, Graph, PackingSolution

DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class SetCollection:
    universe_size: int
    sets: tuple[frozenset[int], ...]
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        for s in self.sets:
            for e in s:
                if not (0 <= e < self.universe_size):
                    raise ValueError(f"element {e} out of range")
        if self.weights is not None:
            if len(self.weights) != len(self.sets):
                raise ValueError("weights length mismatch")
            if any(w < 0 for w in self.weights):
                raise ValueError("negative set weight")

    @property
    def max_set_size(self) -> int:
        return max((len(s) for s in self.sets), default=0)

    def weight_of(self, idx: int) -> Fraction:
        if self.weights is None:
            return Fraction(1)
        return self.weights[idx]

    def masks(self) -> list[int]:
        out = []
        for s in self.sets:
            m = 0
            for e in s:
                m |= 1 << e
            out.append(m)
        return out


def make_collection(universe_size, sets, weights=None) -> SetCollection:
    return SetCollection(
        universe_size,
        tuple(frozenset(s) for s in sets),
        None if weights is None else tuple(Fraction(w) for w in weights),
    )


def enumerate_triangles(g: Graph) -> SetCollection:
    adj = g.adjacency()
    triangles = []
    for u, v in g.edges:
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                triangles.append(frozenset((u, v, w)))
    triangles.sort(key=sorted)
    return SetCollection(g.node_count, tuple(triangles))


def _objective(c: SetCollection, selected) -> Fraction | int:
    if c.weights is None:
        return len(selected)
    return sum((c.weights[i] for i in selected), Fraction(0))


def greedy_packing(c: SetCollection) -> PackingSolution:
    """Insert admissible sets in a fixed order until the packing is maximal.

    Weighted collections are scanned by descending weight (ties by index),
    unweighted ones by index.
    """
    if c.weights is None:
        order = range(len(c.sets))
    else:
        order = sorted(range(len(c.sets)), key=lambda i: (-c.weights[i], i))
    masks = c.masks()
    used = 0
    selected = []
    for i in order:
        if masks[i] & used == 0:
            selected.append(i)
            used |= masks[i]
    selected.sort()
    return PackingSolution(tuple(selected), _objective(c, selected))


def _find_disjoint(masks, candidates, need: int, forbidden: int, chosen: list[int]) -> list[int] | None:
    if need == 0:
        return list(chosen)
    for pos, i in enumerate(candidates):
        if masks[i] & forbidden:
            continue
        chosen.append(i)
        found = _find_disjoint(masks, candidates[pos + 1:], need - 1,
                               forbidden | masks[i], chosen)
        if found is not None:
            return found
        chosen.pop()
    return None


def local_search_packing(c: SetCollection, s: int = 2) -> PackingSolution:
    """Cardinality local search: no swap of <= s selected sets for more
    pairwise-disjoint admissible ones remains."""
    if s < 1:
        raise ValueError("s must be >= 1")
    masks = c.masks()
    selected = list(greedy_packing(c).selected)

    improved = True
    while improved:
        improved = False
        sel_set = set(selected)
        used = 0
        for i in selected:
            used |= masks[i]
        # Re-establish maximality first.
        for i in range(len(c.sets)):
            if i not in sel_set and masks[i] & used == 0:
                selected.append(i)
                used |= masks[i]
                sel_set.add(i)
                improved = True
        if improved:
            selected.sort()
            continue
        for t in range(1, s + 1):
            if t > len(selected):
                break
            for removal in itertools.combinations(sorted(selected), t):
                base = used
                for i in removal:
                    base &= ~masks[i]
                candidates = [
                    i for i in range(len(c.sets))
                    if (i not in sel_set or i in removal) and masks[i] & base == 0
                ]
                found = _find_disjoint(masks, candidates, t + 1, base, [])
                if found is not None:
                    for i in removal:
                        selected.remove(i)
                    selected.extend(found)
                    selected.sort()
                    improved = True
                    break
            if improved:
                break
    return PackingSolution(tuple(sorted(selected)), _objective(c, selected))


def squareimp_packing(c: SetCollection, eps: float = 0.1,
                      max_insert: int | None = None) -> PackingSolution:
    """Local search on the sum of squared rescaled weights.

    Weights are scaled to integers in [0, N] with N = 10*m/eps and rounded
    down; a move (insert up to ``max_insert`` sets, drop whatever overlaps
    them) is taken when it raises the squared-weight sum by at least 1.
    """
    m = len(c.sets)
    if m == 0:
        return PackingSolution((), _objective(c, []))
    weights = [c.weight_of(i) for i in range(m)]
    w_max = max(weights)
    if w_max == 0:
        return greedy_packing(c)
    n_scale = max(1, int(10 * m / eps))
    scaled = [int(w * n_scale / w_max) for w in weights]
    masks = c.masks()
    if max_insert is None:
        max_insert = 3 if m <= 60 else 2

    selected = list(greedy_packing(c).selected)

    def overlap_cost(extra_mask: int, skip: set[int]) -> tuple[int, list[int]]:
        cost = 0
        removed = []
        for i in selected:
            if i in skip:
                continue
            if masks[i] & extra_mask:
                cost += scaled[i] ** 2
                removed.append(i)
        return cost, removed

    improved = True
    while improved:
        improved = False
        insertables = range(m)
        for size in range(1, max_insert + 1):
            sel_set = set(selected)
            for combo in itertools.combinations(insertables, size):
                if any(i in sel_set for i in combo):
                    continue
                combo_mask = 0
                gain = 0
                ok = True
                for i in combo:
                    if masks[i] & combo_mask:
                        ok = False
                        break
                    combo_mask |= masks[i]
                    gain += scaled[i] ** 2
                if not ok:
                    continue
                combo_set = set(combo)
                cost, removed = overlap_cost(combo_mask, combo_set)
                if gain - cost >= 1:
                    for i in removed:
                        selected.remove(i)
                    selected.extend(combo)
                    selected.sort()
                    improved = True
                    break
            if improved:
                break
    # A final greedy pass keeps the packing maximal for zero-weight slack.
    used = 0
    for i in selected:
        used |= masks[i]
    for i in range(m):
        if i not in selected and masks[i] & used == 0:
            selected.append(i)
            used |= masks[i]
    return PackingSolution(tuple(sorted(selected)), _objective(c, selected))


def exact_packing(c: SetCollection, node_budget: int = DEFAULT_NODE_BUDGET) -> PackingSolution:
    """Optimal packing by branch and bound; fails loudly on budget exhaustion."""
    m = len(c.sets)
    weights = [c.weight_of(i) for i in range(m)]
    order = sorted(range(m), key=lambda i: (-weights[i], i))
    masks = c.masks()
    suffix = [Fraction(0)] * (m + 1)
    for pos in range(m - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + weights[order[pos]]

    best_value = Fraction(0)
    best_sel: list[int] = []
    nodes = 0

    def dfs(pos: int, used: int, value, chosen: list[int]):
        nonlocal best_value, best_sel, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(
                f"branch-and-bound exceeded {node_budget} nodes"
            )
        if value > best_value:
            best_value = value
            best_sel = list(chosen)
        if pos == m or value + suffix[pos] <= best_value:
            return
        i = order[pos]
        if masks[i] & used == 0:
            chosen.append(i)
            dfs(pos + 1, used | masks[i], value + weights[i], chosen)
            chosen.pop()
        dfs(pos + 1, used, value, chosen)

    dfs(0, 0, Fraction(0), [])
    best_sel.sort()
    return PackingSolution(tuple(best_sel), _objective(c, best_sel))


def pack_triangles(g: Graph, algo: str = "exact",
                   node_budget: int = DEFAULT_NODE_BUDGET) -> PackingSolution:
    """Pack node-disjoint triangles with the chosen engine.

    ``algo`` is one of ``greedy``, ``local`` / ``local:<s>`` or ``exact``.
    """
    triangles = enumerate_triangles(g)
    if algo == "greedy":
        sol = greedy_packing(triangles)
    elif algo == "exact":
        sol = exact_packing(triangles, node_budget=node_budget)
    elif algo == "local" or algo.startswith("local:"):
        s = int(algo.split(":", 1)[1]) if ":" in algo else 2
        sol = local_search_packing(triangles, s=s)
    else:
        raise ValueError(f"unknown triangle packing algorithm {algo!r}")
    triples = tuple(
        tuple(sorted(triangles.sets[i])) for i in sol.selected
    )
    return PackingSolution(triples, len(triples))

"""2-coverage: pick at most k sets maximizing elements covered twice.

Routes: a pairwise-intersection reduction to maximum coverage, a two-phase
greedy, their combination, and an exact oracle, plus the instance maps
between degree-style graph instances and f=2 set systems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import BudgetExceededError, Graph, WeightedSetSystem, make_graph

DEFAULT_SELECTION_BUDGET = 2_000_000


@dataclass(frozen=True)
class Cov2Solution:
    selected: tuple[int, ...]
    twice_covered: frozenset[int]
    objective: int

    def __post_init__(self):
        if self.objective != len(self.twice_covered):
            raise ValueError("objective must equal |twice_covered|")


@dataclass(frozen=True)
class PairwiseSet:
    """Intersection set built from an ordered parent pair."""

    parents: tuple[int, int]
    elements: frozenset[int]

    def __post_init__(self):
        i, j = self.parents
        if i >= j:
            raise ValueError("parents must be ordered")


def _twice_covered(system: WeightedSetSystem, selected) -> frozenset[int]:
    counts: dict[int, int] = {}
    for idx in selected:
        for e in system.sets[idx]:
            counts[e] = counts.get(e, 0) + 1
    return frozenset(e for e, c in counts.items() if c >= 2)


def _solution(system: WeightedSetSystem, selected) -> Cov2Solution:
    sel = tuple(sorted(set(selected)))
    twice = _twice_covered(system, sel)
    return Cov2Solution(sel, twice, len(twice))


def maxcov_greedy(sets, k: int) -> list[int]:
    """Greedy maximum coverage: k rounds of best marginal gain, ties by index."""
    if isinstance(sets, WeightedSetSystem):
        sets = list(sets.sets)
    if k > len(sets):
        raise ValueError("k cannot exceed the number of sets")
    covered: set[int] = set()
    chosen: list[int] = []
    for _ in range(k):
        best, best_gain = None, -1
        for i, s in enumerate(sets):
            if i in chosen:
                continue
            gain = len(s - covered)
            if gain > best_gain:
                best, best_gain = i, gain
        chosen.append(best)
        covered |= sets[best]
    return chosen


def maxcov_exact(sets: list[frozenset[int]], k: int,
                 budget: int = DEFAULT_SELECTION_BUDGET) -> int:
    if comb(len(sets), min(k, len(sets))) > budget:
        raise BudgetExceededError("maximum-coverage enumeration over budget")
    best = 0
    for combo in itertools.combinations(range(len(sets)), min(k, len(sets))):
        union = set().union(*(sets[i] for i in combo)) if combo else set()
        best = max(best, len(union))
    return best


def cov2_pairwise(system: WeightedSetSystem, k: int) -> Cov2Solution:
    """Greedy coverage over the pairwise intersections, then output parents."""
    if k < 2:
        raise ValueError("k must be >= 2")
    pair_sets: list[PairwiseSet] = []
    seen: dict[frozenset[int], None] = {}
    for i, j in itertools.combinations(range(len(system.sets)), 2):
        inter = system.sets[i] & system.sets[j]
        if inter and inter not in seen:
            seen[inter] = None
            pair_sets.append(PairwiseSet((i, j), inter))
    if not pair_sets:
        return _solution(system, [])
    rounds = min(k // 2, len(pair_sets))
    chosen = maxcov_greedy([p.elements for p in pair_sets], rounds)
    selected: list[int] = []
    for pos in chosen:
        selected.extend(pair_sets[pos].parents)
    return _solution(system, selected[: k])


def cov2_two_phase(system: WeightedSetSystem, k: int) -> Cov2Solution:
    """Phase 1 covers once with ceil(k/2) sets; phase 2 re-covers the
    once-covered residue with the remaining budget."""
    if k < 2:
        raise ValueError("k must be >= 2")
    m = len(system.sets)
    k1 = min((k + 1) // 2, m)
    phase1 = maxcov_greedy(list(system.sets), k1)
    union1: set[int] = set()
    counts: dict[int, int] = {}
    for i in phase1:
        for e in system.sets[i]:
            counts[e] = counts.get(e, 0) + 1
            union1.add(e)
    target = {e for e in union1 if counts[e] == 1}
    residual_ids = [i for i in range(m) if i not in phase1]
    k2 = min(k - len(phase1), len(residual_ids))
    if k2 > 0 and target:
        residual_sets = [system.sets[i] & target for i in residual_ids]
        phase2 = [residual_ids[pos] for pos in maxcov_greedy(residual_sets, k2)]
    else:
        phase2 = []
    return _solution(system, phase1 + phase2)


def cov2_combined(system: WeightedSetSystem, k: int) -> Cov2Solution:
    """Best of the pairwise and two-phase routes by verified objective."""
    a = cov2_pairwise(system, k)
    b = cov2_two_phase(system, k)
    return a if a.objective >= b.objective else b


def cov2_exact(system: WeightedSetSystem, k: int,
               budget: int = DEFAULT_SELECTION_BUDGET) -> Cov2Solution:
    m = len(system.sets)
    size = min(k, m)
    if comb(m, size) > budget:
        raise BudgetExceededError(f"C({m},{size}) selections over budget")
    best = _solution(system, [])
    for combo in itertools.combinations(range(m), size):
        cand = _solution(system, combo)
        if cand.objective > best.objective:
            best = cand
    return best


def ds_to_cov2(g: Graph, k: int) -> WeightedSetSystem:
    """Edges become the universe, each vertex the set of its incident edges."""
    if not (0 < k):
        raise ValueError("k must be positive")
    edge_index = {e: i for i, e in enumerate(g.edges)}
    sets = []
    for v in range(g.node_count):
        sets.append(
            frozenset(
                edge_index[(min(v, u), max(v, u))]
                for u in g.adjacency()[v]
            )
        )
    return WeightedSetSystem(
        len(g.edges),
        tuple(Fraction(1) for _ in g.edges),
        tuple(sets),
        tuple(Fraction(0) for _ in sets),
    )


def cov2_to_weighted_ds(system: WeightedSetSystem) -> Graph:
    """One node per set; intersecting sets joined by an edge weighted by the
    intersection size."""
    edges = []
    weights = {}
    for i, j in itertools.combinations(range(len(system.sets)), 2):
        common = len(system.sets[i] & system.sets[j])
        if common:
            edges.append((i, j))
            weights[(i, j)] = Fraction(common)
    return make_graph(len(system.sets), edges, weights if edges else None)


def densest_k_edges(g: Graph, k: int,
                    budget: int = DEFAULT_SELECTION_BUDGET) -> int:
    """Brute-force oracle: most edges inside any k-node induced subgraph."""
    if comb(g.node_count, min(k, g.node_count)) > budget:
        raise BudgetExceededError("densest-subgraph enumeration over budget")
    edge_set = g.edge_set
    best = 0
    for combo in itertools.combinations(range(g.node_count), min(k, g.node_count)):
        inside = sum(
            1 for u, v in itertools.combinations(combo, 2) if (u, v) in edge_set
        )
        best = max(best, inside)
    return best

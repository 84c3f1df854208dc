"""Minimum full-sibling cover solvers.

All solvers emit partitions: subsets of feasible groups stay feasible, so a
cover can always be made disjoint without getting larger.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import ceil, comb

from .core import BudgetExceededError, CoverSolution, SibInstance
from .packing import SetCollection, local_search_packing, greedy_packing
from .sibcheck import check_group

DEFAULT_ENUM_BUDGET = 2_000_000
DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class SibCoverParams:
    k: int = 2
    max_group_size: int | None = None
    charge_threshold: int = 3
    eps: float = 0.1

    def __post_init__(self):
        if self.charge_threshold < 1:
            raise ValueError("charging threshold must be >= 1")
        if self.k not in (2, 4):
            raise ValueError("k must be 2 or 4")


def _feasible_groups_of_size(instance: SibInstance, k: int, size: int,
                             within: list[int]) -> list[tuple[int, ...]]:
    return [
        combo
        for combo in itertools.combinations(sorted(within), size)
        if check_group(instance, combo, k)
    ]


def _pair_up(rest: list[int]) -> list[frozenset[int]]:
    rest = sorted(rest)
    groups = [frozenset(rest[i:i + 2]) for i in range(0, len(rest) - 1, 2)]
    if len(rest) % 2:
        groups.append(frozenset((rest[-1],)))
    return groups


def solve_threshold_greedy(instance: SibInstance, k: int, c: int,
                           budget: int = DEFAULT_ENUM_BUDGET) -> CoverSolution:
    """Repeatedly remove a feasible group of size c, or a maximum-size one
    when nothing that large remains."""
    if c < 1:
        raise ValueError("c must be >= 1")
    if sum(comb(instance.n, i) for i in range(1, c + 1)) > budget:
        raise BudgetExceededError(f"C({instance.n},{c}) enumeration over budget")
    remaining = list(range(instance.n))
    groups: list[frozenset[int]] = []
    while remaining:
        chosen = None
        for size in range(min(c, len(remaining)), 0, -1):
            found = _feasible_groups_of_size(instance, k, size, remaining)
            if found:
                chosen = found[0]
                break
        groups.append(frozenset(chosen))
        for i in chosen:
            remaining.remove(i)
    return CoverSolution(tuple(groups), len(groups))


def _triple_packing_cover(instance: SibInstance, k: int, s: int,
                          within: list[int]) -> tuple[list[frozenset[int]], list[int]]:
    triples = _feasible_groups_of_size(instance, k, 3, within)
    if not triples:
        return [], list(within)
    index_of = {i: pos for pos, i in enumerate(sorted(within))}
    collection = SetCollection(
        len(within),
        tuple(frozenset(index_of[i] for i in t) for t in triples),
    )
    packed = local_search_packing(collection, s=s)
    back = sorted(within)
    chosen = [frozenset(back[j] for j in collection.sets[i]) for i in packed.selected]
    covered = set().union(*chosen) if chosen else set()
    rest = [i for i in within if i not in covered]
    return chosen, rest


def solve_a3(instance: SibInstance, k: int, eps: float = 0.1) -> CoverSolution:
    """Cover with groups of size <= 3: local-search triple packing, then pairs."""
    s = min(3, max(1, ceil(1 / eps)))
    groups, rest = _triple_packing_cover(instance, k, s, list(range(instance.n)))
    groups.extend(_pair_up(rest))
    return CoverSolution(tuple(groups), len(groups))


def solve_a4(instance: SibInstance, k: int, eps: float = 0.1) -> CoverSolution:
    """Cover with groups of size <= 4: greedy maximal 4-group packing, then
    triple local search on the rest, then pairs."""
    s = min(3, max(1, ceil(1 / eps)))
    remaining = list(range(instance.n))
    groups: list[frozenset[int]] = []
    while True:
        found = _feasible_groups_of_size(instance, k, 4, remaining)
        if not found:
            break
        groups.append(frozenset(found[0]))
        for i in found[0]:
            remaining.remove(i)
    triples, rest = _triple_packing_cover(instance, k, s, remaining)
    groups.extend(triples)
    groups.extend(_pair_up(rest))
    return CoverSolution(tuple(groups), len(groups))


def solve_setcover_greedy(instance: SibInstance, k: int, a: int,
                          budget: int = DEFAULT_ENUM_BUDGET) -> CoverSolution:
    """Classic greedy set cover over all feasible groups of size <= a."""
    if a < 1:
        raise ValueError("a must be >= 1")
    if sum(comb(instance.n, i) for i in range(1, a + 1)) > budget:
        raise BudgetExceededError(f"C({instance.n},{a}) enumeration over budget")
    candidates: list[tuple[int, ...]] = []
    for size in range(1, min(a, instance.n) + 1):
        candidates.extend(
            _feasible_groups_of_size(instance, k, size, list(range(instance.n)))
        )
    uncovered = set(range(instance.n))
    groups: list[frozenset[int]] = []
    while uncovered:
        best = max(
            candidates,
            key=lambda grp: (len(uncovered.intersection(grp)), [-i for i in grp]),
        )
        gain = uncovered.intersection(best)
        groups.append(frozenset(gain))
        uncovered -= gain
    return CoverSolution(tuple(groups), len(groups))


def solve_exact_cover(instance: SibInstance, k: int, a: int,
                      node_budget: int = DEFAULT_NODE_BUDGET,
                      enum_budget: int = DEFAULT_ENUM_BUDGET) -> CoverSolution:
    """Minimum cover by branch and bound over feasible groups of size <= a."""
    if a < 1:
        raise ValueError("a must be >= 1")
    n = instance.n
    if n == 0:
        return CoverSolution((), 0)
    if sum(comb(n, i) for i in range(1, a + 1)) > enum_budget:
        raise BudgetExceededError(f"C({n},{a}) enumeration over budget")
    groups_by_member: dict[int, list[frozenset[int]]] = {i: [] for i in range(n)}
    max_size = 1
    for size in range(1, min(a, n) + 1):
        for combo in itertools.combinations(range(n), size):
            if check_group(instance, combo, k):
                grp = frozenset(combo)
                groups_by_member[min(combo)].append(grp)
                max_size = max(max_size, size)
    for i in range(n):
        groups_by_member[i].sort(key=lambda g: (-len(g), sorted(g)))

    best: list[frozenset[int]] | None = None
    nodes = 0

    def dfs(uncovered: frozenset[int], chosen: list[frozenset[int]]):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(f"branch-and-bound exceeded {node_budget} nodes")
        if not uncovered:
            if best is None or len(chosen) < len(best):
                best = list(chosen)
            return
        bound = len(chosen) + ceil(len(uncovered) / max_size)
        if best is not None and bound >= len(best):
            return
        pivot = min(uncovered)
        # Subsets of feasible groups are feasible, so every useful group at
        # this pivot appears verbatim in its bucket.
        for grp in groups_by_member[pivot]:
            if not grp <= uncovered:
                continue
            chosen.append(grp)
            dfs(uncovered - grp, chosen)
            chosen.pop()

    dfs(frozenset(range(n)), [])
    assert best is not None
    return CoverSolution(tuple(best), len(best))

"""Maximum profit coverage: pick sets maximizing covered weight minus costs.

Routes: exact matching-based solver for max set size a <= 2, subset
expansion plus squared-weight local search for fixed a, a marginal-profit
greedy, a pair-insertion local search with implicit profit bookkeeping
(NamedSet claims), and a branch-and-bound oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .core import BudgetExceededError, WeightedSetSystem
from .packing import SetCollection, squareimp_packing

DEFAULT_NODE_BUDGET = 20_000_000


@dataclass(frozen=True)
class MpcSolution:
    selected: tuple[int, ...]
    objective: Fraction
    moves: int = 0


@dataclass(frozen=True)
class NamedSet:
    """Claimed portion of an instance set: elements currently credited to it."""

    name: int
    claimed: frozenset[int]


@dataclass(frozen=True)
class TwoImpParams:
    alpha: int = 2
    delta: int = 1
    precision: Fraction | None = None  # quantization step; derived when None
    eps: Fraction = Fraction(1, 10)

    def __post_init__(self):
        if self.alpha <= 1:
            raise ValueError("alpha must exceed 1")
        if self.delta <= 0:
            raise ValueError("delta must be positive")


def mpc_profit(system: WeightedSetSystem, selection) -> Fraction:
    union: set[int] = set()
    cost = Fraction(0)
    for idx in selection:
        union |= system.sets[idx]
        cost += system.set_costs[idx]
    return system.weight(union) - cost


def mpc_exact(system: WeightedSetSystem,
              node_budget: int = DEFAULT_NODE_BUDGET) -> MpcSolution:
    """Branch and bound over set selections with union-profit objective."""
    m = len(system.sets)
    masks = []
    for s in system.sets:
        mask = 0
        for e in s:
            mask |= 1 << e
        masks.append(mask)
    weights = system.element_weights

    def mask_weight(mask: int) -> Fraction:
        total = Fraction(0)
        while mask:
            low = mask & -mask
            total += weights[low.bit_length() - 1]
            mask ^= low
        return total

    # Optimistic marginal gain of each set ignoring interactions.
    solo_gain = [
        max(Fraction(0), system.weight(system.sets[i]) - system.set_costs[i])
        for i in range(m)
    ]
    order = sorted(range(m), key=lambda i: (-solo_gain[i], i))
    suffix = [Fraction(0)] * (m + 1)
    for pos in range(m - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + solo_gain[order[pos]]

    best = Fraction(0)
    best_sel: list[int] = []
    nodes = 0

    def dfs(pos: int, covered: int, profit: Fraction, chosen: list[int]):
        nonlocal best, best_sel, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(f"exceeded {node_budget} search nodes")
        if profit > best:
            best = profit
            best_sel = list(chosen)
        if pos == m or profit + suffix[pos] <= best:
            return
        i = order[pos]
        gain = mask_weight(masks[i] & ~covered) - system.set_costs[i]
        if gain >= 0:
            # A set whose marginal gain is negative here stays dominated in
            # every extension of this prefix.
            chosen.append(i)
            dfs(pos + 1, covered | masks[i], profit + gain, chosen)
            chosen.pop()
        dfs(pos + 1, covered, profit, chosen)

    dfs(0, 0, Fraction(0), [])
    best_sel.sort()
    return MpcSolution(tuple(best_sel), mpc_profit(system, best_sel))


def _nonnegative_subsets(system: WeightedSetSystem):
    """Expanded weighted set-packing instance: every nonnegative-profit subset
    of every instance set, tagged with its parent."""
    subsets: list[frozenset[int]] = []
    weights: list[Fraction] = []
    parents: list[int] = []
    for idx, s in enumerate(system.sets):
        members = sorted(s)
        for r in range(len(members), 0, -1):
            for combo in itertools.combinations(members, r):
                w = system.weight(combo) - system.set_costs[idx]
                if w >= 0:
                    subsets.append(frozenset(combo))
                    weights.append(w)
                    parents.append(idx)
    return subsets, weights, parents


def mpc_exact_small_a(system: WeightedSetSystem) -> MpcSolution:
    """Optimal solution for a <= 2 via maximum-weight matching.

    Nonnegative-profit subsets of size two become edges, singletons become
    pendant edges to dummy nodes; a maximum-weight matching in that graph
    is an optimal weighted set packing, which has the same optimum.
    """
    if system.max_set_size > 2:
        raise ValueError("this route requires every set to have <= 2 elements")
    subsets, weights, parents = _nonnegative_subsets(system)
    g = nx.Graph()
    for pos, sub in enumerate(subsets):
        elems = sorted(sub)
        if len(elems) == 2:
            u, v = f"e{elems[0]}", f"e{elems[1]}"
        else:
            u, v = f"e{elems[0]}", f"d{pos}"
        w = weights[pos]
        if g.has_edge(u, v):
            if g[u][v]["weight"] >= w:
                continue
        g.add_edge(u, v, weight=w, pos=pos)
    matching = nx.max_weight_matching(g, maxcardinality=False)
    chosen = sorted({parents[g[u][v]["pos"]] for u, v in matching})
    return MpcSolution(tuple(chosen), mpc_profit(system, chosen))


def mpc_via_setpacking(system: WeightedSetSystem, eps: float = 0.1) -> MpcSolution:
    """Subset expansion followed by squared-weight local search."""
    subsets, weights, parents = _nonnegative_subsets(system)
    collection = SetCollection(system.universe_size, tuple(subsets), tuple(weights))
    packed = squareimp_packing(collection, eps=eps)
    chosen = sorted({parents[i] for i in packed.selected})
    return MpcSolution(tuple(chosen), mpc_profit(system, chosen))


def mpc_greedy(system: WeightedSetSystem) -> MpcSolution:
    """Insert the highest-profit set disjoint from the selection while one
    with nonnegative profit remains."""
    m = len(system.sets)
    covered: set[int] = set()
    chosen: list[int] = []
    available = set(range(m))
    while True:
        best_idx, best_profit = None, None
        for i in sorted(available):
            if system.sets[i] & covered:
                continue
            p = system.weight(system.sets[i]) - system.set_costs[i]
            if best_profit is None or p > best_profit:
                best_idx, best_profit = i, p
        if best_idx is None or best_profit < 0:
            break
        chosen.append(best_idx)
        covered |= system.sets[best_idx]
        available.discard(best_idx)
    chosen.sort()
    return MpcSolution(tuple(chosen), mpc_profit(system, chosen))


# ---------------------------------------------------------------------------
# 2-IMP adaptation


def _default_params(system: WeightedSetSystem, params: TwoImpParams | None) -> TwoImpParams:
    if params is None:
        params = TwoImpParams()
    if params.precision is None:
        w_max = max(
            (system.weight(s) for s in system.sets),
            default=Fraction(1),
        )
        if w_max <= 0:
            w_max = Fraction(1)
        m = max(1, len(system.sets))
        step = params.eps * w_max / m
        params = TwoImpParams(params.alpha, params.delta, step, params.eps)
    return params


def _quantize(value: Fraction, step: Fraction) -> int:
    return int(value // step)


class _TwoImpState:
    def __init__(self, system: WeightedSetSystem, params: TwoImpParams):
        self.system = system
        self.params = params
        self.packing: list[NamedSet] = []

    def claimed_by_others(self, skip: set[int]) -> set[int]:
        out: set[int] = set()
        for pos, named in enumerate(self.packing):
            if pos not in skip:
                out |= named.claimed
        return out

    def profit(self, named: NamedSet) -> Fraction:
        return self.system.weight(named.claimed) - self.system.set_costs[named.name]

    def qprofit(self, named: NamedSet) -> int:
        return _quantize(self.profit(named), self.params.precision)

    def potential(self) -> int:
        total = 0
        for named in self.packing:
            q = self.qprofit(named)
            total += q ** self.params.alpha if q > 0 else 0
        return total


def _decide_removals(state: _TwoImpState, overlapping: list[int],
                     chunk_b: dict[int, Fraction], chunk_c: dict[int, Fraction],
                     pb: int, pc: int) -> set[int]:
    """Removal decisions induced by assumed final quantized profits (pb, pc).

    Each overlap chunk goes wholly to one side; a kept set keeps its chunk,
    a removed set donates it to the inserted name.  Ties keep the set
    (trim the insertion instead).
    """
    alpha = state.params.alpha
    step = state.params.precision
    removals: set[int] = set()
    for pos in overlapping:
        named = state.packing[pos]
        qa = max(0, state.qprofit(named))
        gain = 0
        wb = _quantize(chunk_b.get(pos, Fraction(0)), step)
        if wb > 0:
            gain += pb ** alpha - max(pb - wb, 0) ** alpha
        wc = _quantize(chunk_c.get(pos, Fraction(0)), step)
        if wc > 0:
            gain += pc ** alpha - max(pc - wc, 0) ** alpha
        if gain > qa ** alpha:
            removals.add(pos)
    return removals


def _apply_insertion(state: _TwoImpState, name_b: int, name_c: int | None,
                     removals: set[int]) -> tuple[NamedSet, NamedSet | None]:
    kept_claims = state.claimed_by_others(removals)
    claim_b = frozenset(state.system.sets[name_b] - kept_claims)
    b = NamedSet(name_b, claim_b)
    c = None
    if name_c is not None:
        claim_c = frozenset(state.system.sets[name_c] - kept_claims - claim_b)
        c = NamedSet(name_c, claim_c)
    return b, c


def mpc_2imp(system: WeightedSetSystem, params: TwoImpParams | None = None) -> MpcSolution:
    """Pair-insertion local search over named claims.

    Starts from the greedy selection.  A candidate move inserts one or two
    names and removes the overlapped sets its profit assumptions say to
    drop; an assumption is kept only when the resulting quantized profits
    reproduce it, and the best consistent move is applied when it raises
    the quantized potential by more than delta.
    """
    params = _default_params(system, params)
    state = _TwoImpState(system, params)
    for idx in mpc_greedy(system).selected:
        state.packing.append(NamedSet(idx, system.sets[idx]))

    m = len(system.sets)
    name_bound = sorted(
        range(m),
        key=lambda i: (-(system.weight(system.sets[i]) - system.set_costs[i]), i),
    )
    candidates = [
        (b, c)
        for b, c in itertools.product(name_bound, [None] + name_bound)
        if c is None or (b != c)
    ]
    alpha = params.alpha
    moves = 0

    while True:
        current_potential = state.potential()
        names_in_packing = {ns.name for ns in state.packing}
        best_move = None  # (delta_phi, packing_after)
        for name_b, name_c in candidates:
            if name_b in names_in_packing or (name_c in names_in_packing if name_c is not None else False):
                continue
            union_bc = system.sets[name_b] | (system.sets[name_c] if name_c is not None else frozenset())
            overlapping = [
                pos for pos, ns in enumerate(state.packing) if ns.claimed & union_bc
            ]
            if len(overlapping) > 16:
                continue
            chunk_b = {
                pos: system.weight(state.packing[pos].claimed & system.sets[name_b])
                for pos in overlapping
            }
            chunk_c = {
                pos: system.weight(state.packing[pos].claimed & system.sets[name_c])
                for pos in overlapping
            } if name_c is not None else {}
            seen_assumptions = set()
            for removal_bits in range(1 << len(overlapping)):
                removals = {
                    overlapping[j]
                    for j in range(len(overlapping))
                    if removal_bits >> j & 1
                }
                b, c = _apply_insertion(state, name_b, name_c, removals)
                pb = state.qprofit(b)
                pc = state.qprofit(c) if c is not None else 0
                if pb < 0 or pc < 0:
                    continue
                if (pb, pc) in seen_assumptions:
                    continue
                seen_assumptions.add((pb, pc))
                induced = _decide_removals(state, overlapping, chunk_b, chunk_c, pb, pc)
                if induced != removals:
                    continue  # assumption inconsistent with its own decisions
                new_potential = pb ** alpha + pc ** alpha
                for pos, ns in enumerate(state.packing):
                    if pos in removals:
                        continue
                    q = state.qprofit(ns)
                    new_potential += q ** alpha if q > 0 else 0
                delta_phi = new_potential - current_potential
                if delta_phi > params.delta and (
                    best_move is None or delta_phi > best_move[0]
                ):
                    after = [
                        ns for pos, ns in enumerate(state.packing) if pos not in removals
                    ]
                    after.append(b)
                    if c is not None:
                        after.append(c)
                    best_move = (delta_phi, after)
        if best_move is None:
            break
        state.packing = best_move[1]
        moves += 1

    chosen = sorted({ns.name for ns in state.packing})
    return MpcSolution(tuple(chosen), mpc_profit(system, chosen), moves)

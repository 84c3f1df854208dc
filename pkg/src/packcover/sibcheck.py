"""Feasibility predicates for putative full-sibling groups.

A group passes the 4-allele condition when every locus shows at most four
distinct alleles across the group.  It passes the 2-allele condition when,
locus by locus, each individual's pair can be oriented so that the first
coordinates use at most two alleles and likewise the second coordinates.
Loci are independent, so the 2-allele decision enumerates candidate
father/mother allele sets per locus instead of searching orientations
globally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .core import BudgetExceededError, SibInstance

DEFAULT_ENUM_BUDGET = 2_000_000


@dataclass(frozen=True)
class OrientationWitness:
    """One feasible orientation: per-locus parental allele sets plus, for
    every individual and locus, whether its pair was swapped."""

    group: tuple[int, ...]
    father_sets: tuple[tuple[int, ...], ...]
    mother_sets: tuple[tuple[int, ...], ...]
    swapped: tuple[tuple[bool, ...], ...]  # [individual position][locus]


def _check_ids(instance: SibInstance, group) -> tuple[int, ...]:
    ids = tuple(sorted(group))
    for i in ids:
        if not (0 <= i < instance.n):
            raise ValueError(f"individual {i} out of range")
    return ids


def check_4allele(instance: SibInstance, group) -> bool:
    ids = _check_ids(instance, group)
    for j in range(instance.locus_count):
        alleles: set[int] = set()
        for i in ids:
            alleles.update(instance.individuals[i][j])
            if len(alleles) > 4:
                return False
    return True


def _candidate_parent_sets(alleles: tuple[int, ...]):
    # Lexicographic over sorted tuples: all size-1 then size-2 candidates,
    # merged into one sorted stream.
    singles = [(a,) for a in alleles]
    pairs = list(itertools.combinations(alleles, 2))
    return sorted(singles + pairs)


def _locus_orientation(pairs) -> tuple[tuple[int, ...], tuple[int, ...], tuple[bool, ...]] | None:
    """Smallest (father, mother) allele sets orienting every pair, or None."""
    alleles = tuple(sorted({a for p in pairs for a in p}))
    if len(alleles) > 4:
        return None
    for father in _candidate_parent_sets(alleles):
        fs = set(father)
        for mother in _candidate_parent_sets(alleles):
            ms = set(mother)
            swapped: list[bool] = []
            ok = True
            for a, b in pairs:
                if a in fs and b in ms:
                    swapped.append(False)
                elif b in fs and a in ms:
                    swapped.append(True)
                else:
                    ok = False
                    break
            if ok:
                return father, mother, tuple(swapped)
    return None


def witness_2allele(instance: SibInstance, group) -> OrientationWitness | None:
    ids = _check_ids(instance, group)
    fathers, mothers = [], []
    swapped_by_locus = []
    for j in range(instance.locus_count):
        pairs = [instance.individuals[i][j] for i in ids]
        oriented = _locus_orientation(pairs)
        if oriented is None:
            return None
        father, mother, swapped = oriented
        fathers.append(father)
        mothers.append(mother)
        swapped_by_locus.append(swapped)
    per_individual = tuple(
        tuple(swapped_by_locus[j][pos] for j in range(instance.locus_count))
        for pos in range(len(ids))
    )
    return OrientationWitness(ids, tuple(fathers), tuple(mothers), per_individual)


def _locus_feasible(pairs) -> bool:
    alleles = sorted({a for p in pairs for a in p})
    if len(alleles) <= 2:
        return True
    if len(alleles) > 4:
        return False
    bit = {a: 1 << i for i, a in enumerate(alleles)}
    bit_pairs = [(bit[a], bit[b]) for a, b in pairs]
    candidates = [
        m for m in range(1, 1 << len(alleles)) if m.bit_count() <= 2
    ]
    for father in candidates:
        for mother in candidates:
            for ba, bb in bit_pairs:
                if not ((ba & father and bb & mother)
                        or (bb & father and ba & mother)):
                    break
            else:
                return True
    return False


def check_2allele(instance: SibInstance, group) -> bool:
    ids = _check_ids(instance, group)
    for j in range(instance.locus_count):
        pairs = [instance.individuals[i][j] for i in ids]
        if not _locus_feasible(pairs):
            return False
    return True


def check_group(instance: SibInstance, group, k: int) -> bool:
    if k == 4:
        return check_4allele(instance, group)
    if k == 2:
        return check_2allele(instance, group)
    raise ValueError(f"k must be 2 or 4, got {k}")


def witness_is_valid(instance: SibInstance, witness: OrientationWitness) -> bool:
    """Replay a witness against the raw orientation definition."""
    for j in range(instance.locus_count):
        firsts, seconds = set(), set()
        for pos, i in enumerate(witness.group):
            a, b = instance.individuals[i][j]
            if witness.swapped[pos][j]:
                a, b = b, a
            firsts.add(a)
            seconds.add(b)
            if a not in witness.father_sets[j] or b not in witness.mother_sets[j]:
                return False
        if len(firsts) > 2 or len(seconds) > 2:
            return False
    return True


def check_2allele_bruteforce(instance: SibInstance, group) -> bool:
    """Independent oracle: exhaustive search over pair orientations.

    Loci are handled one at a time (orientations at different loci do not
    interact); within a locus every one of the 2^|group| orientation vectors
    is tried.
    """
    ids = _check_ids(instance, group)
    g = len(ids)
    for j in range(instance.locus_count):
        pairs = [instance.individuals[i][j] for i in ids]
        feasible = False
        for mask in range(1 << g):
            firsts, seconds = set(), set()
            for pos, (a, b) in enumerate(pairs):
                if mask >> pos & 1:
                    a, b = b, a
                firsts.add(a)
                seconds.add(b)
            if len(firsts) <= 2 and len(seconds) <= 2:
                feasible = True
                break
        if not feasible:
            return False
    return True


def enumerate_groups(instance: SibInstance, k: int, max_size: int,
                     budget: int = DEFAULT_ENUM_BUDGET) -> list[frozenset[int]]:
    """All feasible groups of size <= max_size, the empty group included."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    n = instance.n
    total = sum(comb(n, c) for c in range(0, min(max_size, n) + 1))
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate groups exceed the budget of {budget}"
        )
    out: list[frozenset[int]] = [frozenset()]
    # Feasibility is monotone under taking subsets, so prune supersets of
    # infeasible groups while growing by size.
    feasible_prev = [frozenset()]
    for size in range(1, min(max_size, n) + 1):
        feasible_here = []
        if size == 1:
            candidates = [frozenset((i,)) for i in range(n)]
        else:
            candidates = sorted(
                {
                    grp | {i}
                    for grp in feasible_prev
                    for i in range(n)
                    if i not in grp
                },
                key=sorted,
            )
        for grp in candidates:
            if check_group(instance, grp, k):
                feasible_here.append(grp)
        out.extend(feasible_here)
        feasible_prev = feasible_here
    return out

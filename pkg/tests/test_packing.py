"""Packing engines against brute-force triangle counts and each other."""

import itertools
import math
from fractions import Fraction

import pytest

from packcover.core import (
    BudgetExceededError,
    PackingSolution,
    gen_random_graph,
    make_graph,
    verify,
)
from packcover.packing import (
    SetCollection,
    enumerate_triangles,
    exact_packing,
    greedy_packing,
    local_search_packing,
    make_collection,
    pack_triangles,
    squareimp_packing,
)


def brute_force_triangles(g):
    es = g.edge_set
    return [
        t
        for t in itertools.combinations(range(g.node_count), 3)
        if all((min(a, b), max(a, b)) in es for a, b in itertools.combinations(t, 2))
    ]


def test_enumerate_triangles_k4(k4):
    assert len(enumerate_triangles(k4).sets) == 4


def test_enumerate_triangles_k6(k6):
    assert len(enumerate_triangles(k6).sets) == 20


def test_enumerate_triangles_petersen(petersen):
    assert brute_force_triangles(petersen) == []
    assert enumerate_triangles(petersen).sets == ()


def test_greedy_empty_collection():
    sol = greedy_packing(make_collection(3, []))
    assert sol.selected == ()
    assert sol.objective == 0


def test_greedy_k6_is_maximal(k6):
    tris = enumerate_triangles(k6)
    sol = greedy_packing(tris)
    assert sol.objective == 2
    used = set().union(*(tris.sets[i] for i in sol.selected))
    assert all(tris.sets[i] & used for i in range(len(tris.sets)))


def test_greedy_weighted_takes_disjoint_pair():
    c = make_collection(4, [{0, 1}, {2, 3}], weights=[5, 1])
    sol = greedy_packing(c)
    assert set(sol.selected) == {0, 1}
    assert sol.objective == 6


def test_local_search_k6(k6):
    sol = local_search_packing(enumerate_triangles(k6), s=2)
    assert sol.objective == 2


def test_local_search_two_disjoint_triangles():
    g = make_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert local_search_packing(enumerate_triangles(g), s=2).objective == 2


def test_local_search_ratio_suite():
    for trial in range(50):
        g = gen_random_graph(6 + trial % 7, 0.35, seed=trial)
        tris = enumerate_triangles(g)
        opt = exact_packing(tris).objective
        got = local_search_packing(tris, s=2).objective
        assert got >= math.ceil(Fraction(2 * opt, 3))


def test_squareimp_unit_weights_matches_local_search(k6):
    tris = enumerate_triangles(k6)
    weighted = SetCollection(tris.universe_size, tris.sets, (Fraction(1),) * len(tris.sets))
    assert squareimp_packing(weighted).objective == local_search_packing(tris).objective


def test_squareimp_single_set():
    c = make_collection(3, [{0, 1, 2}], weights=[7])
    sol = squareimp_packing(c)
    assert sol.selected == (0,)
    assert sol.objective == 7


def test_squareimp_ratio_suite():
    for trial in range(30):
        c_src = gen_random_graph(5 + trial % 5, 0.6, seed=trial)
        import random

        rng = random.Random(trial)
        sets = []
        n = 9 + trial % 4
        for _ in range(5 + trial % 8):
            size = rng.randint(1, 3)
            sets.append(frozenset(rng.sample(range(n), size)))
        weights = [Fraction(rng.randint(1, 9)) for _ in sets]
        c = SetCollection(n, tuple(sets), tuple(weights))
        opt = exact_packing(c).objective
        got = squareimp_packing(c, eps=0.1).objective
        assert got >= opt / Fraction(21, 10)


def test_exact_k6(k6):
    assert exact_packing(enumerate_triangles(k6)).objective == 2


def test_exact_petersen(petersen):
    assert exact_packing(enumerate_triangles(petersen)).objective == 0


def test_exact_c9_squared():
    edges = [(i, (i + 1) % 9) for i in range(9)] + [(i, (i + 2) % 9) for i in range(9)]
    g = make_graph(9, edges)
    assert exact_packing(enumerate_triangles(g)).objective == 3


def test_exact_budget_failure(k6):
    with pytest.raises(BudgetExceededError):
        exact_packing(enumerate_triangles(k6), node_budget=3)


def test_pack_triangles_fronts(k4, k6, petersen):
    assert pack_triangles(k4, "exact").objective == 1
    assert pack_triangles(k6, "exact").objective == 2
    assert pack_triangles(petersen, "exact").objective == 0
    assert pack_triangles(k6, "greedy").objective == 2
    assert pack_triangles(k6, "local:2").objective == 2
    with pytest.raises(ValueError):
        pack_triangles(k4, "nope")


def test_solver_outputs_verify(k6):
    for algo in ("greedy", "local:2", "exact"):
        sol = pack_triangles(k6, algo)
        report = verify(k6, sol)
        assert report.valid
        assert report.objective == sol.objective


def test_packings_are_disjoint_and_maximal():
    for trial in range(20):
        g = gen_random_graph(9, 0.5, seed=trial)
        tris = enumerate_triangles(g)
        for engine in (greedy_packing, local_search_packing):
            sol = engine(tris)
            used = set()
            for i in sol.selected:
                assert not (tris.sets[i] & used)
                used |= tris.sets[i]
            for i in range(len(tris.sets)):
                assert tris.sets[i] & used, "packing must be maximal"


def test_verify_set_collection_solution():
    c = make_collection(4, [{0, 1}, {2, 3}, {1, 2}], weights=[2, 3, 9])
    sol = greedy_packing(c)
    report = verify(c, sol)
    assert report.valid and report.objective == sol.objective
    bad = PackingSolution((0, 2), Fraction(11))
    assert not verify(c, bad).valid

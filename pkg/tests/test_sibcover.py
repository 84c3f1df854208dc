"""Cover solvers against the exact oracle and the worked example."""

import math
from fractions import Fraction

import pytest

from packcover.core import (
    BudgetExceededError,
    gen_random_sib,
    make_graph,
    make_sib_instance,
    verify,
)
from packcover.reductions import labelcover_to_allele, tp_to_labelcover
from packcover.sibcheck import enumerate_groups
from packcover.sibcover import (
    solve_a3,
    solve_a4,
    solve_exact_cover,
    solve_setcover_greedy,
    solve_threshold_greedy,
)


def lifted(graph, k):
    lc, _ = tp_to_labelcover(graph)
    return labelcover_to_allele(lc, k)


def two_disjoint_triangles_instance(k=2):
    g = make_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    return lifted(g, k)


def two_disjoint_k4s_instance(k=2):
    import itertools

    edges = list(itertools.combinations(range(4), 2)) + [
        (a + 4, b + 4) for a, b in itertools.combinations(range(4), 2)
    ]
    return lifted(make_graph(8, edges), k)


def test_threshold_all_feasible_pairs():
    inst = make_sib_instance([[(1, 2)] for _ in range(6)])
    sol = solve_threshold_greedy(inst, 2, c=2)
    assert sol.objective == 3
    assert verify(inst, sol, k=2).valid


def test_threshold_worked_example(pqrs):
    sol = solve_threshold_greedy(pqrs, 2, c=3)
    assert sol.objective == 2
    assert verify(pqrs, sol, k=2).valid
    assert solve_exact_cover(pqrs, 2, a=4).objective == 2


def test_threshold_ratio_suite():
    for trial in range(30):
        inst = gen_random_sib(5 + trial % 6, 1 + trial % 3, 6, seed=trial)
        for k in (2, 4):
            got = solve_threshold_greedy(inst, k, c=3).objective
            opt = solve_exact_cover(inst, k, a=inst.n).objective
            a_max = max(len(g) for g in enumerate_groups(inst, k, inst.n))
            bound = Fraction(a_max, 3) - 1 + Fraction(11, 6)
            assert got <= bound * opt


def test_a3_two_disjoint_triples():
    inst = two_disjoint_triangles_instance()
    sol = solve_a3(inst, 2)
    assert sol.objective == 2
    assert verify(inst, sol, k=2).valid
    assert solve_exact_cover(inst, 2, a=3).objective == 2


def test_a3_no_feasible_triple():
    inst = lifted(make_graph(5, [(i, (i + 1) % 5) for i in range(5)]), 2)
    sol = solve_a3(inst, 2)
    assert sol.objective == math.ceil(inst.n / 2)


def test_a3_ratio_suite():
    for trial in range(30):
        inst = gen_random_sib(4 + trial % 6, 1 + trial % 3, 5, seed=100 + trial)
        for k in (2, 4):
            got = solve_a3(inst, k).objective
            opt = solve_exact_cover(inst, k, a=3).objective
            assert got <= (Fraction(7, 6) + Fraction(1, 100)) * opt


def test_a4_two_disjoint_quads():
    inst = two_disjoint_k4s_instance()
    sol = solve_a4(inst, 2)
    assert sol.objective == 2
    assert verify(inst, sol, k=2).valid
    assert solve_exact_cover(inst, 2, a=4).objective == 2


def test_a4_pairs_only():
    inst = lifted(make_graph(5, [(i, (i + 1) % 5) for i in range(5)]), 4)
    assert solve_a4(inst, 4).objective == math.ceil(inst.n / 2)


def test_a4_ratio_suite():
    for trial in range(30):
        inst = gen_random_sib(4 + trial % 5, 1 + trial % 3, 5, seed=200 + trial)
        for k in (2, 4):
            got = solve_a4(inst, k).objective
            opt = solve_exact_cover(inst, k, a=4).objective
            assert got <= (Fraction(3, 2) + Fraction(1, 100)) * opt


def test_setcover_greedy_single_group():
    inst = make_sib_instance([[(1, 2)] for _ in range(5)])
    assert solve_setcover_greedy(inst, 2, a=5).objective == 1


def test_setcover_greedy_worked_example(pqrs):
    sol = solve_setcover_greedy(pqrs, 4, a=3)
    assert sol.objective == 2
    assert frozenset({0, 1, 2}) in sol.groups
    assert verify(pqrs, sol, k=4).valid


def test_setcover_greedy_ratio_suite():
    bound = 1 + math.log(3)
    for trial in range(20):
        inst = gen_random_sib(5 + trial % 5, 1 + trial % 3, 5, seed=300 + trial)
        for k in (2, 4):
            got = solve_setcover_greedy(inst, k, a=3).objective
            opt = solve_exact_cover(inst, k, a=3).objective
            assert got <= bound * opt


def test_exact_cover_worked_example(pqrs):
    assert solve_exact_cover(pqrs, 2, a=4).objective == 2
    assert solve_exact_cover(pqrs, 4, a=4).objective == 2
    single = make_sib_instance([[(1, 2)]])
    assert solve_exact_cover(single, 2, a=1).objective == 1


def test_exact_cover_budget():
    inst = gen_random_sib(8, 1, 4, seed=5)
    with pytest.raises(BudgetExceededError):
        solve_exact_cover(inst, 2, a=8, node_budget=2)


def test_opt_monotone_in_condition():
    # 2-allele groups are a subset of 4-allele groups, so optima can only grow.
    for trial in range(20):
        inst = gen_random_sib(4 + trial % 5, 1 + trial % 3, 5, seed=400 + trial)
        opt2 = solve_exact_cover(inst, 2, a=inst.n).objective
        opt4 = solve_exact_cover(inst, 4, a=inst.n).objective
        assert opt2 >= opt4


def test_all_solver_outputs_verify():
    inst = gen_random_sib(7, 2, 5, seed=77)
    for k in (2, 4):
        for sol in (
            solve_threshold_greedy(inst, k, c=3),
            solve_a3(inst, k),
            solve_a4(inst, k),
            solve_setcover_greedy(inst, k, a=3),
            solve_exact_cover(inst, k, a=4),
        ):
            report = verify(inst, sol, k=k)
            assert report.valid
            assert report.objective == sol.objective

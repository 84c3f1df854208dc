"""Profit coverage solvers, the pair-insertion search, and the graph map."""

import itertools
from fractions import Fraction

import pytest

from packcover.core import (
    gen_random_cubic,
    gen_random_system,
    make_graph,
    make_system,
    verify,
)
from packcover.mpc import (
    TwoImpParams,
    mpc_2imp,
    mpc_exact,
    mpc_exact_small_a,
    mpc_greedy,
    mpc_profit,
    mpc_via_setpacking,
)
from packcover.reductions import is_to_mpc


def k4_instance():
    return is_to_mpc(make_graph(4, itertools.combinations(range(4), 2)))


def max_independent_set(g):
    es = g.edge_set
    for r in range(g.node_count, 0, -1):
        for combo in itertools.combinations(range(g.node_count), r):
            if not any(
                (min(a, b), max(a, b)) in es
                for a, b in itertools.combinations(combo, 2)
            ):
                return r
    return 0


def test_profit_empty():
    assert mpc_profit(k4_instance(), []) == 0


def test_profit_single_vertex_set():
    assert mpc_profit(k4_instance(), [0]) == 1  # 3 unit edges minus cost 2


def test_profit_counts_union_once():
    system = make_system(3, [{0, 1, 2}, {0, 1, 2}], None, [1, 1])
    assert mpc_profit(system, [0, 1]) == 1


def test_exact_small_a_matching_route():
    system = make_system(3, [{0, 1}, {1, 2}], None, [1, 1])
    assert mpc_exact_small_a(system).objective == 1
    disjoint = make_system(4, [{0, 1}, {2, 3}], None, [0, 0])
    assert mpc_exact_small_a(disjoint).objective == 4
    hopeless = make_system(2, [{0, 1}], None, [9])
    sol = mpc_exact_small_a(hopeless)
    assert sol.selected == () and sol.objective == 0


def test_exact_small_a_rejects_large_sets():
    with pytest.raises(ValueError):
        mpc_exact_small_a(k4_instance())


def test_exact_small_a_matches_oracle():
    for trial in range(20):
        system = gen_random_system(8 + trial % 5, 20, 2, seed=trial)
        assert mpc_exact_small_a(system).objective == mpc_exact(system).objective


def test_setpacking_k4():
    assert mpc_via_setpacking(k4_instance()).objective == 1


def test_setpacking_petersen(petersen):
    system = is_to_mpc(petersen)
    assert mpc_via_setpacking(system).objective == 4
    assert mpc_exact(system).objective == 4


def test_setpacking_zero_costs_covers_everything():
    system = make_system(5, [{0, 1}, {2, 3}, {4}], [2, 1, 1, 1, 3], [0, 0, 0])
    sol = mpc_via_setpacking(system)
    assert sol.objective == 8


def test_greedy_single_set():
    system = make_system(2, [{0, 1}], None, [1])
    assert mpc_greedy(system).selected == (0,)


def test_greedy_k4():
    assert mpc_greedy(k4_instance()).objective == 1


def test_greedy_blocking_star_within_factor_a():
    system = make_system(
        6, [{0, 1, 2}, {0, 3}, {1, 4}, {2, 5}], None, [0, 0, 0, 0]
    )
    greedy = mpc_greedy(system)
    opt = mpc_exact(system)
    assert greedy.objective == 3
    assert opt.objective == 6
    assert opt.objective <= system.max_set_size * greedy.objective


def test_2imp_improves_on_bad_greedy():
    system = make_system(
        4,
        [{0, 1}, {0, 2}, {1, 3}],
        [Fraction(3, 2), Fraction(3, 2), 1, 1],
        [0, 0, 0],
    )
    greedy = mpc_greedy(system)
    improved = mpc_2imp(system)
    assert greedy.objective == 3
    assert improved.objective == 5
    assert improved.objective > greedy.objective
    assert improved.moves >= 1


def test_2imp_disjoint_sets_reach_optimum():
    system = make_system(6, [{0, 1}, {2, 3}, {4, 5}], None, [1, 0, 99])
    sol = mpc_2imp(system)
    assert sol.objective == mpc_exact(system).objective == 3


def test_2imp_ratio_suite():
    for trial in range(30):
        system = gen_random_system(
            6 + trial % 7, 4 + trial % 9, 5, seed=trial, min_size=2
        )
        opt = mpc_exact(system).objective
        got = mpc_2imp(system).objective
        if opt > 0:
            bound = Fraction(6454, 10000) * system.max_set_size + Fraction(1, 10)
            assert got >= opt / bound


def test_2imp_never_below_greedy():
    for trial in range(15):
        system = gen_random_system(8, 7, 4, seed=900 + trial)
        assert mpc_2imp(system).objective >= mpc_greedy(system).objective


def test_2imp_params_validation():
    with pytest.raises(ValueError):
        TwoImpParams(alpha=1)
    with pytest.raises(ValueError):
        TwoImpParams(delta=0)


def test_never_split_inequality():
    # Splitting an overlap between two claims never beats giving it away whole:
    # f(t) = (y1 + t*y2)^a + (x - t*y2)^a is convex in t, so an endpoint wins.
    alpha = 2
    for y1 in (Fraction(0), Fraction(1), Fraction(3)):
        for y2 in (Fraction(1), Fraction(2)):
            for x in (y2, y2 + 1, y2 + 3):
                endpoints = max(
                    (y1 + y2) ** alpha + (x - y2) ** alpha,
                    y1 ** alpha + x ** alpha,
                )
                for i in range(1, 10):
                    t = Fraction(i, 10)
                    split = (y1 + t * y2) ** alpha + (x - t * y2) ** alpha
                    assert split <= endpoints


def test_never_split_crossing_is_monotone():
    # Once giving the chunk away wins, growing the receiving claim keeps it so.
    alpha = 2
    y1, y2 = Fraction(2), Fraction(3)
    crossed = False
    for x in range(3, 40):
        keep = (y1 + y2) ** alpha + (Fraction(x) - y2) ** alpha
        give = y1 ** alpha + Fraction(x) ** alpha
        if give >= keep:
            crossed = True
        if crossed:
            assert give >= keep


def test_potential_strictly_increases_per_move():
    for trial in range(10):
        system = gen_random_system(8, 8, 4, seed=50 + trial)
        sol = mpc_2imp(system)
        # Each accepted move raises the quantized potential by more than
        # delta, so the move count is finite and small at this scale.
        assert sol.moves <= 8 * len(system.sets)


def test_exact_examples():
    assert mpc_exact(k4_instance()).objective == 1
    empty = make_system(3, [], None, [])
    assert mpc_exact(empty).objective == 0
    free = make_system(3, [{0, 1, 2}], [1, 2, 3], [0])
    assert mpc_exact(free).objective == 6


def test_is_to_mpc_shape(k4):
    system = is_to_mpc(k4)
    assert all(len(s) == 3 for s in system.sets)
    assert all(q == 2 for q in system.set_costs)
    with pytest.raises(ValueError):
        is_to_mpc(make_graph(3, [(0, 1)]))


def test_is_to_mpc_c6_and_random_cubics():
    c6 = make_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    system = is_to_mpc(c6)
    assert all(len(s) == 2 for s in system.sets)
    assert mpc_exact(system).objective == max_independent_set(c6) == 3
    for trial in range(8):
        g = gen_random_cubic((4, 6, 8, 10)[trial % 4], seed=trial)
        assert mpc_exact(is_to_mpc(g)).objective == max_independent_set(g)


def test_is_to_mpc_metric_balls(petersen):
    system, pres = is_to_mpc(petersen, metric=True, radius=Fraction(2))
    for v in range(petersen.node_count):
        assert pres.ball(v) == system.sets[v]


def test_solver_outputs_verify():
    system = gen_random_system(9, 8, 4, seed=4)
    for sol in (
        mpc_greedy(system),
        mpc_via_setpacking(system),
        mpc_2imp(system),
        mpc_exact(system),
    ):
        report = verify(system, sol)
        assert report.valid
        assert report.objective == sol.objective

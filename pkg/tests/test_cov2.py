"""2-coverage routes, oracle, and the degree-system instance maps."""

import itertools
from fractions import Fraction

import pytest

from packcover.core import (
    BudgetExceededError,
    gen_random_graph,
    gen_random_system,
    make_graph,
    make_system,
    verify,
)
from packcover.cov2 import (
    cov2_combined,
    cov2_exact,
    cov2_pairwise,
    cov2_to_weighted_ds,
    cov2_two_phase,
    densest_k_edges,
    ds_to_cov2,
    maxcov_exact,
    maxcov_greedy,
)


def four_cycle_system():
    return make_system(4, [{0, 1}, {1, 2}, {2, 3}, {3, 0}])


def test_maxcov_greedy_disjoint_sets():
    system = make_system(6, [{0, 1, 2}, {3, 4}, {5}])
    assert maxcov_greedy(system, 2) == [0, 1]


def test_maxcov_greedy_full_budget():
    system = make_system(4, [{0}, {1}, {2, 3}])
    chosen = maxcov_greedy(system, 3)
    assert sorted(chosen) == [0, 1, 2]


def test_maxcov_greedy_factor_on_adversarial_instance():
    system = make_system(6, [{0, 1, 2, 3}, {0, 1, 4}, {2, 3, 5}])
    got = len(set().union(*(system.sets[i] for i in maxcov_greedy(system, 2))))
    opt = maxcov_exact(list(system.sets), 2)
    assert opt == 6 and got == 5
    assert got >= (1 - (1 - Fraction(1, 2)) ** 2) * opt


def test_pairwise_duplicate_sets():
    system = make_system(2, [{0, 1}, {0, 1}])
    sol = cov2_pairwise(system, 2)
    assert sol.objective == 2


def test_pairwise_four_cycle():
    assert cov2_pairwise(four_cycle_system(), 2).objective == 1
    assert cov2_exact(four_cycle_system(), 2).objective == 1


def test_pairwise_disjoint_sets():
    system = make_system(4, [{0, 1}, {2, 3}])
    assert cov2_pairwise(system, 2).objective == 0
    assert cov2_exact(system, 2).objective == 0


def test_two_phase_duplicated_family():
    system = make_system(3, [{0, 1, 2}, {0, 1, 2}, {0}])
    for k in (2, 3):
        assert cov2_two_phase(system, k).objective == 3


def test_two_phase_four_cycle():
    assert cov2_two_phase(four_cycle_system(), 2).objective == 1


def test_combined_dominates_and_respects_oracle():
    for trial in range(25):
        system = gen_random_system(7 + trial % 5, 5 + trial % 5, 4, seed=trial)
        for k in (2, 3, 4):
            a = cov2_pairwise(system, k)
            b = cov2_two_phase(system, k)
            c = cov2_combined(system, k)
            exact = cov2_exact(system, k)
            assert c.objective >= max(a.objective, b.objective)
            assert c.objective <= exact.objective
            for sol in (a, b, c, exact):
                report = verify(system, sol, k=k)
                assert report.valid
                assert report.objective == sol.objective


def test_exact_k_equals_m():
    system = make_system(5, [{0, 1}, {1, 2}, {0, 2}, {3}])
    sol = cov2_exact(system, 4)
    assert sol.twice_covered == frozenset({0, 1, 2})


def test_exact_empty_system():
    system = make_system(3, [])
    assert cov2_exact(system, 2).objective == 0


def test_exact_budget():
    system = gen_random_system(6, 30, 3, seed=0)
    with pytest.raises(BudgetExceededError):
        cov2_exact(system, 10, budget=5)


def test_ds_to_cov2_k3(k4):
    system = ds_to_cov2(k4, 3)
    assert system.max_frequency == 2
    assert cov2_exact(system, 3).objective == densest_k_edges(k4, 3) == 3


def test_ds_to_cov2_triangle():
    k3 = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert cov2_exact(ds_to_cov2(k3, 2), 2).objective == 1


def test_ds_to_cov2_star():
    star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert cov2_exact(ds_to_cov2(star, 2), 2).objective == densest_k_edges(star, 2) == 1


def test_ds_oracle_equivalence_suite():
    for trial in range(20):
        g = gen_random_graph(5 + trial % 4, 0.5, seed=trial)
        if not g.edges:
            continue
        for k in (2, 3, 4):
            assert cov2_exact(ds_to_cov2(g, k), k).objective == densest_k_edges(g, k)


def test_weighted_ds_disjoint_sets():
    system = make_system(4, [{0, 1}, {2, 3}])
    assert cov2_to_weighted_ds(system).edges == ()


def test_weighted_ds_duplicate_sets():
    system = make_system(3, [{0, 1, 2}, {0, 1, 2}])
    g = cov2_to_weighted_ds(system)
    assert g.edges == ((0, 1),)
    assert g.edge_weights == (Fraction(3),)


def test_weighted_ds_four_cycle():
    g = cov2_to_weighted_ds(four_cycle_system())
    assert g.edges == ((0, 1), (0, 3), (1, 2), (2, 3))
    assert all(w == 1 for w in g.edge_weights)


def test_greedy_factor_suite():
    for trial in range(20):
        system = gen_random_system(8 + trial % 5, 6 + trial % 4, 4, seed=100 + trial)
        for k in (2, 3):
            got = len(
                set().union(*(system.sets[i] for i in maxcov_greedy(system, k)))
            )
            opt = maxcov_exact(list(system.sets), k)
            assert got >= (1 - (1 - Fraction(1, k)) ** k) * opt

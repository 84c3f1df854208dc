"""Data model, parsers, serializers, verification, and generators."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packcover.core import (
    CoverSolution,
    Graph,
    Lin2Equation,
    Lin2System,
    PackingSolution,
    ParseError,
    gen_random_cubic,
    gen_random_graph,
    gen_random_sib,
    gen_random_system,
    make_graph,
    make_sib_instance,
    parse_graph,
    parse_lin2,
    parse_set_system,
    parse_sib_instance,
    serialize_graph,
    serialize_lin2,
    serialize_set_system,
    serialize_sib_instance,
    verify,
)


def test_parse_triangle_graph():
    g = parse_graph("p 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g.node_count == 3
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_parse_rejects_self_loop():
    with pytest.raises(ParseError, match="self-loop"):
        parse_graph("p 2 1\ne 1 1\n")


def test_parse_k4_file():
    lines = ["p 4 6"] + [f"e {u + 1} {v + 1}" for u, v in itertools.combinations(range(4), 2)]
    g = parse_graph("\n".join(lines))
    assert g.node_count == 4
    assert len(g.edges) == 6


def test_duplicate_edges_collapse():
    g = parse_graph("p 3 4\ne 1 2\ne 2 1\ne 2 3\ne 1 3\n")
    assert len(g.edges) == 3


def test_comments_ignored():
    g = parse_graph("c a comment\np 2 1\nc another\ne 1 2\n")
    assert g.edges == ((0, 1),)


def test_graph_invariants():
    with pytest.raises(ValueError):
        Graph(2, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 5),))
    with pytest.raises(ValueError):
        Graph(3, ((0, 1), (0, 1)))


def test_parse_set_system_basic():
    s = parse_set_system("u 3\ns 0 1 2\ns 0 2 3\n")
    assert s.max_set_size == 2
    assert s.max_frequency == 2
    assert s.element_weights == (Fraction(1),) * 3


def test_parse_set_system_out_of_range():
    with pytest.raises(ParseError, match="out of range"):
        parse_set_system("u 3\ns 0 9\n")


def test_parse_set_system_negative_weight():
    with pytest.raises(ParseError, match="negative"):
        parse_set_system("u 2\nw 1 -3\ns 0 1\n")


def test_k4_incidence_system_roundtrip(k4):
    from packcover.reductions import is_to_mpc

    system = is_to_mpc(k4)
    assert system.max_set_size == 3
    assert system.max_frequency == 2
    again = parse_set_system(serialize_set_system(system))
    assert again == system


def test_parse_sib_instance_worked_example(pqrs):
    text = serialize_sib_instance(pqrs)
    inst = parse_sib_instance(text)
    assert inst.n == 4
    assert inst.locus_count == 2
    assert inst == pqrs


def test_parse_sib_empty_body():
    inst = parse_sib_instance("id\tl1a\tl1b\tl2a\tl2b\n")
    assert inst.n == 0
    assert inst.locus_count == 2


def test_parse_sib_ragged_row():
    with pytest.raises(ParseError, match="columns"):
        parse_sib_instance("id\tl1a\tl1b\n1\t2\t3\t4\n")


def test_parse_sib_non_integer():
    with pytest.raises(ParseError, match="non-integer"):
        parse_sib_instance("id\tl1a\tl1b\n1\tx\t3\n")


def test_lin2_roundtrip():
    system = Lin2System(
        3,
        (
            Lin2Equation(((0, False), (1, True), (2, False)), 1),
            Lin2Equation(((2, False), (2, True), (0, False)), 0),
        ),
    )
    assert parse_lin2(serialize_lin2(system)) == system


def test_verify_k6_disjoint_triangles(k6):
    report = verify(k6, PackingSolution(((0, 1, 2), (3, 4, 5)), 2))
    assert report.valid
    assert report.objective == 2


def test_verify_k6_overlapping_triangles(k6):
    report = verify(k6, PackingSolution(((0, 1, 2), (2, 3, 4)), 2))
    assert not report.valid
    assert any("reuses" in v for v in report.violations)


def test_verify_cover_2allele_violation(pqrs):
    cover = CoverSolution((frozenset({0, 1, 2}), frozenset({3})), 2)
    report = verify(pqrs, cover, k=2)
    assert not report.valid
    report4 = verify(pqrs, cover, k=4)
    assert report4.valid


def test_gen_random_cubic_k4_unique():
    g = gen_random_cubic(4, seed=11)
    assert len(g.edges) == 6  # the only cubic graph on four nodes


def test_gen_random_cubic_rejects_odd():
    with pytest.raises(ValueError):
        gen_random_cubic(5, seed=1)


def test_gen_random_graph_edgeless():
    g = gen_random_graph(5, 0.0, seed=3)
    assert g.edges == ()


def test_generators_deterministic():
    assert gen_random_sib(3, 2, 4, seed=9) == gen_random_sib(3, 2, 4, seed=9)
    assert gen_random_graph(7, 0.5, seed=2) == gen_random_graph(7, 0.5, seed=2)
    assert gen_random_system(5, 4, 3, seed=8) == gen_random_system(5, 4, 3, seed=8)
    assert gen_random_cubic(8, seed=4) == gen_random_cubic(8, seed=4)


@given(st.integers(2, 9), st.floats(0, 1), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_graph_roundtrip(n, p, seed):
    g = gen_random_graph(n, p, seed)
    assert parse_graph(serialize_graph(g)) == g


@given(st.integers(1, 8), st.integers(1, 4), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_sib_roundtrip(n, loci, seed):
    inst = gen_random_sib(n, loci, 5, seed)
    assert parse_sib_instance(serialize_sib_instance(inst)) == inst


@given(st.integers(2, 10), st.integers(0, 8), st.integers(1, 4), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_system_roundtrip(n, m, a, seed):
    s = gen_random_system(n, m, min(a, n), seed)
    assert parse_set_system(serialize_set_system(s)) == s


def test_weighted_graph_roundtrip():
    g = make_graph(3, [(0, 1), (1, 2)], {(0, 1): Fraction(3, 2), (1, 2): 2})
    assert parse_graph(serialize_graph(g)) == g


def test_make_sib_instance_normalizes_pair_order():
    inst = make_sib_instance([[(2, 1)]])
    assert inst.individuals[0][0] == (1, 2)

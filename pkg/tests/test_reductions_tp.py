"""Equation gadgets, amplifiers, the assembled reduction, and transport."""

import random

import pytest

from packcover.core import (
    Lin2Equation,
    Lin2System,
    PackingSolution,
    verify,
)
from packcover.packing import enumerate_triangles
from packcover.reductions import (
    build_amplifier,
    amplifier_to_tp_fragment,
    check_minority_property,
    lin2_solution_to_packing,
    lin2_to_tp,
    normalize_packing,
    packing_to_assignment,
    synth_equation_gadget,
)
from packcover.reductions.gadgets import GadgetValidationError, coverage_table
from packcover.reductions.lin2tp import expected_packing_size


def two_equation_system():
    return Lin2System(
        4,
        (
            Lin2Equation(((0, False), (1, False), (2, False)), 0),
            Lin2Equation(((0, False), (1, False), (3, False)), 1),
        ),
    )


# -- equation gadgets -------------------------------------------------------


def test_gadget_shapes():
    zero = synth_equation_gadget("=0")
    one = synth_equation_gadget("=1")
    assert zero.node_count == 9 and len(zero.self_sufficient) == 2
    assert one.node_count == 7 and len(one.self_sufficient) == 1
    with pytest.raises(ValueError):
        synth_equation_gadget("=2")


@pytest.mark.parametrize("kind", ["=0", "=1"])
def test_gadget_tables_have_eight_rows(kind):
    table = coverage_table(kind)
    assert len(table) == 8
    satisfied_parity = 0 if kind == "=0" else 1
    for truth, (full, short) in table.items():
        assert full == (len(truth) % 2 == satisfied_parity)
        assert short == (0 if full else 1)


def test_gadget_validation_rejects_corruption():
    gadget = synth_equation_gadget("=1")
    from packcover.reductions.gadgets import EquationGadget, _validate

    broken = EquationGadget(
        gadget.kind, gadget.literals, gadget.self_sufficient, gadget.others,
        gadget.edges[:-2], gadget.covers,
    )
    with pytest.raises(GadgetValidationError):
        _validate(broken)


def test_one_gadget_all_literals_true_row():
    gadget = synth_equation_gadget("=1")
    cover = gadget.covers[frozenset({0, 1, 2})]
    assert len(cover.triangles) == 1
    assert cover.separate_ss == gadget.self_sufficient
    assert cover.uncovered == ()


def test_zero_gadget_no_literal_true_row():
    gadget = synth_equation_gadget("=0")
    cover = gadget.covers[frozenset()]
    assert len(cover.triangles) == 3
    assert cover.separate_ss == () and cover.uncovered == ()


def test_zero_gadget_one_literal_true_leaves_one_node():
    gadget = synth_equation_gadget("=0")
    for lit in range(3):
        cover = gadget.covers[frozenset({lit})]
        assert len(cover.uncovered) == 1


# -- amplifiers -------------------------------------------------------------


def test_amplifier_k1_shape():
    amp = build_amplifier(1, seed=3)
    assert amp.node_count == 14
    assert amp.contacts == (0, 7)
    degrees = amp.degrees()
    assert all(degrees[c] == 2 for c in amp.contacts)
    assert all(degrees[u] == 3 for u in range(14) if u % 7)
    assert all((u + v) % 2 == 1 for u, v in amp.edges)


def test_amplifier_deterministic():
    assert build_amplifier(3, seed=9) == build_amplifier(3, seed=9)


def test_fragment_color_choice_covers_other_contacts():
    amp = build_amplifier(2, seed=1)
    frag = amplifier_to_tp_fragment(amp)
    for triangles, skipped_color in (
        (frag.white_triangles(), 1),
        (frag.black_triangles(), 0),
    ):
        covered = set()
        for t in triangles:
            assert not (covered & set(t))
            covered.update(t)
        missed = set(range(frag.node_count)) - covered
        assert missed == {
            frag.private_of[c] for c in amp.contacts if c % 2 != skipped_color
        }


def test_minority_property_exhaustive_k1():
    violations = 0
    trials = 0
    for seed in range(100):
        v, t = check_minority_property(build_amplifier(1, seed=seed))
        violations += v
        trials += t
    assert trials > 0
    assert violations == 0


def test_minority_property_sampled_k4():
    # Larger amplifiers are sampled adversarially; failures are reported,
    # not asserted away — the guarantee is only asymptotic.
    total_violations = 0
    for seed in range(10):
        v, t = check_minority_property(
            build_amplifier(4, seed=seed), samples=50, seed=seed
        )
        assert t == 50
        total_violations += v
    print(f"sampled minority-property violations at k=4: {total_violations}/500")


# -- assembly and transport -------------------------------------------------


def test_assembly_node_count_and_determinism():
    system = two_equation_system()
    g1, cert1 = lin2_to_tp(system, m=1, seed=5)
    g2, cert2 = lin2_to_tp(system, m=1, seed=5)
    assert g1 == g2
    assert cert1.m_s == 2
    assert g1.node_count == 228 * 1 * cert1.m_s
    g3, _ = lin2_to_tp(system, m=1, seed=6)
    assert g3.node_count == g1.node_count


def test_assembly_warns_below_amplifier_floor():
    _, cert = lin2_to_tp(two_equation_system(), m=1, seed=5)
    assert cert.warnings  # k = 3 or 6 here, below the floor of 4 for some


@pytest.mark.parametrize(
    "assignment,violated",
    [
        ({0: 0, 1: 0, 2: 0, 3: 1}, 0),
        ({0: 0, 1: 0, 2: 0, 3: 0}, 1),
        ({0: 0, 1: 0, 2: 1, 3: 0}, 2),
    ],
)
def test_solution_transport_counts(assignment, violated):
    system = two_equation_system()
    graph, cert = lin2_to_tp(system, m=1, seed=5)
    assert system.violated_count(assignment) == violated
    sol = lin2_solution_to_packing(assignment, cert)
    assert sol.objective == expected_packing_size(cert, violated)
    report = verify(graph, sol)
    assert report.valid
    covered = set()
    for t in sol.selected:
        covered.update(t)
    assert graph.node_count - len(covered) == 3 * cert.m_s * violated


def test_satisfying_assignment_covers_every_node():
    system = two_equation_system()
    graph, cert = lin2_to_tp(system, m=1, seed=5)
    sol = lin2_solution_to_packing({0: 0, 1: 0, 2: 0, 3: 1}, cert)
    covered = set()
    for t in sol.selected:
        covered.update(t)
    assert covered == set(range(graph.node_count))


def test_assignment_recovery_identity():
    system = two_equation_system()
    _, cert = lin2_to_tp(system, m=1, seed=5)
    for bits in range(16):
        assignment = {v: bits >> v & 1 for v in range(4)}
        sol = lin2_solution_to_packing(assignment, cert)
        assert packing_to_assignment(sol, cert) == assignment


def test_normalization_idempotent_and_restores_perturbation():
    system = two_equation_system()
    graph, cert = lin2_to_tp(system, m=1, seed=5)
    assignment = {0: 1, 1: 0, 2: 1, 3: 0}
    sol = lin2_solution_to_packing(assignment, cert)
    assert normalize_packing(sol, cert).selected == sol.selected

    # Recolor one variable's amplifier: majority still recovers the rest.
    rec = cert.variable_record(0)
    perturbed = [t for t in sol.selected if t not in set(rec.white_triangles)]
    perturbed.extend(rec.black_triangles)
    p = PackingSolution(tuple(sorted(set(perturbed))), len(set(perturbed)))
    restored = normalize_packing(p, cert)
    assert restored.objective >= p.objective


def test_normalization_nondecreasing_on_random_maximal_packings():
    system = two_equation_system()
    graph, cert = lin2_to_tp(system, m=1, seed=5)
    triangles = enumerate_triangles(graph)
    masks = triangles.masks()
    wins = 0
    for trial in range(100):
        rng = random.Random(trial)
        order = list(range(len(triangles.sets)))
        rng.shuffle(order)
        used = 0
        chosen = []
        for i in order:
            if masks[i] & used == 0:
                chosen.append(i)
                used |= masks[i]
        p = PackingSolution(
            tuple(tuple(sorted(triangles.sets[i])) for i in chosen), len(chosen)
        )
        normalized = normalize_packing(p, cert)
        assert verify(graph, normalized).valid
        if normalized.objective >= p.objective:
            wins += 1
    print(f"normalization non-decreasing in {wins}/100 trials")
    assert wins >= 95


def test_replication_scales_counts():
    system = Lin2System(
        3, (Lin2Equation(((0, False), (1, False), (2, False)), 1),)
    )
    graph, cert = lin2_to_tp(system, m=2, seed=2)
    assert cert.m_s == 4
    assert graph.node_count == 228 * len(system.equations) * cert.replication
    assignment = {0: 1, 1: 0, 2: 0}
    sol = lin2_solution_to_packing(assignment, cert)
    assert verify(graph, sol).valid

"""Acceptance criteria as runnable checks.

Every criterion returns (passed, details); the CLI ``suite`` command and
the acceptance test module both drive this registry, printing one line per
criterion.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cov2, mpc, packing, sibcheck, sibcover
from .core import (
    Lin2Equation,
    Lin2System,
    gen_random_cubic,
    gen_random_graph,
    gen_random_sib,
    gen_random_system,
    make_graph,
    make_sib_instance,
    verify,
)
from .reductions import (
    cut_solution_to_cover,
    cut_to_allele,
    enumerate_feasible_groups_in_gadget,
    gadget_potential_sums,
    is_to_mpc,
    labelcover_to_allele,
    lin2_solution_to_packing,
    lin2_to_tp,
    normalize_packing,
    packing_to_assignment,
    synth_equation_gadget,
    tp_to_labelcover,
)
from .reductions.cutgrid import max_feasible_group_potential
from .reductions.gadgets import coverage_table
from .reductions.labelcover import check_star_properties
from .reductions.lin2tp import expected_packing_size


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    name: str
    passed: bool
    details: str
    elapsed_ms: int


def _section_instance() -> "make_sib_instance":
    # The four worked individuals p, q, r, s on two loci.
    return make_sib_instance(
        [
            [(1, 2), (5, 5)],
            [(3, 4), (5, 5)],
            [(1, 1), (5, 5)],
            [(5, 5), (5, 5)],
        ]
    )


def petersen() -> "make_graph":
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_graph(10, outer + spokes + inner)


def _connected(g) -> bool:
    if g.node_count == 0:
        return True
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.node_count


def _has_k4(g) -> bool:
    es = g.edge_set
    for quad in itertools.combinations(range(g.node_count), 4):
        if all(
            (min(a, b), max(a, b)) in es
            for a, b in itertools.combinations(quad, 2)
        ):
            return True
    return False


def _max_independent_set(g) -> int:
    es = g.edge_set
    for r in range(g.node_count, 0, -1):
        for combo in itertools.combinations(range(g.node_count), r):
            if not any(
                (min(a, b), max(a, b)) in es
                for a, b in itertools.combinations(combo, 2)
            ):
                return r
    return 0


# --------------------------------------------------------------------------
# criteria


def criterion_1(seed: int) -> tuple[bool, str]:
    """2-allele check agrees with exhaustive orientation search; 2 implies 4."""
    start = time.monotonic()
    groups = 0
    for trial in range(200):
        n = 4 + (trial % 5)
        ell = 1 + (trial % 4)
        inst = gen_random_sib(n, ell, 6, seed=seed * 1000 + trial)
        for size in range(0, 7):
            for grp in itertools.combinations(range(n), size):
                fast = sibcheck.check_2allele(inst, grp)
                slow = sibcheck.check_2allele_bruteforce(inst, grp)
                if fast != slow:
                    return False, f"disagreement on instance {trial}, group {grp}"
                if fast and not sibcheck.check_4allele(inst, grp):
                    return False, f"2-allele group {grp} fails 4-allele"
                groups += 1
    elapsed = time.monotonic() - start
    if elapsed >= 10:
        return False, f"took {elapsed:.1f}s (budget 10s)"
    return True, f"{groups} groups agree across 200 instances in {elapsed:.1f}s"


def criterion_2(seed: int) -> tuple[bool, str]:
    """Worked four-individual example behaves exactly as documented."""
    inst = _section_instance()
    checks = [
        sibcheck.check_4allele(inst, (0, 1, 2)),
        not sibcheck.check_2allele(inst, (0, 1, 2)),
        not sibcheck.check_4allele(inst, (0, 1, 2, 3)),
    ]
    return all(checks), "pqr 4-feasible / 2-infeasible; pqrs 4-infeasible"


def criterion_3(seed: int) -> tuple[bool, str]:
    """Triangle local search with swap size 2 stays within 1.5 of optimal."""
    start = time.monotonic()
    worst = Fraction(0)
    for trial in range(100):
        n = 6 + (trial % 7)
        g = gen_random_graph(n, 0.25 + 0.04 * (trial % 6), seed=seed * 777 + trial)
        triangles = packing.enumerate_triangles(g)
        opt = packing.exact_packing(triangles).objective
        got = packing.local_search_packing(triangles, s=2).objective
        if got < math.ceil(Fraction(2 * opt, 3)):
            return False, f"trial {trial}: local={got}, opt={opt}"
        if opt:
            worst = max(worst, Fraction(opt, max(got, 1)))
    elapsed = time.monotonic() - start
    if elapsed >= 60:
        return False, f"took {elapsed:.1f}s (budget 60s)"
    return True, f"100 graphs, worst opt/local ratio {float(worst):.3f} in {elapsed:.1f}s"


def criterion_4(seed: int) -> tuple[bool, str]:
    """Cover heuristics stay inside their ratio bounds against the oracle."""
    worst_a3, worst_a4, worst_thr = 0.0, 0.0, 0.0
    for trial in range(30):
        rng = seed * 31 + trial
        for k in (2, 4):
            inst3 = gen_random_sib(5 + trial % 5, 1 + trial % 3, 5, seed=rng)
            got = sibcover.solve_a3(inst3, k).objective
            opt = sibcover.solve_exact_cover(inst3, k, a=3).objective
            if not verify(inst3, sibcover.solve_a3(inst3, k), k=k).valid:
                return False, f"a3 output invalid on trial {trial}"
            if got > (Fraction(7, 6) + Fraction(1, 100)) * opt:
                return False, f"a3 ratio violation: {got}/{opt} (trial {trial}, k={k})"
            worst_a3 = max(worst_a3, got / opt)

            inst4 = gen_random_sib(4 + trial % 5, 1 + trial % 3, 5, seed=rng + 1)
            got = sibcover.solve_a4(inst4, k).objective
            opt = sibcover.solve_exact_cover(inst4, k, a=4).objective
            if got > (Fraction(3, 2) + Fraction(1, 100)) * opt:
                return False, f"a4 ratio violation: {got}/{opt} (trial {trial}, k={k})"
            worst_a4 = max(worst_a4, got / opt)

            inst_t = gen_random_sib(5 + trial % 6, 1 + trial % 3, 6, seed=rng + 2)
            got = sibcover.solve_threshold_greedy(inst_t, k, c=3).objective
            opt = sibcover.solve_exact_cover(inst_t, k, a=inst_t.n).objective
            a_max = max(
                (len(grp) for grp in sibcheck.enumerate_groups(inst_t, k, inst_t.n)),
                default=1,
            )
            bound = Fraction(a_max, 3) - 1 + Fraction(11, 6)
            if got > bound * opt:
                return False, f"threshold ratio violation: {got}/{opt} vs {bound}"
            worst_thr = max(worst_thr, got / opt)
    return True, (
        f"worst ratios: a3 {worst_a3:.3f} (<=1.177), a4 {worst_a4:.3f} (<=1.51), "
        f"threshold {worst_thr:.3f}"
    )


def criterion_5(seed: int) -> tuple[bool, str]:
    """Distance labelings: triangle properties and exact cover identity."""
    checked = 0
    attempt = 0
    while checked < 50:
        attempt += 1
        if attempt > 3000:
            return False, "could not sample enough connected K4-free graphs"
        n = 4 + (attempt % 5)
        g = gen_random_graph(n, 0.30 + 0.05 * (attempt % 5), seed=seed * 97 + attempt)
        if not _connected(g) or _has_k4(g):
            continue
        checked += 1
        lc, _ = tp_to_labelcover(g)
        failures = check_star_properties(g, lc)
        if failures:
            return False, f"labeling property failed: {failures[0]}"
        t = packing.pack_triangles(g, "exact").objective
        expected = t + math.ceil((g.node_count - 3 * t) / 2)
        for k in (2, 4):
            inst = labelcover_to_allele(lc, k)
            got = sibcover.solve_exact_cover(inst, k, a=inst.n).objective
            if got != expected:
                return False, (
                    f"identity failed on graph {attempt} (k={k}): cover {got}, "
                    f"triangles {t}, expected {expected}"
                )
    return True, "50 connected K4-free graphs: properties and identity hold (both lifts)"


def criterion_6(seed: int) -> tuple[bool, str]:
    """Gadget tables, canonical packing counts, and normalization behavior."""
    for kind in ("=0", "=1"):
        synth_equation_gadget(kind)  # raises on any table mismatch
        if len(coverage_table(kind)) != 8:
            return False, "coverage table must have eight rows"

    system = Lin2System(
        4,
        (
            Lin2Equation(((0, False), (1, False), (2, False)), 0),
            Lin2Equation(((0, False), (1, False), (3, False)), 1),
        ),
    )
    graph, cert = lin2_to_tp(system, m=1, seed=seed)
    assignments = {
        0: {0: 0, 1: 0, 2: 0, 3: 1},
        1: {0: 0, 1: 0, 2: 0, 3: 0},
        2: {0: 0, 1: 0, 2: 1, 3: 0},
    }
    for violated, assignment in assignments.items():
        if system.violated_count(assignment) != violated:
            return False, f"test assignment violates {violated} mismatch"
        sol = lin2_solution_to_packing(assignment, cert)
        if sol.objective != expected_packing_size(cert, violated):
            return False, (
                f"packing size {sol.objective} != expected for l={violated}"
            )
        if not verify(graph, sol).valid:
            return False, f"canonical packing invalid at l={violated}"
        if packing_to_assignment(sol, cert) != assignment:
            return False, "assignment recovery failed"
        if normalize_packing(sol, cert).selected != sol.selected:
            return False, "normalization is not idempotent"

    triangles = packing.enumerate_triangles(graph)
    masks = triangles.masks()
    non_decreasing = 0
    from .core import PackingSolution

    for trial in range(100):
        rng = random.Random(("normalize", seed, trial).__repr__())
        order = list(range(len(triangles.sets)))
        rng.shuffle(order)
        used = 0
        sel = []
        for i in order:
            if masks[i] & used == 0:
                sel.append(i)
                used |= masks[i]
        p = PackingSolution(
            tuple(tuple(sorted(triangles.sets[i])) for i in sel), len(sel)
        )
        if normalize_packing(p, cert).objective >= p.objective:
            non_decreasing += 1
    if non_decreasing < 95:
        return False, f"normalization non-decreasing in only {non_decreasing}/100 trials"
    return True, (
        f"tables validated; sizes match for l in 0..2; normalization "
        f"non-decreasing in {non_decreasing}/100 trials"
    )


def criterion_7(seed: int) -> tuple[bool, str]:
    """Grid reduction on K4: cover sizes, potentials, group catalogue."""
    start = time.monotonic()
    k4 = make_graph(4, itertools.combinations(range(4), 2))
    inst, cert = cut_to_allele(k4)
    n = 2
    m = len(k4.edges)
    for bits in range(16):
        side_a = [u for u in range(4) if bits >> u & 1]
        cut_edges = sum(
            1 for u, v in k4.edges if (u in side_a) != (v in side_a)
        )
        c = m - cut_edges
        cover = cut_solution_to_cover(side_a, cert)
        if cover.objective != 39 * n + c:
            return False, f"bipartition {side_a}: size {cover.objective} != {39 * n + c}"
        report = verify(inst, cover, k=2)
        if not report.valid:
            return False, f"bipartition {side_a}: {report.violations[0]}"
    sums = gadget_potential_sums(cert)
    if any(s != Fraction(39, 2) for s in sums):
        return False, f"per-gadget potential sums {sums}"
    worst = max_feasible_group_potential(inst, cert)
    if worst > 1:
        return False, f"feasible group with potential {worst}"
    for u in range(4):
        _, unexpected = enumerate_feasible_groups_in_gadget(inst, cert, u)
        if unexpected:
            return False, f"uncatalogued feasible group in gadget {u}: {sorted(unexpected[0])}"
    elapsed = time.monotonic() - start
    if elapsed >= 120:
        return False, f"took {elapsed:.1f}s (budget 120s)"
    return True, (
        f"16 bipartitions verified at 39n+c; potentials 19.5/gadget, "
        f"max group potential {worst}; catalogue clean ({elapsed:.1f}s)"
    )


def criterion_8(seed: int) -> tuple[bool, str]:
    """Profit optimum equals the independence number across the graph map."""
    graphs = [
        ("K4", make_graph(4, itertools.combinations(range(4), 2))),
        ("C6", make_graph(6, [(i, (i + 1) % 6) for i in range(6)])),
        ("Petersen", petersen()),
    ]
    for trial in range(20):
        size = (4, 6, 8, 10)[trial % 4]
        graphs.append(
            (f"cubic{size}-{trial}", gen_random_cubic(size, seed=seed * 13 + trial))
        )
    for name, g in graphs:
        got = mpc.mpc_exact(is_to_mpc(g)).objective
        want = _max_independent_set(g)
        if got != want:
            return False, f"{name}: profit {got} != independence number {want}"
    return True, f"{len(graphs)} graphs: profit optimum == independence number"


def criterion_9(seed: int) -> tuple[bool, str]:
    """Profit-coverage approximation ratios against the exact oracle."""
    worst_pack, worst_imp = 0.0, 0.0
    for trial in range(30):
        sys3 = gen_random_system(
            6 + trial % 7, 4 + trial % 9, 3, seed=seed * 7 + trial, min_size=2
        )
        opt = mpc.mpc_exact(sys3).objective
        got = mpc.mpc_via_setpacking(sys3, eps=0.1).objective
        if opt > 0:
            if got < opt / Fraction(21, 10):
                return False, f"setpacking ratio violation on trial {trial}: {got}/{opt}"
            worst_pack = max(worst_pack, float(opt) / float(got) if got else math.inf)

        sys5 = gen_random_system(
            6 + trial % 7, 4 + trial % 9, 5, seed=seed * 11 + trial, min_size=2
        )
        opt = mpc.mpc_exact(sys5).objective
        got = mpc.mpc_2imp(sys5).objective
        if opt > 0:
            a = sys5.max_set_size
            bound = Fraction(6454, 10000) * a + Fraction(1, 10)
            if got < opt / bound:
                return False, f"2imp ratio violation on trial {trial}: {got}/{opt} vs a={a}"
            worst_imp = max(worst_imp, float(opt) / float(got) if got else math.inf)

    for trial in range(20):
        sys2 = gen_random_system(8 + trial % 5, 20, 2, seed=seed * 17 + trial)
        got = mpc.mpc_exact_small_a(sys2).objective
        want = mpc.mpc_exact(sys2).objective
        if got != want:
            return False, f"matching route {got} != oracle {want} on trial {trial}"
    return True, (
        f"worst opt/got: setpacking {worst_pack:.3f} (<=2.1), 2imp {worst_imp:.3f}; "
        f"matching == oracle on 20 instances with a<=2, m=20"
    )


def criterion_10(seed: int) -> tuple[bool, str]:
    """2-coverage equals densest-subgraph counts; routes stay consistent."""
    for trial in range(30):
        n = 5 + trial % 4
        g = gen_random_graph(n, 0.4 + 0.05 * (trial % 4), seed=seed * 19 + trial)
        if not g.edges:
            continue
        for k in (2, 3, 4):
            system = cov2.ds_to_cov2(g, k)
            if system.max_frequency > 2:
                return False, "edge incidence systems must have frequency 2"
            exact = cov2.cov2_exact(system, k)
            want = cov2.densest_k_edges(g, k)
            if exact.objective != want:
                return False, f"trial {trial} k={k}: exact {exact.objective} != {want}"
            pairwise = cov2.cov2_pairwise(system, k)
            two_phase = cov2.cov2_two_phase(system, k)
            combined = cov2.cov2_combined(system, k)
            if combined.objective < max(pairwise.objective, two_phase.objective):
                return False, "combined route below one of its components"
            if combined.objective > exact.objective:
                return False, "heuristic exceeded the oracle"
    for trial in range(20):
        system = gen_random_system(8 + trial % 5, 6 + trial % 5, 4, seed=seed * 23 + trial)
        for k in (2, 3):
            got = len(
                set().union(*(system.sets[i] for i in cov2.maxcov_greedy(system, k)))
            )
            opt = cov2.maxcov_exact(list(system.sets), k)
            factor = 1 - (1 - Fraction(1, k)) ** k
            if got < factor * opt:
                return False, f"coverage greedy below factor on trial {trial} (k={k})"
    return True, "densest equality, route dominance, and greedy factor all hold"


def criterion_11(seed: int) -> tuple[bool, str]:
    """Re-running commands with one seed yields identical solution digests."""
    import tempfile
    from pathlib import Path

    from . import cli
    from .core import (
        serialize_graph,
        serialize_lin2,
        serialize_set_system,
        serialize_sib_instance,
    )

    with tempfile.TemporaryDirectory() as tmp:
        tmp_path = Path(tmp)
        graph_file = tmp_path / "g.graph"
        graph_file.write_text(serialize_graph(gen_random_graph(8, 0.5, seed=seed)))
        system_file = tmp_path / "s.sys"
        system_file.write_text(
            serialize_set_system(gen_random_system(8, 8, 3, seed=seed))
        )
        sib_file = tmp_path / "i.tsv"
        sib_file.write_text(serialize_sib_instance(gen_random_sib(6, 2, 5, seed=seed)))
        lin2_file = tmp_path / "e.lin2"
        lin2_file.write_text(
            serialize_lin2(
                Lin2System(3, (Lin2Equation(((0, False), (1, False), (2, False)), 1),))
            )
        )
        commands = [
            ["tp", "--algo", "exact", str(graph_file)],
            ["tp", "--algo", "local:2", str(graph_file)],
            ["mpc", "--algo", "2imp", str(system_file)],
            ["cov2", "--k", "3", "--algo", "combined", str(system_file)],
            ["sibcover", "--k", "2", "--algo", "a3", str(sib_file)],
            ["reduce", "lin2-to-tp", "--seed", "3",
             "--out", str(tmp_path / "out"), str(lin2_file)],
        ]
        sink = ["--json", str(tmp_path / "report.json")]
        for cmd in commands:
            first = cli.run_for_report(cmd + sink)
            second = cli.run_for_report(cmd + sink)
            if first["solution_digest"] != second["solution_digest"]:
                return False, f"digest mismatch for {' '.join(cmd)}"
    return True, f"{len(commands)} commands re-ran with identical digests"


CRITERIA = [
    ("C1", "2-allele oracle equivalence", criterion_1),
    ("C2", "worked example", criterion_2),
    ("C3", "triangle packing ratio", criterion_3),
    ("C4", "sibling cover ratios", criterion_4),
    ("C5", "distance labeling identity", criterion_5),
    ("C6", "equation gadget bookkeeping", criterion_6),
    ("C7", "grid gadget bookkeeping", criterion_7),
    ("C8", "independence number map", criterion_8),
    ("C9", "profit coverage ratios", criterion_9),
    ("C10", "2-coverage consistency", criterion_10),
    ("C11", "determinism", criterion_11),
]

SUITES = {
    "all": [cid for cid, _, _ in CRITERIA],
    "oracles": ["C1", "C2"],
    "ratios": ["C3", "C4", "C9", "C10"],
    "gadgets": ["C6", "C7"],
    "reductions": ["C5", "C8"],
    "determinism": ["C11"],
}


def run_suite(name: str, seed: int = 1) -> list[CriterionResult]:
    if name not in SUITES:
        raise KeyError(name)
    wanted = set(SUITES[name])
    results = []
    for cid, label, func in CRITERIA:
        if cid not in wanted:
            continue
        start = time.monotonic()
        try:
            passed, details = func(seed)
        except Exception as exc:  # a crashed criterion is a failed criterion
            passed, details = False, f"raised {type(exc).__name__}: {exc}"
        elapsed_ms = int((time.monotonic() - start) * 1000)
        results.append(CriterionResult(cid, label, passed, details, elapsed_ms))
    return results

"""Command-line front end: solvers, reductions, transports, verification,
and the acceptance-suite runner.

Every solver run emits one JSON report carrying the instance digest, the
algorithm, the seed, the recomputed objective, the solution itself, and a
digest of the solution (timestamps stay out of the digests).  Solver
output is verified before reporting; an invalid solution exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import cov2, mpc, packing, sibcheck, sibcover, suites
from .core import (
    BudgetExceededError,
    ParseError,
    canonical_json,
    digest,
    parse_graph,
    parse_lin2,
    parse_set_system,
    parse_sib_instance,
    serialize_graph,
    serialize_set_system,
    serialize_sib_instance,
    solution_from_json,
    solution_to_json,
    verify,
)
from .reductions import (
    coloring_to_allele,
    coloring_to_cover,
    cover_to_coloring,
    cut_solution_to_cover,
    cut_to_allele,
    is_to_mpc,
    labelcover_to_allele,
    lin2_solution_to_packing,
    lin2_to_tp,
    normalize_packing,
    tp_to_labelcover,
)
from .reductions.certjson import cert_from_json, cert_to_json

DEFAULT_SEED = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--budget-nodes", type=int, default=None)
    common.add_argument("--budget-ms", type=int, default=None)
    common.add_argument("--eps", type=float, default=0.1)
    common.add_argument("--json", dest="json_path", default=None,
                        help="write the JSON report here instead of stdout")
    parser = argparse.ArgumentParser(
        prog="packcover",
        description="packing/covering solvers, oracles, and instance reductions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    tp = add_parser("tp", help="triangle packing")
    tp.add_argument("--algo", default="exact")
    tp.add_argument("graph")

    sc = add_parser("sibcheck", help="sibling-group feasibility")
    sc.add_argument("--k", type=int, required=True, choices=(2, 4))
    sc.add_argument("--group", required=True,
                    help="comma-separated 1-based individual ids")
    sc.add_argument("instance")

    sv = add_parser("sibcover", help="minimum sibling-group cover")
    sv.add_argument("--k", type=int, required=True, choices=(2, 4))
    sv.add_argument("--algo", default="exact")
    sv.add_argument("--a", type=int, default=None,
                    help="group size cap for greedy/exact")
    sv.add_argument("instance")

    mp = add_parser("mpc", help="maximum profit coverage")
    mp.add_argument("--algo", default="exact")
    mp.add_argument("--alpha", type=int, default=2)
    mp.add_argument("--delta", type=int, default=1)
    mp.add_argument("system")

    cv = add_parser("cov2", help="2-coverage")
    cv.add_argument("--k", type=int, required=True)
    cv.add_argument("--algo", default="exact")
    cv.add_argument("system")

    rd = add_parser("reduce", help="instance transformations")
    rd.add_argument("reduction", choices=(
        "lin2-to-tp", "tp-to-allele", "cut-to-allele", "color-to-allele",
        "is-to-mpc", "ds-to-cov2",
    ))
    rd.add_argument("--m", type=int, default=1, help="replication factor")
    rd.add_argument("--k", type=int, default=4, choices=(2, 4))
    rd.add_argument("--metric", action="store_true")
    rd.add_argument("--radius", default="1")
    rd.add_argument("--out", default=None, help="output path prefix")
    rd.add_argument("input")

    tr = add_parser("transport", help="map a source solution across a reduction")
    tr.add_argument("--cert", required=True)
    tr.add_argument("--solution", required=True)

    nm = add_parser("normalize", help="canonicalize a packing via its certificate")
    nm.add_argument("--cert", required=True)
    nm.add_argument("packing")

    vf = add_parser("verify", help="re-check a solution file")
    vf.add_argument("--kind", required=True, choices=("tp", "sibcover", "mpc", "cov2"))
    vf.add_argument("--k", type=int, default=None)
    vf.add_argument("--solution", required=True)
    vf.add_argument("instance")

    st = add_parser("suite", help="run registered acceptance suites")
    st.add_argument("name", nargs="?", default=None)

    return parser


def _solution_digest(payload) -> str:
    return digest(canonical_json(payload))


def _report(args, algorithm, instance_text, objective, solution_payload,
            wall_ms, valid=True, extra=None) -> dict:
    if isinstance(objective, Fraction):
        objective = int(objective) if objective.denominator == 1 else str(objective)
    report = {
        "instance_digest": digest(instance_text),
        "algorithm": algorithm,
        "seed": args.seed,
        "objective": objective,
        "solution": solution_payload,
        "solution_digest": _solution_digest(solution_payload),
        "wall_time_ms": wall_ms,
        "valid": valid,
    }
    if extra:
        report.update(extra)
    return report


def _budget_kwargs(args) -> dict:
    return {"node_budget": args.budget_nodes} if args.budget_nodes else {}


def _run_tp(args) -> tuple[int, dict]:
    text = Path(args.graph).read_text()
    graph = parse_graph(text)
    start = time.monotonic()
    try:
        sol = packing.pack_triangles(graph, args.algo, **_budget_kwargs(args))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    wall = int((time.monotonic() - start) * 1000)
    report_obj = verify(graph, sol)
    payload = solution_to_json(sol)
    code = 0 if report_obj.valid else 1
    return code, _report(
        args, f"tp:{args.algo}", text, report_obj.objective, payload, wall,
        valid=report_obj.valid,
        extra={"violations": list(report_obj.violations)} if not report_obj.valid else None,
    )


def _run_sibcheck(args) -> tuple[int, dict]:
    text = Path(args.instance).read_text()
    inst = parse_sib_instance(text)
    try:
        group = [int(t) - 1 for t in args.group.split(",") if t]
    except ValueError:
        raise CliError("--group wants comma-separated integers") from None
    start = time.monotonic()
    feasible = sibcheck.check_group(inst, group, args.k)
    payload = {"feasible": feasible, "k": args.k, "group": sorted(group)}
    if args.k == 2 and feasible:
        witness = sibcheck.witness_2allele(inst, group)
        payload["witness"] = {
            "father_sets": [list(f) for f in witness.father_sets],
            "mother_sets": [list(m) for m in witness.mother_sets],
            "swapped": [list(map(bool, row)) for row in witness.swapped],
        }
    wall = int((time.monotonic() - start) * 1000)
    return 0, _report(args, f"sibcheck:k={args.k}", text, int(feasible), payload, wall)


def _run_sibcover(args) -> tuple[int, dict]:
    text = Path(args.instance).read_text()
    inst = parse_sib_instance(text)
    algo = args.algo
    start = time.monotonic()
    if algo.startswith("threshold"):
        c = int(algo.split(":", 1)[1]) if ":" in algo else 3
        sol = sibcover.solve_threshold_greedy(inst, args.k, c)
    elif algo == "a3":
        sol = sibcover.solve_a3(inst, args.k, eps=args.eps)
    elif algo == "a4":
        sol = sibcover.solve_a4(inst, args.k, eps=args.eps)
    elif algo == "greedy":
        sol = sibcover.solve_setcover_greedy(inst, args.k, args.a or 3)
    elif algo == "exact":
        sol = sibcover.solve_exact_cover(
            inst, args.k, args.a or inst.n, **_budget_kwargs(args)
        )
    else:
        raise CliError(f"unknown sibcover algorithm {algo!r}")
    wall = int((time.monotonic() - start) * 1000)
    report_obj = verify(inst, sol, k=args.k)
    payload = solution_to_json(sol, k=args.k)
    code = 0 if report_obj.valid else 1
    return code, _report(
        args, f"sibcover:{algo}:k={args.k}", text, report_obj.objective, payload,
        wall, valid=report_obj.valid,
    )


def _run_mpc(args) -> tuple[int, dict]:
    text = Path(args.system).read_text()
    system = parse_set_system(text)
    algo = args.algo
    start = time.monotonic()
    if algo == "exact2":
        sol = mpc.mpc_exact_small_a(system)
    elif algo == "pack" or algo.startswith("pack:"):
        if ":" in algo and system.max_set_size > int(algo.split(":", 1)[1]):
            raise CliError(
                f"instance max set size {system.max_set_size} exceeds declared a"
            )
        sol = mpc.mpc_via_setpacking(system, eps=args.eps)
    elif algo == "greedy":
        sol = mpc.mpc_greedy(system)
    elif algo == "2imp":
        params = mpc.TwoImpParams(
            alpha=args.alpha, delta=args.delta, eps=Fraction(str(args.eps))
        )
        sol = mpc.mpc_2imp(system, params)
    elif algo == "exact":
        sol = mpc.mpc_exact(system, **_budget_kwargs(args))
    else:
        raise CliError(f"unknown mpc algorithm {algo!r}")
    wall = int((time.monotonic() - start) * 1000)
    report_obj = verify(system, sol)
    payload = solution_to_json(sol)
    code = 0 if report_obj.valid else 1
    return code, _report(
        args, f"mpc:{algo}", text, report_obj.objective, payload, wall,
        valid=report_obj.valid,
    )


def _run_cov2(args) -> tuple[int, dict]:
    text = Path(args.system).read_text()
    system = parse_set_system(text)
    algo = args.algo
    start = time.monotonic()
    if algo == "pairwise":
        sol = cov2.cov2_pairwise(system, args.k)
    elif algo == "twophase":
        sol = cov2.cov2_two_phase(system, args.k)
    elif algo == "combined":
        sol = cov2.cov2_combined(system, args.k)
    elif algo == "exact":
        sol = cov2.cov2_exact(system, args.k)
    else:
        raise CliError(f"unknown cov2 algorithm {algo!r}")
    wall = int((time.monotonic() - start) * 1000)
    report_obj = verify(system, sol, k=args.k)
    payload = solution_to_json(sol)
    code = 0 if report_obj.valid else 1
    return code, _report(
        args, f"cov2:{algo}:k={args.k}", text, report_obj.objective, payload,
        wall, valid=report_obj.valid,
    )


def _run_reduce(args) -> tuple[int, dict]:
    text = Path(args.input).read_text()
    out_prefix = Path(args.out) if args.out else Path(args.input).with_suffix("")
    start = time.monotonic()
    outputs: dict[str, str] = {}

    def emit(suffix: str, content: str):
        path = out_prefix.parent / (out_prefix.name + suffix)
        path.write_text(content)
        outputs[suffix] = content

    reduction = args.reduction
    if reduction == "lin2-to-tp":
        system = parse_lin2(text)
        graph, cert = lin2_to_tp(system, m=args.m, seed=args.seed)
        emit(".graph", serialize_graph(graph))
        emit(".cert.json", json.dumps(cert_to_json(cert), indent=1, sort_keys=True))
        objective = graph.node_count
    elif reduction == "tp-to-allele":
        graph = parse_graph(text)
        lc, cert = tp_to_labelcover(graph)
        inst = labelcover_to_allele(lc, args.k)
        emit(".tsv", serialize_sib_instance(inst))
        emit(".cert.json", json.dumps(cert_to_json(cert), indent=1, sort_keys=True))
        objective = inst.n
    elif reduction == "cut-to-allele":
        graph = parse_graph(text)
        inst, cert = cut_to_allele(graph)
        emit(".tsv", serialize_sib_instance(inst))
        emit(".cert.json", json.dumps(cert_to_json(cert), indent=1, sort_keys=True))
        objective = inst.n
    elif reduction == "color-to-allele":
        graph = parse_graph(text)
        inst, cert = coloring_to_allele(graph, k=args.k)
        emit(".tsv", serialize_sib_instance(inst))
        emit(".cert.json", json.dumps(cert_to_json(cert), indent=1, sort_keys=True))
        objective = inst.n
    elif reduction == "is-to-mpc":
        graph = parse_graph(text)
        if args.metric:
            system, presentation = is_to_mpc(
                graph, metric=True, radius=Fraction(args.radius)
            )
            emit(".sys", serialize_set_system(system))
            emit(".metric.json", json.dumps(
                {
                    "radius": str(presentation.radius),
                    "points": list(presentation.point_names),
                    "centers": list(presentation.center_names),
                    "distances": {
                        f"{a}|{b}": str(d)
                        for (a, b), d in sorted(presentation.distances.items())
                    },
                },
                indent=1, sort_keys=True,
            ))
        else:
            system = is_to_mpc(graph)
            emit(".sys", serialize_set_system(system))
        objective = len(system.sets)
    elif reduction == "ds-to-cov2":
        graph = parse_graph(text)
        system = cov2.ds_to_cov2(graph, args.k)
        emit(".sys", serialize_set_system(system))
        objective = len(system.sets)
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown reduction {reduction!r}")

    wall = int((time.monotonic() - start) * 1000)
    payload = {
        "outputs": {
            suffix: digest(content) for suffix, content in sorted(outputs.items())
        }
    }
    return 0, _report(args, f"reduce:{reduction}", text, objective, payload, wall)


def _run_transport(args) -> tuple[int, dict]:
    cert = cert_from_json(json.loads(Path(args.cert).read_text()))
    solution = json.loads(Path(args.solution).read_text())
    kind = solution.get("kind")
    start = time.monotonic()
    if cert.kind == "lin2_to_tp" and kind == "assignment":
        assignment = {int(k): v for k, v in solution["values"].items()}
        out = lin2_solution_to_packing(assignment, cert)
        payload = solution_to_json(out)
        objective = out.objective
    elif cert.kind == "cut_to_allele" and kind == "bipartition":
        out = cut_solution_to_cover(solution["side_a"], cert)
        payload = solution_to_json(out, k=2)
        objective = out.objective
    elif cert.kind == "coloring_to_allele" and kind == "coloring":
        out = coloring_to_cover(solution["colors"], cert)
        payload = solution_to_json(out, k=cert.k)
        objective = out.objective
    elif cert.kind == "coloring_to_allele" and kind == "cover":
        cover = solution_from_json(solution)
        colors = cover_to_coloring(cover, cert)
        payload = {"kind": "coloring", "colors": list(colors)}
        objective = len(set(colors))
    else:
        raise CliError(
            f"cannot transport a {kind!r} solution across {cert.kind!r}"
        )
    wall = int((time.monotonic() - start) * 1000)
    return 0, _report(
        args, f"transport:{cert.kind}", Path(args.cert).read_text(),
        objective, payload, wall,
    )


def _run_normalize(args) -> tuple[int, dict]:
    cert = cert_from_json(json.loads(Path(args.cert).read_text()))
    if cert.kind != "lin2_to_tp":
        raise CliError("normalization applies to triangle-packing certificates")
    sol = solution_from_json(json.loads(Path(args.packing).read_text()))
    start = time.monotonic()
    out = normalize_packing(sol, cert)
    wall = int((time.monotonic() - start) * 1000)
    payload = solution_to_json(out)
    return 0, _report(
        args, "normalize", Path(args.cert).read_text(), out.objective, payload, wall
    )


def _run_verify(args) -> tuple[int, dict]:
    text = Path(args.instance).read_text()
    solution = solution_from_json(json.loads(Path(args.solution).read_text()))
    if args.kind == "tp":
        instance = parse_graph(text)
        report_obj = verify(instance, solution)
    elif args.kind == "sibcover":
        if args.k is None:
            raise CliError("--k is required to verify sibling covers")
        instance = parse_sib_instance(text)
        report_obj = verify(instance, solution, k=args.k)
    elif args.kind == "mpc":
        instance = parse_set_system(text)
        report_obj = verify(instance, solution)
    else:
        if args.k is None:
            raise CliError("--k is required to verify 2-coverage solutions")
        instance = parse_set_system(text)
        report_obj = verify(instance, solution, k=args.k)
    payload = {
        "valid": report_obj.valid,
        "objective": str(report_obj.objective),
        "violations": list(report_obj.violations),
    }
    code = 0 if report_obj.valid else 1
    return code, _report(
        args, f"verify:{args.kind}", text, report_obj.objective, payload, 0,
        valid=report_obj.valid,
    )


def _run_suite(args) -> tuple[int, dict]:
    if not args.name:
        payload = {"suites": {name: list(ids) for name, ids in suites.SUITES.items()}}
        print("available suites:")
        for name, ids in suites.SUITES.items():
            print(f"  {name}: {', '.join(ids)}")
        return 0, _report(args, "suite:list", "", 0, payload, 0)
    try:
        results = suites.run_suite(args.name, seed=args.seed)
    except KeyError:
        raise CliError(f"unknown suite {args.name!r}") from None
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} [{r.cid}] {r.name}: {r.details} ({r.elapsed_ms} ms)")
    payload = {
        "suite": args.name,
        "results": [
            {
                "id": r.cid,
                "name": r.name,
                "passed": r.passed,
                "details": r.details,
                "elapsed_ms": r.elapsed_ms,
            }
            for r in results
        ],
    }
    passed = all(r.passed for r in results)
    code = 0 if passed else 1
    return code, _report(
        args, f"suite:{args.name}", args.name,
        sum(r.passed for r in results), payload, 0, valid=passed,
    )


_RUNNERS = {
    "tp": _run_tp,
    "sibcheck": _run_sibcheck,
    "sibcover": _run_sibcover,
    "mpc": _run_mpc,
    "cov2": _run_cov2,
    "reduce": _run_reduce,
    "transport": _run_transport,
    "normalize": _run_normalize,
    "verify": _run_verify,
    "suite": _run_suite,
}


def dispatch(argv) -> tuple[int, dict | None]:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = _RUNNERS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code, None
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    if report is not None:
        rendered = json.dumps(report, indent=1, sort_keys=True)
        if args.json_path:
            Path(args.json_path).write_text(rendered)
        else:
            print(rendered)
    return code, report


def run_for_report(argv) -> dict:
    """Test helper: dispatch and hand back the report."""
    code, report = dispatch(list(argv))
    if report is None:
        raise RuntimeError(f"command failed with exit code {code}")
    return report


def main(argv=None) -> int:
    code, _ = dispatch(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())

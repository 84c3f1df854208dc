"""Instance and solution data model shared by every solver and reduction.

File formats (ids are 1-based on disk, 0-based in memory):

* graph: ``c`` comment lines, ``p <nodes> <edges>`` header, then
  ``e <u> <v> [<weight>]`` lines.
* set system: ``u <n>`` header, optional ``w <i> <weight>`` lines
  (weight defaults to 1), and ``s <cost> <e1> <e2> ...`` per set.
* genotypes: TSV with header ``id l1a l1b l2a l2b ...``, one row per
  individual, two integer alleles per locus.
* equation system: ``p <vars> <eqs>`` header and ``l <lit> <lit> <lit> <b>``
  lines where a negative literal id means the negated variable.

Objectives are exact (``int`` / ``Fraction``); nothing is computed in
floating point.  All types are immutable after construction.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import random
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

log = logging.getLogger("packcover")

AllelePair = tuple[int, int]


class ParseError(ValueError):
    """Malformed instance file."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class BudgetExceededError(RuntimeError):
    """An exact solver or enumerator ran out of its configured budget."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; optional edge weights for weighted outputs."""

    node_count: int
    edges: tuple[tuple[int, int], ...]
    edge_weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u > v:
                raise ValueError(f"edge ({u},{v}) not normalized")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
        if self.edge_weights is not None and len(self.edge_weights) != len(self.edges):
            raise ValueError("edge_weights length mismatch")

    @property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.node_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.node_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def make_graph(node_count: int, edges, weights=None) -> Graph:
    """Normalize and deduplicate an edge list (weights keyed by edge)."""
    norm = sorted({(min(u, v), max(u, v)) for u, v in edges})
    w = None
    if weights is not None:
        w = tuple(Fraction(weights[(min(u, v), max(u, v))]) for u, v in norm)
    return Graph(node_count, tuple(norm), w)


@dataclass(frozen=True)
class SibInstance:
    """Genotyped individuals: one unordered allele pair per locus."""

    individuals: tuple[tuple[AllelePair, ...], ...]
    locus_count: int

    def __post_init__(self):
        for row in self.individuals:
            if len(row) != self.locus_count:
                raise ValueError("ragged individual")

    @property
    def n(self) -> int:
        return len(self.individuals)

    def locus_pairs(self, j: int) -> list[AllelePair]:
        return [ind[j] for ind in self.individuals]


def make_sib_instance(rows, locus_count: int | None = None) -> SibInstance:
    inds = tuple(
        tuple((min(a, b), max(a, b)) for a, b in row) for row in rows
    )
    if locus_count is None:
        if not inds:
            raise ValueError("locus_count required for empty instance")
        locus_count = len(inds[0])
    return SibInstance(inds, locus_count)


@dataclass(frozen=True)
class LabelCoverInstance:
    """Individuals carrying a single label per locus."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise ValueError("rows must be rectangular")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def locus_count(self) -> int:
        return len(self.rows[0]) if self.rows else 0


@dataclass(frozen=True)
class WeightedSetSystem:
    """Universe with element weights plus sets with costs."""

    universe_size: int
    element_weights: tuple[Fraction, ...]
    sets: tuple[frozenset[int], ...]
    set_costs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.element_weights) != self.universe_size:
            raise ValueError("element_weights length mismatch")
        if len(self.set_costs) != len(self.sets):
            raise ValueError("set_costs length mismatch")
        for w in self.element_weights:
            if w < 0:
                raise ValueError("negative element weight")
        for q in self.set_costs:
            if q < 0:
                raise ValueError("negative set cost")
        for s in self.sets:
            for e in s:
                if not (0 <= e < self.universe_size):
                    raise ValueError(f"element {e} out of range")

    @property
    def max_set_size(self) -> int:
        """Largest set cardinality (the parameter a)."""
        return max((len(s) for s in self.sets), default=0)

    @property
    def max_frequency(self) -> int:
        """Largest number of sets any element occurs in (the parameter f)."""
        freq = [0] * self.universe_size
        for s in self.sets:
            for e in s:
                freq[e] += 1
        return max(freq, default=0)

    def weight(self, elements) -> Fraction:
        return sum((self.element_weights[e] for e in elements), Fraction(0))


def make_system(universe_size, sets, element_weights=None, set_costs=None) -> WeightedSetSystem:
    if element_weights is None:
        element_weights = [1] * universe_size
    if set_costs is None:
        set_costs = [0] * len(sets)
    return WeightedSetSystem(
        universe_size,
        tuple(Fraction(w) for w in element_weights),
        tuple(frozenset(s) for s in sets),
        tuple(Fraction(q) for q in set_costs),
    )


Literal = tuple[int, bool]  # (variable id, negated?)


@dataclass(frozen=True)
class Lin2Equation:
    lits: tuple[Literal, Literal, Literal]
    rhs: int

    def __post_init__(self):
        if len(self.lits) != 3:
            raise ValueError("equations carry exactly 3 literals")
        if self.rhs not in (0, 1):
            raise ValueError("rhs must be a bit")

    def satisfied_by(self, assignment) -> bool:
        total = 0
        for var, neg in self.lits:
            total ^= assignment[var] ^ (1 if neg else 0)
        return total == self.rhs

    def negated(self) -> "Lin2Equation":
        return Lin2Equation(
            tuple((v, not n) for v, n in self.lits), 1 - self.rhs
        )


@dataclass(frozen=True)
class Lin2System:
    variable_count: int
    equations: tuple[Lin2Equation, ...]

    def __post_init__(self):
        for eq in self.equations:
            for var, _ in eq.lits:
                if not (0 <= var < self.variable_count):
                    raise ValueError(f"variable {var} out of range")

    def violated_count(self, assignment) -> int:
        return sum(0 if eq.satisfied_by(assignment) else 1 for eq in self.equations)


@dataclass(frozen=True)
class PackingSolution:
    """Disjoint selection: set indices, or node triples for triangle packing."""

    selected: tuple
    objective: Fraction | int


@dataclass(frozen=True)
class CoverSolution:
    groups: tuple[frozenset[int], ...]
    objective: int

    def __post_init__(self):
        if self.objective != len(self.groups):
            raise ValueError("objective must equal the group count")


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    objective: Fraction | int
    violations: tuple[str, ...]

    def __post_init__(self):
        if self.valid != (not self.violations):
            raise ValueError("valid flag must mirror the violation list")


# ---------------------------------------------------------------------------
# parsing / serialization


def _data_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield line_no, line.split()


def parse_graph(text: str) -> Graph:
    node_count = None
    edges: list[tuple[int, int]] = []
    weights: dict[tuple[int, int], Fraction] = {}
    weighted = False
    duplicates = 0
    for line_no, tok in _data_lines(text):
        if tok[0] == "p":
            if node_count is not None:
                raise ParseError("repeated header", line_no)
            if len(tok) != 3:
                raise ParseError("header must be 'p <nodes> <edges>'", line_no)
            node_count = int(tok[1])
        elif tok[0] == "e":
            if node_count is None:
                raise ParseError("edge before header", line_no)
            if len(tok) not in (3, 4):
                raise ParseError("edge must be 'e <u> <v> [<w>]'", line_no)
            try:
                u, v = int(tok[1]) - 1, int(tok[2]) - 1
            except ValueError as exc:
                raise ParseError(f"bad edge endpoint: {exc}", line_no) from None
            if u == v:
                raise ParseError(f"self-loop at node {u + 1}", line_no)
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ParseError("edge endpoint out of range", line_no)
            key = (min(u, v), max(u, v))
            if key in weights:
                duplicates += 1
                continue
            edges.append(key)
            if len(tok) == 4:
                weighted = True
                weights[key] = Fraction(tok[3])
            else:
                weights[key] = Fraction(1)
        else:
            raise ParseError(f"unknown record '{tok[0]}'", line_no)
    if node_count is None:
        raise ParseError("missing 'p' header")
    if duplicates:
        log.warning("collapsed %d duplicate edge(s)", duplicates)
    edges.sort()
    return Graph(
        node_count,
        tuple(edges),
        tuple(weights[e] for e in edges) if weighted else None,
    )


def serialize_graph(g: Graph) -> str:
    out = [f"p {g.node_count} {len(g.edges)}"]
    for i, (u, v) in enumerate(g.edges):
        if g.edge_weights is not None:
            out.append(f"e {u + 1} {v + 1} {g.edge_weights[i]}")
        else:
            out.append(f"e {u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def parse_set_system(text: str) -> WeightedSetSystem:
    universe = None
    weights: dict[int, Fraction] = {}
    sets: list[frozenset[int]] = []
    costs: list[Fraction] = []
    for line_no, tok in _data_lines(text):
        if tok[0] == "u":
            universe = int(tok[1])
        elif tok[0] == "w":
            if universe is None:
                raise ParseError("weight before header", line_no)
            i = int(tok[1]) - 1
            if not (0 <= i < universe):
                raise ParseError(f"element {i + 1} out of range", line_no)
            w = Fraction(tok[2])
            if w < 0:
                raise ParseError("negative weight", line_no)
            weights[i] = w
        elif tok[0] == "s":
            if universe is None:
                raise ParseError("set before header", line_no)
            cost = Fraction(tok[1])
            if cost < 0:
                raise ParseError("negative cost", line_no)
            members = [int(t) - 1 for t in tok[2:]]
            for e in members:
                if not (0 <= e < universe):
                    raise ParseError(f"element {e + 1} out of range", line_no)
            sets.append(frozenset(members))
            costs.append(cost)
        else:
            raise ParseError(f"unknown record '{tok[0]}'", line_no)
    if universe is None:
        raise ParseError("missing 'u' header")
    elem_weights = tuple(weights.get(i, Fraction(1)) for i in range(universe))
    return WeightedSetSystem(universe, elem_weights, tuple(sets), tuple(costs))


def serialize_set_system(s: WeightedSetSystem) -> str:
    out = [f"u {s.universe_size}"]
    for i, w in enumerate(s.element_weights):
        if w != 1:
            out.append(f"w {i + 1} {w}")
    for members, cost in zip(s.sets, s.set_costs):
        elems = " ".join(str(e + 1) for e in sorted(members))
        out.append(f"s {cost} {elems}".rstrip())
    return "\n".join(out) + "\n"


def parse_sib_instance(text: str) -> SibInstance:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("missing header")
    header = lines[0].split("\t") if "\t" in lines[0] else lines[0].split()
    if len(header) < 1 or (len(header) - 1) % 2 != 0:
        raise ParseError("header must carry two allele columns per locus", 1)
    locus_count = (len(header) - 1) // 2
    rows = []
    for line_no, ln in enumerate(lines[1:], start=2):
        tok = ln.split("\t") if "\t" in ln else ln.split()
        if len(tok) != 1 + 2 * locus_count:
            raise ParseError(
                f"expected {1 + 2 * locus_count} columns, got {len(tok)}", line_no
            )
        try:
            alleles = [int(t) for t in tok[1:]]
        except ValueError:
            raise ParseError("non-integer allele", line_no) from None
        rows.append(
            tuple(
                (min(alleles[2 * j], alleles[2 * j + 1]), max(alleles[2 * j], alleles[2 * j + 1]))
                for j in range(locus_count)
            )
        )
    return SibInstance(tuple(rows), locus_count)


def serialize_sib_instance(inst: SibInstance) -> str:
    header = ["id"]
    for j in range(inst.locus_count):
        header += [f"l{j + 1}a", f"l{j + 1}b"]
    out = ["\t".join(header)]
    for i, ind in enumerate(inst.individuals):
        row = [str(i + 1)]
        for a, b in ind:
            row += [str(a), str(b)]
        out.append("\t".join(row))
    return "\n".join(out) + "\n"


def parse_lin2(text: str) -> Lin2System:
    variables = None
    equations = []
    for line_no, tok in _data_lines(text):
        if tok[0] == "p":
            variables = int(tok[1])
        elif tok[0] == "l":
            if variables is None:
                raise ParseError("equation before header", line_no)
            if len(tok) != 5:
                raise ParseError("equation must be 'l <lit> <lit> <lit> <b>'", line_no)
            lits = []
            for t in tok[1:4]:
                raw = int(t)
                if raw == 0:
                    raise ParseError("literal 0 is not allowed", line_no)
                lits.append((abs(raw) - 1, raw < 0))
            equations.append(Lin2Equation(tuple(lits), int(tok[4])))
        else:
            raise ParseError(f"unknown record '{tok[0]}'", line_no)
    if variables is None:
        raise ParseError("missing 'p' header")
    return Lin2System(variables, tuple(equations))


def serialize_lin2(sys_: Lin2System) -> str:
    out = [f"p {sys_.variable_count} {len(sys_.equations)}"]
    for eq in sys_.equations:
        lits = " ".join(
            str(-(v + 1)) if neg else str(v + 1) for v, neg in eq.lits
        )
        out.append(f"l {lits} {eq.rhs}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# verification


def verify(instance, solution, *, k: int | None = None) -> VerificationReport:
    """Recompute a solution's objective from scratch and list violations."""
    violations: list[str] = []

    if isinstance(instance, Graph) and isinstance(solution, PackingSolution):
        edge_set = instance.edge_set
        used: set[int] = set()
        for tri in solution.selected:
            nodes = tuple(sorted(tri))
            if len(set(nodes)) != 3:
                violations.append(f"{tri} is not a node triple")
                continue
            for a, b in itertools.combinations(nodes, 2):
                if (a, b) not in edge_set:
                    violations.append(f"{nodes} is not a triangle (missing edge {a}-{b})")
            overlap = used.intersection(nodes)
            if overlap:
                violations.append(f"{nodes} reuses node(s) {sorted(overlap)}")
            used.update(nodes)
        objective = len(solution.selected)
        if objective != solution.objective:
            violations.append(
                f"objective mismatch: reported {solution.objective}, recomputed {objective}"
            )
        return VerificationReport(not violations, objective, tuple(violations))

    from . import packing as _packing

    if isinstance(instance, _packing.SetCollection) and isinstance(solution, PackingSolution):
        used_elems: set[int] = set()
        total = Fraction(0)
        for idx in solution.selected:
            if not (0 <= idx < len(instance.sets)):
                violations.append(f"set index {idx} out of range")
                continue
            s = instance.sets[idx]
            overlap = used_elems & s
            if overlap:
                violations.append(f"set {idx} overlaps on {sorted(overlap)}")
            used_elems |= s
            total += instance.weight_of(idx)
        if total != solution.objective:
            violations.append(
                f"objective mismatch: reported {solution.objective}, recomputed {total}"
            )
        return VerificationReport(not violations, total, tuple(violations))

    from . import sibcheck as _sibcheck

    if isinstance(instance, SibInstance) and isinstance(solution, CoverSolution):
        if k not in (2, 4):
            raise ValueError("sibling covers need k in {2, 4}")
        covered: set[int] = set()
        for grp in solution.groups:
            bad = [i for i in grp if not (0 <= i < instance.n)]
            if bad:
                violations.append(f"group {sorted(grp)} has out-of-range ids {bad}")
                continue
            if not _sibcheck.check_group(instance, grp, k):
                violations.append(f"group {sorted(grp)} violates the {k}-allele condition")
            covered |= set(grp)
        missing = set(range(instance.n)) - covered
        if missing:
            violations.append(f"individuals {sorted(missing)} are uncovered")
        objective = len(solution.groups)
        if objective != solution.objective:
            violations.append(
                f"objective mismatch: reported {solution.objective}, recomputed {objective}"
            )
        return VerificationReport(not violations, objective, tuple(violations))

    from . import cov2 as _cov2
    from . import mpc as _mpc

    if isinstance(instance, WeightedSetSystem) and isinstance(solution, _cov2.Cov2Solution):
        if k is None:
            raise ValueError("2-coverage verification needs k")
        if len(set(solution.selected)) != len(solution.selected):
            violations.append("selection repeats a set")
        if len(solution.selected) > k:
            violations.append(f"{len(solution.selected)} sets selected but k={k}")
        counts: dict[int, int] = {}
        for idx in solution.selected:
            if not (0 <= idx < len(instance.sets)):
                violations.append(f"set index {idx} out of range")
                continue
            for e in instance.sets[idx]:
                counts[e] = counts.get(e, 0) + 1
        twice = frozenset(e for e, c in counts.items() if c >= 2)
        if twice != solution.twice_covered:
            violations.append("twice-covered element set is inconsistent")
        objective = len(twice)
        if objective != solution.objective:
            violations.append(
                f"objective mismatch: reported {solution.objective}, recomputed {objective}"
            )
        return VerificationReport(not violations, objective, tuple(violations))

    if isinstance(instance, WeightedSetSystem) and isinstance(solution, _mpc.MpcSolution):
        for idx in solution.selected:
            if not (0 <= idx < len(instance.sets)):
                violations.append(f"set index {idx} out of range")
        if len(set(solution.selected)) != len(solution.selected):
            violations.append("selection repeats a set")
        objective = _mpc.mpc_profit(instance, [i for i in solution.selected if 0 <= i < len(instance.sets)])
        if objective != solution.objective:
            violations.append(
                f"objective mismatch: reported {solution.objective}, recomputed {objective}"
            )
        return VerificationReport(not violations, objective, tuple(violations))

    raise TypeError(
        f"cannot verify {type(solution).__name__} against {type(instance).__name__}"
    )


# ---------------------------------------------------------------------------
# random generators (pure functions of their arguments, seed included)


def gen_random_graph(n: int, edge_probability: float, seed: int) -> Graph:
    if n <= 0:
        raise ValueError("n must be positive")
    rng = random.Random(("graph", n, edge_probability, seed).__repr__())
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n), 2)
        if rng.random() < edge_probability
    ]
    return Graph(n, tuple(sorted(edges)))


def gen_random_cubic(n: int, seed: int) -> Graph:
    if n < 4 or n % 2 != 0:
        raise ValueError("cubic graphs need even n >= 4")
    g = nx.random_regular_graph(3, n, seed=seed)
    return make_graph(n, g.edges())


def gen_random_sib(n: int, locus_count: int, allele_pool: int, seed: int) -> SibInstance:
    if n < 0 or locus_count <= 0 or allele_pool <= 0:
        raise ValueError("parameters must be positive")
    rng = random.Random(("sib", n, locus_count, allele_pool, seed).__repr__())
    rows = []
    for _ in range(n):
        rows.append(
            tuple(
                tuple(sorted((rng.randrange(allele_pool), rng.randrange(allele_pool))))
                for _ in range(locus_count)
            )
        )
    return SibInstance(tuple(rows), locus_count)


def gen_random_system(n: int, m: int, a: int, seed: int,
                      min_size: int = 1, weighted: bool = True) -> WeightedSetSystem:
    if n <= 0 or m < 0 or a <= 0 or min_size < 1 or min_size > a:
        raise ValueError("parameters must be positive with min_size <= a")
    rng = random.Random(("system", n, m, a, seed).__repr__())
    sets = []
    costs = []
    for _ in range(m):
        size = rng.randint(min_size, min(a, n))
        sets.append(frozenset(rng.sample(range(n), size)))
        costs.append(Fraction(rng.randint(0, 3)))
    weights = tuple(
        Fraction(rng.randint(1, 5)) if weighted else Fraction(1) for _ in range(n)
    )
    return WeightedSetSystem(n, weights, tuple(sets), tuple(costs))


# ---------------------------------------------------------------------------
# canonical JSON plumbing for reports, solutions and certificates


def _jsonify(obj):
    if isinstance(obj, Fraction):
        return {"fraction": str(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return {"set": sorted(_jsonify(v) for v in obj)}
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_jsonify(obj), sort_keys=True, separators=(",", ":"))


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def solution_to_json(solution, k: int | None = None) -> dict:
    from . import cov2 as _cov2
    from . import mpc as _mpc

    if isinstance(solution, PackingSolution):
        if solution.selected and isinstance(solution.selected[0], tuple):
            return {
                "kind": "packing_triples",
                "triples": [list(t) for t in solution.selected],
                "objective": _jsonify(solution.objective),
            }
        return {
            "kind": "packing_sets",
            "selected": list(solution.selected),
            "objective": _jsonify(solution.objective),
        }
    if isinstance(solution, CoverSolution):
        d = {
            "kind": "cover",
            "groups": [sorted(g) for g in solution.groups],
            "objective": solution.objective,
        }
        if k is not None:
            d["k"] = k
        return d
    if isinstance(solution, _mpc.MpcSolution):
        return {
            "kind": "mpc",
            "selected": list(solution.selected),
            "objective": _jsonify(solution.objective),
        }
    if isinstance(solution, _cov2.Cov2Solution):
        return {
            "kind": "cov2",
            "selected": list(solution.selected),
            "twice_covered": sorted(solution.twice_covered),
            "objective": solution.objective,
        }
    raise TypeError(f"cannot serialize {type(solution).__name__}")


def _unjsonify_objective(value):
    if isinstance(value, dict) and "fraction" in value:
        return Fraction(value["fraction"])
    return value


def solution_from_json(data: dict):
    from . import cov2 as _cov2
    from . import mpc as _mpc

    kind = data.get("kind")
    if kind == "packing_triples":
        return PackingSolution(
            tuple(tuple(t) for t in data["triples"]),
            _unjsonify_objective(data["objective"]),
        )
    if kind == "packing_sets":
        return PackingSolution(
            tuple(data["selected"]), _unjsonify_objective(data["objective"])
        )
    if kind == "cover":
        return CoverSolution(
            tuple(frozenset(g) for g in data["groups"]), data["objective"]
        )
    if kind == "mpc":
        return _mpc.MpcSolution(
            tuple(data["selected"]), _unjsonify_objective(data["objective"])
        )
    if kind == "cov2":
        return _cov2.Cov2Solution(
            tuple(data["selected"]),
            frozenset(data["twice_covered"]),
            data["objective"],
        )
    raise ValueError(f"unknown solution kind {kind!r}")

"""JSON round-tripping for reduction certificates."""

from __future__ import annotations

from fractions import Fraction

from .coloring import ColoringCertificate
from .cutgrid import ConnectionRecord, CutCertificate, GadgetRecord, GridRecord
from .labelcover import LabelCoverCertificate
from .lin2tp import CopyRecord, Lin2TpCertificate, TripleRecord, VariableRecord


def _tuples(x):
    if isinstance(x, list):
        return tuple(_tuples(v) for v in x)
    return x


def cert_to_json(cert) -> dict:
    if isinstance(cert, Lin2TpCertificate):
        return {
            "kind": cert.kind,
            "num_equations": cert.num_equations,
            "replication": cert.replication,
            "m_s": cert.m_s,
            "node_count": cert.node_count,
            "seed": cert.seed,
            "warnings": list(cert.warnings),
            "copies": [
                {
                    "equation_index": c.equation_index,
                    "replication": c.replication,
                    "variant": c.variant,
                    "copy_index": c.copy_index,
                    "kind": c.kind,
                    "lits": [[v, bool(neg)] for v, neg in c.lits],
                    "node_map": list(c.node_map),
                }
                for c in cert.copies
            ],
            "triples": [
                {
                    "copy_ids": list(t.copy_ids),
                    "ss_triangles": [[local, list(tri)] for local, tri in t.ss_triangles],
                }
                for t in cert.triples
            ],
            "variables": [
                {
                    "variable": v.variable,
                    "k": v.k,
                    "white_triangles": [list(t) for t in v.white_triangles],
                    "black_triangles": [list(t) for t in v.black_triangles],
                    "contact_triangles": [
                        [idx, color, lit, list(tri)]
                        for idx, color, lit, tri in v.contact_triangles
                    ],
                }
                for v in cert.variables
            ],
        }
    if isinstance(cert, CutCertificate):
        return {
            "kind": cert.kind,
            "source_node_count": cert.source_node_count,
            "source_edges": [list(e) for e in cert.source_edges],
            "individual_count": cert.individual_count,
            "potentials": [str(p) for p in cert.potentials],
            "gadgets": [
                {
                    "source_node": g.source_node,
                    "squares": {
                        color: [list(grp) for grp in grps]
                        for color, grps in g.squares.items()
                    },
                    "triples": {
                        color: [list(grp) for grp in grps]
                        for color, grps in g.triples.items()
                    },
                    "internal_ids": list(g.internal_ids),
                }
                for g in cert.gadgets
            ],
            "connections": [
                {
                    "edge": list(c.edge),
                    "grids": [
                        {
                            "top": list(gr.top),
                            "bottom": list(gr.bottom),
                            "mu_ids": list(gr.mu_ids),
                            "top_beta": gr.top_beta,
                            "top_gamma": gr.top_gamma,
                            "bottom_beta": gr.bottom_beta,
                            "bottom_gamma": gr.bottom_gamma,
                        }
                        for gr in c.grids
                    ],
                }
                for c in cert.connections
            ],
            "alphabet": dict(cert.alphabet),
        }
    if isinstance(cert, ColoringCertificate):
        return {
            "kind": cert.kind,
            "node_count": cert.node_count,
            "edges": [list(e) for e in cert.edges],
            "anchor_loci": [list(a) for a in cert.anchor_loci],
            "distinctness_loci": cert.distinctness_loci,
            "k": cert.k,
        }
    if isinstance(cert, LabelCoverCertificate):
        return {
            "kind": cert.kind,
            "node_count": cert.node_count,
            "loci": [
                list(locus[:2]) + ([list(locus[2])] if len(locus) == 3 else [])
                for locus in cert.loci
            ],
            "components": [list(c) for c in cert.components],
        }
    raise TypeError(f"cannot serialize {type(cert).__name__}")


def cert_from_json(data: dict):
    kind = data.get("kind")
    if kind == "lin2_to_tp":
        return Lin2TpCertificate(
            kind=kind,
            num_equations=data["num_equations"],
            replication=data["replication"],
            m_s=data["m_s"],
            node_count=data["node_count"],
            seed=data["seed"],
            warnings=tuple(data["warnings"]),
            copies=tuple(
                CopyRecord(
                    c["equation_index"], c["replication"], c["variant"],
                    c["copy_index"], c["kind"],
                    tuple((v, bool(neg)) for v, neg in c["lits"]),
                    tuple(c["node_map"]),
                )
                for c in data["copies"]
            ),
            triples=tuple(
                TripleRecord(
                    tuple(t["copy_ids"]),
                    tuple((local, tuple(tri)) for local, tri in t["ss_triangles"]),
                )
                for t in data["triples"]
            ),
            variables=tuple(
                VariableRecord(
                    v["variable"], v["k"],
                    tuple(tuple(t) for t in v["white_triangles"]),
                    tuple(tuple(t) for t in v["black_triangles"]),
                    tuple(
                        (idx, color, lit, tuple(tri))
                        for idx, color, lit, tri in v["contact_triangles"]
                    ),
                )
                for v in data["variables"]
            ),
        )
    if kind == "cut_to_allele":
        return CutCertificate(
            kind=kind,
            source_node_count=data["source_node_count"],
            source_edges=tuple(tuple(e) for e in data["source_edges"]),
            individual_count=data["individual_count"],
            potentials=tuple(Fraction(p) for p in data["potentials"]),
            gadgets=tuple(
                GadgetRecord(
                    g["source_node"],
                    {
                        color: tuple(tuple(grp) for grp in grps)
                        for color, grps in g["squares"].items()
                    },
                    {
                        color: tuple(tuple(grp) for grp in grps)
                        for color, grps in g["triples"].items()
                    },
                    tuple(g["internal_ids"]),
                )
                for g in data["gadgets"]
            ),
            connections=tuple(
                ConnectionRecord(
                    tuple(c["edge"]),
                    tuple(
                        GridRecord(
                            tuple(gr["top"]), tuple(gr["bottom"]),
                            tuple(gr["mu_ids"]), gr["top_beta"], gr["top_gamma"],
                            gr["bottom_beta"], gr["bottom_gamma"],
                        )
                        for gr in c["grids"]
                    ),
                )
                for c in data["connections"]
            ),
            alphabet=dict(data["alphabet"]),
        )
    if kind == "coloring_to_allele":
        return ColoringCertificate(
            kind=kind,
            node_count=data["node_count"],
            edges=tuple(tuple(e) for e in data["edges"]),
            anchor_loci=tuple(tuple(a) for a in data["anchor_loci"]),
            distinctness_loci=data["distinctness_loci"],
            k=data["k"],
        )
    if kind == "tp_to_labelcover":
        return LabelCoverCertificate(
            kind=kind,
            node_count=data["node_count"],
            loci=tuple(
                (locus[0], locus[1], tuple(locus[2])) if len(locus) == 3
                else (locus[0], locus[1])
                for locus in data["loci"]
            ),
            components=tuple(tuple(c) for c in data["components"]),
        )
    raise ValueError(f"unknown certificate kind {kind!r}")

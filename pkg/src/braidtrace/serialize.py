"""Trace graph documents: canonical JSON and DOT export.

The JSON writer is deterministic byte for byte: keys sorted, floats at 12
significant digits.  Loading a document rebuilds a TraceGraph carrying all
combinatorial data (rotation systems, levels, markings, displacements);
fiber operations need the original strand paths and are not available on
loaded graphs.
"""

from __future__ import annotations

import json
from typing import Optional

from .embedding import EVENT_SEP, GENERICITY_MARGIN, ROOT_TOL
from .tracegraph import Marking, TraceCircle, TraceEdge, TraceGraph, TraceVertex
from .words import BraidWord, cycle_structure

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"


class SchemaError(ValueError):
    pass


def _fmt(value) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in value) + "]"
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: kv[0])
        return "{" + ",".join(f"{json.dumps(k)}:{_fmt(v)}" for k, v in items) + "}"
    raise TypeError(f"cannot serialise {type(value)}")


def canonical_json(doc: dict) -> str:
    return _fmt(doc) + "\n"


def graph_to_document(g: TraceGraph) -> dict:
    word = {"n": g.n, "letters": [[i, s] for i, s in g.word.letters]}
    vertices = [
        {
            "id": v.id,
            "z": v.z,
            "t": v.t,
            "strands": list(v.strands),
            "letter": v.letter,
            "spectator_slot": v.spectator_slot,
            "below": list(v.below),
            "above": list(v.above),
        }
        for v in sorted(g.vertices.values(), key=lambda v: v.id)
    ]
    edges = [
        {
            "id": e.id,
            "tail": e.tail,
            "head": e.head,
            "dz": e.dz,
            "dt": e.dt,
            "level": e.level,
            "circle": e.circle,
            "over_under": list(e.pair),
            "tail_pair": list(e.tail_pair) if e.tail_pair else None,
            "head_pair": list(e.head_pair) if e.head_pair else None,
        }
        for e in sorted(g.edges.values(), key=lambda e: e.id)
    ]
    circles = [
        {
            "id": c.id,
            "marking": [c.marking.i, c.marking.j, c.marking.k],
            "diff": c.diff,
            "comp_pair": list(c.comp_pair),
            "edges": list(c.edges),
            "dz_total": c.dz_total,
            "dt_winding": c.dt_winding,
        }
        for c in sorted(g.circles.values(), key=lambda c: c.id)
    ]
    return {
        "schema": SCHEMA_VERSION,
        "word": word,
        "vertices": vertices,
        "edges": edges,
        "circles": circles,
        "symmetry": {
            "vertices": {str(k): v for k, v in g.vertex_partner.items()},
            "edges": {str(k): v for k, v in g.edge_partner.items()},
            "circles": {str(k): v for k, v in g.circle_partner.items()},
        },
        "pass_circle": {f"{a},{b}": c for (a, b), c in g.pass_circle.items()},
        "reduced_from": g.reduced_from,
        "provenance": {
            "tool": "braidtrace",
            "version": TOOL_VERSION,
            "tolerances": {
                "event_separation": EVENT_SEP,
                "root": ROOT_TOL,
                "genericity_margin": GENERICITY_MARGIN,
            },
        },
    }


def document_to_graph(doc: dict) -> TraceGraph:
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}")
    word = BraidWord(doc["word"]["n"], tuple((i, s) for i, s in doc["word"]["letters"]))
    vertices = {}
    for v in doc["vertices"]:
        vertices[v["id"]] = TraceVertex(
            v["id"], v["z"], v["t"], tuple(v["strands"]), v["letter"],
            v["spectator_slot"], tuple(v["below"]), tuple(v["above"]),
        )
    edges = {}
    for e in doc["edges"]:
        edges[e["id"]] = TraceEdge(
            e["id"], e["tail"], e["head"], e["dz"], e["dt"], e["level"],
            e["circle"], tuple(e["over_under"]),
            tuple(e["tail_pair"]) if e["tail_pair"] else None,
            tuple(e["head_pair"]) if e["head_pair"] else None,
        )
    circles = {}
    for c in doc["circles"]:
        circles[c["id"]] = TraceCircle(
            c["id"], Marking(*c["marking"]), c["diff"], tuple(c["comp_pair"]),
            tuple(c["edges"]), c["dz_total"], c["dt_winding"],
        )
    sym = doc["symmetry"]
    pass_circle = {}
    for key, cid in doc["pass_circle"].items():
        a, b = key.split(",")
        pass_circle[(int(a), int(b))] = cid
    required = {e["id"] for e in doc["edges"]}
    for c in circles.values():
        if not set(c.edges) <= required:
            raise SchemaError(f"circle {c.id} references missing edges")
    return TraceGraph(
        word.n,
        word,
        cycle_structure(word),
        vertices,
        edges,
        circles,
        {int(k): v for k, v in sym["vertices"].items()},
        {int(k): v for k, v in sym["edges"].items()},
        {int(k): v for k, v in sym["circles"].items()},
        pass_circle,
        paths=None,
        reduced_from=doc.get("reduced_from"),
    )


def save_graph(g: TraceGraph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(graph_to_document(g)))


def load_graph(path: str) -> TraceGraph:
    with open(path) as fh:
        return document_to_graph(json.load(fh))


_PALETTE = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
    "#f781bf", "#999999", "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3",
)


def to_dot(g: TraceGraph) -> str:
    """Deterministic DOT rendering on the (z, t) torus: vertices positioned by
    coordinates, edges coloured by circle and labelled by level."""
    lines = ["digraph tracegraph {"]
    lines.append('  graph [label="trace graph of %s on %d strands"];' % (g.word, g.n))
    for v in sorted(g.vertices.values(), key=lambda v: v.id):
        lines.append(
            f'  v{v.id} [shape=point,pos="{v.t:.6f},{v.z:.6f}!",'
            f'xlabel="v{v.id}"];'
        )
    loop_anchor = 0
    for c in sorted(g.circles.values(), key=lambda c: c.id):
        color = _PALETTE[c.id % len(_PALETTE)]
        for eid in c.edges:
            e = g.edges[eid]
            label = f"{c.marking} L{e.level}"
            if e.tail is None:
                lines.append(
                    f'  loop{loop_anchor} [shape=plaintext,label="{label} '
                    f'(dz={e.dz:.0f},w={-round(e.dt / 6.283185307179586)})",'
                    f'fontcolor="{color}"];'
                )
                loop_anchor += 1
            else:
                lines.append(
                    f'  v{e.tail} -> v{e.head} [color="{color}",label="{label}"];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Aggregated structural checks for a built trace graph.

Everything the counting and position lemmas promise, runnable on one word:
used by the `check` CLI subcommand, the test suite, and the acceptance
sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import levels as lv
from .embedding import t_over, wrap_pm_pi
from .oracle import brute_counts, expected_circle_count
from .tracegraph import TraceGraph, read_word_at, symmetry_involution

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    warning: bool = False  # findings that do not fail the suite


def run_structure_checks(g: TraceGraph, sample_injectivity: bool = True) -> list[CheckResult]:
    out = []
    w = g.word
    n, l = g.n, len(w)

    exp_v = 2 * l * (n - 2)
    out.append(
        CheckResult(
            "triple-vertex count 2l(n-2)",
            g.num_vertices == exp_v,
            f"{g.num_vertices} vs {exp_v}",
        )
    )

    exp_c = expected_circle_count(w)
    nc = len(g.circles)
    out.append(
        CheckResult(
            "trace-circle count and bounds",
            nc == exp_c and n - 1 <= nc <= n * (n - 1),
            f"{nc} vs {exp_c}",
        )
    )

    rep = brute_counts(g)
    out.append(CheckResult("independent recount", rep.ok, rep.detail))

    mono = all(e.dz > 0 for e in g.edges.values())
    integral = all(
        abs(sum(g.edges[e].dz for e in c.edges) - c.dz_total) < 1e-6
        and c.dz_total >= 1
        for c in g.circles.values()
    )
    out.append(CheckResult("circles z-monotone with integer winding", mono and integral))

    try:
        symmetry_involution(g)
        sym_ok, sym_detail = True, ""
    except Exception as ex:  # reported, not raised
        sym_ok, sym_detail = False, str(ex)
    lvl_ok = all(
        g.edges[g.edge_partner[e]].level == n - g.edges[e].level for e in g.edges
    )
    out.append(CheckResult("t+pi symmetry with label reversal", sym_ok, sym_detail))
    out.append(CheckResult("symmetry maps level k to n-k", lvl_ok))

    local_ok, local_detail = _local_structure(g)
    out.append(CheckResult("vertex local structure (levels, middle circle)", local_ok, local_detail))

    att_ok, att_detail, warnings = _attractor_checks(g)
    out.append(CheckResult("right attractors per level", att_ok, att_detail))
    for wmsg in warnings:
        out.append(CheckResult("attractor class primitivity", False, wmsg, warning=True))

    if g.paths is not None:
        rb = read_word_at(g, 0.0)
        out.append(CheckResult("time-zero fiber reads back the word", rb.letters == w.letters))
        if sample_injectivity:
            out.append(CheckResult("level subgraphs project injectively (sampled)",
                                   _sampled_injectivity(g)))
    return out


def _local_structure(g: TraceGraph) -> tuple[bool, str]:
    for v in g.vertices.values():
        if len(v.below) != 3 or len(v.above) != 3:
            return False, f"vertex {v.id} lacks 3+3 edge ends"
        bl = [g.edges[e].level for e in v.below]
        al = [g.edges[e].level for e in v.above]
        if not (bl[0] == bl[2] and al[0] == al[2] and bl[1] == al[0] and al[1] == bl[0]):
            return False, f"vertex {v.id} level pattern {bl}/{al}"
        if abs(bl[0] - bl[1]) != 1:
            return False, f"vertex {v.id} level step is not +-1"
        mid = g.edges[v.below[1]]
        if mid.head_pair is not None and set(mid.head_pair) != {v.strands[0], v.strands[2]}:
            return False, f"vertex {v.id} middle circle is not the distant pair"
    return True, ""


def _attractor_checks(g: TraceGraph) -> tuple[bool, str, list[str]]:
    warnings = []
    for k in range(1, g.n):
        s = lv.level_subgraph(g, k)
        if not s.edges:
            return False, f"level {k} subgraph is empty", warnings
        ats = lv.right_attractors(s)
        if not ats:
            return False, f"level {k} has no right attractor", warnings
        used = set()
        for a in ats:
            if a.homology[0] <= 0:
                return False, f"level {k} attractor has q <= 0", warnings
            verts = set()
            for e in a.edges:
                edge = g.edges[e]
                if edge.tail is not None:
                    verts.update((edge.tail, edge.head))
            if used & verts:
                return False, f"level {k} attractors share a vertex", warnings
            used |= verts
            q, r = a.homology
            if math.gcd(q, abs(r)) != 1:
                warnings.append(f"level {k} attractor class {a.homology} not primitive")
    return True, "", warnings


def _sampled_injectivity(g: TraceGraph, per_pass: int = 24, tol: float = 1e-5) -> bool:
    """Sample the crossing curves and look for same-level coincidences in
    (z, t) away from vertices."""
    paths = g.paths
    from .tracegraph import _level_of_pair
    from .words import permutation

    perm = permutation(g.word)
    vertex_spots = [(v.z, v.t) for v in g.vertices.values()]
    samples: dict[int, list] = {}
    for (a, b), cid in g.pass_circle.items():
        for i in range(per_pass):
            z = (i + 0.5) / per_pass
            pa = paths.track_position(a, z)
            pb = paths.track_position(b, z)
            t = t_over(pa, pb)
            if any(abs(z - vz) < 0.02 and abs(wrap_pm_pi(t - vt)) < 0.2 for vz, vt in vertex_spots):
                continue
            lvl = _level_of_pair(paths, a, b, z)
            samples.setdefault(lvl, []).append((z, t, (a, b)))
    for lvl, pts in samples.items():
        pts.sort()
        for p1, p2 in zip(pts, pts[1:]):
            if (
                abs(p1[0] - p2[0]) < tol
                and abs(wrap_pm_pi(p1[1] - p2[1])) < tol
                and p1[2] != p2[2]
            ):
                return False
    return True

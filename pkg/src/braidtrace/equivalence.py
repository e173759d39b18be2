"""Trace codes, isotopy recognition, and trihedral reduction.

Two embedded labelled trace graphs are isotopic in the thickened torus
exactly when their codes (vertex triplets + attractor classes + maximal
classes) agree for some choice of base points on trace circles and of the
cyclic marking representatives, possibly after the time shift by pi that
reverses all markings and inverts levels.  Circles are globally
distinguished by their markings, so matching only has to resolve one base
offset per circle; offsets propagate through shared vertices, which keeps
the search linear per anchor candidate while staying equivalent to the
full product enumeration.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

from . import levels as lv
from .embedding import GenericityError, wrap_pm_pi
from .tracegraph import Marking, TraceCircle, TraceEdge, TraceGraph, TraceVertex

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def comparison_budget() -> int:
    raw = os.environ.get("BTG_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# Trace codes


TripletEntry = tuple[Marking, int, int]  # (circle marking, index along circle, level)


@dataclass(frozen=True)
class TraceCode:
    """The three-piece fingerprint of an embedded labelled trace graph."""

    piece1: tuple[tuple[TripletEntry, TripletEntry, TripletEntry], ...]
    piece2: tuple[tuple[tuple[int, int], ...], ...]      # per level, sorted attractor classes
    piece3: tuple[Optional[tuple[int, int]], ...]        # per level, maximal class or None
    free_circles: tuple[tuple[Marking, tuple[int, int]], ...]  # vertex-free circles

    def __eq__(self, other):
        return (
            isinstance(other, TraceCode)
            and sorted(self.piece1) == sorted(other.piece1)
            and self.piece2 == other.piece2
            and self.piece3 == other.piece3
            and sorted(self.free_circles) == sorted(other.free_circles)
        )


def _circle_visits(g: TraceGraph, c: TraceCircle) -> list[int]:
    """Vertex of each junction along the circle; visit k is the tail of
    edges[k].  Empty for vertex-free circles."""
    if c.edges and g.edges[c.edges[0]].tail is None:
        return []
    return [g.edges[e].tail for e in c.edges]


def _head_visit_index(g: TraceGraph, c: TraceCircle, eid: int) -> int:
    k = c.edges.index(eid)
    return (k + 1) % len(c.edges)


def vertex_triplet(
    g: TraceGraph,
    v: TraceVertex,
    bases: dict[int, int],
    markings: dict[int, Marking],
    level_map=None,
) -> tuple[TripletEntry, TripletEntry, TripletEntry]:
    """The ordered triplet of a vertex: its three lower branches in
    increasing local t, each as (circle marking, visit index from the
    circle's base point, level of the entering edge)."""
    out = []
    for eid in v.below:
        e = g.edges[eid]
        c = g.circles[e.circle]
        raw = _head_visit_index(g, c, eid)
        idx = (raw - bases.get(c.id, 0)) % len(c.edges) + 1
        lvl = e.level if level_map is None else level_map(e.level)
        out.append((markings[c.id], idx, lvl))
    return tuple(out)


def trace_code(
    g: TraceGraph,
    base_points: Optional[dict[int, int]] = None,
    marking_shifts: Optional[dict[frozenset, int]] = None,
    budget: int = lv.CYCLE_BUDGET,
) -> TraceCode:
    """The trace code for explicit choices; defaults are base offset zero on
    every circle and the construction's marking representatives."""
    bases = base_points or {}
    markings = _marking_map(g, marking_shifts or {})
    piece1 = tuple(
        vertex_triplet(g, v, bases, markings) for v in g.vertices.values()
    )
    att = lv.attractor_profile(g)
    mx = lv.maximal_profile(g, budget)
    piece2 = tuple(att[k] for k in range(1, g.n))
    piece3 = tuple(mx[k] for k in range(1, g.n))
    free = []
    for c in g.circles.values():
        e = g.edges[c.edges[0]]
        if e.tail is None:
            free.append((markings[c.id], (c.dz_total, c.dt_winding)))
    return TraceCode(piece1, piece2, piece3, tuple(sorted(free)))


def codes_equal(tc1: TraceCode, tc2: TraceCode) -> bool:
    return tc1 == tc2


def _marking_map(g: TraceGraph, shifts: dict[frozenset, int]) -> dict[int, Marking]:
    out = {}
    for c in g.circles.values():
        i, j = c.comp_pair
        if i == j or not shifts:
            out[c.id] = c.marking
        else:
            extra = shifts.get(frozenset((i, j)), 0)
            gcd = math.gcd(g.cycles.lengths[i - 1], g.cycles.lengths[j - 1])
            out[c.id] = Marking(i, j, (c.marking.k - 1 + extra) % gcd + 1)
    return out


def _inverted_marking(m: Marking, lengths: tuple[int, ...]) -> Marking:
    if m.i == m.j:
        return Marking(m.i, m.j, lengths[m.i - 1] - m.k)
    return Marking(m.j, m.i, m.k)


# ---------------------------------------------------------------------------
# Isotopy decision


@dataclass
class IsotopyResult:
    equal: bool
    witness: Optional[dict] = None
    flags: tuple[str, ...] = ()
    per_circle_vertices: tuple[int, ...] = ()
    choice_product: int = 1
    choice_bound: int = 0
    candidates_tried: int = 0

    def __bool__(self) -> bool:
        return self.equal


def _mixed_families(g: TraceGraph) -> list[tuple[frozenset, int]]:
    fams = {}
    for c in g.circles.values():
        i, j = c.comp_pair
        if i != j:
            fam = frozenset((i, j))
            fams[fam] = math.gcd(g.cycles.lengths[i - 1], g.cycles.lengths[j - 1])
    return sorted(fams.items(), key=lambda kv: sorted(kv[0]))


def _profiles(g: TraceGraph, budget: int):
    att = lv.attractor_profile(g)
    mx = lv.maximal_profile(g, budget)
    return att, mx


def isotopic(
    g1: TraceGraph,
    g2: TraceGraph,
    budget: Optional[int] = None,
    full_product: bool = False,
) -> IsotopyResult:
    """Decide isotopy of two labelled trace graphs in the thickened torus.

    Searches base-point shifts per circle, cyclic marking shifts per mixed
    component family, and the label-reversing/level-inverting reading that
    corresponds to the time shift by pi.  full_product certifies the pruned
    search by enumerating every base-point tuple.
    """
    budget = budget if budget is not None else comparison_budget()
    if g1.n != g2.n:
        raise ValueError(f"strand counts differ: {g1.n} vs {g2.n}")

    counts = sorted(k for k in g1.vertex_count_per_circle().values() if k)
    l_bound = max(len(g1.word), len(g2.word), 1)
    bound = (6 * l_bound) ** (g1.n * g1.n - g1.n)
    product = 1
    for k in counts:
        product *= k
    result = IsotopyResult(
        False, per_circle_vertices=tuple(counts),
        choice_product=product, choice_bound=bound,
    )

    if g1.cycles.lengths != g2.cycles.lengths or len(g1.vertices) != len(g2.vertices):
        return result
    if sorted(g1.vertex_count_per_circle().values()) != sorted(
        g2.vertex_count_per_circle().values()
    ):
        return result

    att1, mx1 = _profiles(g1, lv.CYCLE_BUDGET)
    att2, mx2 = _profiles(g2, lv.CYCLE_BUDGET)
    n = g1.n
    degenerate_everywhere = all(v is None for v in mx1.values())

    fams = _mixed_families(g1)
    tried = 0
    for invert in (False, True):
        lmap = (lambda k: k) if not invert else (lambda k: n - k)
        ok2 = all(att1[k] == att2[n - k if invert else k] for k in att1)
        ok3 = all(mx1[k] == mx2[n - k if invert else k] for k in mx1)
        if not (ok2 and ok3):
            continue
        for shifts in _shift_assignments(fams):
            tried += 1
            if tried > budget:
                raise BudgetExceeded(
                    f"comparison exceeded budget {budget}; bound {bound}"
                )
            match = _match_piece1(g1, g2, shifts, invert, full_product, budget)
            if match is None:
                continue
            free_ok = _free_circles_match(g1, g2, shifts, invert)
            if not free_ok:
                continue
            result.equal = True
            result.witness = {
                "marking_shifts": {tuple(sorted(f)): s for f, s in shifts.items()},
                "level_inversion": invert,
                "base_offsets": match,
            }
            result.candidates_tried = tried
            if degenerate_everywhere:
                result.flags = ("all-levels-degenerate",)
            return result
    result.candidates_tried = tried
    if degenerate_everywhere:
        result.flags = ("all-levels-degenerate",)
    return result


def _shift_assignments(fams) -> Iterator[dict[frozenset, int]]:
    if not fams:
        yield {}
        return
    fam, g = fams[0]
    for rest in _shift_assignments(fams[1:]):
        for s in range(g):
            out = dict(rest)
            out[fam] = s
            yield out


def _free_circles_match(g1, g2, shifts, invert) -> bool:
    def inventory(g, use_shifts, inverted):
        out = []
        marks = _marking_map(g, use_shifts)
        for c in g.circles.values():
            if g.edges[c.edges[0]].tail is not None:
                continue
            m = marks[c.id]
            lvl = g.edges[c.edges[0]].level
            if inverted:
                m = _inverted_marking(m, g.cycles.lengths)
                lvl = g.n - lvl
            out.append((m, lvl, c.dz_total, c.dt_winding))
        return sorted(out)

    return inventory(g1, {}, False) == inventory(g2, shifts, invert)


def _g2_marking_of(g2, c, shifts, invert):
    m = _marking_map(g2, shifts)[c.id]
    return _inverted_marking(m, g2.cycles.lengths) if invert else m


def _match_piece1(g1, g2, shifts, invert, full_product, budget) -> Optional[dict]:
    """Find base offsets for G2's circles making every vertex triplet match
    G1's (with G1 based at zero); None if impossible."""
    n = g1.n
    lmap2 = (lambda k: k) if not invert else (lambda k: n - k)

    by_marking1 = {}
    for c in g1.circles.values():
        if _circle_visits(g1, c):
            by_marking1[c.marking] = c
    by_marking2 = {}
    for c in g2.circles.values():
        if _circle_visits(g2, c):
            by_marking2[_g2_marking_of(g2, c, shifts, invert)] = c
    if set(by_marking1) != set(by_marking2):
        return None
    for m, c1 in by_marking1.items():
        if len(c1.edges) != len(by_marking2[m].edges):
            return None

    marks1 = {c.id: c.marking for c in g1.circles.values()}
    marks2 = {
        c.id: _g2_marking_of(g2, c, shifts, invert) for c in g2.circles.values()
    }

    trip1 = {
        v.id: vertex_triplet(g1, v, {}, marks1) for v in g1.vertices.values()
    }
    trip2raw = {
        v.id: vertex_triplet(g2, v, {}, marks2, lmap2) for v in g2.vertices.values()
    }

    visits1 = {c.id: _circle_visits(g1, c) for c in g1.circles.values()}
    visits2 = {c.id: _circle_visits(g2, c) for c in g2.circles.values()}

    if full_product:
        return _match_full_product(
            g1, g2, by_marking1, by_marking2, trip1, trip2raw, visits1, visits2, budget
        )

    components = _circle_components(g1, visits1)
    offsets: dict[Marking, int] = {}
    for comp in components:
        anchor_cid = min(comp, key=lambda cid: g1.circles[cid].marking)
        c2a = by_marking2[g1.circles[anchor_cid].marking]
        found = None
        for o in range(len(g1.circles[anchor_cid].edges)):
            trial = _propagate(
                g1, g2, by_marking1, by_marking2, trip1, trip2raw,
                visits1, visits2, anchor_cid, c2a.id, o,
            )
            if trial is not None:
                found = trial
                break
        if found is None:
            return None
        offsets.update(found)
    return {str(mk): off for mk, off in sorted(offsets.items())}


def _circle_components(g1, visits1) -> list[list[int]]:
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    vertex_circles: dict[int, list[int]] = {}
    for cid, vs in visits1.items():
        if not vs:
            continue
        parent[cid] = cid
        for v in vs:
            vertex_circles.setdefault(v, []).append(cid)
    for group in vertex_circles.values():
        for other in group[1:]:
            union(group[0], other)
    comps: dict[int, list[int]] = {}
    for cid in parent:
        comps.setdefault(find(cid), []).append(cid)
    return list(comps.values())


def _propagate(
    g1, g2, by_marking1, by_marking2, trip1, trip2raw, visits1, visits2,
    anchor1: int, anchor2: int, offset: int,
) -> Optional[dict]:
    """BFS from an anchored circle offset; returns marking -> offset for the
    whole incidence component, or None on any mismatch.  Triplet entries pin
    each vertex's visit coordinates on all three of its circles, so equality
    here is equivalent to full-product code equality on the component."""
    known: dict[int, int] = {anchor1: offset}
    pair_of: dict[int, int] = {anchor1: anchor2}
    queue = [anchor1]
    while queue:
        cid = queue.pop()
        c2 = g2.circles[pair_of[cid]]
        K = len(g1.circles[cid].edges)
        off = known[cid]
        vs2 = visits2[c2.id]
        for x, v1 in enumerate(visits1[cid]):
            v2 = vs2[(x + off) % K]
            for (m1, i1, l1), (m2, i2, l2) in zip(trip1[v1], trip2raw[v2]):
                if m1 != m2 or l1 != l2:
                    return None
                cc1 = by_marking1[m1]
                cc2 = by_marking2[m2]
                need = (i2 - i1) % len(cc1.edges)
                if cc1.id in known:
                    if known[cc1.id] != need or pair_of[cc1.id] != cc2.id:
                        return None
                else:
                    known[cc1.id] = need
                    pair_of[cc1.id] = cc2.id
                    queue.append(cc1.id)
    return {g1.circles[cid].marking: off for cid, off in known.items()}


def _match_full_product(
    g1, g2, by_marking1, by_marking2, trip1, trip2raw, visits1, visits2, budget
) -> Optional[dict]:
    """Certification mode: enumerate every base-offset tuple outright."""
    markings = sorted(by_marking1)
    sizes = [len(by_marking1[m].edges) for m in markings]
    total = 1
    for s in sizes:
        total *= s
    if total > budget:
        raise BudgetExceeded(f"full product {total} exceeds budget {budget}")

    def translate(v2, offs):
        out = []
        for m2, i2, l2 in trip2raw[v2]:
            c2 = by_marking2[m2]
            Kp = len(c2.edges)
            out.append((m2, (i2 - offs[m2] - 1) % Kp + 1, l2))
        return tuple(out)

    import itertools

    for combo in itertools.product(*(range(s) for s in sizes)):
        offs = dict(zip(markings, combo))
        ok = True
        for m in markings:
            c1 = by_marking1[m]
            c2 = by_marking2[m]
            K = len(c1.edges)
            for x, v1 in enumerate(visits1[c1.id]):
                v2 = visits2[c2.id][(x + offs[m]) % K]
                if trip1[v1] != translate(v2, offs):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return {str(m): offs[m] for m in markings}
    return None


# ---------------------------------------------------------------------------
# Trihedra and reduction


@dataclass(frozen=True)
class Trihedron:
    vertices: tuple[int, int]
    edges: tuple[int, ...]


def find_embedded_trihedra(g: TraceGraph) -> list[Trihedron]:
    """All embedded theta subgraphs: vertex pairs joined by >= 3 parallel
    edges, one trihedron per 3-subset.  Edge interiors are vertex-free by
    construction (edges are arcs between consecutive vertices), so every
    such subgraph is embedded."""
    import itertools

    groups: dict[frozenset, list[int]] = {}
    for e in g.edges.values():
        if e.tail is None or e.tail == e.head:
            continue
        groups.setdefault(frozenset((e.tail, e.head)), []).append(e.id)
    out = []
    for ends, eids in sorted(groups.items(), key=lambda kv: sorted(kv[0])):
        if len(eids) >= 3:
            v1, v2 = sorted(ends)
            for triple in itertools.combinations(sorted(eids), 3):
                out.append(Trihedron((v1, v2), triple))
    return out


class NotEliminable(ValueError):
    pass


def _validate_trihedron(g: TraceGraph, t: Trihedron) -> list[tuple[int, int, int]]:
    """Check that eliminating t is the inverse of a trihedral move; returns
    (edge, predecessor, successor) per connecting edge.

    A move creates two vertices joined by three short parallel arcs, so a
    removable trihedron must be contractible (any two of its edges cobound
    a disc in the torus: equal lift displacements) and its arcs carry the
    two-adjacent-levels pattern of a triple vertex, never a single level.
    """
    if len(t.edges) != 3:
        raise NotEliminable("a trihedron has exactly three edges")
    circles = {g.edges[e].circle for e in t.edges}
    if len(circles) != 3:
        raise NotEliminable("trihedron edges must lie on three distinct circles")
    e0, e1, e2 = (g.edges[e] for e in t.edges)
    if not (e0.tail == e1.tail == e2.tail and e0.head == e1.head == e2.head):
        raise NotEliminable("trihedron arcs must run jointly from one vertex to the other")
    for a, b in ((e0, e1), (e0, e2), (e1, e2)):
        if abs(a.dz - b.dz) > 1e-6 or abs(a.dt - b.dt) > 1e-6:
            raise NotEliminable("trihedron edges do not cobound discs")
    if e0.level == e1.level == e2.level:
        raise NotEliminable("trihedron arcs all carry one level")
    bottom = g.vertices[e0.tail]
    top = g.vertices[e0.head]
    if set(bottom.above) != set(t.edges) or set(top.below) != set(t.edges):
        raise NotEliminable("rotation data inconsistent: arcs do not fill one side")
    if bottom.above != top.below:
        raise NotEliminable("rotation data inconsistent: arrival order differs")
    v1, v2 = t.vertices
    plan = []
    outside = set()
    for eid in t.edges:
        e = g.edges[eid]
        if {e.tail, e.head} != {v1, v2}:
            raise NotEliminable("edge does not join the trihedron vertices")
        c = g.circles[e.circle]
        k = c.edges.index(eid)
        K = len(c.edges)
        pred = c.edges[(k - 1) % K]
        succ = c.edges[(k + 1) % K]
        if pred in t.edges or succ in t.edges:
            raise NotEliminable("circle enters the trihedron twice")
        ep, es = g.edges[pred], g.edges[succ]
        if ep.level != es.level:
            raise NotEliminable(
                f"outside levels disagree on circle {c.id}: {ep.level} vs {es.level}"
            )
        if pred != succ and (ep.tail in (v1, v2) or es.head in (v1, v2)):
            raise NotEliminable("outside edge folds back into the trihedron")
        outside.update((pred, succ))
        plan.append((eid, pred, succ))
    incident = set()
    for vid in (v1, v2):
        incident.update(g.vertices[vid].below)
        incident.update(g.vertices[vid].above)
    if not incident <= set(t.edges) | outside:
        raise NotEliminable("a further parallel edge would dangle")
    return plan


def is_eliminable(g: TraceGraph, t: Trihedron) -> bool:
    try:
        _validate_trihedron(g, t)
        return True
    except NotEliminable:
        return False


def eliminate_trihedron(g: TraceGraph, t: Trihedron) -> TraceGraph:
    """Remove the trihedron's two vertices and three edges, splicing each of
    the three circles through them into a single edge with summed lift
    displacements.  The outside levels per circle must agree."""
    g = g.copy()
    _eliminate_inplace(g, t)
    return g


def _eliminate_inplace(
    g: TraceGraph, t: Trihedron
) -> tuple[list[tuple[int, int, int]], list[int]]:
    removed: list[tuple[int, int, int]] = []
    added: list[int] = []
    plan = _validate_trihedron(g, t)
    v1, v2 = t.vertices
    for eid, pred, succ in plan:
        e = g.edges[eid]
        c = g.circles[e.circle]
        ep, es = g.edges[pred], g.edges[succ]
        new_id = max(g.edges) + 1
        if pred == succ:
            # the circle had only this edge outside; it closes into a loop
            merged = TraceEdge(
                new_id, None, None,
                ep.dz + e.dz, ep.dt + e.dt, ep.level, c.id, e.pair,
            )
            g.edges[new_id] = merged
            removed.append((eid, e.tail, e.head))
            removed.append((pred, ep.tail, ep.head))
            del g.edges[eid], g.edges[pred]
            g.circles[c.id] = replace(c, edges=(new_id,))
            added.append(new_id)
        else:
            merged = TraceEdge(
                new_id, ep.tail, es.head,
                ep.dz + e.dz + es.dz, ep.dt + e.dt + es.dt,
                ep.level, c.id, e.pair,
                tail_pair=ep.tail_pair, head_pair=es.head_pair,
            )
            g.edges[new_id] = merged
            # rewire rotation data at the surviving endpoints
            for vid, old in ((ep.tail, pred), (es.head, succ)):
                v = g.vertices[vid]
                v.below = tuple(new_id if x == old else x for x in v.below)
                v.above = tuple(new_id if x == old else x for x in v.above)
            removed.append((eid, e.tail, e.head))
            removed.append((pred, ep.tail, ep.head))
            removed.append((succ, es.tail, es.head))
            del g.edges[eid], g.edges[pred], g.edges[succ]
            # keep cyclic order: the merged edge takes pred's position
            ordered = []
            for x in c.edges:
                if x == pred:
                    ordered.append(new_id)
                elif x in (eid, succ):
                    continue
                else:
                    ordered.append(x)
            g.circles[c.id] = replace(c, edges=tuple(ordered))
            added.append(new_id)
    del g.vertices[v1], g.vertices[v2]
    g.vertex_partner.pop(v1, None)
    g.vertex_partner.pop(v2, None)
    g.edge_partner = {}
    return removed, added


def reduce(
    g: TraceGraph,
    rng=None,
) -> TraceGraph:
    """Eliminate embedded trihedra until none remain.  Deterministic order
    (lexicographically smallest vertex coordinates first) unless an rng is
    given, in which case the elimination order is random."""
    import itertools

    original = g.num_vertices
    work = g.copy()

    # incremental index of parallel edges between vertex pairs; the full
    # graph is scanned once, later only spliced edges update it
    pair_edges: dict[frozenset, set[int]] = {}
    hot: set[frozenset] = set()  # pairs with >= 3 parallel edges

    def register(eid: int):
        e = work.edges[eid]
        if e.tail is not None and e.tail != e.head:
            key = frozenset((e.tail, e.head))
            group = pair_edges.setdefault(key, set())
            group.add(eid)
            if len(group) >= 3:
                hot.add(key)

    def unregister(eid: int, key: frozenset):
        group = pair_edges.get(key)
        if group:
            group.discard(eid)
            if len(group) < 3:
                hot.discard(key)
            if not group:
                del pair_edges[key]

    for eid in work.edges:
        register(eid)

    def pair_key(k: frozenset):
        return min(
            (round(work.vertices[v].z, 9), round(work.vertices[v].t, 9)) for v in k
        )

    def eliminable_in(key: frozenset) -> Optional[Trihedron]:
        v1, v2 = sorted(key)
        for triple in itertools.combinations(sorted(pair_edges[key]), 3):
            t = Trihedron((v1, v2), triple)
            if is_eliminable(work, t):
                return t
        return None

    while True:
        candidates = list(hot)
        if rng is None:
            candidates.sort(key=pair_key)
        else:
            rng.shuffle(candidates)
        chosen = None
        for key in candidates:
            chosen = eliminable_in(key)
            if chosen is not None:
                break
        if chosen is None:
            break
        removed, added = _eliminate_inplace(work, chosen)
        for eid, tail, head in removed:
            if tail is not None and tail != head:
                unregister(eid, frozenset((tail, head)))
        for eid in added:
            register(eid)
    work.reduced_from = original
    _rebuild_symmetry(work)
    return work


def _rebuild_symmetry(g: TraceGraph) -> None:
    """Best-effort t+pi pairing of the survivors.

    Overlapping trihedra let a reduction run retain different vertices on
    the two symmetric sides (the results are isotopic, not pointwise
    symmetric), so vertices and edges without a literal partner simply
    drop out of the pairing; nothing downstream of reduction consults it
    except diagnostics."""
    vertex_partner = {}
    for a, b in list(g.vertex_partner.items()):
        if a in g.vertices and b in g.vertices:
            vertex_partner[a] = b
    g.vertex_partner = vertex_partner
    edge_partner = {}
    for c in g.circles.values():
        pc = g.circles[g.circle_partner[c.id]]
        visits = _circle_visits(g, c)
        pvisits = _circle_visits(g, pc)
        if not visits:
            if not pvisits and len(pc.edges) == len(c.edges) == 1:
                edge_partner[c.edges[0]] = pc.edges[0]
            continue
        if any(v not in vertex_partner for v in visits):
            continue
        expected = [vertex_partner[v] for v in visits]
        K = len(visits)
        if len(pvisits) != K:
            continue
        for s in range(K):
            if all(pvisits[(x + s) % K] == expected[x] for x in range(K)):
                for x in range(K):
                    edge_partner[c.edges[x]] = pc.edges[(x + s) % K]
                break
    g.edge_partner = edge_partner


def equivalent_up_to_trihedral(
    g1: TraceGraph, g2: TraceGraph, budget: Optional[int] = None,
    full_product: bool = False,
) -> IsotopyResult:
    """Equivalence up to isotopy in the thickened torus and trihedral moves:
    isotopy of the reduced graphs."""
    return isotopic(reduce(g1), reduce(g2), budget, full_product)

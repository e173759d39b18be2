"""Level subgraphs, right attractors, and homology of their cycles.

A level subgraph is trivalent: at each of its vertices one edge goes down
and two go up, or vice versa.  Orienting all edges upward, the walk that
always leaves a two-up vertex through the end on the smaller-t side (the
right side once the torus is drawn with its horizontal axis opposite to
the time circle) is eventually periodic; its limit cycles are the right
attractors.  Homology classes live in Z^2 as (vertical winding, winding
opposite to the time circle) = (sum dz, -sum dt / 2pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .tracegraph import TraceGraph

TWO_PI = 2.0 * math.pi

CYCLE_BUDGET = 10**6


class CycleBudgetError(RuntimeError):
    pass


class DegenerateSubgraphError(ValueError):
    pass


class MaximalClassError(RuntimeError):
    """No non-trivial cycle achieves M != 0; flagged, never silently handled."""


HomologyClass = tuple[int, int]


@dataclass(frozen=True)
class LevelSubgraph:
    level: int
    graph: TraceGraph
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    down_of: dict  # vertex -> tuple of level-k edges descending from it, increasing t
    up_of: dict    # vertex -> tuple of level-k edges rising from it, increasing t
    loops: tuple[int, ...]  # closed-loop edges (vertex-free circles) of this level


@dataclass(frozen=True)
class RightAttractor:
    edges: tuple[int, ...]  # cyclic, all traversed upward
    homology: HomologyClass


def level_subgraph(g: TraceGraph, k: int) -> LevelSubgraph:
    if not 1 <= k <= g.n - 1:
        raise ValueError(f"level {k} out of range 1..{g.n - 1}")
    edges = tuple(sorted(e.id for e in g.edges.values() if e.level == k))
    eset = set(edges)
    down_of = {}
    up_of = {}
    vertices = []
    for v in g.vertices.values():
        down = tuple(e for e in v.below if e in eset)
        up = tuple(e for e in v.above if e in eset)
        if not down and not up:
            continue
        if len(down) + len(up) != 3 or not (len(down) in (1, 2)):
            raise ValueError(
                f"vertex {v.id} violates trivalence in level {k}: "
                f"{len(down)} down, {len(up)} up"
            )
        vertices.append(v.id)
        down_of[v.id] = down
        up_of[v.id] = up
    loops = tuple(e for e in edges if g.edges[e].tail is None)
    return LevelSubgraph(k, g, edges, tuple(vertices), down_of, up_of, loops)


def _edge_class(g: TraceGraph, edges: list[tuple[int, int]]) -> HomologyClass:
    """Homology class of a directed edge cycle; entries are (edge id, +-1)."""
    u = sum(d * g.edges[e].dz for e, d in edges)
    w = -sum(d * g.edges[e].dt for e, d in edges) / TWO_PI
    ru, rw = round(u), round(w)
    assert abs(u - ru) < 1e-6 and abs(w - rw) < 1e-6, "cycle class is not integral"
    return (ru, rw)


def right_attractors(s: LevelSubgraph) -> list[RightAttractor]:
    """All limit cycles of the deterministic upward walk, plus every
    vertex-free circle of the level; pairwise disjoint, vertical winding > 0."""
    g = s.graph

    def successor(e: int) -> int:
        head = g.edges[e].head
        ups = s.up_of[head]
        # v.above is ordered by increasing local t; right = smaller t
        return ups[0]

    attractors = []
    seen_cycle_edges = set()
    state: dict[int, int] = {}  # 0 in progress, 1 done
    for start in s.edges:
        if g.edges[start].tail is None or start in state:
            continue
        path = []
        pos = {}
        e = start
        while e not in state and e not in pos:
            pos[e] = len(path)
            path.append(e)
            e = successor(e)
        if e in pos:  # new limit cycle
            cyc = path[pos[e]:]
            m = cyc.index(min(cyc))
            cyc = cyc[m:] + cyc[:m]
            cls = _edge_class(g, [(x, 1) for x in cyc])
            assert cls[0] > 0, "attractor must wind positively in z"
            assert not seen_cycle_edges & set(cyc)
            seen_cycle_edges.update(cyc)
            attractors.append(RightAttractor(tuple(cyc), cls))
        for x in path:
            state[x] = 1
    for e in s.loops:
        cls = _edge_class(g, [(e, 1)])
        assert cls[0] > 0
        attractors.append(RightAttractor((e,), cls))
    attractors.sort(key=lambda a: a.edges)
    return attractors


def simple_cycles(
    s: LevelSubgraph, budget: int = CYCLE_BUDGET
) -> list[list[tuple[int, int]]]:
    """All simple cycles of the level subgraph as directed edge lists
    (edge id, +1 upward / -1 downward), each listed once.

    Closed loops and parallel-edge pairs are special-cased; longer cycles
    come from a rooted DFS over the underlying multigraph.  A naive DFS is
    tried first; if its node count explodes (sparse-cycle graphs can have
    huge dead path spaces) the search restarts with root-reachability
    pruning, which is output-bounded.  The budget caps listed cycles.
    """
    g = s.graph
    out: list[list[tuple[int, int]]] = []

    def emit(cyc) -> None:
        out.append(cyc)
        if len(out) > budget:
            raise CycleBudgetError(f"cycle enumeration exceeded budget {budget}")

    for e in s.loops:
        emit([(e, 1)])

    by_ends: dict[frozenset, list[int]] = {}
    for e in s.edges:
        te, he = g.edges[e].tail, g.edges[e].head
        if te is None:
            continue
        if te == he:
            emit([(e, 1)])
        else:
            by_ends.setdefault(frozenset((te, he)), []).append(e)
    for ends, group in sorted(by_ends.items(), key=lambda kv: kv[1]):
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                ea, eb = group[a], group[b]
                if g.edges[ea].tail == g.edges[eb].tail:
                    emit([(ea, 1), (eb, -1)])
                else:
                    emit([(ea, 1), (eb, 1)])

    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in s.vertices}
    for e in s.edges:
        te, he = g.edges[e].tail, g.edges[e].head
        if te is None or te == he:
            continue
        adj[te].append((e, he, 1))
        adj[he].append((e, te, -1))

    base = len(out)
    try:
        _dfs_cycles(adj, emit, prune=False)
    except _NodeCapExceeded:
        del out[base:]
        _dfs_cycles(adj, emit, prune=True)
    return out


class _NodeCapExceeded(Exception):
    pass


_NODE_CAP = 2_000_000


def _dfs_cycles(adj, emit, prune: bool) -> None:
    """Vertex-simple cycles of length >= 3, each rooted at its smallest
    vertex and emitted in one direction (first edge id < closing edge id)."""
    nodes = 0

    def reachable(src: int, root: int, visited: set) -> bool:
        if src == root:
            return True
        seen = {src}
        stack = [src]
        while stack:
            v = stack.pop()
            for _, other, _ in adj[v]:
                if other == root:
                    return True
                if other not in seen and other not in visited:
                    seen.add(other)
                    stack.append(other)
        return False

    path: list[tuple[int, int]] = []

    def dfs(root, v, first_edge, visited):
        nonlocal nodes
        nodes += 1
        if not prune and nodes > _NODE_CAP:
            raise _NodeCapExceeded
        depth = len(path)
        for e, other, d in adj[v]:
            if e == first_edge and depth == 1:
                continue
            if other == root:
                if depth >= 2 and first_edge < e:
                    emit(path + [(e, d)])
                continue
            if other in visited or other < root:
                continue
            if prune and not reachable(other, root, visited):
                continue
            visited.add(other)
            path.append((e, d))
            dfs(root, other, first_edge, visited)
            path.pop()
            visited.remove(other)

    for root in sorted(adj):
        for e, other, d in adj[root]:
            if other <= root:
                continue
            path.clear()
            path.append((e, d))
            dfs(root, other, e, {root, other})


def oriented_class(cls: HomologyClass) -> HomologyClass:
    """Orient so the vertical winding is non-negative (then the horizontal)."""
    u, w = cls
    if u < 0 or (u == 0 and w < 0):
        return (-u, -w)
    return (u, w)


def cycle_classes(s: LevelSubgraph, budget: int = CYCLE_BUDGET) -> set[HomologyClass]:
    """Homology classes of all simple cycles, oriented canonically; the class
    (0,0) marks trivial cycles (they bound discs in the torus)."""
    out = set()
    for cyc in simple_cycles(s, budget):
        out.add(oriented_class(_edge_class(s.graph, cyc)))
    return out


def fundamental_classes(s: LevelSubgraph) -> list[HomologyClass]:
    """Classes of the fundamental cycles of a spanning forest, plus closed
    loops and self loops.  Fundamental cycles are simple and span the whole
    class lattice of the subgraph."""
    g = s.graph
    classes: list[HomologyClass] = []
    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in s.vertices}
    plain = []
    for e in s.edges:
        te, he = g.edges[e].tail, g.edges[e].head
        if te is None or te == he:
            classes.append(_edge_class(g, [(e, 1)]))
            continue
        plain.append(e)
        adj[te].append((e, he, 1))
        adj[he].append((e, te, -1))
    # spanning forest with (z, t) potentials from each component root
    pot: dict[int, tuple[float, float]] = {}
    in_tree: set[int] = set()
    for start in s.vertices:
        if start in pot:
            continue
        pot[start] = (0.0, 0.0)
        stack = [start]
        while stack:
            v = stack.pop()
            for e, other, d in adj[v]:
                if other in pot or e in in_tree:
                    continue
                edge = g.edges[e]
                pot[other] = (pot[v][0] + d * edge.dz, pot[v][1] + d * edge.dt)
                in_tree.add(e)
                stack.append(other)
    for e in plain:
        if e in in_tree:
            continue
        edge = g.edges[e]
        u = pot[edge.tail][0] + edge.dz - pot[edge.head][0]
        w = -(pot[edge.tail][1] + edge.dt - pot[edge.head][1]) / TWO_PI
        ru, rw = round(u), round(w)
        assert abs(u - ru) < 1e-6 and abs(w - rw) < 1e-6
        classes.append((ru, rw))
    return classes


def is_degenerate(s: LevelSubgraph, budget: int = CYCLE_BUDGET) -> bool:
    """True when all non-trivial cycle classes are pairwise dependent.

    Decided from fundamental classes: they are simple cycles themselves and
    span the class lattice, so the simple-cycle classes have rank >= 2
    exactly when the fundamental ones do."""
    base: Optional[HomologyClass] = None
    for cls in fundamental_classes(s):
        if cls == (0, 0):
            continue
        if base is None:
            base = cls
        elif base[0] * cls[1] - base[1] * cls[0] != 0:
            return False
    return True


def is_degenerate_by_enumeration(s: LevelSubgraph, budget: int = CYCLE_BUDGET) -> bool:
    """Reference implementation over an explicit simple-cycle sweep."""
    base: Optional[HomologyClass] = None
    for cyc in simple_cycles(s, budget):
        cls = oriented_class(_edge_class(s.graph, cyc))
        if cls == (0, 0):
            continue
        if base is None:
            base = cls
        elif base[0] * cls[1] - base[1] * cls[0] != 0:
            return False
    return True


def maximal_class(
    s: LevelSubgraph,
    attractor_class: HomologyClass,
    budget: int = CYCLE_BUDGET,
) -> HomologyClass:
    """The maximal homology class of a non-degenerate level subgraph: among
    non-trivial cycle classes, maximise M = u/q - w/r (M = w when r = 0) over
    exact rationals, breaking ties by the vertical number u."""
    q, r = attractor_class
    assert q > 0
    classes = {c for c in cycle_classes(s, budget) if c != (0, 0)}
    if not classes:
        raise DegenerateSubgraphError("no non-trivial cycles")
    base = next(iter(classes))
    if all(base[0] * c[1] - base[1] * c[0] == 0 for c in classes):
        raise DegenerateSubgraphError("degenerate level subgraph has no maximal class")

    def m_value(c: HomologyClass) -> Fraction:
        u, w = c
        if r == 0:
            return Fraction(w)
        return Fraction(u, q) - Fraction(w, r)

    nonzero = [c for c in classes if m_value(c) != 0]
    if not nonzero:
        raise MaximalClassError("all non-trivial cycles have M = 0")
    best_m = max(m_value(c) for c in nonzero)
    candidates = [c for c in nonzero if m_value(c) == best_m]
    return max(candidates, key=lambda c: c[0])


def attractor_profile(g: TraceGraph) -> dict[int, tuple[HomologyClass, ...]]:
    """Sorted attractor classes per level (the trace code's second piece)."""
    out = {}
    for k in range(1, g.n):
        s = level_subgraph(g, k)
        out[k] = tuple(sorted(a.homology for a in right_attractors(s)))
    return out


def maximal_profile(g: TraceGraph, budget: int = CYCLE_BUDGET) -> dict[int, Optional[HomologyClass]]:
    """Maximal class per level; None marks a degenerate level (the trace
    code's third piece omits those)."""
    out = {}
    for k in range(1, g.n):
        s = level_subgraph(g, k)
        if is_degenerate(s, budget):
            out[k] = None
            continue
        attractors = right_attractors(s)
        classes = sorted({a.homology for a in attractors})
        out[k] = maximal_class(s, classes[0], budget)
    return out

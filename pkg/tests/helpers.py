"""Independent brute-force oracles and corpus utilities for the tests.

The cycle enumerators here deliberately use different algorithms from the
package (Johnson's blocked search on the directed double cover, and plain
edge-subset enumeration for tiny graphs) so that agreement is meaningful.
"""

from __future__ import annotations

import math
from fractions import Fraction

TWO_PI = 2.0 * math.pi


def _arc_adjacency(s):
    g = s.graph
    adj = {v: [] for v in s.vertices}
    loops = []
    selfloops = []
    for e in s.edges:
        te, he = g.edges[e].tail, g.edges[e].head
        if te is None:
            loops.append(e)
        elif te == he:
            selfloops.append(e)
        else:
            adj[te].append((e, he, 1))
            adj[he].append((e, te, -1))
    return adj, loops, selfloops


def _cls(g, edges):
    u = sum(d * g.edges[e].dz for e, d in edges)
    w = -sum(d * g.edges[e].dt for e, d in edges) / TWO_PI
    ru, rw = round(u), round(w)
    assert abs(u - ru) < 1e-6 and abs(w - rw) < 1e-6
    if ru < 0 or (ru == 0 and rw < 0):
        ru, rw = -ru, -rw
    return (ru, rw)


def johnson_cycle_classes(s) -> set[tuple[int, int]]:
    """Oriented homology classes of all simple cycles, via Johnson's blocked
    search over directed arcs (each undirected cycle is found in both
    directions; classes orient canonically so the set is unaffected)."""
    g = s.graph
    adj, loops, selfloops = _arc_adjacency(s)
    classes = {_cls(g, [(e, 1)]) for e in loops}
    classes |= {_cls(g, [(e, 1)]) for e in selfloops}

    vertices = sorted(adj)
    for idx, start in enumerate(vertices):
        allowed = set(vertices[idx:])
        blocked = {v: False for v in allowed}
        bsets = {v: set() for v in allowed}
        path = []

        def unblock(v):
            blocked[v] = False
            for w in list(bsets[v]):
                bsets[v].discard(w)
                if blocked[w]:
                    unblock(w)

        def circuit(v) -> bool:
            found = False
            blocked[v] = True
            for e, w, d in adj[v]:
                if w not in allowed:
                    continue
                if w == start:
                    if len(path) == 1 and path[0][0] == e:
                        continue  # same edge back and forth is not a cycle
                    classes.add(_cls(g, path + [(e, d)]))
                    found = True
                elif not blocked[w]:
                    path.append((e, d))
                    if circuit(w):
                        found = True
                    path.pop()
            if found:
                unblock(v)
            else:
                for e, w, d in adj[v]:
                    if w in allowed:
                        bsets[w].add(v)
            return found

        for e, w, d in adj[start]:
            if w == start or w not in allowed:
                continue
            path.append((e, d))
            circuit(w)
            path.pop()
            for v in allowed:
                blocked[v] = False
                bsets[v].clear()
    return classes


def subset_cycle_classes(s) -> set[tuple[int, int]]:
    """Homology classes of all simple cycles by checking every edge subset;
    exponential, for tiny subgraphs only."""
    g = s.graph
    plain = []
    classes = set()
    for e in s.edges:
        te, he = g.edges[e].tail, g.edges[e].head
        if te is None or te == he:
            classes.add(_cls(g, [(e, 1)]))
        else:
            plain.append(e)
    m = len(plain)
    assert m <= 20, "subset oracle is for tiny graphs"
    for mask in range(1, 1 << m):
        edges = [plain[i] for i in range(m) if mask >> i & 1]
        deg: dict[int, int] = {}
        for e in edges:
            deg[g.edges[e].tail] = deg.get(g.edges[e].tail, 0) + 1
            deg[g.edges[e].head] = deg.get(g.edges[e].head, 0) + 1
        if any(d != 2 for d in deg.values()):
            continue
        if not _connected(g, edges):
            continue
        classes.add(_cls(g, _orient_cycle(g, edges)))
    return classes


def _connected(g, edges) -> bool:
    verts = {g.edges[edges[0]].tail, g.edges[edges[0]].head}
    pool = list(edges[1:])
    changed = True
    while changed and pool:
        changed = False
        for e in list(pool):
            te, he = g.edges[e].tail, g.edges[e].head
            if te in verts or he in verts:
                verts.update((te, he))
                pool.remove(e)
                changed = True
    return not pool


def _orient_cycle(g, edges):
    """Walk a degree-2 edge set into a directed traversal."""
    incident: dict[int, list[int]] = {}
    for e in edges:
        incident.setdefault(g.edges[e].tail, []).append(e)
        incident.setdefault(g.edges[e].head, []).append(e)
    e0 = edges[0]
    walk = [(e0, 1)]
    used = {e0}
    cur = g.edges[e0].head
    while len(walk) < len(edges):
        nxt = next(e for e in incident[cur] if e not in used)
        used.add(nxt)
        if g.edges[nxt].tail == cur:
            walk.append((nxt, 1))
            cur = g.edges[nxt].head
        else:
            walk.append((nxt, -1))
            cur = g.edges[nxt].tail
    return walk


def brute_maximal_class(s, attractor_class, classes=None):
    """Maximal homology class recomputed from an independent cycle sweep."""
    q, r = attractor_class
    if classes is None:
        classes = johnson_cycle_classes(s)
    nontrivial = [c for c in classes if c != (0, 0)]
    assert nontrivial

    def m_value(c):
        if r == 0:
            return Fraction(c[1])
        return Fraction(c[0], q) - Fraction(c[1], r)

    nonzero = [c for c in nontrivial if m_value(c) != 0]
    best = max(m_value(c) for c in nonzero)
    return max((c for c in nonzero if m_value(c) == best), key=lambda c: c[0])

import pytest
from helpers import brute_maximal_class, johnson_cycle_classes, subset_cycle_classes

from braidtrace import levels as lv
from braidtrace.tracegraph import build_trace_graph
from braidtrace.words import iter_reduced_words, parse_word

# frozen witnesses from scripts/scan_nondegenerate.py
NONDEG_WITNESS = ("s1 s2", 4, 2)       # word, strands, level with two independent classes
NONDEG_WITNESS_R0 = ("s1 s3", 4, 1)    # attractor class (1,0): the r=0 branch of M


class TestLevelSubgraph:
    def test_b2_whole_graph_no_vertices(self):
        g = build_trace_graph(parse_word("s1 s1", 2))
        s = lv.level_subgraph(g, 1)
        assert set(s.edges) == set(g.edges)
        assert s.vertices == ()
        assert len(s.loops) == 2

    def test_b3_levels_partition_edges(self):
        g = build_trace_graph(parse_word("s1 s2^-1", 3))
        s1, s2 = lv.level_subgraph(g, 1), lv.level_subgraph(g, 2)
        assert sorted(s1.edges + s2.edges) == sorted(g.edges)

    def test_b4_far_levels_share_no_vertex(self):
        g = build_trace_graph(parse_word("s2 s3 s3 s2", 4))
        s1, s3 = lv.level_subgraph(g, 1), lv.level_subgraph(g, 3)
        assert not set(s1.vertices) & set(s3.vertices)

    def test_trivalence(self):
        g = build_trace_graph(parse_word("(s1 s2^-1)^3", 3))
        for k in (1, 2):
            s = lv.level_subgraph(g, k)
            for v in s.vertices:
                down, up = len(s.down_of[v]), len(s.up_of[v])
                assert down + up == 3 and down in (1, 2)

    def test_out_of_range(self):
        g = build_trace_graph(parse_word("s1", 3))
        with pytest.raises(ValueError):
            lv.level_subgraph(g, 3)


class TestRightAttractors:
    def test_vertex_free_circles_are_attractors(self):
        g = build_trace_graph(parse_word("s1 s1", 2))
        ats = lv.right_attractors(lv.level_subgraph(g, 1))
        assert len(ats) == 2
        assert {a.homology for a in ats} == {(1, -1)}

    def test_positive_vertical_winding(self):
        for text, n in (("s1", 3), ("(s1 s2^-1)^3", 3), ("s2 s3 s3 s2", 4)):
            g = build_trace_graph(parse_word(text, n))
            for k in range(1, n):
                for a in lv.right_attractors(lv.level_subgraph(g, k)):
                    assert a.homology[0] > 0

    def test_walks_merge(self):
        # deterministic successor map: the attractor set never depends on
        # where the walk starts, and attractors are pairwise vertex-disjoint
        g = build_trace_graph(parse_word("s1 s2 s1 s2^-1", 3))
        for k in (1, 2):
            s = lv.level_subgraph(g, k)
            ats = lv.right_attractors(s)
            seen = set()
            for a in ats:
                verts = {g.edges[e].tail for e in a.edges if g.edges[e].tail is not None}
                assert not verts & seen
                seen |= verts


class TestCycleClasses:
    def test_single_cycle_subgraph_degenerate(self):
        g = build_trace_graph(parse_word("s1", 2))
        s = lv.level_subgraph(g, 1)
        assert len(lv.simple_cycles(s)) == 1
        assert lv.is_degenerate(s)

    def test_vertex_free_subgraph_degenerate(self):
        g = build_trace_graph(parse_word("s1 s1", 2))
        assert lv.is_degenerate(lv.level_subgraph(g, 1))

    def test_nondegenerate_witness(self):
        text, n, k = NONDEG_WITNESS
        g = build_trace_graph(parse_word(text, n))
        s = lv.level_subgraph(g, k)
        assert not lv.is_degenerate(s)
        classes = lv.cycle_classes(s) - {(0, 0)}
        a, *rest = sorted(classes)
        assert any(a[0] * c[1] - a[1] * c[0] != 0 for c in rest)

    def test_rank_shortcut_matches_enumeration(self):
        for l in range(0, 5):
            for w in iter_reduced_words(3, l):
                g = build_trace_graph(w)
                for k in (1, 2):
                    s = lv.level_subgraph(g, k)
                    assert lv.is_degenerate(s) == lv.is_degenerate_by_enumeration(s)

    def test_budget_error(self):
        text, n, k = NONDEG_WITNESS
        g = build_trace_graph(parse_word(text, n))
        s = lv.level_subgraph(g, k)
        with pytest.raises(lv.CycleBudgetError):
            lv.simple_cycles(s, budget=1)

    def test_class_sets_match_independent_enumerations(self):
        for text, n in (("s1 s2", 4), ("s1 s2^-1 s1", 3), ("s2 s3 s3 s2", 4)):
            g = build_trace_graph(parse_word(text, n))
            for k in range(1, n):
                s = lv.level_subgraph(g, k)
                mine = {lv.oriented_class(lv._edge_class(g, c)) for c in lv.simple_cycles(s)}
                assert mine == johnson_cycle_classes(s)
                if len(s.edges) <= 16:
                    assert mine == subset_cycle_classes(s)


class TestMaximalClass:
    def test_degenerate_input_rejected(self):
        g = build_trace_graph(parse_word("s1", 2))
        s = lv.level_subgraph(g, 1)
        with pytest.raises(lv.DegenerateSubgraphError):
            lv.maximal_class(s, (1, -1))

    def test_r_zero_maximises_w(self):
        text, n, k = NONDEG_WITNESS_R0
        g = build_trace_graph(parse_word(text, n))
        s = lv.level_subgraph(g, k)
        ats = {a.homology for a in lv.right_attractors(s)}
        assert ats == {(1, 0)}
        got = lv.maximal_class(s, (1, 0))
        classes = lv.cycle_classes(s) - {(0, 0)}
        best_w = max(w for _, w in classes if w != 0)
        assert got[1] == best_w
        assert got[0] == max(u for u, w in classes if w == best_w)

    def test_agrees_with_brute_force_on_witness(self):
        text, n, k = NONDEG_WITNESS
        g = build_trace_graph(parse_word(text, n))
        s = lv.level_subgraph(g, k)
        att = sorted({a.homology for a in lv.right_attractors(s)})[0]
        assert lv.maximal_class(s, att) == brute_maximal_class(s, att)

    def test_profiles_levels_complete(self):
        g = build_trace_graph(parse_word("(s1 s2^-1)^3", 3))
        att = lv.attractor_profile(g)
        assert sorted(att) == [1, 2]
        assert all(att[k] for k in att)
        mx = lv.maximal_profile(g)
        assert mx == {1: (1, 3), 2: (1, 3)}


class TestSymmetryOfLevels:
    def test_level_subgraphs_swap_under_involution(self):
        g = build_trace_graph(parse_word("s2 s3 s3 s2", 4))
        for k in range(1, 4):
            s = lv.level_subgraph(g, k)
            imgs = {g.edge_partner[e] for e in s.edges}
            assert imgs == set(lv.level_subgraph(g, 4 - k).edges)

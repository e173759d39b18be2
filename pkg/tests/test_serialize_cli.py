import json
import subprocess
import sys

import pytest

from braidtrace import equivalence as eq
from braidtrace.serialize import (
    SchemaError,
    canonical_json,
    document_to_graph,
    graph_to_document,
    to_dot,
)
from braidtrace.tracegraph import build_trace_graph
from braidtrace.words import BraidWord, parse_word


class TestDocuments:
    @pytest.mark.parametrize(
        "text,n", [("s1", 3), ("", 2), ("(s1 s2^-1)^3", 3), ("s2 s3 s3 s2", 4)]
    )
    def test_round_trip_bytes(self, text, n):
        g = build_trace_graph(parse_word(text, n) if text else BraidWord(n))
        first = canonical_json(graph_to_document(g))
        loaded = document_to_graph(json.loads(first))
        second = canonical_json(graph_to_document(loaded))
        assert first == second

    def test_loaded_graph_is_equivalent(self):
        g = build_trace_graph(parse_word("s1 s2^-1", 3))
        loaded = document_to_graph(json.loads(canonical_json(graph_to_document(g))))
        assert loaded.pass_circle == g.pass_circle
        assert loaded.vertex_partner == g.vertex_partner
        assert {e: loaded.edges[e].level for e in loaded.edges} == {
            e: g.edges[e].level for e in g.edges
        }
        assert eq.isotopic(g, loaded)

    def test_loaded_graph_supports_reduction(self, borromean_graphs):
        _, g2 = borromean_graphs
        loaded = document_to_graph(json.loads(canonical_json(graph_to_document(g2))))
        assert eq.reduce(loaded).num_vertices == 12

    def test_schema_version_checked(self):
        g = build_trace_graph(parse_word("s1", 3))
        doc = graph_to_document(g)
        doc["schema"] = 99
        with pytest.raises(SchemaError):
            document_to_graph(doc)

    def test_referential_integrity_checked(self):
        g = build_trace_graph(parse_word("s1", 3))
        doc = graph_to_document(g)
        doc["edges"] = doc["edges"][:-1]
        with pytest.raises(SchemaError):
            document_to_graph(doc)

    def test_dot_deterministic(self):
        g = build_trace_graph(parse_word("s1 s2", 3))
        assert to_dot(g) == to_dot(g)
        assert to_dot(g).startswith("digraph")


def run_cli(*args, env=None):
    import os

    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "braidtrace", *args],
        capture_output=True,
        text=True,
        env=full_env,
    )


class TestCli:
    def test_build_and_vertex_count(self, tmp_path):
        out = tmp_path / "a.json"
        r = run_cli("build", "--word", "s1", "--strands", "3", "--out", str(out))
        assert r.returncode == 0
        doc = json.loads(out.read_text())
        assert len(doc["vertices"]) == 2

    def test_build_empty_word(self, tmp_path):
        out = tmp_path / "e.json"
        r = run_cli("build", "--word", "", "--strands", "2", "--out", str(out))
        assert r.returncode == 0
        assert json.loads(out.read_text())["vertices"] == []

    def test_build_bad_word_exits_2(self, tmp_path):
        r = run_cli("build", "--word", "s9", "--strands", "3",
                    "--out", str(tmp_path / "x.json"))
        assert r.returncode == 2

    def test_compare_modes_and_exit_codes(self, tmp_path):
        a, b, t = (tmp_path / x for x in ("a.json", "b.json", "t.json"))
        run_cli("build", "--word", "(s1 s2^-1)^3", "--out", str(a))
        run_cli("build", "--word", "s1^2 s2^2 s1^-2 s2^-2", "--out", str(b))
        run_cli("build", "--word", "", "--strands", "3", "--out", str(t))
        r = run_cli("compare", str(a), str(b), "--mode", "trihedral")
        assert r.returncode == 0
        assert "k_i" in r.stdout and "bound" in r.stdout
        r = run_cli("compare", str(a), str(t), "--mode", "trihedral")
        assert r.returncode == 1
        r = run_cli("compare", str(a), str(b), "--mode", "isotopy")
        assert r.returncode == 1  # unreduced graphs differ by the two thetas

    def test_compare_mismatched_strands_exits_2(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run_cli("build", "--word", "s1", "--strands", "2", "--out", str(a))
        run_cli("build", "--word", "s1", "--strands", "3", "--out", str(b))
        assert run_cli("compare", str(a), str(b)).returncode == 2

    def test_budget_env_var(self, tmp_path):
        a = tmp_path / "a.json"
        run_cli("build", "--word", "(s1 s2^-1)^3", "--out", str(a))
        r = run_cli(
            "compare", str(a), str(a), "--full-product", env={"BTG_BUDGET": "10"}
        )
        assert r.returncode == 2
        assert "budget" in (r.stderr + r.stdout).lower()

    def test_conj3(self):
        r = run_cli("conj3", "--a", "(s1 s2^-1)^3", "--b", "s1^2 s2^2 s1^-2 s2^-2")
        assert r.returncode == 0 and "true" in r.stdout
        r = run_cli("conj3", "--a", "(s1 s2^-1)^3", "--b", "")
        assert r.returncode == 1
        r = run_cli("conj3", "--a", "s1", "--b", "s2")
        assert r.returncode == 0

    def test_invariants_empty_word(self):
        r = run_cli("invariants", "--word", "", "--strands", "3")
        assert r.returncode == 0
        assert "lk_12 = 0" in r.stdout
        assert "C_12: []" in r.stdout

    def test_check_ok(self):
        r = run_cli("check", "--word", "s2 s1^-1 s3", "--strands", "4")
        assert r.returncode == 0
        assert "result: ok" in r.stdout

    def test_export_dot(self, tmp_path):
        a = tmp_path / "a.json"
        run_cli("build", "--word", "s1", "--strands", "3", "--out", str(a))
        r1 = run_cli("export", str(a), "--dot")
        r2 = run_cli("export", str(a), "--dot")
        assert r1.returncode == 0
        assert r1.stdout == r2.stdout
        assert r1.stdout.startswith("digraph")

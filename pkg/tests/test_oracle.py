import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidtrace import oracle
from braidtrace.oracle import (
    Laurent,
    burau3,
    burau_unreduced,
    char_poly,
    conjugacy_classes_within_ball,
    conjugator_search,
    invariant_screen,
    random_rewrite,
)
from braidtrace.tracegraph import build_trace_graph
from braidtrace.words import BraidWord, concatenate, garside_delta, invert, parse_word


def b3_words(max_len=6):
    letter = st.tuples(st.integers(1, 2), st.sampled_from((1, -1)))
    return st.builds(
        lambda ls: BraidWord(3, tuple(ls)), st.lists(letter, max_size=max_len)
    )


class TestLaurent:
    def test_arithmetic(self):
        t = Laurent.var(1)
        one = Laurent.const(1)
        assert (t + one) * (t - one) == t * t - one
        assert (t * Laurent.var(-1)) == one

    def test_hash_eq(self):
        assert hash(Laurent({2: 3})) == hash(Laurent({2: 3}))
        assert Laurent({0: 0}) == Laurent()


class TestBurau3:
    def test_braid_relation(self):
        assert burau3(parse_word("s1 s2 s1", 3)) == burau3(parse_word("s2 s1 s2", 3))

    def test_inverse_pair(self):
        from braidtrace.oracle import identity_matrix

        assert burau3(parse_word("s1 s1^-1", 3)) == identity_matrix(2)

    def test_generators_differ(self):
        assert burau3(parse_word("s1", 3)) != burau3(parse_word("s2", 3))

    def test_rejects_other_strand_counts(self):
        with pytest.raises(ValueError):
            burau3(BraidWord(4))

    @given(b3_words(4), b3_words(4))
    def test_homomorphism(self, a, b):
        from braidtrace.oracle import mat_mul

        assert burau3(concatenate(a, b)) == mat_mul(burau3(a), burau3(b))

    @given(b3_words(5))
    @settings(max_examples=40)
    def test_invariant_under_rewriting(self, w):
        import random

        rng = random.Random(99)
        assert burau3(random_rewrite(w, rng, steps=3)) == burau3(w)


class TestBurauUnreduced:
    @pytest.mark.parametrize("n", [3, 4])
    def test_delta_conjugation(self, n):
        d = garside_delta(n)
        for i in range(1, n):
            lhs = concatenate(concatenate(d, BraidWord(n, ((i, 1),))), invert(d))
            rhs = BraidWord(n, ((n - i, 1),))
            assert burau_unreduced(lhs) == burau_unreduced(rhs)

    def test_char_poly_is_conjugacy_invariant(self):
        a = parse_word("s1 s2 s3", 4)
        w = parse_word("s2 s1^-1", 4)
        b = concatenate(concatenate(w, a), invert(w))
        assert char_poly(burau_unreduced(a)) == char_poly(burau_unreduced(b))


class TestConjugatorSearch:
    def test_identity_pair(self):
        w = parse_word("s1 s2", 3)
        found = conjugator_search(w, w, 2)
        assert found is not None and len(found) == 0

    def test_s1_s2(self):
        found = conjugator_search(parse_word("s1", 3), parse_word("s2", 3), 3)
        assert found is not None and len(found) <= 3
        # the witness really conjugates
        lhs = concatenate(concatenate(found, parse_word("s1", 3)), invert(found))
        assert burau3(lhs) == burau3(parse_word("s2", 3))

    def test_unknown_for_nonconjugate(self):
        assert conjugator_search(parse_word("s1", 3), parse_word("s1 s1", 3), 4) is None

    def test_monotone_in_depth(self):
        a, b = parse_word("s1", 3), parse_word("s2", 3)
        w2 = conjugator_search(a, b, 2)
        w4 = conjugator_search(a, b, 4)
        assert w2 is not None and w4 is not None and w2 == w4

    def test_class_partition(self):
        ws = [parse_word(x, 3) for x in ("s1", "s2", "s1^-1", "s1 s1", "")]
        classes = conjugacy_classes_within_ball(ws, 4)
        as_sets = sorted(tuple(c) for c in classes)
        assert as_sets == [(0, 1), (2,), (3,), (4,)]


class TestInvariantScreen:
    def test_conjugates_agree(self):
        a = parse_word("(s1 s2^-1)^3", 3)
        w = parse_word("s2 s1", 3)
        b = concatenate(concatenate(w, a), invert(w))
        assert invariant_screen(a) == invariant_screen(b)

    def test_distinguishes_exponent_sum(self):
        assert invariant_screen(parse_word("s1", 3)) != invariant_screen(
            parse_word("s1^-1", 3)
        )


class TestBruteCounts:
    @pytest.mark.parametrize(
        "text,n",
        [("s1", 3), ("s1 s2", 3), ("(s1 s2^-1)^3", 3), ("s2 s3 s3 s2", 4), ("s1", 2)],
    )
    def test_agreement(self, text, n):
        g = build_trace_graph(parse_word(text, n))
        rep = oracle.brute_counts(g)
        assert rep.ok, rep.detail
        assert sum(rep.per_circle_vertices) == 3 * rep.vertices

    def test_pure_b3_has_six_circles(self):
        g = build_trace_graph(parse_word("(s1 s2^-1)^3", 3))
        assert oracle.brute_counts(g).circles == 6

    def test_b2_no_vertices(self):
        g = build_trace_graph(parse_word("s1", 2))
        rep = oracle.brute_counts(g)
        assert rep.circles == 1 and rep.vertices == 0

"""Word representation, subword counting, and the count-matrix calculus."""

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordchain.errors import CapExceededError
from wordchain.words import (
    build_count_matrices,
    delete_pair,
    display_word,
    enumerate_balanced,
    enumerate_words,
    matrix_exp_nilpotent,
    random_subword,
    subword_count,
    successors,
    word_size,
    word_universe,
)

words_st = st.text(alphabet="ab", max_size=8)


def brute_force_count(w: str, v: str) -> int:
    """Oracle: enumerate injective order-preserving position maps."""
    return sum(
        1
        for positions in itertools.combinations(range(len(w)), len(v))
        if all(w[p] == c for p, c in zip(positions, v))
    )


class TestSubwordCount:
    def test_worked_example(self):
        assert subword_count("abbaba", "bba") == 4

    def test_empty_subword(self):
        for w in ["", "a", "ab", "bbaa", "ababab"]:
            assert subword_count(w, "") == 1

    def test_derived_examples(self):
        # frozen from the embedding-enumeration oracle
        assert brute_force_count("abab", "ab") == 3
        assert brute_force_count("abab", "ba") == 1
        assert subword_count("abab", "ab") == 3
        assert subword_count("abab", "ba") == 1

    def test_longer_subword_gives_zero(self):
        assert subword_count("ab", "aba") == 0
        assert subword_count("", "a") == 0

    def test_oracle_equivalence_exhaustive(self):
        for p in range(8):
            for w in enumerate_words(p):
                for q in range(min(p, 4) + 1):
                    for v in enumerate_words(q):
                        assert subword_count(w, v) == brute_force_count(w, v)

    @given(words_st, words_st, st.sampled_from("ab"), st.sampled_from("ab"))
    @settings(max_examples=300)
    def test_recurrence_property(self, w, v, x, y):
        lhs = subword_count(w + y, v + x)
        rhs = subword_count(w, v + x) + (subword_count(w, v) if x == y else 0)
        assert lhs == rhs

    @given(st.integers(0, 30), st.integers(0, 30))
    def test_one_letter_reduction(self, p, q):
        assert subword_count("a" * p, "a" * q) == math.comb(p, q)

    def test_rejects_bad_letters(self):
        with pytest.raises(ValueError):
            subword_count("abc", "a")


class TestEnumeration:
    def test_small_cases(self):
        assert enumerate_balanced(0) == [""]
        assert enumerate_balanced(1) == ["ab", "ba"]
        two = enumerate_balanced(2)
        assert len(two) == 6
        assert two[0] == "aabb" and two[-1] == "bbaa"

    def test_counts_and_order(self):
        for n in range(6):
            ws = enumerate_balanced(n)
            assert len(ws) == math.comb(2 * n, n)
            assert ws == sorted(ws)
            assert all(word_size(w) == n for w in ws)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            enumerate_balanced(13)


class TestSuccessors:
    def test_empty_word(self):
        assert successors("") == {"ab": 1, "ba": 1}

    def test_ab(self):
        assert successors("ab") == {"aabb": 4, "abab": 3, "abba": 2, "baab": 2, "baba": 1}
        assert "bbaa" not in successors("ab")

    def test_total_insertions(self):
        for n in range(4):
            for v in enumerate_balanced(n):
                assert sum(successors(v).values()) == (2 * n + 2) * (2 * n + 1)

    def test_matches_subword_count(self):
        for n in range(4):
            for v in enumerate_balanced(n):
                succ = successors(v)
                for w in enumerate_balanced(n + 1):
                    assert succ.get(w, 0) == subword_count(w, v)


class TestCountMatrices:
    def test_diagonals_and_triangularity(self):
        p, h = build_count_matrices(4)
        size = len(p.index)
        for i in range(size):
            assert p.entries[i][i] == 1
            assert h.entries[i][i] == 0
            for j in range(i):
                assert p.entries[i][j] == 0
                assert h.entries[i][j] == 0

    def test_exp_of_one_step_matrix(self):
        p, h = build_count_matrices(4)
        exp_h = matrix_exp_nilpotent(h)
        for i in range(len(p.index)):
            for j in range(len(p.index)):
                assert exp_h[i][j] == Fraction(p.entries[i][j])

    def test_universe_ordering(self):
        index = word_universe(3)
        assert index[:7] == ["", "a", "b", "aa", "ab", "ba", "bb"]
        assert len(index) == 2**4 - 1

    def test_cap(self):
        with pytest.raises(CapExceededError):
            build_count_matrices(7)

    def test_json_export(self):
        p, _ = build_count_matrices(2)
        data = p.to_json()
        assert data["index"] == list(p.index)
        assert data["entries"][0][0] == "1"
        assert all(isinstance(e, str) for row in data["entries"] for e in row)


class TestRandomSubword:
    def test_extremes(self, rng):
        assert random_subword("abba", 2, rng) == "abba"
        assert random_subword("abba", 0, rng) == ""

    def test_too_large(self, rng):
        with pytest.raises(ValueError):
            random_subword("ab", 2, rng)

    def test_marginal_distribution(self):
        # P(ab) = subword_count(abab, ab) / C(2,1)^2 = 3/4
        rng = random.Random(401)
        trials = 100_000
        hits = sum(random_subword("abab", 1, rng) == "ab" for _ in range(trials))
        sigma = math.sqrt(0.75 * 0.25 / trials)
        assert abs(hits / trials - 0.75) < 3 * sigma


def test_delete_pair_roundtrip():
    w = "abba"
    assert delete_pair(w, 0, 1) == "ba"
    with pytest.raises(ValueError):
        delete_pair(w, 1, 0)


def test_display_word():
    assert display_word("") == "∅"
    assert display_word("ab") == "ab"

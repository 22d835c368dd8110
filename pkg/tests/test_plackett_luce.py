"""Exponential-rates bridge: closed forms, samplers, and cross-checks."""

import math
import random
from collections import Counter
from fractions import Fraction

import pytest

from conftest import chi2_critical, chi2_statistic, two_sample_chi2
from wordchain.errors import SizeMismatchError
from wordchain.kernels import one_step_prob
from wordchain.measures import Exponential, canonicalize, interleave_pattern
from wordchain.bridges import harmonic_h
from wordchain.plackett_luce import (
    RatePair,
    pl_harmonic,
    pl_sample,
    pl_transition,
    pl_word_prob,
    suffix_counts,
)
from wordchain.words import enumerate_balanced, subword_count, successors

F = Fraction
TWO_ONE = RatePair(F(2), F(1))


class TestSuffixCounts:
    def test_balanced_endpoints(self):
        for u in ["ab", "abba", "bababa"]:
            counts = suffix_counts(u)
            n = len(u) // 2
            assert counts[0] == (n, n)
            assert sum(counts[-1]) == 1

    def test_values(self):
        assert suffix_counts("abba") == [(2, 2), (1, 2), (1, 1), (1, 0)]


class TestWordProb:
    def test_equal_rates_uniform(self):
        for gamma in (F(1), F(7, 3)):
            rates = RatePair(gamma, gamma)
            for n in range(5):
                for u in enumerate_balanced(n):
                    assert pl_word_prob(rates, u) == F(1, math.comb(2 * n, n))

    def test_two_one_values(self):
        # competing exponentials: P{Exp(2) < Exp(1)} = 2/3
        assert pl_word_prob(TWO_ONE, "ab") == F(2, 3)
        assert pl_word_prob(TWO_ONE, "ba") == F(1, 3)

    def test_competing_exponentials_mc_oracle(self):
        rng = random.Random(301)
        runs = 100_000
        hits = sum(rng.expovariate(2.0) < rng.expovariate(1.0) for _ in range(runs))
        sigma = math.sqrt((2 / 3) * (1 / 3) / runs)
        assert abs(hits / runs - 2 / 3) < 3 * sigma

    def test_normalization(self):
        for rates in (TWO_ONE, RatePair(F(3), F(5)), RatePair(F(1, 3), F(9, 2))):
            for n in range(4):
                assert sum(pl_word_prob(rates, u) for u in enumerate_balanced(n)) == 1

    def test_degenerate_limit_monotone(self):
        probs = [
            pl_word_prob(RatePair(F(ratio), F(1)), "aabb")
            for ratio in (1, 10, 100, 1000)
        ]
        assert all(p2 > p1 for p1, p2 in zip(probs, probs[1:]))
        assert probs[-1] > F(99, 100)


class TestHarmonic:
    def test_equal_rates_constant(self):
        rates = RatePair(F(4), F(4))
        for n in range(4):
            for w in enumerate_balanced(n):
                assert pl_harmonic(rates, w) == 1

    def test_two_one_values(self):
        assert pl_harmonic(TWO_ONE, "ab") == F(4, 3)
        assert pl_harmonic(TWO_ONE, "ba") == F(2, 3)
        # harmonicity at the empty word: (1/2)(4/3) + (1/2)(2/3) = 1
        assert one_step_prob("", "ab") * F(4, 3) + one_step_prob("", "ba") * F(2, 3) == 1

    def test_empty_word(self):
        for rates in (TWO_ONE, RatePair(F(3), F(5))):
            assert pl_harmonic(rates, "") == 1

    def test_relation_to_word_prob(self):
        for u in enumerate_balanced(3):
            assert pl_word_prob(TWO_ONE, u) == pl_harmonic(TWO_ONE, u) * F(
                1, math.comb(6, 3)
            )


class TestTransition:
    def test_equal_rates_reduce_to_base(self):
        rates = RatePair(F(5), F(5))
        for n in range(3):
            for u in enumerate_balanced(n):
                for v in successors(u):
                    assert pl_transition(rates, u, v) == F(
                        subword_count(v, u), (2 * n + 2) * (2 * n + 1)
                    )

    def test_first_step_matches_word_prob(self):
        assert pl_transition(TWO_ONE, "", "ab") == pl_word_prob(TWO_ONE, "ab")
        assert pl_transition(TWO_ONE, "", "ba") == pl_word_prob(TWO_ONE, "ba")

    def test_rows_sum_to_one_random_rates(self):
        rng = random.Random(302)
        for _ in range(5):
            rates = RatePair(
                F(rng.randrange(1, 40), rng.randrange(1, 8)),
                F(rng.randrange(1, 40), rng.randrange(1, 8)),
            )
            for n in range(4):
                for u in enumerate_balanced(n):
                    assert sum(pl_transition(rates, u, v) for v in successors(u)) == 1

    def test_triangle_identity(self):
        for n in range(4):
            for u in enumerate_balanced(n):
                h_u = pl_harmonic(TWO_ONE, u)
                for v in successors(u):
                    assert pl_transition(TWO_ONE, u, v) == one_step_prob(
                        u, v
                    ) * pl_harmonic(TWO_ONE, v) / h_u

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatchError):
            pl_transition(TWO_ONE, "ab", "ab")


class TestSamplers:
    def test_equal_rates_uniform(self):
        rng = random.Random(303)
        runs = 60_000
        counts = Counter(pl_sample(RatePair(F(1), F(1)), 2, rng) for _ in range(runs))
        expected = {w: F(1, 6) for w in enumerate_balanced(2)}
        assert chi2_statistic(counts, expected, runs) < chi2_critical(6)

    def test_frequencies_match_pmf(self):
        rng = random.Random(304)
        runs = 60_000
        counts = Counter(pl_sample(TWO_ONE, 2, rng) for _ in range(runs))
        for w in enumerate_balanced(2):
            p = float(pl_word_prob(TWO_ONE, w))
            sigma = math.sqrt(p * (1 - p) / runs)
            assert abs(counts[w] / runs - p) <= 3 * sigma, w

    def test_extreme_rates(self):
        rng = random.Random(305)
        runs = 20_000
        rates = RatePair(F(1000), F(1))
        counts = Counter(pl_sample(rates, 2, rng) for _ in range(runs))
        p = float(pl_word_prob(rates, "aabb"))
        sigma = math.sqrt(p * (1 - p) / runs)
        assert abs(counts["aabb"] / runs - p) <= 3 * sigma

    def test_sampler_variants_agree(self):
        rng = random.Random(306)
        runs = 60_000
        seq = Counter(pl_sample(TWO_ONE, 2, rng) for _ in range(runs))
        srt = Counter(pl_sample(TWO_ONE, 2, rng, method="sort") for _ in range(runs))
        stat, cells = two_sample_chi2(seq, srt)
        assert stat < chi2_critical(cells)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            pl_sample(TWO_ONE, 2, random.Random(0), method="magic")


class TestBridgeBehavior:
    def test_backward_universality(self):
        # couple (U_2, U_3) through shared exponential draws
        rng = random.Random(307)
        runs = 60_000
        joint = Counter()
        for _ in range(runs):
            xs = [rng.expovariate(2.0) for _ in range(3)]
            ys = [rng.expovariate(1.0) for _ in range(3)]
            joint[(interleave_pattern(xs[:2], ys[:2]), interleave_pattern(xs, ys))] += 1
        by_v = Counter()
        for (u, v), c in joint.items():
            by_v[v] += c
        for (u, v), c in joint.items():
            if by_v[v] < 3000:
                continue
            p = float(F(subword_count(v, u), 9))
            sigma = math.sqrt(p * (1 - p) / by_v[v])
            assert abs(c / by_v[v] - p) <= 3 * sigma + 1e-9, (u, v)

    def test_canonical_pair_cross_check(self):
        # the grid-approximated canonical pair reproduces the closed-form h;
        # the tolerance reflects the finite resolution, not an exact identity
        pair = canonicalize(Exponential(F(2)), Exponential(F(1)), resolution=400)
        worst = 0.0
        for w in enumerate_balanced(1) + enumerate_balanced(2):
            err = abs(float(harmonic_h(pair, w) - pl_harmonic(TWO_ONE, w)))
            worst = max(worst, err)
        assert worst < 1e-3, f"resolution-400 mismatch {worst}"


def test_rate_validation():
    with pytest.raises(ValueError):
        RatePair(F(0), F(1))
    with pytest.raises(ValueError):
        RatePair(F(1), F(-2))

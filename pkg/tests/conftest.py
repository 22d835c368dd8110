"""Shared helpers: chi-square criticals, random canonical pairs, oracles."""

import random
from fractions import Fraction

import pytest
from scipy import stats

from wordchain.measures import CanonicalPair, StepMeasure


def chi2_critical(cells: int, level: float = 0.01) -> float:
    return float(stats.chi2.ppf(1 - level, cells - 1))


def chi2_statistic(observed: dict, expected: dict, total: int) -> float:
    stat = 0.0
    for key, prob in expected.items():
        exp = float(prob) * total
        obs = observed.get(key, 0)
        stat += (obs - exp) ** 2 / exp
    return stat


def two_sample_chi2(counts_a: dict, counts_b: dict) -> tuple[float, int]:
    """Homogeneity statistic for two equally sized count tables."""
    keys = sorted(set(counts_a) | set(counts_b))
    stat = 0.0
    cells = 0
    for key in keys:
        o1, o2 = counts_a.get(key, 0), counts_b.get(key, 0)
        if o1 + o2 == 0:
            continue
        stat += (o1 - o2) ** 2 / (o1 + o2)
        cells += 1
    return stat, cells


def random_canonical_pair(rng: random.Random, cells: int = 3) -> CanonicalPair:
    """A canonical pair with random rational densities on a uniform grid.

    Rejection-samples the last density so the mu densities average to 1
    while every density stays within [0, 2].
    """
    bps = tuple(Fraction(k, cells) for k in range(cells + 1))
    while True:
        densities = [Fraction(rng.randrange(0, 33), 16) for _ in range(cells - 1)]
        last = cells - sum(densities)
        if 0 <= last <= 2:
            densities.append(last)
            break
    mu = StepMeasure(bps, tuple(densities))
    return CanonicalPair.from_mu(mu)


@pytest.fixture
def rng():
    return random.Random(20260810)

"""Convergence diagnostics toward boundary points.

A sequence of growing words converges to the boundary point described by a
canonical pair (mu, nu) exactly when, for every test word w, the probability
that a uniform selection of letters from y_k reads w tends to the pattern
probability of w under the pair, equivalently when the empirical letter-
position measures of y_k converge weakly to (mu, nu).  The report computes
both views: exact kernel ratios per test word and Kolmogorov distances per
sequence element.  Verdicts are heuristic — the theory gives limits, not
rates — so the thresholds live in an explicit config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SizeMismatchError
from .measures import (
    AtomicPair,
    CanonicalPair,
    empirical_pair,
    format_fraction,
    pattern_prob_exact,
    weak_distance,
)
from .words import enumerate_balanced, subword_count, word_size


def kernel_ratio(y: str, w: str) -> Fraction:
    """P{selecting m a's and m b's of y uniformly, in order, reads w}.

    Equals subword_count(y, w) / C(size(y), m)^2; over all w of size m
    these ratios form a probability distribution.
    """
    n = word_size(y)
    m = word_size(w)
    if m > n:
        raise SizeMismatchError(f"test word size {m} exceeds sequence word size {n}")
    return Fraction(subword_count(y, w), math.comb(n, m) ** 2)


def check_word_sequence(seq: list[str]) -> list[str]:
    """Validate nonempty input with nondecreasing word sizes."""
    if not seq:
        raise ValueError("a word sequence must be nonempty")
    sizes = [word_size(y) for y in seq]
    if any(s2 < s1 for s1, s2 in zip(sizes, sizes[1:])):
        raise ValueError("word sizes must be nondecreasing along the sequence")
    return seq


def limit_pair_estimate(y: str) -> AtomicPair:
    """Boundary-point estimator read off a single word.

    The empirical pair of y: its weak limit along a convergent sequence
    identifies the boundary point the sequence approaches.
    """
    return empirical_pair(y)


@dataclass(frozen=True)
class ReportConfig:
    """Thresholds for the heuristic convergence verdict.

    Defaults were calibrated on seeded base-chain simulations: at size 200
    the empirical measures of a uniform word sit within Kolmogorov distance
    0.15 of Lebesgue in well over 95% of runs.
    """

    distance_tol: float = 0.15
    ratio_tol: float = 0.1


@dataclass
class ConvergenceReport:
    """Kernel ratios, targets, and empirical distances along a sequence."""

    sizes: list[int]
    test_words: list[str]
    ratios: dict[str, list[Fraction]]  # per test word, one ratio per element
    targets: dict[str, Fraction]
    mu_distances: list[float]
    nu_distances: list[float]
    verdict: bool
    verdict_reason: str
    config: ReportConfig = field(default_factory=ReportConfig)

    def ratio_errors(self) -> list[float]:
        """Max over test words of |ratio - target|, per sequence element."""
        out = []
        for k in range(len(self.sizes)):
            out.append(
                max(abs(float(self.ratios[w][k] - self.targets[w])) for w in self.test_words)
            )
        return out

    def to_json(self) -> dict:
        return {
            "sizes": self.sizes,
            "test_words": self.test_words,
            "ratios": {w: [format_fraction(r) for r in rs] for w, rs in self.ratios.items()},
            "targets": {w: format_fraction(t) for w, t in self.targets.items()},
            "mu_distances": [float(d) for d in self.mu_distances],
            "nu_distances": [float(d) for d in self.nu_distances],
            "ratio_errors": self.ratio_errors(),
            "verdict": self.verdict,
            "verdict_reason": self.verdict_reason,
            "config": {
                "distance_tol": self.config.distance_tol,
                "ratio_tol": self.config.ratio_tol,
            },
        }


def convergence_report(
    seq: list[str],
    pair: CanonicalPair,
    m_max: int,
    config: ReportConfig = ReportConfig(),
) -> ConvergenceReport:
    """Assess whether a word sequence is heading to the pair's boundary point.

    For every test word w of size m <= m_max, tabulates the exact selection
    ratio of each y_k against the pattern probability of w under the pair,
    and tracks the Kolmogorov distances of the empirical measures of y_k to
    (mu, nu).  The verdict holds when the final distances fall inside
    ``distance_tol`` and the worst ratio error does not grow on average
    between the first and second half of the sequence.
    """
    check_word_sequence(seq)
    min_size = word_size(seq[0])
    if m_max < 1 or m_max > min_size:
        raise ValueError(f"m_max must be between 1 and the smallest word size {min_size}")

    test_words = [w for m in range(1, m_max + 1) for w in enumerate_balanced(m)]
    targets = {w: pattern_prob_exact(pair, w) for w in test_words}
    ratios = {w: [kernel_ratio(y, w) for y in seq] for w in test_words}

    mu_distances, nu_distances = [], []
    for y in seq:
        emp = empirical_pair(y)
        mu_distances.append(weak_distance(emp.mu, pair.mu))
        nu_distances.append(weak_distance(emp.nu, pair.nu))

    report = ConvergenceReport(
        sizes=[word_size(y) for y in seq],
        test_words=test_words,
        ratios=ratios,
        targets=targets,
        mu_distances=mu_distances,
        nu_distances=nu_distances,
        verdict=False,
        verdict_reason="",
        config=config,
    )

    errors = report.ratio_errors()
    half = len(errors) // 2
    early = sum(errors[:half]) / half if half else errors[0]
    late = sum(errors[half:]) / (len(errors) - half)
    distances_ok = (
        mu_distances[-1] <= config.distance_tol and nu_distances[-1] <= config.distance_tol
    )
    errors_ok = late <= early + 1e-12
    report.verdict = distances_ok and errors_ok
    if report.verdict:
        report.verdict_reason = (
            f"consistent with convergence: final distances "
            f"({mu_distances[-1]:.4f}, {nu_distances[-1]:.4f}) within "
            f"{config.distance_tol} and mean ratio error not increasing "
            f"({early:.4f} -> {late:.4f})"
        )
    else:
        parts = []
        if not distances_ok:
            parts.append(
                f"final distances ({mu_distances[-1]:.4f}, {nu_distances[-1]:.4f}) "
                f"exceed {config.distance_tol}"
            )
        if not errors_ok:
            parts.append(f"mean ratio error grew ({early:.4f} -> {late:.4f})")
        report.verdict_reason = "not consistent with convergence: " + "; ".join(parts)
    return report

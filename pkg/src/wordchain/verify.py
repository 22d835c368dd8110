"""The exact-identity verification suite.

Every check here is deterministic rational arithmetic: no tolerances, no
randomness.  The CLI ``verify`` subcommand runs them all and reports one
line per identity family with the number of instances checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .bridges import harmonic_h
from .kernels import (
    backward_prob,
    bridge_conditional_check,
    dm_kernel,
    multi_step_prob,
    one_step_prob,
)
from .measures import empirical_identity_check, fixture_pairs, pattern_distribution
from .plackett_luce import RatePair, pl_harmonic, pl_transition, pl_word_prob
from .words import (
    build_count_matrices,
    enumerate_balanced,
    enumerate_words,
    matrix_exp_nilpotent,
    subword_count,
    successors,
    word_universe,
)

PL_RATE_FIXTURES = (
    RatePair(Fraction(2), Fraction(1)),
    RatePair(Fraction(3), Fraction(5)),
    RatePair(Fraction(1), Fraction(1)),
)


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < 20:  # keep reports readable
            self.failures.append(message)
        else:
            self.failures.append("... further failures suppressed")
            raise _TooManyFailures


class _TooManyFailures(Exception):
    pass


def _guard(fn, result: CheckResult) -> CheckResult:
    try:
        fn(result)
    except _TooManyFailures:
        pass
    return result


def check_recurrence_closure(max_len: int = 8) -> CheckResult:
    """The three defining properties of the subword coefficient."""

    def run(res: CheckResult) -> None:
        words_by_len = [enumerate_words(k) for k in range(max_len + 1)]
        all_words = [w for ws in words_by_len for w in ws]
        for w in all_words:
            res.checked += 1
            if subword_count(w, "") != 1:
                res.fail(f"binom({w!r}, empty) != 1")
        for w in all_words:
            for extra in range(1, 3):
                if len(w) + extra > max_len:
                    continue
                for v in words_by_len[len(w) + extra]:
                    res.checked += 1
                    if subword_count(w, v) != 0:
                        res.fail(f"binom({w!r}, {v!r}) != 0 despite |w| < |v|")
        for w in (w for ws in words_by_len[: max_len] for w in ws):
            for v in (v for k in range(len(w) + 1) for v in words_by_len[k]):
                base = subword_count(w, v)
                for x in "ab":
                    ext = subword_count(w, v + x)
                    for y in "ab":
                        res.checked += 1
                        lhs = subword_count(w + y, v + x)
                        rhs = ext + (base if x == y else 0)
                        if lhs != rhs:
                            res.fail(f"recurrence broken at w={w!r} v={v!r} x={x} y={y}")

    return _guard(run, CheckResult("subword recurrence closure"))


def check_convolution_identity(limit: int = 4) -> CheckResult:
    """sum_v binom(v,u) binom(w,v) = binom(w,u) (n+1)^2 over middle layers."""

    def run(res: CheckResult) -> None:
        for m in range(limit):
            for total in range(m + 1, limit + 1):
                n = total - m - 1
                mids = enumerate_balanced(m + 1)
                for u in enumerate_balanced(m):
                    for w in enumerate_balanced(total):
                        lhs = sum(subword_count(v, u) * subword_count(w, v) for v in mids)
                        rhs = subword_count(w, u) * (n + 1) ** 2
                        res.checked += 1
                        if lhs != rhs:
                            res.fail(f"convolution broken at u={u!r} w={w!r}")

    return _guard(run, CheckResult("subword convolution identity"))


def check_matrix_exponential(max_len: int = 5) -> CheckResult:
    """exp of the one-step count matrix equals the full count matrix."""

    def run(res: CheckResult) -> None:
        p, h = build_count_matrices(max_len, cap=max_len)
        size = len(p.index)
        for i in range(size):
            if p.entries[i][i] != 1:
                res.fail(f"P diagonal at {p.index[i]!r} is not 1")
            if h.entries[i][i] != 0:
                res.fail(f"H diagonal at {h.index[i]!r} is not 0")
        exp_h = matrix_exp_nilpotent(h)
        for i in range(size):
            for j in range(size):
                res.checked += 1
                if exp_h[i][j] != p.entries[i][j]:
                    res.fail(f"exp(H) != P at ({p.index[i]!r}, {p.index[j]!r})")

    return _guard(run, CheckResult(f"exp(H) = P on words of length <= {max_len}"))


def check_chapman_kolmogorov(limit: int = 4) -> CheckResult:
    """Composing one-step kernels reproduces the multi-step formula."""

    def run(res: CheckResult) -> None:
        for m in range(limit):
            for total in range(m + 1, limit + 1):
                for v in enumerate_balanced(m):
                    composed = {v: Fraction(1)}
                    for _ in range(total - m):
                        nxt: dict[str, Fraction] = {}
                        for u, p_u in composed.items():
                            for w in successors(u):
                                nxt[w] = nxt.get(w, Fraction(0)) + p_u * one_step_prob(u, w)
                        composed = nxt
                    for w in enumerate_balanced(total):
                        res.checked += 1
                        if composed.get(w, Fraction(0)) != multi_step_prob(v, w):
                            res.fail(f"composition != closed form at v={v!r} w={w!r}")

    return _guard(run, CheckResult("Chapman-Kolmogorov composition"))


def check_kernel_ratio_law(limit: int = 4) -> CheckResult:
    """dm_kernel equals the ratio of hitting probabilities, plus its bound."""

    def run(res: CheckResult) -> None:
        for m in range(limit + 1):
            for total in range(m, limit + 1):
                for v in enumerate_balanced(m):
                    bound = Fraction(1) / multi_step_prob("", v)
                    for w in enumerate_balanced(total):
                        res.checked += 1
                        k = dm_kernel(v, w)
                        ratio = multi_step_prob(v, w) / multi_step_prob("", w)
                        if k != ratio or k > bound:
                            res.fail(f"kernel law broken at v={v!r} w={w!r}")

    return _guard(run, CheckResult("Doob-Martin kernel ratio law"))


def check_backward_normalization(limit: int = 4) -> CheckResult:
    """Backward deletion probabilities from any word sum to 1."""

    def run(res: CheckResult) -> None:
        for size in range(1, limit + 1):
            smaller = enumerate_balanced(size - 1)
            for v in enumerate_balanced(size):
                res.checked += 1
                total = sum(backward_prob(u, v) for u in smaller)
                if total != 1:
                    res.fail(f"backward row from {v!r} sums to {total}")

    return _guard(run, CheckResult("backward kernel normalization"))


def check_bridge_conditionals(limit: int = 4) -> CheckResult:
    """Bridge conditionals equal the universal deletion dynamics."""

    def run(res: CheckResult) -> None:
        for size in range(1, limit + 1):
            for w in enumerate_balanced(size):
                report = bridge_conditional_check(w)
                res.checked += report.checked
                for violation in report.violations:
                    res.fail(f"target {w!r}: {violation}")

    return _guard(run, CheckResult("bridge conditional = deletion dynamics"))


def check_pattern_normalization(m_max: int = 3) -> CheckResult:
    """Pattern probabilities of each fixture pair form a distribution."""

    def run(res: CheckResult) -> None:
        for name, pair in fixture_pairs().items():
            for m in range(1, m_max + 1):
                res.checked += 1
                total = sum(pattern_distribution(pair, m).values())
                if total != 1:
                    res.fail(f"pair {name}: patterns of size {m} sum to {total}")

    return _guard(run, CheckResult("pattern probability normalization"))


def check_empirical_identity(size_max: int = 6, m_max: int = 2) -> CheckResult:
    """Empirical-pair pattern probabilities match subword counts exactly."""

    def run(res: CheckResult) -> None:
        for size in range(1, size_max + 1):
            for y in enumerate_balanced(size):
                for m in range(1, min(m_max, size) + 1):
                    report = empirical_identity_check(y, m)
                    res.checked += report.checked
                    for violation in report.violations:
                        res.fail(f"y={y!r} m={m}: {violation}")

    return _guard(run, CheckResult("empirical pattern identity"))


def check_plackett_luce(limit: int = 3) -> CheckResult:
    """Exponential-pair closed forms: normalization, harmonicity, h-triangle."""

    def run(res: CheckResult) -> None:
        for rates in PL_RATE_FIXTURES:
            for n in range(limit + 1):
                res.checked += 1
                total = sum(pl_word_prob(rates, u) for u in enumerate_balanced(n))
                if total != 1:
                    res.fail(f"rates {rates}: pmf over W_{n} sums to {total}")
                for u in enumerate_balanced(n):
                    res.checked += 1
                    row = Fraction(0)
                    for v in successors(u):
                        p = pl_transition(rates, u, v)
                        expected = (
                            one_step_prob(u, v)
                            * pl_harmonic(rates, v)
                            / pl_harmonic(rates, u)
                        )
                        if p != expected:
                            res.fail(f"rates {rates}: transition triangle broken at {u!r}->{v!r}")
                        row += p
                    if row != 1:
                        res.fail(f"rates {rates}: transition row from {u!r} sums to {row}")

    return _guard(run, CheckResult("Plackett-Luce closed forms"))


def check_harmonicity(size_max: int = 3, pair_names: tuple[str, ...] = ("lebesgue", "separated", "three-cell")) -> CheckResult:
    """sum_v P(u,v) h(v) = h(u) for the fixture boundary points."""

    def run(res: CheckResult) -> None:
        pairs = fixture_pairs()
        for name in pair_names:
            pair = pairs[name]
            for size in range(size_max + 1):
                for u in enumerate_balanced(size):
                    res.checked += 1
                    h_u = harmonic_h(pair, u)
                    total = sum(
                        one_step_prob(u, v) * harmonic_h(pair, v) for v in successors(u)
                    )
                    if total != h_u:
                        res.fail(f"pair {name}: harmonicity broken at {u!r}")
                    if name == "lebesgue" and h_u != 1:
                        res.fail(f"lebesgue pair: h({u!r}) = {h_u} != 1")

    return _guard(run, CheckResult("harmonicity of fixture boundary functions"))


def run_verification() -> list[CheckResult]:
    """Run every exact-identity family; deterministic and randomness-free."""
    return [
        check_recurrence_closure(),
        check_convolution_identity(),
        check_matrix_exponential(),
        check_chapman_kolmogorov(),
        check_kernel_ratio_law(),
        check_backward_normalization(),
        check_bridge_conditionals(),
        check_pattern_normalization(),
        check_empirical_identity(),
        check_plackett_luce(),
        check_harmonicity(),
    ]

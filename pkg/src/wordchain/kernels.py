"""Exact transition kernels of the growing-word chain.

All probabilities are ``fractions.Fraction`` values; nothing in this module
touches floating point.  The chain moves from a balanced word of size m to
one of size m+1 by shuffling in one a (2m+1 slots) and then one b (2m+2
slots) uniformly at random, so every one-step probability has denominator
(2m+2)(2m+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import CapExceededError, SizeMismatchError
from .words import enumerate_balanced, subword_count, successors, word_size

BRIDGE_CHECK_CAP = 5


def _sizes(v: str, w: str) -> tuple[int, int]:
    return word_size(v), word_size(w)


def one_step_prob(v: str, w: str) -> Fraction:
    """P{next word = w | current word = v} for sizes m and m+1.

    Equals M(v, w) / ((2m+2)(2m+1)) where M(v, w) counts the insertion
    pairs turning v into w; M coincides with the subword coefficient.
    """
    m, k = _sizes(v, w)
    if k != m + 1:
        raise SizeMismatchError(f"one-step needs sizes (m, m+1), got ({m}, {k})")
    return Fraction(subword_count(w, v), (2 * m + 2) * (2 * m + 1))


def multi_step_prob(v: str, w: str) -> Fraction:
    """P{word after n more steps = w | current word = v}.

    For v of size m and w of size m+n this is
        subword_count(w, v) * n! * n! / ((2m+1)(2m+2)...(2m+2n)).
    With v the empty word it reduces to the uniform marginal 1 / C(2n, n).
    """
    m, k = _sizes(v, w)
    if k < m:
        raise SizeMismatchError(f"target size {k} is below source size {m}")
    n = k - m
    denom = 1
    for i in range(2 * m + 1, 2 * m + 2 * n + 1):
        denom *= i
    return Fraction(subword_count(w, v) * math.factorial(n) ** 2, denom)


def dm_kernel(v: str, w: str) -> Fraction:
    """Ratio of hitting probabilities from v versus from the empty word.

    Closed form subword_count(w, v) * C(2m, m) / C(m+n, m)^2; identical to
    multi_step_prob(v, w) / multi_step_prob("", w).  May exceed 1.
    """
    m, k = _sizes(v, w)
    if k < m:
        raise SizeMismatchError(f"target size {k} is below source size {m}")
    n = k - m
    return Fraction(
        subword_count(w, v) * math.comb(2 * m, m), math.comb(m + n, m) ** 2
    )


def backward_prob(u: str, v: str) -> Fraction:
    """P{previous word = u | current word = v} under deletion dynamics.

    Every bridge shares these backward probabilities: remove one a and one
    b uniformly at random, so u is reached from v of size m+1 with
    probability subword_count(v, u) / (m+1)^2.
    """
    m, k = _sizes(u, v)
    if k != m + 1:
        raise SizeMismatchError(f"backward step needs sizes (m, m+1), got ({m}, {k})")
    return Fraction(subword_count(v, u), (m + 1) ** 2)


@lru_cache(maxsize=64)
def kernel_table(m: int, n: int) -> dict[str, dict[str, Fraction]]:
    """Multi-step transition table from size m to size m+n, memoized.

    Rows are source words, columns target words; every row sums to exactly
    1.  Built lazily because full tables grow quickly with m+n.  The cache
    is safe for concurrent readers; treat the returned mapping as frozen.
    """
    table: dict[str, dict[str, Fraction]] = {}
    targets = enumerate_balanced(m + n)
    for v in enumerate_balanced(m):
        table[v] = {w: multi_step_prob(v, w) for w in targets}
    return table


@dataclass
class BridgeConditionalReport:
    """Outcome of checking bridge conditionals against deletion dynamics."""

    target: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def bridge_conditional_check(w: str, cap: int = BRIDGE_CHECK_CAP) -> BridgeConditionalReport:
    """Verify P{U_m = u | U_{m+1} = v, endpoint w} = subword_count(v,u)/(m+1)^2.

    The left side is assembled from first principles: conditioned on hitting
    w, the probability of passing through u then v factorizes over
    multi-step kernels, and the v -> w leg cancels.  Equality is asserted in
    exact rationals for every m < size(w) and every (u, v) pair with the
    conditioning event possible.
    """
    size = word_size(w)
    if size > cap:
        raise CapExceededError(f"word size {size} exceeds bridge check cap {cap}")
    report = BridgeConditionalReport(target=w)
    for m in range(size):
        for v in enumerate_balanced(m + 1):
            if multi_step_prob(v, w) == 0:
                continue  # conditioning event has zero probability
            for u in enumerate_balanced(m):
                lhs_num = multi_step_prob("", u) * one_step_prob(u, v)
                lhs = lhs_num / multi_step_prob("", v)
                rhs = backward_prob(u, v)
                report.checked += 1
                if lhs != rhs:
                    report.violations.append(
                        f"m={m} u={u!r} v={v!r}: bridge gives {lhs}, deletion gives {rhs}"
                    )
    return report


def forward_matrix(m: int) -> dict[str, dict[str, Fraction]]:
    """One-step transition rows from size m, restricted to reachable targets."""
    rows: dict[str, dict[str, Fraction]] = {}
    denom = (2 * m + 2) * (2 * m + 1)
    for v in enumerate_balanced(m):
        rows[v] = {w: Fraction(c, denom) for w, c in successors(v).items()}
    return rows

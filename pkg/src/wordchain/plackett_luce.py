"""Closed forms for the infinite bridge driven by two exponential laws.

With a-letters carrying Exp(alpha) values and b-letters Exp(beta) values,
the word law, harmonic function, and forward transitions all have product
formulas in the suffix letter counts, by repeated competing-exponentials
arguments (the two-letter Plackett-Luce / vase model).  Rational rates keep
every value exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import SizeMismatchError
from .measures import interleave_pattern
from .words import check_balanced, subword_count, word_size


@dataclass(frozen=True)
class RatePair:
    """Positive rational rates (alpha for a-letters, beta for b-letters)."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("rates must be positive")


def suffix_counts(u: str) -> list[tuple[int, int]]:
    """(A_i, B_i) = letters a and b in the suffix u[i-1:], for i = 1..|u|.

    A_1 = B_1 = size(u) for balanced u, and the final entry has A + B = 1.
    """
    check_balanced(u)
    counts = []
    n_a = n_b = 0
    for ch in reversed(u):
        if ch == "a":
            n_a += 1
        else:
            n_b += 1
        counts.append((n_a, n_b))
    return counts[::-1]


def _suffix_product(rates: RatePair, u: str) -> Fraction:
    return math.prod(
        (a * rates.alpha + b * rates.beta for a, b in suffix_counts(u)),
        start=Fraction(1),
    )


def pl_word_prob(rates: RatePair, u: str) -> Fraction:
    """P{word at step n equals u} = (n!)^2 alpha^n beta^n / prod_i (A_i alpha + B_i beta).

    Sums to 1 over W_n; for equal rates every word gets 1 / C(2n, n).
    """
    n = word_size(u)
    num = Fraction(math.factorial(n) ** 2) * rates.alpha**n * rates.beta**n
    return num / _suffix_product(rates, u)


def pl_harmonic(rates: RatePair, w: str) -> Fraction:
    """Harmonic function h(w) = (2m)! alpha^m beta^m / prod_i (A_i alpha + B_i beta).

    Normalized so h of the empty word is 1 (empty product); h is constant 1
    when the rates are equal.
    """
    m = word_size(w)
    num = Fraction(math.factorial(2 * m)) * rates.alpha**m * rates.beta**m
    return num / _suffix_product(rates, w)


def pl_transition(rates: RatePair, u: str, v: str) -> Fraction:
    """One-step law of the exponential-pair bridge from u to v.

    subword_count(v, u) * alpha * beta * prod(u suffixes) / prod(v suffixes);
    identical to h(u)^{-1} P(u, v) h(v) and rows sum to 1.
    """
    n = word_size(u)
    if word_size(v) != n + 1:
        raise SizeMismatchError(f"transition needs sizes (n, n+1), got ({n}, {word_size(v)})")
    num = subword_count(v, u) * rates.alpha * rates.beta * _suffix_product(rates, u)
    return num / _suffix_product(rates, v)


def pl_sample(rates: RatePair, n: int, rng: random.Random, method: str = "sequential") -> str:
    """Draw a word of size n from the exponential-pair bridge.

    "sequential": with A a's and B b's left to place, the next letter is a
    with probability A*alpha / (A*alpha + B*beta) — the minimum of the
    remaining competing exponentials.  "sort": draw the n + n exponential
    values outright and read their interleaving.  The two agree in
    distribution and serve as mutual oracles.
    """
    if method == "sort":
        alpha, beta = float(rates.alpha), float(rates.beta)
        while True:
            xs = [rng.expovariate(alpha) for _ in range(n)]
            ys = [rng.expovariate(beta) for _ in range(n)]
            try:
                return interleave_pattern(xs, ys)
            except ValueError:
                continue  # float tie; redraw
    if method != "sequential":
        raise ValueError(f"unknown sampling method {method!r}")
    out = []
    n_a = n_b = n
    while n_a or n_b:
        p_a = float(
            Fraction(n_a) * rates.alpha / (n_a * rates.alpha + n_b * rates.beta)
        )
        if rng.random() < p_a:
            out.append("a")
            n_a -= 1
        else:
            out.append("b")
            n_b -= 1
    return "".join(out)

"""Words over the two-letter alphabet {a, b} and the subword coefficient.

A word is an ASCII string of ``'a'``/``'b'`` characters; the empty word is
``""``.  A *balanced* word has the same number of a's and b's, and its size
``n`` is that common count.  ``subword_count(w, v)`` is the generalized
binomial coefficient: the number of ways v embeds in w as a scattered
subword (letters kept in relative order).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CapExceededError

ALPHABET = "ab"

BALANCED_ENUM_CAP = 12
COUNT_MATRIX_CAP = 6


def check_word(w: str) -> str:
    """Validate that `w` uses only the letters a and b; returns `w`."""
    if not isinstance(w, str):
        raise TypeError(f"word must be a str, got {type(w).__name__}")
    for ch in w:
        if ch not in ALPHABET:
            raise ValueError(f"invalid letter {ch!r} in word {w!r}")
    return w


def count_a(w: str) -> int:
    return w.count("a")


def count_b(w: str) -> int:
    return w.count("b")


def is_balanced(w: str) -> bool:
    return count_a(w) == count_b(w)


def check_balanced(w: str) -> str:
    """Validate that `w` is a balanced {a,b}-word; returns `w`."""
    check_word(w)
    if not is_balanced(w):
        raise ValueError(
            f"word {w!r} is not balanced: {count_a(w)} a's vs {count_b(w)} b's"
        )
    return w


def word_size(w: str) -> int:
    """The size n of a balanced word (number of a's, equivalently b's)."""
    check_balanced(w)
    return len(w) // 2


def display_word(w: str) -> str:
    """Human-readable form; the empty word prints as a visible symbol."""
    return w if w else "∅"


@lru_cache(maxsize=65536)
def subword_count(w: str, v: str) -> int:
    """Number of embeddings of v in w as a scattered subword.

    Satisfies the defining recurrence
        count(w + y, v + x) = count(w, v + x) + [x == y] * count(w, v)
    with count(w, "") = 1 and count(w, v) = 0 for |w| < |v|.  Computed by
    dynamic programming in O(|w| * |v|) exact integer arithmetic.
    """
    check_word(w)
    check_word(v)
    if len(v) > len(w):
        return 0
    # dp[j] = number of embeddings of v[:j] in the scanned prefix of w
    dp = [0] * (len(v) + 1)
    dp[0] = 1
    for ch in w:
        for j in range(len(v), 0, -1):
            if v[j - 1] == ch:
                dp[j] += dp[j - 1]
    return dp[-1]


def enumerate_words(length: int) -> list[str]:
    """All {a,b}-words of exactly `length`, in lexicographic order (a < b)."""
    words = [""]
    for _ in range(length):
        words = [w + ch for w in words for ch in ALPHABET]
    return sorted(words)


def enumerate_balanced(n: int, cap: int = BALANCED_ENUM_CAP) -> list[str]:
    """All C(2n, n) balanced words of size n, lexicographic, a < b."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    if n > cap:
        raise CapExceededError(f"size {n} exceeds enumeration cap {cap}")

    out: list[str] = []

    def grow(prefix: list[str], rem_a: int, rem_b: int) -> None:
        if rem_a == 0 and rem_b == 0:
            out.append("".join(prefix))
            return
        if rem_a:
            prefix.append("a")
            grow(prefix, rem_a - 1, rem_b)
            prefix.pop()
        if rem_b:
            prefix.append("b")
            grow(prefix, rem_a, rem_b - 1)
            prefix.pop()

    grow([], n, n)
    return out


def successors(v: str) -> dict[str, int]:
    """Insertion counts M(v, w) over all one-step successors w of v.

    Inserting an a into one of the 2n+1 slots of v and then a b into one of
    the 2n+2 slots of the result yields a word of size n+1; the value at w
    is the number of insertion pairs producing w.  Values total
    (2n+2)(2n+1), and M(v, w) = subword_count(w, v) for every w.
    """
    check_balanced(v)
    counts: dict[str, int] = {}
    for i in range(len(v) + 1):
        mid = v[:i] + "a" + v[i:]
        for j in range(len(mid) + 1):
            w = mid[:j] + "b" + mid[j:]
            counts[w] = counts.get(w, 0) + 1
    return counts


def delete_pair(w: str, a_pos: int, b_pos: int) -> str:
    """Word left after removing the a at index `a_pos` and the b at `b_pos`."""
    if w[a_pos] != "a" or w[b_pos] != "b":
        raise ValueError(f"positions ({a_pos}, {b_pos}) are not an (a, b) pair in {w!r}")
    return "".join(ch for k, ch in enumerate(w) if k not in (a_pos, b_pos))


def letter_positions(w: str, letter: str) -> list[int]:
    return [i for i, ch in enumerate(w) if ch == letter]


def random_subword(w: str, m: int, rng: random.Random) -> str:
    """Uniformly select m a's and m b's of w, keeping their relative order.

    The resulting word v occurs with probability
    subword_count(w, v) / C(n, m)^2 where n is the size of w.
    """
    n = word_size(w)
    if m < 0 or m > n:
        raise ValueError(f"cannot select {m} of each letter from a word of size {n}")
    keep = sorted(
        rng.sample(letter_positions(w, "a"), m) + rng.sample(letter_positions(w, "b"), m)
    )
    return "".join(w[i] for i in keep)


@dataclass(frozen=True)
class CountMatrix:
    """Square matrix indexed by all {a,b}-words up to a length cap.

    The index is ordered by (length, lexicographic), which makes both the
    subword-count matrix and its one-step restriction upper triangular.
    """

    index: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def entry(self, v: str, w: str) -> int:
        i = self.index.index(v)
        j = self.index.index(w)
        return self.entries[i][j]

    def to_json(self) -> dict:
        return {
            "index": list(self.index),
            "entries": [[str(e) for e in row] for row in self.entries],
        }


def word_universe(max_len: int) -> list[str]:
    """All {a,b}-words of length <= max_len, ordered by (length, lex)."""
    out: list[str] = []
    for length in range(max_len + 1):
        out.extend(enumerate_words(length))
    return out


def build_count_matrices(max_len: int, cap: int = COUNT_MATRIX_CAP) -> tuple[CountMatrix, CountMatrix]:
    """The full subword-count matrix P and its one-step part H.

    P has entry (v, w) = subword_count(w, v); H keeps only the entries with
    |w| = |v| + 1.  Indexed over every {a,b}-word of length <= max_len (not
    only balanced ones).  H is nilpotent and exp(H), summed as the finite
    series over exact rationals, reproduces P entrywise.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    if max_len > cap:
        raise CapExceededError(f"max_len {max_len} exceeds matrix cap {cap}")
    index = tuple(word_universe(max_len))
    p_rows = []
    h_rows = []
    for v in index:
        p_row = []
        h_row = []
        for w in index:
            c = subword_count(w, v)
            p_row.append(c)
            h_row.append(c if len(w) == len(v) + 1 else 0)
        p_rows.append(tuple(p_row))
        h_rows.append(tuple(h_row))
    return (
        CountMatrix(index=index, entries=tuple(p_rows)),
        CountMatrix(index=index, entries=tuple(h_rows)),
    )


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    size = len(a)
    out = [[0] * size for _ in range(size)]
    for i in range(size):
        row_a = a[i]
        row_out = out[i]
        for k in range(size):
            aik = row_a[k]
            if aik:
                row_b = b[k]
                for j in range(size):
                    if row_b[j]:
                        row_out[j] += aik * row_b[j]
    return out


def matrix_exp_nilpotent(h: CountMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """exp(H) for the nilpotent one-step matrix, exactly.

    The series terminates: H^k = 0 once k exceeds the longest word length,
    so exp(H) = sum_{k} H^k / k! is a finite sum of exact rationals.
    """
    size = len(h.index)
    longest = max((len(w) for w in h.index), default=0)
    acc = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    power = [list(row) for row in h.entries]
    k = 1
    while k <= longest + 1 and any(any(row) for row in power):
        inv_fact = Fraction(1, math.factorial(k))
        for i in range(size):
            for j in range(size):
                if power[i][j]:
                    acc[i][j] += power[i][j] * inv_fact
        power = _mat_mul(power, [list(row) for row in h.entries])
        k += 1
    return tuple(tuple(row) for row in acc)

"""Probability measures on [0,1] and exact interleaving-pattern probabilities.

Two concrete representations are used throughout:

* ``StepMeasure`` — diffuse, piecewise-constant density with rational
  breakpoints.  Closed under canonicalization and amenable to exact
  dynamic programming, which is why it is the primary diffuse form.
* ``AtomicMeasure`` — finitely many point masses, used for the empirical
  measures read off a finite word.

A ``CanonicalPair`` (mu, nu) of step measures satisfies the constraint that
the mixture (mu + nu)/2 is Lebesgue measure, i.e. the densities add to 2 on
every cell.  ``pattern_prob_exact`` computes the probability that m draws
from mu and m draws from nu interleave as a given balanced word.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from .errors import CapExceededError
from .words import check_balanced, enumerate_balanced, subword_count, word_size

STEP_PATTERN_CAP = 6
ATOMIC_PATTERN_CAP = 4
_ATOMIC_BUDGET = 5_000_000  # max number of atom-subset pairs enumerated


def parse_fraction(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact rational."""
    return Fraction(text.strip())


def format_fraction(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class StepMeasure:
    """Diffuse probability measure with piecewise-constant density.

    ``breakpoints`` are strictly increasing rationals; ``densities[k]`` is
    the constant density on (breakpoints[k], breakpoints[k+1]).  The cell
    masses must add to exactly 1.
    """

    breakpoints: tuple[Fraction, ...]
    densities: tuple[Fraction, ...]

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        dens = tuple(Fraction(d) for d in self.densities)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "densities", dens)
        if len(bps) < 2 or len(dens) != len(bps) - 1:
            raise ValueError("need K+1 breakpoints for K densities, K >= 1")
        if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(d < 0 for d in dens):
            raise ValueError("densities must be nonnegative")
        total = sum(d * (b2 - b1) for d, b1, b2 in zip(dens, bps, bps[1:]))
        if total != 1:
            raise ValueError(f"total mass is {total}, expected 1")

    @classmethod
    def lebesgue(cls) -> "StepMeasure":
        return cls((Fraction(0), Fraction(1)), (Fraction(1),))

    @classmethod
    def uniform_on(cls, lo, hi) -> "StepMeasure":
        lo, hi = Fraction(lo), Fraction(hi)
        return cls((lo, hi), (Fraction(1, 1) / (hi - lo),))

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def cell_masses(self) -> tuple[Fraction, ...]:
        return tuple(
            d * (b2 - b1)
            for d, b1, b2 in zip(self.densities, self.breakpoints, self.breakpoints[1:])
        )

    def cdf(self, x) -> Fraction:
        """Exact CDF at a rational point."""
        x = Fraction(x)
        if x <= self.breakpoints[0]:
            return Fraction(0)
        acc = Fraction(0)
        for d, b1, b2 in zip(self.densities, self.breakpoints, self.breakpoints[1:]):
            if x >= b2:
                acc += d * (b2 - b1)
            else:
                acc += d * (x - b1)
                break
        return acc

    def cdf_float(self, x: float) -> float:
        lo, hi = self.support
        if x <= lo:
            return 0.0
        if x >= hi:
            return 1.0
        return float(self.cdf(Fraction(x)))

    def moment(self, n: int) -> Fraction:
        """Exact n-th moment: integral of x^n against the measure."""
        return sum(
            (
                d * (b2 ** (n + 1) - b1 ** (n + 1)) / (n + 1)
                for d, b1, b2 in zip(self.densities, self.breakpoints, self.breakpoints[1:])
            ),
            Fraction(0),
        )

    def refine(self, points) -> "StepMeasure":
        """Same measure re-expressed on a grid containing `points`."""
        lo, hi = self.support
        extra = [Fraction(p) for p in points if lo < Fraction(p) < hi]
        bps = sorted(set(self.breakpoints) | set(extra))
        dens = []
        for b1 in bps[:-1]:
            k = max(i for i, b in enumerate(self.breakpoints) if b <= b1)
            dens.append(self.densities[k])
        return StepMeasure(tuple(bps), tuple(dens))

    @cached_property
    def _sampler_table(self) -> tuple[tuple[float, ...], tuple[float, ...], tuple[float, ...]]:
        """Float (cumulative mass, left breakpoint, density) per positive cell."""
        cum = [0.0]
        lefts, dens = [], []
        acc = Fraction(0)
        for d, b1, b2 in zip(self.densities, self.breakpoints, self.breakpoints[1:]):
            if d == 0:
                continue
            lefts.append(float(b1))
            dens.append(float(d))
            acc += d * (b2 - b1)
            cum.append(float(acc))
        return tuple(cum), tuple(lefts), tuple(dens)

    def sample(self, rng: random.Random) -> float:
        """Inverse-CDF draw; distributed per the measure."""
        u = rng.random()
        cum, lefts, dens = self._sampler_table
        k = min(bisect.bisect_right(cum, u) - 1, len(lefts) - 1)
        return lefts[k] + (u - cum[k]) / dens[k]

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_fraction(b) for b in self.breakpoints],
            "densities": [format_fraction(d) for d in self.densities],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StepMeasure":
        return cls(
            tuple(parse_fraction(b) for b in data["breakpoints"]),
            tuple(parse_fraction(d) for d in data["densities"]),
        )


@dataclass(frozen=True)
class Exponential:
    """Exponential law on [0, infinity) with a positive rational rate."""

    rate: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rate", Fraction(self.rate))
        if self.rate <= 0:
            raise ValueError("rate must be positive")

    def cdf_float(self, x: float) -> float:
        if x <= 0:
            return 0.0
        return -math.expm1(-float(self.rate) * x)

    def sample(self, rng: random.Random) -> float:
        return rng.expovariate(float(self.rate))


ParametricMeasure = Union[Exponential, StepMeasure]


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many point masses at strictly increasing rational locations."""

    atoms: tuple[tuple[Fraction, Fraction], ...]  # (location, mass)

    def __post_init__(self):
        atoms = tuple((Fraction(x), Fraction(m)) for x, m in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ValueError("need at least one atom")
        locs = [x for x, _ in atoms]
        if any(x2 <= x1 for x1, x2 in zip(locs, locs[1:])):
            raise ValueError("atom locations must be strictly increasing")
        if any(m <= 0 for _, m in atoms):
            raise ValueError("atom masses must be positive")
        if sum(m for _, m in atoms) != 1:
            raise ValueError("atom masses must total 1")

    def cdf(self, x) -> Fraction:
        x = Fraction(x)
        return sum((m for loc, m in self.atoms if loc <= x), Fraction(0))

    def mass_at(self, x) -> Fraction:
        x = Fraction(x)
        return sum((m for loc, m in self.atoms if loc == x), Fraction(0))

    @cached_property
    def _cumulative(self) -> tuple[float, ...]:
        acc = Fraction(0)
        out = []
        for _, m in self.atoms:
            acc += m
            out.append(float(acc))
        return tuple(out)

    def sample(self, rng: random.Random) -> Fraction:
        u = rng.random()
        k = min(bisect.bisect_right(self._cumulative, u), len(self.atoms) - 1)
        return self.atoms[k][0]


@dataclass(frozen=True)
class CanonicalPair:
    """Pair (mu, nu) of step measures whose average is Lebesgue on [0,1].

    Both components are stored on their common breakpoint refinement; on
    every cell the two densities add to exactly 2.  ``resolution`` is set
    when the pair was produced by grid approximation of non-step inputs,
    and None when it is exact.
    """

    mu: StepMeasure
    nu: StepMeasure
    resolution: int | None = None

    def __post_init__(self):
        grid = sorted(set(self.mu.breakpoints) | set(self.nu.breakpoints))
        mu = self.mu.refine(grid) if self.mu.breakpoints != tuple(grid) else self.mu
        nu = self.nu.refine(grid) if self.nu.breakpoints != tuple(grid) else self.nu
        if mu.breakpoints != nu.breakpoints:
            raise ValueError("mu and nu must live on a common support")
        if mu.support != (Fraction(0), Fraction(1)):
            raise ValueError("canonical pairs live on [0, 1]")
        for k, (dm, dn) in enumerate(zip(mu.densities, nu.densities)):
            if dm + dn != 2:
                raise ValueError(
                    f"densities on cell {k} add to {dm + dn}, expected 2 "
                    "(the average of the pair must be Lebesgue measure)"
                )
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @classmethod
    def lebesgue(cls) -> "CanonicalPair":
        return cls(StepMeasure.lebesgue(), StepMeasure.lebesgue())

    @classmethod
    def from_mu(cls, mu: StepMeasure) -> "CanonicalPair":
        """Complete mu (with mu <= 2*Lebesgue on [0,1]) to a canonical pair."""
        nu = StepMeasure(mu.breakpoints, tuple(2 - d for d in mu.densities))
        return cls(mu, nu)

    def cells(self) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """(lo, hi, mu-density, nu-density) per cell of the common grid."""
        bps = self.mu.breakpoints
        return [
            (bps[k], bps[k + 1], self.mu.densities[k], self.nu.densities[k])
            for k in range(len(bps) - 1)
        ]

    def to_json(self) -> dict:
        data = {"mu": self.mu.to_json(), "nu": self.nu.to_json()}
        if self.resolution is not None:
            data["resolution"] = self.resolution
        return data

    @classmethod
    def from_json(cls, data: dict) -> "CanonicalPair":
        return cls(
            StepMeasure.from_json(data["mu"]),
            StepMeasure.from_json(data["nu"]),
            data.get("resolution"),
        )


@dataclass(frozen=True)
class AtomicPair:
    """Empirical measures reading the letter positions of a balanced word.

    For a word y of size N, mu places mass 1/N at l/(2N) for every
    a-position l (1-based), nu likewise at b-positions; their average is
    uniform on the grid {l/(2N)}.
    """

    word: str

    def __post_init__(self):
        check_balanced(self.word)
        if not self.word:
            raise ValueError("the empty word carries no empirical measures")

    @property
    def size(self) -> int:
        return len(self.word) // 2

    def _atoms(self, letter: str) -> AtomicMeasure:
        n = self.size
        return AtomicMeasure(
            tuple(
                (Fraction(i + 1, 2 * n), Fraction(1, n))
                for i, ch in enumerate(self.word)
                if ch == letter
            )
        )

    @property
    def mu(self) -> AtomicMeasure:
        return self._atoms("a")

    @property
    def nu(self) -> AtomicMeasure:
        return self._atoms("b")

    @property
    def average(self) -> AtomicMeasure:
        """(mu + nu)/2: the uniform measure on the grid {l/(2N)}."""
        n = self.size
        return AtomicMeasure(
            tuple((Fraction(i, 2 * n), Fraction(1, 2 * n)) for i in range(1, 2 * n + 1))
        )


MeasurePair = Union[CanonicalPair, AtomicPair]


def empirical_pair(y: str) -> AtomicPair:
    """The atomic pair encoding a-positions and b-positions of y."""
    return AtomicPair(y)


def interleave_pattern(xs, ys) -> str:
    """Sort the union of xs (a-points) and ys (b-points) and read the letters.

    All values must be distinct; ties make the pattern undefined.
    """
    tagged = [(x, "a") for x in xs] + [(y, "b") for y in ys]
    tagged.sort()
    for (v1, _), (v2, _) in zip(tagged, tagged[1:]):
        if v1 == v2:
            raise ValueError("tied values have no interleaving pattern")
    return "".join(t for _, t in tagged)


def _step_pattern_prob(pair: CanonicalPair, w: str) -> Fraction:
    """Exact interleaving probability for a diffuse canonical pair.

    Conditioning on how many points land in each density cell reduces the
    event to a product over cells: within a cell the points are uniform, so
    a block with i a's and j b's matches its piece of w with probability
    1/C(i+j, i).  Folding the multinomial coefficients gives

        P = m!^2 * sum over cuts of w into per-cell blocks of
            prod_k mu(I_k)^{i_k} * nu(I_k)^{j_k} / (i_k + j_k)!

    evaluated by dynamic programming over (cell, consumed prefix of w).
    """
    m = word_size(w)
    mu_masses = pair.mu.cell_masses()
    nu_masses = pair.nu.cell_masses()
    length = 2 * m
    # state[pos] = sum over ways of placing w[pos:] into the remaining cells
    state = [Fraction(0)] * (length + 1)
    state[length] = Fraction(1)
    for mu_m, nu_m in zip(reversed(mu_masses), reversed(nu_masses)):
        nxt = [Fraction(0)] * (length + 1)
        for pos in range(length + 1):
            acc = Fraction(0)
            n_a = n_b = 0
            weight = Fraction(1)
            for end in range(pos, length + 1):
                if end > pos:
                    if w[end - 1] == "a":
                        n_a += 1
                        weight = weight * mu_m
                    else:
                        n_b += 1
                        weight = weight * nu_m
                if state[end]:
                    acc += weight / math.factorial(end - pos) * state[end]
            nxt[pos] = acc
        state = nxt
    return Fraction(math.factorial(m) ** 2) * state[0]


def _atomic_subset_patterns(pair: AtomicPair, m: int):
    """Yield (pattern, mass-product) over distinct-atom selections.

    Enumerates every m-subset of mu-atoms paired with every m-subset of
    nu-atoms; the factor for ordered i.i.d. tuples is applied by the caller.
    """
    mu_atoms = pair.mu.atoms
    nu_atoms = pair.nu.atoms
    for a_sel in itertools.combinations(mu_atoms, m):
        a_mass = math.prod((mass for _, mass in a_sel), start=Fraction(1))
        for b_sel in itertools.combinations(nu_atoms, m):
            locs = [loc for loc, _ in a_sel] + [loc for loc, _ in b_sel]
            if len(set(locs)) < 2 * m:
                continue  # coinciding points lie outside every pattern set
            mass = a_mass * math.prod((ms for _, ms in b_sel), start=Fraction(1))
            yield interleave_pattern(
                [loc for loc, _ in a_sel], [loc for loc, _ in b_sel]
            ), mass


def _check_atomic_budget(pair: AtomicPair, m: int, cap: int) -> None:
    n_mu = len(pair.mu.atoms)
    n_nu = len(pair.nu.atoms)
    if m > min(n_mu, n_nu):
        raise CapExceededError(f"cannot select {m} atoms from measures of size {n_mu}, {n_nu}")
    if m > cap:
        raise CapExceededError(f"pattern size {m} exceeds atomic cap {cap}")
    if math.comb(n_mu, m) * math.comb(n_nu, m) > _ATOMIC_BUDGET:
        raise CapExceededError("atom-subset enumeration exceeds the size budget")


def pattern_prob_exact(
    pair: MeasurePair,
    w: str,
    step_cap: int = STEP_PATTERN_CAP,
    atomic_cap: int = ATOMIC_PATTERN_CAP,
) -> Fraction:
    """P{m draws from mu and m draws from nu interleave as w}, exactly.

    For diffuse step pairs the probabilities over all of W_m total 1; for
    atomic pairs they total the probability that all 2m draws are distinct,
    which is at most 1.
    """
    m = word_size(w)
    if isinstance(pair, CanonicalPair):
        if m > step_cap:
            raise CapExceededError(f"pattern size {m} exceeds step cap {step_cap}")
        return _step_pattern_prob(pair, w)
    if isinstance(pair, AtomicPair):
        _check_atomic_budget(pair, m, atomic_cap)
        ordered = Fraction(math.factorial(m) ** 2)
        total = Fraction(0)
        for pattern, mass in _atomic_subset_patterns(pair, m):
            if pattern == w:
                total += mass
        return ordered * total
    raise TypeError(f"unsupported measure pair {type(pair).__name__}")


def pattern_distribution(pair: MeasurePair, m: int, **caps) -> dict[str, Fraction]:
    """pattern_prob_exact over all of W_m, computed in one sweep."""
    if isinstance(pair, AtomicPair):
        _check_atomic_budget(pair, m, caps.get("atomic_cap", ATOMIC_PATTERN_CAP))
        ordered = Fraction(math.factorial(m) ** 2)
        dist: dict[str, Fraction] = {}
        for pattern, mass in _atomic_subset_patterns(pair, m):
            dist[pattern] = dist.get(pattern, Fraction(0)) + ordered * mass
        return dist
    return {w: pattern_prob_exact(pair, w, **caps) for w in enumerate_balanced(m)}


@dataclass(frozen=True)
class MCEstimate:
    """A Monte Carlo estimate with its binomial standard error."""

    value: float
    stderr: float
    trials: int


def _component_sampler(measure, rng: random.Random):
    if isinstance(measure, (StepMeasure, Exponential, AtomicMeasure)):
        return lambda: measure.sample(rng)
    raise TypeError(f"cannot sample from {type(measure).__name__}")


def pattern_prob_mc(pair: MeasurePair, w: str, trials: int, rng: random.Random) -> MCEstimate:
    """Monte Carlo oracle for pattern_prob_exact.

    Each trial draws m points from mu and m from nu and checks whether the
    sorted interleaving reads w; tied draws match no pattern.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    m = word_size(w)
    draw_mu = _component_sampler(pair.mu, rng)
    draw_nu = _component_sampler(pair.nu, rng)
    hits = 0
    for _ in range(trials):
        xs = [draw_mu() for _ in range(m)]
        ys = [draw_nu() for _ in range(m)]
        try:
            pattern = interleave_pattern(xs, ys)
        except ValueError:
            continue
        if pattern == w:
            hits += 1
    p = hits / trials
    return MCEstimate(p, math.sqrt(p * (1 - p) / trials), trials)


@dataclass
class IdentityReport:
    """Result of sweeping an exact identity over a family of inputs."""

    label: str
    checked: int = 0
    violations: list[str] | None = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = []

    @property
    def ok(self) -> bool:
        return not self.violations


def empirical_identity_check(y: str, m: int) -> IdentityReport:
    """Check (N^m)^2 * pattern_prob(empirical_pair(y), w) = (m!)^2 * binom(y, w).

    Both sides are computed independently — the left by enumerating atom
    selections, the right by the subword-count recurrence — and compared
    exactly for every w of size m.
    """
    n = word_size(y)
    if m > n:
        raise CapExceededError(f"pattern size {m} exceeds word size {n}")
    report = IdentityReport(label=f"empirical identity y={y!r} m={m}")
    pair = empirical_pair(y)
    dist = pattern_distribution(pair, m)
    scale = Fraction(n**m) ** 2
    msq = math.factorial(m) ** 2
    for w in enumerate_balanced(m):
        lhs = scale * dist.get(w, Fraction(0))
        rhs = Fraction(msq * subword_count(y, w))
        report.checked += 1
        if lhs != rhs:
            report.violations.append(f"w={w!r}: {lhs} != {rhs}")
    return report


def _mixture_cdf_float(zeta, eta, z: float) -> float:
    return 0.5 * (zeta.cdf_float(z) + eta.cdf_float(z))


def _invert_mixture(zeta, eta, u: float) -> float:
    """Solve (F_zeta(z) + F_eta(z)) / 2 = u by bisection."""
    lo = 0.0
    for meas in (zeta, eta):
        if isinstance(meas, StepMeasure):
            lo = min(lo, float(meas.support[0]))
    hi = max(1.0, lo + 1.0)
    while _mixture_cdf_float(zeta, eta, hi) < u:
        hi = lo + 2 * (hi - lo)
        if hi > 1e12:
            return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _mixture_cdf_float(zeta, eta, mid) < u:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def _canonicalize_steps(zeta: StepMeasure, eta: StepMeasure) -> CanonicalPair:
    """Exact push-forward of a pair of step measures by the mixture CDF."""
    grid = sorted(set(zeta.breakpoints) | set(eta.breakpoints))
    lo, hi = grid[0], grid[-1]
    z = zeta if zeta.support == (lo, hi) else _extend_support(zeta, lo, hi)
    e = eta if eta.support == (lo, hi) else _extend_support(eta, lo, hi)
    z = z.refine(grid)
    e = e.refine(grid)
    mu_bps = [Fraction(0)]
    mu_dens: list[Fraction] = []
    nu_dens: list[Fraction] = []
    pos = Fraction(0)
    for dz, de, b1, b2 in zip(z.densities, e.densities, grid, grid[1:]):
        slope = (dz + de) / 2
        if slope == 0:
            continue  # the mixture CDF is flat here; the cell maps to a point
        pos += slope * (b2 - b1)
        mu_bps.append(pos)
        mu_dens.append(dz / slope)
        nu_dens.append(de / slope)
    mu = StepMeasure(tuple(mu_bps), tuple(mu_dens))
    nu = StepMeasure(tuple(mu_bps), tuple(nu_dens))
    return CanonicalPair(mu, nu)


def _extend_support(measure: StepMeasure, lo: Fraction, hi: Fraction) -> StepMeasure:
    bps = list(measure.breakpoints)
    dens = list(measure.densities)
    if lo < bps[0]:
        bps.insert(0, lo)
        dens.insert(0, Fraction(0))
    if hi > bps[-1]:
        bps.append(hi)
        dens.append(Fraction(0))
    return StepMeasure(tuple(bps), tuple(dens))


def canonicalize(
    zeta: ParametricMeasure, eta: ParametricMeasure, resolution: int = 256
) -> CanonicalPair:
    """Push (zeta, eta) forward by z -> (F_zeta(z) + F_eta(z)) / 2.

    The push-forwards (mu, nu) average to Lebesgue measure on [0,1] and
    induce the same interleaving law as the inputs.  Step inputs transform
    exactly; parametric inputs are approximated on a uniform grid of
    `resolution` cells whose masses come from the closed-form CDFs, with nu
    defined cellwise as density 2 minus mu so the canonical constraint holds
    exactly.  The approximation records its resolution on the result.
    """
    for meas in (zeta, eta):
        if not isinstance(meas, (StepMeasure, Exponential)):
            raise ValueError(f"{type(meas).__name__} is not a supported diffuse measure")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if isinstance(zeta, StepMeasure) and isinstance(eta, StepMeasure):
        return _canonicalize_steps(zeta, eta)

    # Cumulative mu-masses at the grid points, then rationalized.  Snapping
    # the cumulative values (not the cell masses) keeps the total exactly 1.
    cdf_vals = [0.0]
    for i in range(1, resolution):
        z = _invert_mixture(zeta, eta, i / resolution)
        cdf_vals.append(zeta.cdf_float(z))
    cdf_vals.append(1.0)
    cum = [Fraction(c).limit_denominator(10**9) for c in cdf_vals]
    cum[0], cum[-1] = Fraction(0), Fraction(1)
    cell = Fraction(1, resolution)
    for i in range(1, resolution + 1):  # clamp into [prev, prev + 2*cell]
        cum[i] = min(max(cum[i], cum[i - 1]), cum[i - 1] + 2 * cell)
    for i in range(resolution, 0, -1):  # keep 1 reachable: mass_i <= 2*cell
        cum[i - 1] = min(max(cum[i - 1], cum[i] - 2 * cell), cum[i])
    mu = StepMeasure(
        tuple(Fraction(i, resolution) for i in range(resolution + 1)),
        tuple((cum[i + 1] - cum[i]) / cell for i in range(resolution)),
    )
    pair = CanonicalPair.from_mu(mu)
    return CanonicalPair(pair.mu, pair.nu, resolution=resolution)


def fixture_pairs() -> dict[str, CanonicalPair]:
    """Named canonical pairs exercising qualitatively different boundaries.

    Includes the Lebesgue pair (base chain), a fully separated pair (all
    a's before all b's), and three mixed-density pairs.
    """
    f = Fraction
    return {
        "lebesgue": CanonicalPair.lebesgue(),
        "separated": CanonicalPair(
            StepMeasure((f(0), f(1, 2), f(1)), (f(2), f(0))),
            StepMeasure((f(0), f(1, 2), f(1)), (f(0), f(2))),
        ),
        "crossed": CanonicalPair(
            StepMeasure((f(0), f(1, 2), f(1)), (f(1, 2), f(3, 2))),
            StepMeasure((f(0), f(1, 2), f(1)), (f(3, 2), f(1, 2))),
        ),
        "three-cell": CanonicalPair(
            StepMeasure((f(0), f(1, 3), f(2, 3), f(1)), (f(2), f(1, 2), f(1, 2))),
            StepMeasure((f(0), f(1, 3), f(2, 3), f(1)), (f(0), f(3, 2), f(3, 2))),
        ),
        "skewed": CanonicalPair(
            StepMeasure((f(0), f(1, 4), f(1)), (f(2), f(2, 3))),
            StepMeasure((f(0), f(1, 4), f(1)), (f(0), f(4, 3))),
        ),
    }


def sample_measure(measure, rng: random.Random):
    """Draw one point from a step, parametric, or atomic measure."""
    if isinstance(measure, (StepMeasure, Exponential, AtomicMeasure)):
        return measure.sample(rng)
    raise TypeError(f"cannot sample from {type(measure).__name__}")


def _cdf_evaluator(measure):
    """(points, cdf, mass_at) with cdf using a precomputed prefix table."""
    if isinstance(measure, StepMeasure):
        lo, hi = measure.support
        if lo < 0 or hi > 1:
            raise ValueError("weak_distance expects measures supported in [0,1]")
        bps = measure.breakpoints
        cum = [Fraction(0)]
        for mass in measure.cell_masses():
            cum.append(cum[-1] + mass)

        def cdf(x: Fraction) -> Fraction:
            if x <= bps[0]:
                return Fraction(0)
            if x >= bps[-1]:
                return Fraction(1)
            k = bisect.bisect_right(bps, x) - 1
            return cum[k] + measure.densities[k] * (x - bps[k])

        return bps, cdf, lambda x: Fraction(0)

    if isinstance(measure, AtomicMeasure):
        locs = [loc for loc, _ in measure.atoms]
        if locs[0] < 0 or locs[-1] > 1:
            raise ValueError("weak_distance expects measures supported in [0,1]")
        cum = [Fraction(0)]
        for _, mass in measure.atoms:
            cum.append(cum[-1] + mass)

        def cdf(x: Fraction) -> Fraction:
            return cum[bisect.bisect_right(locs, x)]

        def mass_at(x: Fraction) -> Fraction:
            k = bisect.bisect_left(locs, x)
            if k < len(locs) and locs[k] == x:
                return measure.atoms[k][1]
            return Fraction(0)

        return locs, cdf, mass_at

    raise TypeError(f"no exact CDF for {type(measure).__name__}")


def weak_distance(p, q) -> float:
    """Kolmogorov distance sup_x |F_p(x) - F_q(x)| for measures on [0,1].

    Both CDFs are piecewise linear between breakpoints and atoms, so the
    supremum is attained at one of those points or at a left limit there;
    the candidates are evaluated exactly and the maximum returned as float.
    """
    points_p, cdf_p, jump_p = _cdf_evaluator(p)
    points_q, cdf_q, jump_q = _cdf_evaluator(q)
    candidates = {Fraction(0), Fraction(1)} | set(points_p) | set(points_q)
    best = Fraction(0)
    for x in candidates:
        fp, jp = cdf_p(x), jump_p(x)
        fq, jq = cdf_q(x), jump_q(x)
        best = max(best, abs(fp - fq), abs((fp - jp) - (fq - jq)))
    return float(best)

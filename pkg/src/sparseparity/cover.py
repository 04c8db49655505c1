"""Random covering families over a balanced partition of coordinates.

The construction splits the ``n`` coordinates round-robin into ``T = alpha*t``
parts and draws ``m`` random ``alpha*k``-element subsets of the part indices.
A family *covers* when every ``k``-subset of part indices is contained in
some drawn subset; ``m`` is sized so a single draw covers with probability
better than 1/2, and :func:`build_verified_family` resamples until an
exhaustive check certifies coverage.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceededError
from .rng import SplitMix64

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_BUDGET = 10**6
DEFAULT_SAMPLE_ATTEMPTS = 10


def binom(x: int, y: int) -> int:
    """Exact binomial coefficient; 0 when y > x."""
    if x < 0 or y < 0:
        raise ValueError("binom arguments must be nonnegative")
    return math.comb(x, y)


@dataclass(frozen=True)
class CoverParams:
    """Dimensions of a covering-family construction.

    ``n`` ambient coordinates are split into ``T = alpha * t`` parts; the
    family must cover every ``k``-subset of parts with ``alpha*k``-element
    subsets.
    """

    n: int
    k: int
    t: int
    alpha: int
    T: int = field(init=False)

    def __post_init__(self):
        if not 0 <= self.k <= self.t <= self.n:
            raise ValueError(
                f"need 0 <= k <= t <= n, got k={self.k}, t={self.t}, n={self.n}"
            )
        if self.alpha < 2:
            raise ValueError(f"alpha must be >= 2, got {self.alpha}")
        object.__setattr__(self, "T", self.alpha * self.t)
        if self.alpha * self.k > self.T:
            raise ValueError("alpha*k exceeds the number of parts")
        if self.T > self.n:
            raise ValueError(
                f"number of parts T=alpha*t={self.T} exceeds n={self.n}"
            )


@dataclass(frozen=True)
class CoverFamily:
    """A partition into parts plus candidate covering subsets of parts."""

    params: CoverParams
    parts: tuple[tuple[int, ...], ...]
    subsets: tuple[tuple[int, ...], ...]
    verified: bool

    @property
    def m(self) -> int:
        return len(self.subsets)

    def support_coords(self, subset_index: int) -> tuple[int, ...]:
        """Coordinates of the union of parts named by one subset, sorted."""
        coords: list[int] = []
        for part_index in self.subsets[subset_index]:
            coords.extend(self.parts[part_index])
        return tuple(sorted(coords))


def family_size_m(params: CoverParams) -> int:
    """Number of random subsets to draw: ceil(2 * ratio * ln C(T,k)), >= 1.

    ``ratio`` is C(T, alpha*k) / C(T-k, alpha*k - k), the reciprocal of the
    probability that one random subset covers a fixed k-subset of parts.
    """
    T, k, ak = params.T, params.k, params.alpha * params.k
    if k == 0:
        return 1
    ratio = Fraction(binom(T, ak), binom(T - k, ak - k))
    m = math.ceil(2 * ratio * math.log(binom(T, k)))
    return max(1, m)


def round_robin_parts(n: int, T: int) -> tuple[tuple[int, ...], ...]:
    """Partition range(n) into T parts by index mod T."""
    return tuple(tuple(range(j, n, T)) for j in range(T))


def sample_family(params: CoverParams, rng_seed: int) -> CoverFamily:
    """Draw an unverified family deterministically from the seed."""
    rng = SplitMix64(rng_seed)
    parts = round_robin_parts(params.n, params.T)
    m = family_size_m(params)
    ak = params.alpha * params.k
    subsets = tuple(rng.sample_sorted(params.T, ak) for _ in range(m))
    return CoverFamily(params=params, parts=parts, subsets=subsets, verified=False)


def verify_cover(
    family: CoverFamily, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> tuple[CoverFamily, tuple[int, ...] | None]:
    """Exhaustively check coverage of every k-subset of parts.

    Returns ``(certified_family, None)`` on success, or the unchanged family
    with the lexicographically first uncovered k-subset as witness.
    """
    T, k = family.params.T, family.params.k
    total = binom(T, k)
    if total > budget:
        raise BudgetExceededError(
            f"C(T={T}, k={k}) = {total} exceeds enumeration budget {budget}"
        )
    covered: set[int] = set()
    for subset in family.subsets:
        for combo in itertools.combinations(subset, k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            covered.add(mask)
    for combo in itertools.combinations(range(T), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if mask not in covered:
            return family, combo
    certified = CoverFamily(
        params=family.params,
        parts=family.parts,
        subsets=family.subsets,
        verified=True,
    )
    return certified, None


def build_verified_family(
    params: CoverParams,
    rng_seed: int,
    attempts: int = DEFAULT_SAMPLE_ATTEMPTS,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> CoverFamily:
    """Sample families until one verifies.

    Attempt 0 uses ``rng_seed`` itself; retry i uses the i-th output of a
    SplitMix64 stream seeded with ``rng_seed``, so the whole procedure is
    reproducible from the one seed.  When the verification enumeration is
    over budget the first sampled family is returned unverified with a
    logged warning.
    """
    meta = SplitMix64(rng_seed)
    seed = rng_seed
    for attempt in range(attempts):
        family = sample_family(params, seed)
        try:
            certified, witness = verify_cover(family, budget=budget)
        except BudgetExceededError:
            logger.warning(
                "coverage check for T=%d, k=%d is over the enumeration "
                "budget; using the family unverified",
                params.T,
                params.k,
            )
            return family
        if witness is None:
            return certified
        seed = meta.next_u64()
    raise BudgetExceededError(
        f"no verified family within {attempts} attempts "
        f"(T={params.T}, k={params.k}, m={family_size_m(params)})"
    )


@dataclass(frozen=True)
class RatioBoundReport:
    """Exact-binomial comparison of the drawing ratio against its target.

    ``ratio_log2`` is log2 of C(T, alpha*k) / C(T-k, alpha*k - k) and
    ``rhs_log2`` is log2 of e^(-k/4.01) * C(t, k); ``holds`` records
    whether the ratio stays below the target.
    """

    ratio_log2: float
    rhs_log2: float
    holds: bool


def ratio_bound_report(t: int, k: int, alpha: int) -> RatioBoundReport:
    """Compare the subset-drawing ratio with e^(-k/4.01) * C(t,k)."""
    if not 0 <= k <= t:
        raise ValueError(f"need 0 <= k <= t, got k={k}, t={t}")
    if alpha < 2:
        raise ValueError(f"alpha must be >= 2, got {alpha}")
    T = alpha * t
    ak = alpha * k
    num = binom(T, ak)
    den = binom(T - k, ak - k)
    ratio_log2 = math.log2(num) - math.log2(den)
    rhs_log2 = -k / 4.01 / math.log(2) + math.log2(binom(t, k))
    return RatioBoundReport(
        ratio_log2=ratio_log2,
        rhs_log2=rhs_log2,
        holds=ratio_log2 <= rhs_log2,
    )

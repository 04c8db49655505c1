"""Noise-tolerant learning by mislabel-set enumeration over a noiseless core.

Labels arrive flipped independently with rate ``eta < 1/3``.  The driver
draws ``s_prime`` examples, guesses which of them were mislabeled by
enumerating every flip set up to ``floor(3*eta*s_prime/2)`` indices,
un-flips each guess, and hands the repaired stream to a noiseless inner
learner.  Every distinct hypothesis the inner learner produces becomes a
candidate; fresh verification examples then pick the candidate with the
best agreement.  The flip budget covers the actual mislabel count with
high probability, so the true vector is always among the candidates, and
the verification margin separates it from impostors.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .cover import (
    CoverFamily,
    CoverParams,
    binom,
    build_verified_family,
    sample_family,
)
from .errors import (
    BudgetExceededError,
    BudgetExhaustedError,
    InconsistentStreamError,
    NoCandidatesError,
    SourceExhaustedError,
)
from .gf2 import BitVector
from .online import learner_from_family
from .pac import PacParams, pac_learn, survival_threshold
from .sources import LabeledExample, ReplaySource

logger = logging.getLogger(__name__)

DEFAULT_FLIP_SET_LIMIT = 10**7


def entropy(p: float) -> float:
    """Binary entropy H(p) in bits, with H(0) = H(1) = 0 by continuity."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"entropy argument must be in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    # -p*log2(p) stays finite even for subnormal p, unlike p*log2(1/p)
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def flip_budget_for(eta: float, s_prime: int) -> int:
    """floor(3/2 * eta * s_prime), computed exactly from the given eta."""
    return int(Fraction(3, 2) * Fraction(eta) * s_prime)


def flip_set_count(s_prime: int, flip_budget: int) -> int:
    """Number of index subsets of size at most the budget, exactly."""
    return sum(binom(s_prime, i) for i in range(flip_budget + 1))


def flip_set_iterator(
    s_prime: int, flip_budget: int
) -> Iterator[tuple[int, ...]]:
    """Subsets of range(s_prime) by nondecreasing size, lex within size."""
    if flip_budget > s_prime:
        raise ValueError(
            f"flip budget {flip_budget} exceeds sample count {s_prime}"
        )
    for size in range(flip_budget + 1):
        yield from itertools.combinations(range(s_prime), size)


def apply_flips(
    examples: Sequence[LabeledExample], flip_set: Sequence[int]
) -> list[LabeledExample]:
    """The same examples with the labels at the given indices inverted."""
    flipped = list(examples)
    for i in flip_set:
        ex = flipped[i]
        flipped[i] = LabeledExample(ex.a, ex.label ^ 1)
    return flipped


@dataclass(frozen=True)
class NoisyParams:
    """Sample counts for one noisy-learning run.

    ``flip_budget`` is always ``floor(3/2 * eta * s_prime)``; the named
    constructors differ only in where ``s_prime`` comes from.
    """

    eta: float
    delta: float
    s_prime: int
    s_doubleprime: int
    flip_budget: int

    def __post_init__(self):
        if not 0.0 < self.eta < 1.0 / 3.0:
            raise ValueError(f"noise rate must be in (0, 1/3), got {self.eta}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if self.s_prime < 1 or self.s_doubleprime < 1:
            raise ValueError("sample counts must be positive")
        if self.flip_budget != flip_budget_for(self.eta, self.s_prime):
            raise ValueError(
                "flip budget must equal floor(3/2 * eta * s_prime)"
            )

    @staticmethod
    def verification_count(eta: float, delta: float, s_prime: int) -> int:
        """ceil(600 * (s_prime * H(3 eta / 2) + log2(8 / delta)))."""
        return math.ceil(
            600 * (s_prime * entropy(1.5 * eta) + math.log2(8.0 / delta))
        )

    @classmethod
    def from_inner(cls, inner, eta: float, delta: float) -> "NoisyParams":
        """Size the run from the inner learner's declared sample complexity.

        ``s_prime = ceil(20 * s(delta/2) * log2(1/delta))``.  Exhaustively
        enumerating the flip sets this implies is usually far beyond desk
        scale; see :meth:`from_counts` for explicitly sized runs.
        """
        s_inner = inner.sample_complexity(delta / 2.0)
        s_prime = math.ceil(20 * s_inner * math.log2(1.0 / delta))
        return cls.from_counts(eta, delta, s_prime)

    @classmethod
    def from_counts(
        cls,
        eta: float,
        delta: float,
        s_prime: int,
        s_doubleprime: int | None = None,
    ) -> "NoisyParams":
        """Build params from an explicit primary sample count."""
        if s_doubleprime is None:
            s_doubleprime = cls.verification_count(eta, delta, s_prime)
        return cls(
            eta=eta,
            delta=delta,
            s_prime=s_prime,
            s_doubleprime=s_doubleprime,
            flip_budget=flip_budget_for(eta, s_prime),
        )


def agreement_select(
    candidates: Sequence[BitVector], verif: Sequence[LabeledExample]
) -> int:
    """Index of the candidate agreeing with the most verification labels.

    Ties go to the lowest index.  The margin between the best and second
    best disagreement fractions is logged for diagnostics.
    """
    if not candidates:
        raise ValueError("agreement_select needs at least one candidate")
    disagreements = []
    for x in candidates:
        count = sum(1 for ex in verif if ex.a.dot(x) != ex.label)
        disagreements.append(count)
    best = min(range(len(candidates)), key=lambda i: disagreements[i])
    if len(candidates) > 1 and verif:
        rest = sorted(d for i, d in enumerate(disagreements) if i != best)
        logger.debug(
            "agreement margin: best %.4f, runner-up %.4f (of %d examples)",
            disagreements[best] / len(verif),
            rest[0] / len(verif),
            len(verif),
        )
    return best


@dataclass(frozen=True)
class NoisyReport:
    """Everything observable about one noisy-learning run."""

    output: BitVector
    s_prime: int
    s_doubleprime: int
    flip_budget: int
    inner_invocations: int
    candidate_count: int
    samples_drawn: int


def noisy_learn_report(
    inner,
    source,
    params: NoisyParams,
    flip_set_limit: int = DEFAULT_FLIP_SET_LIMIT,
) -> NoisyReport:
    """Run the reduction and return the output with its run counters."""
    total_sets = flip_set_count(params.s_prime, params.flip_budget)
    if total_sets > flip_set_limit:
        raise BudgetExceededError(
            f"{total_sets} flip sets exceed the enumeration limit "
            f"{flip_set_limit}; shrink s_prime or eta"
        )
    primary = [source.next_example() for _ in range(params.s_prime)]
    candidates: list[BitVector] = []
    seen: set[int] = set()
    invocations = 0
    for flip_set in flip_set_iterator(params.s_prime, params.flip_budget):
        invocations += 1
        x = inner.run(apply_flips(primary, flip_set))
        if x is not None and x.value not in seen:
            seen.add(x.value)
            candidates.append(x)
    if not candidates:
        raise NoCandidatesError(
            f"no flip set of size <= {params.flip_budget} yielded a "
            "hypothesis: noise rate too high for the budget, or the inner "
            "learner is broken"
        )
    verif = [source.next_example() for _ in range(params.s_doubleprime)]
    winner = agreement_select(candidates, verif)
    return NoisyReport(
        output=candidates[winner],
        s_prime=params.s_prime,
        s_doubleprime=params.s_doubleprime,
        flip_budget=params.flip_budget,
        inner_invocations=invocations,
        candidate_count=len(candidates),
        samples_drawn=params.s_prime + params.s_doubleprime,
    )


def noisy_learn(
    inner,
    source,
    params: NoisyParams,
    flip_set_limit: int = DEFAULT_FLIP_SET_LIMIT,
) -> BitVector:
    """The reduction's output vector; see :func:`noisy_learn_report`."""
    return noisy_learn_report(inner, source, params, flip_set_limit).output


class MitmInner:
    """Noiseless inner learner backed by the meet-in-the-middle search.

    Succeeds only when exactly one weight-k vector is consistent with the
    examples.  The left-side syndrome table depends on the example vectors
    but not their labels, so it is cached and reused across the label-only
    variations the flip-set enumeration produces.
    """

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self._cache_key: tuple[int, ...] | None = None
        self._cache: tuple[list[int], dict, list] | None = None

    def sample_complexity(self, delta: float) -> int:
        """Union bound: C(n,k) impostors each survive one example w.p. 1/2."""
        return math.ceil(math.log2(binom(self.n, self.k) / delta))

    def run(self, examples: Sequence[LabeledExample]) -> BitVector | None:
        key = tuple(ex.a.value for ex in examples)
        if key != self._cache_key:
            self._cache_key = key
            self._cache = self._build_tables(examples)
        columns, table, right_supports = self._cache
        labels = 0
        for i, ex in enumerate(examples):
            labels |= ex.label << i
        found: tuple[int, ...] | None = None
        for support, syndrome, size in right_supports:
            for left_support in table.get((syndrome ^ labels, self.k - size), ()):
                if found is not None:
                    return None  # ambiguous: more than one consistent vector
                found = left_support + support
        if found is None:
            return None
        return BitVector.from_support(self.n, found)

    def _build_tables(self, examples: Sequence[LabeledExample]):
        n, k = self.n, self.k
        columns = [0] * n
        for i, ex in enumerate(examples):
            if ex.a.n != n:
                raise ValueError(f"example length {ex.a.n} != n={n}")
            bits = ex.a.value
            for c in range(n):
                if (bits >> c) & 1:
                    columns[c] |= 1 << i
        left = range(0, (n + 1) // 2)
        right = range((n + 1) // 2, n)
        table: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for j in range(k + 1):
            for support in itertools.combinations(left, j):
                syndrome = 0
                for c in support:
                    syndrome ^= columns[c]
                table.setdefault((syndrome, j), []).append(support)
        right_supports = []
        for r in range(k + 1):
            for support in itertools.combinations(right, r):
                syndrome = 0
                for c in support:
                    syndrome ^= columns[c]
                right_supports.append((support, syndrome, r))
        return columns, table, right_supports


class PacOnlineInner:
    """Noiseless inner learner backed by the chart learner's PAC driver.

    The covering family is built once at construction and shared across
    runs; each run replays its example list through a fresh learner.
    """

    def __init__(
        self, n: int, k: int, t: int, alpha: int, delta: float, rng_seed: int
    ):
        self.n = n
        self.k = k
        self.delta = delta
        params = CoverParams(n=n, k=k, t=t, alpha=alpha)
        try:
            self.family: CoverFamily = build_verified_family(params, rng_seed)
        except BudgetExceededError:
            self.family = sample_family(params, rng_seed)
        self.mistake_bound = learner_from_family(self.family).mistake_bound

    def sample_complexity(self, delta: float) -> int:
        """Deterministic ceiling: every mistake-free run is shorter than
        the survival threshold except the last."""
        return (self.mistake_bound + 1) * survival_threshold(
            self.mistake_bound, delta
        )

    def run(self, examples: Sequence[LabeledExample]) -> BitVector | None:
        learner = learner_from_family(self.family)
        pac_params = PacParams(
            delta=self.delta, sample_budget=len(examples)
        )
        try:
            x = pac_learn(learner, ReplaySource(examples), pac_params)
        except (
            BudgetExhaustedError,
            InconsistentStreamError,
            SourceExhaustedError,
        ):
            return None
        if x.popcount() != self.k:
            return None
        return x

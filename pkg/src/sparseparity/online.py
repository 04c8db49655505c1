"""Online mistake-bound learner for sparse parities over subspace charts.

The learner owns one *chart* per covering subset: an affine space over the
coordinates in that subset's parts.  Every weight-``k`` parity is supported
inside at least one chart of a verified family, so the union of chart
solution sets always contains the hidden vector.  Prediction takes a
weighted majority over exact chart sizes; updates intersect every chart
with the constraint ``<a, f> = y``.  A mistaken prediction at least halves
the total mass, which bounds the number of mistakes by ``floor(log2`` of
the initial mass``)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .cover import (
    DEFAULT_ENUMERATION_BUDGET,
    CoverFamily,
    CoverParams,
    build_verified_family,
    sample_family,
)
from .errors import AllChartsEmptyError, BudgetExceededError
from .gf2 import AffineSpace, BitVector

logger = logging.getLogger(__name__)


@dataclass
class SubspaceChart:
    """An affine constraint system over one covering subset's coordinates.

    ``support`` is the sorted tuple of global coordinate indices; local
    coordinate ``i`` of ``space`` is global coordinate ``support[i]``.
    """

    support: tuple[int, ...]
    space: AffineSpace

    def project(self, a: BitVector) -> BitVector:
        return a.restrict(self.support)

    def embed(self, local_point: BitVector, n: int) -> BitVector:
        """Lift a local point to the n-dimensional space, zero off-support."""
        return BitVector(n, _embed_value(self, local_point))


@dataclass(frozen=True)
class Identified:
    f: BitVector


@dataclass(frozen=True)
class Active:
    log2_mass_upper: float
    mistakes: int


Status = Identified | Active


class LearnerState:
    """Mutable state of one learning session."""

    def __init__(self, n: int, k: int, family: CoverFamily):
        self.n = n
        self.k = k
        self.family = family
        seen: dict[tuple[int, ...], None] = dict.fromkeys(family.subsets)
        self.charts: list[SubspaceChart] = []
        for subset in seen:
            coords: list[int] = []
            for part_index in subset:
                coords.extend(family.parts[part_index])
            support = tuple(sorted(coords))
            self.charts.append(
                SubspaceChart(support=support, space=AffineSpace.full(len(support)))
            )
        self.mistakes = 0
        self.rounds = 0
        self.chart_updates = 0
        self.work_units = 0
        self.mass_history: list[int] = [total_mass(self)]

    # Method facade so generic drivers can treat any learner uniformly.

    def predict(self, a: BitVector) -> int:
        return predict(self, a)

    def update(self, a: BitVector, y: int) -> None:
        learner_update(self, a, y)

    def status(self) -> Status:
        return status(self)

    def best_hypothesis(self) -> BitVector | None:
        """A canonical point from the most-constrained chart, or None.

        Within the chosen chart this is the points() enumeration's first
        element (all free coordinates zero), embedded into n coordinates.
        """
        best: SubspaceChart | None = None
        for chart in self.charts:
            if best is None or chart.space.log2_size < best.space.log2_size:
                best = chart
        if best is None:
            return None
        first = next(iter(best.space.points()))
        return best.embed(first, self.n)

    @property
    def mistake_bound(self) -> int:
        initial = self.mass_history[0]
        return initial.bit_length() - 1 if initial > 0 else 0


def new_learner(
    n: int, k: int, t: int, alpha: int, rng_seed: int
) -> LearnerState:
    """Build a learner over a verified covering family.

    Construction never fails on verification trouble: if no family
    verifies within the resampling budget, the seed's first sample is used
    unverified and a warning is logged.
    """
    params = CoverParams(n=n, k=k, t=t, alpha=alpha)
    try:
        family = build_verified_family(params, rng_seed)
    except BudgetExceededError:
        logger.warning(
            "no verified covering family within the attempt budget for "
            "T=%d, k=%d; proceeding with an unverified sample",
            params.T,
            params.k,
        )
        family = sample_family(params, rng_seed)
    return LearnerState(n=n, k=k, family=family)


def learner_from_family(family: CoverFamily) -> LearnerState:
    """Build a learner over a prebuilt (typically shared) family."""
    return LearnerState(n=family.params.n, k=family.params.k, family=family)


def total_mass(state: LearnerState) -> int:
    """Exact number of points across charts, counted with multiplicity."""
    mass = 0
    for chart in state.charts:
        mass += 1 << chart.space.log2_size
    return mass


def predict(state: LearnerState, a: BitVector) -> int:
    """Weighted-majority label over exact chart sizes; ties predict 0."""
    _check_length(state, a)
    if not state.charts:
        raise AllChartsEmptyError(
            "no live charts: the stream is inconsistent with every "
            "tracked hypothesis"
        )
    max_dim = 0
    for chart in state.charts:
        if chart.space.ambient_dim > max_dim:
            max_dim = chart.space.ambient_dim
    counts0 = [0] * (max_dim + 1)
    counts1 = [0] * (max_dim + 1)
    for chart in state.charts:
        s0, s1 = chart.space.split_sizes(chart.project(a))
        if s0 is not None:
            counts0[s0] += 1
        if s1 is not None:
            counts1[s1] += 1
    mass0 = sum(c << e for e, c in enumerate(counts0) if c)
    mass1 = sum(c << e for e, c in enumerate(counts1) if c)
    return 0 if mass0 >= mass1 else 1


def learner_update(state: LearnerState, a: BitVector, y: int) -> None:
    """Intersect every chart with ``<a, f> = y``; drop dead charts.

    The mistake counter is the caller's job: drivers compare the
    prediction with ``y`` before updating (see :func:`step`).
    """
    _check_length(state, a)
    survivors: list[SubspaceChart] = []
    for chart in state.charts:
        state.chart_updates += 1
        space = chart.space
        words = (space.ambient_dim + 63) // 64
        state.work_units += (space.rank + 1) * max(1, words)
        new_space = space.constrain(chart.project(a), y)
        if not new_space.empty:
            survivors.append(SubspaceChart(support=chart.support, space=new_space))
    state.charts = survivors
    state.rounds += 1
    state.mass_history.append(total_mass(state))
    if not survivors:
        raise AllChartsEmptyError(
            "all charts died: labels are noisy or the target is not a "
            f"weight-{state.k} parity"
        )


def step(state: LearnerState, a: BitVector, y: int) -> int:
    """One protocol round: predict, count the mistake, update.

    Returns the prediction made before the update.
    """
    guess = predict(state, a)
    if guess != y:
        state.mistakes += 1
    learner_update(state, a, y)
    return guess


def status(state: LearnerState) -> Status:
    """Identified once every chart pins the same single global vector."""
    if not state.charts:
        return Active(log2_mass_upper=float("-inf"), mistakes=state.mistakes)
    point_value: int | None = None
    for chart in state.charts:
        space = chart.space
        if space.rank != space.ambient_dim:
            return Active(
                log2_mass_upper=math.log2(total_mass(state)),
                mistakes=state.mistakes,
            )
        value = _embed_value(chart, space.sole_point())
        if point_value is None:
            point_value = value
        elif value != point_value:
            return Active(
                log2_mass_upper=math.log2(total_mass(state)),
                mistakes=state.mistakes,
            )
    return Identified(f=BitVector(state.n, point_value))


def embedded_union(state: LearnerState, max_points: int = 1 << 20) -> set[int]:
    """All global vectors across charts, as packed ints (test helper)."""
    if sum(1 << c.space.log2_size for c in state.charts) > max_points:
        raise BudgetExceededError("chart union too large to enumerate")
    union: set[int] = set()
    for chart in state.charts:
        for local in chart.space.points():
            union.add(_embed_value(chart, local))
    return union


def _embed_value(chart: SubspaceChart, local_point: BitVector) -> int:
    bits = local_point.value
    value = 0
    for i, g in enumerate(chart.support):
        if (bits >> i) & 1:
            value |= 1 << g
    return value


def _check_length(state: LearnerState, a: BitVector) -> None:
    if a.n != state.n:
        raise ValueError(
            f"example has length {a.n} but the learner is over {state.n} "
            "coordinates"
        )

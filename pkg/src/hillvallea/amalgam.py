"""AMaLGaM-Univariate core search run on a single cluster.

Each generation fits an axis-aligned Gaussian to the best fraction of the
population, adapts a scalar distribution multiplier, shifts part of the
offspring along the anticipated mean displacement, and preserves a single
elitist survivor. Two extra terminators stop searches that re-explore an
archived niche or that are predicted to converge to a local minimum.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .hillvalley import Cluster, hill_valley_test
from .problem import BudgetedEvaluator, BudgetExhausted, Solution

if TYPE_CHECKING:
    from .orchestrator import ElitistArchive

SELECTION_FRACTION = 0.35
MULTIPLIER_DECREASE = 0.9
MULTIPLIER_INCREASE = 1.0 / 0.9
MULTIPLIER_CAP = 1e4
AMS_SHIFT_FACTOR = 2.0
STDDEV_FLOOR_SCALE = 1e-15
# A search counts as converged once its sampling spread falls below this;
# tight enough that the elitist best is orders of magnitude inside the
# 1e-5 scoring accuracy, loose enough not to waste budget on polishing.
CONVERGED_SPREAD = 1e-7
TARGET_GAP = 1e-12
GENERATION_CEILING = 2000
REEXPLORATION_PERIOD = 5
REEXPLORATION_TEST_POINTS = 5
WINDOW = 5  # generations over which the convergence rate is estimated
GEN_CAP_MULTIPLIER = 50


class TerminationReason(enum.Enum):
    REEXPLORED_NICHE = "reexplored_niche"
    LOCAL_MINIMUM_PREDICTED = "local_minimum_predicted"
    MAXED_OUT = "maxed_out"
    BUDGET_EXHAUSTED = "budget_exhausted"
    CONVERGED = "converged"


@dataclass
class CoreSearchState:
    mean: np.ndarray
    stddev: np.ndarray
    multiplier: float
    population: list[Solution]
    generation: int
    best: Solution
    no_improvement_stretch: int = 0
    best_found_at: int = 0  # generation when best last improved


@dataclass
class ConvergenceTracker:
    """Exponential-convergence bookkeeping for one core search.

    ``b`` approximates the global minimum (best archived elite); the
    history holds the average selection fitness of the most recent
    WINDOW + 1 generations.
    """

    b: float
    history: deque = field(default_factory=lambda: deque(maxlen=WINDOW + 1))
    consecutive_improvements: int = 0

    def record(self, a_g: float) -> None:
        if self.history and a_g < self.history[-1]:
            self.consecutive_improvements += 1
        else:
            self.consecutive_improvements = 0
        self.history.append(a_g)

    @property
    def full(self) -> bool:
        return len(self.history) == WINDOW + 1


def estimate_rate(delta_old: float, delta_new: float, n: int = WINDOW) -> float:
    """Convergence-rate estimate over an n-generation window.

    r_n = 1 - (1 - (delta_old - delta_new)/delta_old)^(1/n), i.e. the
    per-generation shrink factor of the fitness gap under the exponential
    model delta_{g+1} = delta_g * (1 - r).
    """
    ratio = 1.0 - (delta_old - delta_new) / delta_old
    if ratio <= 0.0:
        return 1.0
    return 1.0 - ratio ** (1.0 / n)


def time_to_optimum(delta_new: float, delta_old: float, n: int = WINDOW) -> float:
    """Predicted generations until the fitness gap reaches TARGET_GAP."""
    if delta_new <= TARGET_GAP:
        return 0.0
    return math.log(TARGET_GAP / delta_new) / ((1.0 / n) * math.log(delta_new / delta_old))


def check_convergence_termination(t: ConvergenceTracker, g: int,
                                  gen_cap: int) -> bool:
    """Predict convergence to a local minimum from the gap history.

    Requires a full window. Does not terminate while the gap is negative
    (mean already better than the reference), while the rate estimate is
    non-positive (still exploratory), or unless the gap decreased in each
    of the last WINDOW generations. Otherwise terminates when the current
    generation plus the predicted time to optimum exceeds
    GEN_CAP_MULTIPLIER times gen_cap.
    """
    if not t.full:
        raise ValueError("tracker window not yet full")
    delta_new = t.history[-1] - t.b
    delta_old = t.history[0] - t.b
    if delta_new < 0.0:
        return False
    if delta_old <= 0.0:
        return False
    r = estimate_rate(delta_old, delta_new)
    if r <= 0.0:
        return False
    if t.consecutive_improvements < WINDOW:
        return False
    tto = time_to_optimum(delta_new, delta_old)
    return g + tto > GEN_CAP_MULTIPLIER * gen_cap


def _stddev_floor(spec) -> np.ndarray:
    return STDDEV_FLOOR_SCALE * (spec.upper - spec.lower)


def init_from_cluster(c: Cluster, pop_size: int, e: BudgetedEvaluator,
                      rng: np.random.Generator,
                      min_spread: np.ndarray | None = None) -> CoreSearchState:
    """Fit the initial Gaussian to a cluster and top up its population.

    ``min_spread`` (per-dimension) widens degenerate fits: a singleton or
    very tight cluster would otherwise start with near-zero variance and
    converge on the spot without descending into its valley.
    """
    if not c.members:
        raise ValueError("cluster must be non-empty")
    xs = np.array([m.x for m in c.members])
    mean = xs.mean(axis=0)
    if len(c.members) > 1:
        stddev = xs.std(axis=0, ddof=1)
    else:
        stddev = np.zeros(e.spec.dimension)
    stddev = np.maximum(stddev, _stddev_floor(e.spec))
    if min_spread is not None:
        stddev = np.maximum(stddev, min_spread)
    population = [m.copy() for m in c.members]
    n_extra = pop_size - len(population)
    if n_extra > 0:
        samples = e.spec.clamp(
            mean + stddev * rng.standard_normal((n_extra, e.spec.dimension)))
        try:
            population.extend(e.evaluate_batch(samples))
        except BudgetExhausted as exc:
            population.extend(exc.partial)
            exc.partial = population
            raise
    best = min(population, key=lambda s: s.f).copy()
    return CoreSearchState(mean=mean, stddev=stddev, multiplier=1.0,
                           population=population, generation=0, best=best)


def _select(population: list[Solution]) -> list[Solution]:
    n_sel = math.ceil(SELECTION_FRACTION * len(population))
    return sorted(population, key=lambda s: s.f)[:n_sel]


def generation_step(s: CoreSearchState, e: BudgetedEvaluator,
                    rng: np.random.Generator) -> float:
    """Advance the search by one generation; returns the selection mean
    fitness (a_g) used by the convergence tracker.

    On BudgetExhausted the state keeps its best-so-far and the exception
    propagates.
    """
    spec = e.spec
    pop_size = len(s.population)
    selection = _select(s.population)
    a_g = float(np.mean([sol.f for sol in selection]))
    sel_x = np.array([sol.x for sol in selection])

    old_mean = s.mean
    s.mean = sel_x.mean(axis=0)
    s.stddev = np.maximum(sel_x.std(axis=0, ddof=0), _stddev_floor(spec))
    mean_shift = s.mean - old_mean

    n_off = max(pop_size - 1, 1)
    xs = s.mean + s.multiplier * s.stddev * rng.standard_normal((n_off, spec.dimension))
    n_ams = min(math.ceil(0.5 * SELECTION_FRACTION * pop_size), n_off)
    xs[:n_ams] += AMS_SHIFT_FACTOR * mean_shift
    xs = spec.clamp(xs)

    try:
        offspring = e.evaluate_batch(xs)
    except BudgetExhausted as exc:
        for sol in exc.partial:
            if sol.f < s.best.f:
                s.best = sol.copy()
                s.best_found_at = s.generation + 1
        raise

    improved = [sol for sol in offspring if sol.f < s.best.f]
    if improved:
        winner = min(improved, key=lambda sol: sol.f)
        s.best = winner.copy()
        s.no_improvement_stretch = 0
        s.best_found_at = s.generation + 1
        spread = s.multiplier * s.stddev
        beyond = np.any(np.abs(winner.x - s.mean) > spread)
        if beyond:
            s.multiplier = min(s.multiplier * MULTIPLIER_INCREASE, MULTIPLIER_CAP)
    else:
        s.no_improvement_stretch += 1
        s.multiplier *= MULTIPLIER_DECREASE

    s.population = offspring + [s.best.copy()]
    s.generation += 1
    return a_g


def check_reexploration(s: CoreSearchState, archive: "ElitistArchive",
                        e: BudgetedEvaluator) -> bool:
    """True when the search's best shares a niche with the nearest elite."""
    if len(archive) == 0:
        return False
    elite = archive.nearest(s.best.x)
    try:
        outcome = hill_valley_test(s.best, elite, REEXPLORATION_TEST_POINTS, e)
    except BudgetExhausted:
        return False
    return outcome.same_niche


def run_core_search(c: Cluster, pop_size: int, archive: "ElitistArchive",
                    e: BudgetedEvaluator, rng: np.random.Generator,
                    gen_cap: int,
                    min_spread: np.ndarray | None = None
                    ) -> tuple[Solution, TerminationReason, int]:
    """Run one core search to termination.

    Returns the best solution found, the termination reason, and the
    number of generations executed.
    """
    try:
        state = init_from_cluster(c, pop_size, e, rng, min_spread=min_spread)
    except BudgetExhausted as exc:
        best = min(exc.partial, key=lambda s: s.f).copy() if exc.partial \
            else c.best_solution.copy()
        return best, TerminationReason.BUDGET_EXHAUSTED, 0

    tracker = ConvergenceTracker(b=archive.best_fitness) if len(archive) else None

    while True:
        if state.generation >= GENERATION_CEILING:
            return state.best, TerminationReason.MAXED_OUT, state.generation
        try:
            a_g = generation_step(state, e, rng)
        except BudgetExhausted:
            return state.best, TerminationReason.BUDGET_EXHAUSTED, state.generation
        if tracker is not None:
            tracker.record(a_g)

        if float(np.max(state.stddev)) * state.multiplier < CONVERGED_SPREAD:
            return state.best, TerminationReason.CONVERGED, state.generation
        # Re-exploration only counts against an elite that is at least as
        # fit as this search's best; a worse elite marks a niche whose
        # previous search was cut short, so this one is allowed to finish.
        if (state.generation % REEXPLORATION_PERIOD == 0 and len(archive)
                and archive.nearest(state.best.x).f <= state.best.f
                and check_reexploration(state, archive, e)):
            return (state.best, TerminationReason.REEXPLORED_NICHE,
                    state.generation)
        if (tracker is not None and tracker.full
                and check_convergence_termination(tracker, state.generation, gen_cap)):
            return (state.best, TerminationReason.LOCAL_MINIMUM_PREDICTED,
                    state.generation)

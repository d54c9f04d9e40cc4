"""Hill-Valley same-niche test and hill-valley clustering.

Two solutions share a niche when no point sampled on the segment between
them is worse than both endpoints. Clustering applies the test along
nearest-better-neighbor edges in fitness-sorted order; test solutions are
kept and attached to whichever cluster the tested solution ends up in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .problem import BudgetedEvaluator, BudgetExhausted, Solution

# Upper bound on test points per pair; the count grows with the distance
# between the endpoints relative to the expected nearest-neighbor spacing.
MAX_TEST_POINTS = 5

# Extra nearest-better attempts (beyond the first) per dimension.
EXTRA_ATTEMPTS_PER_DIM = 1


@dataclass
class HillValleyOutcome:
    same_niche: bool
    accepted_tests: list[Solution]
    violator: Solution | None = None


@dataclass
class Cluster:
    members: list[Solution]

    @property
    def best(self) -> int:
        fs = [m.f for m in self.members]
        return int(np.argmin(fs))

    @property
    def best_solution(self) -> Solution:
        return self.members[self.best]


def hill_valley_test(a: Solution, b: Solution, n_test: int,
                     e: BudgetedEvaluator) -> HillValleyOutcome:
    """Decide whether ``a`` and ``b`` occupy the same valley.

    Samples ``n_test`` equidistant interior points on the segment from
    ``a`` to ``b`` (in that order) and accepts iff every point is no worse
    than the worse endpoint. Stops at the first violating point, which is
    excluded from the returned test solutions.
    """
    if np.array_equal(a.x, b.x):
        return HillValleyOutcome(True, [])
    if n_test < 1:
        raise ValueError("n_test must be >= 1 for distinct endpoints")
    worst = max(a.f, b.f)
    accepted: list[Solution] = []
    for k in range(1, n_test + 1):
        point = a.x + (k / (n_test + 1)) * (b.x - a.x)
        sol = e.evaluate(point)
        if sol.f > worst:
            return HillValleyOutcome(False, accepted, violator=sol)
        accepted.append(sol)
    return HillValleyOutcome(True, accepted)


def expected_edge_length(spec, pop_size: int) -> float:
    """Expected nearest-neighbor spacing of a uniform population."""
    volume = float(np.prod(spec.upper - spec.lower))
    return (volume / pop_size) ** (1.0 / spec.dimension)


def test_point_count(a: Solution, b: Solution, edge_length: float) -> int:
    dist = float(np.linalg.norm(a.x - b.x))
    return min(MAX_TEST_POINTS, 1 + int(dist / edge_length))


def cluster_population(pop: list[Solution],
                       e: BudgetedEvaluator) -> list[Cluster]:
    """Partition a population into niches via hill-valley clustering.

    Solutions are visited in ascending-fitness order; each is tested
    against its nearest better neighbor and, on failure, against up to d
    further nearest better neighbors in clusters not yet tried. Accepted
    test solutions travel with the solution into its final cluster. On
    budget exhaustion the clusters built so far are returned.
    """
    if not pop:
        raise ValueError("population must be non-empty")
    spec = e.spec
    d = spec.dimension
    order = sorted(range(len(pop)), key=lambda i: (pop[i].f, i))
    ranked = [pop[i] for i in order]
    scale = spec.upper - spec.lower
    coords = np.array([s.x for s in ranked]) / scale  # box-normalized
    edge = expected_edge_length(spec, len(pop))

    clusters: list[Cluster] = [Cluster([ranked[0]])]
    cluster_of = [0]
    max_attempts = 1 + d * EXTRA_ATTEMPTS_PER_DIM
    n = len(ranked)

    # Only a handful of nearest better neighbors are ever inspected.
    # A KD-tree shortlist avoids the O(n^2 d) brute-force distance pass;
    # the rare solution that exhausts its shortlist falls back to a full
    # scan of its better predecessors.
    shortlist_k = min(n, 8 * max_attempts)
    nn = cKDTree(coords).query(coords, k=shortlist_k)[1] if n > shortlist_k else None

    def better_neighbors(i):
        seen: set[int] = set()
        if nn is not None:
            for j in nn[i]:
                if j < i:
                    seen.add(int(j))
                    yield int(j)
            if len(seen) == i:
                return
        dists = ((coords[:i] - coords[i]) ** 2).sum(axis=1)
        for j in np.argsort(dists, kind="stable"):
            if int(j) not in seen:
                yield int(j)

    for i in range(1, n):
        x = ranked[i]
        pending: list[Solution] = []
        tried: set[int] = set()
        placed = False
        try:
            for j in better_neighbors(i):
                cid = cluster_of[j]
                if tried and cid in tried:
                    continue
                if len(tried) >= max_attempts:
                    break
                tried.add(cid)
                n_test = test_point_count(x, ranked[j], edge)
                outcome = hill_valley_test(x, ranked[j], n_test, e)
                pending.extend(outcome.accepted_tests)
                if outcome.same_niche:
                    clusters[cid].members.append(x)
                    clusters[cid].members.extend(pending)
                    cluster_of.append(cid)
                    placed = True
                    break
        except BudgetExhausted:
            return clusters
        if not placed:
            clusters.append(Cluster([x] + pending))
            cluster_of.append(len(clusters) - 1)
    return clusters

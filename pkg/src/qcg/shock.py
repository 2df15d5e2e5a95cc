"""Truncated exponential radii and the generic ball-growing cut process.

The process grows a sequence of disjoint clusters, each the fresh part of a
quasiball with truncated-exponentially distributed radius, around centers
chosen by a pluggable strategy.  The cutset consists of all arcs leaving a
cluster toward anything outside the cluster prefix grown so far.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContractError, InputError
from .graph import dijkstra

__all__ = ["TruncExp", "trunc_exp_sample", "ShockResult", "sample_shock",
           "exhaust_lowest_id", "stop_after", "path_traversal_strategy"]


@dataclass(frozen=True)
class TruncExp:
    """Density (n/(n-1)) * (1/delta) * exp(-x/delta) on [0, delta*ln n)."""

    delta: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InputError("population must be >= 2 (ln 1 gives empty support)")
        if not (self.delta > 0):
            raise InputError("scale must be positive")

    @property
    def sup(self):
        return self.delta * math.log(self.n)

    def pdf(self, x):
        if 0 <= x < self.sup:
            return self.n / (self.n - 1) / self.delta * math.exp(-x / self.delta)
        return 0.0

    def cdf(self, x):
        if x < 0:
            return 0.0
        if x >= self.sup:
            return 1.0
        return self.n / (self.n - 1) * (1.0 - math.exp(-x / self.delta))

    def sample(self, rng):
        """Inverse-CDF draw: x = -delta * ln(1 - u*(1 - 1/n)), u uniform [0,1)."""
        u = rng.random()
        return -self.delta * math.log(1.0 - u * (1.0 - 1.0 / self.n))


def trunc_exp_sample(dist, rng):
    return dist.sample(rng)


@dataclass
class ShockResult:
    """Clusters B_1..B_t (disjoint), their centers/radii, and the cutset F.

    ``cluster_of[v]`` is the cluster index of v, or None if v was never
    marked.  F contains every arc from a cluster B_i to a vertex outside
    B_1 u ... u B_i (later clusters and unmarked vertices alike).
    """

    clusters: list
    centers: list
    radii: list
    cutset: frozenset
    cluster_of: list


def exhaust_lowest_id(unmarked, history):
    """Default strategy: grow clusters until every vertex is marked."""
    return min(unmarked)


def stop_after(k):
    """Strategy factory: stop the sequence after k clusters."""

    def strategy(unmarked, history):
        if len(history) >= k:
            return None
        return min(unmarked)

    return strategy


def path_traversal_strategy(order):
    """Centers are picked as the first unmarked vertex along ``order``.

    Stops once every vertex of ``order`` is marked; this is the center policy
    the path quasipartition uses for both of its traversal directions.
    """
    want = list(order)

    def strategy(unmarked, history):
        for v in want:
            if v in unmarked:
                return v
        return None

    return strategy


def sample_shock(H, delta, strategy, rng):
    """Grow truncated-exponential quasiballs per ``strategy`` and cut.

    Deterministic given (H, delta, strategy, rng state).  The strategy is
    consulted before each cluster with the current unmarked set and the
    history of (center, radius) choices; returning None ends the sequence.
    """
    if not (delta > 0):
        raise InputError("delta must be positive")
    dist = TruncExp(delta, H.n)
    cluster_of = [None] * H.n
    unmarked = set(range(H.n))
    clusters, centers, radii = [], [], []
    history = []
    while unmarked:
        center = strategy(frozenset(unmarked), tuple(history))
        if center is None:
            break
        if cluster_of[center] is not None or not (0 <= center < H.n):
            raise ContractError(f"strategy returned marked/invalid center {center}")
        r = dist.sample(rng)
        d, _ = dijkstra(H, [center], cap=r)
        idx = len(clusters)
        cluster = sorted(v for v in unmarked if d[v] <= r)
        for v in cluster:
            cluster_of[v] = idx
            unmarked.discard(v)
        clusters.append(cluster)
        centers.append(center)
        radii.append(r)
        history.append((center, r))

    cut = set()
    for a in H.arcs:
        ci = cluster_of[a.tail]
        if ci is None:
            continue
        cj = cluster_of[a.head]
        if cj is None or cj > ci:
            cut.add(a.id)
    return ShockResult(clusters, centers, radii, frozenset(cut), cluster_of)

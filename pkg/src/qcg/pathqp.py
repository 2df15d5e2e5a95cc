"""Quasipartitioning the two directed neighborhoods of a shortest path.

Step 1 grows truncated-exponential out-balls centered on path vertices in
reverse traversal order and cuts every arc leaving a cluster; Step 2 does the
mirror image with in-balls along the forward traversal.  Portals record, for
each path vertex, the nearest Step-1/Step-2 center in path order.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .errors import InputError, PreconditionError
from .graph import is_shortest_path
from .shock import path_traversal_strategy, sample_shock


@dataclass
class PathQPResult:
    path: object              # the DirectedPath Q
    delta: float              # ball scale
    cut_away: frozenset       # F: arcs leaving Step-1 clusters
    cut_toward: frozenset     # F': arcs entering Step-2 clusters
    away: object              # ShockResult of Step 1 (clusters in H)
    toward: object            # ShockResult of Step 2 (clusters in reverse(H))

    @property
    def cutset(self):
        return self.cut_away | self.cut_toward

    def __post_init__(self):
        pos = {v: i for i, v in enumerate(self.path.vertices)}
        self._pos = pos
        # Step-1 centers appear at strictly decreasing path positions,
        # Step-2 centers at strictly increasing ones.
        self._away_pos = [pos[c] for c in self.away.centers]
        self._toward_pos = [pos[c] for c in self.toward.centers]

    def portal_away(self, x):
        """pi_1(x): the Step-1 center whose reverse-traversal interval holds x."""
        p = self._require_on_path(x)
        desc = self._away_pos
        # largest center index whose position is still >= p (descending list)
        lo, hi = 0, len(desc)
        while lo < hi:
            mid = (lo + hi) // 2
            if desc[mid] >= p:
                lo = mid + 1
            else:
                hi = mid
        if lo == 0:
            raise InputError("no Step-1 center precedes x in reverse order")
        return self.away.centers[lo - 1]

    def portal_toward(self, x):
        """pi_2(x): the Step-2 center whose forward-traversal interval holds x."""
        p = self._require_on_path(x)
        asc = self._toward_pos
        lo = bisect.bisect_right(asc, p)
        if lo == 0:
            raise InputError("no Step-2 center precedes x in forward order")
        return self.toward.centers[lo - 1]

    def _require_on_path(self, x):
        if x not in self._pos:
            raise InputError(f"vertex {x} is not on the path")
        return self._pos[x]


def portal_of(result, x, which):
    if which == "away":
        return result.portal_away(x)
    if which == "toward":
        return result.portal_toward(x)
    raise InputError("which must be 'away' or 'toward'")


def _side_cutset(H, cluster_of, entering):
    """Arcs leaving (entering=False) or entering (True) some cluster."""
    cut = set()
    for a in H.arcs:
        ct, ch = cluster_of[a.tail], cluster_of[a.head]
        if entering:
            if ch is not None and ct != ch:
                cut.add(a.id)
        else:
            if ct is not None and ch != ct:
                cut.add(a.id)
    return frozenset(cut)


def path_quasipartition(H, Q, delta, rng, trusted=False):
    """Sample the two-sided cutset C = F u F' around shortest path Q.

    ``delta`` is the ball scale; Q may be longer than delta (the caller
    scales the two independently).  ``trusted=True`` skips the shortest-path
    precondition check for paths that are shortest by construction.
    """
    if not (delta > 0):
        raise InputError("delta must be positive")
    if len(Q.vertices) == 0:
        raise PreconditionError("empty path")
    for v in Q.vertices:
        H.check_vertex(v)
    if not trusted and not is_shortest_path(H, Q):
        raise PreconditionError("Q is not a shortest path in H")

    if H.n < 2:
        # single-vertex graph: nothing to cut
        empty = _EmptyShock(H.n)
        return PathQPResult(Q, delta, frozenset(), frozenset(), empty, empty)

    rev_order = list(reversed(Q.vertices))
    fwd_order = list(Q.vertices)

    away = sample_shock(H, delta, path_traversal_strategy(rev_order), rng)
    toward = sample_shock(H.reverse(), delta, path_traversal_strategy(fwd_order), rng)

    cut_away = _side_cutset(H, away.cluster_of, entering=False)
    # toward clusters were grown in reverse(H); an arc of H enters B'_i iff
    # its head is clustered and its tail is not in the same cluster.
    cut_toward = _side_cutset(H, toward.cluster_of, entering=True)
    return PathQPResult(Q, delta, cut_away, cut_toward, away, toward)


class _EmptyShock:
    def __init__(self, n):
        self.clusters = []
        self.centers = []
        self.radii = []
        self.cutset = frozenset()
        self.cluster_of = [None] * n


def segment_path(G, path, max_len):
    """Split a path into consecutive sub-paths of length <= max_len.

    Segment boundaries fall before any arc that would push the running
    length beyond ``max_len``; arcs longer than max_len become segment gaps
    (their endpoints head adjacent segments).  Every path vertex lies in
    exactly one segment.
    """
    if max_len <= 0:
        raise InputError("max_len must be positive")
    verts = path.vertices
    if len(verts) == 1:
        return [path]
    segments = []
    start = 0
    acc = 0.0
    for k, aid in enumerate(path.arc_ids):
        ln = G.arcs[aid].length
        if acc + ln > max_len:
            segments.append(path.subpath(G, start, k))
            start = k + 1
            acc = 0.0
        else:
            acc += ln
    segments.append(path.subpath(G, start, len(verts) - 1))
    return segments

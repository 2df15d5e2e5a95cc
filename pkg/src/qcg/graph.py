"""Edge-weighted planar digraphs with a rotation-system embedding.

A graph is a fixed set of vertices 0..n-1, a list of undirected embedding
edges (some marked virtual, carrying no arcs), a per-vertex cyclic order of
incident edge ids (the rotation system), and a list of directed arcs, each
riding on one undirected edge between its endpoints.  Graphs are immutable
after construction; derived graphs are built by the functions in
:mod:`qcg.embedding`.

Distances are exact binary floating point; inputs should stick to integers or
dyadic rationals so that all threshold comparisons downstream stay exact.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .errors import InputError, PreconditionError, SizeError, StructureError

INF = math.inf


@dataclass(frozen=True)
class UndEdge:
    """Undirected embedding edge; ``virtual`` edges carry no arcs."""

    id: int
    u: int
    v: int
    virtual: bool = False

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class Arc:
    id: int
    tail: int
    head: int
    length: float
    edge: int  # undirected edge the arc rides on


class PlanarDigraph:
    """Immutable planar digraph plus combinatorial embedding.

    ``rotation[v]`` is the cyclic order of undirected edge ids around v.  The
    constructor validates lengths, rejects self-loops, checks the rotation is
    consistent with edge incidence and, unless ``validate=False``, that face
    tracing satisfies Euler's formula (v - e + f = 2) on every connected
    component, i.e. the rotation really encodes a genus-0 embedding.
    """

    __slots__ = ("n", "edges", "arcs", "rotation", "out_adj", "in_adj",
                 "_edge_pos", "_und_adj")

    def __init__(self, n, edges, arcs, rotation, validate=True):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = n
        self.edges = tuple(edges)
        self.arcs = tuple(arcs)
        self.rotation = tuple(tuple(r) for r in rotation)
        if len(self.rotation) != n:
            raise InputError("rotation must list every vertex")

        for e in self.edges:
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise InputError(f"edge {e.id} endpoint out of range")
            if e.u == e.v:
                raise InputError(f"edge {e.id} is a self-loop")
        for a in self.arcs:
            if not (0 <= a.tail < n and 0 <= a.head < n):
                raise InputError(f"arc {a.id} endpoint out of range")
            if a.tail == a.head:
                raise InputError(f"arc {a.id} is a self-loop")
            if not (a.length >= 0.0 and math.isfinite(a.length)):
                raise InputError(f"arc {a.id} length must be finite and >= 0")
            e = self.edges[a.edge]
            if {a.tail, a.head} != {e.u, e.v}:
                raise InputError(f"arc {a.id} does not ride on edge {a.edge}")
            if e.virtual:
                raise InputError(f"arc {a.id} rides on virtual edge {a.edge}")

        # position of each edge in each endpoint's rotation
        self._edge_pos = {}
        seen = [0] * len(self.edges)
        for v, rot in enumerate(self.rotation):
            for pos, eid in enumerate(rot):
                if not (0 <= eid < len(self.edges)):
                    raise InputError(f"vertex {v}: unknown edge id {eid} in rotation")
                e = self.edges[eid]
                if v not in (e.u, e.v):
                    raise InputError(f"vertex {v}: edge {eid} not incident")
                if (eid, v) in self._edge_pos:
                    raise InputError(f"vertex {v}: edge {eid} repeated in rotation")
                self._edge_pos[(eid, v)] = pos
                seen[eid] += 1
        for e in self.edges:
            if seen[e.id] != 2:
                raise InputError(f"edge {e.id} must appear in both endpoint rotations")

        self.out_adj = [[] for _ in range(n)]
        self.in_adj = [[] for _ in range(n)]
        for a in self.arcs:
            self.out_adj[a.tail].append((a.head, a.length, a.id))
            self.in_adj[a.head].append((a.tail, a.length, a.id))
        self._und_adj = [[] for _ in range(n)]
        for e in self.edges:
            self._und_adj[e.u].append((e.v, e.id))
            self._und_adj[e.v].append((e.u, e.id))

        if validate:
            self.validate_embedding()

    # -- embedding ---------------------------------------------------------

    def darts(self):
        """All darts (edge id, endpoint index): dart (e, i) leaves endpoint i."""
        for e in self.edges:
            yield (e.id, 0)
            yield (e.id, 1)

    def dart_source(self, dart):
        eid, i = dart
        e = self.edges[eid]
        return e.u if i == 0 else e.v

    def dart_target(self, dart):
        eid, i = dart
        e = self.edges[eid]
        return e.v if i == 0 else e.u

    def next_face_dart(self, dart):
        """Successor of ``dart`` along its face (rotate at the target vertex)."""
        w = self.dart_target(dart)
        rot = self.rotation[w]
        pos = self._edge_pos[(dart[0], w)]
        nxt = rot[(pos + 1) % len(rot)]
        e = self.edges[nxt]
        return (nxt, 0 if e.u == w else 1)

    def trace_faces(self):
        """Face walks as dart lists; every dart lies on exactly one face."""
        visited = set()
        faces = []
        for d in self.darts():
            if d in visited:
                continue
            walk = []
            cur = d
            while cur not in visited:
                visited.add(cur)
                walk.append(cur)
                cur = self.next_face_dart(cur)
            faces.append(walk)
        return faces

    def validate_embedding(self):
        """Euler-formula check v - e + f = 2 per connected component."""
        faces = self.trace_faces()
        face_comp = {}
        comp = self._und_components()
        comp_of = {}
        for ci, vs in enumerate(comp):
            for v in vs:
                comp_of[v] = ci
        f_count = [0] * len(comp)
        for walk in faces:
            ci = comp_of[self.dart_source(walk[0])]
            f_count[ci] += 1
        for ci, vs in enumerate(comp):
            vcount = len(vs)
            ecount = sum(1 for e in self.edges if comp_of[e.u] == ci)
            fcount = f_count[ci] if ecount else 1  # isolated vertex: sphere face
            if vcount - ecount + fcount != 2:
                raise StructureError(
                    f"component {ci}: v-e+f = {vcount}-{ecount}+{fcount} != 2; "
                    "rotation system is not a planar embedding")

    def _und_components(self):
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack = [s]
            seen[s] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w, _ in self._und_adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def weak_components(self):
        """Weakly connected components of the *arc* structure plus lone vertices."""
        seen = [False] * self.n
        adj = [[] for _ in range(self.n)]
        for a in self.arcs:
            adj[a.tail].append(a.head)
            adj[a.head].append(a.tail)
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack = [s]
            seen[s] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    # -- basics ------------------------------------------------------------

    def check_vertex(self, v):
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InputError(f"invalid vertex id {v!r}")

    def reverse(self):
        """Same embedding, every arc flipped; arc ids preserved."""
        rev = [Arc(a.id, a.head, a.tail, a.length, a.edge) for a in self.arcs]
        return PlanarDigraph(self.n, self.edges, rev, self.rotation, validate=False)

    def arc_lengths(self):
        return [a.length for a in self.arcs]

    def __repr__(self):
        return (f"PlanarDigraph(n={self.n}, edges={len(self.edges)}, "
                f"arcs={len(self.arcs)})")


# -- distances ---------------------------------------------------------------


def dijkstra(G, sources, reverse=False, cap=None):
    """Exact shortest-path distances from a source set.

    Returns (dist, parent_arc) lists; ``dist[v]`` is inf for unreachable v,
    ``parent_arc[v]`` is the arc id used to settle v (None for sources).
    ``cap`` prunes the search at distance > cap.  Ties are broken by vertex
    id, so parents (hence extracted paths) are deterministic.
    """
    adj = G.in_adj if reverse else G.out_adj
    dist = [INF] * G.n
    parent = [None] * G.n
    heap = []
    for s in sources:
        G.check_vertex(s)
        dist[s] = 0.0
        heap.append((0.0, s))
    heapq.heapify(heap)
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for w, ln, aid in adj[v]:
            nd = d + ln
            if cap is not None and nd > cap:
                continue
            if nd < dist[w]:
                dist[w] = nd
                parent[w] = aid
                heapq.heappush(heap, (nd, w))
    return dist, parent


def shortest_path_dist(G, u, v):
    """d_G(u, v); inf when v is unreachable from u."""
    G.check_vertex(u)
    G.check_vertex(v)
    if u == v:
        return 0.0
    dist, _ = dijkstra(G, [u])
    return dist[v]


def all_pairs_dist(G):
    """Row ``i`` is the Dijkstra distance vector from vertex i."""
    return [dijkstra(G, [s])[0] for s in range(G.n)]


def quasiball(G, center, r, reverse=False):
    """{u : d(center, u) <= r} (or distances *to* center when reversed)."""
    if r < 0:
        raise InputError("ball radius must be >= 0")
    dist, _ = dijkstra(G, [center], reverse=reverse, cap=r)
    return {v for v in range(G.n) if dist[v] <= r}


@dataclass(frozen=True)
class DirectedPath:
    """Vertex sequence joined by arcs of the host graph."""

    vertices: tuple
    arc_ids: tuple
    length: float

    @staticmethod
    def trivial(v):
        return DirectedPath((v,), (), 0.0)

    @staticmethod
    def from_arcs(G, arc_ids):
        if not arc_ids:
            raise InputError("use DirectedPath.trivial for a single vertex")
        arcs = [G.arcs[i] for i in arc_ids]
        verts = [arcs[0].tail]
        total = 0.0
        for a in arcs:
            if a.tail != verts[-1]:
                raise InputError("arcs do not form a directed path")
            verts.append(a.head)
            total += a.length
        return DirectedPath(tuple(verts), tuple(arc_ids), total)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def subpath(self, G, i, j):
        """Sub-path over vertex index range [i, j] of the same host graph."""
        if not (0 <= i <= j < len(self.vertices)):
            raise InputError("bad subpath bounds")
        arcs = self.arc_ids[i:j]
        length = sum(G.arcs[a].length for a in arcs)
        return DirectedPath(self.vertices[i:j + 1], arcs, length)


def extract_path(G, u, v):
    """A shortest directed path u -> v, or None when unreachable."""
    G.check_vertex(u)
    G.check_vertex(v)
    if u == v:
        return DirectedPath.trivial(u)
    dist, parent = dijkstra(G, [u])
    if dist[v] == INF:
        return None
    arc_ids = []
    cur = v
    while cur != u:
        aid = parent[cur]
        arc_ids.append(aid)
        cur = G.arcs[aid].tail
    arc_ids.reverse()
    return DirectedPath.from_arcs(G, arc_ids)


def is_shortest_path(G, path):
    """A path is shortest iff its total length equals d(start, end)."""
    if len(path.vertices) == 1:
        return True
    return path.length == shortest_path_dist(G, path.start, path.end)


# -- reachability and the quasipartition relation ----------------------------


def _reach_bitsets(G, banned_arcs):
    """Per-vertex reachability bitmask in G minus ``banned_arcs``.

    Condenses strongly connected components (iterative Tarjan), then ORs
    bitmasks up the condensation in reverse topological order.  Python ints
    as bitsets keep this fast at desk scale.
    """
    n = G.n
    adj = [[] for _ in range(n)]
    for a in G.arcs:
        if a.id not in banned_arcs:
            adj[a.tail].append(a.head)

    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    order = []  # components in reverse topological order of the condensation
    counter = 1
    stack = []
    for root in range(n):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(adj[v])):
                w = adj[v][k]
                if not index[w]:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = len(order)
                    members.append(w)
                    if w == v:
                        break
                order.append(members)
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[v])

    ncomp = len(order)
    comp_mask = [0] * ncomp
    comp_succ = [set() for _ in range(ncomp)]
    for ci, members in enumerate(order):
        m = 0
        for v in members:
            m |= 1 << v
        comp_mask[ci] = m
    for v in range(n):
        for w in adj[v]:
            if comp[v] != comp[w]:
                comp_succ[comp[v]].add(comp[w])
    # Tarjan emits components in reverse topological order: successors first.
    reach = [0] * ncomp
    for ci in range(ncomp):
        m = comp_mask[ci]
        for cj in comp_succ[ci]:
            m |= reach[cj]
        reach[ci] = m
    return [reach[comp[v]] for v in range(n)]


class Quasipartition:
    """Reachability relation of ``graph`` minus ``cutset``, queried lazily."""

    def __init__(self, graph, cutset, delta=None):
        self.graph = graph
        self.cutset = frozenset(cutset)
        for aid in self.cutset:
            if not (0 <= aid < len(graph.arcs)):
                raise InputError(f"cutset refers to unknown arc {aid}")
        self.delta = delta
        self._reach = None

    def reach_bits(self):
        if self._reach is None:
            self._reach = _reach_bitsets(self.graph, self.cutset)
        return self._reach

    def contains(self, u, v):
        """True iff v is reachable from u in G minus the cutset."""
        self.graph.check_vertex(u)
        self.graph.check_vertex(v)
        return bool(self.reach_bits()[u] >> v & 1)

    def materialize(self, cap=64):
        """Full relation as ordered pairs; only for small graphs."""
        n = self.graph.n
        if n > cap:
            raise SizeError(f"graph has {n} > {cap} vertices")
        bits = self.reach_bits()
        rel = set()
        for u in range(n):
            b = bits[u]
            while b:
                lsb = b & -b
                rel.add((u, lsb.bit_length() - 1))
                b ^= lsb
        return rel


def relation_contains(qp, u, v):
    return qp.contains(u, v)


def materialize_relation(qp, cap=64):
    return qp.materialize(cap=cap)


# -- layeredness --------------------------------------------------------------


def check_layered(G, root, t, delta):
    """Is G (t, delta)-layered from ``root``?

    True iff a rooted spanning tree exists whose root-to-leaf paths split
    into <= t shortest sub-paths, each of length <= delta.  For t = 1 this is
    exactly: the shortest-path out-tree from root reaches every vertex within
    delta.  Returns (ok, witness) where witness is a parent-arc list on
    success and the first offending vertex id on failure.
    """
    G.check_vertex(root)
    if t not in (1, 2, 3):
        raise InputError("t must be 1, 2 or 3")
    if delta <= 0:
        raise InputError("delta must be positive")
    parent = [None] * G.n
    covered = [False] * G.n
    covered[root] = True
    frontier = [root]
    for _ in range(t):
        dist, par = dijkstra(G, frontier, cap=delta)
        newly = []
        for v in range(G.n):
            if not covered[v] and dist[v] <= delta:
                covered[v] = True
                parent[v] = par[v]
                newly.append(v)
        frontier = [v for v in range(G.n) if covered[v]]
        if all(covered):
            return True, parent
        if not newly:
            break
    offender = next(v for v in range(G.n) if not covered[v])
    return False, offender

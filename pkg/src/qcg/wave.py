"""Randomized alternating layering of a planar digraph around a source.

Layers grow by radius 2*delta + tau_i with tau_i uniform on [0, delta),
alternating outward (even, vertices reachable from the prefix) and inward
(odd, vertices that reach the prefix).  Arcs crossing consecutive layers
against the allowed direction form the cut set E'.  Each layer, with the
earlier layers contracted to a super-root and later layers deleted, is a
(1, 3*delta)-layered planar digraph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalError, PreconditionError
from .graph import check_layered, dijkstra
from .embedding import contract_vertices, induced_subgraph


@dataclass
class WaveDecomposition:
    source: int
    delta: float
    taus: tuple           # offsets, one per constructed layer
    layers: tuple         # disjoint sorted vertex tuples covering the weak component
    cut_arcs: frozenset   # E'
    overflow: tuple       # vertices weakly disconnected from the source
    layer_of: tuple       # vertex -> layer index (None for overflow)

    def prefix_union(self, i):
        out = []
        for layer in self.layers[:i]:
            out.extend(layer)
        return out


def sample_wave(G, v, delta, rng):
    """Sample a wave; requires every arc length <= delta."""
    G.check_vertex(v)
    if not (delta > 0):
        raise InputError("delta must be positive")
    for a in G.arcs:
        if a.length > delta:
            raise PreconditionError(
                f"arc {a.id} has length {a.length} > delta={delta}; pre-cut it")

    comp = None
    for c in G.weak_components():
        if v in c:
            comp = set(c)
            break
    target = len(comp)

    layer_of = [None] * G.n
    layers = []
    taus = []
    prefix = []
    covered = 0
    empty_streak = 0
    i = 0
    while covered < target:
        tau = delta * rng.random()
        bound = 2.0 * delta + tau
        if i == 0:
            dist, _ = dijkstra(G, [v], cap=bound)
        else:
            dist, _ = dijkstra(G, prefix, reverse=(i % 2 == 1), cap=bound)
        fresh = sorted(u for u in comp
                       if layer_of[u] is None and dist[u] <= bound)
        taus.append(tau)
        layers.append(tuple(fresh))
        for u in fresh:
            layer_of[u] = i
        prefix.extend(fresh)
        covered += len(fresh)
        empty_streak = 0 if fresh else empty_streak + 1
        if empty_streak >= 2:
            raise InternalError("wave stalled before covering the weak component")
        i += 1

    cut = set()
    for a in G.arcs:
        la, lb = layer_of[a.tail], layer_of[a.head]
        if la is None or lb is None:
            continue
        # odd layers grow inward: cut forward arcs into them;
        # even layers grow outward: cut backward arcs out of them.
        if lb == la + 1 and lb % 2 == 1:
            cut.add(a.id)
        elif la == lb + 1 and la % 2 == 0:
            cut.add(a.id)

    overflow = tuple(sorted(u for u in range(G.n) if u not in comp))
    return WaveDecomposition(v, delta, tuple(taus), tuple(layers),
                             frozenset(cut), overflow, tuple(layer_of))


@dataclass
class LayerGraph:
    """One wave layer with the prefix contracted to a super-root.

    ``vertex_map[x]`` is the host vertex for layer vertex x (None for the
    super-root), ``arc_map[a]`` the host arc id.  ``scale`` is 3*delta; odd
    parity means the layered property holds in the reversed graph.
    """

    index: int
    parity: int
    graph: object
    super_root: int
    vertex_map: list
    arc_map: list
    scale: float

    def oriented(self):
        """The layer graph in the orientation where the root spans outward."""
        return self.graph if self.parity == 0 else self.graph.reverse()

    def check(self):
        ok, witness = check_layered(self.oriented(), self.super_root, 1, self.scale)
        return ok, witness


def extract_layer(G, wave, i):
    """Contract layers < i, delete layers > i, drop wave-cut arcs.

    Removing E' means an even layer's super-root has in-degree 0 (odd:
    out-degree 0), so layer distances between real vertices never shortcut
    through the contracted prefix.
    """
    if not (0 <= i < len(wave.layers)):
        raise InputError(f"layer index {i} out of range")
    prefix = wave.prefix_union(i)
    keep = sorted(set(prefix) | set(wave.layers[i]))
    H, vmap, amap = induced_subgraph(G, keep, banned_arcs=wave.cut_arcs)
    if not prefix:
        root = keep.index(wave.source)
        return LayerGraph(i, i % 2, H, root, list(vmap), list(amap),
                          3.0 * wave.delta)
    local_prefix = [k for k, old in enumerate(vmap) if old in set(prefix)]
    H2, vmap2, amap2, root = contract_vertices(H, local_prefix)
    vertex_map = [None if old is None else vmap[old] for old in vmap2]
    arc_map = [amap[a] for a in amap2]
    return LayerGraph(i, i % 2, H2, root, vertex_map, arc_map, 3.0 * wave.delta)


def locate_path_layers(wave, path):
    """Decompose a short path into <= 3 contiguous single-layer sub-paths.

    Requires len(path) <= delta.  Returns (base_index, blocks) where blocks
    is a list of (layer_index, (vertex positions range)) and every block's
    layer lies in {base, base+1, base+2}.  Raises InternalError when the
    decomposition fails, which would falsify the layering guarantee.
    """
    if path.length > wave.delta:
        raise PreconditionError("path longer than the wave scale")
    idx = []
    for v in path.vertices:
        li = wave.layer_of[v]
        if li is None:
            raise InputError(f"vertex {v} is outside the wave's weak component")
        idx.append(li)
    blocks = []
    start = 0
    for k in range(1, len(idx)):
        if idx[k] != idx[k - 1]:
            blocks.append((idx[start], (start, k - 1)))
            start = k
    blocks.append((idx[start], (start, len(idx) - 1)))
    base = min(b for b, _ in blocks)
    if max(b for b, _ in blocks) > base + 2:
        raise InternalError(
            f"path touches layers outside a 3-window: {[b for b, _ in blocks]}")
    if len(blocks) > 3:
        raise InternalError(
            f"path splits into {len(blocks)} > 3 contiguous layer blocks")
    return base, blocks

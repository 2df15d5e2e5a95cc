"""Recursive layer quasipartitions and the top-level planar quasipartition.

The layer routine recursively separates the graph with few shortest paths,
quasipartitions each path (segmented to the internal ball scale), and
recurses on the weak components left after removing separator vertices.
The top-level routine pre-cuts over-long arcs, samples a wave per weak
component, and unions the per-layer cutsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InternalError
from .graph import Quasipartition
from .embedding import drop_arcs, induced_subgraph
from .pathqp import path_quasipartition, segment_path
from .separator import component_separator
from .wave import extract_layer, sample_wave


@dataclass(frozen=True)
class LayerQPConfig:
    """Scales for one layer quasipartition.

    ``delta`` is the internal ball scale target/(c1*(1+ln n)); with c1 >= 4
    every pair surviving through a separator segment sits within
    delta*(4 + 2 ln n) <= target of its partner, which keeps the layer
    routine target-bounded exactly.
    """

    layer_scale: float
    target: float
    c1: float
    base_size: int
    delta: float
    depth_guard: int


def layer_config(n_layer, layer_scale, target, c1=8.0, base_size=3):
    if target <= 0 or layer_scale <= 0:
        raise InternalError("scales must be positive")
    n_eff = max(n_layer, 2)
    delta = target / (c1 * (1.0 + math.log(n_eff)))
    guard = math.ceil(math.log(max(n_layer, 2)) / math.log(1.5)) + 2
    return LayerQPConfig(layer_scale, target, c1, base_size, delta, guard)


@dataclass
class CallRecord:
    depth: int
    parent: int            # index into the trace, -1 for the root call
    vertices: tuple        # layer-graph vertex ids of this call's subgraph
    sep_vertices: tuple    # separator vertices removed (layer-graph ids)
    path_count: int
    segment_count: int
    cut_arcs: tuple        # layer-graph arc ids cut by this call


@dataclass
class RecursionTrace:
    records: list = field(default_factory=list)

    def arc_participation(self, layer_graph):
        """Number of recursive calls whose subgraph contains each arc."""
        counts = [0] * len(layer_graph.arcs)
        for rec in self.records:
            vs = set(rec.vertices)
            for a in layer_graph.arcs:
                if a.tail in vs and a.head in vs:
                    counts[a.id] += 1
        return counts


def layer_quasipartition(layer, cfg, rng, collect_trace=False):
    """Sample a target-bounded cutset of one layer graph.

    Returns (cut_depth, trace): cut_depth maps layer-graph arc ids to the
    recursion depth that first cut them; trace is a RecursionTrace (empty
    unless ``collect_trace``).
    """
    H = layer.oriented()
    trace = RecursionTrace()
    cut_depth = {}

    def recurse(S, vmap, amap, depth, parent_idx, root_local):
        if depth > cfg.depth_guard:
            raise InternalError(
                f"recursion depth {depth} exceeded guard {cfg.depth_guard}")
        my_idx = len(trace.records) if collect_trace else -1
        my_cuts = []

        if S.n <= cfg.base_size:
            for a in S.arcs:
                if a.length >= cfg.delta:
                    cut_depth.setdefault(amap[a.id], depth)
                    my_cuts.append(amap[a.id])
            if collect_trace:
                trace.records.append(CallRecord(
                    depth, parent_idx, tuple(vmap), (), 0, 0, tuple(my_cuts)))
            return

        sep, _ = component_separator(S, root=root_local)
        seg_count = 0
        for path, _rev in sep.paths:
            for seg in segment_path(S, path, cfg.delta):
                seg_count += 1
                res = path_quasipartition(S, seg, cfg.delta, rng, trusted=True)
                for aid in res.cutset:
                    cut_depth.setdefault(amap[aid], depth)
                    my_cuts.append(amap[aid])
        if collect_trace:
            trace.records.append(CallRecord(
                depth, parent_idx,
                tuple(vmap), tuple(sorted(vmap[v] for v in sep.vertices)),
                len(sep.paths), seg_count, tuple(sorted(set(my_cuts)))))

        remaining = [v for v in range(S.n) if v not in sep.vertices]
        if not remaining:
            return
        sub_all, keep, _ = induced_subgraph(S, remaining)
        for comp in sub_all.weak_components():
            comp_old = [keep[v] for v in comp]
            sub, kept, arc_sub = induced_subgraph(S, comp_old)
            if sub.n == 0:
                continue
            recurse(sub,
                    [vmap[v] for v in kept],
                    [amap[a] for a in arc_sub],
                    depth + 1, my_idx, 0)

    recurse(H, list(range(H.n)), list(range(len(H.arcs))), 0, -1,
            layer.super_root)
    return cut_depth, trace


@dataclass
class DecompositionResult:
    """One sampled quasipartition with per-arc provenance."""

    graph: object
    delta: float
    cutset: frozenset
    provenance: dict               # arc id -> "precut" | "wave" | "layer:<i>:<d>"
    waves: list                    # (component vertices, WaveDecomposition) if kept
    layer_traces: list             # (layer index, RecursionTrace) if kept

    def quasipartition(self):
        return Quasipartition(self.graph, self.cutset, self.delta)


def planar_quasipartition(G, delta, rng, c1=8.0, base_size=3, keep_detail=False):
    """Sample a delta-bounded quasipartition of G (Quasipartition via result).

    Step 0 pre-cuts arcs longer than delta, Step 1 samples a wave per weak
    component, Step 2 quasipartitions every layer at target delta/3, Step 3
    unions the cutsets.
    """
    if not (delta > 0):
        raise InternalError("delta must be positive")
    provenance = {}
    for a in G.arcs:
        if a.length > delta:
            provenance[a.id] = "precut"
    G_op, amap_op = drop_arcs(G, provenance.keys())

    waves = []
    traces = []
    for comp in G_op.weak_components():
        sub, vmap, amap_sub = induced_subgraph(G_op, comp)
        if not sub.arcs:
            continue
        wv = sample_wave(sub, 0, delta, rng)  # lowest id in the component
        for aid in wv.cut_arcs:
            provenance[amap_op[amap_sub[aid]]] = "wave"
        if keep_detail:
            waves.append((tuple(comp), wv))
        for i, members in enumerate(wv.layers):
            if not members:
                continue
            lg = extract_layer(sub, wv, i)
            if not lg.graph.arcs:
                continue
            cfg = layer_config(lg.graph.n, 3.0 * delta, delta / 3.0,
                               c1=c1, base_size=base_size)
            cuts, trace = layer_quasipartition(lg, cfg, rng,
                                               collect_trace=keep_detail)
            for local_aid, depth in cuts.items():
                g_aid = amap_op[amap_sub[lg.arc_map[local_aid]]]
                provenance[g_aid] = f"layer:{i}:{depth}"
            if keep_detail:
                traces.append((i, trace))
    return DecompositionResult(G, delta, frozenset(provenance), provenance,
                               waves, traces)


def rng_for_sample(seed, index):
    """The sample-index-addressed stream all Monte Carlo loops use."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def sample_many(G, delta, N, seed, c1=8.0, base_size=3, keep_detail=False):
    """N independent samples from per-index derived streams (deterministic)."""
    if N < 1:
        raise InternalError("N must be >= 1")
    for i in range(N):
        yield planar_quasipartition(G, delta, rng_for_sample(seed, i),
                                    c1=c1, base_size=base_size,
                                    keep_detail=keep_detail)

"""Reproducible planar digraph instances with honest embeddings.

Three families: grid (the canonical acceptance family), random maximal
planar triangulations built by iterated vertex insertion, and directed
chains.  Generation is deterministic per (family, parameters, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InputError
from .graph import Arc, PlanarDigraph, UndEdge

ORIENTATIONS = ("both", "random-single", "dag")
LENGTH_DISTS = ("uniform", "constant")


@dataclass(frozen=True)
class InstanceSpec:
    family: str = "grid"
    rows: int = 4
    cols: int = 4
    n: int = 16               # triangulation size
    k: int = 4                # chain arc count
    lengths: str = "uniform"  # uniform integers [1, length_max] | constant
    length_max: int = 10
    length_value: float = 1.0
    orientation: str = "both"
    seed: int = 0

    def describe(self):
        if self.family == "grid":
            size = f"{self.rows}x{self.cols}"
        elif self.family == "triangulation":
            size = str(self.n)
        else:
            size = str(self.k)
        return (f"{self.family}-{size}-{self.lengths}{self.length_max}"
                f"-{self.orientation}-s{self.seed}")


def _check_spec(spec):
    if spec.family not in ("grid", "triangulation", "chain"):
        raise InputError(f"unknown family {spec.family!r}")
    if spec.orientation not in ORIENTATIONS:
        raise InputError(f"unknown orientation {spec.orientation!r}")
    if spec.lengths not in LENGTH_DISTS:
        raise InputError(f"unknown length distribution {spec.lengths!r}")


def _draw_length(spec, rng):
    if spec.lengths == "constant":
        return float(spec.length_value)
    return float(rng.integers(1, spec.length_max + 1))


def _orient_edges(edges, spec, rng, dag_key):
    """Arcs for each undirected edge per the orientation policy."""
    arcs = []
    for e in edges:
        if e.virtual:
            continue
        if spec.orientation == "both":
            arcs.append(Arc(len(arcs), e.u, e.v, _draw_length(spec, rng), e.id))
            arcs.append(Arc(len(arcs), e.v, e.u, _draw_length(spec, rng), e.id))
        elif spec.orientation == "random-single":
            fwd = rng.random() < 0.5
            t, h = (e.u, e.v) if fwd else (e.v, e.u)
            arcs.append(Arc(len(arcs), t, h, _draw_length(spec, rng), e.id))
        else:  # dag: orient by coordinate/id order
            t, h = (e.u, e.v) if dag_key(e.u) < dag_key(e.v) else (e.v, e.u)
            arcs.append(Arc(len(arcs), t, h, _draw_length(spec, rng), e.id))
    return arcs


def gen_grid(rows, cols, spec=None):
    """rows x cols grid with the natural embedding."""
    if rows < 1 or cols < 1:
        raise InputError("grid dimensions must be >= 1")
    spec = replace(spec or InstanceSpec(), family="grid", rows=rows, cols=cols)
    _check_spec(spec)
    rng = np.random.default_rng(spec.seed)
    n = rows * cols

    def vid(r, c):
        return r * cols + c

    edges = []
    eid_of = {}
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                eid_of[(vid(r, c), vid(r, c + 1))] = len(edges)
                edges.append(UndEdge(len(edges), vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                eid_of[(vid(r, c), vid(r + 1, c))] = len(edges)
                edges.append(UndEdge(len(edges), vid(r, c), vid(r + 1, c)))

    def edge_between(a, b):
        return eid_of.get((a, b), eid_of.get((b, a)))

    rotation = []
    for r in range(rows):
        for c in range(cols):
            rot = []
            # clockwise: up, right, down, left
            if r > 0:
                rot.append(edge_between(vid(r, c), vid(r - 1, c)))
            if c + 1 < cols:
                rot.append(edge_between(vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                rot.append(edge_between(vid(r, c), vid(r + 1, c)))
            if c > 0:
                rot.append(edge_between(vid(r, c), vid(r, c - 1)))
            rotation.append(rot)

    arcs = _orient_edges(edges, spec, rng, dag_key=lambda v: v)
    return PlanarDigraph(n, edges, arcs, rotation)


def gen_triangulation(n, spec=None):
    """Random maximal planar graph: repeated vertex insertion into a random face."""
    if n < 3:
        raise InputError("triangulation needs n >= 3")
    spec = replace(spec or InstanceSpec(), family="triangulation", n=n)
    _check_spec(spec)
    rng = np.random.default_rng(spec.seed)

    rot = [[0, 2], [1, 0], [2, 1]]
    edges = [(0, 1), (1, 2), (2, 0)]
    # faces as (vertex triple a,b,c; edge triple e_ab,e_bc,e_ca)
    faces = [((0, 1, 2), (0, 1, 2)), ((1, 0, 2), (0, 2, 1))]

    def insert_after(vertex, anchor, new_eid):
        r = rot[vertex]
        r.insert(r.index(anchor) + 1, new_eid)

    for w in range(3, n):
        fi = int(rng.integers(0, len(faces)))
        (a, b, c), (e_ab, e_bc, e_ca) = faces[fi]
        e_wa = len(edges)
        edges.append((w, a))
        e_wb = len(edges)
        edges.append((w, b))
        e_wc = len(edges)
        edges.append((w, c))
        insert_after(a, e_ca, e_wa)
        insert_after(b, e_ab, e_wb)
        insert_after(c, e_bc, e_wc)
        rot.append([e_wa, e_wc, e_wb])
        faces[fi] = ((a, b, w), (e_ab, e_wb, e_wa))
        faces.append(((b, c, w), (e_bc, e_wc, e_wb)))
        faces.append(((c, a, w), (e_ca, e_wa, e_wc)))

    und = [UndEdge(i, u, v) for i, (u, v) in enumerate(edges)]
    arcs = _orient_edges(und, spec, rng, dag_key=lambda v: v)
    return PlanarDigraph(n, und, arcs, rot)


def gen_chain(k, spec=None):
    """Directed chain of k arcs (k+1 vertices)."""
    if k < 1:
        raise InputError("chain needs k >= 1")
    spec = replace(spec or InstanceSpec(), family="chain", k=k)
    _check_spec(spec)
    rng = np.random.default_rng(spec.seed)
    n = k + 1
    edges = [UndEdge(i, i, i + 1) for i in range(k)]
    rotation = [[0]] + [[i - 1, i] for i in range(1, k)] + [[k - 1]]
    arcs = [Arc(i, i, i + 1, _draw_length(spec, rng), i) for i in range(k)]
    return PlanarDigraph(n, edges, arcs, rotation)


def generate(spec):
    _check_spec(spec)
    if spec.family == "grid":
        return gen_grid(spec.rows, spec.cols, spec)
    if spec.family == "triangulation":
        return gen_triangulation(spec.n, spec)
    return gen_chain(spec.k, spec)

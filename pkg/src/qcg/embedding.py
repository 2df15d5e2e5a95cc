"""Embedding surgery: triangulation, induced subgraphs, contraction.

All functions return fresh :class:`~qcg.graph.PlanarDigraph` objects plus id
maps back into the input graph, so cutsets computed on derived graphs can be
translated to host arc ids.
"""

from __future__ import annotations

from .errors import InputError, InternalError, StructureError
from .graph import Arc, PlanarDigraph, UndEdge


def drop_arcs(G, arc_ids):
    """Remove a set of arcs, keeping vertices/edges/rotation intact.

    Returns (H, arc_map) with arc_map[new arc id] = old arc id.
    """
    banned = set(arc_ids)
    arcs = []
    arc_map = []
    for a in G.arcs:
        if a.id in banned:
            continue
        arcs.append(Arc(len(arcs), a.tail, a.head, a.length, a.edge))
        arc_map.append(a.id)
    H = PlanarDigraph(G.n, G.edges, arcs, G.rotation, validate=False)
    return H, arc_map


def induced_subgraph(G, vertices, banned_arcs=()):
    """Subgraph induced by ``vertices`` (order-insensitive), minus ``banned_arcs``.

    Edges survive iff both endpoints are kept, whether or not any arc on them
    survives; removing edges from a rotation preserves planarity.  Returns
    (H, vertex_map, arc_map) mapping new ids to old ids.
    """
    keep = sorted(set(vertices))
    for v in keep:
        G.check_vertex(v)
    new_of = {old: i for i, old in enumerate(keep)}
    banned = set(banned_arcs)

    edges = []
    edge_new = {}
    for e in G.edges:
        if e.u in new_of and e.v in new_of:
            edge_new[e.id] = len(edges)
            edges.append(UndEdge(len(edges), new_of[e.u], new_of[e.v], e.virtual))
    rotation = []
    for old in keep:
        rotation.append([edge_new[eid] for eid in G.rotation[old] if eid in edge_new])
    arcs = []
    arc_map = []
    for a in G.arcs:
        if a.id in banned or a.tail not in new_of or a.head not in new_of:
            continue
        arcs.append(Arc(len(arcs), new_of[a.tail], new_of[a.head], a.length,
                        edge_new[a.edge]))
        arc_map.append(a.id)
    H = PlanarDigraph(len(keep), edges, arcs, rotation, validate=False)
    return H, keep, arc_map


def _splice_contract(rot, edges, a, b, eid):
    """Contract edge ``eid`` = {a, b}, merging b into a (mutating rot/edges)."""
    rot_a, rot_b = rot[a], rot[b]
    pa, pb = rot_a.index(eid), rot_b.index(eid)
    merged = (rot_a[:pa]
              + rot_b[pb + 1:] + rot_b[:pb]
              + rot_a[pa + 1:])
    del edges[eid]
    for x in merged:
        u, v, virt = edges[x]
        edges[x] = (a if u == b else u, a if v == b else v, virt)
    # drop self-loops produced by parallel a-b edges (both occurrences)
    loops = {x for x in merged if edges[x][0] == edges[x][1]}
    rot[a] = [x for x in merged if x not in loops]
    for x in loops:
        del edges[x]
    del rot[b]


def contract_vertices(G, group):
    """Contract a connected vertex set into one vertex.

    The merged rotation is built by iterated planar edge contraction along a
    spanning tree of the group; parallel undirected slots to the same
    neighbour are then deduplicated (first in rotation order wins) with all
    arcs remapped onto the kept slot.  Arcs internal to the group disappear.

    Returns (H, vertex_map, arc_map, super_id); vertex_map[super_id] is None.
    """
    group = set(group)
    for v in group:
        G.check_vertex(v)
    if not group:
        raise InputError("cannot contract an empty set")
    rep = min(group)

    rot = {v: list(r) for v, r in enumerate(G.rotation)}
    edges = {e.id: (e.u, e.v, e.virtual) for e in G.edges}

    # spanning tree of the group in the underlying graph, contracted into rep
    parent_edge = {rep: None}
    order = [rep]
    stack = [rep]
    while stack:
        v = stack.pop()
        for w, eid in G._und_adj[v]:
            if w in group and w not in parent_edge:
                parent_edge[w] = eid
                order.append(w)
                stack.append(w)
    if set(order) != group:
        raise StructureError("contraction set is not connected in the underlying graph")

    merged = {rep}
    for v in order[1:]:
        eid = parent_edge[v]
        if eid not in edges:
            # the tree edge became parallel and was dropped as a loop already
            raise InternalError("spanning tree edge vanished during contraction")
        u0, v0, _ = edges[eid]
        # after earlier merges one endpoint is rep, the other is v
        if u0 == v0:
            raise InternalError("tree edge degenerated to a loop")
        keep_end = rep if rep in (u0, v0) else u0
        other = v0 if keep_end == u0 else u0
        _splice_contract(rot, edges, keep_end, other, eid)
        if keep_end != rep:
            raise InternalError("contraction drifted off the representative")
        merged.add(v)

    # deduplicate parallel slots incident to rep
    edge_alias = {}
    first_to = {}
    dropped = set()
    for x in rot[rep]:
        u, v, virt = edges[x]
        w = v if u == rep else u
        if w in first_to:
            kept = first_to[w]
            ku, kv, kvirt = edges[kept]
            if kvirt and not virt:
                # prefer a real slot so arcs always ride on non-virtual edges
                edges[kept] = (ku, kv, False)
            edge_alias[x] = kept
            dropped.add(x)
            del edges[x]
        else:
            first_to[w] = x
    if dropped:
        rot[rep] = [x for x in rot[rep] if x not in dropped]
        for v in rot:
            if v != rep:
                rot[v] = [x for x in rot[v] if x not in dropped]

    # renumber
    old_vertices = sorted(rot.keys())
    new_of = {old: i for i, old in enumerate(old_vertices)}
    super_id = new_of[rep]
    vertex_map = [None if old == rep else old for old in old_vertices]

    edge_new = {}
    new_edges = []
    for old_eid in sorted(edges.keys()):
        u, v, virt = edges[old_eid]
        edge_new[old_eid] = len(new_edges)
        new_edges.append(UndEdge(len(new_edges), new_of[u], new_of[v], virt))
    rotation = [[edge_new[x] for x in rot[old]] for old in old_vertices]

    arcs = []
    arc_map = []
    for a in G.arcs:
        t_in = a.tail in group
        h_in = a.head in group
        if t_in and h_in:
            continue
        tail = rep if t_in else a.tail
        head = rep if h_in else a.head
        eid = edge_alias.get(a.edge, a.edge)
        arcs.append(Arc(len(arcs), new_of[tail], new_of[head], a.length,
                        edge_new[eid]))
        arc_map.append(a.id)
    H = PlanarDigraph(len(old_vertices), new_edges, arcs, rotation, validate=False)
    return H, vertex_map, arc_map, super_id


def triangulate(G):
    """Add virtual edges until every face of the underlying embedding has
    exactly 3 sides.

    Requires a connected underlying graph.  Graphs with fewer than 3 vertices
    are returned unchanged (no face can be a triangle).  All original edges,
    arcs and rotation order are preserved; added edges are virtual, carry no
    arcs, and chords avoid duplicating existing vertex pairs unless a face
    admits no simple chord.
    """
    comps = G._und_components()
    if len(comps) != 1:
        raise StructureError("triangulate requires a connected underlying graph")
    if G.n < 3:
        return G

    rot = [list(r) for r in G.rotation]
    edges = [(e.u, e.v, e.virtual) for e in G.edges]
    pair_exists = {frozenset((e.u, e.v)) for e in G.edges}

    def dart_target(d):
        eid, i = d
        u, v, _ = edges[eid]
        return v if i == 0 else u

    def dart_source(d):
        eid, i = d
        u, v, _ = edges[eid]
        return u if i == 0 else v

    def next_face_dart(d):
        w = dart_target(d)
        r = rot[w]
        pos = r.index(d[0])
        nxt = r[(pos + 1) % len(r)]
        u, v, _ = edges[nxt]
        return (nxt, 0 if u == w else 1)

    def trace_all():
        visited = set()
        out = []
        for eid in range(len(edges)):
            for i in (0, 1):
                d = (eid, i)
                if d in visited:
                    continue
                walk = []
                cur = d
                while cur not in visited:
                    visited.add(cur)
                    walk.append(cur)
                    cur = next_face_dart(cur)
                out.append(walk)
        return out

    def add_chord(walk, i):
        """Split off the ear at walk position i (chord w_i -> w_{i+2})."""
        walk = walk[i:] + walk[:i]  # ear now occupies positions 0 and 1
        d_prev, d0, d1 = walk[-1], walk[0], walk[1]
        wi = dart_source(d0)
        wj = dart_target(d1)
        eid = len(edges)
        edges.append((wi, wj, True))
        pair_exists.add(frozenset((wi, wj)))
        # at wi: the chord sits between the arriving edge (d_prev) and d0
        r = rot[wi]
        r.insert(r.index(d_prev[0]) + 1, eid)
        # at wj: between the arriving edge (d1) and the face's outgoing edge
        r = rot[wj]
        r.insert(r.index(d1[0]) + 1, eid)
        chord_dart = (eid, 0)  # edges[eid] = (wi, wj): dart 0 leaves wi
        return [chord_dart] + walk[2:]

    for face in trace_all():
        walk = list(face)
        while len(walk) > 3:
            k = len(walk)
            srcs = [dart_source(d) for d in walk]
            pick = None
            for i in range(k):
                a, b = srcs[i], srcs[(i + 2) % k]
                if a != b and frozenset((a, b)) not in pair_exists:
                    pick = i
                    break
            if pick is None:
                for i in range(k):
                    if srcs[i] != srcs[(i + 2) % k]:
                        pick = i
                        break
            if pick is None:
                raise InternalError("face admits no chord at all")
            walk = add_chord(walk, pick)

    new_edges = [UndEdge(i, u, v, virt) for i, (u, v, virt) in enumerate(edges)]
    H = PlanarDigraph(G.n, new_edges, G.arcs, rot, validate=False)
    return H


def face_side_count(G):
    """Histogram {face length: count}; test/diagnostic helper."""
    hist = {}
    for walk in G.trace_faces():
        hist[len(walk)] = hist.get(len(walk), 0) + 1
    return hist

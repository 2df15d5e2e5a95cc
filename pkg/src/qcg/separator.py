"""Balanced vertex separators of layered planar digraphs from few shortest paths.

The construction: triangulate the underlying embedding, take the
shortest-path tree from the layer's super-root, and find a non-tree edge
whose fundamental cycle balances vertex weight 2/3.  The cycle's two
root-to-endpoint tree paths are single shortest paths of bounded length and
their vertex union is the separator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalError, StructureError
from .graph import DirectedPath, dijkstra
from .embedding import triangulate


def layered_tree(H, root, scale=None):
    """Shortest-path out-tree from the root, spanning all of H.

    Returns (dist, parent_arc).  StructureError when some vertex is
    unreachable or (with ``scale``) farther than the layer scale, i.e. the
    layeredness precondition fails.
    """
    dist, parent = dijkstra(H, [root])
    for v in range(H.n):
        if dist[v] == float("inf"):
            raise StructureError(f"vertex {v} unreachable from the root")
        if scale is not None and dist[v] > scale:
            raise StructureError(f"vertex {v} at distance {dist[v]} > scale {scale}")
    return dist, parent


def _tree_path_vertices(parent_und, root, x):
    out = [x]
    while x != root:
        x = parent_und[x][0]
        out.append(x)
    out.reverse()
    return out


def fundamental_cycle_separator(H_tri, tree_edges, weights):
    """Non-tree edge whose fundamental cycle 2/3-balances ``weights``.

    ``H_tri`` must be triangulated and connected, ``tree_edges`` the
    undirected edge ids of a spanning tree.  Returns (edge_id, cycle_vertices,
    inside_weight, outside_weight).  Scans edges in id order and returns the
    first balanced one; existence is the classical planar-separator fact.
    """
    n = H_tri.n
    tree_edges = set(tree_edges)
    if len(tree_edges) != n - 1:
        raise InputError("tree_edges must form a spanning tree")
    if len(weights) != n:
        raise InputError("one weight per vertex required")

    # primal tree structure: parent pointers from an arbitrary rooting
    adj = [[] for _ in range(n)]
    for eid in tree_edges:
        e = H_tri.edges[eid]
        adj[e.u].append((e.v, eid))
        adj[e.v].append((e.u, eid))
    root = 0
    parent_und = [None] * n  # vertex -> (parent, via edge)
    depth = [0] * n
    seen = [False] * n
    seen[root] = True
    stack = [root]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w, eid in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent_und[w] = (v, eid)
                depth[w] = depth[v] + 1
                stack.append(w)
    if not all(seen):
        raise InputError("tree_edges do not span the graph")

    # faces and the dual tree over non-tree edges
    faces = H_tri.trace_faces()
    face_of_dart = {}
    for fi, walk in enumerate(faces):
        for d in walk:
            face_of_dart[d] = fi
        if len(walk) != 3:
            raise StructureError("graph is not fully triangulated")
    nf = len(faces)

    dual_adj = [[] for _ in range(nf)]
    for e in H_tri.edges:
        if e.id in tree_edges:
            continue
        f0 = face_of_dart[(e.id, 0)]
        f1 = face_of_dart[(e.id, 1)]
        dual_adj[f0].append((f1, e.id))
        dual_adj[f1].append((f0, e.id))

    dual_parent = [None] * nf  # face -> (parent face, via edge)
    seen_f = [False] * nf
    seen_f[0] = True
    stack = [0]
    dual_order = []
    while stack:
        f = stack.pop()
        dual_order.append(f)
        for g, eid in dual_adj[f]:
            if not seen_f[g]:
                seen_f[g] = True
                dual_parent[g] = (f, eid)
                stack.append(g)
    if not all(seen_f):
        raise InternalError("dual graph on non-tree edges is not connected")

    # Euler intervals on the dual tree for O(1) subtree membership
    tin = [0] * nf
    tout = [0] * nf
    children = [[] for _ in range(nf)]
    for f in range(nf):
        if dual_parent[f] is not None:
            children[dual_parent[f][0]].append(f)
    timer = 0
    stack = [(0, False)]
    while stack:
        f, done = stack.pop()
        if done:
            tout[f] = timer
            continue
        timer += 1
        tin[f] = timer
        stack.append((f, True))
        for g in children[f]:
            stack.append((g, False))

    def in_subtree(f, top):
        return tin[top] <= tin[f] and tout[f] <= tout[top]

    # representative face per vertex and dual-subtree weight sums
    rep_face = [None] * n
    for fi, walk in enumerate(faces):
        for d in walk:
            v = H_tri.dart_source(d)
            if rep_face[v] is None:
                rep_face[v] = fi
    sub_w = [0] * nf
    for v in range(n):
        sub_w[rep_face[v]] += weights[v]
    for f in reversed(dual_order):
        if dual_parent[f] is not None:
            sub_w[dual_parent[f][0]] += sub_w[f]

    child_face_of_edge = {}
    for f in range(nf):
        if dual_parent[f] is not None:
            child_face_of_edge[dual_parent[f][1]] = f

    total = sum(weights)
    for e in H_tri.edges:
        if e.id in tree_edges:
            continue
        cf = child_face_of_edge.get(e.id)
        if cf is None:
            raise InternalError("non-tree edge missing from the dual tree")
        # fundamental cycle vertices = tree paths to the LCA plus the edge
        pu = _tree_path_vertices(parent_und, root, e.u)
        pv = _tree_path_vertices(parent_und, root, e.v)
        k = 0
        while k < len(pu) and k < len(pv) and pu[k] == pv[k]:
            k += 1
        cycle = pu[k - 1:] + pv[k:][::-1]
        inside = sub_w[cf]
        cyc_w = 0
        for x in cycle:
            cyc_w += weights[x]
            if in_subtree(rep_face[x], cf):
                inside -= weights[x]
        outside = total - inside - cyc_w
        if 3 * inside <= 2 * total and 3 * outside <= 2 * total:
            return e.id, cycle, inside, outside
    raise InternalError("no balanced fundamental cycle found")


@dataclass
class SeparatorPaths:
    """Up to three directed shortest paths whose vertices separate the graph."""

    paths: list           # list of (DirectedPath, reversed: bool)
    vertices: frozenset   # union of path vertices

    def __iter__(self):
        return iter(self.paths)


def _root_path(H, parent, root, x):
    if x == root:
        return DirectedPath.trivial(root)
    arcs = []
    cur = x
    while cur != root:
        aid = parent[cur]
        arcs.append(aid)
        cur = H.arcs[aid].tail
    arcs.reverse()
    return DirectedPath.from_arcs(H, arcs)


def max_weak_component_size(H, removed):
    removed = set(removed)
    seen = set(removed)
    best = 0
    adj = [[] for _ in range(H.n)]
    for a in H.arcs:
        adj[a.tail].append(a.head)
        adj[a.head].append(a.tail)
    for s in range(H.n):
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        size = 0
        while stack:
            v = stack.pop()
            size += 1
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        best = max(best, size)
    return best


def three_path_separator(layer):
    """Lemma-style separator of a layered graph: <= 3 shortest paths.

    Verifies before returning that every path is a shortest path of length
    <= the layer scale in its recorded orientation and that removing the
    separator vertices leaves weak components of <= ceil(2n/3) vertices.
    """
    H = layer.oriented()
    n = H.n
    reverse = layer.parity == 1
    if n <= 3:
        paths = [(DirectedPath.trivial(v), reverse) for v in range(n)]
        return SeparatorPaths(paths, frozenset(range(n)))

    dist, parent = layered_tree(H, layer.super_root, scale=layer.scale)
    tri = triangulate(H)
    tree_edges = {H.arcs[parent[v]].edge for v in range(n) if v != layer.super_root}
    weights = [0 if layer.vertex_map[v] is None else 1 for v in range(n)]
    eid, cycle, _, _ = fundamental_cycle_separator(tri, tree_edges, weights)
    e = tri.edges[eid]
    p1 = _root_path(H, parent, layer.super_root, e.u)
    p2 = _root_path(H, parent, layer.super_root, e.v)
    paths = [(p1, reverse), (p2, reverse)]
    sep = frozenset(p1.vertices) | frozenset(p2.vertices)

    for p, _ in paths:
        if p.length > layer.scale:
            raise InternalError("separator path longer than the layer scale")
    cap = -(-2 * n // 3)  # ceil(2n/3)
    worst = max_weak_component_size(H, sep)
    if worst > cap:
        raise InternalError(
            f"separator unbalanced: component of {worst} > ceil(2n/3) = {cap}")
    return SeparatorPaths(paths, sep)


def component_separator(H, root=0):
    """Separator paths for a recursion subgraph that may not be spanned
    from any single root.

    Builds a spanning structure in alternating orientation phases (even
    phases grow away from the covered set, odd phases toward it), finds a
    balanced fundamental cycle of the resulting undirected spanning tree,
    and decomposes the cycle's two root paths into maximal same-phase runs.
    Each run is a genuine shortest path in its phase's orientation.

    Returns (SeparatorPaths, spans) where ``spans`` notes whether a single
    forward tree sufficed.
    """
    n = H.n
    if n <= 3:
        paths = [(DirectedPath.trivial(v), False) for v in range(n)]
        return SeparatorPaths(paths, frozenset(range(n))), True

    phase_of = [None] * n
    parent = [None] * n  # arc id; orientation depends on the phase
    phase_of[root] = 0
    covered = [root]
    phase = 0
    dist0, par0 = dijkstra(H, [root])
    for v in range(n):
        if v != root and dist0[v] < float("inf"):
            phase_of[v] = 0
            parent[v] = par0[v]
            covered.append(v)
    spans = len(covered) == n
    while len(covered) < n:
        phase += 1
        rev = phase % 2 == 1  # odd: new vertices reach the covered set
        d, par = dijkstra(H, covered, reverse=rev)
        fresh = [v for v in range(n) if phase_of[v] is None and d[v] < float("inf")]
        if not fresh:
            raise StructureError("subgraph is not weakly connected")
        for v in fresh:
            phase_of[v] = phase
            parent[v] = par[v]
        covered.extend(fresh)

    def tree_parent_vertex(v):
        a = H.arcs[parent[v]]
        return a.tail if phase_of[v] % 2 == 0 else a.head

    tree_edges = {H.arcs[parent[v]].edge for v in range(n) if v != root}
    tri = triangulate(H)
    weights = [1] * n
    eid, _, _, _ = fundamental_cycle_separator(tri, tree_edges, weights)
    e = tri.edges[eid]

    def root_chain(x):
        chain = [x]
        while x != root:
            x = tree_parent_vertex(x)
            chain.append(x)
        chain.reverse()
        return chain

    def runs_of(chain):
        """Maximal same-phase runs as DirectedPaths; all are directed and
        shortest in H itself (odd-phase runs simply point toward the
        covered set rather than away from it)."""
        out = []
        i = 1
        while i < len(chain):
            p = phase_of[chain[i]]
            j = i
            arcs = []
            while j < len(chain) and phase_of[chain[j]] == p:
                arcs.append(parent[chain[j]])
                j += 1
            if p % 2 == 0:
                path = DirectedPath.from_arcs(H, arcs)
            else:
                path = DirectedPath.from_arcs(H, list(reversed(arcs)))
            out.append((path, False))
            i = j
        if not out:
            out.append((DirectedPath.trivial(chain[0]), False))
        return out

    seen_runs = set()
    paths = []
    sep = set()
    for endpoint in (e.u, e.v):
        chain = root_chain(endpoint)
        sep.update(chain)
        for path, rev in runs_of(chain):
            key = (path.vertices, rev)
            if key not in seen_runs:
                seen_runs.add(key)
                paths.append((path, rev))
    return SeparatorPaths(paths, frozenset(sep)), spans

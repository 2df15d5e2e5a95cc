"""Instance and cutset text formats.

Graph format, one instance per file::

    qcg 1 <n> <m_und> <m_arc>
    v <id> <cyclic list of undirected-edge ids>
    ...
    e <id> <endpoint> <endpoint> [virtual]
    ...
    a <arc-id> <tail> <head> <length>
    ...

Lengths are decimal literals; lines starting with ``#`` are comments.
Sections appear in the order above with ids numbered 0..k-1 in order, which
keeps round-trips byte-identical.
"""

from __future__ import annotations

import json

from .errors import ParseError
from .graph import Arc, PlanarDigraph, UndEdge


def _fmt_length(x):
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def write_graph(G, path, header_comments=()):
    with open(path, "w") as fh:
        for c in header_comments:
            fh.write(f"# {c}\n")
        fh.write(f"qcg 1 {G.n} {len(G.edges)} {len(G.arcs)}\n")
        for v in range(G.n):
            ids = " ".join(str(e) for e in G.rotation[v])
            fh.write(f"v {v} {ids}".rstrip() + "\n")
        for e in G.edges:
            tail = " virtual" if e.virtual else ""
            fh.write(f"e {e.id} {e.u} {e.v}{tail}\n")
        for a in G.arcs:
            fh.write(f"a {a.id} {a.tail} {a.head} {_fmt_length(a.length)}\n")


def read_graph(path):
    with open(path) as fh:
        lines = fh.readlines()
    pos = 0

    def next_line():
        nonlocal pos
        while pos < len(lines):
            raw = lines[pos]
            pos += 1
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                return pos, stripped
        return None, None

    lineno, header = next_line()
    if header is None:
        raise ParseError("empty file")
    parts = header.split()
    if len(parts) != 5 or parts[0] != "qcg" or parts[1] != "1":
        raise ParseError("expected header 'qcg 1 <n> <m_und> <m_arc>'", lineno)
    try:
        n, m_und, m_arc = int(parts[2]), int(parts[3]), int(parts[4])
    except ValueError:
        raise ParseError("non-integer counts in header", lineno)

    rotation = []
    for k in range(n):
        lineno, line = next_line()
        if line is None:
            raise ParseError(f"missing vertex line {k}")
        parts = line.split()
        if parts[0] != "v":
            raise ParseError(f"expected vertex line, got {parts[0]!r}", lineno)
        try:
            vid = int(parts[1])
            rot = [int(x) for x in parts[2:]]
        except ValueError:
            raise ParseError("non-integer id in vertex line", lineno)
        if vid != k:
            raise ParseError(f"vertex ids must be sequential (got {vid}, want {k})",
                             lineno)
        rotation.append(rot)

    edges = []
    for k in range(m_und):
        lineno, line = next_line()
        if line is None:
            raise ParseError(f"missing edge line {k}")
        parts = line.split()
        if parts[0] != "e" or len(parts) not in (4, 5):
            raise ParseError("malformed edge line", lineno)
        if len(parts) == 5 and parts[4] != "virtual":
            raise ParseError(f"unknown edge flag {parts[4]!r}", lineno)
        try:
            eid, u, v = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError:
            raise ParseError("non-integer id in edge line", lineno)
        if eid != k:
            raise ParseError(f"edge ids must be sequential (got {eid}, want {k})",
                             lineno)
        edges.append(UndEdge(eid, u, v, len(parts) == 5))

    arcs = []
    for k in range(m_arc):
        lineno, line = next_line()
        if line is None:
            raise ParseError(f"missing arc line {k}")
        parts = line.split()
        if parts[0] != "a" or len(parts) != 5:
            raise ParseError("malformed arc line", lineno)
        try:
            aid, tail, head = int(parts[1]), int(parts[2]), int(parts[3])
            length = float(parts[4])
        except ValueError:
            raise ParseError("bad number in arc line", lineno)
        if aid != k:
            raise ParseError(f"arc ids must be sequential (got {aid}, want {k})",
                             lineno)
        edge = _find_edge(edges, tail, head, lineno)
        arcs.append(Arc(aid, tail, head, length, edge))

    lineno, extra = next_line()
    if extra is not None:
        raise ParseError("trailing content after arc section", lineno)
    try:
        return PlanarDigraph(n, edges, arcs, rotation)
    except Exception as exc:
        raise ParseError(f"invalid graph: {exc}")


def _find_edge(edges, tail, head, lineno):
    want = {tail, head}
    for e in edges:
        if not e.virtual and {e.u, e.v} == want:
            return e.id
    raise ParseError(f"no undirected edge between {tail} and {head}", lineno)


def write_cutset(result, path, run_config=None):
    """Cut arcs with provenance plus a reproducibility summary line."""
    counts = {"precut": 0, "wave": 0, "layer": 0}
    for label in result.provenance.values():
        counts[label.split(":")[0]] += 1
    with open(path, "w") as fh:
        if run_config is not None:
            fh.write("# config: " + json.dumps(run_config, sort_keys=True) + "\n")
        for aid in sorted(result.cutset):
            fh.write(f"cut {aid} {result.provenance[aid]}\n")
        fh.write(f"summary delta={_fmt_length(result.delta)}"
                 f" total={len(result.cutset)} precut={counts['precut']}"
                 f" wave={counts['wave']} layer={counts['layer']}\n")


def read_cutset(path):
    """Returns (cut arc ids, provenance dict); ignores comments/summary."""
    cutset = set()
    provenance = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("summary"):
                continue
            parts = line.split()
            if parts[0] != "cut" or len(parts) != 3:
                raise ParseError("malformed cut line", lineno)
            try:
                aid = int(parts[1])
            except ValueError:
                raise ParseError("non-integer arc id", lineno)
            cutset.add(aid)
            provenance[aid] = parts[2]
    return frozenset(cutset), provenance


def write_wave_dump(wave, path, vertex_names=None):
    """Layer assignment, offsets and cut arcs of one sampled wave."""
    name = (lambda v: v) if vertex_names is None else (lambda v: vertex_names[v])
    with open(path, "w") as fh:
        fh.write(f"# wave source={name(wave.source)} "
                 f"delta={_fmt_length(wave.delta)} layers={len(wave.layers)}\n")
        fh.write("tau " + " ".join(repr(t) for t in wave.taus) + "\n")
        for i, members in enumerate(wave.layers):
            ids = " ".join(str(name(v)) for v in members)
            fh.write(f"layer {i} {ids}".rstrip() + "\n")
        if wave.overflow:
            fh.write("overflow " + " ".join(str(name(v)) for v in wave.overflow) + "\n")
        fh.write("cut " + " ".join(str(a) for a in sorted(wave.cut_arcs)) + "\n")

"""Executable checks for every guarantee the samplers make.

Exact claims (layer decompositions, balance, boundedness, relation axioms)
are asserted per sample; probability bounds are checked empirically with a
3-binomial-standard-error confidence radius on top of the stated constant,
and every statistical check reports effect sizes, never bare pass/fail.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import InputError, InternalError, SizeError
from .graph import Quasipartition, all_pairs_dist, extract_path
from .decompose import planar_quasipartition, rng_for_sample
from .pathqp import path_quasipartition
from .shock import exhaust_lowest_id, sample_shock
from .wave import extract_layer, locate_path_layers, sample_wave

INF = math.inf


def binom_ci(p_bar, N):
    """3 binomial standard errors at rate p_bar over N samples."""
    p = min(max(p_bar, 0.0), 1.0)
    return 3.0 * math.sqrt(p * (1.0 - p) / N)


@dataclass
class CheckReport:
    name: str
    passed: bool
    params: dict
    summary: dict
    columns: list
    rows: list = field(default_factory=list)

    def row_dicts(self):
        return [dict(zip(self.columns, r)) for r in self.rows]


# -- exact checks -------------------------------------------------------------


@dataclass
class BoundednessReport:
    passed: bool
    bound: float
    witness: tuple = None  # (u, v, d) with (u,v) related and d > bound


def check_bounded(G, cutset, bound, dist=None):
    """Exact all-pairs check: every related pair has d_G <= bound."""
    if dist is None:
        dist = all_pairs_dist(G)
    bits = Quasipartition(G, cutset).reach_bits()
    for u in range(G.n):
        b = bits[u]
        du = dist[u]
        while b:
            lsb = b & -b
            v = lsb.bit_length() - 1
            b ^= lsb
            if du[v] > bound:
                return BoundednessReport(False, bound, (u, v, du[v]))
    return BoundednessReport(True, bound, None)


def transitive_closure(rel):
    """Fixpoint of relational composition; independent of reachability code."""
    succ = {}
    for a, b in rel:
        succ.setdefault(a, set()).add(b)
    closed = set(rel)
    changed = True
    while changed:
        changed = False
        for a, b in list(closed):
            for c in succ.get(b, ()):
                if (a, c) not in closed:
                    closed.add((a, c))
                    succ.setdefault(a, set()).add(c)
                    changed = True
    return closed


def check_quasipartition_axioms(G, cutset, cap=64):
    """Materialized relation is reflexive and transitively closed."""
    if G.n > cap:
        raise SizeError(f"axioms check capped at {cap} vertices")
    rel = Quasipartition(G, cutset).materialize(cap=cap)
    reflexive = all((v, v) in rel for v in range(G.n))
    closed = transitive_closure(rel) == rel
    return reflexive and closed


# -- Monte Carlo plumbing ------------------------------------------------------


def _mc_run(kernel, args, N, jobs):
    """Run ``kernel(args, lo, hi)`` over [0, N) in contiguous chunks.

    Per-sample RNG streams are addressed by sample index, so the result is
    identical for any job count; counts add, failure lists concatenate.
    """
    if jobs <= 1:
        return [kernel((args, 0, N))]
    bounds = np.linspace(0, N, jobs + 1, dtype=int)
    chunks = [(args, int(lo), int(hi))
              for lo, hi in zip(bounds[:-1], bounds[1:]) if lo < hi]
    with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
        return list(ex.map(kernel, chunks))


def _merge_counts(parts, key):
    total = None
    for p in parts:
        arr = p[key]
        total = arr if total is None else total + arr
    return total


def _merge_lists(parts, key):
    out = []
    for p in parts:
        out.extend(p[key])
    out.sort()
    return out


# -- Lemma: shock cut probabilities -------------------------------------------


def _k_shock(chunk):
    (G, delta, strategy, seed), lo, hi = chunk
    counts = np.zeros(len(G.arcs), dtype=np.int64)
    for i in range(lo, hi):
        rng = rng_for_sample(seed, i)
        res = sample_shock(G, delta, strategy, rng)
        for aid in res.cutset:
            counts[aid] += 1
    return {"counts": counts}


def check_shock_lemma(H, delta, N, seed, strategy=None, jobs=1, dist=None):
    """Per-arc empirical Pr[arc cut] <= 2 d(u,v)/delta + CI."""
    strategy = strategy or exhaust_lowest_id
    if dist is None:
        dist = all_pairs_dist(H)
    parts = _mc_run(_k_shock, (H, delta, strategy, seed), N, jobs)
    counts = _merge_counts(parts, "counts")

    rows = []
    passed = True
    worst = -math.inf
    for a in H.arcs:
        d = dist[a.tail][a.head]
        p_hat = counts[a.id] / N
        p_bar = min(1.0, 2.0 * d / delta)
        bound = 2.0 * d / delta + binom_ci(p_bar, N)
        ok = p_hat <= bound
        passed = passed and ok
        worst = max(worst, p_hat - bound)
        rows.append((a.id, a.tail, a.head, d, p_hat, bound, int(ok)))
    return CheckReport(
        "shock", passed,
        {"delta": delta, "N": N, "seed": seed, "n": H.n, "arcs": len(H.arcs)},
        {"max_excess": worst, "offenders": sum(1 for r in rows if not r[-1])},
        ["arc", "u", "v", "d", "p_hat", "bound", "pass"], rows)


# -- Lemma: path quasipartition ------------------------------------------------


def _bfs_mask(adj, src):
    seen = 1 << src
    stack = [src]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen >> w & 1:
                seen |= 1 << w
                stack.append(w)
    return seen


def _k_pathqp(chunk):
    (H, Q, delta, seed, bad_pairs), lo, hi = chunk
    counts = np.zeros(len(H.arcs), dtype=np.int64)
    part2_failures = []
    qverts = list(Q.vertices)
    for i in range(lo, hi):
        rng = rng_for_sample(seed, i)
        res = path_quasipartition(H, Q, delta, rng)
        for aid in res.cutset:
            counts[aid] += 1
        if bad_pairs:
            cut = res.cutset
            fwd = [[] for _ in range(H.n)]
            rev = [[] for _ in range(H.n)]
            for a in H.arcs:
                if a.id not in cut:
                    fwd[a.tail].append(a.head)
                    rev[a.head].append(a.tail)
            to_q = [0] * H.n    # bitmask over q indices x can reach
            from_q = [0] * H.n  # bitmask over q indices reaching y
            for qi, q in enumerate(qverts):
                m = _bfs_mask(rev, q)
                for v in range(H.n):
                    if m >> v & 1:
                        to_q[v] |= 1 << qi
                m = _bfs_mask(fwd, q)
                for v in range(H.n):
                    if m >> v & 1:
                        from_q[v] |= 1 << qi
            for x, y, d in bad_pairs:
                if to_q[x] & from_q[y]:
                    part2_failures.append((i, x, y, d))
    return {"counts": counts, "part2": part2_failures}


def check_pathqp_lemma(H, Q, delta, N, seed, jobs=1, dist=None):
    """Part (1): per-arc Pr[cut] <= 4 d/delta + CI.  Part (2): exact per
    sample, any pair joined through V(Q) sits within 2 len(Q) + 2 delta ln n
    + 2 delta."""
    if dist is None:
        dist = all_pairs_dist(H)
    n = max(H.n, 2)
    bound2 = 2.0 * Q.length + 2.0 * delta * math.log(n) + 2.0 * delta
    bad_pairs = [(x, y, dist[x][y])
                 for x in range(H.n) for y in range(H.n)
                 if x != y and INF > dist[x][y] > bound2]

    parts = _mc_run(_k_pathqp, (H, Q, delta, seed, bad_pairs), N, jobs)
    counts = _merge_counts(parts, "counts")
    part2 = _merge_lists(parts, "part2")

    rows = []
    part1_ok = True
    worst = -math.inf
    for a in H.arcs:
        d = dist[a.tail][a.head]
        p_hat = counts[a.id] / N
        p_bar = min(1.0, 4.0 * d / delta)
        bound = 4.0 * d / delta + binom_ci(p_bar, N)
        ok = p_hat <= bound
        part1_ok = part1_ok and ok
        worst = max(worst, p_hat - bound)
        rows.append((a.id, a.tail, a.head, d, p_hat, bound, int(ok)))
    passed = part1_ok and not part2
    return CheckReport(
        "pathqp", passed,
        {"delta": delta, "N": N, "seed": seed, "n": H.n,
         "len_Q": Q.length, "part2_bound": bound2,
         "candidate_pairs": len(bad_pairs)},
        {"max_excess": worst, "part1_offenders": sum(1 for r in rows if not r[-1]),
         "part2_failures": len(part2), "part2_first": part2[0] if part2 else None},
        ["arc", "u", "v", "d", "p_hat", "bound", "pass"], rows)


# -- Lemma: waves ---------------------------------------------------------------


def _k_wave(chunk):
    (G, v, delta, seed, probes, eligible, paths), lo, hi = chunk
    counts = np.zeros(len(G.arcs), dtype=np.int64)
    ii_failures = []
    iii_failures = []
    for i in range(lo, hi):
        rng = rng_for_sample(seed, i)
        wv = sample_wave(G, v, delta, rng)
        for aid in wv.cut_arcs:
            counts[aid] += 1
        if eligible:
            picks = rng.integers(0, len(eligible), size=probes)
            for k in picks:
                path = paths[int(k)]
                if set(path.arc_ids) & wv.cut_arcs:
                    # Path uses a wave-cut arc: the containment window still
                    # holds with probability 1; the block decomposition is
                    # only claimed for paths surviving the cut.
                    lys = [wv.layer_of[x] for x in path.vertices]
                    if max(lys) - min(lys) > 2:
                        ii_failures.append((i, int(k), "window"))
                    continue
                try:
                    locate_path_layers(wv, path)
                except InternalError as exc:
                    ii_failures.append((i, int(k), str(exc)))
        for li, members in enumerate(wv.layers):
            if not members:
                continue
            lg = extract_layer(G, wv, li)
            ok, witness = lg.check()
            if not ok:
                iii_failures.append((i, li, witness))
    return {"counts": counts, "ii": ii_failures, "iii": iii_failures}


def check_wave_lemma(G, v, delta, N, seed, probes=50, jobs=1, dist=None):
    """(i) statistical per-arc with constant 2; (ii) and (iii) exact."""
    if dist is None:
        dist = all_pairs_dist(G)
    eligible = [(s, t) for s in range(G.n) for t in range(G.n)
                if s != t and 0.0 < dist[s][t] <= delta]
    paths = [extract_path(G, s, t) for s, t in eligible]

    parts = _mc_run(_k_wave, (G, v, delta, seed, probes, eligible, paths),
                    N, jobs)
    counts = _merge_counts(parts, "counts")
    ii = _merge_lists(parts, "ii")
    iii = _merge_lists(parts, "iii")

    rows = []
    i_ok = True
    worst = -math.inf
    for a in G.arcs:
        d = dist[a.tail][a.head]
        p_hat = counts[a.id] / N
        p_bar = min(1.0, 2.0 * d / delta)
        bound = 2.0 * d / delta + binom_ci(p_bar, N)
        ok = p_hat <= bound
        i_ok = i_ok and ok
        worst = max(worst, p_hat - bound)
        rows.append((a.id, a.tail, a.head, d, p_hat, bound, int(ok)))
    passed = i_ok and not ii and not iii
    return CheckReport(
        "wave", passed,
        {"delta": delta, "N": N, "seed": seed, "n": G.n, "source": v,
         "probes": probes, "eligible_pairs": len(eligible)},
        {"max_excess": worst, "i_offenders": sum(1 for r in rows if not r[-1]),
         "ii_failures": len(ii), "iii_failures": len(iii)},
        ["arc", "u", "v", "d", "p_hat", "bound", "pass"], rows)


# -- Lipschitz estimation --------------------------------------------------------


def _k_lipschitz(chunk):
    (G, delta, seed, pairs, c1, base_size), lo, hi = chunk
    counts = np.zeros(len(pairs), dtype=np.int64)
    for i in range(lo, hi):
        rng = rng_for_sample(seed, i)
        res = planar_quasipartition(G, delta, rng, c1=c1, base_size=base_size)
        bits = res.quasipartition().reach_bits()
        for k, (u, v, _) in enumerate(pairs):
            if not bits[u] >> v & 1:
                counts[k] += 1
    return {"counts": counts}


@dataclass
class LipschitzReport:
    scope: str
    delta: float
    N: int
    seed: int
    beta_hat: float
    rows: list  # (u, v, d, p_hat, ci, beta_hat_pair, included)

    def to_check_report(self, name="lipschitz"):
        return CheckReport(
            name, True,
            {"scope": self.scope, "delta": self.delta, "N": self.N,
             "seed": self.seed},
            {"beta_hat": self.beta_hat,
             "pairs": len(self.rows),
             "included": sum(r[-1] for r in self.rows)},
            ["u", "v", "d", "p_hat", "ci", "beta_hat", "included"],
            list(self.rows))


def estimate_lipschitz(G, delta, N, seed, scope="arcs", c1=8.0, base_size=3,
                       jobs=1, dist=None):
    """Empirical non-containment frequencies and the implied constant.

    beta_hat aggregates max p_hat * delta / d over pairs with 0 < d <= delta;
    zero-distance, unreachable and beyond-delta pairs are excluded.
    """
    if N < 100:
        raise InputError("need at least 100 samples for a meaningful estimate")
    if scope not in ("arcs", "all-pairs"):
        raise InputError("scope must be 'arcs' or 'all-pairs'")
    if dist is None:
        dist = all_pairs_dist(G)
    if scope == "arcs":
        endpoints = sorted({(a.tail, a.head) for a in G.arcs})
    else:
        endpoints = [(u, v) for u in range(G.n) for v in range(G.n)
                     if u != v and 0.0 < dist[u][v] <= delta]
    pairs = [(u, v, dist[u][v]) for u, v in endpoints]

    parts = _mc_run(_k_lipschitz, (G, delta, seed, pairs, c1, base_size),
                    N, jobs)
    counts = _merge_counts(parts, "counts")

    rows = []
    beta = 0.0
    for k, (u, v, d) in enumerate(pairs):
        p_hat = counts[k] / N
        ci = binom_ci(p_hat, N)
        included = int(0.0 < d <= delta)
        bpair = p_hat * delta / d if included else 0.0
        if included:
            beta = max(beta, bpair)
        rows.append((u, v, d, p_hat, ci, bpair, included))
    return LipschitzReport(scope, delta, N, seed, beta, rows)


# -- report files -----------------------------------------------------------------


def _json_default(o):
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, (set, frozenset, tuple)):
        return sorted(o) if isinstance(o, (set, frozenset)) else list(o)
    raise TypeError(f"not JSON serializable: {type(o)}")


def write_report(report, outdir, stem, run_config=None, figures=True):
    """CSV table + JSON summary (+ PNG figure) for one check."""
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, stem + ".csv")
    with open(csv_path, "w") as fh:
        fh.write("# qcg " + __version__ + "\n")
        if run_config is not None:
            fh.write("# config: " + json.dumps(run_config, sort_keys=True,
                                               default=_json_default) + "\n")
        fh.write(",".join(report.columns) + "\n")
        for row in report.rows:
            fh.write(",".join(repr(x) if isinstance(x, float) else str(x)
                              for x in row) + "\n")
    json_path = os.path.join(outdir, stem + ".json")
    payload = {
        "name": report.name,
        "passed": bool(report.passed),
        "params": report.params,
        "summary": report.summary,
        "version": __version__,
    }
    if run_config is not None:
        payload["config"] = run_config
    with open(json_path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2, default=_json_default)
        fh.write("\n")
    written = [csv_path, json_path]
    if figures and report.rows:
        from . import figures as figmod
        png_path = os.path.join(outdir, stem + ".png")
        figmod.check_figure(report, png_path)
        written.append(png_path)
    return written

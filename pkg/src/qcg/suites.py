"""Named verification suites behind ``qcg verify`` and ``qcg bench``.

Each suite builds its canonical instances, runs the matching checkers and
writes CSV/JSON (and PNG) artifacts.  Everything is reproducible from
(suite, samples, seed): per-sample RNG streams are addressed by index and
instances use fixed generator seeds.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from . import __version__
from .errors import InputError
from .graph import all_pairs_dist, extract_path
from .decompose import planar_quasipartition, rng_for_sample
from .instances import InstanceSpec, generate
from .verify import (CheckReport, check_bounded, check_pathqp_lemma,
                     check_quasipartition_axioms, check_shock_lemma,
                     check_wave_lemma, estimate_lipschitz, write_report)

SUITES = ("shock", "pathqp", "wave", "axioms", "bounded", "lipschitz", "all")

_GRID8 = InstanceSpec(family="grid", rows=8, cols=8, lengths="uniform",
                      length_max=10, orientation="both", seed=1)


def _finite_diameter(dist):
    best = 0.0
    for row in dist:
        for d in row:
            if d != math.inf:
                best = max(best, d)
    return best


def suite_shock(outdir, samples=4000, seed=0, jobs=1, figures=True):
    G = generate(_GRID8)
    report = check_shock_lemma(G, 20.0, samples, seed, jobs=jobs)
    report.params["instance"] = _GRID8.describe()
    cfg = {"suite": "shock", "samples": samples, "seed": seed}
    files = write_report(report, outdir, "shock", cfg, figures)
    return [report], files


def suite_pathqp(outdir, samples=2000, seed=0, jobs=1, figures=True):
    G = generate(_GRID8)
    dist = all_pairs_dist(G)
    eligible = [(u, v) for u in range(G.n) for v in range(G.n)
                if u != v and dist[u][v] != math.inf]
    pick = rng_for_sample(seed, 1_000_003)
    u, v = eligible[int(pick.integers(0, len(eligible)))]
    Q = extract_path(G, u, v)
    report = check_pathqp_lemma(G, Q, 4.0, samples, seed, jobs=jobs, dist=dist)
    report.params["instance"] = _GRID8.describe()
    report.params["Q"] = list(Q.vertices)
    cfg = {"suite": "pathqp", "samples": samples, "seed": seed}
    files = write_report(report, outdir, "pathqp", cfg, figures)
    return [report], files


def wave_instances():
    """10 instances with n <= 200 exercising several shapes/orientations."""
    specs = [
        InstanceSpec(family="grid", rows=5, cols=5, seed=11),
        InstanceSpec(family="grid", rows=6, cols=8, seed=12),
        InstanceSpec(family="grid", rows=7, cols=7, seed=13),
        InstanceSpec(family="grid", rows=10, cols=10, seed=14),
        InstanceSpec(family="grid", rows=8, cols=12, seed=15),
        InstanceSpec(family="grid", rows=14, cols=14, seed=16),
        InstanceSpec(family="triangulation", n=40, seed=17),
        InstanceSpec(family="triangulation", n=90, seed=18),
        InstanceSpec(family="triangulation", n=150, seed=19),
        InstanceSpec(family="grid", rows=9, cols=9, seed=20,
                     orientation="random-single"),
    ]
    return specs


def suite_wave(outdir, samples=100, seed=0, jobs=1, figures=True):
    reports = []
    files = []
    for k, spec in enumerate(wave_instances()):
        G = generate(spec)
        report = check_wave_lemma(G, 0, 12.0, samples, seed + k,
                                  probes=50, jobs=jobs)
        report.params["instance"] = spec.describe()
        reports.append(report)
        cfg = {"suite": "wave", "samples": samples, "seed": seed,
               "instance": spec.describe()}
        files += write_report(report, outdir, f"wave-{k:02d}", cfg, figures)
    return reports, files


def axioms_instances(count=50):
    specs = []
    families = ["grid", "triangulation", "chain"]
    orientations = ["both", "random-single", "dag"]
    for k in range(count):
        fam = families[k % 3]
        ori = orientations[(k // 3) % 3]
        if fam == "grid":
            rows = 2 + (k % 4)
            cols = 2 + ((k // 2) % 4)
            specs.append(InstanceSpec(family="grid", rows=rows, cols=cols,
                                      orientation=ori, seed=100 + k))
        elif fam == "triangulation":
            n = 5 + (k % 24)
            specs.append(InstanceSpec(family="triangulation", n=n,
                                      orientation=ori, seed=100 + k))
        else:
            specs.append(InstanceSpec(family="chain", k=1 + (k % 20),
                                      orientation="both", seed=100 + k))
    return specs


def suite_axioms(outdir, samples=1, seed=0, jobs=1, figures=True):
    rows = []
    passed = True
    for k, spec in enumerate(axioms_instances()):
        G = generate(spec)
        dist = all_pairs_dist(G)
        diam = _finite_diameter(dist)
        delta = max(diam / 2.0, 1.0)
        res = planar_quasipartition(G, delta, rng_for_sample(seed, k))
        ok = check_quasipartition_axioms(G, res.cutset, cap=64)
        passed = passed and ok
        rows.append((k, spec.describe(), G.n, len(res.cutset), int(ok)))
    report = CheckReport(
        "axioms", passed,
        {"instances": len(rows), "seed": seed},
        {"failures": sum(1 for r in rows if not r[-1])},
        ["instance", "spec", "n", "cut_size", "pass"], rows)
    cfg = {"suite": "axioms", "seed": seed}
    files = write_report(report, outdir, "axioms", cfg, figures)
    return [report], files


BOUNDED_SIZES = (16, 64, 144)


def suite_bounded(outdir, samples=200, seed=0, jobs=1, figures=True,
                  graph=None, cutset=None, delta=None):
    """Exact boundedness; optionally verify one externally supplied cutset."""
    if graph is not None:
        if delta is None:
            raise InputError("--delta required when checking a cutset file")
        rep = check_bounded(graph, cutset, delta)
        report = CheckReport(
            "bounded", rep.passed,
            {"mode": "file", "delta": delta, "cut_size": len(cutset)},
            {"witness": rep.witness},
            ["u", "v", "d", "bound"],
            [] if rep.passed else [(rep.witness[0], rep.witness[1],
                                    rep.witness[2], delta)])
        files = write_report(report, outdir, "bounded", {"suite": "bounded"},
                             figures)
        return [report], files

    rows = []
    passed = True
    first_witness = None
    for n in BOUNDED_SIZES:
        side = math.isqrt(n)
        spec = InstanceSpec(family="grid", rows=side, cols=side,
                            lengths="uniform", length_max=10,
                            orientation="both", seed=n)
        G = generate(spec)
        dist = all_pairs_dist(G)
        delta_n = _finite_diameter(dist) / 2.0
        fails = 0
        for i in range(samples):
            res = planar_quasipartition(G, delta_n, rng_for_sample(seed, i))
            rep = check_bounded(G, res.cutset, delta_n, dist=dist)
            if not rep.passed:
                fails += 1
                if first_witness is None:
                    first_witness = (n, i) + rep.witness
        ok = fails == 0
        passed = passed and ok
        rows.append((n, delta_n, samples, fails, int(ok)))
    report = CheckReport(
        "bounded", passed,
        {"sizes": list(BOUNDED_SIZES), "samples": samples, "seed": seed},
        {"witness": first_witness},
        ["n", "delta", "samples", "failures", "pass"], rows)
    cfg = {"suite": "bounded", "samples": samples, "seed": seed}
    files = write_report(report, outdir, "bounded", cfg, figures)
    return [report], files


def suite_lipschitz(outdir, samples=1000, seed=0, jobs=1, figures=True):
    G = generate(_GRID8)
    dist = all_pairs_dist(G)
    delta = _finite_diameter(dist) / 2.0
    rep = estimate_lipschitz(G, delta, samples, seed, scope="arcs",
                             jobs=jobs, dist=dist)
    report = rep.to_check_report()
    report.passed = math.isfinite(rep.beta_hat)
    report.params["instance"] = _GRID8.describe()
    cfg = {"suite": "lipschitz", "samples": samples, "seed": seed}
    files = write_report(report, outdir, "lipschitz", cfg, figures)
    return [report], files


def run_suite(name, outdir, samples=None, seed=0, jobs=1, figures=True,
              graph=None, cutset=None, delta=None):
    """Dispatch; ``samples=None`` uses each suite's acceptance default."""
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {SUITES}")
    os.makedirs(outdir, exist_ok=True)
    runners = {
        "shock": lambda: suite_shock(outdir, samples or 4000, seed, jobs, figures),
        "pathqp": lambda: suite_pathqp(outdir, samples or 2000, seed, jobs, figures),
        "wave": lambda: suite_wave(outdir, samples or 100, seed, jobs, figures),
        "axioms": lambda: suite_axioms(outdir, 1, seed, jobs, figures),
        "bounded": lambda: suite_bounded(outdir, samples or 200, seed, jobs,
                                         figures, graph, cutset, delta),
        "lipschitz": lambda: suite_lipschitz(outdir, samples or 1000, seed,
                                             jobs, figures),
    }
    if name == "all":
        reports = []
        files = []
        for key in ("shock", "pathqp", "wave", "axioms", "bounded", "lipschitz"):
            r, f = runners[key]()
            reports += r
            files += f
        return reports, files
    return runners[name]()


def run_bench(sizes, samples, seed, outdir, jobs=1, figures=True):
    """beta_hat(n) growth table over canonical grids at delta = diameter/2."""
    os.makedirs(outdir, exist_ok=True)
    rows = []
    for n in sizes:
        side = math.isqrt(n)
        if side * side != n:
            raise InputError(f"bench sizes must be perfect squares, got {n}")
        spec = InstanceSpec(family="grid", rows=side, cols=side,
                            lengths="uniform", length_max=10,
                            orientation="both", seed=n)
        G = generate(spec)
        dist = all_pairs_dist(G)
        delta = _finite_diameter(dist) / 2.0
        rep = estimate_lipschitz(G, delta, samples, seed, scope="arcs",
                                 jobs=jobs, dist=dist)
        rows.append({
            "n": n,
            "delta": delta,
            "beta_hat": rep.beta_hat,
            "beta_over_log2": rep.beta_hat / (math.log(n) ** 2),
            "beta_over_1p_log2": rep.beta_hat / ((1.0 + math.log(n)) ** 2),
        })

    cfg = {"command": "bench", "sizes": list(sizes), "samples": samples,
           "seed": seed, "version": __version__}
    csv_path = os.path.join(outdir, "bench.csv")
    cols = ["n", "delta", "beta_hat", "beta_over_log2", "beta_over_1p_log2"]
    with open(csv_path, "w") as fh:
        fh.write("# qcg " + __version__ + "\n")
        fh.write("# config: " + json.dumps(cfg, sort_keys=True) + "\n")
        fh.write(",".join(cols) + "\n")
        for r in rows:
            fh.write(",".join(repr(float(r[c])) if c != "n" else str(r[c])
                              for c in cols) + "\n")
    json_path = os.path.join(outdir, "bench.json")
    with open(json_path, "w") as fh:
        json.dump({"config": cfg, "rows": rows}, fh, sort_keys=True, indent=2)
        fh.write("\n")
    files = [csv_path, json_path]
    if figures:
        from . import figures as figmod
        png = os.path.join(outdir, "bench.png")
        figmod.bench_figure(rows, png)
        files.append(png)
    return rows, files

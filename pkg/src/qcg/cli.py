"""Command line front-end: generate, partition, verify, bench.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 I/O or
parse error.  Every output embeds the run configuration and version so runs
are reproducible byte-for-byte from their own headers.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import ParseError, QcgError
from .decompose import planar_quasipartition
from .formats import read_cutset, read_graph, write_cutset, write_graph, write_wave_dump
from .instances import InstanceSpec, generate
from .suites import SUITES, run_bench, run_suite


def _add_instance_flags(p):
    p.add_argument("--family", default="grid",
                   choices=["grid", "triangulation", "chain"])
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--cols", type=int, default=4)
    p.add_argument("--n", type=int, default=16, help="triangulation size")
    p.add_argument("--k", type=int, default=4, help="chain arc count")
    p.add_argument("--lengths", default="uniform", choices=["uniform", "constant"])
    p.add_argument("--length-max", type=int, default=10)
    p.add_argument("--length-value", type=float, default=1.0)
    p.add_argument("--orientation", default="both",
                   choices=["both", "random-single", "dag"])
    p.add_argument("--seed", type=int, default=0)


def _spec_from_args(args):
    return InstanceSpec(family=args.family, rows=args.rows, cols=args.cols,
                        n=args.n, k=args.k, lengths=args.lengths,
                        length_max=args.length_max,
                        length_value=args.length_value,
                        orientation=args.orientation, seed=args.seed)


def build_parser():
    ap = argparse.ArgumentParser(prog="qcg",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"qcg {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a planar digraph instance file")
    _add_instance_flags(g)
    g.add_argument("-o", "--output", required=True)

    p = sub.add_parser("partition", help="sample one quasipartition cutset")
    p.add_argument("graph", help="instance file")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c1", type=float, default=8.0)
    p.add_argument("--base-size", type=int, default=3)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--dump-wave", metavar="FILE",
                   help="write the sampled wave layers/offsets/cuts")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=list(SUITES))
    v.add_argument("--out", default="reports")
    v.add_argument("--samples", type=int, default=None,
                   help="Monte Carlo samples (suite default when omitted)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-figures", action="store_true")
    v.add_argument("--graph", help="check an existing instance (bounded suite)")
    v.add_argument("--cuts", help="cutset file to verify (bounded suite)")
    v.add_argument("--delta", type=float, help="bound for --cuts verification")

    b = sub.add_parser("bench", help="Lipschitz-constant growth study")
    b.add_argument("--sizes", default="16,64,256",
                   help="comma-separated perfect-square grid sizes")
    b.add_argument("--samples", type=int, default=1000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", default="reports")
    b.add_argument("--no-figures", action="store_true")
    return ap


def cmd_generate(args):
    spec = _spec_from_args(args)
    G = generate(spec)
    cfg = json.dumps({"command": "generate", "spec": spec.__dict__,
                      "version": __version__}, sort_keys=True)
    write_graph(G, args.output, header_comments=[f"config: {cfg}"])
    print(f"wrote {args.output}: n={G.n} edges={len(G.edges)} arcs={len(G.arcs)}")
    return 0


def cmd_partition(args):
    G = read_graph(args.graph)
    rng = np.random.default_rng(np.random.SeedSequence(args.seed))
    keep_detail = args.dump_wave is not None
    res = planar_quasipartition(G, args.delta, rng, c1=args.c1,
                                base_size=args.base_size,
                                keep_detail=keep_detail)
    cfg = {"command": "partition", "graph": args.graph, "delta": args.delta,
           "seed": args.seed, "c1": args.c1, "base_size": args.base_size,
           "version": __version__}
    write_cutset(res, args.output, run_config=cfg)
    counts = {}
    for label in res.provenance.values():
        key = label.split(":")[0]
        counts[key] = counts.get(key, 0) + 1
    print(f"cut {len(res.cutset)} of {len(G.arcs)} arcs "
          f"(precut={counts.get('precut', 0)} wave={counts.get('wave', 0)} "
          f"layer={counts.get('layer', 0)})")
    if args.dump_wave is not None:
        if not res.waves:
            open(args.dump_wave, "w").close()
        for k, (comp, wv) in enumerate(res.waves):
            path = args.dump_wave if len(res.waves) == 1 else \
                f"{args.dump_wave}.{k}"
            write_wave_dump(wv, path, vertex_names=list(comp))
    return 0


def cmd_verify(args):
    graph = cutset = None
    if args.graph is not None or args.cuts is not None:
        if args.suite != "bounded":
            raise QcgError("--graph/--cuts are only meaningful with --suite bounded")
        if args.graph is None or args.cuts is None:
            raise QcgError("--graph and --cuts must be given together")
        graph = read_graph(args.graph)
        cutset, _ = read_cutset(args.cuts)
    reports, files = run_suite(args.suite, args.out, samples=args.samples,
                               seed=args.seed, jobs=args.jobs,
                               figures=not args.no_figures,
                               graph=graph, cutset=cutset, delta=args.delta)
    all_ok = all(r.passed for r in reports)
    for r in reports:
        tag = "pass" if r.passed else "FAIL"
        extra = {k: v for k, v in r.summary.items() if v not in (None, 0, [])}
        print(f"[{tag}] {r.name} {r.params.get('instance', '')} {extra}")
    print(f"reports: {', '.join(files)}")
    return 0 if all_ok else 1


def cmd_bench(args):
    sizes = [int(x) for x in args.sizes.split(",") if x]
    rows, files = run_bench(sizes, args.samples, args.seed, args.out,
                            jobs=args.jobs, figures=not args.no_figures)
    for r in rows:
        print(f"n={r['n']:>5d} beta_hat={r['beta_hat']:.3f} "
              f"beta/(1+ln n)^2={r['beta_over_1p_log2']:.3f}")
    print(f"reports: {', '.join(files)}")
    return 0


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {"generate": cmd_generate, "partition": cmd_partition,
                "verify": cmd_verify, "bench": cmd_bench}
    try:
        return handlers[args.command](args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except QcgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Matplotlib renderings written next to the delimited report files."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# strip the default Software chunk so PNG bytes depend only on the data
_PNG_META = {"Software": None}


def _save(fig, path):
    fig.savefig(path, dpi=110, metadata=_PNG_META)
    plt.close(fig)


def check_figure(report, path):
    """Dispatch on report name."""
    if report.name in ("shock", "pathqp", "wave"):
        cut_bound_figure(report, path)
    elif report.name in ("lipschitz", "bench-point"):
        lipschitz_figure(report, path)
    else:
        generic_figure(report, path)


def cut_bound_figure(report, path):
    """Empirical cut frequency vs distance, with the permitted envelope."""
    cols = {c: i for i, c in enumerate(report.columns)}
    d = [r[cols["d"]] for r in report.rows]
    p = [r[cols["p_hat"]] for r in report.rows]
    b = [r[cols["bound"]] for r in report.rows]
    ok = [r[cols["pass"]] for r in report.rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    good = [i for i, o in enumerate(ok) if o]
    bad = [i for i, o in enumerate(ok) if not o]
    ax.scatter([d[i] for i in good], [p[i] for i in good],
               s=14, color="#2b6cb0", alpha=0.6, label="per-arc frequency")
    if bad:
        ax.scatter([d[i] for i in bad], [p[i] for i in bad],
                   s=22, color="#c53030", label="violations")
    order = sorted(range(len(d)), key=lambda i: d[i])
    ax.plot([d[i] for i in order], [b[i] for i in order],
            color="#718096", lw=1.0, label="bound + 3 SE")
    ax.set_xlabel("endpoint distance d")
    ax.set_ylabel("empirical cut frequency")
    ax.set_title(f"{report.name}: per-arc cut frequency vs bound "
                 f"({'pass' if report.passed else 'FAIL'})")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def lipschitz_figure(report, path):
    cols = {c: i for i, c in enumerate(report.columns)}
    rows = [r for r in report.rows if r[cols["included"]]]
    if not rows:
        generic_figure(report, path)
        return
    d = [r[cols["d"]] for r in rows]
    p = [r[cols["p_hat"]] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.scatter(d, p, s=12, color="#2b6cb0", alpha=0.5)
    beta = report.summary.get("beta_hat", 0.0)
    delta = report.params.get("delta", 1.0)
    if beta and delta:
        xs = sorted(set(d))
        ax.plot(xs, [min(1.0, beta * x / delta) for x in xs],
                color="#c53030", lw=1.0,
                label=f"beta_hat * d / delta (beta_hat={beta:.2f})")
        ax.legend(loc="best", fontsize=8)
    ax.set_xlabel("pair distance d")
    ax.set_ylabel("empirical Pr[pair not related]")
    ax.set_title("non-containment frequency vs distance")
    fig.tight_layout()
    _save(fig, path)


def bench_figure(rows, path):
    """beta_hat growth against the square-log reference."""
    ns = [r["n"] for r in rows]
    betas = [r["beta_hat"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.plot(ns, betas, "o-", color="#2b6cb0", label="beta_hat(n)")
    if betas:
        c = max(b / (1.0 + math.log(n)) ** 2 for n, b in zip(ns, betas))
        ref_n = sorted(ns)
        ax.plot(ref_n, [c * (1.0 + math.log(n)) ** 2 for n in ref_n],
                "--", color="#718096", label="C (1+ln n)^2")
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("beta_hat")
    ax.set_title("Lipschitz constant growth")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def generic_figure(report, path):
    fig, ax = plt.subplots(figsize=(5.0, 3.0))
    ax.axis("off")
    lines = [f"{report.name}: {'pass' if report.passed else 'FAIL'}"]
    for k, v in sorted(report.summary.items()):
        lines.append(f"{k} = {v}")
    ax.text(0.02, 0.95, "\n".join(lines), va="top", family="monospace",
            fontsize=9)
    fig.tight_layout()
    _save(fig, path)

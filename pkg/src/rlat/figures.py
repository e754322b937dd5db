"""Matplotlib renderings: order diagrams and census summary charts.

Everything is rendered to files through the Agg backend so the CLI works
headless; layouts are deterministic.
"""

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .algebra import Algebra
from .bitsets import is_subset
from .spectrum import spec


def _ranks(nodes, leq) -> dict:
    """Longest-path layer of each node above the minimal ones."""
    rank = {}
    pending = list(nodes)
    while pending:
        progressed = False
        for v in list(pending):
            below = [u for u in nodes if u != v and leq(u, v)]
            if all(u in rank for u in below):
                rank[v] = max((rank[u] + 1 for u in below), default=0)
                pending.remove(v)
                progressed = True
        if not progressed:  # pragma: no cover - input is a partial order
            raise ValueError("not a partial order")
    return rank


def _covers(nodes, leq):
    out = []
    for u in nodes:
        for v in nodes:
            if u == v or not leq(u, v):
                continue
            if not any(w not in (u, v) and leq(u, w) and leq(w, v) for w in nodes):
                out.append((u, v))
    return out


def _draw_poset(ax, nodes, leq, labels):
    rank = _ranks(nodes, leq)
    layers: dict[int, list] = {}
    for v in nodes:
        layers.setdefault(rank[v], []).append(v)
    pos = {}
    for r, layer in layers.items():
        for i, v in enumerate(layer):
            pos[v] = ((i + 1) / (len(layer) + 1), r)
    for u, v in _covers(nodes, leq):
        ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]],
                color="0.55", lw=1.2, zorder=1)
    xs = [pos[v][0] for v in nodes]
    ys = [pos[v][1] for v in nodes]
    ax.scatter(xs, ys, s=700, facecolor="white", edgecolor="0.2", zorder=2)
    for v in nodes:
        ax.text(pos[v][0], pos[v][1], labels[v], ha="center", va="center",
                fontsize=9, zorder=3)
    ax.set_xlim(0, 1)
    ax.set_ylim(-0.5, max(ys) + 0.5 if ys else 0.5)
    ax.axis("off")


def hasse_figure(alg: Algebra, path: str | Path) -> Path:
    """Render the carrier order (covering edges only) to an image file."""
    fig, ax = plt.subplots(figsize=(4, 4))
    nodes = list(range(alg.size))
    _draw_poset(ax, nodes, alg.leq, {i: alg.names[i] for i in nodes})
    ax.set_title(f"carrier order (n={alg.size})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def spec_figure(alg: Algebra, path: str | Path) -> Path:
    """Render the prime spectrum under inclusion to an image file."""
    primes = spec(alg).members
    fig, ax = plt.subplots(figsize=(5, 4))
    labels = {p: "{" + ",".join(alg.set_names(p)) + "}" for p in primes}
    _draw_poset(ax, list(primes), lambda p, q: is_subset(p, q), labels)
    ax.set_title(f"prime spectrum ({len(primes)} points)", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def census_figures(records, outdir: str | Path) -> list[Path]:
    """Summary charts for a census sweep, written next to the record stream."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    sizes = sorted({r.size for r in records})
    out = []

    per_size = Counter(r.size for r in records)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar([str(s) for s in sizes], [per_size[s] for s in sizes], color="#4878a8")
    for i, s in enumerate(sizes):
        ax.text(i, per_size[s], str(per_size[s]), ha="center", va="bottom", fontsize=8)
    ax.set_xlabel("carrier size")
    ax.set_ylabel("algebras (up to isomorphism)")
    ax.set_title("census: algebras per size")
    fig.tight_layout()
    p = outdir / "census_counts.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    out.append(p)

    fig, ax = plt.subplots(figsize=(5.5, 3.2))
    width = 0.35
    xs = range(len(sizes))
    mtl = [sum(1 for r in records if r.size == s and r.mtl) for s in sizes]
    pm = [sum(1 for r in records if r.size == s and r.pm) for s in sizes]
    ax.bar([x - width / 2 for x in xs], mtl, width, label="prelinear", color="#4878a8")
    ax.bar([x + width / 2 for x in xs], pm, width, label="unique maximal", color="#d1605e")
    ax.set_xticks(list(xs), [str(s) for s in sizes])
    ax.set_xlabel("carrier size")
    ax.set_ylabel("algebras with the property")
    ax.set_title("census: property counts per size")
    ax.legend(fontsize=8)
    fig.tight_layout()
    p = outdir / "census_flags.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    out.append(p)

    fig, ax = plt.subplots(figsize=(5, 3.2))
    for s in sizes:
        xs = [r.filters for r in records if r.size == s]
        ys = [r.primes for r in records if r.size == s]
        ax.scatter(xs, ys, s=28, alpha=0.7, label=f"n={s}")
    ax.set_xlabel("filters")
    ax.set_ylabel("prime filters")
    ax.set_title("census: filter vs prime counts")
    ax.legend(fontsize=8)
    fig.tight_layout()
    p = outdir / "census_structure.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    out.append(p)
    return out

"""SVG drawings of Hubbard trees and the matching coordinate tables."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Sequence

import matplotlib
from matplotlib.figure import Figure

from .trees import HubbardTree, count_classes, embed_tree

matplotlib.rcParams["svg.hashsalt"] = "harmonic-valence"

REAL_COLOR = "#b2182b"
UPPER_COLOR = "#2166ac"


def tree_coordinates(tree: HubbardTree) -> list[dict]:
    """One row per vertex of the embedding: key, position and conjugate."""
    pos = dict(embed_tree(tree))
    rows = []
    for v in tree.vertices:
        z = pos[v.key]
        rows.append({"degree": tree.degree, "tree": tree.label, "vertex": v.key,
                     "conjugate": v.conj, "real": int(v.real), "x": z.real, "y": z.imag})
    return rows


def draw_tree(ax, tree: HubbardTree, title: str | None = None):
    pos = dict(embed_tree(tree))
    xs = [z.real for z in pos.values()]
    span = max(1.0, max(abs(x) for x in xs), max(abs(z.imag) for z in pos.values()))
    ax.axhline(0.0, color="0.5", lw=0.8, ls="--", zorder=0)
    for a, b in tree.edges:
        za, zb = pos[a], pos[b]
        ax.plot([za.real, zb.real], [za.imag, zb.imag], color="k", lw=1.4, zorder=1)
    for v in tree.vertices:
        z = pos[v.key]
        ax.plot(z.real, z.imag, "o", ms=5, zorder=2,
                color=REAL_COLOR if v.real else UPPER_COLOR)
    pad = 0.25 * span
    ax.set_xlim(-span - pad, span + pad)
    ax.set_ylim(-span - pad, span + pad)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    for s in ax.spines.values():
        s.set_visible(False)
    if title:
        ax.set_title(title, fontsize=7)


def tree_figure(trees: Sequence[HubbardTree], title: str | None = None, ncols: int = 6) -> Figure:
    """One panel per tree; each panel's SVG group gets id ``hubbard-tree-<i>``."""
    ncols = max(1, min(ncols, len(trees)))
    nrows = max(1, math.ceil(len(trees) / ncols))
    fig = Figure(figsize=(1.6 * ncols, 1.7 * nrows + (0.3 if title else 0)))
    for i, t in enumerate(trees):
        ax = fig.add_subplot(nrows, ncols, i + 1)
        ax.set_gid(f"hubbard-tree-{i}")
        draw_tree(ax, t, t.label)
    if title:
        fig.suptitle(title, fontsize=9)
    fig.tight_layout()
    return fig


def save_svg(fig: Figure, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    return path


def write_csv(rows: list[dict], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        if rows:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
    return path


def degree_figure(n: int, out_dir: Path) -> tuple[Path, Path, int]:
    """Draw one representative per conjugacy class of degree ``n``.

    Writes ``trees-n<n>.svg`` and ``trees-n<n>.csv`` side by side and returns
    both paths with the number of trees drawn.
    """
    reps = count_classes(n).trees
    out_dir = Path(out_dir)
    svg = save_svg(tree_figure(reps, f"degree {n}: {len(reps)} trees"), out_dir / f"trees-n{n}.svg")
    rows = [r for t in reps for r in tree_coordinates(t)]
    return svg, write_csv(rows, out_dir / f"trees-n{n}.csv"), len(reps)

"""Heatmap figures for transition matrices.

Each cell shows the q-degree of the entry (the largest exponent), blank for
zero entries; cells whose polynomial has more than one term get a ring so
that the few non-monomial entries stand out.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .combinatorics import format_multipartition_paper  # noqa: E402


def degree_grid(matrix):
    rows, cols = matrix.rows, matrix.cols
    grid = np.full((len(rows), len(cols)), np.nan)
    multi = []
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            v = matrix[(r, c)]
            if v:
                grid[i, j] = v.high
                if len(list(v.terms())) > 1:
                    multi.append((i, j))
    return grid, multi


def plot_matrix(matrix, path, title="", label=format_multipartition_paper, dpi=150):
    """Write a heatmap of ``matrix`` to ``path``; returns the path."""
    grid, multi = degree_grid(matrix)
    n = max(len(matrix.rows), 1)
    size = min(4 + 0.35 * n, 16)
    fig, ax = plt.subplots(figsize=(size, size * 0.9))
    finite = grid[~np.isnan(grid)]
    vmax = max(1.0, float(finite.max())) if finite.size else 1.0
    vmin = min(0.0, float(finite.min())) if finite.size else 0.0
    im = ax.imshow(np.ma.masked_invalid(grid), cmap="viridis", vmin=vmin, vmax=vmax)
    for i, j in multi:
        ax.scatter([j], [i], s=60, facecolors="none", edgecolors="white", linewidths=1.2)
    ax.set_xticks(range(len(matrix.cols)))
    ax.set_yticks(range(len(matrix.rows)))
    ax.set_xticklabels([label(c) for c in matrix.cols], rotation=90, fontsize=7)
    ax.set_yticklabels([label(r) for r in matrix.rows], fontsize=7)
    cb = fig.colorbar(im, ax=ax, shrink=0.8)
    cb.set_label("q-degree of entry")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path

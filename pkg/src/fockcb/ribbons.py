"""Horizontal ribbon strips and the level-one Heisenberg coefficients.

Cells are ``(row, column)`` pairs, 1-based, rows growing downwards. A ribbon
of length N is a chain of N cells in which each step goes one cell up or one
cell to the right, read from its origin: the bottom-left cell. A skew shape
``mu/la`` is a horizontal N-ribbon strip of weight k when it splits into k such
ribbons whose origins all sit at the bottom of their column of the skew shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class RibbonTiling:
    inner: tuple
    outer: tuple
    length: int
    ribbons: tuple  # each ribbon is a tuple of cells, origin first

    @property
    def weight(self) -> int:
        return len(self.ribbons)

    @property
    def spin(self) -> int:
        return sum(len({r for r, _ in rib}) - 1 for rib in self.ribbons)


def skew_cells(la, mu) -> set:
    cells = set()
    for i, row in enumerate(mu, start=1):
        start = la[i - 1] if i <= len(la) else 0
        for j in range(start + 1, row + 1):
            cells.add((i, j))
    return cells


def contains(mu, la) -> bool:
    if len(la) > len(mu):
        return False
    return all(mu[i] >= x for i, x in enumerate(la))


def bottom_cells(cells) -> set:
    """The lowest cell of each column of ``cells`` (the strip called θ↓)."""
    low = {}
    for r, c in cells:
        if c not in low or r > low[c]:
            low[c] = r
    return {(r, c) for c, r in low.items()}


def _ribbons_from(origin, free, N):
    """All up/right chains of N cells in ``free`` starting at ``origin``."""
    out = []

    def walk(path):
        if len(path) == N:
            out.append(tuple(path))
            return
        r, c = path[-1]
        for nxt in ((r - 1, c), (r, c + 1)):
            if nxt in free and nxt not in path:
                path.append(nxt)
                walk(path)
                path.pop()

    walk([origin])
    return out


def horizontal_ribbon_strip(la, mu, N) -> Optional[RibbonTiling]:
    """Tile ``mu/la`` by N-ribbons with origins in the bottom strip.

    Returns the tiling, or None if ``mu/la`` is not a horizontal N-ribbon strip.
    The search always works on the leftmost column that still has untiled
    cells; the lowest untiled cell there has nothing untiled to its left or
    below, so it must be the origin of the ribbon that covers it.
    """
    la, mu = tuple(la), tuple(mu)
    if N < 1 or not contains(mu, la):
        return None
    cells = skew_cells(la, mu)
    if len(cells) % N:
        return None
    if not cells:
        return RibbonTiling(la, mu, N, ())
    low = bottom_cells(cells)

    def solve(free):
        if not free:
            return []
        col = min(c for _, c in free)
        row = max(r for r, c in free if c == col)
        origin = (row, col)
        if origin not in low:
            return None
        for rib in _ribbons_from(origin, free, N):
            rest = solve(free - set(rib))
            if rest is not None:
                return [rib] + rest
        return None

    found = solve(frozenset(cells))
    if found is None:
        return None
    return RibbonTiling(la, mu, N, tuple(found))


def brute_force_strip(la, mu, N):
    """Exhaustive oracle: every tiling of ``mu/la`` by N-ribbons with origins in θ↓.

    Returns the list of spins of all such tilings (empty if there are none).
    """
    la, mu = tuple(la), tuple(mu)
    if not contains(mu, la):
        return []
    cells = frozenset(skew_cells(la, mu))
    if len(cells) % N:
        return []
    low = bottom_cells(cells)
    spins = []

    def all_ribbons_covering(cell, free):
        # every ribbon (any origin) made of free cells that contains `cell`
        found = set()
        for origin in free:
            for rib in _ribbons_from(origin, free, N):
                if cell in rib:
                    found.add(rib)
        return found

    def rec(free, spin):
        if not free:
            spins.append(spin)
            return
        cell = min(free)
        for rib in all_ribbons_covering(cell, free):
            if rib[0] not in low:
                continue
            rec(free - set(rib), spin + len({r for r, _ in rib}) - 1)

    rec(cells, 0)
    return spins

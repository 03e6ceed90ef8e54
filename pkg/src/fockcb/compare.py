"""Comparing matrices up to a relabeling of rows and columns.

Two labelled matrices are "equal up to relabeling" when there are bijections
of the row labels and of the column labels carrying one onto the other entry
for entry. The search colours rows and columns by the multiset of entries
they carry, refines the colours until they stabilise, and backtracks over the
remaining ambiguous classes.
"""

from __future__ import annotations

from typing import Optional

from .laurent import format_poly
from .linalg import LaurentMatrix


def _adjacency(M: LaurentMatrix):
    rows = {r: [] for r in M.rows}
    cols = {c: [] for c in M.cols}
    for (r, c), v in M.entries.items():
        text = format_poly(v)
        rows[r].append((c, text))
        cols[c].append((r, text))
    return rows, cols


def _refine(adj, colours):
    """One round for both matrices: new colour = (old colour, multiset of (entry, neighbour colour))."""
    out = []
    for (rows, cols), (rc, cc) in zip(adj, colours):
        new_r = {r: (rc[r], tuple(sorted((t, cc[c]) for c, t in nb))) for r, nb in rows.items()}
        new_c = {c: (cc[c], tuple(sorted((t, rc[r]) for r, t in nb))) for c, nb in cols.items()}
        out.append((new_r, new_c))
    # rename signatures to small integers shared by both matrices
    names_r = {sig: k for k, sig in enumerate(sorted({s for nr, _ in out for s in nr.values()}, key=repr))}
    names_c = {sig: k for k, sig in enumerate(sorted({s for _, nc in out for s in nc.values()}, key=repr))}
    return [({r: names_r[s] for r, s in nr.items()}, {c: names_c[s] for c, s in nc.items()}) for nr, nc in out]


def _stable(adj, colours):
    while True:
        new = _refine(adj, colours)
        if all(len(set(a.values())) == len(set(b.values())) for (a, _), (b, _) in zip(new, colours)) and all(
            len(set(a.values())) == len(set(b.values())) for (_, a), (_, b) in zip(new, colours)
        ):
            return new
        colours = new


def _classes(colour_map):
    out: dict = {}
    for x, k in colour_map.items():
        out.setdefault(k, []).append(x)
    return out


def _compatible(colours) -> bool:
    (r1, c1), (r2, c2) = colours
    for a, b in ((r1, r2), (c1, c2)):
        ca, cb = _classes(a), _classes(b)
        if {k: len(v) for k, v in ca.items()} != {k: len(v) for k, v in cb.items()}:
            return False
    return True


def find_relabeling(M1: LaurentMatrix, M2: LaurentMatrix) -> Optional[tuple]:
    """``(row_map, col_map)`` carrying ``M1`` onto ``M2``, or ``None``.

    ``M2[row_map[r], col_map[c]] == M1[r, c]`` for every pair of labels.
    """
    if M1.shape != M2.shape or M1.nonzero_count() != M2.nonzero_count():
        return None
    adj = [_adjacency(M1), _adjacency(M2)]
    start = [({r: 0 for r in M.rows}, {c: 0 for c in M.cols}) for M in (M1, M2)]
    return _search(M1, M2, adj, start, 0)


def _search(M1, M2, adj, colours, depth):
    colours = _stable(adj, colours)
    if not _compatible(colours):
        return None
    (r1, c1), (r2, c2) = colours
    for side in (0, 1):
        a, b = (r1, r2) if side == 0 else (c1, c2)
        ca, cb = _classes(a), _classes(b)
        ambiguous = sorted((k for k, v in ca.items() if len(v) > 1), key=lambda k: (len(ca[k]), k))
        if not ambiguous:
            continue
        k = ambiguous[0]
        x = ca[k][0]
        fresh = max(max(a.values()), max(b.values())) + 1
        for y in cb[k]:
            na, nb = dict(a), dict(b)
            na[x] = fresh
            nb[y] = fresh
            if side == 0:
                trial = [(na, c1), (nb, c2)]
            else:
                trial = [(r1, na), (r2, nb)]
            found = _search(M1, M2, adj, trial, depth + 1)
            if found is not None:
                return found
        return None
    row_map = {x: _classes(r2)[k][0] for x, k in r1.items()}
    col_map = {x: _classes(c2)[k][0] for x, k in c1.items()}
    for (r, c), v in M1.entries.items():
        if M2[(row_map[r], col_map[c])] != v:
            return None
    return row_map, col_map


def equal_up_to_relabeling(M1: LaurentMatrix, M2: LaurentMatrix) -> bool:
    return find_relabeling(M1, M2) is not None

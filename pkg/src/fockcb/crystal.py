"""Crystal operators on multipartitions and Jacon's monomial words.

Good nodes follow the signature rule. Same-residue addable (A) and removable
(R) nodes are listed in increasing order (the order in which ``f_i`` counts
the nodes above the added one). Adjacent pairs "R then A" cancel repeatedly.
The good addable node is the largest surviving A and the good removable node
is the smallest surviving R.
"""

from __future__ import annotations

from functools import lru_cache

from . import conventions
from .actions import Word, node_order_key
from .combinatorics import (
    add_nodes,
    addable_nodes,
    border,
    empty_multipartition,
    remove_nodes,
    removable_nodes,
    residue,
    residue_profile,
)
from .errors import NotInCrystal


def _effective_key(conv, side):
    tb = conv.tiebreak(side)
    sign = 1 if conv.direction == "above" else -1

    def key(node, charge):
        c, t = node_order_key(node, charge, tb)
        return (sign * c, sign * t)

    return key


def signature(mp, charge, modulus, i, conv=None, side="l"):
    """Surviving ``(A-list, R-list)`` after the cancellation, in increasing order."""
    conv = conv or conventions.current()
    key = _effective_key(conv, side)
    entries = [(key(g, charge), "A", g) for g in addable_nodes(mp, charge, modulus, i)]
    entries += [(key(g, charge), "R", g) for g in removable_nodes(mp, charge, modulus, i)]
    entries.sort()
    stack = []
    for _, kind, g in entries:
        if kind == "A" and stack and stack[-1][0] == "R":
            stack.pop()
        else:
            stack.append((kind, g))
    A = [g for kind, g in stack if kind == "A"]
    R = [g for kind, g in stack if kind == "R"]
    return A, R


def good_node(mp, charge, modulus, i, direction="add", conv=None, side="l"):
    A, R = signature(mp, charge, modulus, i, conv, side)
    if direction == "add":
        return A[-1] if A else None
    return R[0] if R else None


def crystal_f(mp, charge, modulus, i, conv=None, side="l"):
    g = good_node(mp, charge, modulus, i, "add", conv, side)
    return None if g is None else add_nodes(mp, [g])


def crystal_e(mp, charge, modulus, i, conv=None, side="l"):
    g = good_node(mp, charge, modulus, i, "remove", conv, side)
    return None if g is None else remove_nodes(mp, [g])


def in_crystal(mp, charge, modulus, conv=None, side="l") -> bool:
    """Membership by stripping good removable nodes back to the empty multipartition."""
    cur = mp
    while any(cur):
        for i in range(modulus):
            nxt = crystal_e(cur, charge, modulus, i, conv, side)
            if nxt is not None:
                cur = nxt
                break
        else:
            return False
    return True


def enumerate_crystal(v, modulus: int, profile, conv=None, side="l") -> list:
    """Crystal vertices reachable from the empty multipartition with the given residue profile."""
    conv = conv or conventions.current()
    return list(_enumerate(tuple(v), modulus, tuple(profile), conv, side))


@lru_cache(maxsize=2048)
def _enumerate(v, modulus, profile, conv, side):
    if any(x < 0 for x in profile) or len(profile) != modulus:
        return ()
    start = empty_multipartition(len(v))
    total = sum(profile)
    layer = {start}
    for _ in range(total):
        nxt = set()
        for mp in layer:
            have = residue_profile(mp, v, modulus)
            for i in range(modulus):
                if have[i] >= profile[i]:
                    continue
                new = crystal_f(mp, v, modulus, i, conv, side)
                if new is not None:
                    nxt.add(new)
        layer = nxt
    return tuple(sorted(layer, reverse=True))


# -- Jacon words ---------------------------------------------------------------------

def jacon_sets(mp, v, modulus: int) -> dict:
    """``{k: X_k}`` for the current multipartition."""
    edge = border(mp)  # last node of every row
    out = {}
    for k in range(modulus):
        prev = (k - 1) % modulus
        cols = [g[1] for g in edge if residue(g, v, modulus) == prev]
        bound = max(cols) if cols else 0
        out[k] = sorted(g for g in removable_nodes(mp, v, modulus, k) if g[1] > bound)
    return out


def jacon_word(mp, v, modulus: int, side: str = "l") -> Word:
    """Jacon's element for a crystal vertex, as a word of divided powers."""
    factors = []
    cur = tuple(tuple(c) for c in mp)
    while any(cur):
        jmax = max(c[0] for c in cur if c)
        sets = jacon_sets(cur, v, modulus)
        for k in range(modulus):
            if any(g[1] == jmax for g in sets[k]):
                factors.append((k, len(sets[k])))
                cur = remove_nodes(cur, sets[k])
                break
        else:
            raise NotInCrystal(f"{mp} is not a crystal vertex for {tuple(v)}")
    return Word(side, "f", tuple(factors))

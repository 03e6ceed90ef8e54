"""Partitions, multipartitions and nodes.

Partitions are plain tuples of positive integers in weakly decreasing order
(the empty partition is ``()``); multipartitions are tuples of partitions.
Nodes are ``(row, column, component)`` triples, all 1-based, which is how the
Young diagram of a multipartition is read throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Partition = tuple
MultiPartition = tuple
Node = tuple


# -- construction and validation -----------------------------------------------

def make_partition(parts: Iterable[int]) -> Partition:
    """Return the canonical tuple form, dropping trailing zeros.

    Raises ValueError if the parts are negative or not weakly decreasing.
    """
    p = [int(x) for x in parts]
    while p and p[-1] == 0:
        p.pop()
    for i, x in enumerate(p):
        if x <= 0:
            raise ValueError(f"invalid partition {parts!r}")
        if i and x > p[i - 1]:
            raise ValueError(f"parts of {parts!r} are not weakly decreasing")
    return tuple(p)


def make_multipartition(components: Iterable[Iterable[int]]) -> MultiPartition:
    return tuple(make_partition(c) for c in components)


def empty_multipartition(L: int) -> MultiPartition:
    return ((),) * L


def size(mp: MultiPartition) -> int:
    return sum(sum(c) for c in mp)


def conjugate(la: Partition) -> Partition:
    if not la:
        return ()
    return tuple(sum(1 for x in la if x > j) for j in range(la[0]))


def nodes(mp: MultiPartition) -> Iterator[Node]:
    for b, comp in enumerate(mp, start=1):
        for i, row in enumerate(comp, start=1):
            for j in range(1, row + 1):
                yield (i, j, b)


# -- residues -------------------------------------------------------------------

def content(node: Node, charge: Sequence[int]) -> int:
    """Shifted content ``j - i + s_b``."""
    i, j, b = node
    return j - i + charge[b - 1]


def residue(node: Node, charge: Sequence[int], modulus: int) -> int:
    """Residue ``(j - i + s_b) mod N``."""
    return content(node, charge) % modulus


def residue_profile(mp: MultiPartition, charge: Sequence[int], modulus: int) -> tuple:
    """Number of nodes of each residue, as a tuple indexed by residue."""
    counts = [0] * modulus
    for b, comp in enumerate(mp):
        s = charge[b]
        for i, row in enumerate(comp, start=1):
            # contents s + j - i for j = 1..row
            start = s + 1 - i
            if row >= modulus:
                full, rest = divmod(row, modulus)
                for r in range(modulus):
                    counts[r] += full
                for t in range(rest):
                    counts[(start + t) % modulus] += 1
            else:
                for t in range(row):
                    counts[(start + t) % modulus] += 1
    return tuple(counts)


def addable_nodes_all(mp: MultiPartition) -> list:
    out = []
    for b, comp in enumerate(mp, start=1):
        prev = None
        for i, row in enumerate(comp, start=1):
            if prev is None or prev > row:
                out.append((i, row + 1, b))
            prev = row
        out.append((len(comp) + 1, 1, b))
    return out


def removable_nodes_all(mp: MultiPartition) -> list:
    out = []
    for b, comp in enumerate(mp, start=1):
        L = len(comp)
        for i, row in enumerate(comp, start=1):
            if i == L or comp[i] < row:
                out.append((i, row, b))
    return out


def addable_nodes(mp: MultiPartition, charge: Sequence[int], modulus: int, i: int) -> list:
    """Addable nodes of residue ``i``."""
    return [g for g in addable_nodes_all(mp) if residue(g, charge, modulus) == i]


def removable_nodes(mp: MultiPartition, charge: Sequence[int], modulus: int, i: int) -> list:
    """Removable nodes of residue ``i``."""
    return [g for g in removable_nodes_all(mp) if residue(g, charge, modulus) == i]


def add_nodes(mp: MultiPartition, new_nodes: Iterable[Node]) -> MultiPartition:
    comps = [list(c) for c in mp]
    for (i, j, b) in sorted(new_nodes):
        comp = comps[b - 1]
        if i == len(comp) + 1 and j == 1:
            comp.append(1)
        elif i <= len(comp) and comp[i - 1] == j - 1:
            comp[i - 1] = j
        else:
            raise ValueError(f"node {(i, j, b)} is not addable")
    out = tuple(tuple(c) for c in comps)
    for c in out:
        for k in range(1, len(c)):
            if c[k] > c[k - 1]:
                raise ValueError("adding nodes broke the partition shape")
    return out


def remove_nodes(mp: MultiPartition, old_nodes: Iterable[Node]) -> MultiPartition:
    comps = [list(c) for c in mp]
    for (i, j, b) in sorted(old_nodes, key=lambda g: (-g[0], g[2])):
        comp = comps[b - 1]
        if i > len(comp) or comp[i - 1] != j:
            raise ValueError(f"node {(i, j, b)} is not removable")
        comp[i - 1] -= 1
        if comp[i - 1] == 0:
            if i != len(comp):
                raise ValueError(f"node {(i, j, b)} is not removable")
            comp.pop()
    out = tuple(tuple(c) for c in comps)
    for c in out:
        for k in range(1, len(c)):
            if c[k] > c[k - 1]:
                raise ValueError("removing nodes broke the partition shape")
    return out


def border(mp: MultiPartition) -> list:
    """The rightmost node of every nonempty row."""
    return [(i, row, b) for b, comp in enumerate(mp, start=1) for i, row in enumerate(comp, start=1)]


# -- orders -----------------------------------------------------------------------

LESS, GREATER, EQUAL, INCOMPARABLE = "less", "greater", "equal", "incomparable"


def dominance_compare(la: Partition, mu: Partition) -> str:
    """Compare two partitions in the dominance order."""
    if sum(la) != sum(mu):
        return INCOMPARABLE
    if la == mu:
        return EQUAL
    sl = sm = 0
    le = ge = True
    for k in range(max(len(la), len(mu))):
        sl += la[k] if k < len(la) else 0
        sm += mu[k] if k < len(mu) else 0
        if sl > sm:
            le = False
        elif sl < sm:
            ge = False
    if le:
        return LESS
    if ge:
        return GREATER
    return INCOMPARABLE


def dominance_leq(la: Partition, mu: Partition) -> bool:
    return dominance_compare(la, mu) in (LESS, EQUAL)


# -- enumeration ------------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions_of(m: int, max_part: int | None = None) -> tuple:
    """All partitions of ``m`` (parts at most ``max_part``) in reverse lex order."""
    if max_part is None:
        max_part = m
    if m == 0:
        return ((),)
    out = []
    for first in range(min(m, max_part), 0, -1):
        for rest in partitions_of(m - first, first):
            out.append((first,) + rest)
    return tuple(out)


def multipartitions_of(m: int, L: int) -> Iterator[MultiPartition]:
    if L == 1:
        for p in partitions_of(m):
            yield (p,)
        return
    for k in range(m, -1, -1):
        for p in partitions_of(k):
            for rest in multipartitions_of(m - k, L - 1):
                yield (p,) + rest


def multipartitions_with_profile(profile: Sequence[int], charge: Sequence[int], modulus: int) -> list:
    """All multipartitions whose residue profile equals ``profile`` exactly.

    Built node by node in a canonical order so that every multipartition is
    reached once; branches that overshoot any residue count are pruned.
    """
    target = tuple(profile)
    if any(x < 0 for x in target):
        return []
    L = len(charge)
    total = sum(target)
    results = []

    def rec(b, prefix, remaining):
        # fill component b (0-based) row by row
        if b == L:
            if not any(remaining):
                results.append(tuple(prefix))
            return
        budget = sum(remaining)
        s = charge[b]

        def rows(i, max_row, rem, acc):
            # option: stop this component here
            rec(b + 1, prefix + [tuple(acc)], rem)
            left = sum(rem)
            if left == 0:
                return
            start = s + 1 - i
            cur = list(rem)
            for length in range(1, min(max_row, left) + 1):
                r = (start + length - 1) % modulus
                cur[r] -= 1
                if cur[r] < 0:
                    break
                rows(i + 1, length, tuple(cur), acc + [length])

        rows(1, budget, remaining, [])

    rec(0, [], target)
    # deduplicate (a component may stop at different points yielding the same tuple)
    seen = set()
    out = []
    for mp in results:
        if mp not in seen and size(mp) == total:
            seen.add(mp)
            out.append(mp)
    return out


def has_profile(profile: Sequence[int], charge: Sequence[int], modulus: int) -> bool:
    """True if some multipartition has exactly this residue profile."""
    target = tuple(profile)
    if any(x < 0 for x in target):
        return False
    if not any(target):
        return True
    return _has_profile(target, tuple(charge), modulus)


@lru_cache(maxsize=4096)
def _has_profile(target, charge, modulus):
    # search over multipartitions, stopping at the first hit
    L = len(charge)

    def rec(b, remaining):
        if not any(remaining):
            return True
        if b == L:
            return False
        s = charge[b]

        def rows(i, max_row, rem):
            if rec(b + 1, rem):
                return True
            left = sum(rem)
            if left == 0:
                return False
            start = s + 1 - i
            cur = list(rem)
            for length in range(1, min(max_row, left) + 1):
                r = (start + length - 1) % modulus
                cur[r] -= 1
                if cur[r] < 0:
                    break
                if rows(i + 1, length, tuple(cur)):
                    return True
            return False

        return rows(1, sum(remaining), remaining)

    return rec(0, target)


def partitions_containing(nu: Partition, extra: int) -> Iterator[Partition]:
    """All partitions ``la`` with ``nu`` inside ``la`` and ``|la| = |nu| + extra``."""
    nu = tuple(nu)

    def rec(i, prev, left, acc):
        if i < len(nu):
            base = nu[i]
            for x in range(min(prev, base + left), base - 1, -1):
                yield from rec(i + 1, x, left - (x - base), acc + [x])
            return
        if left == 0:
            yield tuple(acc)
            return
        for x in range(min(prev, left), 0, -1):
            yield from rec(i + 1, x, left - x, acc + [x])

    yield from rec(0, nu[0] + extra if nu else extra, extra, [])


def partitions_contained(nu: Partition, removed: int) -> Iterator[Partition]:
    """All partitions ``mu`` inside ``nu`` with ``|mu| = |nu| - removed``."""
    nu = tuple(nu)
    target = sum(nu) - removed
    if target < 0:
        return

    def rec(i, prev, left, acc):
        if i == len(nu):
            if left == 0:
                yield tuple(x for x in acc if x)
            return
        # remaining rows can hold at most sum(min(prev, nu_k))
        cap = sum(min(prev, x) for x in nu[i:])
        if left > cap:
            return
        for x in range(min(prev, nu[i], left), -1, -1):
            yield from rec(i + 1, x, left - x, acc + [x])

    yield from rec(0, 10**9, target, [])


# -- symmetric functions ------------------------------------------------------------

def _h_product(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


def _h_mult(f: dict, g: dict) -> dict:
    out: dict = {}
    for la, x in f.items():
        for mu, y in g.items():
            key = _h_product(la, mu)
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _power_sum_single(k: int) -> tuple:
    # Newton: p_k = k h_k - sum_{i=1}^{k-1} p_i h_{k-i}
    expansion: dict = {(k,): Fraction(k)}
    for i in range(1, k):
        pi = dict(_power_sum_single(i))
        prod = _h_mult(pi, {(k - i,): Fraction(1)})
        for key, val in prod.items():
            expansion[key] = expansion.get(key, 0) - val
    return tuple(sorted((k_, v) for k_, v in expansion.items() if v))


def alpha_coefficients(mu: Partition) -> dict:
    """Expansion of the power sum ``p_mu`` in the complete homogeneous basis.

    Returns ``{la: coefficient}`` with integer coefficients.
    """
    result: dict = {(): Fraction(1)}
    for part in mu:
        result = _h_mult(result, dict(_power_sum_single(part)))
    out = {}
    for k, v in result.items():
        if v.denominator != 1:
            raise AssertionError(f"non-integral h-coefficient {v} in p_{mu}")
        out[k] = int(v)
    return out


def format_partition(la: Partition) -> str:
    return "[" + ",".join(str(x) for x in la) + "]"


def format_multipartition(mp: MultiPartition) -> str:
    return "[" + ",".join(format_partition(c) for c in mp) + "]"


def format_multipartition_paper(mp: MultiPartition) -> str:
    """Human form such as ``((3,1),∅)``."""
    def one(c):
        return "∅" if not c else "(" + ",".join(str(x) for x in c) + ")"

    return "(" + ",".join(one(c) for c in mp) + ")"

"""The three indexations of the standard basis of the wedge space.

A standard basis vector is a *charged partition* ``(la, s)``. Its beta numbers
``la_i + s - i + 1`` form a set of integers which contains every integer below
some bound. Writing a beta number as ``k = a + n(b-1) + n*l*m`` with
``1 <= a <= n`` and ``1 <= b <= l`` distributes it to two abaci:

* on the l-side, component ``b`` receives ``a + n*m``;
* on the n-side, component ``a`` receives ``b + l*m``.

Reading a partition and a charge off each component gives the l-multipartition
and the n-multipartition indexations.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence


class ChargedPartition(NamedTuple):
    partition: tuple
    charge: int


def beta_numbers(la: Sequence[int], s: int, count: int) -> list:
    """The first ``count`` beta numbers of ``(la, s)``."""
    return [(la[i] if i < len(la) else 0) + s - i for i in range(count)]


def _from_beta_set(betas: list, floor_value: int) -> tuple:
    """Charge and partition of a beta set containing every integer <= floor_value.

    ``betas`` lists the elements strictly greater than ``floor_value``.
    """
    charge = floor_value + len(betas)
    betas = sorted(betas, reverse=True)
    parts = tuple(x - charge + i for i, x in enumerate(betas) if x - charge + i > 0)
    # strictly decreasing betas give weakly decreasing parts
    return parts, charge


def _split(cp, n, l, side):
    la, s = cp
    nl = n * l
    m0 = (s - len(la)) // nl
    floor_global = nl * m0
    L = l if side == "l" else n
    comps: list = [[] for _ in range(L)]
    for idx in range(s - floor_global):
        k = (la[idx] if idx < len(la) else 0) + s - idx
        # k - 1 = (a - 1) + n (b - 1) + n l m
        m, rest = divmod(k - 1, nl)
        b_minus, a_minus = divmod(rest, n)
        if side == "l":
            comps[b_minus].append(a_minus + 1 + n * m)
        else:
            comps[a_minus].append(b_minus + 1 + l * m)
    floor_local = (n if side == "l" else l) * m0
    parts, charges = [], []
    for betas in comps:
        p, c = _from_beta_set(betas, floor_local)
        parts.append(p)
        charges.append(c)
    return tuple(parts), tuple(charges)


def _join(mp, charges, n, l, side):
    L = len(mp)
    M = n if side == "l" else l
    m0 = min((charges[b] - len(mp[b])) // M for b in range(L))
    floor_local = M * m0
    ks = []
    for b in range(L):
        la, s_b = mp[b], charges[b]
        for idx in range(s_b - floor_local):
            c = (la[idx] if idx < len(la) else 0) + s_b - idx
            # c = a + M m with a in [1..M]
            m, r = divmod(c - 1, M)
            if side == "l":
                a, bb = r + 1, b + 1
            else:
                a, bb = b + 1, r + 1
            ks.append(a + n * (bb - 1) + n * l * m)
    floor_global = n * l * m0
    parts, s = _from_beta_set(ks, floor_global)
    return ChargedPartition(parts, s)


@lru_cache(maxsize=200_000)
def charged_to_l(cp, n: int, l: int):
    """``(la, s)`` to ``(l-multipartition, l-multicharge)``."""
    return _split(tuple(cp), n, l, "l")


@lru_cache(maxsize=200_000)
def charged_to_n(cp, n: int, l: int):
    """``(la, s)`` to ``(n-multipartition, n-multicharge)`` (the dotted indexation)."""
    return _split(tuple(cp), n, l, "n")


@lru_cache(maxsize=200_000)
def l_to_charged(mp, charges, n: int, l: int) -> ChargedPartition:
    mp = tuple(tuple(c) for c in mp)
    charges = tuple(charges)
    if len(mp) != l or len(charges) != l:
        raise ValueError("l-side key must have l components")
    return _join(mp, charges, n, l, "l")


@lru_cache(maxsize=200_000)
def n_to_charged(mp, charges, n: int, l: int) -> ChargedPartition:
    mp = tuple(tuple(c) for c in mp)
    charges = tuple(charges)
    if len(mp) != n or len(charges) != n:
        raise ValueError("n-side key must have n components")
    return _join(mp, charges, n, l, "n")


def l_to_n(mp, charges, n: int, l: int):
    return charged_to_n(l_to_charged(mp, charges, n, l), n, l)


def n_to_l(mp, charges, n: int, l: int):
    return charged_to_l(n_to_charged(mp, charges, n, l), n, l)


def clear_caches() -> None:
    for f in (charged_to_l, charged_to_n, l_to_charged, n_to_charged):
        f.cache_clear()

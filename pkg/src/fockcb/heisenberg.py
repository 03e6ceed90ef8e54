"""Heisenberg operators: level one through ribbon strips, then higher level.

At level one, ``V_k |ν> = Σ (−q)^{−spin} |λ>`` over horizontal n-ribbon strips
``λ/ν`` of weight k, and ``U_k`` is the same sum taken below ``ν``. The modes
are ``B_{−m} = Σ_λ α_{λ,(m)} V_λ`` and ``B_m = Σ_λ α_{λ,(m)} U_λ`` where
``p_m = Σ α_{λ,(m)} h_λ``.

At level l the componentwise formula ``B_m = Σ_b q^{(b−1)|m|} B_m[b]`` holds on
keys whose charge gaps are large enough (the dominant case); other keys are
reached through :func:`vacuum_B_product`.
"""

from __future__ import annotations

from functools import lru_cache

from .actions import vacuum_monomial
from .combinatorics import alpha_coefficients, make_partition, partitions_contained, partitions_containing
from .errors import InternalInconsistency, NotDominant
from .fock import FockVector
from .indexation import charged_to_l, l_to_charged
from .laurent import ONE, ZERO, LaurentPoly
from .ribbons import horizontal_ribbon_strip


def _spin_coefficient(spin: int) -> LaurentPoly:
    # (−q)^(−spin)
    return LaurentPoly.monomial(-spin, -1 if spin % 2 else 1)


@lru_cache(maxsize=200_000)
def V_partition(nu: tuple, k: int, n: int) -> tuple:
    """``V_k`` on one partition: ``((λ, coeff), ...)``."""
    if k == 0:
        return ((nu, ONE),)
    out = []
    for la in partitions_containing(nu, k * n):
        tiling = horizontal_ribbon_strip(nu, la, n)
        if tiling is not None and tiling.weight == k:
            out.append((la, _spin_coefficient(tiling.spin)))
    return tuple(out)


@lru_cache(maxsize=200_000)
def U_partition(nu: tuple, k: int, n: int) -> tuple:
    """``U_k`` on one partition: sum over strips of weight k below ``nu``."""
    if k == 0:
        return ((nu, ONE),)
    out = []
    for la in partitions_contained(nu, k * n):
        tiling = horizontal_ribbon_strip(la, nu, n)
        if tiling is not None and tiling.weight == k:
            out.append((la, _spin_coefficient(tiling.spin)))
    return tuple(out)


def _apply_level1_dict(terms: dict, op, parts, n) -> dict:
    """Apply ``op_{parts[0]} op_{parts[1]} ...`` to a {partition: coeff} dict."""
    cur = dict(terms)
    for k in reversed(parts):
        nxt: dict = {}
        for nu, c in cur.items():
            for la, d in op(nu, k, n):
                val = nxt.get(la, ZERO) + c * d
                if val:
                    nxt[la] = val
                else:
                    nxt.pop(la, None)
        cur = nxt
    return cur


@lru_cache(maxsize=100_000)
def B_partition(nu: tuple, m: int, n: int) -> tuple:
    """Level-one ``B_m`` on one partition (``m`` nonzero)."""
    if m == 0:
        raise ValueError("B_0 is not used")
    op = V_partition if m < 0 else U_partition
    total: dict = {}
    for la, a in alpha_coefficients((abs(m),)).items():
        part = _apply_level1_dict({nu: ONE}, op, la, n)
        for key, c in part.items():
            val = total.get(key, ZERO) + c * a
            if val:
                total[key] = val
            else:
                total.pop(key, None)
    return tuple(sorted(total.items(), reverse=True))


def apply_V(k: int, vec: FockVector) -> FockVector:
    return _level1_map(vec, lambda nu: V_partition(nu, k, vec.n))


def apply_U(k: int, vec: FockVector) -> FockVector:
    return _level1_map(vec, lambda nu: U_partition(nu, k, vec.n))


def apply_B_level1(m: int, vec: FockVector) -> FockVector:
    if vec.l != 1:
        raise ValueError("level-one B operators need l = 1")
    return _level1_map(vec, lambda nu: B_partition(nu, m, vec.n))


def _level1_map(vec, fn):
    if vec.l != 1:
        raise ValueError("level-one operators need l = 1")
    out = FockVector(vec.n, 1, vec.s)
    for (mp, s_l), c in vec.l_items():
        for la, d in fn(mp[0]):
            out._accumulate(l_to_charged((la,), s_l, vec.n, 1), c * d)
    return out


def is_dominant(mp, s_l, M: int) -> bool:
    """``s_i − s_{i+1} ≥ M + |λ|`` for every consecutive pair."""
    boxes = sum(sum(c) for c in mp)
    return all(s_l[i] - s_l[i + 1] >= M + boxes for i in range(len(s_l) - 1))


def apply_B_dominant(m: int, vec: FockVector) -> FockVector:
    """``B_m = Σ_b q^{(b−1)|m|} B_m[b]`` on dominant keys."""
    if m == 0:
        raise ValueError("B_0 is not used")
    n, l = vec.n, vec.l
    mt = max(0, -m)
    out = FockVector(n, l, vec.s)
    for (mp, s_l), c in vec.l_items():
        if not is_dominant(mp, s_l, n * mt):
            raise NotDominant(f"key {mp} with charge {s_l} is not {n * mt}-dominant")
        for b in range(l):
            shift = LaurentPoly.monomial(b * abs(m))
            for la, d in B_partition(mp[b], m, n):
                new = mp[:b] + (la,) + mp[b + 1 :]
                out._accumulate(l_to_charged(new, s_l, n, l), c * d * shift)
    return out


def dominant_representative(s_l, n: int, M: int) -> tuple:
    """``sort_desc(s_l) + nM (l−1, l−2, …, 1, −l(l−1)/2)``."""
    l = len(s_l)
    base = sorted(s_l, reverse=True)
    shift = list(range(l - 1, 0, -1)) + [-(l * (l - 1)) // 2]
    if l == 1:
        shift = [0]
    return tuple(x + n * M * y for x, y in zip(base, shift))


def vacuum_B_product(mu, s_l, n: int) -> FockVector:
    """``B_{−μ_1} ⋯ B_{−μ_r} |∅, s_l>`` at any multicharge."""
    mu = make_partition(mu)
    s_l = tuple(s_l)
    l = len(s_l)
    if not mu:
        return FockVector.vacuum(s_l, n)
    M = sum(mu)
    t_l = dominant_representative(s_l, n, M)
    vec = FockVector.vacuum(t_l, n)
    for part in reversed(mu):
        vec = apply_B_dominant(-part, vec)
    if l == 1 or t_l == s_l:
        return vec
    down = vacuum_monomial(t_l, n)
    up = vacuum_monomial(s_l, n)
    if down.r_l != up.r_l:
        raise InternalInconsistency(f"{t_l} and {s_l} reduce to different vacua")
    vec = down.e_word.apply(vec)
    return up.f_word.apply(vec)

"""Affine weights, Weyl group actions on multicharges, admissible weights.

Weights live in ``Z Λ_0 + ... + Z Λ_{N-1} + Q δ``. The undotted lattice has
rank ``N = n`` and the dotted lattice rank ``N = l``; the ``side`` tag only
guards against mixing them up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .combinatorics import has_profile, residue_profile
from .errors import NonIntegral
from .indexation import charged_to_l, n_to_charged


@dataclass(frozen=True)
class AffineWeight:
    side: str  # "n" (undotted, rank n) or "l" (dotted, rank l)
    lam: tuple
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        object.__setattr__(self, "delta", Fraction(self.delta))

    @property
    def rank(self) -> int:
        return len(self.lam)

    def _check(self, other):
        if not isinstance(other, AffineWeight) or other.side != self.side or other.rank != self.rank:
            raise TypeError("weights from different lattices")

    def __add__(self, other):
        self._check(other)
        return AffineWeight(self.side, tuple(a + b for a, b in zip(self.lam, other.lam)), self.delta + other.delta)

    def __sub__(self, other):
        self._check(other)
        return AffineWeight(self.side, tuple(a - b for a, b in zip(self.lam, other.lam)), self.delta - other.delta)

    def __neg__(self):
        return AffineWeight(self.side, tuple(-a for a in self.lam), -self.delta)

    def scale(self, k):
        return AffineWeight(self.side, tuple(k * a for a in self.lam), k * self.delta)

    def pairing(self, i: int) -> int:
        """``(w, α_i)``: the Λ_i coefficient."""
        return self.lam[i]

    def __str__(self):
        return format_weight(self)


def fundamental(side: str, rank: int, i: int) -> AffineWeight:
    lam = [0] * rank
    lam[i % rank] = 1
    return AffineWeight(side, tuple(lam))


def null_root(side: str, rank: int) -> AffineWeight:
    return AffineWeight(side, (0,) * rank, Fraction(1))


def simple_root(side: str, rank: int, i: int) -> AffineWeight:
    """``α_i = 2Λ_i − Λ_{i−1} − Λ_{i+1}`` plus ``δ`` when ``i = 0``."""
    lam = [0] * rank
    lam[i] += 2
    lam[(i - 1) % rank] -= 1
    lam[(i + 1) % rank] -= 1
    return AffineWeight(side, tuple(lam), Fraction(1 if i == 0 else 0))


def root_combination(side: str, rank: int, coeffs: Sequence[int]) -> AffineWeight:
    total = AffineWeight(side, (0,) * rank)
    for i, c in enumerate(coeffs):
        if c:
            total = total + simple_root(side, rank, i).scale(c)
    return total


def format_weight(w: AffineWeight) -> str:
    """Text form such as ``2*L0-3*d``."""
    parts = []
    for i, a in enumerate(w.lam):
        if a:
            parts.append((a, f"L{i}"))
    if w.delta:
        parts.append((w.delta, "d"))
    if not parts:
        return "0"
    out = ""
    for k, (c, name) in enumerate(parts):
        sign = "-" if c < 0 else ("+" if k else "")
        mag = abs(c)
        body = name if mag == 1 else f"{mag}*{name}"
        out += sign + body
    return out


# -- weight formulas -------------------------------------------------------------

def delta_correction(s: Sequence[int], N: int) -> Fraction:
    total = Fraction(0)
    for sb in s:
        r = sb % N
        total += Fraction(sb * sb, N) - sb - (Fraction(r * r, N) - r)
    return total / 2


def wt_l(mp, s_l: Sequence[int], n: int) -> AffineWeight:
    """Undotted weight of ``|λ_l, s_l⟩``."""
    lam = [0] * n
    for sb in s_l:
        lam[sb % n] += 1
    base = AffineWeight("n", tuple(lam), -delta_correction(s_l, n))
    return base - root_combination("n", n, residue_profile(mp, s_l, n))


def dot_wt_n(mp, s_n: Sequence[int], l: int) -> AffineWeight:
    """Dotted weight of ``|λ_n, s_n⟩•``."""
    lam = [0] * l
    for sa in s_n:
        lam[sa % l] += 1
    base = AffineWeight("l", tuple(lam), -delta_correction(s_n, l))
    return base - root_combination("l", l, residue_profile(mp, s_n, l))


def dot_wt_l(mp, s_l: Sequence[int], n: int) -> AffineWeight:
    """Dotted weight of ``|λ_l, s_l⟩`` read from the l-side."""
    l = len(s_l)
    N0 = residue_profile(mp, s_l, n)[0]
    lam = [n - s_l[0] + s_l[-1]] + [s_l[i] - s_l[i + 1] for i in range(l - 1)]
    if l == 1:
        lam = [n]
    return AffineWeight("l", tuple(lam), -(delta_correction(s_l, n) + N0))


def wt_n(mp, s_n: Sequence[int], l: int) -> AffineWeight:
    """Undotted weight of ``|λ_n, s_n⟩•`` read from the n-side."""
    n = len(s_n)
    N0 = residue_profile(mp, s_n, l)[0]
    lam = [l - s_n[0] + s_n[-1]] + [s_n[i] - s_n[i + 1] for i in range(n - 1)]
    if n == 1:
        lam = [l]
    return AffineWeight("n", tuple(lam), -(delta_correction(s_n, l) + N0))


# -- theta maps and Weyl actions -----------------------------------------------------

def theta(s: Sequence[int], N: int) -> tuple:
    """``(N − s_1 + s_L, s_1 − s_2, …, s_{L−1} − s_L)``."""
    L = len(s)
    if L == 1:
        return (N,)
    return (N - s[0] + s[-1],) + tuple(s[i] - s[i + 1] for i in range(L - 1))


def theta_inverse(a: Sequence[int], N: int, total: int) -> tuple:
    """Multicharge with ``theta(s, N) == a`` and ``sum(s) == total``."""
    L = len(a)
    if sum(a) != N:
        raise NonIntegral(f"coefficients {tuple(a)} do not sum to {N}")
    # s_i = s_L + sum_{j=i}^{L-1} a_j ; sum s = L s_L + sum_j j a_j
    weighted = sum(j * a[j] for j in range(1, L))
    q, r = divmod(total - weighted, L)
    if r:
        raise NonIntegral(f"no integral multicharge for {tuple(a)} with total {total}")
    s = [0] * L
    s[L - 1] = q
    for i in range(L - 2, -1, -1):
        s[i] = s[i + 1] + a[i + 1]
    return tuple(s)


def weyl_on_multicharge(s: Sequence[int], i: int, M: int) -> tuple:
    """σ_0 sends ``(s_1,…,s_L)`` to ``(s_L+M, s_2,…, s_1−M)``; σ_i swaps entries i, i+1."""
    s = list(s)
    L = len(s)
    if not 0 <= i < L:
        raise ValueError(f"index {i} out of range for level {L}")
    if i == 0:
        if L == 1:
            return tuple(s)
        s[0], s[-1] = s[-1] + M, s[0] - M
    else:
        s[i - 1], s[i] = s[i], s[i - 1]
    return tuple(s)


def weyl_on_weight(w: AffineWeight, i: int) -> AffineWeight:
    """``σ_i.w = w − (w, α_i) α_i``."""
    return w - simple_root(w.side, w.rank, i).scale(w.pairing(i))


def in_fundamental_domain(s: Sequence[int], M: int) -> bool:
    return all(s[i] >= s[i + 1] for i in range(len(s) - 1)) and s[0] - s[-1] <= M


def reduce_to_fundamental(s: Sequence[int], M: int):
    """Walk ``s`` into the fundamental domain.

    At each step the smallest ``i`` with ``s_i < s_{i+1}`` (where
    ``s_0 = M + s_L``) is applied. Returns ``(r, word)`` where ``word`` lists the
    indices in the order they were found, i.e. ``(i_r, …, i_1)`` with
    ``s = σ_{i_r} ⋯ σ_{i_1} . r``.
    """
    cur = tuple(s)
    L = len(cur)
    word = []
    if L == 1:
        return cur, ()
    while True:
        ext = (M + cur[-1],) + cur
        found = None
        for i in range(L):
            if ext[i] < ext[i + 1]:
                found = i
                break
        if found is None:
            break
        before = _spread(cur, M)
        cur = weyl_on_multicharge(cur, found, M)
        after = _spread(cur, M)
        assert after < before, "reduction statistic failed to decrease"
        word.append(found)
    return cur, tuple(word)


def _spread(s, M):
    # σ_0 strictly lowers the sum of squares, a plain swap keeps it and
    # removes one inversion, so this pair decreases lexicographically
    squares = sum(x * x for x in s)
    inversions = sum(1 for a in range(len(s)) for b in range(a + 1, len(s)) if s[a] < s[b])
    return squares, inversions


def sorted_residues(s: Sequence[int], N: int) -> tuple:
    """Decreasing sort of ``s_b mod N``; the canonical representative in X."""
    return tuple(sorted((x % N for x in s), reverse=True))


# -- admissible weights -------------------------------------------------------------

def cartan_solve(diff: AffineWeight) -> Optional[tuple]:
    """Solve ``diff = Σ N_j α_j`` exactly; None if there is no solution."""
    L = diff.rank
    if L == 1:
        if diff.lam != (0,) or diff.delta.denominator != 1:
            return None
        return (int(diff.delta),)
    N0 = diff.delta
    # unknowns N_1..N_{L-1}; equations on Λ coefficients
    rows = []
    for i in range(L):
        row = [Fraction(0)] * (L - 1)
        rhs = Fraction(diff.lam[i])
        for j in range(L):
            coef = simple_root("x", L, j).lam[i]
            if j == 0:
                rhs -= coef * N0
            else:
                row[j - 1] += coef
        rows.append((row, rhs))
    sol = _solve_overdetermined(rows, L - 1)
    if sol is None:
        return None
    full = (N0,) + tuple(sol)
    if any(x.denominator != 1 for x in full):
        return None
    return tuple(int(x) for x in full)


def _solve_overdetermined(rows, k):
    rows = [(list(r), b) for r, b in rows]
    piv_rows = []
    col = 0
    used = [False] * len(rows)
    pivots = []
    for col in range(k):
        pr = None
        for idx, (r, b) in enumerate(rows):
            if not used[idx] and r[col] != 0:
                pr = idx
                break
        if pr is None:
            return None
        used[pr] = True
        r0, b0 = rows[pr]
        inv = 1 / r0[col]
        r0 = [x * inv for x in r0]
        b0 = b0 * inv
        rows[pr] = (r0, b0)
        for idx, (r, b) in enumerate(rows):
            if idx != pr and r[col] != 0:
                f = r[col]
                rows[idx] = ([x - f * y for x, y in zip(r, r0)], b - f * b0)
        pivots.append(pr)
    for idx, (r, b) in enumerate(rows):
        if not used[idx] and b != 0:
            return None
    return [rows[p][1] for p in pivots]


@dataclass(frozen=True)
class AdmissibleWeightRecord:
    w: AffineWeight
    c: tuple  # w = v + Σ c_i α_i
    N_of_w: int
    dot_w: AffineWeight
    r_n: tuple
    v_n: tuple
    r_l: tuple
    v_l: tuple
    dotted_profile: tuple  # ẇ(w) = ẇt(∅_n, r_n) − Σ N'_j α̇_j

    def lambda_l_profile(self, mu_size: int) -> tuple:
        return tuple(ci - mu_size for ci in self.c)


def pair_of_weight(s_l: Sequence[int], w: AffineWeight, n: int):
    """The n-multicharge and dotted weight with F_q[s_l]⟨w⟩ = F_p[s_n]⟨ẇ⟩."""
    l = len(s_l)
    total = sum(s_l)
    s_n = theta_inverse(w.lam, l, total)
    ext = [n + s_l[-1]] + list(s_l)
    lam = tuple(ext[i] - ext[i + 1] for i in range(l)) if l > 1 else (n,)
    return s_n, AffineWeight("l", lam, w.delta)


def vacuum_weight(s_l: Sequence[int], n: int) -> AffineWeight:
    return wt_l(((),) * len(s_l), s_l, n)


def admissible_weights(s_l: Sequence[int], n: int, deficit: Sequence[int]) -> list:
    """All admissible weights for ``v = wt(∅, s_l) − Σ deficit_i α_i``.

    Records come out sorted by the vector ``c`` in decreasing lexicographic
    order, so the vacuum weight (if admissible) comes first.
    """
    from itertools import product

    s_l = tuple(s_l)
    l = len(s_l)
    deficit = tuple(deficit)
    if len(deficit) != n:
        raise ValueError("deficit must have n entries")
    top = vacuum_weight(s_l, n)
    records = []
    for c in product(*[range(d, -1, -1) for d in deficit]):
        prof = tuple(d - ci for d, ci in zip(deficit, c))
        if not has_profile(prof, s_l, n):
            continue
        w = top - root_combination("n", n, prof)
        try:
            r_n, dw = pair_of_weight(s_l, w, n)
        except NonIntegral:
            continue
        if not in_fundamental_domain(r_n, l):
            continue
        cp = n_to_charged(((),) * n, r_n, n, l)
        mp_l, r_l = charged_to_l(cp, n, l)
        assert all(not c_ for c_ in mp_l), "vacuum of r_n is not an l-vacuum"
        top_dot = dot_wt_n(((),) * n, r_n, l)
        dprof = cartan_solve(top_dot - dw)
        if dprof is None or any(x < 0 for x in dprof):
            raise AssertionError(f"dotted weight {dw} is not below {top_dot}")
        records.append(
            AdmissibleWeightRecord(
                w=w,
                c=tuple(c),
                N_of_w=min(c) if c else 0,
                dot_w=dw,
                r_n=tuple(r_n),
                v_n=sorted_residues(r_n, l),
                r_l=tuple(r_l),
                v_l=sorted_residues(r_l, n),
                dotted_profile=dprof,
            )
        )
    return records

"""Bar-invariant basis of a weight subspace and the canonical bases G±.

A weight subspace of ``F_q[s_l]`` is given by a residue deficit ``N``: its
standard basis is the set of l-multipartitions with ``N_i`` nodes of residue
``i``. Each admissible weight contributes vectors

    F(λ_l) Ḟ(λ_n) B_{−μ} |∅, r_l(w)>,

which are bar-invariant. Writing them in the standard basis gives ``T(q)``;
the bar involution has matrix ``A = T(q) T(q^-1)^-1``. The canonical bases
then come from a single triangular sweep over ``A``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from . import conventions
from .actions import Word
from .combinatorics import multipartitions_with_profile, partitions_of
from .crystal import enumerate_crystal, jacon_word
from .errors import AntisymmetryViolation, DimensionMismatch, InvalidInput
from .fock import FockVector
from .heisenberg import vacuum_B_product
from .indexation import l_to_charged
from .laurent import ONE, ZERO, LaurentPoly
from .linalg import LaurentMatrix, solve_right
from .weights import AdmissibleWeightRecord, admissible_weights, dot_wt_n

log = logging.getLogger(__name__)

#: Dotted profiles up to this size use Jacon words directly under ``"auto"``.
AUTO_JACON_LIMIT = 16


@dataclass(frozen=True)
class BarBasisElement:
    record: AdmissibleWeightRecord
    lambda_l: tuple
    mu: tuple
    lambda_n: tuple
    undotted: Word
    dotted: Word
    vector: FockVector = field(compare=False, repr=False)

    def describe(self) -> str:
        parts = []
        if self.dotted.factors:
            parts.append(str(self.dotted))
        if self.undotted.factors:
            parts.append(str(self.undotted))
        if self.mu:
            parts.append("B" + "".join(f"_-{m}" for m in self.mu))
        return " ".join(parts + [f"|∅,{self.record.r_l}>"])


@dataclass
class TransitionMatrices:
    n: int
    l: int
    s_l: tuple
    deficit: tuple
    labels: list
    T: LaurentMatrix
    A: LaurentMatrix
    plus: Optional[LaurentMatrix] = None
    minus: Optional[LaurentMatrix] = None
    basis: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)


def ordered_labels(s_l, n, deficit) -> list:
    """Multipartitions of the weight subspace, ordered by descending charged partition."""
    s_l = tuple(s_l)
    mps = multipartitions_with_profile(deficit, s_l, n)
    l = len(s_l)
    return sorted(mps, key=lambda mp: l_to_charged(mp, s_l, n, l).partition, reverse=True)


# -- dotted words -------------------------------------------------------------------

def _cartan_pairing(N: Sequence[int], l: int) -> list:
    """``(Σ N_j α_j, α_i)`` for every i."""
    out = []
    for i in range(l):
        if l == 1:
            out.append(0)
            continue
        val = 2 * N[i]
        if l == 2:
            val -= 2 * N[1 - i]
        else:
            val -= N[(i - 1) % l] + N[(i + 1) % l]
        out.append(val)
    return out


def reflect_to_dominant(top: Sequence[int], profile: Sequence[int]):
    """Raise a weight ``top − Σ profile_i α_i`` by simple reflections until dominant.

    ``top`` lists the Λ-coefficients of the highest weight. Returns the reduced
    profile and the list of ``(i, m)`` reflections, first one first.
    """
    l = len(top)
    N = list(profile)
    steps = []
    while True:
        pair = [a - c for a, c in zip(top, _cartan_pairing(N, l))]
        neg = [i for i in range(l) if pair[i] < 0]
        if not neg:
            return tuple(N), steps
        i = neg[0]
        N[i] += pair[i]
        steps.append((i, -pair[i]))
        if N[i] < 0:
            return None, steps


def dotted_words(record: AdmissibleWeightRecord, n: int, l: int, strategy: str = "auto", conv=None) -> list:
    """``(λ_n, word)`` pairs spanning the dotted part for an admissible weight."""
    prof = record.dotted_profile
    if l == 1:
        # no dotted quantum group at level one: only the vacuum's own dotted weight occurs
        return [] if any(prof) else [(((),) * n, Word("n", "f", ()))]
    use_jacon = strategy == "jacon" or (strategy == "auto" and sum(prof) <= AUTO_JACON_LIMIT)
    if strategy not in ("jacon", "reflect", "auto"):
        raise InvalidInput(f"unknown dotted strategy {strategy!r}")
    prefix = ()
    if not use_jacon:
        top = dot_wt_n(((),) * n, record.v_n, l).lam
        reduced, steps = reflect_to_dominant(top, prof)
        if reduced is None:
            return []
        prof = reduced
        prefix = tuple(steps)
    out = []
    for lam_n in enumerate_crystal(record.v_n, l, prof, conv, side="n"):
        w = jacon_word(lam_n, record.v_n, l, side="n")
        out.append((lam_n, Word("n", "f", prefix + w.factors)))
    return out


@lru_cache(maxsize=4096)
def _bosonic_vacuum(mu, r_l, n, conv):
    with conventions.using(conv):
        return vacuum_B_product(mu, r_l, n)


# -- basis ---------------------------------------------------------------------------

def build_basis(s_l, n: int, deficit, dotted_strategy: str = "auto", conv=None) -> list:
    """The bar-invariant basis of the weight subspace with residue deficit ``deficit``."""
    conv = conv or conventions.current()
    s_l = tuple(s_l)
    l = len(s_l)
    deficit = tuple(deficit)
    labels = multipartitions_with_profile(deficit, s_l, n)
    label_keys = {l_to_charged(mp, s_l, n, l) for mp in labels}
    out = []
    with conventions.using(conv):
        for rec in admissible_weights(s_l, n, deficit):
            dotted = dotted_words(rec, n, l, dotted_strategy, conv)
            if not dotted:
                continue
            for size in range(rec.N_of_w + 1):
                prof = tuple(c - size for c in rec.c)
                lam_ls = enumerate_crystal(rec.v_l, n, prof, conv, side="l")
                if not lam_ls:
                    continue
                for mu in partitions_of(size):
                    base = _bosonic_vacuum(tuple(mu), rec.r_l, n, conv)
                    for lam_n, dword in dotted:
                        mid = dword.apply(base)
                        for lam_l in lam_ls:
                            uword = jacon_word(lam_l, rec.v_l, n, side="l")
                            vec = uword.apply(mid)
                            stray = vec.support() - label_keys
                            if stray:
                                raise DimensionMismatch(
                                    f"basis vector {uword} {dword} B{mu} at {rec.r_l} leaves the weight subspace"
                                )
                            out.append(BarBasisElement(rec, lam_l, tuple(mu), lam_n, uword, dword, vec))
    if len(out) != len(labels):
        raise DimensionMismatch(f"built {len(out)} basis vectors for a subspace of dimension {len(labels)}")
    return out


def transition_matrix(basis, labels, s_l, n) -> LaurentMatrix:
    """``T``: column k holds the standard coordinates of basis vector k."""
    s_l = tuple(s_l)
    l = len(s_l)
    keys = [l_to_charged(mp, s_l, n, l) for mp in labels]
    index = dict(zip(keys, labels))
    cols = list(range(len(basis)))
    ent = {}
    for k, el in enumerate(basis):
        for key, c in el.vector.terms.items():
            ent[(index[key], k)] = c
    return LaurentMatrix(labels, cols, ent)


def involution_matrix(basis, labels, s_l, n) -> LaurentMatrix:
    """``A`` with ``A · T(q^-1) = T(q)``."""
    T = transition_matrix(basis, labels, s_l, n)
    return solve_right(T.bar(), T)


def canonical_from_involution(A: LaurentMatrix, sign: int = 1) -> LaurentMatrix:
    """Columns ``G^±(μ)`` in the standard basis.

    The row/column labels of ``A`` must be ordered so that ``A`` is lower
    unitriangular (a linear extension of dominance, largest first).
    """
    labels = list(A.rows)
    pos = {x: i for i, x in enumerate(labels)}
    by_row: dict = {}
    for (r, c), v in A.entries.items():
        by_row.setdefault(r, []).append((pos[c], c, v))
    for r in by_row:
        by_row[r].sort()
    ent = {}
    for m, mu in enumerate(labels):
        d = {mu: ONE}
        dbar = {mu: ONE}
        for t in range(m + 1, len(labels)):
            nu = labels[t]
            r = ZERO
            for pc, lam, a in by_row.get(nu, ()):
                if pc >= t:
                    break
                x = dbar.get(lam)
                if x is not None:
                    r = r + a * x
            if not r:
                continue
            if r.coefficient(0) or r.bar() != -r:
                raise AntisymmetryViolation(f"correction term {r} at ({nu}, {mu}) is not antisymmetric")
            part = r.positive_part() if sign > 0 else r.negative_part()
            if part:
                d[nu] = part
                dbar[nu] = part.bar()
        for nu, v in d.items():
            ent[(nu, mu)] = v
    return LaurentMatrix(labels, labels, ent)


def canonical_basis(s_l, n: int, deficit, basis_sign: str = "plus", dotted_strategy: str = "auto", conv=None) -> TransitionMatrices:
    """Full pipeline for one weight subspace."""
    conv = conv or conventions.current()
    s_l = tuple(s_l)
    deficit = tuple(deficit)
    if len(deficit) != n:
        raise InvalidInput(f"deficit needs {n} entries")
    if any(x < 0 for x in deficit):
        raise InvalidInput("deficit entries must be nonnegative")
    timings = {}
    t0 = time.perf_counter()
    labels = ordered_labels(s_l, n, deficit)
    basis = build_basis(s_l, n, deficit, dotted_strategy, conv)
    t1 = time.perf_counter()
    T = transition_matrix(basis, labels, s_l, n)
    A = solve_right(T.bar(), T)
    t2 = time.perf_counter()
    check_involution(A)
    res = TransitionMatrices(n, len(s_l), s_l, deficit, labels, T, A, basis=basis)
    if basis_sign in ("plus", "both"):
        res.plus = canonical_from_involution(A, +1)
    if basis_sign in ("minus", "both"):
        res.minus = canonical_from_involution(A, -1)
    t3 = time.perf_counter()
    timings.update(basis=t1 - t0, solve=t2 - t1, sweep=t3 - t2)
    res.timings = timings
    log.debug("block %s deficit %s: %s", s_l, deficit, timings)
    return res


def check_involution(A: LaurentMatrix) -> None:
    """Assert unitriangularity and ``A(q) A(q^-1) = I``."""
    from .errors import InternalInconsistency

    pos = {x: i for i, x in enumerate(A.rows)}
    for (r, c), v in A.entries.items():
        if pos[r] < pos[c] or (r == c and v != ONE):
            raise InternalInconsistency(f"A is not unitriangular at {(r, c)}")
    if A @ A.bar() != LaurentMatrix.identity(A.rows):
        raise InternalInconsistency("A(q) A(q^-1) is not the identity")


def deficits_of_size(s_l, n: int, size: int) -> list:
    """All residue deficits with ``size`` boxes that occur in ``F_q[s_l]``."""
    from itertools import product

    from .combinatorics import has_profile

    out = []
    for N in product(range(size + 1), repeat=n):
        if sum(N) == size and has_profile(N, s_l, n):
            out.append(N)
    return sorted(out, reverse=True)

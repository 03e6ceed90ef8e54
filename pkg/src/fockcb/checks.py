"""Invariant checks shared by the ``verify`` subcommand and the test suite.

Every check returns a :class:`CheckResult`; none of them raise on a failed
assertion, so a report can list everything that went wrong at once.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from .actions import apply_e, apply_f, apply_generator, repeat_and_divide
from .canonical import TransitionMatrices, canonical_basis, deficits_of_size
from .combinatorics import dominance_leq, multipartitions_of, partitions_of
from .errors import FockError
from .fock import FockVector
from .heisenberg import apply_B_dominant
from .indexation import charged_to_l, charged_to_n, l_to_charged, l_to_n, n_to_l
from .laurent import ONE, LaurentPoly, q_integer
from .ribbons import brute_force_strip, horizontal_ribbon_strip
from .weights import dot_wt_n, null_root, root_combination, wt_l


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name}  ({self.seconds:.2f}s){extra}"


def _timed(name: str, fn: Callable[[], str | None]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        problem = fn()
    except (FockError, ArithmeticError) as exc:
        problem = f"{type(exc).__name__}: {exc}"
    return CheckResult(name, problem is None, problem or "", time.perf_counter() - t0)


# -- entry shapes ----------------------------------------------------------------

def plus_entry_ok(f: LaurentPoly, diagonal: bool) -> bool:
    """Diagonal entries are 1; the others lie in qN[q]."""
    if diagonal:
        return f == ONE
    return not f or (f.low >= 1 and all(c >= 0 for c in f.coeffs))


def minus_entry_ok(f: LaurentPoly, diagonal: bool) -> bool:
    """Diagonal entries are 1; the others lie in pN[p] with p = −q⁻¹."""
    if diagonal:
        return f == ONE
    if not f:
        return True
    if f.high > -1:
        return False
    return all(c * (-1) ** (-e) >= 0 for e, c in f.terms())


# -- block checks ----------------------------------------------------------------

def block_problems(res: TransitionMatrices) -> dict:
    """Run every per-block invariant on a computed block; ``{name: problem or None}``."""
    return matrix_problems(res.A, res.labels, res.s_l, res.n, res.plus, res.minus)


def matrix_problems(A, labels, s_l, n: int, plus=None, minus=None) -> dict:
    """The per-block invariants on bare matrices (as read back from a cache, say)."""
    s_l = tuple(s_l)
    l = len(s_l)
    parts = {mp: l_to_charged(mp, s_l, n, l).partition for mp in labels}
    out = {}

    ident = A @ A.bar() == type(A).identity(A.rows)
    out["involution"] = None if ident else "A(q) A(q^-1) is not the identity"

    bad = None
    for (r, c), v in A.entries.items():
        if r == c:
            if v != ONE:
                bad = f"diagonal entry at {r} is {v}"
        elif not dominance_leq(parts[r], parts[c]):
            bad = f"entry at ({r}, {c}) breaks dominance"
        if bad:
            break
    out["unitriangular"] = bad

    for key, G, ok in (("plus", plus, plus_entry_ok), ("minus", minus, minus_entry_ok)):
        if G is None:
            continue
        bad = None
        for r in G.rows:
            for c in G.cols:
                if not ok(G[(r, c)], r == c):
                    bad = f"entry at ({r}, {c}) is {G[(r, c)]}"
                    break
            if bad:
                break
        out[f"positivity_{key}"] = bad
        out[f"bar_invariant_{key}"] = None if A @ G.bar() == G else "some column is not bar-invariant"
    return out


def check_block(s_l, n: int, deficit) -> list:
    t0 = time.perf_counter()
    try:
        res = canonical_basis(s_l, n, deficit, basis_sign="both")
    except FockError as exc:
        return [CheckResult(f"block {tuple(s_l)} {tuple(deficit)}", False, f"{type(exc).__name__}: {exc}", time.perf_counter() - t0)]
    elapsed = time.perf_counter() - t0
    return [
        CheckResult(f"{name} {tuple(s_l)} {tuple(deficit)}", problem is None, problem or "", elapsed)
        for name, problem in block_problems(res).items()
    ]


# -- action checks ---------------------------------------------------------------

def _keys(s_l, n, max_boxes, keys=None):
    if keys is not None:
        yield from keys
        return
    l = len(s_l)
    for m in range(max_boxes + 1):
        for mp in multipartitions_of(m, l):
            yield mp


def indexation_problem(s_l, n: int, max_boxes: int, keys=None) -> str | None:
    l = len(s_l)
    for mp in _keys(s_l, n, max_boxes, keys):
        cp = l_to_charged(mp, s_l, n, l)
        if charged_to_l(cp, n, l) != (mp, tuple(s_l)):
            return f"l-side round trip fails at {mp}"
        mp_n, s_n = charged_to_n(cp, n, l)
        if n_to_l(mp_n, s_n, n, l) != (mp, tuple(s_l)):
            return f"n-side round trip fails at {mp}"
        if l_to_n(mp, s_l, n, l) != (mp_n, s_n):
            return f"l_to_n disagrees with the charged route at {mp}"
    return None


def divided_power_problem(s_l, n: int, max_boxes: int, max_k: int = 3, keys=None) -> str | None:
    l = len(s_l)
    for mp in _keys(s_l, n, max_boxes, keys):
        v = FockVector.from_l_key(mp, s_l, n)
        # a side of modulus one carries no quantum group, so it is skipped
        for side, modulus in (("l", n), ("n", l)):
            if modulus < 2:
                continue
            for kind in ("f", "e"):
                for i in range(modulus):
                    for k in range(2, max_k + 1):
                        closed = apply_generator(kind, i, v, side, k)
                        if closed != repeat_and_divide(kind, i, v, side, k):
                            return f"{kind}_{i}^({k}) on side {side} at {mp}"
    return None


def commuting_problem(s_l, n: int, max_boxes: int, keys=None) -> str | None:
    """Undotted and dotted generators commute."""
    l = len(s_l)
    for mp in _keys(s_l, n, max_boxes, keys):
        v = FockVector.from_l_key(mp, s_l, n)
        for i in range(n):
            for j in range(l):
                for a in (apply_f, apply_e):
                    for b in (apply_f, apply_e):
                        lhs = a(i, b(j, v, side="n"))
                        rhs = b(j, a(i, v), side="n")
                        if lhs != rhs:
                            return f"{a.__name__}_{i} and dotted {b.__name__}_{j} differ at {mp}"
    return None


def heisenberg_commuting_problem(n: int, l: int, max_boxes: int = 2, m: int = 1) -> str | None:
    """``B_{−m}`` commutes with every ``f_i`` on keys deep in the dominant region."""
    gap = n * m + max_boxes + 3
    s_l = tuple(gap * (l - 1 - b) for b in range(l))
    for mp in _keys(s_l, n, max_boxes):
        v = FockVector.from_l_key(mp, s_l, n)
        for i in range(n):
            if apply_f(i, apply_B_dominant(-m, v)) != apply_B_dominant(-m, apply_f(i, v)):
                return f"B_-{m} and f_{i} differ at {mp}"
    return None


def weight_problem(s_l, n: int, max_boxes: int, keys=None) -> str | None:
    """``f_i`` lowers the undotted weight by ``α_i``; on the dotted weight only ``f_0`` acts, by ``−δ``.

    The dotted generators behave the same way with the two sides swapped.
    """
    l = len(s_l)
    for mp in _keys(s_l, n, max_boxes, keys):
        w = wt_l(mp, s_l, n)
        mp_n, s_n = l_to_n(mp, s_l, n, l)
        dw = dot_wt_n(mp_n, s_n, l)
        v = FockVector.from_l_key(mp, s_l, n)
        for i in range(n):
            alpha = root_combination("n", n, [int(j == i) for j in range(n)])
            for (key, _s), _c in apply_f(i, v).l_items():
                if wt_l(key, s_l, n) != w - alpha:
                    return f"f_{i} moves the weight wrongly at {mp}"
                kn, sn = l_to_n(key, s_l, n, l)
                if dot_wt_n(kn, sn, l) != dw - null_root("l", l).scale(int(i == 0)):
                    return f"f_{i} moves the dotted weight wrongly at {mp}"
        for j in range(l):
            alpha = root_combination("l", l, [int(k == j) for k in range(l)])
            # dotted generators move the l-multicharge, so each key carries its own
            for (key, ch), _c in apply_f(j, v, side="n").l_items():
                if wt_l(key, ch, n) != w - null_root("n", n).scale(int(j == 0)):
                    return f"dotted f_{j} moves the weight wrongly at {mp}"
                kn, sn = l_to_n(key, ch, n, l)
                if dot_wt_n(kn, sn, l) != dw - alpha:
                    return f"dotted f_{j} moves the dotted weight wrongly at {mp}"
    return None


def sl2_problem(s_l, n: int, max_boxes: int, keys=None) -> str | None:
    """``e_i f_i − f_i e_i`` acts by the quantum integer of the weight pairing."""
    l = len(s_l)
    for mp in _keys(s_l, n, max_boxes, keys):
        v = FockVector.from_l_key(mp, s_l, n)
        lam = wt_l(mp, s_l, n).lam
        for i in range(n):
            lhs = apply_e(i, apply_f(i, v)) - apply_f(i, apply_e(i, v))
            if lhs != v.scale(q_integer(lam[i])):
                return f"undotted sl2 relation fails for i={i} at {mp}"
        if l < 2:
            continue
        mp_n, s_n = l_to_n(mp, s_l, n, l)
        dlam = dot_wt_n(mp_n, s_n, l).lam
        for j in range(l):
            lhs = apply_e(j, apply_f(j, v, side="n"), side="n") - apply_f(j, apply_e(j, v, side="n"), side="n")
            if lhs != v.scale(q_integer(dlam[j]).substitute_minus_inverse()):
                return f"dotted sl2 relation fails for j={j} at {mp}"
    return None


def ribbon_problem(N: int, max_cells: int) -> str | None:
    """The greedy ribbon tiler agrees with exhaustive search on every skew shape."""
    for outer_size in range(max_cells + 1):
        for mu in partitions_of(outer_size):
            for inner_size in range(max(0, outer_size - max_cells), outer_size + 1):
                if (outer_size - inner_size) % N:
                    continue
                for la in partitions_of(inner_size):
                    spins = brute_force_strip(la, mu, N)
                    tiling = horizontal_ribbon_strip(la, mu, N)
                    if tiling is None:
                        if spins:
                            return f"tiler misses {mu}/{la}"
                    elif set(spins) != {tiling.spin}:
                        return f"tiler spin {tiling.spin} vs oracle {sorted(set(spins))} for {mu}/{la}"
    return None


# -- suite ---------------------------------------------------------------------------

def run_suite(s_l, n: int, size: int | None = None, deficits: Iterable | None = None, max_boxes: int = 3, seed: int = 0) -> list:
    """All checks for one Fock space; blocks are the given deficits or every deficit of ``size``."""
    s_l = tuple(s_l)
    l = len(s_l)
    results = [
        _timed("indexation round trips", lambda: indexation_problem(s_l, n, max_boxes)),
        _timed("divided powers closed form", lambda: divided_power_problem(s_l, n, min(max_boxes, 2))),
        _timed("commuting actions", lambda: commuting_problem(s_l, n, min(max_boxes, 2))),
        _timed("weight discipline", lambda: weight_problem(s_l, n, max_boxes)),
        _timed("sl2 relation", lambda: sl2_problem(s_l, n, min(max_boxes, 2))),
        _timed("heisenberg commutes with f", lambda: heisenberg_commuting_problem(n, l)),
        _timed("ribbon tiler", lambda: ribbon_problem(n, min(2 * max_boxes + 2, 8))),
    ]
    if deficits is None:
        deficits = deficits_of_size(s_l, n, size if size is not None else 2)
    for N in deficits:
        results.extend(check_block(s_l, n, N))
    return results


def random_charge(rng: random.Random, l: int, spread: int = 4) -> tuple:
    return tuple(rng.randint(-spread, spread) for _ in range(l))


def random_partition(rng: random.Random, m: int) -> tuple:
    """A partition of ``m`` built from random parts (not uniform, but covers every shape)."""
    parts = []
    while m:
        x = rng.randint(1, m)
        parts.append(x)
        m -= x
    return tuple(sorted(parts, reverse=True))


def random_keys(rng: random.Random, l: int, max_boxes: int, count: int) -> list:
    """``count`` random l-multipartitions with at most ``max_boxes`` boxes."""
    out = []
    for _ in range(count):
        total = rng.randint(0, max_boxes)
        cuts = sorted(rng.randint(0, total) for _ in range(l - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        out.append(tuple(random_partition(rng, m) for m in sizes))
    return out


__all__ = [
    "CheckResult",
    "block_problems",
    "check_block",
    "commuting_problem",
    "divided_power_problem",
    "heisenberg_commuting_problem",
    "indexation_problem",
    "matrix_problems",
    "minus_entry_ok",
    "plus_entry_ok",
    "random_charge",
    "random_keys",
    "ribbon_problem",
    "run_suite",
    "sl2_problem",
    "weight_problem",
]

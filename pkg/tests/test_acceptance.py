"""The ten acceptance criteria, each with its time limit.

Every criterion produces one ``PASS``/``FAIL`` line; pytest shows them in an
"acceptance criteria" section of its terminal summary. The module can also be
run directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import json
import random
import sys
import time
from pathlib import Path

import pytest

from fockcb.canonical import canonical_basis, deficits_of_size, ordered_labels
from fockcb.checks import (
    block_problems,
    commuting_problem,
    divided_power_problem,
    heisenberg_commuting_problem,
    indexation_problem,
    random_charge,
    random_keys,
    ribbon_problem,
    sl2_problem,
    weight_problem,
)
from fockcb.compare import equal_up_to_relabeling
from fockcb.crystal import jacon_sets, jacon_word
from fockcb.fock import FockVector
from fockcb.heisenberg import apply_B_level1, vacuum_B_product
from fockcb.laurent import ONE, format_poly, parse_poly
from fockcb.pinning import run_harness, unique_winner
from fockcb.weights import admissible_weights, format_weight

GOLDEN = json.loads((Path(__file__).parent / "data" / "golden_tables.json").read_text())

E = ()


def _label(mp):
    return tuple(tuple(p) for p in mp)


def _mismatches(matrix, table, rows=None, cols=None):
    rows = rows if rows is not None else [_label(mp) for mp in table["labels"]]
    cols = cols if cols is not None else rows
    bad = []
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            if format_poly(matrix[(r, c)]) != (table["rows"][i][j] or "0"):
                bad.append((r, c))
    return bad


#: one line per criterion, printed in the terminal summary by conftest
RESULT_LINES: list = []


def report(number: int, ok: bool, seconds: float, limit: float, detail: str = "") -> None:
    within = seconds < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"{status} criterion {number}: {detail} ({seconds:.2f} s, limit {limit:g} s)"
    RESULT_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


# -- 1, 2: sixteen-dimensional tables ---------------------------------------------

def _golden_block(name, charge):
    t0 = time.perf_counter()
    res = canonical_basis(charge, 2, (2, 2))
    elapsed = time.perf_counter() - t0
    table = GOLDEN[name]
    same_labels = set(res.labels) == {_label(mp) for mp in table["labels"]}
    bad = _mismatches(res.plus, table) if same_labels else ["labels"]
    return res.plus, bad, elapsed


def test_criterion_1_delta_zero():
    plus, bad, elapsed = _golden_block("delta_0", (0, 0))
    nnz = plus.nonzero_count()
    report(1, not bad and nnz == 86, elapsed, 30, f"charge (0,0): {len(bad)} mismatches, {nnz} nonzero entries")


def test_criterion_2_delta_plus_minus_one():
    results = []
    for name, charge in (("delta_pos", (2, -2)), ("delta_neg", (-2, 2))):
        plus, bad, elapsed = _golden_block(name, charge)
        results.append((charge, bad, plus.nonzero_count(), elapsed))
    ok = all(not bad and nnz == 87 for _c, bad, nnz, _t in results)
    slowest = max(t for *_x, t in results)
    detail = "; ".join(f"charge {c}: {len(b)} mismatches, {nnz} nonzero" for c, b, nnz, _t in results)
    report(2, ok, slowest, 30, detail)


# -- 3: stability sweep -----------------------------------------------------------

def test_criterion_3_stability_sweep():
    t0 = time.perf_counter()
    mats = {k: canonical_basis((2 * k, -2 * k), 2, (2, 2)).plus for k in range(-20, 21) if k}
    failures = []
    for a, b in itertools.combinations(range(1, 7), 2):
        if not equal_up_to_relabeling(mats[a], mats[b]):
            failures.append((a, b))
    for k in range(1, 21):
        if not equal_up_to_relabeling(mats[k], mats[-k]):
            failures.append((k, -k))
        if not equal_up_to_relabeling(mats[1], mats[k]):
            failures.append((1, k))
    elapsed = time.perf_counter() - t0
    report(3, not failures, elapsed, 600, f"|k| <= 20, {len(failures)} pairs differ {failures[:3]}")


# -- 4: the 28-dimensional block --------------------------------------------------

def test_criterion_4_twenty_eight_dimensional_block():
    t0 = time.perf_counter()
    res = canonical_basis((0, 0), 2, (7, 4))
    elapsed = time.perf_counter() - t0
    l1 = [_label(mp) for mp in GOLDEN["block_11"]["labels"]]
    l2 = [_label(mp) for mp in GOLDEN["block_22"]["labels"]]
    ok = len(res.labels) == 28 and set(res.labels) == set(l1) | set(l2)
    bad = 0
    if ok:
        bad += len(_mismatches(res.plus, GOLDEN["block_11"], l1, l1))
        bad += len(_mismatches(res.plus, GOLDEN["block_21"], l2, l1))
        bad += len(_mismatches(res.plus, GOLDEN["block_22"], l2, l2))
        bad += sum(1 for r in l1 for c in l2 if res.plus[(r, c)])
    report(4, ok and bad == 0, elapsed, 900, f"dimension {len(res.labels)}, {bad} mismatching entries")


# -- 5: Heisenberg vectors --------------------------------------------------------

LEVEL_ONE = [((4,), "1"), ((3, 1), "-q^-1"), ((2, 2), "q^-2-1"), ((2, 1, 1), "q^-1"), ((1, 1, 1, 1), "-q^-2")]
LEVEL_TWO_SECOND = [((4,), "q^2"), ((3, 1), "-q"), ((2, 2), "-q^2+1"), ((2, 1, 1), "q"), ((1, 1, 1, 1), "-1")]
LEVEL_THREE = [
    (((2,), E, E), "1"),
    ((E, E, (2,)), "1"),
    (((1,), E, (1,)), "q-q^-1"),
    ((E, E, (1, 1)), "-1"),
    ((E, (2,), E), "q^2"),
    (((1, 1), E, E), "-1"),
    ((E, (1, 1), E), "-q"),
]


def _vec(n, charge, items):
    return FockVector.from_l_terms(n, charge, [(mp, parse_poly(c)) for mp, c in items])


def test_criterion_5_heisenberg_vectors():
    cases = [
        ("B_-2 level 1", lambda: apply_B_level1(-2, FockVector.vacuum((0,), 2)), _vec(2, (0,), [((la,), c) for la, c in LEVEL_ONE])),
        (
            "B_-2 (2,-2)",
            lambda: vacuum_B_product((2,), (2, -2), 2),
            _vec(2, (2, -2), [((la, E), c) for la, c in LEVEL_ONE] + [((E, la), c) for la, c in LEVEL_TWO_SECOND]),
        ),
        ("B_-1 (1,-1,0)", lambda: vacuum_B_product((1,), (1, -1, 0), 2), _vec(2, (1, -1, 0), LEVEL_THREE)),
    ]
    ok, slowest, parts = True, 0.0, []
    for name, fn, want in cases:
        t0 = time.perf_counter()
        got = fn()
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        ok &= got == want
        parts.append(f"{name} {'equal' if got == want else 'differs'}")
    report(5, ok, slowest, 1, ", ".join(parts))


# -- 6: Jacon word ----------------------------------------------------------------

def test_criterion_6_jacon_word():
    t0 = time.perf_counter()
    mp, v = ((4, 2), (4, 1)), (3, 1)
    word = str(jacon_word(mp, v, 4))
    sets = jacon_sets(mp, v, 4)
    elapsed = time.perf_counter() - t0
    ok = word == "f0 f2 f1 f3^(2) f0^(2) f2^(2) f1 f3" and sets == {0: [(1, 4, 2)], 1: [], 2: [(1, 4, 1)], 3: []}
    report(6, ok, elapsed, 1, f"word {word}")


# -- 7: admissible weights and the basis ------------------------------------------

ARRAY = [
    ("2*L0-3*d", 1, "6*L0-3*L1-3*d", (3, 3, 3), (1, 1, 1), (6, 3), (0, 0), (1, 1, 1), (0, 3)),
    ("L1+L2-4*d", 0, "6*L0-3*L1-4*d", (4, 3, 2), (1, 0, 0), (5, 4), (2, 1), (0, 1, 1), (1, 3)),
    ("2*L0-4*d", 0, "6*L0-3*L1-4*d", (3, 3, 3), (1, 1, 1), (6, 3), (0, 0), (0, 0, 0), (1, 4)),
]
PROVENANCE = {
    "ḟ1^(3) f2 f1 f0 |∅,(6, 3)>",
    "ḟ1^(3) f1 f2 f0 |∅,(6, 3)>",
    "ḟ1^(3) B_-1 |∅,(6, 3)>",
    "ḟ1^(3) ḟ0 f2 f1 |∅,(5, 4)>",
    "ḟ1^(3) ḟ0 f1 f2 |∅,(5, 4)>",
    "ḟ1^(3) ḟ0 ḟ1 |∅,(6, 3)>",
}


def test_criterion_7_admissible_weights_and_basis():
    t0 = time.perf_counter()
    rows = [
        (format_weight(r.w), r.N_of_w, format_weight(r.dot_w), r.r_n, r.v_n, r.r_l, r.v_l, r.c, r.dotted_profile)
        for r in admissible_weights((3, 6), 3, (1, 1, 1))
    ]
    res = canonical_basis((3, 6), 3, (1, 1, 1))
    got = {el.describe() for el in res.basis}
    elapsed = time.perf_counter() - t0
    report(7, rows == ARRAY and got == PROVENANCE, elapsed, 5, f"{len(rows)} admissible weights, {len(got)} basis vectors")


# -- 8: spot vector ---------------------------------------------------------------

def test_criterion_8_spot_vector():
    t0 = time.perf_counter()
    column = canonical_basis((-2, 2), 2, (2, 2)).plus.column(((3, 1), E))
    elapsed = time.perf_counter() - t0
    want = {((3, 1), E): ONE, ((2, 2), E): parse_poly("q"), ((2, 1, 1), E): parse_poly("q^2")}
    report(8, column == want, elapsed, 30, f"{len(column)} terms")


# -- 9: property suite ------------------------------------------------------------

#: blocks are drawn with up to ten boxes but kept to at most this dimension
BLOCK_CAP = 200
BLOCKS_PER_SPACE = 3
SPACES = 12
KEYS_PER_SPACE = 150


def property_suite(seed: int = 2024):
    rng = random.Random(seed)
    failures, counts = [], {"spaces": 0, "keys": 0, "blocks": 0, "largest": 0}
    for _ in range(SPACES):
        n, l = rng.randint(2, 3), rng.randint(1, 3)
        charge = random_charge(rng, l, 3)
        keys = random_keys(rng, l, 10, KEYS_PER_SPACE)
        counts["spaces"] += 1
        counts["keys"] += len(keys)
        for name, check in (
            ("indexation", indexation_problem),
            ("divided powers", divided_power_problem),
            ("commuting", commuting_problem),
            ("weights", weight_problem),
            ("sl2", sl2_problem),
        ):
            problem = check(charge, n, 10, keys=keys)
            if problem:
                failures.append(f"{name} {charge} n={n}: {problem}")
        problem = heisenberg_commuting_problem(n, l, max_boxes=3)
        if problem:
            failures.append(f"heisenberg n={n} l={l}: {problem}")
        # a few weight subspaces of random size, smallest dimension first
        for _ in range(BLOCKS_PER_SPACE):
            size = rng.randint(1, 10)
            options = [(len(ordered_labels(charge, n, N)), N) for N in deficits_of_size(charge, n, size)]
            options = [o for o in options if o[0] <= BLOCK_CAP]
            if not options:
                continue
            dim, N = rng.choice(options)
            res = canonical_basis(charge, n, N, basis_sign="both")
            counts["blocks"] += 1
            counts["largest"] = max(counts["largest"], dim)
            for name, problem in block_problems(res).items():
                if problem:
                    failures.append(f"{name} {charge} n={n} {N}: {problem}")
    for N in range(1, 5):
        problem = ribbon_problem(N, 12)
        if problem:
            failures.append(f"ribbons N={N}: {problem}")
    return failures, counts


def test_criterion_9_property_suite():
    t0 = time.perf_counter()
    failures, counts = property_suite()
    elapsed = time.perf_counter() - t0
    detail = (
        f"{counts['spaces']} spaces, {counts['keys']} keys, {counts['blocks']} blocks "
        f"(largest {counts['largest']}), {len(failures)} failures {failures[:2]}"
    )
    report(9, not failures, elapsed, 600, detail)


# -- 10: convention pinning -------------------------------------------------------

def test_criterion_10_convention_pinning():
    t0 = time.perf_counter()
    results = run_harness()
    winner = unique_winner(results)
    elapsed = time.perf_counter() - t0
    matching = [r.convention.label() for r in results if r.matches]
    report(10, winner is not None, elapsed, 600, f"{len(results)} variants, matching {matching}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

"""Convention-pinning harness.

Runs the reference block (n = l = 2, charge (0, 0), deficit (2, 2)) under every
convention variant and keeps the ones whose Δ⁺ matches the stored reference
table entry for entry. Exactly one survivor is required.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from . import conventions
from .canonical import canonical_basis
from .errors import FockError
from .laurent import format_poly


@dataclass
class VariantResult:
    convention: conventions.Convention
    matches: bool
    mismatches: int
    error: Optional[str] = None


def load_reference() -> dict:
    path = resources.files("fockcb").joinpath("data").joinpath("reference_block.json")
    return json.loads(path.read_text())


def compare_to_reference(plus, ref) -> int:
    """Number of label-keyed entries that differ from the reference rows."""
    labels = [tuple(tuple(c) for c in lab) for lab in ref["labels"]]
    if set(labels) != set(plus.rows):
        return len(labels) ** 2
    bad = 0
    for i, r in enumerate(labels):
        for j, c in enumerate(labels):
            want = ref["rows"][i][j] or "0"
            if format_poly(plus[(r, c)]) != want:
                bad += 1
    return bad


def run_harness(variants=None) -> list:
    ref = load_reference()
    out = []
    for conv in variants or conventions.all_variants():
        try:
            res = canonical_basis(tuple(ref["charge"]), ref["n"], tuple(ref["deficit"]), conv=conv)
            bad = compare_to_reference(res.plus, ref)
            out.append(VariantResult(conv, bad == 0, bad))
        except (FockError, ArithmeticError) as exc:
            out.append(VariantResult(conv, False, -1, f"{type(exc).__name__}: {exc}"[:200]))
    return out


def unique_winner(results) -> Optional[conventions.Convention]:
    winners = [r.convention for r in results if r.matches]
    return winners[0] if len(winners) == 1 else None

"""Sign and ordering conventions for the Chevalley generator actions.

Three binary choices fix the action formulas:

* ``l_tiebreak`` / ``n_tiebreak``: how two same-residue nodes with equal
  content are ordered on the l-side (undotted) and n-side (dotted). With
  ``"desc"`` the node in the larger component is the smaller one; ``"asc"``
  is the reverse.
* ``direction``: with ``"above"`` the coefficient of ``f_i`` counts nodes
  above the added node and ``e_i`` counts nodes below the removed one;
  ``"below"`` swaps the two.

The pinned choice lives in ``data/conventions.json``; ``pin-conventions``
rewrites it.
"""

from __future__ import annotations

import contextlib
import hashlib
import json
from dataclasses import asdict, dataclass
from importlib import resources
from itertools import product
from pathlib import Path

TIEBREAKS = ("desc", "asc")
DIRECTIONS = ("above", "below")


@dataclass(frozen=True)
class Convention:
    l_tiebreak: str = "desc"
    n_tiebreak: str = "desc"
    direction: str = "above"

    def __post_init__(self):
        if self.l_tiebreak not in TIEBREAKS or self.n_tiebreak not in TIEBREAKS:
            raise ValueError("tiebreak must be 'desc' or 'asc'")
        if self.direction not in DIRECTIONS:
            raise ValueError("direction must be 'above' or 'below'")

    def tiebreak(self, side: str) -> str:
        return self.l_tiebreak if side == "l" else self.n_tiebreak

    def label(self) -> str:
        return f"l:{self.l_tiebreak}/n:{self.n_tiebreak}/{self.direction}"


def all_variants() -> list:
    return [Convention(a, b, c) for a, b, c in product(TIEBREAKS, TIEBREAKS, DIRECTIONS)]


def _data_path() -> Path:
    return Path(str(resources.files("fockcb").joinpath("data").joinpath("conventions.json")))


def load_pinned(path=None) -> Convention:
    p = Path(path) if path else _data_path()
    data = json.loads(p.read_text())
    return Convention(data["l_tiebreak"], data["n_tiebreak"], data["direction"])


def write_pinned(conv: Convention, path=None, note: str = "") -> Path:
    p = Path(path) if path else _data_path()
    payload = dict(asdict(conv))
    if note:
        payload["note"] = note
    tmp = p.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    tmp.replace(p)
    return p


def pinned_digest(path=None) -> str:
    """Digest of the pinned file, used to invalidate on-disk caches."""
    p = Path(path) if path else _data_path()
    return hashlib.sha256(p.read_bytes()).hexdigest()[:16]


_current = None


def current() -> Convention:
    global _current
    if _current is None:
        _current = load_pinned()
    return _current


def set_current(conv: Convention) -> None:
    global _current
    _current = conv


@contextlib.contextmanager
def using(conv: Convention):
    """Temporarily switch the active convention."""
    global _current
    saved = current()
    _current = conv
    try:
        yield conv
    finally:
        _current = saved

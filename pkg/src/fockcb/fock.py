"""Sparse vectors of the wedge space Λ^s.

Vectors are stored on charged partitions (the single indexation); the l- and
n-sided views are produced on demand through :mod:`fockcb.indexation`.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping

from .combinatorics import format_multipartition, make_multipartition
from .indexation import (
    ChargedPartition,
    charged_to_l,
    charged_to_n,
    l_to_charged,
    n_to_charged,
)
from .laurent import ONE, ZERO, LaurentPoly, format_poly, parse_poly


class FockVector:
    """A finite Z[q,q^-1]-combination of charged partitions of total charge ``s``."""

    __slots__ = ("n", "l", "s", "terms")

    def __init__(self, n: int, l: int, s: int, terms: Mapping | None = None):
        self.n = n
        self.l = l
        self.s = s
        self.terms: dict = {}
        if terms:
            for key, c in terms.items():
                self._accumulate(ChargedPartition(*key), LaurentPoly.coerce(c))

    # -- construction ------------------------------------------------------------

    def _accumulate(self, key, coeff):
        if key.charge != self.s:
            raise ValueError(f"key {key} does not have charge {self.s}")
        if not coeff:
            return
        old = self.terms.get(key)
        new = coeff if old is None else old + coeff
        if new:
            self.terms[key] = new
        else:
            del self.terms[key]

    @classmethod
    def zero(cls, n, l, s):
        return cls(n, l, s)

    @classmethod
    def from_l_key(cls, mp, s_l, n, coeff=ONE):
        mp = make_multipartition(mp)
        l = len(s_l)
        cp = l_to_charged(mp, tuple(s_l), n, l)
        v = cls(n, l, cp.charge)
        v._accumulate(cp, LaurentPoly.coerce(coeff))
        return v

    @classmethod
    def from_n_key(cls, mp, s_n, l, coeff=ONE):
        mp = make_multipartition(mp)
        n = len(s_n)
        cp = n_to_charged(mp, tuple(s_n), n, l)
        v = cls(n, l, cp.charge)
        v._accumulate(cp, LaurentPoly.coerce(coeff))
        return v

    @classmethod
    def vacuum(cls, s_l, n):
        return cls.from_l_key(((),) * len(s_l), s_l, n)

    @classmethod
    def from_l_terms(cls, n, s_l, items: Iterable):
        """Build from ``(multipartition, coeff)`` pairs sharing the l-multicharge ``s_l``."""
        out = None
        for mp, c in items:
            term = cls.from_l_key(mp, s_l, n, c)
            out = term if out is None else out + term
        if out is None:
            cp = l_to_charged(((),) * len(s_l), tuple(s_l), n, len(s_l))
            return cls(n, len(s_l), cp.charge)
        return out

    # -- views ----------------------------------------------------------------------

    def l_items(self) -> Iterator:
        """``((multipartition, s_l), coeff)`` pairs."""
        for key, c in self.terms.items():
            yield charged_to_l(key, self.n, self.l), c

    def n_items(self) -> Iterator:
        for key, c in self.terms.items():
            yield charged_to_n(key, self.n, self.l), c

    def l_dict(self) -> dict:
        return dict(self.l_items())

    def n_dict(self) -> dict:
        return dict(self.n_items())

    def coefficient(self, key) -> LaurentPoly:
        return self.terms.get(ChargedPartition(*key), ZERO)

    def l_coefficient(self, mp, s_l) -> LaurentPoly:
        cp = l_to_charged(make_multipartition(mp), tuple(s_l), self.n, self.l)
        return self.terms.get(cp, ZERO)

    def support(self) -> set:
        return set(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    # -- arithmetic ----------------------------------------------------------------------

    def _compatible(self, other):
        if (self.n, self.l, self.s) != (other.n, other.l, other.s):
            raise ValueError("vectors live in different spaces")

    def copy(self):
        v = FockVector(self.n, self.l, self.s)
        v.terms = dict(self.terms)
        return v

    def __add__(self, other):
        self._compatible(other)
        v = self.copy()
        for k, c in other.terms.items():
            v._accumulate(k, c)
        return v

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = LaurentPoly.coerce(c)
        v = FockVector(self.n, self.l, self.s)
        if c:
            v.terms = {k: x * c for k, x in self.terms.items()}
        return v

    def bar_coefficients(self):
        """Apply q -> q^-1 to every coefficient (not the bar involution of the space)."""
        v = FockVector(self.n, self.l, self.s)
        v.terms = {k: x.bar() for k, x in self.terms.items()}
        return v

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return (self.n, self.l, self.s) == (other.n, other.l, other.s) and self.terms == other.terms

    def __repr__(self):
        return f"FockVector(n={self.n}, l={self.l}, s={self.s}, {len(self.terms)} terms)"

    # -- serialization ---------------------------------------------------------------

    def sorted_l_items(self):
        """l-side items in a deterministic order (descending charged partition)."""
        return [(charged_to_l(k, self.n, self.l), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def to_json_dict(self) -> dict:
        items = self.sorted_l_items()
        charge = list(items[0][0][1]) if items else None
        terms = []
        for (mp, s_l), c in items:
            terms.append({"key": [list(p) for p in mp], "charge": list(s_l), "coeff": format_poly(c)})
        return {"context": {"n": self.n, "l": self.l, "charge": charge, "total_charge": self.s}, "terms": terms}

    @classmethod
    def from_json_dict(cls, data) -> "FockVector":
        ctx = data["context"]
        n, l = ctx["n"], ctx["l"]
        out = cls(n, l, ctx["total_charge"])
        for t in data["terms"]:
            out = out + cls.from_l_key(t["key"], t["charge"], n, parse_poly(t["coeff"]))
        return out

    def pretty(self) -> str:
        lines = []
        for (mp, s_l), c in self.sorted_l_items():
            lines.append(f"({format_poly(c)}) |{format_multipartition(mp)}, {list(s_l)}>")
        return "\n".join(lines) if lines else "0"

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

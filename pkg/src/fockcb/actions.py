"""Chevalley generators and their divided powers on the wedge space.

The undotted generators ``f_i, e_i`` (i mod n) act through the l-multipartition
indexation and produce powers of ``q``. The dotted generators (i mod l) act
through the n-multipartition indexation with the same template, producing
powers of ``p = -q^-1``.

Same-residue nodes are totally ordered by their content ``j - i + s_b``, ties
broken by component according to the active :class:`Convention`. Any set of
addable i-nodes can be added at once when the modulus is at least 2, which
gives the divided powers in closed form::

    f_i^(k) |λ> = Σ_{S ⊆ A, |S| = k} q^{Σ_{γ∈S} (#(A∖S) above γ − #R above γ)} |λ + S>
    e_i^(k) |λ> = Σ_{S ⊆ R, |S| = k} q^{Σ_{γ∈S} (#(R∖S) below γ − #A below γ)} |λ − S>

(with "above" and "below" exchanged under the ``direction="below"`` variant).
For modulus 1 the divided powers fall back to repeated application followed
by exact division by ``[k]!``.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import conventions
from .combinatorics import (
    add_nodes,
    addable_nodes,
    content,
    remove_nodes,
    removable_nodes,
)
from .errors import NotChainHead
from .fock import FockVector
from .indexation import charged_to_l, charged_to_n, l_to_charged, n_to_charged
from .laurent import P, Q, LaurentPoly, exact_divide, q_factorial_balanced

SIDES = ("l", "n")


def node_order_key(node, charge, tiebreak: str):
    """Sort key realizing the total order on same-residue nodes."""
    b = node[2]
    return (content(node, charge), -b if tiebreak == "desc" else b)


def _sorted_nodes(nodes, charge, tiebreak):
    return sorted(nodes, key=lambda g: node_order_key(g, charge, tiebreak))


def _count_above(pos, positions):
    return sum(1 for x in positions if x > pos)


def _count_below(pos, positions):
    return sum(1 for x in positions if x < pos)


@lru_cache(maxsize=500_000)
def _f_key(mp, charge, modulus, i, k, tiebreak, direction):
    """``(new multipartition, exponent)`` pairs of ``f_i^(k)`` on one key."""
    A = addable_nodes(mp, charge, modulus, i)
    R = removable_nodes(mp, charge, modulus, i)
    if k > len(A):
        return ()
    keyf = lambda g: node_order_key(g, charge, tiebreak)
    a_pos = [keyf(g) for g in A]
    r_pos = [keyf(g) for g in R]
    count = _count_above if direction == "above" else _count_below
    out = []
    for S in combinations(range(len(A)), k):
        chosen = set(S)
        rest = [a_pos[t] for t in range(len(A)) if t not in chosen]
        e = 0
        for t in S:
            e += count(a_pos[t], rest) - count(a_pos[t], r_pos)
        out.append((add_nodes(mp, [A[t] for t in S]), e))
    return tuple(out)


@lru_cache(maxsize=500_000)
def _e_key(mp, charge, modulus, i, k, tiebreak, direction):
    A = addable_nodes(mp, charge, modulus, i)
    R = removable_nodes(mp, charge, modulus, i)
    if k > len(R):
        return ()
    keyf = lambda g: node_order_key(g, charge, tiebreak)
    a_pos = [keyf(g) for g in A]
    r_pos = [keyf(g) for g in R]
    count = _count_below if direction == "above" else _count_above
    out = []
    for S in combinations(range(len(R)), k):
        chosen = set(S)
        rest = [r_pos[t] for t in range(len(R)) if t not in chosen]
        e = 0
        for t in S:
            e += count(r_pos[t], rest) - count(r_pos[t], a_pos)
        out.append((remove_nodes(mp, [R[t] for t in S]), e))
    return tuple(out)


def _side_tools(vec: FockVector, side: str):
    n, l = vec.n, vec.l
    if side == "l":
        return (lambda cp: charged_to_l(cp, n, l)), (lambda mp, ch: l_to_charged(mp, ch, n, l)), n, Q
    if side == "n":
        return (lambda cp: charged_to_n(cp, n, l)), (lambda mp, ch: n_to_charged(mp, ch, n, l)), l, P
    raise ValueError(f"side must be 'l' or 'n', not {side!r}")


def _single_step(kind, vec, side, i, k, conv):
    to_side, from_side, modulus, base = _side_tools(vec, side)
    tb = conv.tiebreak(side)
    fn = _f_key if kind == "f" else _e_key
    i = i % modulus
    out = FockVector(vec.n, vec.l, vec.s)
    for cp, c in vec.terms.items():
        mp, ch = to_side(cp)
        for new_mp, e in fn(mp, ch, modulus, i, k, tb, conv.direction):
            out._accumulate(from_side(new_mp, ch), c * base ** e)
    return out


def bracket_factorial(k: int, side: str) -> LaurentPoly:
    """``[k]!`` in the parameter of the given side (q for l, p for n)."""
    f = q_factorial_balanced(k)
    return f if side == "l" else f.substitute_minus_inverse()


def apply_generator(kind: str, i: int, vec: FockVector, side: str = "l", k: int = 1, conv=None) -> FockVector:
    """``f_i^(k)`` (kind ``"f"``) or ``e_i^(k)`` (kind ``"e"``) on ``vec``."""
    if k < 0:
        raise ValueError("divided power must be nonnegative")
    if k == 0:
        return vec.copy()
    conv = conv or conventions.current()
    modulus = vec.n if side == "l" else vec.l
    if k == 1 or modulus >= 2:
        return _single_step(kind, vec, side, i, k, conv)
    return repeat_and_divide(kind, i, vec, side, k, conv)


def repeat_and_divide(kind, i, vec, side="l", k=1, conv=None) -> FockVector:
    """Divided power by ``k`` single steps and exact division by ``[k]!``.

    This is the independent check on the closed form; it raises
    :class:`fockcb.errors.NotDivisible` if the division is not exact.
    """
    conv = conv or conventions.current()
    cur = vec
    for _ in range(k):
        cur = _single_step(kind, cur, side, i, 1, conv)
    d = bracket_factorial(k, side)
    out = FockVector(vec.n, vec.l, vec.s)
    out.terms = {key: exact_divide(c, d) for key, c in cur.terms.items()}
    return out


def apply_f(i, vec, side="l", k=1, conv=None):
    return apply_generator("f", i, vec, side, k, conv)


def apply_e(i, vec, side="l", k=1, conv=None):
    return apply_generator("e", i, vec, side, k, conv)


def apply_divided_power(i, k, vec, side="l", conv=None):
    return apply_generator("f", i, vec, side, k, conv)


# -- operator words ------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """A product of divided powers, written left to right.

    ``factors`` is a tuple of ``(i, k)``; the rightmost factor acts first.
    """

    side: str
    kind: str
    factors: tuple

    def apply(self, vec: FockVector, conv=None) -> FockVector:
        for i, k in reversed(self.factors):
            vec = apply_generator(self.kind, i, vec, self.side, k, conv)
        return vec

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        dot = "̇" if self.side == "n" else ""
        out = []
        for i, k in self.factors:
            out.append(f"{self.kind}{dot}{i}" + (f"^({k})" if k != 1 else ""))
        # precomposed letters (ḟ, ė) where Unicode has them
        return unicodedata.normalize("NFC", " ".join(out))

    def to_json(self):
        return {"side": self.side, "kind": self.kind, "factors": [list(f) for f in self.factors]}

    def __add__(self, other):
        if (self.side, self.kind) != (other.side, other.kind):
            raise ValueError("cannot concatenate words of different types")
        return Word(self.side, self.kind, self.factors + other.factors)


# -- chain heads and vacua ---------------------------------------------------------

def sigma_head(mp, charge, modulus: int, i: int):
    """Add every addable i-node of a chain head; returns ``(new mp, count)``."""
    if removable_nodes(mp, charge, modulus, i):
        raise NotChainHead(f"{mp} has removable {i}-nodes")
    A = addable_nodes(mp, charge, modulus, i)
    return (add_nodes(mp, A) if A else mp), len(A)


@dataclass(frozen=True)
class VacuumMonomial:
    s_l: tuple
    r_l: tuple
    indices: tuple  # (i_r, ..., i_1) as found by the reduction
    multiplicities: tuple  # (k_r, ..., k_1), aligned with indices

    @property
    def f_word(self) -> Word:
        """``|∅, s_l> = ḟ_{i_r}^(k_r) ... ḟ_{i_1}^(k_1) |∅, r_l>``."""
        return Word("n", "f", tuple(zip(self.indices, self.multiplicities)))

    @property
    def e_word(self) -> Word:
        """``|∅, r_l> = ė_{i_1}^(k_1) ... ė_{i_r}^(k_r) |∅, s_l>``."""
        return Word("n", "e", tuple(zip(reversed(self.indices), reversed(self.multiplicities))))


@lru_cache(maxsize=4096)
def vacuum_monomial(s_l: tuple, n: int) -> VacuumMonomial:
    """Dotted words relating ``|∅, s_l>`` to the fundamental vacuum ``|∅, r_l>``."""
    from .weights import reduce_to_fundamental

    s_l = tuple(s_l)
    l = len(s_l)
    r_l, found = reduce_to_fundamental(s_l, n)
    empty = ((),) * l
    mp_n, r_n = charged_to_n(l_to_charged(empty, r_l, n, l), n, l)
    ks = []
    for i in reversed(found):  # i_1 first
        mp_n, k = sigma_head(mp_n, r_n, l, i)
        ks.append(k)
    target = charged_to_n(l_to_charged(empty, s_l, n, l), n, l)
    if (mp_n, r_n) != target:
        raise NotChainHead(f"vacuum chain from {r_l} does not reach {s_l}")
    return VacuumMonomial(s_l, tuple(r_l), tuple(found), tuple(reversed(ks)))

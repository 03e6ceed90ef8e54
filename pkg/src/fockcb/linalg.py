"""Labelled sparse matrices over Z[q, q^-1] and the exact linear solve.

Two solvers are available. The modular one evaluates at many points modulo
two primes, solves there with numpy, interpolates over a window of exponents
and lifts the coefficients by CRT. The fraction-free (Bareiss) one keeps every
intermediate entry a Laurent polynomial and every division exact. Whatever
the route, the result is checked by multiplying back, and the modular path
falls back to Bareiss whenever that check fails.
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from .errors import NonLaurentResult, Singular
from .laurent import ONE, ZERO, LaurentPoly, NotDivisible, RationalFraction, exact_divide, format_poly


class LaurentMatrix:
    """Sparse matrix with row and column labels; absent entries are zero."""

    __slots__ = ("rows", "cols", "entries", "_row_index", "_col_index")

    def __init__(self, rows: Sequence, cols: Sequence, entries=None):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise ValueError("matrix labels must be unique")
        self._row_index = {r: i for i, r in enumerate(self.rows)}
        self._col_index = {c: i for i, c in enumerate(self.cols)}
        self.entries: dict = {}
        for (r, c), v in (entries or {}).items():
            v = LaurentPoly.coerce(v)
            if v:
                if r not in self._row_index or c not in self._col_index:
                    raise KeyError(f"unknown label in entry {(r, c)}")
                self.entries[(r, c)] = v

    @classmethod
    def identity(cls, labels):
        return cls(labels, labels, {(x, x): ONE for x in labels})

    @classmethod
    def from_dense(cls, rows, cols, data):
        ent = {}
        for i, r in enumerate(rows):
            for j, c in enumerate(cols):
                if data[i][j]:
                    ent[(r, c)] = data[i][j]
        return cls(rows, cols, ent)

    def dense(self) -> list:
        out = [[ZERO] * len(self.cols) for _ in self.rows]
        for (r, c), v in self.entries.items():
            out[self._row_index[r]][self._col_index[c]] = v
        return out

    def __getitem__(self, rc):
        return self.entries.get(rc, ZERO)

    def column(self, c) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def nonzero_count(self) -> int:
        return len(self.entries)

    def transpose(self):
        return LaurentMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def bar(self):
        """Entrywise ``q -> q^-1``."""
        return LaurentMatrix(self.rows, self.cols, {k: v.bar() for k, v in self.entries.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("inner labels differ")
        by_row: dict = {}
        for (r, k), v in self.entries.items():
            by_row.setdefault(k, []).append((r, v))
        out: dict = {}
        for (k, c), w in other.entries.items():
            for r, v in by_row.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, ZERO) + v * w
        return LaurentMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def relabel(self, rows, cols):
        """Same matrix restricted/reordered to the given labels."""
        return LaurentMatrix(rows, cols, {k: v for k, v in self.entries.items() if k[0] in set(rows) and k[1] in set(cols)})

    def pretty(self, fmt=str) -> str:
        lines = []
        for r in self.rows:
            cells = [format_poly(self[(r, c)]) if self[(r, c)] else "." for c in self.cols]
            lines.append(f"{fmt(r)}: " + " | ".join(cells))
        return "\n".join(lines)


def _bareiss_solve(M: list, B: list) -> list:
    """Solve ``M X = B`` exactly; ``M`` is d×d, ``B`` is d×m (lists of LaurentPoly)."""
    d = len(M)
    m = len(B[0]) if B else 0
    aug = [list(M[i]) + list(B[i]) for i in range(d)]
    width = d + m
    prev = ONE
    sign = 1
    for k in range(d):
        best = None
        for r in range(k, d):
            v = aug[r][k]
            if v:
                score = len(v.coeffs)
                if best is None or score < best[0]:
                    best = (score, r)
        if best is None:
            raise Singular("matrix is singular")
        r = best[1]
        if r != k:
            aug[k], aug[r] = aug[r], aug[k]
            sign = -sign
        piv = aug[k][k]
        rowk = aug[k]
        for i in range(k + 1, d):
            rowi = aug[i]
            a = rowi[k]
            for j in range(k + 1, width):
                x = piv * rowi[j]
                if a and rowk[j]:
                    x = x - a * rowk[j]
                rowi[j] = exact_divide(x, prev) if x else ZERO
            rowi[k] = ZERO
        prev = piv
    det = aug[d - 1][d - 1] * sign
    # back substitution for Y = det * X, which is a Laurent matrix (Cramer)
    Y = [[ZERO] * m for _ in range(d)]
    for i in range(d - 1, -1, -1):
        row = aug[i]
        for c in range(m):
            acc = det * row[d + c]
            for j in range(i + 1, d):
                if row[j] and Y[j][c]:
                    acc = acc - row[j] * Y[j][c]
            Y[i][c] = exact_divide(acc, row[i]) if acc else ZERO
    X = [[ZERO] * m for _ in range(d)]
    for i in range(d):
        for c in range(m):
            y = Y[i][c]
            if not y:
                continue
            try:
                X[i][c] = exact_divide(y, det)
            except NotDivisible:
                frac = RationalFraction(y, det)
                raise NonLaurentResult(f"entry {(i, c)} is {frac}, not a Laurent polynomial") from None
    return X


log = logging.getLogger(__name__)

#: Two primes below 2**26, so products of residues fit comfortably in int64.
PRIMES = (67108859, 67108837)


def _solve_mod(M, B, p):
    """Gauss-Jordan solve of ``M X = B`` over GF(p); ``None`` if ``M`` is singular."""
    d = M.shape[0]
    aug = np.concatenate([M, B], axis=1) % p
    for k in range(d):
        nz = np.flatnonzero(aug[k:, k])
        if nz.size == 0:
            return None
        r = k + int(nz[0])
        if r != k:
            aug[[k, r]] = aug[[r, k]]
        aug[k] = (aug[k] * pow(int(aug[k, k]), p - 2, p)) % p
        col = aug[:, k].copy()
        col[k] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            aug[rows] = (aug[rows] - col[rows, None] * aug[k]) % p
    return aug[:, d:]


def _evaluate(matrix: LaurentMatrix, x: int, p: int):
    out = np.zeros(matrix.shape, dtype=np.int64)
    ri, ci = matrix._row_index, matrix._col_index
    for (r, c), v in matrix.entries.items():
        acc = 0
        for a in reversed(v.coeffs):
            acc = (acc * x + a) % p
        out[ri[r], ci[c]] = acc * pow(x, v.low, p) % p
    return out


def _modular_attempt(T: LaurentMatrix, D: int):
    """Candidate ``A`` with entries supported on exponents ``-D..D``, or ``None``."""
    d = len(T.rows)
    K = 2 * D + 1
    lifted = []
    for p in PRIMES:
        points, values = [], []
        x = 1
        while len(points) < K + 1:
            x += 1
            Tx = _evaluate(T, x, p)
            Tinv = _evaluate(T, pow(x, -1, p), p)
            Xt = _solve_mod(Tinv.T.copy(), Tx.T.copy(), p)  # Xt = A(x)^t
            if Xt is None:
                continue
            points.append(x)
            values.append(Xt.T.reshape(-1))
        check_x, check_val = points.pop(), values.pop()
        V = np.array([[pow(x, j - D, p) for j in range(K)] for x in points], dtype=np.int64)
        C = _solve_mod(V, np.array(values, dtype=np.int64), p)
        if C is None:
            return None
        powers = np.array([pow(check_x, j - D, p) for j in range(K)], dtype=np.int64)
        predicted = np.zeros(d * d, dtype=np.int64)
        for j in range(K):
            predicted = (predicted + powers[j] * C[j]) % p
        if not np.array_equal(predicted, check_val):
            return None
        lifted.append(C)
    p1, p2 = PRIMES
    t = ((lifted[1] - lifted[0]) % p2) * pow(p1, -1, p2) % p2
    coeff = lifted[0] + p1 * t
    modulus = p1 * p2
    coeff = np.where(coeff > modulus // 2, coeff - modulus, coeff)
    labels = T.rows
    ent = {}
    for flat in np.flatnonzero(np.any(coeff != 0, axis=0)):
        i, j = divmod(int(flat), d)
        ent[(labels[i], labels[j])] = LaurentPoly([int(c) for c in coeff[:, flat]], -D)
    return LaurentMatrix(labels, labels, ent)


def solve_right(T_bar: LaurentMatrix, T: LaurentMatrix, method: str = "auto") -> LaurentMatrix:
    """Return ``A`` with ``A · T_bar = T``.

    ``T_bar`` and ``T`` share row labels (the standard basis) and column labels
    (the basis vectors). The result is indexed by the row labels on both sides.
    ``T_bar`` must be the entrywise bar of ``T`` for the modular route, which
    ``method="auto"`` tries first.
    """
    if T_bar.rows != T.rows or T_bar.cols != T.cols:
        raise ValueError("T and T_bar must carry the same labels")
    if len(T.rows) != len(T.cols):
        raise Singular("T is not square")
    if method not in ("auto", "modular", "bareiss"):
        raise ValueError(f"unknown solve method {method!r}")
    if method != "bareiss" and T.entries and T_bar == T.bar():
        span = max(max(abs(v.low), abs(v.high)) for v in T.entries.values())
        D = max(span, 2)
        while D <= 4 * span + 8:
            A = _modular_attempt(T, D)
            if A is not None and A @ T_bar == T:
                return A
            D *= 2
        log.debug("modular solve gave up at window %d; falling back to Bareiss", D)
        if method == "modular":
            raise NonLaurentResult("modular solve found no Laurent solution")
    return _solve_bareiss(T_bar, T)


def _solve_bareiss(T_bar: LaurentMatrix, T: LaurentMatrix) -> LaurentMatrix:
    # transpose: T_bar^t A^t = T^t
    Mt = T_bar.transpose().dense()
    Bt = T.transpose().dense()
    if not Mt:
        return LaurentMatrix((), ())
    Xt = _bareiss_solve(Mt, Bt)
    labels = T.rows
    A = LaurentMatrix.from_dense(labels, labels, [[Xt[j][i] for j in range(len(labels))] for i in range(len(labels))])
    if A @ T_bar != T:
        raise NonLaurentResult("re-multiplication check failed")
    return A

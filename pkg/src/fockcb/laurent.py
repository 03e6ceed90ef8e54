"""Exact Laurent polynomials in one variable q, with integer coefficients.

A :class:`LaurentPoly` is stored as ``(low, coeffs)``: ``coeffs[i]`` is the
coefficient of ``q**(low + i)``. The stored form is canonical, so the first
and last coefficients are nonzero unless the polynomial is zero (in which case
``coeffs`` is empty and ``low`` is 0).
"""

from __future__ import annotations

import re
from functools import lru_cache


class NotDivisible(ArithmeticError):
    """Raised when an exact division of Laurent polynomials has a remainder."""


class LaurentPoly:
    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, coeffs=(), low=0):
        coeffs = tuple(coeffs)
        start = 0
        end = len(coeffs)
        while start < end and coeffs[start] == 0:
            start += 1
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        if start == end:
            self.low = 0
            self.coeffs = ()
        else:
            self.low = low + start
            self.coeffs = coeffs[start:end]
        self._hash = None

    @classmethod
    def _raw(cls, low, coeffs):
        # coeffs already trimmed
        obj = object.__new__(cls)
        obj.low = low
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent, coeff=1):
        if coeff == 0:
            return ZERO
        return cls._raw(exponent, (coeff,))

    @classmethod
    def from_dict(cls, terms):
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls._raw(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls.monomial(0, value)
        raise TypeError(f"cannot coerce {value!r} to LaurentPoly")

    # -- inspection -------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def high(self):
        """Largest exponent with a nonzero coefficient (``low - 1`` for zero)."""
        return self.low + len(self.coeffs) - 1

    def terms(self):
        """Yield ``(exponent, coefficient)`` pairs with nonzero coefficient, ascending."""
        low = self.low
        for i, c in enumerate(self.coeffs):
            if c:
                yield low + i, c

    def coefficient(self, exponent):
        i = exponent - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def is_unit(self):
        """True for ``±q^k``, the units of Z[q, q^-1]."""
        return len(self.coeffs) == 1 and self.coeffs[0] in (1, -1)

    def is_constant(self):
        return not self.coeffs or (self.low == 0 and len(self.coeffs) == 1)

    def constant_value(self):
        if not self.coeffs:
            return 0
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return LaurentPoly._raw(self.low, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = LaurentPoly.coerce(other)
            else:
                return NotImplemented
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        off = self.low - lo
        for i, c in enumerate(self.coeffs):
            out[off + i] = c
        off = other.low - lo
        for i, c in enumerate(other.coeffs):
            out[off + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw(self.low, tuple(c * other for c in self.coeffs))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) == 1:
            c = a[0]
            return LaurentPoly._raw(self.low + other.low, tuple(c * y for y in b))
        if len(b) == 1:
            c = b[0]
            return LaurentPoly._raw(self.low + other.low, tuple(c * x for x in a))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        # leading/trailing products are nonzero (integral domain)
        return LaurentPoly._raw(self.low + other.low, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_unit():
                raise NotDivisible(f"{self} is not invertible in Z[q,q^-1]")
            return LaurentPoly.monomial(-self.low * (-k), self.coeffs[0] ** (-k))
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k):
        """Multiply by ``q**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(self.low + k, self.coeffs)

    def bar(self):
        """The ring involution ``q -> q^-1``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(-self.high, self.coeffs[::-1])

    def substitute_minus_inverse(self):
        """Substitute ``q -> -q^-1``; used to express polynomials in ``p = -q^-1``."""
        if not self.coeffs:
            return self
        hi = self.high
        out = []
        for e in range(hi, self.low - 1, -1):
            c = self.coeffs[e - self.low]
            out.append(-c if e % 2 else c)
        return LaurentPoly._raw(-hi, tuple(out))

    def positive_part(self):
        """Terms with strictly positive exponent."""
        return LaurentPoly.from_dict({e: c for e, c in self.terms() if e > 0})

    def negative_part(self):
        return LaurentPoly.from_dict({e: c for e, c in self.terms() if e < 0})

    def is_bar_invariant(self):
        return self == self.bar()

    def content(self):
        """Gcd of the coefficients (0 for the zero polynomial)."""
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def evaluate(self, value):
        """Evaluate at ``value`` (any ring element supporting ``**`` with negative exponents)."""
        total = 0
        for e, c in self.terms():
            total += c * value**e
        return total

    def exact_divide(self, other):
        return exact_divide(self, other)

    # -- text -------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"


ZERO = LaurentPoly._raw(0, ())
ONE = LaurentPoly._raw(0, (1,))
Q = LaurentPoly._raw(1, (1,))
QINV = LaurentPoly._raw(-1, (1,))
#: ``p = -q^-1``, the parameter of the level-n action.
P = LaurentPoly._raw(-1, (-1,))


def bar(f):
    return LaurentPoly.coerce(f).bar()


def exact_divide(f, g):
    """Return ``h`` with ``f == g * h`` in Z[q, q^-1]; raise :class:`NotDivisible` otherwise."""
    f = LaurentPoly.coerce(f)
    g = LaurentPoly.coerce(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return ZERO
    if len(g.coeffs) == 1:
        d = g.coeffs[0]
        if any(c % d for c in f.coeffs):
            raise NotDivisible(f"{f} is not divisible by {g}")
        return LaurentPoly._raw(f.low - g.low, tuple(c // d for c in f.coeffs))
    num = list(f.coeffs)
    den = g.coeffs
    dl = len(den)
    if len(num) < dl:
        raise NotDivisible(f"{f} is not divisible by {g}")
    lead = den[-1]
    quot = [0] * (len(num) - dl + 1)
    for k in range(len(quot) - 1, -1, -1):
        top = num[k + dl - 1]
        if top == 0:
            continue
        if top % lead:
            raise NotDivisible(f"{f} is not divisible by {g}")
        c = top // lead
        quot[k] = c
        for j in range(dl):
            num[k + j] -= c * den[j]
    if any(num):
        raise NotDivisible(f"{f} is not divisible by {g}")
    return LaurentPoly(quot, f.low - g.low)


@lru_cache(maxsize=None)
def q_integer(m):
    """The balanced quantum integer ``[m] = (q^m - q^-m) / (q - q^-1)``."""
    if m == 0:
        return ZERO
    if m < 0:
        return -q_integer(-m)
    # q^(1-m) + q^(3-m) + ... + q^(m-1)
    return LaurentPoly._raw(-(m - 1), tuple(1 - k % 2 for k in range(2 * m - 1)))


@lru_cache(maxsize=None)
def q_factorial_balanced(k):
    """``[k]! = [1][2]...[k]`` with balanced quantum integers."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = ONE
    for m in range(2, k + 1):
        result = result * q_integer(m)
    return result


# -- canonical textual form ------------------------------------------------------

def format_poly(f, var="q"):
    """Render ``f`` in ascending exponents, e.g. ``q^-2+2+q^3``."""
    if not f.coeffs:
        return "0"
    parts = []
    for e, c in f.terms():
        if e == 0:
            body = str(abs(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(sign + body)
    return "".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*(\*)?\s*(q(?:\^\s*\(?\s*(-?\d+)\s*\)?)?)?")


def parse_poly(text):
    """Inverse of :func:`format_poly`; also accepts spaces and ``q^(-1)``."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    terms = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, num, star, mono, exp = m.groups()
        if num is None and mono is None:
            raise ValueError(f"cannot parse polynomial {text!r}")
        if star and (num is None or mono is None):
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        e = 0
        if mono:
            e = int(exp) if exp is not None else 1
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
    return LaurentPoly.from_dict(terms)


# -- rational functions -------------------------------------------------------------

def _strip_q(f):
    """Split ``f = q^k * g`` with ``g`` a polynomial having nonzero constant term."""
    return f.low, LaurentPoly._raw(0, f.coeffs) if f.coeffs else ZERO


def _primitive(f):
    c = f.content()
    if c == 0:
        return ZERO
    if f.coeffs[-1] < 0:
        c = -c
    return LaurentPoly._raw(f.low, tuple(x // c for x in f.coeffs))


def _pseudo_remainder(a, b):
    # a, b ordinary polynomials (low == 0), deg a >= deg b
    num = list(a.coeffs)
    den = b.coeffs
    lead = den[-1]
    dl = len(den)
    while len(num) >= dl and any(num):
        top = num[-1]
        shift = len(num) - dl
        num = [x * lead for x in num]
        for j in range(dl):
            num[shift + j] -= top * den[j]
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    return LaurentPoly(num, 0)


def poly_gcd(f, g):
    """Primitive gcd in Z[q, q^-1], normalized to positive leading coefficient and low exponent 0."""
    f = LaurentPoly.coerce(f)
    g = LaurentPoly.coerce(g)
    if not f:
        return _primitive(LaurentPoly._raw(0, g.coeffs)) if g else ZERO
    if not g:
        return _primitive(LaurentPoly._raw(0, f.coeffs))
    from math import gcd as igcd

    c = igcd(f.content(), g.content())
    a = _primitive(_strip_q(f)[1])
    b = _primitive(_strip_q(g)[1])
    if len(a.coeffs) < len(b.coeffs):
        a, b = b, a
    while b:
        r = _pseudo_remainder(a, b)
        # powers of q are units; keep every remainder an ordinary polynomial
        a, b = b, (_primitive(_strip_q(r)[1]) if r else ZERO)
    return _primitive(_strip_q(a)[1]) * c


class RationalFraction:
    """An element of Q(q) as a reduced quotient of Laurent polynomials.

    The denominator is normalized to a polynomial with nonzero constant term
    and positive leading coefficient; numerator and denominator are coprime.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        # move q-powers of the denominator to the numerator
        k, den = _strip_q(den)
        num = num.shift(-k)
        g = poly_gcd(num, den)
        if g != ONE:
            num = exact_divide(num, g)
            den = exact_divide(den, g)
        _, den = _strip_q(den)
        if den.coeffs[-1] < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    def is_laurent(self):
        return self.den.is_unit()

    def to_laurent(self):
        if not self.is_laurent():
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        # a reduced unit denominator is exactly 1
        return self.num

    def __add__(self, other):
        other = _as_fraction(other)
        return RationalFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_fraction(other))

    def __rsub__(self, other):
        return _as_fraction(other) - self

    def __mul__(self, other):
        other = _as_fraction(other)
        return RationalFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_fraction(other)
        if not other.num:
            raise ZeroDivisionError("division by zero fraction")
        return RationalFraction(self.num * other.den, self.den * other.num)

    def bar(self):
        return RationalFraction(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        try:
            other = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RationalFraction({format_poly(self.num)!r}, {format_poly(self.den)!r})"


def _as_fraction(x):
    if isinstance(x, RationalFraction):
        return x
    return RationalFraction(LaurentPoly.coerce(x))

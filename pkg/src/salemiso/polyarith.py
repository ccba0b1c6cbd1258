"""Exact polynomial arithmetic over the integers.

Dense arbitrary-precision integer polynomials (coefficients stored
low-to-high, the zero polynomial is the empty tuple), exact rational
intervals, cyclotomic polynomials, the reciprocal-polynomial trace
transform, subresultant gcds and resultants.

No floating point is used anywhere in this module; all enclosure
arithmetic lives in :mod:`salemiso.realroots`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Scalar = Union[int, Fraction]

#: Degree marker of the zero polynomial.  Chosen so that
#: deg(p*q) == deg(p) + deg(q) holds for all polynomials.
NEG_INF = float("-inf")


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, x: Scalar) -> "RatInterval":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def max_with(self, other: "RatInterval") -> "RatInterval":
        """Interval enclosing max(a, b) for a in self, b in other."""
        return RatInterval(max(self.lo, other.lo), max(self.hi, other.hi))

    def power(self, n: int) -> "RatInterval":
        """[lo**n, hi**n]; requires nonnegative endpoints."""
        if self.lo < 0:
            raise ValueError("power() requires a nonnegative interval")
        return RatInterval(self.lo ** n, self.hi ** n)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class IntPoly:
    """Dense integer polynomial; index i holds the coefficient of x**i.

    Instances are immutable.  The zero polynomial is represented by an
    empty coefficient tuple; nonempty tuples never end in zero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {c!r}")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self):
        """Degree; NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                x = "x" if i == 1 else f"x^{i}"
                term = x if mag == 1 else f"{mag}{x}"
            parts.append(f"{sign}{term}" if not parts else f" {sign} {term}")
        return "".join(parts)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly([other])
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, c in enumerate(a):
            if c:
                for j, d in enumerate(b):
                    out[i + j] += c * d
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, v: Scalar) -> Scalar:
        """Exact Horner evaluation at an integer or rational point."""
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    # -- derived quantities ------------------------------------------------

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content_primitive(self) -> tuple[int, "IntPoly"]:
        """(content, primitive part): content > 0, p == content * primitive.

        The primitive part keeps the sign of p, e.g. -4x -> (4, -x).
        """
        if not self:
            raise ValueError("zero polynomial has no content decomposition")
        c = 0
        for a in self.coeffs:
            c = math.gcd(c, a)
        return c, IntPoly([a // c for a in self.coeffs])

    def is_reciprocal(self) -> bool:
        """True iff the coefficient sequence is a palindrome."""
        if not self:
            raise ValueError("zero polynomial")
        return self.coeffs == self.coeffs[::-1]

    def x_valuation(self) -> int:
        """Multiplicity of the root 0 (index of first nonzero coefficient)."""
        if not self:
            raise ValueError("zero polynomial")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unreachable")

    def shift_down(self, k: int) -> "IntPoly":
        """Exact division by x**k."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError(f"not divisible by x^{k}")
        return IntPoly(self.coeffs[k:])


#: The monomial x, handy for building polynomials.
X = IntPoly([0, 1])

ZERO = IntPoly()
ONE = IntPoly([1])


def exact_div(p: IntPoly, q: IntPoly) -> IntPoly:
    """Exact quotient p/q in Z[x]; raises ValueError if q does not divide p."""
    out = try_exact_div(p, q)
    if out is None:
        raise ValueError(f"{q} does not divide {p} over the integers")
    return out


def try_exact_div(p: IntPoly, q: IntPoly) -> IntPoly | None:
    """Exact quotient p/q in Z[x], or None when q does not divide p."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return ZERO
    rem = list(p.coeffs)
    dq = len(q.coeffs) - 1
    qlc = q.lc
    if len(rem) - 1 < dq:
        return None
    quot = [0] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        if rem[k] == 0:
            continue
        t, r = divmod(rem[k], qlc)
        if r:
            return None
        quot[k - dq] = t
        for j, c in enumerate(q.coeffs):
            rem[k - dq + j] -= t * c
    if any(rem):
        return None
    return IntPoly(quot)


def pseudo_rem(p: IntPoly, q: IntPoly) -> IntPoly:
    """Pseudo-remainder: lc(q)**(deg p - deg q + 1) * p modulo q, over Z."""
    if not q:
        raise ZeroDivisionError("pseudo-division by zero")
    dq = len(q.coeffs) - 1
    r = p
    dr = len(p.coeffs) - 1
    if not p or dr < dq:
        return p
    qlc = q.lc
    n = dr - dq + 1
    while r and len(r.coeffs) - 1 >= dq:
        j = len(r.coeffs) - 1 - dq
        shifted = IntPoly([0] * j + list(q.coeffs))
        r = r * qlc - shifted * r.lc
        n -= 1
    return r * qlc ** n if n > 0 else r


def subresultant_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient, by subresultant PRS."""
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    if not p or not q:
        _, prim = (q if not p else p).content_primitive()
        return prim if prim.lc > 0 else -prim
    a, b = p.content_primitive()[1], q.content_primitive()[1]
    if len(a.coeffs) < len(b.coeffs):
        a, b = b, a
    g, h = 1, 1
    while True:
        if len(b.coeffs) - 1 == 0:
            # Nonzero constant: primitive inputs are coprime.
            result = ONE
            break
        delta = (len(a.coeffs) - 1) - (len(b.coeffs) - 1)
        r = pseudo_rem(a, b)
        if not r:
            result = b
            break
        d = g * h ** delta
        a, b = b, IntPoly([c // d for c in r.coeffs])
        g = a.lc
        if delta > 1:
            h = g ** delta // h ** (delta - 1)
        elif delta == 1:
            h = g
    _, result = result.content_primitive()
    return result if result.lc > 0 else -result


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Exact resultant of two nonzero polynomials, by subresultant chain."""
    if not p or not q:
        raise ValueError("resultant of the zero polynomial is undefined")
    dp, dq = len(p.coeffs) - 1, len(q.coeffs) - 1
    if dp == 0 and dq == 0:
        return 1
    if dp == 0:
        return p.lc ** dq
    if dq == 0:
        return q.lc ** dp
    s = 1
    a, b = p, q
    if dp < dq:
        if dp % 2 == 1 and dq % 2 == 1:
            s = -s
        a, b = b, a
    ca, a = a.content_primitive()
    cb, b = b.content_primitive()
    t = ca ** (len(b.coeffs) - 1) * cb ** (len(a.coeffs) - 1)
    g, h = 1, 1
    while True:
        da, db = len(a.coeffs) - 1, len(b.coeffs) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = pseudo_rem(a, b)
        d = g * h ** delta
        a, b = b, (IntPoly([c // d for c in r.coeffs]) if r else ZERO)
        g = a.lc
        if delta > 1:
            h = g ** delta // h ** (delta - 1)
        elif delta == 1:
            h = g
        if not b:
            return 0
        if len(b.coeffs) - 1 == 0:
            da = len(a.coeffs) - 1
            num = b.lc ** da
            den = h ** (da - 1)
            return s * t * (num // den)


def euler_phi(n: int) -> int:
    """Euler totient by trial-division factorization."""
    if n < 1:
        raise ValueError("totient requires n >= 1")
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by iterated exact division of x**n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    p = IntPoly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = exact_div(p, cyclotomic_poly(d))
    return p


def trace_transform(p: IntPoly) -> IntPoly:
    """Reduce a monic reciprocal polynomial of degree 2d to its trace form.

    Returns the monic Q of degree d with p(x) = x**d * Q(x + 1/x).  Roots
    of p on the unit circle map to roots of Q in [-2, 2]; a real pair
    (a, 1/a) with a > 1 maps to a + 1/a > 2.
    """
    if not p:
        raise ValueError("zero polynomial")
    deg = len(p.coeffs) - 1
    if deg % 2 != 0 or deg == 0:
        raise ValueError("trace transform requires even positive degree")
    if not p.is_monic():
        raise ValueError("trace transform requires a monic polynomial")
    if not p.is_reciprocal():
        raise ValueError("trace transform requires a reciprocal polynomial")
    d = deg // 2
    # v[k] = polynomial expressing x**k + x**-k in y = x + 1/x.
    v_prev, v_cur = IntPoly([2]), X
    q = IntPoly([p.coeffs[d]])
    for k in range(1, d + 1):
        q = q + p.coeffs[d + k] * v_cur
        v_prev, v_cur = v_cur, X * v_cur - v_prev
    return q


def expand_trace_form(q: IntPoly) -> IntPoly:
    """Inverse of trace_transform: x**deg(q) * q(x + 1/x), expanded."""
    d = len(q.coeffs) - 1
    if d < 0:
        raise ValueError("zero polynomial")
    out = IntPoly()
    # x**d * (x + 1/x)**k = x**(d-k) * (x**2 + 1)**k
    for k, c in enumerate(q.coeffs):
        if c:
            out = out + c * (IntPoly([0, 1]) ** (d - k)) * (IntPoly([1, 0, 1]) ** k)
    return out

"""Classification of integer polynomials: cyclotomic, Salem, or other.

A Salem polynomial here is monic, irreducible, reciprocal, of even
degree 2d >= 2, with one real root a > 1, its inverse 1/a, and all
remaining roots on the unit circle off +-1.  Degree 2 is admitted;
reports carry definition_variant = "paper" to flag this convention.

Entropy enclosures: the spectral radius of a classified polynomial is
enclosed exactly and its natural logarithm is rendered to a requested
number of certified decimal digits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .factorint import factor_z, is_irreducible, squarefree_decomposition
from .polyarith import (IntPoly, RatInterval, cyclotomic_poly, euler_phi,
                        exact_div, subresultant_gcd, trace_transform)
from .realroots import (RootEnclosure, count_real_roots, count_roots_in,
                        cauchy_bound, isolate_real_roots,
                        max_abs_root_enclosure, refine, sturm_chain)

DEFAULT_WIDTH = Fraction(1, 10 ** 8)
DEFAULT_DIGITS = 6

#: The degree-2 case is part of the Salem definition used throughout.
DEFINITION_VARIANT = "paper"


class PrecisionError(ArithmeticError):
    """An enclosure is too wide to pin the requested digits."""


@dataclass(frozen=True)
class PolyClass:
    """Classification tag of an irreducible factor."""

    kind: str  # "cyclotomic" | "salem" | "other"
    index: int | None = None          # cyclotomic index n with factor == Phi_n
    root: RootEnclosure | None = None  # enclosure of the Salem number

    @classmethod
    def cyclotomic(cls, n: int) -> "PolyClass":
        return cls("cyclotomic", index=n)

    @classmethod
    def salem(cls, root: RootEnclosure) -> "PolyClass":
        return cls("salem", root=root)

    @classmethod
    def other(cls) -> "PolyClass":
        return cls("other")


@dataclass(frozen=True)
class SalemCheck:
    """Outcome of salem_test: an enclosure of the Salem number on
    success, else a machine-readable failure reason."""

    enclosure: RootEnclosure | None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.enclosure is not None


@dataclass(frozen=True)
class FactorReport:
    """Classified factorization of a monic polynomial.

    spectral_radius encloses the maximum root magnitude over all
    factors; entropy_positive holds exactly when it exceeds 1, which for
    products of cyclotomic and Salem factors is equivalent to the
    presence of a Salem factor.  entropy_digits is the decimal expansion
    of log(spectral radius), truncated to the requested digit count and
    certified correct (the true value lies within one final-digit unit
    above the printed string).
    """

    factors: tuple[tuple[IntPoly, int, PolyClass], ...]
    salem_count: int
    spectral_radius: RatInterval
    entropy_positive: bool
    entropy_digits: str
    definition_variant: str = DEFINITION_VARIANT

    def all_cyclotomic(self) -> bool:
        return all(cls.kind == "cyclotomic" for _, _, cls in self.factors)

    def salem_factors(self) -> list[tuple[IntPoly, int, PolyClass]]:
        return [f for f in self.factors if f[2].kind == "salem"]


def is_cyclotomic(p: IntPoly) -> int | None:
    """The index n with p == Phi_n, if any.

    Candidates run over n <= 2*deg(p)**2 + 1 with phi(n) == deg(p); the
    bound is valid because phi(n) >= sqrt(n/2).
    """
    if not p or not p.is_monic():
        raise ValueError("monic polynomial of degree >= 1 required")
    d = len(p.coeffs) - 1
    if d < 1:
        raise ValueError("monic polynomial of degree >= 1 required")
    for n in range(1, 2 * d * d + 2):
        if euler_phi(n) == d and cyclotomic_poly(n) == p:
            return n
    return None


def salem_test(p: IntPoly, width: Fraction | None = None) -> SalemCheck:
    """Decide whether p is a Salem polynomial.

    On success returns an enclosure of the Salem number a > 1 (refined
    below `width` when given).  On failure the reason is one of:
    not-monic, odd-degree, not-reciprocal, root-at-pm1, not-irreducible,
    circle-count-mismatch.
    """
    if not p:
        raise ValueError("zero polynomial")
    if not p.is_monic():
        return SalemCheck(None, "not-monic")
    deg = len(p.coeffs) - 1
    if deg % 2 != 0 or deg == 0:
        return SalemCheck(None, "odd-degree")
    if not p.is_reciprocal():
        return SalemCheck(None, "not-reciprocal")
    if p(1) == 0 or p(-1) == 0:
        return SalemCheck(None, "root-at-pm1")
    if not is_irreducible(p):
        return SalemCheck(None, "not-irreducible")
    d = deg // 2
    q = trace_transform(p)
    if q(2) == 0 or q(-2) == 0:
        return SalemCheck(None, "root-at-pm1")
    chain = sturm_chain(q)
    bound = cauchy_bound(q) + 1
    while q(bound) == 0 or q(-bound) == 0:
        bound += 1
    two = Fraction(2)
    above = chain.variations_at(two) - chain.variations_at(bound)
    below = chain.variations_at(-bound) - chain.variations_at(-two)
    inside = chain.variations_at(-two) - chain.variations_at(two)
    if not (above == 1 and below == 0 and inside == d - 1):
        return SalemCheck(None, "circle-count-mismatch")
    enclosures = isolate_real_roots(p)
    enc = enclosures[-1]  # enclosures are ordered; the Salem number is largest
    if width is not None:
        enc = refine(p, enc, width)
    # Certify the enclosure sits strictly right of 1.
    while enc.interval.lo <= 1:
        enc = refine(p, enc, enc.interval.width / 2)
    return SalemCheck(enc, None)


def _log_constants(err: Fraction) -> tuple[RatInterval, RatInterval]:
    """Enclosures of log(3/2) and log(2) with error below err each."""
    l32 = _log1p_series(Fraction(1, 2), err / 2)
    l43 = _log1p_series(Fraction(1, 3), err / 2)
    l2 = RatInterval(l32.lo + l43.lo, l32.hi + l43.hi)
    return l32, l2


def _log1p_series(u: Fraction, err: Fraction) -> RatInterval:
    """Enclosure of log(1+u) for 0 <= u < 1 by the alternating series,
    with the first omitted term bounding the tail."""
    total = Fraction(0)
    term = u
    k = 1
    sign = 1
    while term / (k + 1) > err and k < 10_000:
        total += sign * term / k
        term *= u
        sign = -sign
        k += 1
    total += sign * term / k
    tail = term * u / (k + 1)
    return RatInterval(total - tail, total + tail)


def log_enclosure(x: Fraction, err: Fraction) -> RatInterval:
    """Certified enclosure of the natural logarithm of a rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("logarithm of a nonpositive value")
    if err <= 0:
        raise ValueError("error bound must be positive")
    if x < 1:
        inner = log_enclosure(1 / x, err)
        return RatInterval(-inner.hi, -inner.lo)
    m = 0
    while x >= 2:
        x /= 2
        m += 1
    j = 0
    while x >= Fraction(3, 2):
        x = x * 2 / 3
        j += 1
    budget = err / (2 * (m + j + 1))
    l32, l2 = _log_constants(budget)
    series = _log1p_series(x - 1, budget)
    lo = m * l2.lo + j * l32.lo + series.lo
    hi = m * l2.hi + j * l32.hi + series.hi
    return RatInterval(lo, hi)


def entropy_digits(sp: RatInterval, digits: int = DEFAULT_DIGITS) -> str:
    """Decimal expansion of log(a) for a in sp, to `digits` digits.

    The returned string s is correctly rounded: the logarithm of every
    point of sp is within half a final-digit unit of s.  Raises
    PrecisionError when sp is too wide to pin that many digits (refine
    sp and retry; the loop terminates for every algebraic a != 1 since
    its logarithm never sits exactly on a decimal boundary).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if sp.lo < 1:
        raise ValueError("spectral radius enclosure must have lo >= 1")
    if sp.lo == 1 and sp.hi == 1:
        return "0." + "0" * digits
    err = Fraction(1, 10 ** (digits + 3))
    lo_log = log_enclosure(sp.lo, err).lo
    hi_log = log_enclosure(sp.hi, err).hi
    scale = 10 ** digits
    lo_rd = (lo_log * scale + Fraction(1, 2)).__floor__()
    hi_rd = (hi_log * scale + Fraction(1, 2)).__floor__()
    if lo_rd != hi_rd:
        raise PrecisionError(
            f"enclosure of width {float(sp.width):.3g} pins only part of "
            f"{digits} digits; refine the input enclosure"
        )
    if lo_rd < 0:
        raise ValueError("negative logarithm for an enclosure with lo >= 1")
    whole, frac = divmod(lo_rd, scale)
    return f"{whole}.{frac:0{digits}d}"


def _classify_factor(f: IntPoly, width: Fraction) -> PolyClass:
    n = is_cyclotomic(f)
    if n is not None:
        return PolyClass.cyclotomic(n)
    check = salem_test(f, width)
    if check:
        return PolyClass.salem(check.enclosure)
    return PolyClass.other()


def _factor_radius(f: IntPoly, cls: PolyClass, width: Fraction) -> RatInterval:
    if cls.kind == "cyclotomic":
        return RatInterval.point(Fraction(1))
    if cls.kind == "salem":
        return cls.root.interval
    relax = width
    while True:
        try:
            return max_abs_root_enclosure(f, relax)
        except ArithmeticError:
            if relax >= 1:
                raise
            relax *= 1024


def classify_poly(p: IntPoly, width: Fraction = DEFAULT_WIDTH,
                  digits: int = DEFAULT_DIGITS) -> FactorReport:
    """Factor a monic polynomial and classify every irreducible factor.

    The spectral radius interval is the max over per-factor enclosures;
    entropy digits are recomputed at shrinking widths until the
    requested digit count is certified.
    """
    if not p or not p.is_monic() or len(p.coeffs) - 1 < 1:
        raise ValueError("monic polynomial of degree >= 1 required")
    width = Fraction(width)
    factorization = factor_z(p)
    classified: list[tuple[IntPoly, int, PolyClass]] = []
    for f, mult in factorization.factors:
        cls = _classify_factor(f, width) if len(f.coeffs) - 1 >= 1 else PolyClass.other()
        classified.append((f, mult, cls))
    salem_count = sum(mult for _, mult, cls in classified if cls.kind == "salem")

    current_width = width
    while True:
        radius: RatInterval | None = None
        for f, _, cls in classified:
            if len(f.coeffs) - 1 < 1:
                continue
            r = _factor_radius(f, cls, current_width)
            radius = r if radius is None else radius.max_with(r)
        if radius is None:
            raise AssertionError("no nonconstant factor in a monic polynomial")
        # Decide positivity: a Salem factor forces lo > 1 after refinement;
        # all-cyclotomic gives exactly [1, 1].
        if radius.lo > 1:
            positive = True
        elif radius.hi == 1:
            positive = False
        elif all(cls.kind != "other" for _, _, cls in classified):
            positive = salem_count > 0
        else:
            # Straddling enclosure from an "other" factor: shrink.
            current_width /= 1024
            classified = [(f, m, _reclassify(f, cls, current_width))
                          for f, m, cls in classified]
            continue
        try:
            digits_str = entropy_digits(radius, digits)
        except PrecisionError:
            current_width /= 1024
            classified = [(f, m, _reclassify(f, cls, current_width))
                          for f, m, cls in classified]
            continue
        return FactorReport(tuple(classified), salem_count, radius,
                            positive, digits_str)


def _reclassify(f: IntPoly, cls: PolyClass, width: Fraction) -> PolyClass:
    """Refresh a Salem classification's enclosure at a smaller width."""
    if cls.kind != "salem":
        return cls
    check = salem_test(f, width)
    return PolyClass.salem(check.enclosure)


def power_min_poly(p: IntPoly, n: int) -> IntPoly:
    """Minimal polynomial of lambda**n for a root lambda of irreducible p.

    Built from the power sums of p's roots: the monic polynomial with
    root multiset {lambda_i**n} is reconstructed by Newton's identities
    and its squarefree part is the minimal polynomial (all lambda_i**n
    share it).  For Salem p and any n >= 1 the result is again Salem of
    the same degree.
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    if not p or not p.is_monic():
        raise ValueError("monic irreducible polynomial required")
    d = len(p.coeffs) - 1
    if d < 1 or not is_irreducible(p):
        raise ValueError("monic irreducible polynomial required")
    if n == 1:
        return p
    # Power sums s_k of p's roots by Newton's identities.
    c = [Fraction(x) for x in p.coeffs]
    s = [Fraction(d)]
    for k in range(1, n * d + 1):
        acc = Fraction(0)
        for i in range(1, min(k - 1, d) + 1):
            acc += c[d - i] * s[k - i]
        if k <= d:
            acc += k * c[d - k]
        s.append(-acc)
    # Elementary symmetric functions of the powered roots.
    e = [Fraction(1)]
    for k in range(1, d + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[n * i]
        e.append(acc / k)
    coeffs = [(-1) ** (d - i) * e[d - i] for i in range(d + 1)]
    assert all(x.denominator == 1 for x in coeffs)
    q = IntPoly([int(x) for x in coeffs])
    g = subresultant_gcd(q, q.derivative())
    if len(g.coeffs) - 1 > 0:
        q = exact_div(q, g)
    factors = factor_z(q).factors
    assert len(factors) == 1 and factors[0][1] == 1, "powered roots split"
    return factors[0][0]

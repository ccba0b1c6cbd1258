"""Certified counting, isolation and refinement of real roots.

Sturm chains over exact integer arithmetic drive all root counting;
enclosures are closed rational intervals.  The spectral radius of a
polynomial (max root magnitude) is enclosed exactly: real candidates by
bisection refinement, non-real ones through the reciprocal trace-form
reduction when available, otherwise by Graeffe root-squaring with
rational 2**k-th root bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .factorint import squarefree_decomposition
from .polyarith import IntPoly, RatInterval, X, exact_div, subresultant_gcd, trace_transform


@dataclass(frozen=True)
class RootEnclosure:
    """Interval certified to contain exactly `multiplicity` roots.

    For squarefree inputs multiplicity is 1 and the (non-degenerate)
    endpoints are not roots; a degenerate [r, r] interval records a
    rational root hit exactly.
    """

    interval: RatInterval
    multiplicity: int = 1

    @property
    def is_exact(self) -> bool:
        return self.interval.lo == self.interval.hi


@dataclass(frozen=True)
class SturmChain:
    """Primitive parts of the signed polynomial remainder sequence."""

    polys: tuple[IntPoly, ...]

    def variations_at(self, t: Fraction) -> int:
        signs = []
        for q in self.polys:
            v = q(t)
            if v:
                signs.append(v > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at_neg_inf(self) -> int:
        signs = []
        for q in self.polys:
            s = q.lc if (len(q.coeffs) - 1) % 2 == 0 else -q.lc
            if s:
                signs.append(s > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at_pos_inf(self) -> int:
        signs = [q.lc > 0 for q in self.polys if q.lc]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signed_primitive(coeffs: list[Fraction]) -> IntPoly:
    """Scale a rational polynomial by a positive rational to a primitive
    integer polynomial, preserving sign."""
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return IntPoly()
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return IntPoly([c // g for c in ints])


def _rational_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive integer image of the remainder of a by b over Q,
    positive scaling only (sign preserved)."""
    rem = [Fraction(c) for c in a.coeffs]
    db = len(b.coeffs) - 1
    blc = Fraction(b.lc)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            t = c / blc
            for j, d in enumerate(b.coeffs):
                rem[k - db + j] -= t * d
        rem[k] = Fraction(0)
    return _signed_primitive(rem[:db])


def sturm_chain(p: IntPoly) -> SturmChain:
    """Sturm chain of a squarefree polynomial of degree >= 1."""
    if not p or len(p.coeffs) - 1 < 1:
        raise ValueError("degree >= 1 required")
    g = subresultant_gcd(p, p.derivative())
    if len(g.coeffs) - 1 != 0:
        raise ValueError("input is not squarefree; pass the squarefree part")
    chain = [p.content_primitive()[1], p.derivative().content_primitive()[1]]
    while True:
        r = _rational_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(-r)
        if len(chain[-1].coeffs) == 1:
            break
    return SturmChain(tuple(chain))


def count_roots_in(chain: SturmChain, iv: RatInterval) -> int:
    """Distinct real roots in the open interval; endpoints must not be roots."""
    p = chain.polys[0]
    if p(iv.lo) == 0 or p(iv.hi) == 0:
        raise ValueError("interval endpoint is a root")
    return chain.variations_at(iv.lo) - chain.variations_at(iv.hi)


def count_real_roots(chain: SturmChain) -> int:
    """Total number of distinct real roots."""
    return chain.variations_at_neg_inf() - chain.variations_at_pos_inf()


def cauchy_bound(p: IntPoly) -> Fraction:
    """1 + max|c_i| / |lc|: every root has absolute value below this."""
    if not p or len(p.coeffs) - 1 < 1:
        raise ValueError("degree >= 1 required")
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), abs(p.lc))


def _isolate_squarefree(q: IntPoly) -> list[tuple[RatInterval, IntPoly]]:
    """Disjoint isolating intervals for the distinct real roots of a
    squarefree q; each is returned with the (possibly deflated) witness
    polynomial whose sign change certifies it."""
    exact: list[Fraction] = []
    for r in (0, 1, -1):
        if q(r) == 0:
            exact.append(Fraction(r))
            q = exact_div(q, IntPoly([-r, 1]))
    while True:
        out: list[tuple[RatInterval, IntPoly]] = []
        if len(q.coeffs) - 1 < 1:
            break
        bound = cauchy_bound(q)
        while q(bound) == 0 or q(-bound) == 0:
            bound += 1
        chain = sturm_chain(q)
        stack = [(-bound, bound)]
        restart = False
        while stack:
            lo, hi = stack.pop()
            n = chain.variations_at(lo) - chain.variations_at(hi)
            if n == 0:
                continue
            if n == 1 and not any(lo < r < hi for r in exact):
                out.append((RatInterval(lo, hi), q))
                continue
            mid = (lo + hi) / 2
            if q(mid) == 0:
                # Rational root hit exactly: emit it, deflate, start over.
                exact.append(mid)
                q = exact_div(q, IntPoly([-mid.numerator, mid.denominator]))
                restart = True
                break
            stack.append((lo, mid))
            stack.append((mid, hi))
        if not restart:
            break
    result = [(RatInterval.point(r), q) for r in exact]
    result.extend(out if len(q.coeffs) - 1 >= 1 else [])
    result.sort(key=lambda pair: pair[0].lo)
    return result


def _bisect_once(iv: RatInterval, q: IntPoly) -> RatInterval:
    """Halve an isolating interval of q, keeping the sign change."""
    if iv.lo == iv.hi:
        return iv
    mid = iv.midpoint
    vm = q(mid)
    if vm == 0:
        return RatInterval.point(mid)
    if (q(iv.lo) > 0) != (vm > 0):
        return RatInterval(iv.lo, mid)
    return RatInterval(mid, iv.hi)


def isolate_real_roots(p: IntPoly) -> list[RootEnclosure]:
    """Disjoint isolating enclosures for all distinct real roots of p.

    Multiplicities come from the squarefree decomposition; rational roots
    the bisection lands on exactly are reported as degenerate intervals.
    """
    if not p or len(p.coeffs) - 1 < 1:
        raise ValueError("degree >= 1 required")
    found: list[tuple[RatInterval, IntPoly, int]] = []
    for part, mult in squarefree_decomposition(p):
        for iv, witness in _isolate_squarefree(part):
            found.append((iv, witness, mult))
    # Enclosures of distinct parts may still overlap; shrink until disjoint.
    changed = True
    while changed:
        changed = False
        for i in range(len(found)):
            for j in range(i + 1, len(found)):
                a, b = found[i], found[j]
                if a[0].intersects(b[0]):
                    found[i] = (_bisect_once(a[0], a[1]), a[1], a[2])
                    found[j] = (_bisect_once(b[0], b[1]), b[1], b[2])
                    changed = True
    found.sort(key=lambda t: t[0].lo)
    return [RootEnclosure(iv, mult) for iv, _, mult in found]


def refine(p: IntPoly, e: RootEnclosure, width: Fraction) -> RootEnclosure:
    """Shrink an enclosure of a single simple root of p below `width`,
    by bisection with exact sign evaluation."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    iv = e.interval
    if iv.lo == iv.hi:
        return e
    slo, shi = p(iv.lo), p(iv.hi)
    if slo == 0 or shi == 0 or (slo > 0) == (shi > 0):
        raise ValueError("enclosure does not carry a sign-change certificate")
    lo, hi = iv.lo, iv.hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        vm = p(mid)
        if vm == 0:
            return RootEnclosure(RatInterval.point(mid), e.multiplicity)
        if (vm > 0) == (slo > 0):
            lo = mid
        else:
            hi = mid
    return RootEnclosure(RatInterval(lo, hi), e.multiplicity)


def _magnitude(iv: RatInterval) -> RatInterval:
    """Interval of |x| over x in iv."""
    if iv.lo >= 0:
        return iv
    if iv.hi <= 0:
        return RatInterval(-iv.hi, -iv.lo)
    return RatInterval(Fraction(0), max(-iv.lo, iv.hi))


def _nth_root_floor(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _nth_root_interval(x: Fraction, k: int, scale_bits: int) -> RatInterval:
    """Rational enclosure of x**(1/k) for x >= 0, with denominator 2**scale_bits."""
    if x < 0:
        raise ValueError("negative radicand")
    s = 1 << scale_bits
    m = (x.numerator * s ** k) // x.denominator
    lo = _nth_root_floor(m, k)
    if Fraction(lo, 1) ** k * x.denominator == x.numerator * s ** k:
        v = Fraction(lo, s)
        return RatInterval(v, v)
    return RatInterval(Fraction(lo, s), Fraction(lo + 1, s))


def _sqrt_interval(iv: RatInterval, scale_bits: int) -> RatInterval:
    """Outward-rounded enclosure of sqrt over a nonnegative interval."""
    s = 1 << scale_bits
    lo_scaled = (iv.lo.numerator * s * s) // iv.lo.denominator
    lo = Fraction(math.isqrt(lo_scaled), s)
    hi_scaled = -((-iv.hi.numerator * s * s) // iv.hi.denominator)
    r = math.isqrt(hi_scaled)
    if r * r < hi_scaled:
        r += 1
    return RatInterval(lo, Fraction(r, s))


def _graeffe(p: IntPoly) -> IntPoly:
    """Root-squaring step: returns g with g(x**2) = +/- p(x)p(-x)."""
    even = IntPoly(p.coeffs[0::2])
    odd = IntPoly(p.coeffs[1::2])
    g = even * even - X * odd * odd
    return g if g.lc > 0 else -g


def _graeffe_level_bounds(g: IntPoly, k: int, bits: int) -> RatInterval:
    """Enclosure of max |root of the original q| from the k-th Graeffe
    iterate g: two-sided coefficient-ratio bounds on max |root of g|,
    then k outward square roots."""
    n = len(g.coeffs) - 1
    lc = abs(g.lc)
    f_lo: Fraction | None = None
    f_hi: Fraction | None = None
    for j in range(1, n + 1):
        c = g.coeffs[n - j]
        if c == 0:
            continue
        iv = _nth_root_interval(Fraction(abs(c), lc), j, bits)
        if f_hi is None or iv.hi > f_hi:
            f_hi = iv.hi
        if f_lo is None or iv.lo > f_lo:
            f_lo = iv.lo
    if f_lo is None:
        return RatInterval.point(Fraction(0))  # g == c*x^n
    # max|root of g| lies in [F / 2^n, 2F] for F = max_j |c_{n-j}/lc|^(1/j).
    enc = RatInterval(f_lo / 2 ** n, 2 * f_hi)
    for _ in range(k):
        enc = _sqrt_interval(enc, bits)
    return enc


#: Per-coefficient bit budget for Graeffe iterates; beyond this the
#: doubly-exponential growth makes the enclosure impractical.
_GRAEFFE_BIT_BUDGET = 1 << 22


def _graeffe_radius(q: IntPoly, width: Fraction, max_iters: int = 30) -> RatInterval:
    """Enclosure of max |root| of q via Graeffe root-squaring, iterated
    until the two-sided bound meets the requested width.

    Tight widths on polynomials whose spectral radius is attained only at
    non-real roots require exponentially large iterates; such requests
    fail fast with ArithmeticError instead of exhausting memory.
    """
    n = len(q.coeffs) - 1
    bits = max(64, (width.denominator // max(1, width.numerator)).bit_length() + n + 16)
    g = q
    k = 0
    probe = _graeffe_level_bounds(g, 0, bits)
    if probe.width <= width:
        return probe
    # Ratio of the level-k bound is (2^(n+1))^(1/2^k); jump near the
    # level where that meets the target before checking each level.
    need = (n + 1) * max(1, math.ceil(probe.hi / width))
    k_jump = min(max_iters, max(0, need.bit_length()))
    base_bits = max(abs(c).bit_length() for c in q.coeffs)
    if (base_bits << k_jump) > _GRAEFFE_BIT_BUDGET:
        raise ArithmeticError(
            "Graeffe enclosure cannot reach the requested width within the "
            "coefficient budget; the spectral radius is attained at "
            "non-real roots only"
        )
    for _ in range(k_jump):
        g = _graeffe(g)
        k += 1
    while True:
        enc = _graeffe_level_bounds(g, k, bits)
        if enc.width <= width:
            return enc
        glc_bits = max(abs(c).bit_length() for c in g.coeffs)
        if k >= max_iters or 2 * glc_bits > _GRAEFFE_BIT_BUDGET:
            raise ArithmeticError(
                "Graeffe enclosure did not reach the requested width; "
                "the spectral radius is attained at non-real roots only"
            )
        g = _graeffe(g)
        k += 1


def max_abs_root_enclosure(p: IntPoly, width: Fraction) -> RatInterval:
    """Certified enclosure of the spectral radius (max |root|) of p.

    Real candidates are refined by bisection.  When p reduces to trace
    form with all-real image, the non-real roots lie on the unit circle
    and contribute exactly [1, 1]; otherwise Graeffe iteration bounds
    them, doubling precision until the requested width is met.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if not p or len(p.coeffs) - 1 < 1:
        raise ValueError("degree >= 1 required")
    g = subresultant_gcd(p, p.derivative())
    q = exact_div(p, g) if len(g.coeffs) - 1 > 0 else p
    _, q = q.content_primitive()
    if q.lc < 0:
        q = -q
    v = q.x_valuation()
    candidates: list[RatInterval] = []
    if v:
        q = q.shift_down(v)
        candidates.append(RatInterval.point(Fraction(0)))
    if len(q.coeffs) - 1 == 0:
        return candidates[0]
    real = isolate_real_roots(q)
    for e in real:
        refined = refine(q, e, width)
        candidates.append(_magnitude(refined.interval))
    n_nonreal = (len(q.coeffs) - 1) - len(real)
    if n_nonreal:
        handled = False
        if q.is_monic() and (len(q.coeffs) - 1) % 2 == 0 and q.is_reciprocal():
            t = trace_transform(q)
            if len(t.coeffs) - 1 >= 1:
                tg = subresultant_gcd(t, t.derivative())
                tsf = exact_div(t, tg) if len(tg.coeffs) - 1 > 0 else t
                chain = sturm_chain(tsf)
                if count_real_roots(chain) == len(tsf.coeffs) - 1:
                    # All non-real roots of q lie on the unit circle.
                    candidates.append(RatInterval.point(Fraction(1)))
                    handled = True
        if not handled:
            candidates.append(_graeffe_radius(q, width))
    out = candidates[0]
    for c in candidates[1:]:
        out = out.max_with(c)
    return out

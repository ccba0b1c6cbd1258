"""Certified real-root machinery: Sturm chains, isolation, refinement,
spectral-radius enclosures."""
import random
from fractions import Fraction

import pytest

from salemiso.polyarith import IntPoly, RatInterval, X, cyclotomic_poly, subresultant_gcd
from salemiso.realroots import (RootEnclosure, cauchy_bound, count_real_roots,
                                count_roots_in, isolate_real_roots,
                                max_abs_root_enclosure, refine, sturm_chain)

P22 = IntPoly([1, -27, 0, 4, 3, 24, 15, -7, 1, -14, -2, -5, -2, -14,
               1, -7, 15, 24, 3, 4, 0, -27, 1])
GOLDEN = IntPoly([1, -3, 1])  # roots (3 +- sqrt 5)/2


def interval(a, b):
    return RatInterval(Fraction(a), Fraction(b))


class TestSturmChain:
    def test_x2_minus_2_chain(self):
        # Oracle: direct remainder computation gives [x^2-2, 2x, 2] up to
        # positive scaling.
        chain = sturm_chain(IntPoly([-2, 0, 1])).polys
        assert chain[0] == IntPoly([-2, 0, 1])
        assert chain[1].coeffs in ((0, 1), (0, 2))
        assert chain[2].degree == 0 and chain[2].lc > 0
        assert len(chain) == 3

    def test_monomial(self):
        assert len(sturm_chain(X).polys) == 2

    def test_degree_one(self):
        assert len(sturm_chain(IntPoly([7, 3])).polys) == 2

    def test_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            sturm_chain((X - 1) ** 2)


class TestCounting:
    def test_sqrt_two_in_unit_box(self):
        chain = sturm_chain(IntPoly([-2, 0, 1]))
        assert count_roots_in(chain, interval(0, 2)) == 1
        assert count_roots_in(chain, interval(-2, 0)) == 1

    def test_no_real_roots(self):
        chain = sturm_chain(IntPoly([1, 0, 1]))
        assert count_roots_in(chain, interval(-10, 10)) == 0

    def test_p22_root_in_26_27(self):
        chain = sturm_chain(P22)
        assert count_roots_in(chain, interval(26, 27)) == 1
        assert count_real_roots(chain) == 2

    def test_endpoint_root_rejected(self):
        chain = sturm_chain(X - 1)
        with pytest.raises(ValueError):
            count_roots_in(chain, interval(1, 2))


class TestIsolation:
    def test_golden_quadratic_two_roots(self):
        # Oracle: quadratic formula puts the roots near 0.382 and 2.618.
        enclosures = isolate_real_roots(GOLDEN)
        assert len(enclosures) == 2
        lo = refine(GOLDEN, enclosures[0], Fraction(1, 8)).interval
        hi = refine(GOLDEN, enclosures[1], Fraction(1, 8)).interval
        assert 0 < lo.lo and lo.hi < 1
        assert 2 < hi.lo and hi.hi < 3

    def test_no_real_roots_empty(self):
        assert isolate_real_roots(IntPoly([1, 0, 1])) == []

    def test_rational_root_landed_exactly(self):
        out = isolate_real_roots(X - 1)
        assert len(out) == 1 and out[0].is_exact
        assert out[0].interval.lo == 1

    def test_multiplicities_from_squarefree_parts(self):
        out = isolate_real_roots((X - 1) ** 3 * (X + 2))
        mults = sorted((e.interval.lo == e.interval.hi, e.multiplicity) for e in out)
        assert [m for _, m in mults] == [1, 3]

    def test_disjoint_and_counted(self):
        rng = random.Random(21)
        for _ in range(200):
            d = rng.randint(1, 8)
            p = IntPoly([rng.randint(-9, 9) for _ in range(d)] + [rng.randint(1, 9)])
            g = subresultant_gcd(p, p.derivative())
            if g.degree != 0:
                continue
            enclosures = isolate_real_roots(p)
            assert len(enclosures) == count_real_roots(sturm_chain(p))
            for a, b in zip(enclosures, enclosures[1:]):
                assert a.interval.hi < b.interval.lo or (
                    a.interval.hi == b.interval.lo
                    and not a.interval.intersects(b.interval))
            for e in enclosures:
                iv = e.interval
                if iv.lo == iv.hi:
                    assert p(iv.lo) == 0
                else:
                    assert p(iv.lo) != 0 and p(iv.hi) != 0
                    assert (p(iv.lo) > 0) != (p(iv.hi) > 0)

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            isolate_real_roots(IntPoly([3]))


class TestRefine:
    def test_nested_and_width(self):
        e = isolate_real_roots(IntPoly([-2, 0, 1]))[-1]
        out = refine(IntPoly([-2, 0, 1]), e, Fraction(1, 1000))
        assert out.interval.width <= Fraction(1, 1000)
        assert e.interval.lo <= out.interval.lo and out.interval.hi <= e.interval.hi
        # sqrt(2) = 1.41421...
        assert out.interval.lo < Fraction(1414214, 10 ** 6) < out.interval.hi \
            or out.interval.contains(Fraction(14142135, 10 ** 7))

    def test_p22_salem_root_to_1e6(self):
        enclosure = isolate_real_roots(P22)[-1]
        out = refine(P22, enclosure, Fraction(1, 10 ** 6))
        assert out.interval.width <= Fraction(1, 10 ** 6)
        lo4 = (out.interval.lo * 10 ** 4).__floor__()
        hi4 = (out.interval.hi * 10 ** 4).__floor__()
        assert lo4 == hi4 == 269943

    def test_degenerate_returned_unchanged(self):
        e = RootEnclosure(RatInterval(Fraction(1), Fraction(1)))
        assert refine(X - 1, e, Fraction(1, 10)) == e

    def test_bad_width(self):
        e = isolate_real_roots(GOLDEN)[0]
        with pytest.raises(ValueError):
            refine(GOLDEN, e, Fraction(0))

    def test_certificate_endpoints(self):
        rng = random.Random(22)
        for _ in range(50):
            p = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))]
                        + [rng.randint(1, 9)])
            if subresultant_gcd(p, p.derivative()).degree != 0:
                continue
            for e in isolate_real_roots(p):
                out = refine(p, e, Fraction(1, 64))
                iv = out.interval
                if iv.lo != iv.hi:
                    assert (p(iv.lo) > 0) != (p(iv.hi) > 0)


class TestMaxAbsRoot:
    def test_golden_spectral_radius(self):
        # Oracle: (3 + sqrt 5)/2 = 2.6180339887...
        enc = max_abs_root_enclosure(GOLDEN, Fraction(1, 10 ** 6))
        assert enc.width <= Fraction(1, 10 ** 6)
        assert enc.lo < Fraction(26180340, 10 ** 7) < enc.hi \
            or enc.contains(Fraction(2618034, 10 ** 6)) \
            or (enc.lo * 10 ** 6).__floor__() == 2618033

    def test_cyclotomic_unit_circle(self):
        enc = max_abs_root_enclosure(cyclotomic_poly(12), Fraction(1, 10 ** 8))
        assert enc.contains(1) and enc.width <= Fraction(1, 10 ** 8)

    def test_p22(self):
        enc = max_abs_root_enclosure(P22, Fraction(1, 10 ** 8))
        assert (enc.lo * 10 ** 4).__floor__() == 269943
        assert enc.width <= Fraction(1, 10 ** 8)

    def test_pure_monomial(self):
        enc = max_abs_root_enclosure(X ** 4, Fraction(1, 10))
        assert enc.lo == enc.hi == 0

    def test_complex_dominant_graeffe(self):
        # x^2 + 2: both roots have magnitude sqrt(2) = 1.4142135...
        enc = max_abs_root_enclosure(IntPoly([2, 0, 1]), Fraction(1, 1000))
        assert enc.width <= Fraction(1, 1000)
        assert enc.lo <= Fraction(14143, 10 ** 4) and enc.hi >= Fraction(14142, 10 ** 4)

    def test_cauchy_bound(self):
        assert cauchy_bound(IntPoly([1, -3, 1])) == 4
        with pytest.raises(ValueError):
            cauchy_bound(IntPoly([5]))

"""Exact polynomial arithmetic: ring operations, gcds, resultants,
cyclotomic polynomials, the trace transform."""
import math
import random
from fractions import Fraction

import pytest

from salemiso.polyarith import (IntPoly, ONE, RatInterval, X, cyclotomic_poly,
                                euler_phi, exact_div, expand_trace_form, pseudo_rem,
                                resultant, subresultant_gcd, trace_transform)

P22 = IntPoly([1, -27, 0, 4, 3, 24, 15, -7, 1, -14, -2, -5, -2, -14,
               1, -7, 15, 24, 3, 4, 0, -27, 1])
Q20 = IntPoly([1, -11, 10, -9, 9, -10, 15, -23, 19, -14, 14, -14, 19,
               -23, 15, -10, 9, -9, 10, -11, 1])
FQ3 = IntPoly([1, 1, 1]) * Q20


def random_poly(rng, max_deg=8, coeff=9, monic=False):
    d = rng.randint(0, max_deg)
    coeffs = [rng.randint(-coeff, coeff) for _ in range(d)]
    coeffs.append(1 if monic else rng.choice([c for c in range(-coeff, coeff + 1) if c]))
    return IntPoly(coeffs)


class TestRingOps:
    def test_add_cancellation(self):
        assert (X + 1) + (X - 1) == 2 * X

    def test_add_identity(self):
        p = IntPoly([3, 0, 2])
        assert IntPoly() + p == p

    def test_add_to_zero(self):
        assert (X ** 2) + (-(X ** 2)) == IntPoly()
        assert ((X ** 2) + (-(X ** 2))).coeffs == ()

    def test_mul_identity(self):
        assert ONE * P22 == P22

    def test_mul_difference_of_squares(self):
        assert (X - 1) * (X + 1) == X ** 2 - 1

    def test_mul_degree_additive(self):
        rng = random.Random(1)
        for _ in range(200):
            p, q = random_poly(rng), random_poly(rng)
            assert (p * q).degree == p.degree + q.degree

    def test_mul_commutative_associative(self):
        rng = random.Random(2)
        for _ in range(100):
            p, q, r = (random_poly(rng, 5) for _ in range(3))
            assert p * q == q * p
            assert (p * q) * r == p * (q * r)

    def test_fq3_product_matches_printed_coefficients(self):
        assert FQ3.coeffs == (1, -10, 0, -10, 10, -10, 14, -18, 11, -18, 19,
                              -14, 19, -18, 11, -18, 14, -10, 10, -10, 0, -10, 1)


class TestEval:
    def test_fq3_at_one_is_minus_36(self):
        # Independent oracle: column sums of the coefficient convolution.
        convolution_sum = sum(a * b for a in (1, 1, 1) for b in Q20.coeffs)
        assert convolution_sum == -36
        assert FQ3(1) == -36
        assert FQ3(1) != 0  # 1 is not a zero

    def test_constant_term(self):
        assert IntPoly([1, -3, 1])(0) == 1

    def test_p22_at_one_matches_coefficient_sum(self):
        assert P22(1) == sum(P22.coeffs) == -9

    def test_rational_point(self):
        assert IntPoly([1, -3, 1])(Fraction(1, 2)) == Fraction(-1, 4)


class TestDerivativeContent:
    def test_derivative(self):
        assert (X ** 2).derivative() == 2 * X
        assert IntPoly([5]).derivative() == IntPoly()
        assert IntPoly([1, -3, 1]).derivative() == IntPoly([-3, 2])

    def test_content_positive_sign_on_primitive(self):
        assert IntPoly([4, 2]).content_primitive() == (2, IntPoly([2, 1]))
        assert P22.content_primitive() == (1, P22)
        # Oracle: gcd of coefficients, content positive, sign on the part.
        assert IntPoly([0, -4]).content_primitive() == (4, IntPoly([0, -1]))

    def test_content_roundtrip_random(self):
        rng = random.Random(3)
        for _ in range(200):
            p = random_poly(rng)
            c, q = p.content_primitive()
            assert c * q == p
            assert q.content_primitive()[0] == 1

    def test_content_of_zero_rejected(self):
        with pytest.raises(ValueError):
            IntPoly().content_primitive()


class TestReciprocal:
    def test_p22_is_palindromic(self):
        assert P22.is_reciprocal()
        assert Q20.is_reciprocal()

    def test_non_palindrome(self):
        assert not IntPoly([-2, 1]).is_reciprocal()
        assert IntPoly([1, 1, 1]).is_reciprocal()


class TestTraceTransform:
    def test_quadratic(self):
        assert trace_transform(IntPoly([1, -3, 1])) == IntPoly([-3, 1])

    def test_roots_at_i(self):
        assert trace_transform(IntPoly([1, 0, 1])) == X

    def test_p22_gives_monic_degree_11(self):
        q = trace_transform(P22)
        assert q.degree == 11 and q.is_monic()

    def test_roundtrip_random_reciprocal(self):
        rng = random.Random(4)
        for _ in range(300):
            d = rng.randint(1, 6)
            upper = [rng.randint(-9, 9) for _ in range(d - 1)] + [1]
            mid = rng.randint(-9, 9)
            p = IntPoly(upper[::-1] + [mid] + upper)
            assert p.is_monic() and p.is_reciprocal()
            assert expand_trace_form(trace_transform(p)) == p

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            trace_transform(IntPoly([1, 1]))  # odd degree
        with pytest.raises(ValueError):
            trace_transform(IntPoly([2, 1, 2]))  # not monic
        with pytest.raises(ValueError):
            trace_transform(IntPoly([2, 3, 1]))  # not reciprocal


class TestGcd:
    def test_gcd_with_zero(self):
        p = IntPoly([2, -6, 2])
        assert subresultant_gcd(p, IntPoly()) == IntPoly([1, -3, 1])

    def test_shared_linear_factor(self):
        assert subresultant_gcd((X - 1) ** 2, (X - 1) * (X + 1)) == X - 1

    def test_p22_squarefree_with_modular_oracle(self):
        assert subresultant_gcd(P22, P22.derivative()) == ONE
        # Oracle: monic gcd mod 10007 computed independently.
        p = 10007
        a = [c % p for c in P22.coeffs]
        b = [c % p for c in P22.derivative().coeffs]

        def gf_rem(u, v):
            u = u[:]
            inv = pow(v[-1], -1, p)
            while len(u) >= len(v) and any(u):
                if u[-1] == 0:
                    u.pop()
                    continue
                t = u[-1] * inv % p
                off = len(u) - len(v)
                for i, c in enumerate(v):
                    u[off + i] = (u[off + i] - t * c) % p
                u.pop()
            while u and u[-1] == 0:
                u.pop()
            return u

        while b:
            a, b = b, gf_rem(a, b)
        assert len(a) == 1  # constant gcd mod p

    def test_divides_both_inputs(self):
        rng = random.Random(5)
        for _ in range(100):
            common = random_poly(rng, 3)
            p = common * random_poly(rng, 3)
            q = common * random_poly(rng, 3)
            if not p or not q:
                continue
            g = subresultant_gcd(p, q)
            assert g.lc > 0 and g.content_primitive()[0] == 1
            assert pseudo_rem(p, g) == IntPoly()
            assert pseudo_rem(q, g) == IntPoly()


def sylvester_resultant(p: IntPoly, q: IntPoly) -> int:
    """Oracle: determinant of the Sylvester matrix by fraction-free
    Gaussian elimination."""
    m, n = p.degree, q.degree
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return p.lc ** n
    if n == 0:
        return q.lc ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(p.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(q.coeffs)):
            row[i + j] = c
        rows.append(row)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, size):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return det.numerator


class TestResultant:
    def test_linear_pair(self):
        # res(x - a, x - b) = a - b
        for a, b in [(2, 5), (-1, 4), (0, 7)]:
            assert resultant(IntPoly([-a, 1]), IntPoly([-b, 1])) == a - b

    def test_against_constant(self):
        assert resultant(P22, ONE) == 1

    def test_quadratics_sylvester_oracle(self):
        assert resultant(IntPoly([1, -3, 1]), IntPoly([1, -7, 1])) == 16
        assert sylvester_resultant(IntPoly([1, -3, 1]), IntPoly([1, -7, 1])) == 16

    def test_random_sylvester_oracle(self):
        rng = random.Random(6)
        for _ in range(300):
            p = random_poly(rng, 5, 6)
            q = random_poly(rng, 5, 6)
            assert resultant(p, q) == sylvester_resultant(p, q)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            resultant(IntPoly(), X)


class TestCyclotomic:
    def test_first_indices(self):
        assert cyclotomic_poly(1) == X - 1
        assert cyclotomic_poly(3) == IntPoly([1, 1, 1])

    def test_phi_12_by_division_oracle(self):
        x12 = X ** 12 - 1
        quotient = x12
        for d in (1, 2, 3, 4, 6):
            quotient = exact_div(quotient, cyclotomic_poly(d))
        assert quotient == IntPoly([1, 0, -1, 0, 1])
        assert cyclotomic_poly(12) == quotient

    def test_divides_x_n_minus_one_and_degree(self):
        for n in range(1, 60):
            phi = cyclotomic_poly(n)
            assert phi.is_monic()
            assert phi.degree == euler_phi(n)
            assert exact_div(X ** n - 1, phi) is not None

    def test_bad_index(self):
        with pytest.raises(ValueError):
            cyclotomic_poly(0)


class TestEulerPhi:
    def test_small_values(self):
        assert euler_phi(1) == 1
        assert euler_phi(23) == 22
        assert euler_phi(66) == 20

    def test_counting_oracle(self):
        for n in range(1, 200):
            count = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
            assert euler_phi(n) == count


class TestRatInterval:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            RatInterval(Fraction(1), Fraction(0))

    def test_width_contains_intersects(self):
        iv = RatInterval(Fraction(1, 3), Fraction(1, 2))
        assert iv.width == Fraction(1, 6)
        assert iv.contains(Fraction(2, 5))
        assert iv.intersects(RatInterval(Fraction(1, 2), Fraction(1)))
        assert not iv.intersects(RatInterval(Fraction(2), Fraction(3)))

    def test_power_and_max(self):
        iv = RatInterval(Fraction(2), Fraction(3))
        assert iv.power(2) == RatInterval(Fraction(4), Fraction(9))
        assert iv.max_with(RatInterval(Fraction(1), Fraction(5))) == \
            RatInterval(Fraction(2), Fraction(5))

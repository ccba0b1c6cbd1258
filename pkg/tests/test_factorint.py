"""Factorization over the integers: squarefree decomposition, modular
splitting, Hensel lifting, Zassenhaus recombination."""
import random

import pytest

from salemiso.factorint import (Factorization, factor_mod_p, factor_z, hensel_lift,
                                is_irreducible, squarefree_decomposition)
from salemiso.polyarith import IntPoly, X, cyclotomic_poly

P22 = IntPoly([1, -27, 0, 4, 3, 24, 15, -7, 1, -14, -2, -5, -2, -14,
               1, -7, 15, 24, 3, 4, 0, -27, 1])
Q20 = IntPoly([1, -11, 10, -9, 9, -10, 15, -23, 19, -14, 14, -14, 19,
               -23, 15, -10, 9, -9, 10, -11, 1])
FQ3 = IntPoly([1, 1, 1]) * Q20


class TestSquarefree:
    def test_simple_powers(self):
        assert squarefree_decomposition((X - 1) ** 2 * (X + 1)) == \
            [(X + 1, 1), (X - 1, 2)]
        assert squarefree_decomposition(X ** 3) == [(X, 3)]

    def test_squarefree_passthrough(self):
        p = IntPoly([1, -3, 1])
        assert squarefree_decomposition(p) == [(p, 1)]

    def test_weighted_product_reconstructs(self):
        rng = random.Random(11)
        for _ in range(100):
            p = IntPoly([1])
            for _ in range(rng.randint(1, 3)):
                base = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))]
                               + [rng.randint(1, 4)])
                p = p * base ** rng.randint(1, 3)
            parts = squarefree_decomposition(p)
            rebuilt = IntPoly([1])
            for q, m in parts:
                rebuilt = rebuilt * q ** m
            assert rebuilt == p.content_primitive()[1]

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            squarefree_decomposition(IntPoly())


class TestFactorModP:
    def test_x2_plus_1_mod_5(self):
        # Oracle: exhaustive root search mod 5 finds {2, 3}.
        roots = [r for r in range(5) if (r * r + 1) % 5 == 0]
        assert roots == [2, 3]
        assert factor_mod_p(IntPoly([1, 0, 1]), 5) == \
            [IntPoly([2, 1]), IntPoly([3, 1])]

    def test_x2_plus_1_mod_3_irreducible(self):
        assert [r for r in range(3) if (r * r + 1) % 3 == 0] == []
        assert factor_mod_p(IntPoly([1, 0, 1]), 3) == [IntPoly([1, 0, 1])]

    def test_monomial(self):
        assert factor_mod_p(X, 7) == [X]

    def test_bad_prime_rejected(self):
        with pytest.raises(ValueError):
            factor_mod_p(IntPoly([1, 0, 5]), 5)  # lc vanishes
        with pytest.raises(ValueError):
            factor_mod_p(IntPoly([1, 2, 1]), 2)  # (x+1)^2 mod 2

    def test_product_reconstructs_mod_p(self):
        rng = random.Random(12)
        for _ in range(60):
            p = 11
            f = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 8))] + [1])
            try:
                factors = factor_mod_p(f, p, seed=3)
            except ValueError:
                continue  # not squarefree mod 11
            prod = IntPoly([f.lc % p])
            for g in factors:
                prod = IntPoly([c % p for c in (prod * g).coeffs])
            assert prod == IntPoly([c % p for c in f.coeffs])

    def test_seed_determinism(self):
        f = (X ** 2 + 1) * (X ** 2 + X + 2) * (X + 3)
        a = factor_mod_p(f, 13, seed=42)
        b = factor_mod_p(f, 13, seed=42)
        assert a == b


class TestHensel:
    def test_lift_x2_plus_1_to_625(self):
        # Oracle: r*r = -1 mod 625 has solutions {182, 443}.
        assert [r for r in range(625) if (r * r + 1) % 625 == 0] == [182, 443]
        lifted = hensel_lift([IntPoly([2, 1]), IntPoly([3, 1])],
                             IntPoly([1, 0, 1]), 625)
        assert lifted == [IntPoly([182, 1]), IntPoly([443, 1])]

    def test_single_factor_lifts_to_reduction(self):
        lifted = hensel_lift([IntPoly([1, 0, 1])], IntPoly([1, 0, 1]), 27)
        assert lifted == [IntPoly([1, 0, 1])]

    def test_product_invariant_after_lift(self):
        f = (X ** 2 + 1) * (X + 2) * (X - 3)
        factors = factor_mod_p(f, 7)
        target = 7 ** 5
        lifted = hensel_lift(factors, f, target)
        prod = IntPoly([1])
        for g in lifted:
            prod = IntPoly([c % target for c in (prod * g).coeffs])
        assert prod == IntPoly([c % target for c in f.coeffs])
        for g, h in zip(sorted(factors, key=lambda q: (len(q.coeffs), q.coeffs)),
                        lifted):
            assert [c % 7 for c in g.coeffs] == [c % 7 for c in h.coeffs]

    def test_bad_inputs_rejected(self):
        with pytest.raises(ValueError):
            hensel_lift([IntPoly([2, 1]), IntPoly([2, 1])], IntPoly([1, 0, 1]), 625)
        with pytest.raises(ValueError):
            hensel_lift([IntPoly([1, 1])], IntPoly([1, 0, 1]), 12)  # not a prime power


class TestFactorZ:
    def test_fq3_two_printed_factors(self):
        f = factor_z(FQ3)
        assert f.unit == 1
        assert f.factors == ((IntPoly([1, 1, 1]), 1), (Q20, 1))

    def test_p22_irreducible(self):
        f = factor_z(P22)
        assert f.factors == ((P22, 1),)

    def test_linear_times_cyclotomic(self):
        f = factor_z((X - 1) * cyclotomic_poly(3))
        assert f.factors == ((X - 1, 1), (IntPoly([1, 1, 1]), 1))

    def test_content_and_sign(self):
        f = factor_z(IntPoly([0, -6]))  # -6x = -1 * 2 * 3 * x
        assert f.unit == -1
        assert f.factors == ((IntPoly([2]), 1), (IntPoly([3]), 1), (X, 1))
        assert f.expand() == IntPoly([0, -6])

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factor_z(IntPoly())

    def test_reconstruction_random(self):
        rng = random.Random(13)
        for _ in range(150):
            p = IntPoly([rng.choice([1, -1, 2, -2])])
            for _ in range(rng.randint(1, 3)):
                p = p * IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))]
                                + [rng.randint(1, 5)])
            f = factor_z(p, seed=0)
            assert f.expand() == p
            for g, _ in f.factors:
                assert g.lc > 0
                if g.degree >= 1:
                    assert g.content_primitive()[0] == 1

    def test_determinism(self):
        rng = random.Random(14)
        p = (X ** 2 + X + 1) * (X ** 4 - X ** 2 + 1) * (X ** 2 - X - 1)
        assert factor_z(p, seed=9) == factor_z(p, seed=9)

    def test_factor_ordering(self):
        f = factor_z((X ** 2 + X + 1) * (X - 1) * (X + 1))
        degrees = [g.degree for g, _ in f.factors]
        assert degrees == sorted(degrees)


class TestIsIrreducible:
    def test_p22(self):
        assert is_irreducible(P22)

    def test_difference_of_squares(self):
        assert not is_irreducible(X ** 2 - 1)

    def test_golden_quadratic(self):
        # Discriminant 9 - 4 = 5 is not a square.
        assert is_irreducible(IntPoly([1, -3, 1]))

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            is_irreducible(IntPoly([5]))

    def test_content_blocks_irreducibility(self):
        assert not is_irreducible(IntPoly([4, 2]))

"""Complete factorization of integer polynomials into irreducibles.

Zassenhaus-style pipeline: Yun squarefree decomposition, modular
factorization by distinct-degree / equal-degree (Cantor-Zassenhaus)
splitting with a seeded deterministic random stream, quadratic Hensel
lifting past the Landau-Mignotte bound, and exhaustive subset
recombination in increasing subset-size order.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .polyarith import IntPoly, ONE, X, exact_div, subresultant_gcd, try_exact_div


@dataclass(frozen=True)
class Factorization:
    """unit * product of factor**multiplicity == the factored polynomial.

    Factors are primitive with positive leading coefficient, sorted by
    (degree, coefficient sequence); constant prime factors carry the
    content.  Output is deterministic for a fixed seed.
    """

    unit: int
    factors: tuple[tuple[IntPoly, int], ...]

    def expand(self) -> IntPoly:
        out = IntPoly([self.unit])
        for f, m in self.factors:
            out = out * f ** m
        return out


# -- arithmetic in GF(prime)[x] ------------------------------------------
# Polynomials mod p are plain lists of ints in [0, p), low-to-high,
# trimmed of trailing zeros.


def _gf_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_from_poly(f: IntPoly, p: int) -> list[int]:
    return _gf_trim([c % p for c in f.coeffs])


def _gf_to_poly(a: list[int]) -> IntPoly:
    return IntPoly(a)


def _gf_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _gf_trim(out)

def _gf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] = (out[i + j] + c * d) % p
    return _gf_trim(out)


def _gf_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("gf division by zero")
    inv = pow(b[-1], -1, p)
    rem = a[:]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if c:
            t = c * inv % p
            quot[k - db] = t
            for j, d in enumerate(b):
                rem[k - db + j] = (rem[k - db + j] - t * d) % p
        rem[k] = 0
    return _gf_trim(quot), _gf_trim(rem[:db])


def _gf_rem(a: list[int], b: list[int], p: int) -> list[int]:
    return _gf_divmod(a, b, p)[1]


def _gf_monic(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return a[:]
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _gf_rem(a, b, p)
    return _gf_monic(a, p)


def _gf_gcdex(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """Extended Euclid: (s, t, g) with s*a + t*b = g (monic) in GF(p)[x]."""
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while b:
        q, r = _gf_divmod(a, b, p)
        a, b = b, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    if not a:
        raise ValueError("gcdex(0, 0)")
    inv = pow(a[-1], -1, p)
    scale = lambda u: _gf_trim([c * inv % p for c in u])
    return scale(s0), scale(t0), _gf_monic(a, p)


def _gf_pow_mod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _gf_rem(base, mod, p)
    while e:
        if e & 1:
            result = _gf_rem(_gf_mul(result, base, p), mod, p)
        base = _gf_rem(_gf_mul(base, base, p), mod, p)
        e >>= 1
    return result


def _gf_deriv(a: list[int], p: int) -> list[int]:
    return _gf_trim([i * c % p for i, c in enumerate(a)][1:])


def _gf_is_squarefree(a: list[int], p: int) -> bool:
    d = _gf_deriv(a, p)
    if not d:
        return len(a) <= 2
    return len(_gf_gcd(a, d, p)) == 1


def _gf_random(rng: random.Random, max_deg: int, p: int) -> list[int]:
    while True:
        a = _gf_trim([rng.randrange(p) for _ in range(max_deg + 1)])
        if a:
            return a


def _gf_ddf(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Distinct-degree split of a monic squarefree f: [(product, degree)]."""
    out = []
    h = [0, 1]
    i = 1
    while 2 * i <= len(f) - 1:
        h = _gf_pow_mod(h, p, f, p)
        g = _gf_gcd(f, _gf_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, i))
            f = _gf_divmod(f, g, p)[0]
            h = _gf_rem(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _gf_edf(f: list[int], n: int, p: int, rng: random.Random) -> list[list[int]]:
    """Equal-degree split: all irreducible factors of f, each of degree n."""
    if len(f) - 1 == n:
        return [f]
    while True:
        r = _gf_random(rng, 2 * n - 1, p)
        if p == 2:
            h = r
            acc = r
            for _ in range(n - 1):
                acc = _gf_pow_mod(acc, 2, f, p)
                h = _gf_sub(h, [(-c) % p for c in acc], p)
            g = _gf_gcd(f, h, p)
        else:
            h = _gf_pow_mod(r, (p ** n - 1) // 2, f, p)
            g = _gf_gcd(f, _gf_sub(h, [1], p), p)
        if 1 < len(g) < len(f):
            rest = _gf_divmod(f, g, p)[0]
            return _gf_edf(g, n, p, rng) + _gf_edf(rest, n, p, rng)


def factor_mod_p(f: IntPoly, prime: int, seed: int = 0) -> list[IntPoly]:
    """Monic irreducible factors of f over GF(prime), sorted.

    Requires prime not dividing the leading coefficient and a squarefree
    reduction; equal-degree splitting draws from random.Random(seed).
    """
    if prime < 2:
        raise ValueError("prime must be >= 2")
    if not f:
        raise ValueError("zero polynomial")
    if f.lc % prime == 0:
        raise ValueError(f"prime {prime} divides the leading coefficient")
    a = _gf_from_poly(f, prime)
    if len(a) <= 1:
        return []
    if not _gf_is_squarefree(a, prime):
        raise ValueError(f"reduction mod {prime} is not squarefree")
    rng = random.Random(seed)
    out: list[IntPoly] = []
    for part, n in _gf_ddf(_gf_monic(a, prime), prime):
        for g in _gf_edf(part, n, prime, rng):
            out.append(_gf_to_poly(g))
    out.sort(key=lambda g: (len(g.coeffs), g.coeffs))
    return out


# -- Hensel lifting --------------------------------------------------------


def _trunc_sym(f: IntPoly, m: int) -> IntPoly:
    """Coefficients reduced into the symmetric range (-m/2, m/2]."""
    out = []
    for c in f.coeffs:
        c %= m
        if 2 * c > m:
            c -= m
        out.append(c)
    return IntPoly(out)


def _hensel_step(m: int, f: IntPoly, g: IntPoly, h: IntPoly, s: IntPoly, t: IntPoly):
    """One quadratic lift: from f = g*h, s*g + t*h = 1 (mod m) to mod m**2.

    h, and the lifted H, are monic; g carries the leading coefficient of f.
    """
    M = m * m
    e = _trunc_sym(f - g * h, M)
    q, r = _divmod_monic(s * e, h)
    q, r = _trunc_sym(q, M), _trunc_sym(r, M)
    u = t * e + q * g
    G = _trunc_sym(g + u, M)
    H = _trunc_sym(h + r, M)
    u = s * G + t * H
    b = _trunc_sym(u - ONE, M)
    c, d = _divmod_monic(s * b, H)
    c, d = _trunc_sym(c, M), _trunc_sym(d, M)
    u = t * b + c * G
    S = _trunc_sym(s - d, M)
    T = _trunc_sym(t - u, M)
    return G, H, S, T


def _divmod_monic(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Division with remainder by a monic polynomial, over Z."""
    if not b.is_monic():
        raise ValueError("monic divisor required")
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    if len(rem) - 1 < db:
        return IntPoly(), a
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            quot[k - db] = c
            for j, d in enumerate(b.coeffs):
                rem[k - db + j] -= c * d
    return IntPoly(quot), IntPoly(rem[:db])


def _hensel_lift_list(p: int, f: IntPoly, factors: list[IntPoly], l: int) -> list[IntPoly]:
    """Lift monic factors of f mod p to factors mod p**l (symmetric reps).

    The product of the result equals f modulo p**l once the first factor
    absorbs lc(f); all other returned factors are monic.
    """
    lc = f.lc
    if len(factors) == 1:
        inv = pow(lc, -1, p ** l)
        return [_trunc_sym(f * inv, p ** l)]
    m = p
    k = len(factors) // 2
    d = max(1, math.ceil(math.log2(l)))
    g_gf = [lc % p]
    for fi in factors[:k]:
        g_gf = _gf_mul(g_gf, list(fi.coeffs), p)
    h_gf = [1]
    for fi in factors[k:]:
        h_gf = _gf_mul(h_gf, list(fi.coeffs), p)
    s_gf, t_gf, one = _gf_gcdex(g_gf, h_gf, p)
    if one != [1]:
        raise ValueError("modular factors are not pairwise coprime")
    g = _trunc_sym(IntPoly(g_gf), p)
    h = _trunc_sym(IntPoly(h_gf), p)
    s = _trunc_sym(IntPoly(s_gf), p)
    t = _trunc_sym(IntPoly(t_gf), p)
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift_list(p, g, factors[:k], l) + _hensel_lift_list(p, h, factors[k:], l)


def _prime_power_split(m: int) -> tuple[int, int]:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    d = 2
    while d * d <= m:
        if m % d == 0:
            k = 0
            n = m
            while n % d == 0:
                n //= d
                k += 1
            if n != 1:
                raise ValueError(f"{m} is not a prime power")
            return d, k
        d += 1
    return m, 1


def hensel_lift(factors: list[IntPoly], f: IntPoly, target: int) -> list[IntPoly]:
    """Lift a monic modular factorization of f from mod prime to mod target.

    target must be a power prime**k of the working prime.  The result is
    the list of monic factors mod target (coefficients in [0, target)),
    congruent to the inputs mod prime, whose product is f/lc(f) mod target.
    For use in factor_z the caller picks target strictly beyond twice the
    Landau-Mignotte coefficient bound of f.
    """
    prime, l = _prime_power_split(target)
    if not f or f.lc % prime == 0:
        raise ValueError("leading coefficient vanishes mod prime")
    prod = [f.lc % prime]
    for g in factors:
        if not g.is_monic():
            raise ValueError("modular factors must be monic")
        prod = _gf_mul(prod, _gf_from_poly(g, prime), prime)
    if prod != _gf_from_poly(f, prime):
        raise ValueError("product of factors does not match f mod prime")
    for a, b in itertools.combinations(factors, 2):
        if len(_gf_gcd(_gf_from_poly(a, prime), _gf_from_poly(b, prime), prime)) != 1:
            raise ValueError("modular factors are not pairwise coprime")
    lifted = _hensel_lift_list(prime, f, factors, l)
    modulus = prime ** l
    out = []
    first_inv = pow(f.lc, -1, modulus)
    for i, g in enumerate(lifted):
        if i == 0:
            g = g * first_inv
        coeffs = [c % modulus for c in g.coeffs]
        # reduce again mod target (p**l may exceed target)
        coeffs = [c % target for c in coeffs]
        out.append(IntPoly(coeffs))
    out.sort(key=lambda g: (len(g.coeffs), g.coeffs))
    return out


# -- factorization over Z --------------------------------------------------


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun decomposition: pairwise-coprime squarefree parts and exponents.

    The weighted product of the parts is the primitive part of p,
    normalized to a positive leading coefficient.
    """
    if not p:
        raise ValueError("zero polynomial")
    _, f = p.content_primitive()
    if f.lc < 0:
        f = -f
    if len(f.coeffs) - 1 == 0:
        return []
    df = f.derivative()
    g = subresultant_gcd(f, df)
    if len(g.coeffs) - 1 == 0:
        return [(f, 1)]
    out: list[tuple[IntPoly, int]] = []
    b = exact_div(f, g)
    c = exact_div(df, g)
    d = c - b.derivative()
    i = 1
    while True:
        if len(b.coeffs) - 1 == 0:
            break
        a = subresultant_gcd(b, d) if d else b
        if len(a.coeffs) - 1 > 0:
            out.append((a, i))
            b = exact_div(b, a)
            c = exact_div(d, a) if d else c
        else:
            c = d
        d = c - b.derivative()
        i += 1
    return out


def _mignotte_target_exponent(f: IntPoly, prime: int) -> int:
    """Smallest l with prime**l > 2 * 2**deg(f) * ||f||_2 * |lc(f)|."""
    norm_sq = sum(c * c for c in f.coeffs)
    norm_up = math.isqrt(norm_sq)
    if norm_up * norm_up < norm_sq:
        norm_up += 1
    bound = 2 * (1 << (len(f.coeffs) - 1)) * norm_up * abs(f.lc)
    l = 1
    pl = prime
    while pl <= bound:
        pl *= prime
        l += 1
    return l


def _choose_prime(f: IntPoly) -> tuple[int, int]:
    """Zassenhaus heuristic: among the first 25 usable odd primes, the one
    whose squarefree reduction has the fewest modular factors."""
    best: tuple[int, int] | None = None
    candidate = 3
    tried = 0
    while tried < 25:
        p = candidate
        candidate = _next_prime(candidate)
        if f.lc % p == 0:
            continue
        a = _gf_monic(_gf_from_poly(f, p), p)
        if len(a) - 1 != len(f.coeffs) - 1 or not _gf_is_squarefree(a, p):
            continue
        tried += 1
        count = sum((len(part) - 1) // n for part, n in _gf_ddf(a, p))
        if best is None or count < best[1]:
            best = (p, count)
        if best[1] == 1:
            break
    if best is None:
        raise ArithmeticError("no usable prime found")  # cannot happen for squarefree f
    return best


def _next_prime(n: int) -> int:
    n += 2 if n % 2 == 1 else 1
    while True:
        if all(n % d for d in range(3, math.isqrt(n) + 1, 2)):
            return n
        n += 2


def _factor_squarefree(f: IntPoly, seed: int) -> list[IntPoly]:
    """Irreducible factors of a primitive squarefree f with lc > 0."""
    n = len(f.coeffs) - 1
    if n == 1:
        return [f]
    prime, count = _choose_prime(f)
    if count == 1:
        return [f]
    modular = factor_mod_p(f, prime, seed=seed)
    l = _mignotte_target_exponent(f, prime)
    lifted = _hensel_lift_list(prime, f, modular, l)
    modulus = prime ** l
    # First lifted factor carries lc(f); renormalize all to monic.
    inv = pow(f.lc, -1, modulus)
    lifted = [_trunc_sym(g * inv, modulus) if i == 0 else g for i, g in enumerate(lifted)]
    order = sorted(range(len(lifted)), key=lambda i: (len(lifted[i].coeffs), lifted[i].coeffs))
    lifted = [lifted[i] for i in order]

    result: list[IntPoly] = []
    remaining = list(range(len(lifted)))
    current = f
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for combo in itertools.combinations(remaining, size):
            lc = current.lc
            # Cheap test on the constant coefficient first.
            tc = lc
            for i in combo:
                tc = tc * lifted[i].constant
            tc %= modulus
            if 2 * tc > modulus:
                tc -= modulus
            if tc == 0 or (lc * current.constant) % tc != 0:
                continue
            g = IntPoly([lc])
            for i in combo:
                g = _trunc_sym(g * lifted[i], modulus)
            _, g = g.content_primitive()
            if g.lc < 0:
                g = -g
            if len(g.coeffs) == 1:
                continue
            quot = try_exact_div(current, g)
            if quot is not None:
                result.append(g)
                current = quot
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
        if not found:
            size += 1
    if len(current.coeffs) - 1 > 0:
        _, tail = current.content_primitive()
        if tail.lc < 0:
            tail = -tail
        result.append(tail)
    if __debug__:
        assert len(modular) >= len(result)
    return result


def _factor_constant(n: int) -> list[tuple[IntPoly, int]]:
    """Trial-division prime factorization of a positive integer content."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            m = 0
            while n % d == 0:
                n //= d
                m += 1
            out.append((IntPoly([d]), m))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((IntPoly([n]), 1))
    return out


def factor_z(p: IntPoly, seed: int = 0) -> Factorization:
    """Complete factorization over the integers.

    Recombination tries subsets of the lifted modular factors in
    increasing subset-size order with smallest-index-first tie-break, so
    the output is deterministic for a fixed seed.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    content, prim = p.content_primitive()
    unit = 1
    if prim.lc < 0:
        unit = -1
        prim = -prim
    factors: list[tuple[IntPoly, int]] = list(_factor_constant(content))
    v = prim.x_valuation()
    if v:
        factors.append((X, v))
        prim = prim.shift_down(v)
    for part, mult in squarefree_decomposition(prim):
        for g in _factor_squarefree(part, seed):
            factors.append((g, mult))
    factors.sort(key=lambda fm: (len(fm[0].coeffs), fm[0].coeffs))
    result = Factorization(unit, tuple(factors))
    if __debug__:
        assert result.expand() == p
    return result


def is_irreducible(p: IntPoly) -> bool:
    """True iff p is irreducible over the rationals with unit content."""
    if not p or len(p.coeffs) - 1 < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    f = factor_z(p)
    return len(f.factors) == 1 and f.factors[0][1] == 1

"""Trace-based construction of positive-entropy isometries.

On a hyperbolic lattice of rank r, |trace| >= r + 1 forces a Salem
factor (the at most r unit-circle eigenvalues contribute at most r to
the trace).  Composing such an isometry F with powers of a unipotent G
keeps the trace polynomial N -> tr(F * G**N) of degree below the rank;
unless that polynomial is constant it escapes the band |t| <= r, so
some explicit power gives a positive-entropy composition.  This module
implements the totient bookkeeping, quasi-unipotency exponents, the
trace criterion, and that compose-and-search procedure with exact
certificates.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .latiso import Isometry, char_poly, mat_identity, mat_mul, mat_pow, mat_trace
from .polyarith import IntPoly, euler_phi
from .realroots import RootEnclosure
from .salemclass import DEFAULT_WIDTH, classify_poly


class Verdict(enum.Enum):
    POSITIVE = "positive"
    INCONCLUSIVE = "inconclusive"


class PreconditionError(ValueError):
    """A caller-supplied isometry violates a documented precondition."""


class InternalInconsistency(RuntimeError):
    """A certificate proves the search finite, yet the bound was hit."""


@dataclass(frozen=True)
class TraceCertificate:
    """Exact polynomial N -> tr(F * G**N) for unipotent G.

    s is the nilpotency degree of G - I minus one; coeffs_desc holds
    a_s .. a_1 and constant equals tr(F).  verified_at pins >= s + 2
    sample points (N, trace) that the polynomial reproduces exactly.
    """

    s: int
    coeffs_desc: tuple[Fraction, ...]
    constant: int
    verified_at: tuple[tuple[int, int], ...]

    def value_at(self, n: int) -> int:
        acc = Fraction(0)
        for a in self.coeffs_desc:
            acc = (acc + a) * n
        acc += self.constant
        assert acc.denominator == 1, "trace polynomial must be integer-valued"
        return int(acc)

    def is_constant(self) -> bool:
        return all(a == 0 for a in self.coeffs_desc)


@dataclass(frozen=True)
class ComposeResult:
    """Smallest admissible N with |tr(F * G**N)| >= rank + 1."""

    n: int
    composed: Isometry
    trace: int
    certificate: TraceCertificate


def beta_constant(d: int) -> int:
    """lcm of all n with phi(n) <= d, scanning n <= 2d**2 + 1.

    The scan bound is valid because phi(n) >= sqrt(n/2)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    out = 1
    for n in range(1, 2 * d * d + 2):
        if euler_phi(n) <= d:
            out = math.lcm(out, n)
    return out


def totient_small_values(d: int) -> list[int]:
    """All n with phi(n) <= d, in increasing order."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return [n for n in range(1, 2 * d * d + 2) if euler_phi(n) <= d]


def quasi_unipotent_exponent(p: IntPoly) -> int | None:
    """lcm of the cyclotomic indices when p is a product of cyclotomics,
    else None."""
    if not p or not p.is_monic():
        raise ValueError("monic polynomial required")
    report = classify_poly(p)
    if not report.all_cyclotomic():
        return None
    out = 1
    for _, _, cls in report.factors:
        out = math.lcm(out, cls.index)
    return out


def trace_bound_test(f: Isometry) -> Verdict:
    """POSITIVE when |tr f| >= rank + 1 (the unit-circle eigenvalues can
    contribute at most rank), else INCONCLUSIVE."""
    r = f.lattice.rank
    return Verdict.POSITIVE if abs(f.trace) >= r + 1 else Verdict.INCONCLUSIVE


def certified_trace_exponent(enclosure: RootEnclosure, rank: int,
                             cap: int = 10 ** 6) -> int:
    """Smallest n with a**n + a**-n - (rank - 2) > rank certified from
    the enclosure of the Salem number a; from that exponent on, every
    trace of the powered isometry is at least rank + 1 by integrality."""
    lo = enclosure.interval.lo
    if lo <= 1:
        raise ValueError("enclosure must lie strictly right of 1")
    target = 2 * rank - 2
    pw = lo
    for n in range(1, cap + 1):
        if pw + 1 / pw > target:
            return n
        pw *= lo
    raise InternalInconsistency("a > 1 but the certified exponent exceeded the cap")


def trace_growth_witness(f: Isometry, bound: int,
                         width: Fraction = DEFAULT_WIDTH) -> int | None:
    """Smallest N <= bound with |tr(f**N)| >= rank + 1.

    Requires a Salem factor in the classification of f.  The witness is
    a single-point check by direct matrix powering; the all-exponents
    tail is certified from the Salem root enclosure before returning
    (tr(f**n) >= a**n + a**-n - (rank - 2) for all n past the certified
    exponent).  Returns None when the bound is exhausted.
    """
    report = classify_poly(char_poly(f), width=width)
    salem = report.salem_factors()
    if not salem:
        raise PreconditionError("isometry has no Salem factor")
    enclosure = salem[0][2].root
    r = f.lattice.rank
    certified_trace_exponent(enclosure, r)
    m = f.matrix
    power = m
    for n in range(1, bound + 1):
        if abs(mat_trace(power)) >= r + 1:
            return n
        power = mat_mul(power, m)
    return None


def unipotent_part(g: Isometry) -> tuple[int, Isometry]:
    """(m, g**m) where m is the quasi-unipotency exponent of g.

    The result is checked unipotent: (g**m - I)**rank == 0."""
    m = quasi_unipotent_exponent(char_poly(g))
    if m is None:
        raise PreconditionError("isometry is not quasi-unipotent")
    gu = g ** m
    r = g.lattice.rank
    d = _minus_identity(gu.matrix)
    if mat_pow(d, r) != tuple(tuple(0 for _ in range(r)) for _ in range(r)):
        raise AssertionError("claimed unipotent power is not unipotent")
    return m, gu


def _minus_identity(m) -> tuple[tuple[int, ...], ...]:
    n = len(m)
    return tuple(tuple(m[i][j] - (1 if i == j else 0) for j in range(n))
                 for i in range(n))


def _nilpotency_index(d, rank: int) -> int:
    """Smallest k >= 1 with d**k == 0 for nilpotent d."""
    zero = tuple(tuple(0 for _ in range(rank)) for _ in range(rank))
    power = d
    for k in range(1, rank + 1):
        if power == zero:
            return k
        power = mat_mul(power, d)
    raise ValueError("matrix is not nilpotent")


def trace_polynomial(f: Isometry, gu: Isometry, extra_samples: int = 3) -> TraceCertificate:
    """Exact coefficients of N -> tr(F * Gu**N) for unipotent Gu.

    The degree is at most s = nilpotency index of (Gu - I) minus 1; the
    coefficients are interpolated from N = 0..s by solving the
    Vandermonde system over exact rationals, then verified against
    s + 2 + extra_samples direct matrix-power traces.
    """
    if f.lattice.gram != gu.lattice.gram:
        raise ValueError("isometries live on different lattices")
    r = f.lattice.rank
    d = _minus_identity(gu.matrix)
    k = _nilpotency_index(d, r)
    s = k - 1
    samples = []
    power = mat_identity(r)
    for n in range(0, s + 2 + extra_samples):
        samples.append((n, mat_trace(mat_mul(f.matrix, power))))
        power = mat_mul(power, gu.matrix)
    # Solve the (s+1) x (s+1) Vandermonde system on nodes 0..s.
    nodes = samples[: s + 1]
    a = [[Fraction(n ** j) for j in range(s + 1)] for n, _ in nodes]
    b = [Fraction(t) for _, t in nodes]
    coeffs = _solve_linear(a, b)
    cert = TraceCertificate(
        s=s,
        coeffs_desc=tuple(reversed(coeffs[1:])),
        constant=int(coeffs[0]),
        verified_at=tuple(samples),
    )
    for n, t in samples:
        if cert.value_at(n) != t:
            raise AssertionError("trace polynomial fails verification sample")
    return cert


def _solve_linear(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def compose_search(f: Isometry, g: Isometry, bound: int = 10 ** 6,
                   coprime_to: int | None = None) -> ComposeResult:
    """Smallest N <= bound with |tr(F * Gu**N)| >= rank + 1, where Gu is
    the unipotent part of the quasi-unipotent g.

    Requires |tr F| >= rank + 1.  When every nonconstant coefficient of
    the trace polynomial vanishes the trace equals tr F for all N and
    N = 1 is returned (the degenerate branch); otherwise the certificate
    proves the failure set finite, so exhausting the bound indicates an
    internal inconsistency.  With coprime_to set, N is additionally
    required to be coprime to that opaque modulus.
    """
    r = f.lattice.rank
    if f.lattice.gram != g.lattice.gram:
        raise PreconditionError("isometries live on different lattices")
    if abs(f.trace) < r + 1:
        raise PreconditionError(f"|tr F| = {abs(f.trace)} < rank + 1 = {r + 1}")
    _, gu = unipotent_part(g)
    cert = trace_polynomial(f, gu)
    for n in range(1, bound + 1):
        if coprime_to is not None and math.gcd(n, coprime_to) != 1:
            continue
        t = cert.value_at(n)
        if abs(t) >= r + 1:
            composed = f * gu ** n
            return ComposeResult(n=n, composed=composed, trace=t, certificate=cert)
    if cert.is_constant():
        raise InternalInconsistency(
            "constant trace polynomial with |tr F| >= rank + 1 cannot fail")
    raise InternalInconsistency(
        "nonconstant integer trace polynomial cannot stay inside the "
        f"band |t| <= {r} for every N <= {bound}")

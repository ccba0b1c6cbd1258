"""Even hyperbolic lattices and their isometries.

Integer Gram matrices with exact signature computation, isometry
verification (M^T G M = G), exact characteristic polynomials, positive
cone bookkeeping, and the standard generators used by the randomized
suites: reflections in norm +-2 roots and Eichler transvections fixing
an isotropic vector.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .polyarith import IntPoly, RatInterval
from .realroots import cauchy_bound, count_roots_in, sturm_chain
from .factorint import squarefree_decomposition
from .salemclass import DEFAULT_DIGITS, DEFAULT_WIDTH, FactorReport, classify_poly

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class IsometryError(ValueError):
    """The candidate matrix does not preserve the bilinear form."""


def _as_matrix(rows) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise ValueError("square matrix required")
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_pow(a: Matrix, e: int) -> Matrix:
    result = mat_identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def mat_trace(a: Matrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def char_poly_matrix(m: Matrix) -> IntPoly:
    """Monic characteristic polynomial det(x*I - M), exactly.

    Faddeev-LeVerrier recurrence; every division is exact over the
    integers, which is asserted.
    """
    n = len(m)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = m
    c = -mat_trace(m)
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        shifted = tuple(tuple(mk[i][j] + (c if i == j else 0) for j in range(n))
                        for i in range(n))
        mk = mat_mul(m, shifted)
        t = mat_trace(mk)
        q, r = divmod(-t, k)
        assert r == 0, "Faddeev-LeVerrier trace not divisible"
        c = q
        coeffs[n - k] = c
    return IntPoly(coeffs)


def signature(gram) -> tuple[int, int]:
    """Inertia (positive count, negative count) of a symmetric integer
    matrix, by Sturm counts on the characteristic polynomial (all roots
    real), weighted by squarefree multiplicities."""
    g = _as_matrix(gram)
    if g != mat_transpose(g):
        raise ValueError("symmetric matrix required")
    chi = char_poly_matrix(g)
    if chi.constant == 0:
        raise ValueError("singular Gram matrix")
    pos = neg = 0
    for part, mult in squarefree_decomposition(chi):
        if len(part.coeffs) - 1 < 1:
            continue
        bound = cauchy_bound(part) + 1
        while part(bound) == 0 or part(-bound) == 0:
            bound += 1
        chain = sturm_chain(part)
        pos += mult * count_roots_in(chain, RatInterval(Fraction(0), bound))
        neg += mult * count_roots_in(chain, RatInterval(-bound, Fraction(0)))
    return pos, neg


@dataclass(frozen=True)
class Lattice:
    """Free Z-module of finite rank with a nondegenerate symmetric
    integer bilinear form; signature is computed on construction."""

    gram: Matrix
    signature: tuple[int, int] = field(init=False)

    def __post_init__(self) -> None:
        g = _as_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "signature", signature(g))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_hyperbolic(self) -> bool:
        return self.signature == (1, self.rank - 1)

    def pairing(self, v: Vector, w: Vector) -> int:
        return sum(v[i] * self.gram[i][j] * w[j]
                   for i in range(self.rank) for j in range(self.rank))

    def norm(self, v: Vector) -> int:
        return self.pairing(v, v)


@dataclass(frozen=True)
class Isometry:
    """Integer matrix certified against its lattice: M^T G M == G."""

    lattice: Lattice
    matrix: Matrix

    def __mul__(self, other: "Isometry") -> "Isometry":
        if self.lattice is not other.lattice and self.lattice.gram != other.lattice.gram:
            raise ValueError("isometries live on different lattices")
        return Isometry(self.lattice, mat_mul(self.matrix, other.matrix))

    def __pow__(self, e: int) -> "Isometry":
        if e < 0:
            raise ValueError("negative isometry power")
        return Isometry(self.lattice, mat_pow(self.matrix, e))

    @property
    def trace(self) -> int:
        return mat_trace(self.matrix)

    def apply(self, v: Vector) -> Vector:
        return mat_vec(self.matrix, v)


def verify_isometry(lattice: Lattice, m) -> Isometry:
    """Construct an Isometry after checking M^T G M == G exactly."""
    mm = _as_matrix(m)
    if len(mm) != lattice.rank:
        raise IsometryError(f"matrix size {len(mm)} != rank {lattice.rank}")
    g = lattice.gram
    if mat_mul(mat_mul(mat_transpose(mm), g), mm) != g:
        raise IsometryError("matrix does not preserve the bilinear form")
    iso = Isometry(lattice, mm)
    det_sign = char_poly_matrix(mm).constant  # det M = (-1)^r * constant term
    if det_sign not in (1, -1):
        raise IsometryError("isometry determinant is not +-1")
    return iso


def char_poly(f: Isometry) -> IntPoly:
    """Monic characteristic polynomial of the isometry's matrix."""
    return char_poly_matrix(f.matrix)


def preserves_positive_cone(f: Isometry, witness: Vector) -> bool:
    """In signature (1, r-1) two positive-norm vectors lie in the same
    cone component iff their pairing is positive, so f preserves the
    components iff (witness, f(witness)) > 0."""
    lat = f.lattice
    if not lat.is_hyperbolic:
        raise ValueError("positive cone requires a hyperbolic lattice")
    if lat.norm(witness) <= 0:
        raise ValueError("witness must have positive norm")
    return lat.pairing(witness, f.apply(witness)) > 0


def find_cone_witness(lattice: Lattice) -> Vector:
    """A positive-norm vector: standard basis first, then small integer
    combinations with coefficients up to 3."""
    if not lattice.is_hyperbolic:
        raise ValueError("positive cone requires a hyperbolic lattice")
    r = lattice.rank
    for i in range(r):
        v = tuple(1 if j == i else 0 for j in range(r))
        if lattice.norm(v) > 0:
            return v
    coeffs = sorted(range(-3, 4), key=abs)
    for i in range(r):
        for j in range(i + 1, r):
            for a in coeffs:
                for b in coeffs:
                    v = tuple(a if k == i else (b if k == j else 0) for k in range(r))
                    if lattice.norm(v) > 0:
                        return v
    raise ValueError("no positive-norm witness with coefficients up to 3")


def classify_isometry(f: Isometry, witness: Vector,
                      width: Fraction = DEFAULT_WIDTH,
                      digits: int = DEFAULT_DIGITS) -> tuple[FactorReport, bool]:
    """Classify char_poly(f) and report whether f preserves the cone.

    When the cone is preserved, the classification must consist of
    cyclotomic factors plus at most one Salem factor of multiplicity 1;
    a violation would be an internal error and raises.
    """
    report = classify_poly(char_poly(f), width=width, digits=digits)
    cone = preserves_positive_cone(f, witness)
    if cone:
        salem = report.salem_factors()
        ok = (len(salem) <= 1
              and all(mult == 1 for _, mult, _ in salem)
              and all(cls.kind in ("cyclotomic", "salem")
                      for _, _, cls in report.factors))
        if not ok:
            raise AssertionError(
                "cone-preserving isometry classified outside "
                "cyclotomic-plus-one-Salem; this is a bug")
    return report, cone


def reflection_in_root(lattice: Lattice, v: Vector) -> Isometry:
    """Reflection s_v(x) = x - 2(x,v)/(v,v) * v, integral for (v,v) = +-2."""
    nv = lattice.norm(v)
    if nv not in (2, -2):
        raise ValueError(f"root must have norm +-2, got {nv}")
    r = lattice.rank
    cols = []
    for j in range(r):
        e = tuple(1 if i == j else 0 for i in range(r))
        pe = lattice.pairing(e, v)
        col = tuple(e[i] - 2 * pe * v[i] // nv for i in range(r))
        cols.append(col)
    m = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
    return verify_isometry(lattice, m)


def eichler_transvection(lattice: Lattice, e: Vector, w: Vector) -> Isometry:
    """E(e,w): x -> x + (x,e)w - (x,w)e - (w,w)/2 * (x,e)e.

    Requires an even lattice, isotropic e, and w orthogonal to e; the
    result is a unipotent isometry fixing e."""
    if not lattice.is_even:
        raise ValueError("Eichler transvections require an even lattice")
    if lattice.norm(e) != 0 or all(x == 0 for x in e):
        raise ValueError("e must be a nonzero isotropic vector")
    if lattice.pairing(e, w) != 0:
        raise ValueError("w must be orthogonal to e")
    r = lattice.rank
    ww_half = lattice.norm(w) // 2
    cols = []
    for j in range(r):
        b = tuple(1 if i == j else 0 for i in range(r))
        xe = lattice.pairing(b, e)
        xw = lattice.pairing(b, w)
        col = tuple(b[i] + xe * w[i] - xw * e[i] - ww_half * xe * e[i]
                    for i in range(r))
        cols.append(col)
    m = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
    iso = verify_isometry(lattice, m)
    assert iso.apply(e) == tuple(e)
    return iso


def random_isometry(lattice: Lattice, roots, word_length: int,
                    seed: int = 0) -> Isometry:
    """Product of `word_length` reflections in uniformly drawn roots.

    Deterministic for a fixed seed; the root set is sorted before
    sampling so iteration order cannot leak in."""
    pool = sorted(tuple(v) for v in roots)
    if not pool:
        raise ValueError("empty root set")
    rng = random.Random(seed)
    f = Isometry(lattice, mat_identity(lattice.rank))
    for _ in range(word_length):
        f = f * reflection_in_root(lattice, rng.choice(pool))
    return f


def fixed_isotropic_check(f: Isometry, e: Vector,
                          width: Fraction = DEFAULT_WIDTH,
                          digits: int = DEFAULT_DIGITS) -> tuple[bool, FactorReport]:
    """Whether f fixes the isotropic vector e, with the classification.

    On a hyperbolic lattice an isometry fixing a nonzero isotropic
    vector is quasi-unipotent: when fixed is True all factors must be
    cyclotomic, and this is asserted."""
    lat = f.lattice
    if all(x == 0 for x in e):
        raise ValueError("e must be nonzero")
    if lat.norm(e) != 0:
        raise ValueError("e must be isotropic")
    fixed = f.apply(e) == tuple(e)
    report = classify_poly(char_poly(f), width=width, digits=digits)
    if fixed and lat.is_hyperbolic and not report.all_cyclotomic():
        raise AssertionError(
            "isometry fixing an isotropic vector classified with a "
            "non-cyclotomic factor; this is a bug")
    return fixed, report


# -- standard Gram fixtures -------------------------------------------------


def gram_u() -> Matrix:
    """Hyperbolic plane U."""
    return ((0, 1), (1, 0))


def gram_a1() -> Matrix:
    """A1, negative definite convention."""
    return ((-2,),)


def gram_e8() -> Matrix:
    """E8, negative definite convention, standard Dynkin ordering
    (chain 1-3-4-5-6-7-8 with node 2 attached to node 4)."""
    links = {(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)}
    m = [[0] * 8 for _ in range(8)]
    for i in range(8):
        m[i][i] = -2
    for a, b in links:
        m[a - 1][b - 1] = 1
        m[b - 1][a - 1] = 1
    return tuple(tuple(row) for row in m)


def direct_sum(*grams: Matrix) -> Matrix:
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    offset = 0
    for g in grams:
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = x
        offset += len(g)
    return tuple(tuple(row) for row in out)


def gram_u_e8() -> Matrix:
    return direct_sum(gram_u(), gram_e8())


def gram_u_e8_u() -> Matrix:
    return direct_sum(gram_u(), gram_e8(), gram_u())

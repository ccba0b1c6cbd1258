"""End-to-end verification pipeline over the shipped fixtures.

Each check returns a CheckResult; `run_all` executes the whole battery:
fixture integrity, the two fixture polynomial computations (degree-22
Salem classification and the two-factor product), Salem powers, the two
randomized lattice suites with their trace-criterion and compose-search
consequences, totient/beta oracle equivalence, and factorization
reconstruction with byte-level CLI determinism.
"""
from __future__ import annotations

import hashlib
import io
import json
import math
import random
import time
from contextlib import redirect_stdout
from dataclasses import dataclass
from fractions import Fraction

from .factorint import factor_z, is_irreducible
from .latiso import (Lattice, char_poly, classify_isometry, eichler_transvection,
                     gram_u_e8, gram_u_e8_u, preserves_positive_cone, random_isometry,
                     verify_isometry, mat_identity, mat_mul, mat_pow, mat_trace)
from .polyarith import IntPoly, RatInterval
from .salemclass import classify_poly
from .spectra import (Verdict, beta_constant, compose_search, quasi_unipotent_exponent,
                      totient_small_values, trace_bound_test, trace_growth_witness)

#: sha256 of the shipped fixture files; verify-paper refuses tampered inputs.
FIXTURE_DIGESTS = {
    "fq3.json": "c21c35d5d4cbc7484a1dc3c8d8b8966952695677c82c82eea3b68fdeecaa1b68",
    "gram_e8.json": "de5e1fefcbd4a954d57f12ac941d6e24b5ce2357f872ca036eadf0c4d9c3ba6e",
    "gram_u.json": "bcf018a9291bc33925b822953f1cdfd9c1b6c72564168ee7a00c2830fb38cfe0",
    "gram_u_e8.json": "219bc42f37ab45cc1b0a5a60c67c343bc06472d27ae65058ce3fe8d58c0dfa79",
    "gram_u_e8_u.json": "e0a809b90d6ff2fa996b2223120a50d7d57e4ac7ef16ea7c7801d51b1ecc0cff",
    "p22.json": "e856d260a6f2c9f3b4ea18c8c682e6f1332d49259e6868100366a8f1fc330116",
    "q20.json": "0f021eaedb52534847355beea96a41ca43a33660741f3c4a172a7d3a699c34a5",
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _run_cli(argv: list[str]) -> tuple[int, str]:
    from .cli import main
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def _fraction(s: str) -> Fraction:
    return Fraction(s)


def _interval(obj: dict) -> RatInterval:
    return RatInterval(_fraction(obj["lo"]), _fraction(obj["hi"]))


def check_fixture_digests() -> CheckResult:
    from .cli import fixture_path
    bad = []
    for name, expected in sorted(FIXTURE_DIGESTS.items()):
        path = fixture_path(name)
        try:
            actual = hashlib.sha256(path.read_bytes()).hexdigest()
        except OSError:
            bad.append(f"{name}: missing")
            continue
        if actual != expected:
            bad.append(f"{name}: digest mismatch")
    if bad:
        return CheckResult("fixture-integrity", False, "; ".join(bad))
    return CheckResult("fixture-integrity", True,
                       f"{len(FIXTURE_DIGESTS)} fixtures match pinned digests")


def check_salem_fixture() -> CheckResult:
    """Degree-22 fixture: irreducible Salem, root enclosure of width
    <= 1e-6 around 26.9943, entropy digits 3.295..., within 10 s."""
    from .cli import fixture_path
    t0 = time.monotonic()
    code, out = _run_cli(["classify", "--poly", str(fixture_path("p22.json"))])
    elapsed = time.monotonic() - t0
    if code != 0:
        return CheckResult("salem-fixture", False, f"classify exited {code}")
    result = json.loads(out)["result"]
    problems = []
    factors = result["factors"]
    if len(factors) != 1 or factors[0]["multiplicity"] != 1:
        problems.append("not irreducible")
    if factors[0]["degree"] != 22 or factors[0]["class"]["kind"] != "salem":
        problems.append("not a degree-22 Salem factor")
    root = _interval(factors[0]["class"]["root"])
    if root.width > Fraction(1, 10 ** 6):
        problems.append(f"enclosure width {float(root.width)}")
    if not (math.floor(root.lo * 10 ** 4) == math.floor(root.hi * 10 ** 4) == 269943):
        problems.append(f"root not pinned to 26.9943 ({float(root.lo)})")
    if not result["entropy_digits"].startswith("3.295"):
        problems.append(f"entropy digits {result['entropy_digits']}")
    if not result["entropy_positive"]:
        problems.append("entropy not positive")
    if elapsed > 10:
        problems.append(f"took {elapsed:.1f}s > 10s")
    if problems:
        return CheckResult("salem-fixture", False, "; ".join(problems))
    return CheckResult(
        "salem-fixture", True,
        f"salem root in {float(root.lo):.6f}..{float(root.hi):.6f}, "
        f"entropy {result['entropy_digits']}, {elapsed:.2f}s")


def check_factor_fixture() -> CheckResult:
    """Two-factor fixture: x^2+x+1 times the degree-20 cofactor, and the
    value -36 at x = 1, within 10 s."""
    from .cli import fixture_path, load_poly
    t0 = time.monotonic()
    code, out = _run_cli(["factor", "--poly", str(fixture_path("fq3.json"))])
    elapsed = time.monotonic() - t0
    if code != 0:
        return CheckResult("factor-fixture", False, f"factor exited {code}")
    result = json.loads(out)["result"]
    expected_q20 = load_poly(str(fixture_path("q20.json")))
    got = [(f["degree"], tuple(int(c) for c in f["poly"]["coeffs"]), f["multiplicity"])
           for f in result["factors"]]
    expected = [(2, (1, 1, 1), 1), (20, expected_q20.coeffs, 1)]
    problems = []
    if got != expected or result["unit"] != 1:
        problems.append(f"unexpected factorization {got}")
    value_at_one = load_poly(str(fixture_path("fq3.json")))(1)
    if value_at_one != -36:
        problems.append(f"value at 1 is {value_at_one}, expected -36")
    if elapsed > 10:
        problems.append(f"took {elapsed:.1f}s > 10s")
    if problems:
        return CheckResult("factor-fixture", False, "; ".join(problems))
    return CheckResult("factor-fixture", True,
                       f"factors x^2+x+1 and degree-20 cofactor; value at 1 "
                       f"is -36; {elapsed:.2f}s")


def check_power_fixture() -> CheckResult:
    """Powers n = 2, 3 of the degree-22 Salem root: again Salem of degree
    22, enclosures meeting the interval powers, within 60 s."""
    from .cli import fixture_path
    t0 = time.monotonic()
    p22 = str(fixture_path("p22.json"))
    code, out = _run_cli(["classify", "--poly", p22])
    if code != 0:
        return CheckResult("salem-powers", False, f"classify exited {code}")
    base = json.loads(out)["result"]
    base_root = _interval(base["factors"][0]["class"]["root"])
    problems = []
    for n in (2, 3):
        code, out = _run_cli(["power", "--poly", p22, "--n", str(n)])
        if code != 0:
            problems.append(f"power n={n} exited {code}")
            continue
        result = json.loads(out)["result"]
        if result["degree"] != 22 or not result["salem"]:
            problems.append(f"power n={n} not a degree-22 Salem")
            continue
        powered = _interval(result["salem_root"])
        if not powered.intersects(base_root.power(n)):
            problems.append(f"power n={n} enclosure misses the interval power")
    elapsed = time.monotonic() - t0
    if elapsed > 60:
        problems.append(f"took {elapsed:.1f}s > 60s")
    if problems:
        return CheckResult("salem-powers", False, "; ".join(problems))
    return CheckResult("salem-powers", True,
                       f"n=2,3 stay irreducible Salem of degree 22; {elapsed:.2f}s")


# -- randomized lattice suites ----------------------------------------------


def u_e8_roots() -> list[tuple[int, ...]]:
    """Norm +-2 reflection roots on U + E8: the two U-roots, the eight
    simple E8 roots, and mixed isotropic-plus-simple-root vectors."""
    roots = [(1, -1) + (0,) * 8, (1, 1) + (0,) * 8]
    for i in range(8):
        simple = tuple(1 if j == i + 2 else 0 for j in range(10))
        roots.append(simple)
        roots.append((1, 0) + simple[2:])
        roots.append((0, 1) + simple[2:])
    return roots


SUITE_WORD_LENGTH = 14


def reflection_suite(lattice: Lattice, count: int, seed: int):
    """Seeded cone-preserving reflection words (squared when they swap
    the cone components)."""
    roots = u_e8_roots()
    witness = (1, 1) + (0,) * 8
    out = []
    for i in range(count):
        f = random_isometry(lattice, roots, SUITE_WORD_LENGTH,
                            seed=seed * 1_000_003 + i)
        if not preserves_positive_cone(f, witness):
            f = f * f
        out.append(f)
    return out, witness


def check_reflection_suite(count: int = 500, seed: int = 0):
    """Every cone-preserving word classifies as cyclotomic factors plus
    at most one Salem factor of multiplicity one."""
    t0 = time.monotonic()
    lattice = Lattice(gram_u_e8())
    suite, witness = reflection_suite(lattice, count, seed)
    violations = 0
    salem_members = 0
    reports = []
    for f in suite:
        try:
            rep, cone = classify_isometry(f, witness)
        except AssertionError:
            violations += 1
            reports.append(None)
            continue
        assert cone
        reports.append(rep)
        if rep.salem_count:
            salem_members += 1
    elapsed = time.monotonic() - t0
    passed = violations == 0 and elapsed <= 300
    detail = (f"{count} words, {salem_members} with a Salem factor, "
              f"{violations} violations, {elapsed:.1f}s")
    return CheckResult("reflection-suite", passed, detail), suite, reports, witness


def check_transvection_suite(count: int = 200, seed: int = 0) -> CheckResult:
    """Products of Eichler transvections sharing one isotropic vector are
    quasi-unipotent: purely cyclotomic with a defined exponent."""
    t0 = time.monotonic()
    lattice = Lattice(gram_u_e8_u())
    e = (1, 0) + (0,) * 10
    rng = random.Random(seed * 7_654_321 + 17)
    violations = 0
    for _ in range(count):
        f = verify_isometry(lattice, mat_identity(12))
        for _ in range(rng.randint(1, 4)):
            w = tuple([rng.randint(-2, 2), 0]
                      + [rng.randint(-2, 2) for _ in range(8)]
                      + [0, rng.randint(-2, 2)])
            f = f * eichler_transvection(lattice, e, w)
        if f.apply(e) != e:
            violations += 1
            continue
        rep = classify_poly(char_poly(f))
        if not rep.all_cyclotomic():
            violations += 1
            continue
        if quasi_unipotent_exponent(char_poly(f)) is None:
            violations += 1
    elapsed = time.monotonic() - t0
    passed = violations == 0 and elapsed <= 300
    return CheckResult("transvection-suite", passed,
                       f"{count} transvection products, {violations} violations, "
                       f"{elapsed:.1f}s")


def check_trace_criterion(suite, reports, rank: int = 10) -> CheckResult:
    """Members with |trace| >= rank + 1 must test POSITIVE, carry a Salem
    factor, and admit a finite certified growth witness."""
    t0 = time.monotonic()
    threshold = rank + 1
    examined = 0
    violations = 0
    for f, rep in zip(suite, reports):
        if rep is None or abs(f.trace) < threshold:
            continue
        examined += 1
        if trace_bound_test(f) != Verdict.POSITIVE:
            violations += 1
            continue
        if rep.salem_count < 1:
            violations += 1
            continue
        witness_n = trace_growth_witness(f, bound=10 ** 4)
        if witness_n is None:
            violations += 1
    elapsed = time.monotonic() - t0
    passed = violations == 0 and examined > 0
    return CheckResult("trace-criterion", passed,
                       f"{examined} members with |tr| >= {threshold}, "
                       f"{violations} violations, {elapsed:.1f}s")


def check_compose_construction(suite, reports, pairs: int = 50,
                               seed: int = 0) -> CheckResult:
    """Compose big-trace members with random unipotent transvection
    products: the search returns N <= 1e6, the certificate matches three
    out-of-sample direct traces, and the composition is Salem-bearing."""
    t0 = time.monotonic()
    lattice = suite[0].lattice
    rank = lattice.rank
    e = (1, 0) + (0,) * 8
    rng = random.Random(seed * 31_337 + 271)
    big = [f for f, rep in zip(suite, reports)
           if rep is not None and abs(f.trace) >= rank + 1]
    if len(big) < pairs:
        return CheckResult("compose-construction", False,
                           f"only {len(big)} big-trace members available")
    violations = 0
    for i in range(pairs):
        f = big[i]
        g = verify_isometry(lattice, mat_identity(rank))
        for _ in range(rng.randint(1, 3)):
            w = tuple([rng.randint(-2, 2), 0]
                      + [rng.randint(-2, 2) for _ in range(8)])
            g = g * eichler_transvection(lattice, e, w)
        res = compose_search(f, g, bound=10 ** 6)
        cert = res.certificate
        ok = res.n <= 10 ** 6 and abs(res.trace) >= rank + 1
        gu = g  # transvection products are already unipotent
        for n in (res.n + 1, res.n + 2, cert.s + res.n + 5):
            direct = mat_trace(mat_mul(f.matrix, mat_pow(gu.matrix, n)))
            if cert.value_at(n) != direct:
                ok = False
        comp_rep = classify_poly(char_poly(res.composed))
        if comp_rep.salem_count < 1:
            ok = False
        if res.composed.matrix != mat_mul(f.matrix, mat_pow(gu.matrix, res.n)):
            ok = False
        if not ok:
            violations += 1
    elapsed = time.monotonic() - t0
    return CheckResult("compose-construction", violations == 0,
                       f"{pairs} pairs, {violations} violations, {elapsed:.1f}s")


def _phi_counting(n: int) -> int:
    """Independent totient: plain coprime-counting loop."""
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def check_beta_oracle() -> CheckResult:
    """beta agrees with a brute-force lcm over an independently computed
    totient for d = 1..10 and d = 22."""
    t0 = time.monotonic()
    problems = []
    for d in list(range(1, 11)) + [22]:
        brute_set = [n for n in range(1, 2 * d * d + 2) if _phi_counting(n) <= d]
        brute = math.lcm(*brute_set)
        if beta_constant(d) != brute:
            problems.append(f"beta({d}) = {beta_constant(d)} != {brute}")
        if totient_small_values(d) != brute_set:
            problems.append(f"set for d={d} differs")
    elapsed = time.monotonic() - t0
    if problems:
        return CheckResult("beta-oracle", False, "; ".join(problems))
    return CheckResult("beta-oracle", True,
                       f"d=1..10 and d=22 match brute force; beta(22) = "
                       f"{beta_constant(22)}; {elapsed:.1f}s")


def _random_irreducible(rng: random.Random) -> IntPoly:
    while True:
        d = rng.randint(1, 6)
        p = IntPoly([rng.randint(-9, 9) for _ in range(d)] + [rng.randint(1, 9)])
        if len(p.coeffs) - 1 < 1:
            continue
        p = p.content_primitive()[1]
        if is_irreducible(p):
            return p


def check_factor_reconstruction(count: int = 1000, seed: int = 0) -> CheckResult:
    """Random products of irreducibles reconstruct bit-for-bit, and the
    factor command is byte-identical across two runs."""
    t0 = time.monotonic()
    rng = random.Random(seed * 97 + 5)
    failures = 0
    for _ in range(count):
        prod = IntPoly([1])
        total = 0
        for _ in range(rng.randint(1, 4)):
            f = _random_irreducible(rng)
            if total + len(f.coeffs) - 1 > 24:
                break
            prod = prod * f
            total += len(f.coeffs) - 1
        result = factor_z(prod, seed=0)
        if result.expand() != prod:
            failures += 1
    # CLI determinism on a fixture input.
    from .cli import fixture_path
    argv = ["factor", "--poly", str(fixture_path("fq3.json"))]
    out1 = _run_cli(argv)
    out2 = _run_cli(argv)
    deterministic = out1 == out2
    elapsed = time.monotonic() - t0
    passed = failures == 0 and deterministic
    return CheckResult("factor-reconstruction", passed,
                       f"{count} reconstructions, {failures} failures, "
                       f"deterministic={deterministic}, {elapsed:.1f}s")


def run_all(quick: bool = False, seed: int = 0) -> list[CheckResult]:
    scale = 10 if quick else 1
    results = [check_fixture_digests(),
               check_salem_fixture(),
               check_factor_fixture(),
               check_power_fixture()]
    suite_result, suite, reports, _ = check_reflection_suite(500 // scale, seed)
    results.append(suite_result)
    results.append(check_transvection_suite(200 // scale, seed))
    results.append(check_trace_criterion(suite, reports))
    results.append(check_compose_construction(suite, reports, 50 // scale, seed))
    results.append(check_beta_oracle())
    results.append(check_factor_reconstruction(1000 // scale, seed))
    return results

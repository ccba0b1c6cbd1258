"""Command-line frontend: deterministic JSON reports over the library.

Subcommands mirror the library surface: factor, classify, charpoly,
beta, power, compose, verify-paper.  All stdout is a single JSON
document (sorted keys, no timestamps), so identical invocations are
byte-identical; diagnostics go to stderr.

Exit codes:
  0  success
  2  unreadable or malformed input file / usage error
  3  zero or constant polynomial where degree >= 1 is required
  4  matrix fails the isometry check
  5  no positive-cone witness found
  6  reducible (or non-monic) polynomial passed to power
  7  compose: |tr F| below rank + 1
  8  compose: g is not quasi-unipotent
  9  compose: search bound exhausted
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .factorint import Factorization, factor_z
from .latiso import (Isometry, IsometryError, Lattice, char_poly, classify_isometry,
                     find_cone_witness, verify_isometry)
from .polyarith import IntPoly, RatInterval
from .salemclass import (DEFAULT_DIGITS, DEFAULT_WIDTH, FactorReport, classify_poly,
                         power_min_poly, salem_test)
from .spectra import (ComposeResult, InternalInconsistency, PreconditionError,
                      beta_constant, compose_search, euler_phi, quasi_unipotent_exponent,
                      totient_small_values)

EXIT_PARSE = 2
EXIT_BAD_POLY = 3
EXIT_BAD_ISOMETRY = 4
EXIT_NO_WITNESS = 5
EXIT_REDUCIBLE = 6
EXIT_TRACE_PRECONDITION = 7
EXIT_NOT_QUASI_UNIPOTENT = 8
EXIT_BOUND_EXHAUSTED = 9

FIXTURE_ENV = "SALEMISO_FIXTURES"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- JSON (de)serialization -------------------------------------------------


def _fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def _interval_json(iv: RatInterval) -> dict:
    return {"lo": _fraction_str(iv.lo), "hi": _fraction_str(iv.hi)}


def _poly_json(p: IntPoly) -> dict:
    return {"coeffs": [str(c) for c in p.coeffs]}


def _parse_int(s) -> int:
    if isinstance(s, bool):
        raise ValueError("boolean is not an integer")
    if isinstance(s, int):
        return s
    if isinstance(s, str):
        return int(s, 10)
    raise ValueError(f"integer or decimal string expected, got {s!r}")


def _load_json(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from exc


def load_poly(path: str) -> IntPoly:
    doc = _load_json(path)
    try:
        coeffs = [_parse_int(c) for c in doc["coeffs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: polynomial file needs a 'coeffs' "
                                   f"list of decimal strings ({exc})") from exc
    return IntPoly(coeffs)


def _load_rows(path: str, want_symmetric: bool) -> tuple[tuple[int, ...], ...]:
    doc = _load_json(path)
    try:
        rows = tuple(tuple(_parse_int(x) for x in row) for row in doc["rows"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: matrix file needs a 'rows' list "
                                   f"of decimal-string rows ({exc})") from exc
    if any(len(r) != len(rows) for r in rows):
        raise CliError(EXIT_PARSE, f"{path}: matrix is not square")
    if want_symmetric:
        if doc.get("symmetric") is not True:
            raise CliError(EXIT_PARSE, f"{path}: Gram file must assert \"symmetric\": true")
        if rows != tuple(zip(*rows)):
            raise CliError(EXIT_PARSE, f"{path}: Gram matrix is not symmetric")
    return rows


def load_gram(path: str) -> tuple[tuple[int, ...], ...]:
    return _load_rows(path, want_symmetric=True)


def load_matrix(path: str) -> tuple[tuple[int, ...], ...]:
    return _load_rows(path, want_symmetric=False)


def load_vector(path: str) -> tuple[int, ...]:
    doc = _load_json(path)
    try:
        return tuple(_parse_int(x) for x in doc["coords"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: vector file needs a 'coords' "
                                   f"list of decimal strings ({exc})") from exc


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _parse_width(s: str) -> Fraction:
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            w = Fraction(int(num), int(den))
        else:
            w = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad width {s!r}: {exc}") from exc
    if w <= 0:
        raise argparse.ArgumentTypeError("width must be positive")
    return w


def fixture_path(name: str) -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override) / name
    return Path(str(resources.files("salemiso").joinpath("fixtures", name)))


# -- report assembly --------------------------------------------------------


def _report(command: str, inputs: dict[str, str], result: dict,
            seed: int | None = None) -> dict:
    doc = {
        "command": command,
        "version": __version__,
        "inputs": {name: {"path": path, "sha256": _digest(path)}
                   for name, path in inputs.items()},
        "result": result,
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _factorization_json(f: Factorization) -> dict:
    return {
        "unit": f.unit,
        "factors": [{"poly": _poly_json(g), "multiplicity": m,
                     "degree": len(g.coeffs) - 1}
                    for g, m in f.factors],
    }


def _class_json(cls) -> dict:
    out = {"kind": cls.kind}
    if cls.index is not None:
        out["index"] = cls.index
    if cls.root is not None:
        out["root"] = _interval_json(cls.root.interval)
    return out


def _factor_report_json(rep: FactorReport) -> dict:
    return {
        "factors": [{"poly": _poly_json(f), "multiplicity": m,
                     "degree": len(f.coeffs) - 1, "class": _class_json(cls)}
                    for f, m, cls in rep.factors],
        "salem_count": rep.salem_count,
        "spectral_radius": _interval_json(rep.spectral_radius),
        "entropy_positive": rep.entropy_positive,
        "entropy_digits": rep.entropy_digits,
        "entropy_error_bound": f"0.5e-{len(rep.entropy_digits.split('.')[1])}",
        "definition_variant": rep.definition_variant,
    }


def _compose_json(res: ComposeResult, unipotent_exponent: int) -> dict:
    cert = res.certificate
    return {
        "n": res.n,
        "trace": str(res.trace),
        "unipotent_exponent": unipotent_exponent,
        "composed": {"rows": [[str(x) for x in row] for row in res.composed.matrix]},
        "certificate": {
            "s": cert.s,
            "coefficients_desc": [_fraction_str(a) for a in cert.coeffs_desc],
            "constant": str(cert.constant),
            "verified_at": [[n, str(t)] for n, t in cert.verified_at],
        },
    }


# -- subcommands ------------------------------------------------------------


def _require_degree(p: IntPoly, path: str) -> None:
    if not p or len(p.coeffs) - 1 < 1:
        raise CliError(EXIT_BAD_POLY, f"{path}: polynomial of degree >= 1 required")


def cmd_factor(args) -> dict:
    p = load_poly(args.poly)
    _require_degree(p, args.poly)
    f = factor_z(p, seed=args.seed)
    return _report("factor", {"poly": args.poly}, _factorization_json(f),
                   seed=args.seed)


def _build_isometry(gram_path: str, matrix_path: str) -> Isometry:
    lattice = Lattice(load_gram(gram_path))
    try:
        return verify_isometry(lattice, load_matrix(matrix_path))
    except IsometryError as exc:
        raise CliError(EXIT_BAD_ISOMETRY, f"{matrix_path}: {exc}") from exc


def cmd_classify(args) -> dict:
    if args.poly:
        p = load_poly(args.poly)
        _require_degree(p, args.poly)
        if not p.is_monic():
            raise CliError(EXIT_BAD_POLY, f"{args.poly}: monic polynomial required")
        rep = classify_poly(p, width=args.width, digits=args.digits)
        return _report("classify", {"poly": args.poly}, _factor_report_json(rep))
    iso = _build_isometry(args.gram, args.matrix)
    inputs = {"gram": args.gram, "matrix": args.matrix}
    if args.witness:
        witness = load_vector(args.witness)
        inputs["witness"] = args.witness
        if iso.lattice.norm(witness) <= 0:
            raise CliError(EXIT_NO_WITNESS, f"{args.witness}: witness must have positive norm")
    else:
        try:
            witness = find_cone_witness(iso.lattice)
        except ValueError as exc:
            raise CliError(EXIT_NO_WITNESS, str(exc)) from exc
    rep, cone = classify_isometry(iso, witness, width=args.width, digits=args.digits)
    result = _factor_report_json(rep)
    result["preserves_positive_cone"] = cone
    result["witness"] = [str(x) for x in witness]
    result["trace"] = str(iso.trace)
    return _report("classify", inputs, result)


def cmd_charpoly(args) -> dict:
    iso = _build_isometry(args.gram, args.matrix)
    return _report("charpoly", {"gram": args.gram, "matrix": args.matrix},
                   _poly_json(char_poly(iso)))


def cmd_beta(args) -> dict:
    values = totient_small_values(args.degree)
    result = {
        "degree": args.degree,
        "beta": str(beta_constant(args.degree)),
        "set": values,
        "scan_bound": 2 * args.degree * args.degree + 1,
        "totients": {str(n): euler_phi(n) for n in values},
    }
    return _report("beta", {}, result)


def cmd_power(args) -> dict:
    p = load_poly(args.poly)
    _require_degree(p, args.poly)
    try:
        q = power_min_poly(p, args.n)
    except ValueError as exc:
        raise CliError(EXIT_REDUCIBLE, f"{args.poly}: {exc}") from exc
    check = salem_test(q, width=args.width)
    result = {
        "n": args.n,
        "poly": _poly_json(q),
        "degree": len(q.coeffs) - 1,
        "salem": bool(check),
    }
    if check:
        result["salem_root"] = _interval_json(check.enclosure.interval)
    else:
        result["salem_failure"] = check.reason
    return _report("power", {"poly": args.poly}, result)


def cmd_compose(args) -> dict:
    lattice = Lattice(load_gram(args.gram))
    try:
        f = verify_isometry(lattice, load_matrix(args.f))
        g = verify_isometry(lattice, load_matrix(args.g))
    except IsometryError as exc:
        raise CliError(EXIT_BAD_ISOMETRY, str(exc)) from exc
    exponent = quasi_unipotent_exponent(char_poly(g))
    try:
        res = compose_search(f, g, bound=args.bound, coprime_to=args.coprime_to)
    except PreconditionError as exc:
        code = (EXIT_NOT_QUASI_UNIPOTENT if "quasi-unipotent" in str(exc)
                else EXIT_TRACE_PRECONDITION)
        raise CliError(code, str(exc)) from exc
    except InternalInconsistency as exc:
        raise CliError(EXIT_BOUND_EXHAUSTED, str(exc)) from exc
    return _report("compose", {"gram": args.gram, "f": args.f, "g": args.g},
                   _compose_json(res, exponent))


def cmd_verify_paper(args) -> int:
    from .verify import run_all  # deferred: pulls in the whole pipeline
    results = run_all(quick=args.quick, seed=args.seed)
    all_pass = all(r.passed for r in results)
    if args.json:
        doc = {
            "command": "verify-paper",
            "version": __version__,
            "seed": args.seed,
            "quick": args.quick,
            "checks": [{"name": r.name, "pass": r.passed, "detail": r.detail}
                       for r in results],
            "all_pass": all_pass,
        }
        _emit(doc)
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            sys.stdout.write(f"{status} {r.name}: {r.detail}\n")
        sys.stdout.write(f"{'PASS' if all_pass else 'FAIL'} overall\n")
    return 0 if all_pass else 1


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="salemiso",
        description="Exact Salem/cyclotomic classification of even "
                    "hyperbolic lattice isometries",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_factor = sub.add_parser("factor", help="factor an integer polynomial")
    p_factor.add_argument("--poly", required=True)
    p_factor.add_argument("--seed", type=int, default=0)
    p_factor.set_defaults(handler=cmd_factor)

    p_classify = sub.add_parser("classify",
                                help="classify a polynomial or an isometry")
    p_classify.add_argument("--poly")
    p_classify.add_argument("--gram")
    p_classify.add_argument("--matrix")
    p_classify.add_argument("--witness")
    p_classify.add_argument("--width", type=_parse_width, default=DEFAULT_WIDTH)
    p_classify.add_argument("--digits", type=_positive_int, default=DEFAULT_DIGITS)
    p_classify.set_defaults(handler=cmd_classify)

    p_charpoly = sub.add_parser("charpoly",
                                help="characteristic polynomial of an isometry")
    p_charpoly.add_argument("--gram", required=True)
    p_charpoly.add_argument("--matrix", required=True)
    p_charpoly.set_defaults(handler=cmd_charpoly)

    p_beta = sub.add_parser("beta", help="lcm of all n with phi(n) <= degree")
    p_beta.add_argument("--degree", type=_positive_int, required=True)
    p_beta.set_defaults(handler=cmd_beta)

    p_power = sub.add_parser("power",
                             help="minimal polynomial of a power of a root")
    p_power.add_argument("--poly", required=True)
    p_power.add_argument("--n", type=_positive_int, required=True)
    p_power.add_argument("--width", type=_parse_width, default=DEFAULT_WIDTH)
    p_power.set_defaults(handler=cmd_power)

    p_compose = sub.add_parser("compose",
                               help="compose a big-trace isometry with powers "
                                    "of a quasi-unipotent one")
    p_compose.add_argument("--gram", required=True)
    p_compose.add_argument("--f", required=True)
    p_compose.add_argument("--g", required=True)
    p_compose.add_argument("--bound", type=_positive_int, default=10 ** 6)
    p_compose.add_argument("--coprime-to", type=_positive_int, default=None)
    p_compose.set_defaults(handler=cmd_compose)

    p_verify = sub.add_parser("verify-paper",
                              help="run the full acceptance pipeline on the "
                                   "shipped fixtures")
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--quick", action="store_true",
                          help="reduced suite sizes for a fast sanity pass")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(handler=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand == "verify-paper":
        return cmd_verify_paper(args)
    if args.subcommand == "classify":
        if bool(args.poly) == bool(args.gram or args.matrix):
            parser.error("classify needs --poly or (--gram and --matrix)")
        if (args.gram is None) != (args.matrix is None):
            parser.error("--gram and --matrix go together")
    try:
        doc = args.handler(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    _emit(doc)
    return 0


if __name__ == "__main__":
    sys.exit(main())

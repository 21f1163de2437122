"""Command-line front end.

Exit codes: 0 success (for ``verify``: nonsingular), 10 singular LCM matrix,
1 a selftest check failed, 2 invalid input, 3 unmet precondition or no
admissible construction, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from .construct import ConstructionError, classify9, construct, find_cube_subsemilattices
from .enumeration import census_record, enumerate_meet_semilattices, level_codes
from .errors import NotGcdClosedError, PreconditionError, UncertifiableError, ValidationError
from .fixtures import CUBE_S8
from .io import dumps, fraction_to_str, load_input, load_set, set_to_json, structure_to_json, to_dot
from .lcm import GcdSet, build_gcd_set, cover_lcm_predicate, det_lcm, factorize, is_singular, lcm_matrix, psi
from .poset import canonical_form, generates_double_chain
from .power import build_power_construction, find_alpha0, h_eval

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4
EXIT_SINGULAR = 10


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.marks: dict[str, float] = {}

    def run(self, label: str, fn: Callable, *args, **kwargs):
        t0 = time.perf_counter()
        out = fn(*args, **kwargs)
        if self.enabled:
            self.marks[label] = round(time.perf_counter() - t0, 6)
        return out

    def attach(self, report: dict) -> dict:
        if self.enabled:
            report["timings"] = self.marks
        return report


def _emit(report: dict, out: str | None = None) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------


def cmd_verify(args, timer: _Timer) -> int:
    S = load_set(args.file)
    e = args.exponent
    values = timer.run("psi", psi, S, e).values
    verdict = is_singular(S, e)
    det = timer.run("det", det_lcm, S, e)
    fac = timer.run("factorize", factorize, S, e)
    matrix = lcm_matrix(S, e)
    fac_ok = all(fac.product()[i][j] == matrix[i][j] for i in range(len(S)) for j in range(len(S)))
    table = []
    for i, x in enumerate(S.elements):
        row = {"x": str(x), "psi": fraction_to_str(values[i])}
        if e == 1:
            row["double_chain"] = generates_double_chain(S.order, i)
            if S.order.lower[i]:
                row["cover_lcm"] = cover_lcm_predicate(S, x).value
        table.append(row)
    report = {
        "command": "verify",
        "inputs": {"file": str(args.file), "exponent": e, "set": set_to_json(S)},
        "psi": table,
        "singular": verdict.singular,
        "zero_witnesses": [str(S.elements[i]) for i in verdict.zero_indices],
        "determinant": str(det),
        "factorization_ok": fac_ok,
    }
    _emit(timer.attach(report), args.out)
    return EXIT_SINGULAR if verdict.singular else EXIT_OK


def cmd_enumerate(args, timer: _Timer) -> int:
    n = args.n
    if n < 1:
        raise PreconditionError("n must be at least 1")
    if args.count_only and not args.special:
        count = len(timer.run("enumerate", level_codes, n, args.workers))
        _emit(timer.attach({"command": "enumerate", "n": n, "special": False, "count": count}), args.out)
        return EXIT_OK
    structures = timer.run("enumerate", lambda: list(enumerate_meet_semilattices(n, args.workers)))
    if args.special:
        records = [(S, census_record(S)) for S in structures]
        rows = [
            dict(structure_to_json(S), canonical=r.canonical_form.hex(), witness=r.witness_element)
            for S, r in records
            if r.special
        ]
    else:
        rows = [dict(structure_to_json(S), canonical=canonical_form(S).hex()) for S in structures]
    if args.count_only:
        _emit(timer.attach({"command": "enumerate", "n": n, "special": True, "count": len(rows)}), args.out)
        return EXIT_OK
    lines = "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in rows)
    if args.out:
        Path(args.out).write_text(lines, encoding="utf-8")
    else:
        sys.stdout.write(lines)
    return EXIT_OK


def cmd_classify(args, timer: _Timer) -> int:
    obj = load_input(args.file, raw=False)
    order = obj.order if isinstance(obj, GcdSet) else obj
    rec = census_record(order)
    report = {
        "command": "classify",
        "inputs": {"file": str(args.file)},
        "n": order.n,
        "canonical": rec.canonical_form.hex(),
        "special": rec.special,
        "witness": rec.witness_element,
    }
    if isinstance(obj, GcdSet) and rec.witness_element is not None:
        report["witness_value"] = str(obj.elements[rec.witness_element])
    report["label"] = classify9(order).value if order.n == 9 else None
    _emit(timer.attach(report), args.out)
    return EXIT_OK


def cmd_cubes(args, timer: _Timer) -> int:
    S = load_set(args.file)
    found = timer.run("cubes", find_cube_subsemilattices, S, args.cover_preserving)
    pairs = []
    for i in range(len(found)):
        for j in range(i + 1, len(found)):
            shared = sorted(set(found[i].elements) & set(found[j].elements))
            pairs.append({"a": i, "b": j, "shared": [str(x) for x in shared]})
    report = {
        "command": "cubes",
        "inputs": {"file": str(args.file), "cover_preserving": args.cover_preserving},
        "count": len(found),
        "witnesses": [[str(x) for x in w.elements] for w in found],
        "pairs": pairs,
    }
    _emit(timer.attach(report), args.out)
    return EXIT_OK


def cmd_construct(args, timer: _Timer) -> int:
    S8 = load_set(args.seed_set) if args.seed_set else build_gcd_set(CUBE_S8, name="S8")
    S9 = timer.run("construct", construct, S8, args.variant, args.multiplier)
    verdict = is_singular(S9)
    report = {
        "command": "construct",
        "inputs": {
            "variant": args.variant,
            "seed_set": set_to_json(S8),
            "multiplier": None if args.multiplier is None else str(args.multiplier),
        },
        "set": set_to_json(S9),
        "label": classify9(S9).value,
        "psi_top": fraction_to_str(psi(S9).values[-1]),
        "singular": verdict.singular,
        "zero_witnesses": [str(S9.elements[i]) for i in verdict.zero_indices],
    }
    _emit(timer.attach(report), args.out)
    return EXIT_OK


def _real(q: Fraction) -> dict:
    return {"exact": fraction_to_str(q), "approx": f"{float(q):.17g}"}


def cmd_power(args, timer: _Timer) -> int:
    c = build_power_construction(args.M)
    bracket = timer.run("bisect", find_alpha0, c, args.tol, args.precision)
    checkpoints = {}
    for a in range(1, math.ceil(bracket.hi) + 1):
        checkpoints[str(a)] = fraction_to_str(h_eval(c, a).value)
    report = {
        "command": "power",
        "inputs": {"M": fraction_to_str(c.M), "tol": fraction_to_str(Fraction(args.tol)), "precision": args.precision},
        "k": c.k,
        "primes": [str(p) for p in c.primes],
        "set": set_to_json(c.gcd_set),
        "mu_top": [str(m) for m in c.mu_top],
        "h_exact": checkpoints,
        "bracket": {
            "lo": _real(bracket.lo),
            "hi": _real(bracket.hi),
            "width": _real(bracket.width),
            "h_lo": {"value": _real(bracket.h_lo.value), "error_bound": _real(bracket.h_lo.error_bound)},
            "h_hi": {"value": _real(bracket.h_hi.value), "error_bound": _real(bracket.h_hi.error_bound)},
            "precision_bits": bracket.precision_bits,
        },
    }
    _emit(timer.attach(report), args.out)
    return EXIT_OK


def cmd_export_dot(args, timer: _Timer) -> int:
    obj = load_input(args.file, raw=args.raw)
    name = Path(args.file).stem
    text = to_dot(obj, name)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_selftest(args, timer: _Timer) -> int:
    from .selftest import run_checks

    results = timer.run("selftest", run_checks, random.Random(args.seed), args.full)
    report = {
        "command": "selftest",
        "inputs": {"seed": args.seed, "full": args.full},
        "checks": [{"name": name, "passed": ok, "detail": detail} for name, ok, detail in results],
        "passed": all(ok for _, ok, _ in results),
    }
    _emit(timer.attach(report), args.out)
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


# -- parser -------------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcmlat", description="Singularity of LCM matrices on GCD-closed sets.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--timings", action="store_true", help="add wall-clock timings to JSON reports")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=fn)
        sp.add_argument("--out", help="write output here instead of stdout")
        return sp

    sp = add("verify", cmd_verify, "Psi table, singularity verdict, determinant and factorization check for a set file")
    sp.add_argument("file")
    sp.add_argument("--exponent", type=_positive_int, default=1, help="integer power of the LCM matrix")

    sp = add("enumerate", cmd_enumerate, "meet semilattices on n elements up to isomorphism")
    sp.add_argument("n", type=int)
    sp.add_argument("--special", action="store_true", help="keep structures with an element not generating a double chain")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--workers", type=_positive_int, default=None, help="worker processes (default LCMLAT_THREADS or 1)")

    sp = add("classify", cmd_classify, "canonical form, special status and nine-element class of a set or structure file")
    sp.add_argument("file")

    sp = add("cubes", cmd_cubes, "cube-shaped meet subsemilattices of a set file")
    sp.add_argument("file")
    sp.add_argument("--cover-preserving", action="store_true", help="only cubes whose edges are covers of the set")

    sp = add("construct", cmd_construct, "build a singular nine-element set from a singular cube")
    sp.add_argument("--variant", required=True, choices=list("ABCDEFGH"))
    sp.add_argument("--seed-set", help="set file of the eight-element cube (default: the built-in S8)")
    sp.add_argument("--multiplier", type=_positive_int, default=None)

    sp = add("power", cmd_power, "power-LCM construction and certified bracket for a singular exponent")
    sp.add_argument("--M", type=_rational, required=True)
    sp.add_argument("--tol", type=_rational, default=Fraction(1, 2**40))
    sp.add_argument("--precision", type=int, default=64, help="starting precision in bits (>= 64)")

    sp = add("export-dot", cmd_export_dot, "Hasse diagram of a set or structure file as DOT")
    sp.add_argument("file")
    sp.add_argument("--raw", action="store_true", help="accept structures that are not meet semilattices")

    sp = add("selftest", cmd_selftest, "reproduce the reference results")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--full", action="store_true", help="include the ten-element census (about half a minute)")
    return p


def _error(command: str, exc: Exception, code: int) -> int:
    err: dict = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NotGcdClosedError):
        err["pair"] = [str(v) for v in exc.pair]
        err["gcd"] = str(exc.gcd)
    sys.stdout.write(dumps({"command": command, "error": err, "exit_code": code}))
    print(f"lcmlat {command}: {exc}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    timer = _Timer(args.timings)
    try:
        return args.func(args, timer)
    except ValidationError as exc:
        return _error(args.command, exc, EXIT_INPUT)
    except (PreconditionError, ConstructionError) as exc:
        return _error(args.command, exc, EXIT_PRECONDITION)
    except UncertifiableError as exc:
        return _error(args.command, exc, EXIT_INTERNAL)
    except Exception as exc:  # noqa: BLE001
        return _error(args.command, exc, EXIT_INTERNAL)


if __name__ == "__main__":
    sys.exit(main())

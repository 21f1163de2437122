"""Quick reproduction of the reference results, used by ``lcmlat selftest``."""

from __future__ import annotations

import random
from fractions import Fraction

from .construct import ClassLabel, classify9, construct, find_cube_subsemilattices, sample_realization
from .enumeration import KNOWN_COUNTS, enumerate_meet_semilattices, filter_special, level_codes
from .fixtures import CUBE_S8, LABELS, SINGULAR_SETS, S13, S14, S16, special9_structure
from .lcm import build_gcd_set, is_singular, psi
from .poset import canonical_form
from .power import build_power_construction, find_alpha0

REFERENCE_SPECIAL_COUNTS = {8: 1, 9: 13, 10: 166}
SIGN_SAMPLES = 20


def run_checks(rng: random.Random, full: bool = False) -> list[tuple[str, bool, str]]:
    out: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        out.append((name, bool(ok), detail))

    top_n = 10 if full else 9
    for n in range(1, top_n + 1):
        got = len(level_codes(n))
        check(f"count n={n}", got == KNOWN_COUNTS[n], f"{got} (expected {KNOWN_COUNTS[n]})")
    for n in range(8, top_n + 1):
        special = filter_special(enumerate_meet_semilattices(n))
        want = REFERENCE_SPECIAL_COUNTS[n]
        check(f"special n={n}", len(special) == want, f"{len(special)} (expected {want})")
        if n == 9:
            fixtures = {canonical_form(special9_structure(lab)) for lab in LABELS}
            check("special n=9 equals the 13 fixtures", {r.canonical_form for r in special} == fixtures)

    for name, values in SINGULAR_SETS.items():
        top = psi(build_gcd_set(values)).values[-1]
        check(f"psi(top)=0 on {name}", top == 0, str(top))

    for name, values, want in (("S13", S13, 0), ("S14", S14, 2)):
        got = len(find_cube_subsemilattices(build_gcd_set(values)))
        check(f"cubes in {name}", got == want, f"{got} (expected {want})")
    cubes16 = find_cube_subsemilattices(build_gcd_set(S16))
    disjoint = any(
        not set(a.elements) & set(b.elements) for i, a in enumerate(cubes16) for b in cubes16[i + 1 :]
    )
    check("S16 has two disjoint cubes", disjoint, f"{len(cubes16)} cubes in total")

    S8 = build_gcd_set(CUBE_S8)
    for v in "ABCDEFGH":
        S9 = construct(S8, v, 13 if v in "ABCDE" else None)
        label = classify9(S9)
        zero = is_singular(S9).singular
        check(f"construction {v}", label is ClassLabel("9_" + v) and zero, f"{S9.elements} -> {label.value}")

    for lab, sign in (("9_K", -1), ("9_L", 1), ("9_M", 1)):
        signs = [psi(sample_realization(lab, rng)).values[-1] for _ in range(SIGN_SAMPLES)]
        ok = all((s < 0) if sign < 0 else (s > 0) for s in signs)
        check(f"sign of psi(top) on {lab}", ok, f"{SIGN_SAMPLES} samples")

    c = build_power_construction(1)
    b = find_alpha0(c, Fraction(1, 2**40))
    check("power M=1 bracket inside (1, 2)", 1 < b.lo < b.hi < 2 and b.width <= Fraction(1, 2**40), f"[{float(b.lo)}, {float(b.hi)}]")
    return out

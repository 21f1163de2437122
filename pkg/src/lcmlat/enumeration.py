"""Meet semilattices on n elements up to isomorphism.

Every finite meet semilattice arises from a smaller one by adding a new
maximal element ``m`` whose strict down-set ``D`` is a down-closed set such
that ``D`` meets every existing principal down-set in a principal down-set.
That keeps all old meets and makes every ``meet(m, y)`` defined.  Children
of every class at level ``n - 1`` are canonicalized and deduplicated.
"""

from __future__ import annotations

import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from .poset import CanonicalForm, Structure, canonical_form, canonical_labeling, generates_double_chain

log = logging.getLogger(__name__)

SOFT_MAX_N = 10

KNOWN_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 15, 6: 53, 7: 222, 8: 1078, 9: 5994, 10: 37622}


def _downsets(n: int, lower: tuple[int, ...]) -> list[int]:
    out: list[int] = []

    def rec(i: int, mask: int) -> None:
        if i == n:
            out.append(mask)
            return
        if lower[i] & ~mask == 0:
            rec(i + 1, mask | (1 << i))
        if i:
            rec(i + 1, mask)

    # index 0 is the bottom and belongs to every admissible down-set
    rec(0, 0)
    return out


def extensions(down: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Down-mask tuples of all one-element maximal extensions of a semilattice."""
    n = len(down)
    if n == 0:
        yield (1,)
        return
    s = Structure.from_down_masks(down)
    for D in _downsets(n, s.lower):
        ok = True
        for y in range(n):
            c = D & down[y]
            if down[c.bit_length() - 1] != c:
                ok = False
                break
        if ok:
            yield down + (D | (1 << n),)


def _children_codes(parents: list[tuple[int, ...]]) -> set[int]:
    codes = set()
    for down in parents:
        for child in extensions(down):
            codes.add(canonical_labeling(child)[0])
    return codes


def _decode(n: int, code: int) -> tuple[int, ...]:
    return CanonicalForm(n, code).to_structure().down


def _workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("LCMLAT_THREADS")
    return max(1, int(env)) if env else 1


def level_codes(n: int, workers: int | None = None) -> list[int]:
    """Sorted canonical codes of all meet semilattices with ``n`` elements."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > SOFT_MAX_N:
        warnings.warn(f"enumerating n={n} > {SOFT_MAX_N}: runtime and memory grow quickly", stacklevel=2)
    nworkers = _workers(workers)
    codes = [0]
    for m in range(2, n + 1):
        parents = [_decode(m - 1, c) for c in codes]
        if nworkers == 1 or len(parents) < 64:
            found = _children_codes(parents)
        else:
            chunks = [parents[i::nworkers * 4] for i in range(nworkers * 4)]
            found = set()
            with ProcessPoolExecutor(max_workers=nworkers) as pool:
                for part in pool.map(_children_codes, chunks):
                    found |= part
        codes = sorted(found)
        log.info("level %d: %d semilattices", m, len(codes))
    return codes


def enumerate_meet_semilattices(n: int, workers: int | None = None) -> Iterator[Structure]:
    """One canonical representative per isomorphism class, in canonical-form order."""
    for code in level_codes(n, workers):
        yield CanonicalForm(n, code).to_structure()


def count_meet_semilattices(n: int, workers: int | None = None) -> int:
    return len(level_codes(n, workers))


@dataclass(frozen=True)
class CensusRecord:
    canonical_form: CanonicalForm
    n: int
    special: bool
    witness_element: int | None = None

    def __post_init__(self):
        if self.special != (self.witness_element is not None):
            raise ValueError("special records carry a witness and only they do")


def census_record(S: Structure) -> CensusRecord:
    """Classify ``S``; the witness is the lowest-index element failing the double-chain test."""
    for e in range(S.n):
        if not generates_double_chain(S, e):
            return CensusRecord(canonical_form(S), S.n, True, e)
    return CensusRecord(canonical_form(S), S.n, False)


def filter_special(structures: Iterable[Structure]) -> list[CensusRecord]:
    """Records of the structures having an element that does not generate a double chain.

    Output is sorted by canonical form so it does not depend on input order.
    """
    out = []
    for S in structures:
        rec = census_record(S)
        if rec.special:
            out.append(rec)
    out.sort(key=lambda r: r.canonical_form)
    return out

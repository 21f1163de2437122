"""Nine-element singular constructions, structure classification and cube search."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm, prod

from .errors import LcmLatError, NotGcdClosedError, PreconditionError, ValidationError
from .fixtures import LABELS, special9_structure
from .lcm import GcdSet, build_gcd_set, psi
from .poset import Structure, bits, boolean_lattice, canonical_form

ClassLabel = enum.Enum("ClassLabel", [("L" + lab, lab) for lab in LABELS] + [("OTHER", "OTHER")])
ClassLabel.__doc__ = "Isomorphism class of a nine-element structure: one of the thirteen, or OTHER."

_FIXTURE_FORMS = {canonical_form(special9_structure(lab)): ClassLabel(lab) for lab in LABELS}
_CUBE_FORM = canonical_form(boolean_lattice(3))

MAXIMAL_ANCHORS = {1: "bottom", 4: "atom", 7: "coatom", 8: "top"}
_ANCHOR_CLASS = {"bottom": "9_A", "atom": "9_B", "coatom": "9_C", "top": "9_D"}


class ConstructionError(LcmLatError):
    """No admissible choice exists for the requested construction."""


def classify9(S: GcdSet | Structure) -> ClassLabel:
    order = S.order if isinstance(S, GcdSet) else S
    if order.n != 9:
        raise PreconditionError(f"classify9 needs 9 elements, got {order.n}")
    return _FIXTURE_FORMS.get(canonical_form(order), ClassLabel.OTHER)


def _require_singular_cube(S8: GcdSet) -> None:
    if len(S8) != 8:
        raise PreconditionError(f"expected an 8-element set, got {len(S8)}")
    if len(S8.order.maximal()) != 1:
        raise PreconditionError("the largest element must be the unique top")
    if psi(S8).values[-1] != 0:
        raise PreconditionError("Psi does not vanish at the top element")


def _role_element(S8: GcdSet, role: str) -> int:
    order = S8.order
    if role == "bottom":
        return S8.elements[0]
    if role == "top":
        return S8.elements[-1]
    if role == "atom":
        picks = [i for i in range(8) if order.lower[i] == 1]
    else:
        picks = [i for i in range(8) if order.upper[i] == 1 << 7]
    if not picks:
        raise PreconditionError(f"the set has no {role}")
    return S8.elements[max(picks)]


def insert_maximal(S8: GcdSet, a: int, anchor: int | str) -> GcdSet:
    """Add ``a * anchor`` as a new maximal element (classes 9_A to 9_D).

    ``anchor`` is 1, 4, 7 or 8 (bottom, largest atom, largest coatom, top in
    ascending indexing) or the role name itself.
    """
    role = MAXIMAL_ANCHORS.get(anchor, anchor)
    if role not in _ANCHOR_CLASS:
        raise PreconditionError(f"anchor must be one of {sorted(MAXIMAL_ANCHORS)}, got {anchor!r}")
    _require_singular_cube(S8)
    if a <= 1:
        raise PreconditionError("multiplier must exceed 1")
    for x in S8:
        if gcd(a, x) != 1:
            raise PreconditionError(f"multiplier {a} is not coprime to {x}")
    new = a * _role_element(S8, role)
    return build_gcd_set(S8.elements + (new,), name=_ANCHOR_CLASS[role])


def insert_minimum(S8: GcdSet, a: int) -> GcdSet:
    """Keep the bottom ``x1`` and scale the other copy of the set by ``a`` (class 9_E).

    The result is ``{x1} | {a*x for x in S8}``; Psi at the new top is
    ``Psi_S8(top) / a``.
    """
    if a <= 1:
        raise PreconditionError("multiplier must exceed 1")
    _require_singular_cube(S8)
    return build_gcd_set((S8.elements[0],) + tuple(a * x for x in S8), name="9_E")


def _between_candidates(S8: GcdSet):
    """Yield ``(coatom, u, v, a)`` with coatom = a * lcm(u, v) for its two atoms u < v."""
    xs = S8.elements
    order = S8.order
    top = len(xs) - 1
    for i in range(len(xs)):
        if order.upper[i] != 1 << top:
            continue
        below = [xs[j] for j in bits(order.lower[i])]
        if len(below) != 2:
            continue
        u, v = below
        l = lcm(u, v)
        if xs[i] % l or xs[i] == l:
            continue
        yield xs[i], u, v, xs[i] // l


def insert_between(S8: GcdSet, variant: str) -> GcdSet:
    """Insert an element between two comparable ones (classes 9_F, 9_G, 9_H).

    With a coatom ``c = a * lcm(u, v)`` over atoms ``u, v``:
    F adds the atom ``a``, G adds ``a * u`` between ``u`` and ``c``,
    H adds ``lcm(u, v)`` between ``u, v`` and ``c``.  Coatoms are tried in
    ascending order until one gives a GCD-closed set of the right class.
    """
    variant = variant.upper().replace("9_", "")
    if variant not in ("F", "G", "H"):
        raise PreconditionError(f"variant must be F, G or H, got {variant!r}")
    _require_singular_cube(S8)
    if S8.elements[0] != 1:
        raise PreconditionError("the bottom element must be 1")
    want = ClassLabel("9_" + variant)
    tried = []
    for c, u, v, a in _between_candidates(S8):
        rest = [x for x in S8.elements if x not in (c, S8.top)]
        if any(gcd(a, x) != 1 for x in rest):
            tried.append(c)
            continue
        new = {"F": a, "G": a * u, "H": lcm(u, v)}[variant]
        if new in S8.elements:
            tried.append(c)
            continue
        try:
            S9 = build_gcd_set(S8.elements + (new,), name=want.value)
        except NotGcdClosedError:
            tried.append(c)
            continue
        if classify9(S9) is want:
            return S9
        tried.append(c)
    raise ConstructionError(f"no coatom admits variant {variant} (tried {tried})")


def construct(S8: GcdSet, variant: str, a: int | None = None) -> GcdSet:
    """Dispatch on the class letter A..H."""
    v = variant.upper().replace("9_", "")
    if v in "ABCD" and len(v) == 1:
        if a is None:
            raise PreconditionError(f"variant {v} needs a multiplier")
        return insert_maximal(S8, a, {"A": 1, "B": 4, "C": 7, "D": 8}[v])
    if v == "E":
        return insert_minimum(S8, 2 if a is None else a)
    if v in ("F", "G", "H"):
        return insert_between(S8, v)
    raise PreconditionError(f"unknown variant {variant!r}")


def _psi_top_checked(S: GcdSet, labels: tuple[ClassLabel, ...]) -> Fraction:
    got = classify9(S)
    if got not in labels:
        raise PreconditionError(f"expected a {'/'.join(l.value for l in labels)} realization, got {got.value}")
    return psi(S).values[-1]


def check_9K_sign(S: GcdSet) -> Fraction:
    """Psi at the top of a 9_K realization; the structure forces it below zero."""
    return _psi_top_checked(S, (ClassLabel.L9_K,))


def check_9LM_sign(S: GcdSet) -> Fraction:
    """Psi at the top of a 9_L or 9_M realization; the structure forces it above zero."""
    return _psi_top_checked(S, (ClassLabel.L9_L, ClassLabel.L9_M))


# -- realizations ---------------------------------------------------------


def realize(order: Structure, factors: list[int]) -> list[int]:
    """Values ``x_v = prod of factors[u] over u <= v``.

    With pairwise coprime factors above 1 (the bottom may use 1) this is a
    GCD-closed set whose divisibility order is ``order``, since the gcd of
    two values is the product over the common down-set, which is the
    down-set of the meet.
    """
    return [prod(factors[u] for u in bits(order.down[v])) for v in range(order.n)]


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def sample_realization(label: str, rng: random.Random, cap: int = 10**6, max_tries: int = 10_000) -> GcdSet:
    """A random GCD-closed set whose divisibility order is the given class.

    Each element gets a factor built from one or two small prime powers;
    primes may repeat across elements, so shapes such as ``2 | 4`` occur,
    and candidates that are not GCD closed, exceed ``cap`` at a non-maximal
    element or land in another class are rejected.
    """
    want = ClassLabel(label)
    order = special9_structure(label)
    top = order.n - 1
    inner = [v for v in range(order.n) if order.upper[v]]
    for _ in range(max_tries):
        factors = [1]
        for v in range(1, order.n):
            if v == top and rng.random() < 0.5:
                factors.append(1)
                continue
            f = 1
            for _ in range(rng.choice((1, 1, 2))):
                f *= rng.choice(_SMALL_PRIMES) ** rng.choice((1, 1, 1, 2, 3))
            factors.append(f)
        values = realize(order, factors)
        if len(set(values)) != order.n or max(values[v] for v in inner) > cap:
            continue
        try:
            S = build_gcd_set(values, name=label)
        except ValidationError:
            continue
        if classify9(S) is want:
            return S
    raise ConstructionError(f"no {label} realization found in {max_tries} tries")


# -- cube subsemilattices ---------------------------------------------------

MAX_CUBE_SEARCH = 20


@dataclass(frozen=True)
class CubeWitness:
    """Eight elements closed under gcd whose divisibility order is the cube."""

    elements: tuple[int, ...]

    @property
    def bottom(self) -> int:
        return self.elements[0]

    @property
    def top(self) -> int:
        return self.elements[-1]


def is_cube_subsemilattice(values) -> bool:
    vals = sorted(set(values))
    if len(vals) != 8:
        return False
    present = set(vals)
    if any(gcd(x, y) not in present for x, y in combinations(vals, 2)):
        return False
    return canonical_form(build_gcd_set(vals).order) == _CUBE_FORM


def _edges_are_covers(S: GcdSet, values) -> bool:
    sub = build_gcd_set(values)
    for a, b in sub.order.covers:
        if sub.elements[a] not in S.lower_covers(sub.elements[b]):
            return False
    return True


def find_cube_subsemilattices(S: GcdSet, cover_preserving: bool = False) -> list[CubeWitness]:
    """All cube-shaped meet subsemilattices, sorted by element tuple.

    A cube is fixed by its top and three pairwise incomparable coatoms; the
    atoms and bottom are their pairwise and triple gcds.  With
    ``cover_preserving`` only cubes whose twelve edges are covers of ``S``
    are kept.
    """
    if len(S) > MAX_CUBE_SEARCH:
        raise PreconditionError(f"cube search is limited to {MAX_CUBE_SEARCH} elements, got {len(S)}")
    xs = S.elements
    found = set()
    for t in range(len(xs)):
        below = [xs[j] for j in bits(S.order.down[t] & ~(1 << t))]
        for c1, c2, c3 in combinations(below, 3):
            if c2 % c1 == 0 or c3 % c1 == 0 or c3 % c2 == 0:
                continue
            cand = {xs[t], c1, c2, c3, gcd(c1, c2), gcd(c1, c3), gcd(c2, c3), gcd(c1, c2, c3)}
            if len(cand) == 8 and is_cube_subsemilattice(cand):
                if cover_preserving and not _edges_are_covers(S, cand):
                    continue
                found.add(tuple(sorted(cand)))
    return [CubeWitness(w) for w in sorted(found)]

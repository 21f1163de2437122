"""GCD-closed sets, the Psi function and exact LCM-matrix singularity tests.

For a GCD-closed set ``S = {x_1 < ... < x_n}`` the LCM matrix factors as
``(Delta E) Lambda (Delta E)^T`` with ``E`` the divisibility incidence matrix,
``Delta = diag(x_i)`` and ``Lambda = diag(Psi(x_i))``, where
``Psi(x_i) = sum over x_j | x_i of mu(x_j, x_i) / x_j``.  The matrix is
singular exactly when some ``Psi(x_i)`` vanishes.  Everything here is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Iterable, NamedTuple

from .errors import FactorizationBudgetExceeded, NotGcdClosedError, PreconditionError, ValidationError
from .poset import Structure, bits, moebius

DEFAULT_TRIAL_BUDGET = 10**7


@dataclass(frozen=True)
class GcdSet:
    """A GCD-closed set of positive integers, ascending, with its divisibility order."""

    elements: tuple[int, ...]
    order: Structure = field(repr=False, compare=False)
    name: str | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, value: int) -> int:
        try:
            return self.elements.index(value)
        except ValueError:
            raise ValidationError(f"{value} is not an element of the set") from None

    def divisors_of(self, value: int) -> list[int]:
        i = self.index(value)
        return [self.elements[j] for j in bits(self.order.down[i])]

    def lower_covers(self, value: int) -> list[int]:
        i = self.index(value)
        return [self.elements[j] for j in bits(self.order.lower[i])]

    @property
    def top(self) -> int:
        return self.elements[-1]


def _divisibility_order(xs: tuple[int, ...]) -> Structure:
    down = []
    for i, x in enumerate(xs):
        m = 0
        for j in range(i + 1):
            if x % xs[j] == 0:
                m |= 1 << j
        down.append(m)
    return Structure.from_down_masks(down)


def _check_values(values: Iterable[int]) -> list[int]:
    out = []
    for v in values:
        if isinstance(v, bool) or int(v) != v:
            raise ValidationError(f"{v!r} is not an integer")
        v = int(v)
        if v < 1:
            raise ValidationError(f"{v} is not a positive integer")
        out.append(v)
    if not out:
        raise ValidationError("set must be nonempty")
    return out


def build_gcd_set(values: Iterable[int], name: str | None = None) -> GcdSet:
    xs = _check_values(values)
    if len(set(xs)) != len(xs):
        dup = sorted(v for v in set(xs) if xs.count(v) > 1)
        raise ValidationError(f"duplicate elements: {dup}")
    xs.sort()
    present = set(xs)
    for i, x in enumerate(xs):
        for y in xs[i + 1:]:
            g = gcd(x, y)
            if g not in present:
                raise NotGcdClosedError(x, y, g)
    t = tuple(xs)
    return GcdSet(t, _divisibility_order(t), name)


def gcd_closure(values: Iterable[int], name: str | None = None) -> GcdSet:
    closed = set(_check_values(values))
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            g = gcd(x, y)
            if g not in closed:
                closed.add(g)
                frontier.append(g)
    t = tuple(sorted(closed))
    return GcdSet(t, _divisibility_order(t), name)


@dataclass(frozen=True)
class PsiVector:
    values: tuple[Fraction, ...]
    exponent: int = 1

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


def _check_exponent(exponent: int) -> int:
    if isinstance(exponent, bool) or int(exponent) != exponent or exponent < 1:
        raise PreconditionError(f"exponent must be a positive integer, got {exponent!r}")
    return int(exponent)


def psi(S: GcdSet, exponent: int = 1) -> PsiVector:
    """Exact ``Psi`` values, or the power variant ``sum mu(x_j, x_i) / x_j**exponent``."""
    e = _check_exponent(exponent)
    mu = moebius(S.order)
    xs = S.elements
    vals = []
    for i in range(len(xs)):
        total = Fraction(0)
        for j in bits(S.order.down[i]):
            m = mu[(j, i)]
            if m:
                total += Fraction(m, xs[j] ** e)
        vals.append(total)
    return PsiVector(tuple(vals), e)


class SingularityVerdict(NamedTuple):
    singular: bool
    zero_indices: tuple[int, ...]


def is_singular(S: GcdSet, exponent: int = 1) -> SingularityVerdict:
    values = psi(S, exponent).values
    zeros = tuple(i for i, v in enumerate(values) if v == 0)
    return SingularityVerdict(bool(zeros), zeros)


def lcm_matrix(S: GcdSet, exponent: int = 1) -> list[list[int]]:
    e = _check_exponent(exponent)
    xs = S.elements
    return [[lcm(a, b) ** e for b in xs] for a in xs]


@dataclass(frozen=True)
class IncidenceFactorization:
    """``E`` (0/1, lower triangular), ``delta`` (x_i**e) and ``lam`` (Psi values)."""

    E: tuple[tuple[int, ...], ...]
    delta: tuple[int, ...]
    lam: tuple[Fraction, ...]

    def product(self) -> list[list[Fraction]]:
        """``(Delta E) Lambda (Delta E)^T`` computed entrywise."""
        n = len(self.delta)
        de = [[self.delta[i] * self.E[i][k] for k in range(n)] for i in range(n)]
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(sum((de[i][k] * de[j][k] * self.lam[k] for k in range(n) if de[i][k] and de[j][k]), Fraction(0)))
            out.append(row)
        return out


def factorize(S: GcdSet, exponent: int = 1) -> IncidenceFactorization:
    e = _check_exponent(exponent)
    n = len(S)
    E = tuple(tuple(1 if S.order.down[i] >> j & 1 else 0 for j in range(n)) for i in range(n))
    return IncidenceFactorization(E, tuple(x**e for x in S.elements), psi(S, e).values)


def det_lcm(S: GcdSet, exponent: int = 1) -> int:
    """``det [S]`` (or the power version) as ``prod x_i**(2e) * prod Psi(x_i)``."""
    p = psi(S, exponent)
    d = Fraction(prod(x ** (2 * p.exponent) for x in S.elements))
    for v in p.values:
        d *= v
    if d.denominator != 1:
        raise AssertionError("determinant came out non-integral")
    return d.numerator


class CoverLcm(enum.Enum):
    FORCES_NONZERO = "ForcesNonzero"
    NO_CONCLUSION = "NoConclusion"


def cover_lcm_predicate(S: GcdSet, x: int) -> CoverLcm:
    """``FORCES_NONZERO`` iff ``x`` exceeds the lcm of the elements it covers."""
    covered = S.lower_covers(x)
    if not covered:
        raise PreconditionError(f"{x} covers no element of the set")
    return CoverLcm.FORCES_NONZERO if x > lcm(*covered) else CoverLcm.NO_CONCLUSION


def prime_factors(n: int, budget: int = DEFAULT_TRIAL_BUDGET) -> dict[int, int]:
    """Factor ``n`` by trial division, giving up after ``budget`` trial divisors."""
    if n < 1:
        raise PreconditionError(f"cannot factor {n}")
    out: dict[int, int] = {}
    m = n
    d = 2
    tried = 0
    while d * d <= m:
        tried += 1
        if tried > budget:
            raise FactorizationBudgetExceeded(n, budget)
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def omega(n: int, budget: int = DEFAULT_TRIAL_BUDGET) -> int:
    """Number of distinct prime divisors of ``n``."""
    return len(prime_factors(n, budget))


def check_sun_condition(S: GcdSet, budget: int = DEFAULT_TRIAL_BUDGET) -> bool:
    """True iff every element has at most two distinct prime divisors."""
    return max(omega(x, budget) for x in S.elements) <= 2

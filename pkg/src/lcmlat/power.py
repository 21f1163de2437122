"""Power-LCM matrices with real exponents.

For the family ``{1, 2, 3, 5, 6, 10, 15, 2p_1, ..., 2p_{k-1}, 30 p_1 ... p_{k-1}}``
the function

    h(alpha) = sum_i mu(x_i, x_n) / x_i**alpha

is positive for ``alpha <= log2(k)`` and tends to -1, so it has a root
``alpha_0`` past any given ``M``.  Real exponents are evaluated in interval
arithmetic, so every sign reported here is certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from mpmath import iv, mpf
from mpmath.libmp import to_rational

from .errors import PreconditionError, UncertifiableError
from .lcm import GcdSet, build_gcd_set

MIN_PRECISION = 64
MAX_PRECISION = 2**14
_EXCLUDED = (2, 3, 5)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _minimal_k(M) -> int:
    k = max(2, math.ceil(2 ** float(M)))
    while math.log2(k) < M:
        k += 1
    while k > 2 and math.log2(k - 1) >= M:
        k -= 1
    return k


def _choose_primes(k: int) -> tuple[int, ...]:
    # 2p >= 5(k-1) keeps sum 1/(2p)^alpha below 1/5^alpha for alpha >= 1
    out = []
    p = max(7, -(-5 * (k - 1) // 2))
    while len(out) < k - 1:
        if p not in _EXCLUDED and _is_prime(p):
            out.append(p)
        p += 1
    return tuple(out)


@dataclass(frozen=True)
class PowerConstruction:
    M: Fraction
    k: int
    primes: tuple[int, ...]
    gcd_set: GcdSet
    mu_top: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.primes)) != len(self.primes) or any(p in _EXCLUDED for p in self.primes):
            raise ValueError("primes must be distinct and avoid 2, 3, 5")
        if any(2 * p < 5 * (self.k - 1) for p in self.primes):
            raise ValueError("every prime needs 2p >= 5(k-1)")
        if len(self.gcd_set) != self.k + 7:
            raise ValueError("set size must be k + 7")

    @property
    def elements(self) -> tuple[int, ...]:
        return self.gcd_set.elements

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(mu, x)`` pairs of the sum defining ``h``."""
        return [(m, x) for m, x in zip(self.mu_top, self.elements) if m]


def _mu_pattern(elements: tuple[int, ...], k: int) -> tuple[int, ...]:
    top = elements[-1]
    out = []
    for x in elements:
        if x == top:
            out.append(1)
        elif x == 1:
            out.append(-1)
        elif x == 2:
            out.append(k)
        elif x in (3, 5):
            out.append(1)
        else:
            out.append(-1)
    return tuple(out)


def build_power_construction(M) -> PowerConstruction:
    """The set for target ``M``, with minimal ``k`` and the smallest admissible primes."""
    try:
        Mq = Fraction(M)
    except (TypeError, ValueError) as exc:
        raise PreconditionError(f"M must be a real number, got {M!r}") from exc
    if Mq < 1:
        raise PreconditionError(f"M must be at least 1, got {M}")
    k = _minimal_k(Mq)
    primes = _choose_primes(k)
    values = [1, 2, 3, 5, 6, 10, 15] + [2 * p for p in primes] + [30 * math.prod(primes)]
    S = build_gcd_set(values, name=f"power-M{M}")
    return PowerConstruction(Mq, k, primes, S, _mu_pattern(S.elements, k))


class HValue(NamedTuple):
    """``h`` at one point: the true value lies within ``error_bound`` of ``value``.

    Both are exact rationals; interval endpoints are dyadic, so nothing is
    lost converting them.
    """

    value: Fraction
    error_bound: Fraction

    def sign(self) -> int:
        """+1 or -1 when certified, 0 when the enclosure contains zero."""
        if self.value > self.error_bound:
            return 1
        if self.value < -self.error_bound:
            return -1
        return 0


def _as_fraction(alpha) -> Fraction:
    if isinstance(alpha, mpf):
        return Fraction(*to_rational(alpha._mpf_))
    return Fraction(alpha)


def _endpoints(enc) -> tuple[Fraction, Fraction]:
    a, b = enc._mpi_
    return Fraction(*to_rational(a)), Fraction(*to_rational(b))


def h_exact(c: PowerConstruction, alpha: int) -> Fraction:
    if alpha < 0 or int(alpha) != alpha:
        raise PreconditionError(f"exact evaluation needs an integer alpha >= 0, got {alpha}")
    a = int(alpha)
    return sum((Fraction(m, x**a) for m, x in c.terms()), Fraction(0))


def _h_interval(c: PowerConstruction, alpha: Fraction, precision_bits: int):
    old = iv.prec
    try:
        iv.prec = precision_bits
        a = iv.mpf(alpha.numerator) / alpha.denominator
        total = iv.mpf(0)
        for m, x in c.terms():
            total += m * iv.exp(-a * iv.log(iv.mpf(x)))
        return total
    finally:
        iv.prec = old


def h_eval(c: PowerConstruction, alpha, precision_bits: int = MIN_PRECISION, exact_integers: bool = True) -> HValue:
    """``h(alpha)`` with a rigorous error bound.

    Integer ``alpha`` gives the exact rational with bound 0 unless
    ``exact_integers`` is off.  Otherwise the sum is enclosed in an interval
    at ``precision_bits``; ``value`` is its midpoint and ``error_bound`` its
    half width, rounded outward.
    """
    if precision_bits < MIN_PRECISION:
        raise PreconditionError(f"precision must be at least {MIN_PRECISION} bits, got {precision_bits}")
    a = _as_fraction(alpha)
    if a < 0:
        raise PreconditionError(f"alpha must be nonnegative, got {alpha}")
    if exact_integers and a.denominator == 1:
        return HValue(h_exact(c, a.numerator), Fraction(0))
    lo, hi = _endpoints(_h_interval(c, a, precision_bits))
    mid = (lo + hi) / 2
    return HValue(mid, hi - mid)


def _certified_sign(c: PowerConstruction, alpha: Fraction, precision_bits: int) -> tuple[int, HValue, int]:
    prec = precision_bits
    while True:
        lo, hi = _endpoints(_h_interval(c, alpha, prec))
        if lo > 0 or hi < 0:
            mid = (lo + hi) / 2
            val = HValue(mid, hi - mid)
            return (1 if lo > 0 else -1), val, prec
        if prec >= MAX_PRECISION:
            raise UncertifiableError(f"sign of h({float(alpha)}) undecided at {prec} bits")
        prec *= 2


@dataclass(frozen=True)
class AlphaBracket:
    lo: Fraction
    hi: Fraction
    h_lo: HValue
    h_hi: HValue
    precision_bits: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("bracket needs lo < hi")
        if self.h_lo.sign() != 1 or self.h_hi.sign() != -1:
            raise ValueError("bracket endpoints must carry certified signs +, -")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def find_alpha0(c: PowerConstruction, tol, precision_bits: int = MIN_PRECISION) -> AlphaBracket:
    """Bisect from ``lo = M`` to a certified bracket of width at most ``tol``.

    ``hi`` starts at ``2M`` and doubles until ``h(hi)`` is certified
    negative.  Each sign is certified by interval evaluation, doubling the
    precision when the enclosure straddles zero.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise PreconditionError(f"tol must be positive, got {tol}")
    if precision_bits < MIN_PRECISION:
        raise PreconditionError(f"precision must be at least {MIN_PRECISION} bits, got {precision_bits}")
    prec = precision_bits
    lo = c.M
    s, h_lo, prec = _certified_sign(c, lo, prec)
    if s != 1:
        raise UncertifiableError(f"h(M) is not positive for M={c.M}")
    hi = 2 * lo
    while True:
        s, h_hi, prec = _certified_sign(c, hi, prec)
        if s == -1:
            break
        lo, h_lo = hi, h_hi
        hi *= 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s, h_mid, prec = _certified_sign(c, mid, prec)
        if s == 1:
            lo, h_lo = mid, h_mid
        else:
            hi, h_hi = mid, h_mid
    return AlphaBracket(lo, hi, h_lo, h_hi, prec)

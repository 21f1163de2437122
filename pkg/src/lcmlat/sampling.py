"""Seeded random inputs for property checks."""

from __future__ import annotations

import random
from math import gcd, prod

from .enumeration import extensions
from .lcm import GcdSet, gcd_closure
from .poset import Structure

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
DEFAULT_CAP = 12


def _gcd_closed(values: set[int]) -> set[int]:
    closed = set(values)
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            g = gcd(x, y)
            if g not in closed:
                closed.add(g)
                frontier.append(g)
    return closed


def random_gcd_set(
    rng: random.Random,
    n_primes: tuple[int, int] = (2, 4),
    max_exponent: int = 3,
    generators: tuple[int, int] = (2, 8),
    cap: int = DEFAULT_CAP,
) -> GcdSet:
    """GCD closure of random products of 2 to 4 small primes, at most ``cap`` elements.

    Generators whose addition would push the closure past ``cap`` are skipped.
    """
    primes = rng.sample(PRIMES, rng.randint(*n_primes))
    return random_gcd_set_on(rng, primes, max_exponent, cap, generators)


def random_sun_set(rng: random.Random, max_exponent: int = 4, cap: int = DEFAULT_CAP) -> GcdSet:
    """A GCD-closed set whose elements all have the form ``p**a * q**b``."""
    p, q = rng.sample(PRIMES, 2)
    return random_gcd_set_on(rng, (p, q), max_exponent, cap)


def random_gcd_set_on(
    rng: random.Random, primes, max_exponent: int, cap: int = DEFAULT_CAP, generators: tuple[int, int] = (2, 10)
) -> GcdSet:
    closed: set[int] = set()
    for _ in range(rng.randint(*generators)):
        x = prod(p ** rng.randint(0, max_exponent) for p in primes)
        trial = _gcd_closed(closed | {x})
        if len(trial) <= cap:
            closed = trial
    return gcd_closure(closed or {1})


def random_structure(n: int, rng: random.Random) -> Structure:
    """A meet semilattice grown by random maximal extensions (not uniform over classes)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    down: tuple[int, ...] = (1,)
    while len(down) < n:
        down = rng.choice(list(extensions(down)))
    return Structure.from_down_masks(down)

"""Named sets and the thirteen nine-element special structures.

The cube part shared by most structures uses the indices

    0 bottom; 1, 2, 3 atoms; 4 = 1 v 2, 5 = 1 v 3, 6 = 2 v 3; 7 top

and index 8 is the extra element of each variant.  ``9_K``, ``9_L`` and
``9_M`` are written with the role labels x1..x9 (as 0..8) used by the sign
arguments, so that ``x2`` in ``9_K`` is the element between the bottom and
the atom ``x3``.
"""

from __future__ import annotations

from .poset import Structure

CUBE_COVERS = (
    (0, 1), (0, 2), (0, 3),
    (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6),
    (4, 7), (5, 7), (6, 7),
)


def _cube_plus(add, remove=()):
    return tuple(sorted(set(CUBE_COVERS) - set(remove) | set(add)))


SPECIAL9_COVERS: dict[str, tuple[tuple[int, int], ...]] = {
    "9_A": _cube_plus([(0, 8)]),
    "9_B": _cube_plus([(3, 8)]),
    "9_C": _cube_plus([(6, 8)]),
    "9_D": _cube_plus([(7, 8)]),
    "9_E": _cube_plus([(8, 0)]),
    "9_F": _cube_plus([(0, 8), (8, 4)]),
    "9_G": _cube_plus([(1, 8), (8, 4)], remove=[(1, 4)]),
    "9_H": _cube_plus([(4, 8), (8, 7)], remove=[(4, 7)]),
    "9_I": _cube_plus([(1, 8), (8, 7)]),
    "9_J": _cube_plus([(0, 8), (8, 7)]),
    "9_K": (
        (0, 1), (1, 2), (0, 3), (0, 4),
        (2, 5), (3, 5), (2, 6), (4, 6), (3, 7), (4, 7),
        (5, 8), (6, 8), (7, 8),
    ),
    "9_L": (
        (0, 1), (0, 2), (0, 3),
        (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7),
        (4, 8), (5, 8), (6, 8), (7, 8),
    ),
    "9_M": (
        (0, 1), (0, 2), (0, 3),
        (1, 4), (2, 5), (1, 6), (2, 6), (3, 6), (3, 7),
        (4, 8), (5, 8), (6, 8), (7, 8),
    ),
}

LABELS = tuple(sorted(SPECIAL9_COVERS))


def special9_structure(label: str) -> Structure:
    return Structure.from_covers(9, SPECIAL9_COVERS[label])


CUBE_S8 = (1, 2, 3, 5, 66, 70, 255, 39270)

# singular with nine elements; every proper principal submatrix is invertible
SINGULAR_9I = (1, 2, 3, 4, 5, 6, 10, 45, 180)

# Two readings of the 9_J example circulate: one with the atom 5, one with
# 255 in its place.  Only the first is GCD closed (gcd(255, 2907) = 51 is
# missing from the second) and it has Psi(top) = 0, so it is the fixture.
IRREDUCIBLE_9J = (1, 5, 11, 17, 19, 748, 1463, 2907, 4476780)
IRREDUCIBLE_9J_ALT = (1, 11, 17, 19, 255, 748, 1463, 2907, 4476780)

S13 = (1, 2, 3, 13, 23, 25, 41, 75, 369, 533, 6877, 16675, 3679538850)
S14 = (1, 2, 3, 6, 7, 11, 13, 19, 56, 147, 209, 1859, 196859, 33105384312)
S16 = (1, 2, 3, 5, 7, 14, 20, 35, 54, 231, 255, 1820, 45738, 137445, 39308760, 3029801294520)

# a singular LCM matrix on a set that is not GCD closed
NOT_CLOSED_4 = (1, 2, 15, 42)

SINGULAR_SETS = {
    "S8": CUBE_S8,
    "9I": SINGULAR_9I,
    "9J": IRREDUCIBLE_9J,
    "S13": S13,
    "S14": S14,
    "S16": S16,
}

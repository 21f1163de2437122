from __future__ import annotations

import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcmlat.construct import (
    ClassLabel,
    ConstructionError,
    classify9,
    construct,
    find_cube_subsemilattices,
    insert_between,
    insert_maximal,
    insert_minimum,
    is_cube_subsemilattice,
    realize,
    sample_realization,
)
from lcmlat.errors import PreconditionError
from lcmlat.fixtures import CUBE_S8, SINGULAR_9I, IRREDUCIBLE_9J, LABELS, S13, S14, S16, special9_structure
from lcmlat.lcm import build_gcd_set, is_singular, psi
from lcmlat.poset import boolean_lattice, canonical_form, chain, is_isomorphic

S8 = build_gcd_set(CUBE_S8)

# frozen outputs of each construction on S8 (multiplier 13 where one is needed)
EXPECTED = {
    "A": (1, 2, 3, 5, 13, 66, 70, 255, 39270),
    "B": (1, 2, 3, 5, 65, 66, 70, 255, 39270),
    "C": (1, 2, 3, 5, 66, 70, 255, 3315, 39270),
    "D": (1, 2, 3, 5, 66, 70, 255, 39270, 510510),
    "E": (1, 13, 26, 39, 65, 858, 910, 3315, 510510),
    "F": (1, 2, 3, 5, 11, 66, 70, 255, 39270),
    "G": (1, 2, 3, 5, 22, 66, 70, 255, 39270),
    "H": (1, 2, 3, 5, 6, 66, 70, 255, 39270),
}


def _brute_cubes(S):
    cube = canonical_form(boolean_lattice(3))
    out = []
    for combo in combinations(S.elements, 8):
        if all(gcd(a, b) in combo for a, b in combinations(combo, 2)):
            if canonical_form(build_gcd_set(combo).order) == cube:
                out.append(combo)
    return sorted(out)


@pytest.mark.parametrize("label", LABELS)
def test_classify_fixture(label):
    assert classify9(special9_structure(label)) is ClassLabel(label)


def test_classify_known_singular_sets():
    assert classify9(build_gcd_set(SINGULAR_9I)) is ClassLabel.L9_I
    assert classify9(build_gcd_set(IRREDUCIBLE_9J)) is ClassLabel.L9_J
    assert classify9(chain(9)) is ClassLabel.OTHER
    with pytest.raises(PreconditionError):
        classify9(S8)


@pytest.mark.parametrize("variant", sorted(EXPECTED))
def test_constructions_on_s8(variant):
    S9 = construct(S8, variant, 13 if variant in "ABCDE" else None)
    assert S9.elements == EXPECTED[variant]
    assert classify9(S9) is ClassLabel("9_" + variant)
    assert is_singular(S9).singular


@settings(max_examples=40)
@given(st.sampled_from(sorted(EXPECTED)), st.integers(2, 50))
def test_classification_is_scale_invariant(variant, k):
    S9 = build_gcd_set(EXPECTED[variant])
    scaled = build_gcd_set([k * x for x in S9.elements])
    assert classify9(scaled) is classify9(S9)


@pytest.mark.parametrize("a", [7, 11, 13, 17, 19, 23, 29, 31])
@pytest.mark.parametrize("anchor", [1, 4, 7, 8])
def test_insert_maximal_with_coprime_multipliers(a, anchor):
    if gcd(a, 39270) != 1:
        with pytest.raises(PreconditionError):
            insert_maximal(S8, a, anchor)
        return
    S9 = insert_maximal(S8, a, anchor)
    assert is_singular(S9).singular
    assert classify9(S9) is ClassLabel({1: "9_A", 4: "9_B", 7: "9_C", 8: "9_D"}[anchor])


def test_insert_maximal_errors():
    with pytest.raises(PreconditionError):
        insert_maximal(S8, 13, 5)
    with pytest.raises(PreconditionError):
        insert_maximal(S8, 1, 1)
    with pytest.raises(PreconditionError):
        insert_maximal(build_gcd_set([1, 2, 3, 5, 6, 10, 15, 30]), 7, 1)


@pytest.mark.parametrize("a", [2, 7, 13, 49])
def test_insert_minimum_scales_psi(a):
    S9 = insert_minimum(S8, a)
    assert classify9(S9) is ClassLabel.L9_E
    assert psi(S9).values[-1] == psi(S8).values[-1] / a == 0


def test_insert_between_needs_one_as_bottom():
    with pytest.raises(PreconditionError):
        insert_between(build_gcd_set([7 * x for x in CUBE_S8]), "F")
    with pytest.raises(PreconditionError):
        insert_between(S8, "Q")


def test_insert_between_reports_when_nothing_fits():
    # the lcm-cube over 1, 2, 3, 5 has coatoms equal to lcms of their atoms
    cube = build_gcd_set([1, 2, 3, 5, 6, 10, 15, 30])
    with pytest.raises(PreconditionError):
        insert_between(cube, "F")


def test_construct_dispatch_errors():
    with pytest.raises(PreconditionError):
        construct(S8, "A")
    with pytest.raises(PreconditionError):
        construct(S8, "Z", 13)


@settings(max_examples=60)
@given(st.sampled_from(LABELS), st.permutations([2, 3, 5, 7, 11, 13, 17, 19, 23]))
def test_realize_gives_set_with_the_same_order(label, primes):
    order = special9_structure(label)
    factors = [1] + list(primes[:8])
    S = build_gcd_set(realize(order, factors))
    assert is_isomorphic(S.order, order)


@pytest.mark.parametrize("label", ["9_K", "9_L", "9_M", "9_A", "9_J"])
def test_sample_realization_hits_class(label):
    rng = random.Random(3)
    for _ in range(10):
        assert classify9(sample_realization(label, rng)) is ClassLabel(label)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_signs_on_k_l_m(seed):
    rng = random.Random(seed)
    assert psi(sample_realization("9_K", rng)).values[-1] < 0
    assert psi(sample_realization("9_L", rng)).values[-1] > 0
    assert psi(sample_realization("9_M", rng)).values[-1] > 0


# -- cubes -------------------------------------------------------------------------


def test_cube_predicate():
    assert is_cube_subsemilattice(CUBE_S8)
    assert not is_cube_subsemilattice([1, 2, 3, 5, 6, 10, 15])
    assert not is_cube_subsemilattice([1, 2, 4, 8, 16, 32, 64, 128])


@pytest.mark.parametrize("values", [S13, S14, S16, CUBE_S8, EXPECTED["E"], EXPECTED["H"]])
def test_cube_search_matches_brute_force(values):
    S = build_gcd_set(values)
    assert [w.elements for w in find_cube_subsemilattices(S)] == _brute_cubes(S)


def test_cube_counts_on_reference_sets():
    assert find_cube_subsemilattices(build_gcd_set(S13)) == []
    c14 = find_cube_subsemilattices(build_gcd_set(S14))
    assert len(c14) == 2
    assert c14[0].top == c14[1].top == 33105384312 and c14[0].bottom == c14[1].bottom == 1
    assert len(find_cube_subsemilattices(build_gcd_set(S14), cover_preserving=True)) == 2


def test_s16_is_the_four_cube():
    S = build_gcd_set(S16)
    assert is_isomorphic(S.order, boolean_lattice(4))
    cubes = find_cube_subsemilattices(S)
    facets = find_cube_subsemilattices(S, cover_preserving=True)
    assert len(cubes) == 30 and len(facets) == 8
    disjoint = [(a, b) for a, b in combinations(cubes, 2) if not set(a.elements) & set(b.elements)]
    # the opposite facet pairs, one per prime direction
    assert len(disjoint) == 4
    assert all(a in facets and b in facets for a, b in disjoint)
    assert ((1, 2, 5, 7, 14, 20, 35, 1820), (3, 54, 231, 255, 45738, 137445, 39308760, 3029801294520)) in [
        (a.elements, b.elements) for a, b in disjoint
    ]


def test_cube_search_size_limit():
    S = build_gcd_set([d for d in range(1, 721) if 720 % d == 0])
    with pytest.raises(PreconditionError):
        find_cube_subsemilattices(S)


def test_sign_checkers():
    from lcmlat.construct import check_9K_sign, check_9LM_sign

    rng = random.Random(1)
    assert check_9K_sign(sample_realization("9_K", rng)) < 0
    assert check_9LM_sign(sample_realization("9_L", rng)) > 0
    with pytest.raises(PreconditionError):
        check_9K_sign(build_gcd_set(SINGULAR_9I))

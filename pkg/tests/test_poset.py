from __future__ import annotations

import random
from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcmlat.errors import ValidationError
from lcmlat.fixtures import SPECIAL9_COVERS, special9_structure
from lcmlat.lcm import build_gcd_set
from lcmlat.poset import (
    CanonicalForm,
    Structure,
    antichain,
    bits,
    boolean_lattice,
    canonical_form,
    canonical_relabeling,
    chain,
    covers_below,
    generates_double_chain,
    is_isomorphic,
    is_meet_semilattice,
    max_antichain,
    meet,
    meet_closure,
    moebius,
    residual_mask,
    width,
)
from lcmlat.sampling import random_structure

BOWTIE = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)]


@st.composite
def structures(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_structure(n, random.Random(seed))


def _brute_meet(S: Structure, a: int, b: int) -> int | None:
    lower = [c for c in range(S.n) if S.leq(c, a) and S.leq(c, b)]
    tops = [c for c in lower if all(S.leq(d, c) for d in lower)]
    return tops[0] if len(tops) == 1 else None


# -- construction and validation ---------------------------------------------


def test_chain_and_antichain_shapes():
    c = chain(4)
    assert c.covers == frozenset({(0, 1), (1, 2), (2, 3)})
    assert c.bottom == 0 and c.maximal() == [3]
    a = antichain(3)
    assert a.minimal() == [0, 1, 2]
    assert not a.is_meet_semilattice()


def test_boolean_lattice_has_expected_cover_count():
    for k in range(1, 5):
        assert len(boolean_lattice(k).covers) == k * 2 ** (k - 1)


@pytest.mark.parametrize(
    "covers, message",
    [
        ([(0, 0)], "loop"),
        ([(0, 3)], "out of range"),
        ([(1, 0)], "linear extension"),
    ],
)
def test_structure_rejects_bad_covers(covers, message):
    with pytest.raises(ValidationError, match=message):
        Structure(3, covers)


def test_structure_rejects_non_reduced_relation():
    with pytest.raises(ValidationError):
        Structure(3, [(0, 1), (1, 2), (0, 2)])


def test_bowtie_is_not_a_meet_semilattice():
    assert not is_meet_semilattice(BOWTIE, 5)
    with pytest.raises(ValidationError):
        Structure(5, BOWTIE)
    assert Structure(5, BOWTIE, require_meets=False).n == 5


def test_from_covers_relabels_to_linear_extension():
    S, order = Structure.from_covers_with_labels(3, [(2, 0), (2, 1)])
    assert S.bottom == 0
    assert order[0] == 2
    with pytest.raises(ValidationError, match="cycle"):
        Structure.from_covers(2, [(0, 1), (1, 0)])


def test_special_fixtures_are_nine_element_meet_semilattices():
    for label in SPECIAL9_COVERS:
        S = special9_structure(label)
        assert S.n == 9 and S.is_meet_semilattice()


def test_json_shape():
    assert chain(2).to_json() == {"n": 2, "covers": [[0, 1]]}


# -- meets and closures ---------------------------------------------------------


@settings(max_examples=150)
@given(structures())
def test_meet_laws(S):
    for a in range(S.n):
        assert meet(S, a, a) == a
        for b in range(S.n):
            m = meet(S, a, b)
            assert m == meet(S, b, a) == _brute_meet(S, a, b)
            for c in range(S.n):
                assert meet(S, meet(S, a, b), c) == meet(S, a, meet(S, b, c))


def test_meet_closure_of_cube_coatoms_is_everything_but_top():
    cube = boolean_lattice(3)
    top = cube.maximal()[0]
    coatoms = covers_below(cube, top)
    assert meet_closure(cube, coatoms) == frozenset(range(cube.n)) - {top}
    with pytest.raises(ValidationError):
        meet_closure(cube, [])


# -- Moebius ------------------------------------------------------------------


def _number_theoretic_mu(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


@pytest.mark.parametrize("N", [12, 30, 36, 360, 2310])
def test_moebius_on_divisor_lattice_matches_classical_mu(N):
    S = build_gcd_set([d for d in range(1, N + 1) if N % d == 0])
    mu = moebius(S.order)
    xs = S.elements
    for i, j in product(range(len(xs)), repeat=2):
        if xs[i] % xs[j] == 0:
            assert mu[(j, i)] == _number_theoretic_mu(xs[i] // xs[j])
        else:
            assert mu[(j, i)] == 0


def test_moebius_on_chain_and_boolean_lattice():
    mu = moebius(chain(5))
    assert [mu[(i, 4)] for i in range(5)] == [0, 0, 0, -1, 1]
    B = boolean_lattice(3)
    mu = moebius(B)
    top = B.maximal()[0]
    for j in range(B.n):
        # mu(j, top) = (-1)^(3 - rank j) on the cube
        rank = bin(B.down[j]).count("1").bit_length() - 1
        assert mu[(j, top)] == (-1) ** (3 - rank)


@settings(max_examples=100)
@given(structures())
def test_moebius_sums_vanish(S):
    mu = moebius(S)
    for i in range(S.n):
        for j in range(S.n):
            if S.less(j, i):
                # sum over the interval [j, i] of mu(k, i) is zero
                assert sum(mu[(k, i)] for k in range(S.n) if S.leq(j, k) and S.leq(k, i)) == 0
            elif not S.leq(j, i):
                assert mu[(j, i)] == 0


# -- width and double chains ----------------------------------------------------


def _brute_width(S: Structure, subset) -> int:
    subset = list(subset)
    best = 0
    for r in range(1, len(subset) + 1):
        for combo in combinations(subset, r):
            if all(not S.comparable(a, b) for a, b in combinations(combo, 2)):
                best = r
    return best


def _brute_double_chain(S: Structure, x: int) -> bool:
    cov = set(c for c in range(S.n) if S.less(c, x) and not any(S.less(c, d) and S.less(d, x) for d in range(S.n)))
    if not cov:
        return True
    closed = set(cov)
    changed = True
    while changed:
        changed = False
        for a, b in combinations(sorted(closed), 2):
            m = _brute_meet(S, a, b)
            if m not in closed:
                closed.add(m)
                changed = True
    rest = sorted(closed - cov)
    for colors in product((0, 1), repeat=len(rest)):
        parts = [[r for r, c in zip(rest, colors) if c == k] for k in (0, 1)]
        if all(S.comparable(a, b) for p in parts for a, b in combinations(p, 2)):
            return True
    return False


@settings(max_examples=150)
@given(structures())
def test_width_matches_subset_scan(S):
    assert width(S) == _brute_width(S, range(S.n))
    anti = max_antichain(S)
    assert len(anti) == width(S)
    assert all(not S.comparable(a, b) for a, b in combinations(anti, 2))


@settings(max_examples=150)
@given(structures())
def test_double_chain_matches_two_colouring(S):
    for x in range(S.n):
        assert generates_double_chain(S, x) == _brute_double_chain(S, x)


def test_cube_top_does_not_generate_double_chain():
    cube = boolean_lattice(3)
    top = cube.maximal()[0]
    assert not generates_double_chain(cube, top)
    assert len(list(bits(residual_mask(cube, top)))) == 4
    assert all(generates_double_chain(cube, x) for x in range(cube.n) if x != top)


# -- canonical forms ------------------------------------------------------------


def _nx(S: Structure) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(S.n))
    g.add_edges_from(S.covers)
    return g


@settings(max_examples=40)
@given(structures(max_n=9), st.integers(0, 2**32 - 1))
def test_canonical_form_invariant_under_relabeling(S, seed):
    rng = random.Random(seed)
    form = canonical_form(S)
    for _ in range(100):
        perm = list(range(S.n))
        rng.shuffle(perm)
        assert canonical_form(S.relabel(perm)) == form


@settings(max_examples=100)
@given(structures(max_n=7), structures(max_n=7))
def test_is_isomorphic_agrees_with_networkx(A, B):
    assert is_isomorphic(A, B) == (A.n == B.n and nx.is_isomorphic(_nx(A), _nx(B)))


@settings(max_examples=60)
@given(structures(max_n=9))
def test_canonical_form_round_trip(S):
    form = canonical_form(S)
    T = form.to_structure()
    assert isinstance(form, CanonicalForm)
    assert canonical_form(T) == form
    assert nx.is_isomorphic(_nx(S), _nx(T))
    perm = canonical_relabeling(S)
    assert S.relabel(perm) == T

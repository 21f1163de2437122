"""Finite posets and meet semilattices stored as down-set bitmasks.

Elements are the integers ``0..n-1`` and the index order is always a linear
extension of the partial order, so ``a <= b`` in the order implies ``a <= b``
as integers.  ``down[i]`` is the bitmask of all elements below or equal to
``i``; every order query reduces to a few word operations on these masks.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import ValidationError


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class Structure:
    """An immutable finite poset, by default required to be a meet semilattice.

    ``covers`` holds pairs ``(a, b)`` meaning "b covers a".  Use
    :meth:`from_covers` for labelings that are not yet a linear extension.
    """

    __slots__ = ("n", "down", "up", "lower", "upper", "_covers", "_canon")

    def __init__(self, n: int, covers: Iterable[tuple[int, int]], *, require_meets: bool = True):
        n = int(n)
        if n < 1:
            raise ValidationError("a structure needs at least one element")
        pairs = set()
        for a, b in covers:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise ValidationError(f"cover pair ({a}, {b}) out of range 0..{n - 1}")
            if a == b:
                raise ValidationError(f"cover pair ({a}, {a}) is a loop")
            if a > b:
                raise ValidationError(
                    f"cover pair ({a}, {b}) breaks the linear extension; use Structure.from_covers"
                )
            pairs.add((a, b))
        lower = [0] * n
        for a, b in pairs:
            lower[b] |= 1 << a
        down = [0] * n
        for b in range(n):
            m = 1 << b
            for a in bits(lower[b]):
                m |= down[a]
            down[b] = m
        for b in range(n):
            for a in bits(lower[b]):
                others = lower[b] & ~(1 << a)
                for c in bits(others):
                    if down[c] >> a & 1:
                        raise ValidationError(
                            f"cover pair ({a}, {b}) is implied by ({a} <= {c}) and ({c}, {b})"
                        )
        self._init_masks(n, tuple(down))
        if require_meets and not self.is_meet_semilattice():
            raise ValidationError("relation is not a meet semilattice")

    def _init_masks(self, n: int, down: tuple[int, ...]) -> None:
        self.n = n
        self.down = down
        up = [1 << i for i in range(n)]
        for i in range(n):
            for j in bits(down[i] & ~(1 << i)):
                up[j] |= 1 << i
        self.up = tuple(up)
        lower = []
        for i in range(n):
            strict = down[i] & ~(1 << i)
            cov = strict
            for j in bits(strict):
                cov &= ~(down[j] & ~(1 << j))
            lower.append(cov)
        self.lower = tuple(lower)
        upper = [0] * n
        for i in range(n):
            for j in bits(lower[i]):
                upper[j] |= 1 << i
        self.upper = tuple(upper)
        self._covers = None
        self._canon = None

    @classmethod
    def from_down_masks(cls, down: Iterable[int]) -> "Structure":
        """Fast constructor from inclusive down-set masks; no validation."""
        self = cls.__new__(cls)
        down = tuple(down)
        self._init_masks(len(down), down)
        return self

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], *, require_meets: bool = True) -> "Structure":
        """Build from an arbitrary labeling, relabeling to a linear extension.

        The relabeling is the smallest-index-first topological sort, so input
        that is already a linear extension keeps its indices.
        """
        return cls.from_covers_with_labels(n, covers, require_meets=require_meets)[0]

    @classmethod
    def from_covers_with_labels(cls, n: int, covers: Iterable[tuple[int, int]], *, require_meets: bool = True):
        """Like :meth:`from_covers` but also return ``new_index -> old_index``."""
        n = int(n)
        pairs = [(int(a), int(b)) for a, b in covers]
        if n < 1:
            raise ValidationError("a structure needs at least one element")
        succ: list[set[int]] = [set() for _ in range(n)]
        indeg = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValidationError(f"cover pair ({a}, {b}) out of range 0..{n - 1}")
            if a == b:
                raise ValidationError(f"cover pair ({a}, {a}) is a loop")
            if b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
        heap = [i for i in range(n) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) != n:
            raise ValidationError("cover relation contains a cycle")
        new = {old: i for i, old in enumerate(order)}
        s = cls(n, [(new[a], new[b]) for a, b in pairs], require_meets=require_meets)
        return s, tuple(order)

    # -- basic queries -------------------------------------------------

    @property
    def covers(self) -> frozenset[tuple[int, int]]:
        if self._covers is None:
            self._covers = frozenset((a, b) for b in range(self.n) for a in bits(self.lower[b]))
        return self._covers

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def less(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if self.lower[i] == 0]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if self.upper[i] == 0]

    @property
    def bottom(self) -> int:
        mins = self.minimal()
        if len(mins) != 1:
            raise ValidationError("structure has no unique bottom element")
        return mins[0]

    def is_meet_semilattice(self) -> bool:
        down = self.down
        for a in range(self.n):
            da = down[a]
            for b in range(a + 1, self.n):
                common = da & down[b]
                if not common or down[common.bit_length() - 1] != common:
                    return False
        return True

    def relabel(self, perm: list[int] | tuple[int, ...]) -> "Structure":
        """Return the structure with element ``i`` renamed ``perm[i]``."""
        return Structure.from_covers(self.n, [(perm[a], perm[b]) for a, b in self.covers], require_meets=False)

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(p) for p in sorted(self.covers)]}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Structure):
            return NotImplemented
        return self.n == other.n and self.down == other.down

    def __hash__(self) -> int:
        return hash((self.n, self.down))

    def __repr__(self) -> str:
        return f"Structure(n={self.n}, covers={sorted(self.covers)})"


def is_meet_semilattice(covers: Iterable[tuple[int, int]], n: int) -> bool:
    """True iff the (acyclic, transitively reduced) relation is a meet semilattice.

    Malformed relations raise :class:`ValidationError`.
    """
    return Structure.from_covers(n, covers, require_meets=False).is_meet_semilattice()


def meet(S: Structure, a: int, b: int) -> int:
    common = S.down[a] & S.down[b]
    if common:
        m = common.bit_length() - 1
        if S.down[m] == common:
            return m
    raise ValidationError(f"elements {a} and {b} have no meet")


def covers_below(S: Structure, x: int) -> frozenset[int]:
    """The elements covered by ``x``; empty exactly for minimal elements."""
    return frozenset(bits(S.lower[x]))


def _closure_mask(S: Structure, mask: int) -> int:
    pending = list(bits(mask))
    closed = mask
    while pending:
        a = pending.pop()
        for b in bits(closed):
            m = meet(S, a, b)
            if not closed >> m & 1:
                closed |= 1 << m
                pending.append(m)
    return closed


def meet_closure(S: Structure, subset: Iterable[int]) -> frozenset[int]:
    """Smallest superset of ``subset`` closed under pairwise meets."""
    mask = to_mask(subset)
    if not mask:
        raise ValidationError("meet closure of an empty set is undefined")
    return frozenset(bits(_closure_mask(S, mask)))


@dataclass(frozen=True)
class MoebiusTable:
    """Moebius function values ``mu(j, i)`` for comparable pairs ``j <= i``."""

    n: int
    values: dict

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.values.get(key, 0)

    def column(self, i: int) -> dict[int, int]:
        """``{j: mu(j, i)}`` over all ``j <= i``."""
        return {j: v for (j, k), v in self.values.items() if k == i}


def moebius(S: Structure) -> MoebiusTable:
    values: dict[tuple[int, int], int] = {}
    for i in range(S.n):
        values[(i, i)] = 1
        di = S.down[i]
        # upper argument fixed at i: mu(j, i) = -sum_{j < k <= i} mu(k, i)
        for j in sorted(bits(di & ~(1 << i)), reverse=True):
            values[(j, i)] = -sum(values[(k, i)] for k in bits(S.up[j] & di & ~(1 << j)))
    return MoebiusTable(S.n, values)


def _max_antichain_mask(cand: int, comp: tuple[int, ...]) -> int:
    if not cand:
        return 0
    v = (cand & -cand).bit_length() - 1
    rest = cand & ~(1 << v)
    best = _max_antichain_mask(rest & ~comp[v], comp) | (1 << v)
    if _popcount(rest) >= _popcount(best):
        alt = _max_antichain_mask(rest, comp)
        if _popcount(alt) > _popcount(best):
            best = alt
    return best


def max_antichain(S: Structure, subset: Iterable[int] | None = None) -> frozenset[int]:
    """A maximum antichain of the induced subposet on ``subset`` (default all)."""
    cand = (1 << S.n) - 1 if subset is None else to_mask(subset)
    comp = tuple(S.down[i] | S.up[i] for i in range(S.n))
    return frozenset(bits(_max_antichain_mask(cand, comp)))


def width(S: Structure, subset: Iterable[int] | None = None) -> int:
    """Size of a maximum antichain; by Dilworth also the least number of covering chains."""
    return len(max_antichain(S, subset))


def residual_mask(S: Structure, x: int) -> int:
    """Bitmask of meetcl(C(x)) minus C(x)."""
    cov = S.lower[x]
    if not cov:
        return 0
    return _closure_mask(S, cov) & ~cov


def generates_double_chain(S: Structure, x: int) -> bool:
    """True iff meetcl(C(x)) minus C(x) splits into two disjoint chains."""
    res = residual_mask(S, x)
    if _popcount(res) <= 2:
        return True
    comp = tuple(S.down[i] | S.up[i] for i in range(S.n))
    return _popcount(_max_antichain_mask(res, comp)) <= 2


# -- canonical forms ---------------------------------------------------


class CanonicalForm(NamedTuple):
    """Order relation under the canonical relabeling.

    Bit ``i*(i-1)//2 + j`` of ``bits`` is set iff ``j < i`` in the relabeled
    order.  Tuples compare by ``(n, bits)``, which is the enumeration order.
    """

    n: int
    bits: int

    def to_structure(self) -> Structure:
        down = []
        for i in range(self.n):
            off = i * (i - 1) // 2
            down.append(((self.bits >> off) & ((1 << i) - 1)) | (1 << i))
        return Structure.from_down_masks(down)

    def hex(self) -> str:
        return f"{self.n}:{self.bits:x}"


def _cells(keys: list, n: int) -> list[int]:
    order = sorted(range(n), key=keys.__getitem__)
    colors = [0] * n
    start = 0
    prev = None
    for idx, v in enumerate(order):
        k = keys[v]
        if idx and k != prev:
            start = idx
        colors[v] = start
        prev = k
    return colors


def canonical_labeling(down: tuple[int, ...]) -> tuple[int, list[int]]:
    """Return ``(code, perm)`` where ``perm[v]`` is the canonical index of ``v``.

    Individualization-refinement: colors are refined to an equitable ordered
    partition, then each non-singleton cell is split by trying every member
    (one per class of twins, which are interchangeable) and the smallest leaf
    code wins.  The first color key is the down-set size, so every leaf is a
    linear extension.
    """
    n = len(down)
    up = [1 << i for i in range(n)]
    for i in range(n):
        for j in bits(down[i] & ~(1 << i)):
            up[j] |= 1 << i
    sdown = [list(bits(down[i] & ~(1 << i))) for i in range(n)]
    sup = [list(bits(up[i] & ~(1 << i))) for i in range(n)]
    ncov = []
    for i in range(n):
        strict = down[i] & ~(1 << i)
        cov = strict
        for j in sdown[i]:
            cov &= ~(down[j] & ~(1 << j))
        ncov.append(cov)
    nupc = [0] * n
    for i in range(n):
        for j in bits(ncov[i]):
            nupc[j] += 1
    twin_key = [(down[i] & ~(1 << i), up[i] & ~(1 << i)) for i in range(n)]
    init = [(len(sdown[i]), len(sup[i]), _popcount(ncov[i]), nupc[i]) for i in range(n)]
    offsets = [i * (i - 1) // 2 for i in range(n)]

    def refine(colors: list[int]) -> list[int]:
        ncells = len(set(colors))
        while ncells < n:
            keys = [
                (colors[v], sorted([colors[u] for u in sdown[v]]), sorted([colors[u] for u in sup[v]]))
                for v in range(n)
            ]
            colors = _cells(keys, n)
            k = len(set(colors))
            if k == ncells:
                break
            ncells = k
        return colors

    best_code = -1
    best_perm: list[int] = []

    def search(colors: list[int]) -> None:
        nonlocal best_code, best_perm
        colors = refine(colors)
        counts = Counter(colors)
        multi = [c for c, k in counts.items() if k > 1]
        if not multi:
            code = 0
            for v in range(n):
                m = 0
                for u in sdown[v]:
                    m |= 1 << colors[u]
                code |= m << offsets[colors[v]]
            if best_code < 0 or code < best_code:
                best_code, best_perm = code, colors
            return
        target = min(multi)
        cell = [v for v in range(n) if colors[v] == target]
        seen = set()
        for v in cell:
            if twin_key[v] in seen:
                continue
            seen.add(twin_key[v])
            child = colors[:]
            for u in cell:
                if u != v:
                    child[u] = target + 1
            search(child)

    search(_cells(init, n))
    return best_code, best_perm


def canonical_form(S: Structure) -> CanonicalForm:
    if S._canon is None:
        S._canon = CanonicalForm(S.n, canonical_labeling(S.down)[0])
    return S._canon


def canonical_relabeling(S: Structure) -> list[int]:
    """``perm`` with ``S.relabel(perm)`` equal to the canonical representative."""
    return canonical_labeling(S.down)[1]


def is_isomorphic(S1: Structure, S2: Structure) -> bool:
    return canonical_form(S1) == canonical_form(S2)


# -- small named structures -------------------------------------------


def chain(n: int) -> Structure:
    return Structure(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Structure:
    return Structure(n, [], require_meets=False)


def boolean_lattice(k: int) -> Structure:
    """B_k with subsets ordered by size then value, which is a linear extension."""
    subsets = sorted(range(1 << k), key=lambda s: (_popcount(s), s))
    index = {s: i for i, s in enumerate(subsets)}
    covers = [(index[s], index[s | 1 << b]) for s in subsets for b in range(k) if not s >> b & 1]
    return Structure(1 << k, covers)

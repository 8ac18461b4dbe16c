"""Detection and enumeration of d-simplices inside set families.

``d+1`` pairwise distinct sets form a d-simplex when their common
intersection is empty while every ``d`` of them still share an element.
Each set ``A_j`` of a simplex misses an element lying in all the others, and
these elements are distinct, so every member has at least ``d`` elements and
``t`` chosen members share at least ``d + 1 - t``.  The empty set and the full
ground set can never take part.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .family import SetFamily, elements_of, full_mask

DEFAULT_TUPLE_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """An enumeration or search would exceed its configured budget."""


@dataclass(frozen=True, order=True)
class SimplexWitness:
    d: int
    sets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(sorted(self.sets)))
        if len(self.sets) != self.d + 1:
            raise ValueError(f"a {self.d}-simplex has {self.d + 1} sets, got {len(self.sets)}")

    def to_json(self) -> str:
        return json.dumps({"d": self.d, "sets": [elements_of(s) for s in self.sets]},
                          separators=(",", ":"))


def is_simplex(sets: Sequence[int], d: int, n: int | None = None) -> bool:
    """True iff ``sets`` (masks) are ``d+1`` distinct sets forming a d-simplex.

    ``n`` is optional; when given, every mask must lie inside ``{0..n-1}``.
    """
    sets = list(sets)
    if d < 1:
        raise ValueError("d must be positive")
    if len(sets) != d + 1:
        raise ValueError(f"expected {d + 1} sets for d={d}, got {len(sets)}")
    if n is not None:
        for s in sets:
            if s < 0 or s >> n:
                raise ValueError(f"mask {s} is not a subset of a {n}-element ground set")
    if len(set(sets)) != len(sets):
        return False
    # prefix[i] = AND of sets[:i], suffix[i] = AND of sets[i:]
    everything = -1
    prefix = [everything]
    for s in sets:
        prefix.append(prefix[-1] & s)
    if prefix[-1]:
        return False
    suffix = [everything] * (len(sets) + 1)
    for i in range(len(sets) - 1, -1, -1):
        suffix[i] = suffix[i + 1] & sets[i]
    return all(prefix[j] & suffix[j + 1] for j in range(len(sets)))


def _usable(m: int, d: int, full: int) -> bool:
    return m != full and m.bit_count() >= d


def _walk(cands: Sequence[int], d: int) -> Iterator[tuple[int, ...]]:
    """Yield index tuples of simplices in ascending lexicographic order."""
    size = len(cands)
    k = d + 1
    chosen: list[int] = []

    def rec(start: int, inter: int):
        depth = len(chosen)
        if depth == d:
            for j in range(start, size):
                if cands[j] & inter:
                    continue
                tup = [cands[i] for i in chosen] + [cands[j]]
                if _drop_one_ok(tup):
                    yield tuple(chosen) + (j,)
            return
        need = d - depth
        for i in range(start, size - (k - depth) + 1):
            nxt = inter & cands[i]
            if nxt.bit_count() < need:
                continue
            chosen.append(i)
            yield from rec(i + 1, nxt)
            chosen.pop()

    yield from rec(0, -1)


def _drop_one_ok(tup: Sequence[int]) -> bool:
    m = len(tup)
    suffix = [-1] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] & tup[i]
    pre = -1
    for j in range(m):
        if not pre & suffix[j + 1]:
            return False
        pre &= tup[j]
    return True


def find_simplex(fam: SetFamily, d: int) -> SimplexWitness | None:
    """Lexicographically least d-simplex among the members of ``fam``, if any."""
    if d < 1:
        raise ValueError("d must be positive")
    full = full_mask(fam.n)
    cands = [m for m in fam.members if _usable(m, d, full)]
    for idx in _walk(cands, d):
        return SimplexWitness(d, tuple(cands[i] for i in idx))
    return None


def is_simplex_free(fam: SetFamily, d: int) -> bool:
    return find_simplex(fam, d) is None


def simplex_index_tuples(universe: SetFamily, d: int,
                         budget: int = DEFAULT_TUPLE_BUDGET) -> list[tuple[int, ...]]:
    """Simplices of ``universe`` as tuples of positions in ``universe.members``."""
    if d < 1:
        raise ValueError("d must be positive")
    members = universe.members
    full = full_mask(universe.n)
    pos = [i for i, m in enumerate(members) if _usable(m, d, full)]
    if comb(len(members), d + 1) > budget:
        raise BudgetExceeded(
            f"C({len(members)},{d + 1}) tuples exceed the enumeration budget {budget}")
    cands = [members[i] for i in pos]
    return [tuple(pos[i] for i in idx) for idx in _walk(cands, d)]


def enumerate_simplices(universe: SetFamily, d: int,
                        budget: int = DEFAULT_TUPLE_BUDGET) -> list[SimplexWitness]:
    """Every d-simplex whose sets all belong to ``universe``, sorted."""
    members = universe.members
    return [SimplexWitness(d, tuple(members[i] for i in idx))
            for idx in simplex_index_tuples(universe, d, budget)]

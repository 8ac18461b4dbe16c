"""Set families over a small ground set, stored as integer bitmasks.

A subset of ``{0, ..., n-1}`` is an ``int`` whose bit ``i`` is set iff element
``i`` belongs to it.  A :class:`SetFamily` is an immutable, duplicate-free,
ascending tuple of such masks together with the ground size ``n``.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

MAX_N = 64
MAX_POWERSET_N = 16
MAX_CANONICAL_N = 8


class FamilyError(ValueError):
    """Base class for invalid family input."""


class MalformedFamilyError(FamilyError):
    pass


class ElementRangeError(FamilyError):
    pass


class GroundSizeError(FamilyError):
    pass


class DuplicateSetWarning(UserWarning):
    """Emitted when a parsed family lists the same set more than once."""

    def __init__(self, count: int):
        super().__init__(f"dropped {count} duplicate set(s)")
        self.count = count


def check_ground(n, limit=MAX_N):
    if isinstance(n, bool) or not isinstance(n, int):
        raise GroundSizeError(f"ground size must be an integer, got {n!r}")
    if not 1 <= n <= limit:
        raise GroundSizeError(f"ground size n={n} outside supported range 1..{limit}")


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def masks_up_to(n: int, cap: int | None = None) -> list[int]:
    """All subsets of ``{0..n-1}`` of size at most ``cap``, ascending."""
    check_ground(n, MAX_POWERSET_N)
    if cap is None:
        cap = n
    return [m for m in range(1 << n) if m.bit_count() <= cap]


@dataclass(frozen=True)
class SetFamily:
    n: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        check_ground(self.n)
        members = sorted(set(self.members))
        top = 1 << self.n
        for m in members:
            if isinstance(m, bool) or not isinstance(m, int):
                raise FamilyError(f"member {m!r} is not an integer mask")
            if m < 0 or m >= top:
                raise ElementRangeError(f"mask {m} has elements outside 0..{self.n - 1}")
        object.__setattr__(self, "members", tuple(members))

    @classmethod
    def _trusted(cls, n: int, members: tuple[int, ...]) -> "SetFamily":
        # members already ascending, unique and in range
        fam = object.__new__(cls)
        object.__setattr__(fam, "n", n)
        object.__setattr__(fam, "members", members)
        return fam

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(n, tuple(mask_of(s) for s in sets))

    @classmethod
    def power_set(cls, n: int, cap: int | None = None) -> "SetFamily":
        return cls(n, tuple(masks_up_to(n, cap)))

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask) -> bool:
        return mask in self._member_set

    @property
    def _member_set(self) -> frozenset:
        # cached lazily; the dataclass is frozen so go through object.__setattr__
        try:
            return self.__dict__["_ms"]
        except KeyError:
            ms = frozenset(self.members)
            object.__setattr__(self, "_ms", ms)
            return ms

    def sets(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def with_members(self, members: Iterable[int]) -> "SetFamily":
        return SetFamily(self.n, tuple(members))

    def __repr__(self):
        return f"SetFamily(n={self.n}, sets={self.sets()})"


def parse_family(text: str) -> SetFamily:
    """Read a family from its JSON form ``{"n": n, "sets": [[...], ...]}``.

    Duplicate sets are dropped with a :class:`DuplicateSetWarning` whose
    ``count`` attribute gives the number removed.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFamilyError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or set(obj) != {"n", "sets"}:
        raise MalformedFamilyError('expected an object with exactly the keys "n" and "sets"')
    n = obj["n"]
    check_ground(n)
    sets = obj["sets"]
    if not isinstance(sets, list):
        raise MalformedFamilyError('"sets" must be an array')
    masks = []
    for s in sets:
        if not isinstance(s, list):
            raise MalformedFamilyError(f"set {s!r} is not an array")
        prev = -1
        for e in s:
            if isinstance(e, bool) or not isinstance(e, int):
                raise MalformedFamilyError(f"element {e!r} is not an integer")
            if e < 0 or e >= n:
                raise ElementRangeError(f"element out of range: {e} not in 0..{n - 1}")
            if e <= prev:
                raise MalformedFamilyError(f"set {s} is not strictly increasing")
            prev = e
        masks.append(mask_of(s))
    dropped = len(masks) - len(set(masks))
    if dropped:
        warnings.warn(DuplicateSetWarning(dropped), stacklevel=2)
    return SetFamily(n, tuple(masks))


def serialize_family(fam: SetFamily) -> str:
    body = json.dumps({"n": fam.n, "sets": fam.sets()}, separators=(",", ":"))
    return body + "\n"


def _check_perm(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    return perm


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def apply_permutation(fam: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Relabel every member, sending element ``i`` to ``perm[i]``."""
    perm = _check_perm(perm, fam.n)
    return SetFamily(fam.n, tuple(permute_mask(m, perm) for m in fam.members))


def invert_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@lru_cache(maxsize=None)
def _image_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """For every permutation of ``0..n-1``, the image of each mask ``0..2^n-1``."""
    tables = []
    for perm in itertools.permutations(range(n)):
        table = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            table[m] = table[m ^ low] | (1 << perm[low.bit_length() - 1])
        tables.append(tuple(table))
    return tuple(tables)


def canonical_form(fam: SetFamily) -> SetFamily:
    """Least relabeling of ``fam`` over all ``n!`` permutations.

    Families compare as their ascending member tuples, so two families are
    isomorphic exactly when their canonical forms are equal.
    """
    n = fam.n
    if n > MAX_CANONICAL_N:
        raise ValueError(f"canonical_form enumerates n! relabelings; n={n} exceeds {MAX_CANONICAL_N}")
    members = fam.members
    best = None
    if n <= 7:
        for table in _image_tables(n):
            image = sorted([table[m] for m in members])
            if best is None or image < best:
                best = image
    else:
        # 8! tables of 256 entries would be too large to keep around
        for perm in itertools.permutations(range(n)):
            image = sorted([permute_mask(m, perm) for m in members])
            if best is None or image < best:
                best = image
    return SetFamily._trusted(n, tuple(best))


@dataclass(frozen=True)
class LinkDecomposition:
    """Members of a family grouped by their trace outside a pivot set ``Y``.

    ``parts[W]`` holds ``A & Y`` for every member ``A`` with ``A & ~Y == W``;
    the parts stay on the original ground set so their members are subsets of
    ``Y`` under the original labels.
    """

    pivot: int
    parts: Mapping[int, SetFamily] = field(default_factory=dict)

    def total(self) -> int:
        return sum(len(p) for p in self.parts.values())


def decompose_by_outside(fam: SetFamily, pivot: int) -> LinkDecomposition:
    if pivot < 0 or pivot >> fam.n:
        raise ElementRangeError(f"pivot mask {pivot} invalid for n={fam.n}")
    outside = full_mask(fam.n) & ~pivot
    groups: dict[int, list[int]] = {}
    for a in fam.members:
        groups.setdefault(a & outside, []).append(a & pivot)
    # within one trace W the map A -> A & Y is increasing, so parts stay sorted
    parts = {w: SetFamily._trusted(fam.n, tuple(ms)) for w, ms in sorted(groups.items())}
    return LinkDecomposition(pivot, parts)

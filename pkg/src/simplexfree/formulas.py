"""Closed forms, recursive bounds and extremal constructions.

Every value is a :class:`BoundValue` carrying a status so that a conjectured
number is never mistaken for a proven one.  Notation: ``f(n, d)`` is the
largest d-simplex-free family on ``n`` points, ``f(n, d, k)`` the same with all
members of size at most ``n - k`` and ``g(n, d, k)`` additionally requiring a
member of size exactly ``n - k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, NamedTuple

from .family import SetFamily, check_ground

PROVEN = "proven"
CONJECTURED = "conjectured"
UPPER = "upper-bound"
LOWER = "lower-bound"
EXACT = "exact-by-search"

STATUSES = (PROVEN, CONJECTURED, UPPER, LOWER, EXACT)
_STRENGTH = {EXACT: 4, PROVEN: 4, UPPER: 3, LOWER: 2, CONJECTURED: 1}


def binom(n: int, r: int) -> int:
    """Binomial coefficient, zero whenever ``r`` is outside ``0..n``."""
    if r < 0 or n < 0 or r > n:
        return 0
    return comb(n, r)


def weakest(*statuses: str) -> str:
    return min(statuses, key=lambda s: _STRENGTH[s])


@dataclass(frozen=True)
class BoundValue:
    value: int
    status: str
    provenance: str
    note: str = ""

    def __post_init__(self):
        if self.status not in _STRENGTH:
            raise ValueError(f"unknown status {self.status!r}")
        if not self.provenance:
            raise ValueError("provenance must be non-empty")

    def __int__(self):
        return self.value

    def __add__(self, other):
        if isinstance(other, BoundValue):
            return BoundValue(self.value + other.value, weakest(self.status, other.status),
                              _join(self.provenance, other.provenance))
        if isinstance(other, int):
            return BoundValue(self.value + other, self.status, self.provenance, self.note)
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return BoundValue(self.value * scalar, self.status, self.provenance, self.note)

    __rmul__ = __mul__

    def __str__(self):
        text = f"{self.value} ({self.status}, {self.provenance})"
        return f"{text} [{self.note}]" if self.note else text


def _join(a: str, b: str) -> str:
    parts = []
    for p in a.split(" + ") + b.split(" + "):
        if p not in parts:
            parts.append(p)
    return " + ".join(parts)


TAG_D1 = "disjoint-pair bound"
TAG_D1_CAPPED = "intersecting-family bound"
TAG_MILNER = "Milner triangle-free theorem"
TAG_D3 = "3-simplex-free theorem"
TAG_STAR = "star-family conjecture"
TAG_KM = "Keevash-Mubayi (large n only)"
TAG_LINK = "link-decomposition bound"


def _star_expression(n: int, d: int, k: int) -> int:
    return (2 ** (n - 1) + sum(binom(n - 1, i) for i in range(d))
            - sum(binom(n - 1, i) for i in range(k)))


def star_value(n: int, d: int, k: int = 0) -> BoundValue:
    """Size of the star construction: ``2^(n-1) + sum_{i<d} C(n-1,i) - sum_{i<k} C(n-1,i)``.

    Proven for ``d = 1`` (all ``k``) and for ``d in {2, 3}`` with ``k <= 1``;
    every other cell is tagged conjectured.
    """
    if n < 1 or d < 1 or not 0 <= k <= n:
        raise ValueError(f"star_value needs n>=1, d>=1, 0<=k<=n; got n={n}, d={d}, k={k}")
    value = _star_expression(n, d, k)
    if d == 1:
        return BoundValue(value, PROVEN, TAG_D1 if k == 0 else TAG_D1_CAPPED)
    if d <= 3 and k <= 1:
        return BoundValue(value, PROVEN, TAG_MILNER if d == 2 else TAG_D3)
    if k == 0:
        return BoundValue(value, CONJECTURED, TAG_KM)
    note = "" if 1 <= k <= n - d - 1 else "outside the conjectured k-range"
    return BoundValue(value, CONJECTURED, TAG_STAR, note)


def f_d1(n: int, k: int) -> BoundValue:
    """Exact ``f(n, 1, k) = g(n, 1, k) = 2^(n-1) - sum_{j=1}^{k-1} C(n-1, j)``."""
    if not 1 <= k <= n:
        raise ValueError(f"f_d1 needs n >= k >= 1; got n={n}, k={k}")
    value = 2 ** (n - 1) - sum(binom(n - 1, j) for j in range(1, k))
    return BoundValue(value, PROVEN, TAG_D1_CAPPED)


class MilnerBounds(NamedTuple):
    f_n21: BoundValue
    f_n22: BoundValue
    f_n23: BoundValue


def milner_bounds(n: int) -> MilnerBounds:
    """``f(n,2,1)`` exactly, with the upper bounds on ``f(n,2,2)`` and ``f(n,2,3)``."""
    if n < 1:
        raise ValueError("n must be positive")
    half = 2 ** (n - 1)

    def flag(k):
        return "k > n, vacuous" if k > n else ""

    return MilnerBounds(
        BoundValue(half + binom(n - 1, 1), PROVEN, TAG_MILNER, flag(1)),
        BoundValue(half + 1, UPPER, TAG_MILNER, flag(2)),
        BoundValue(half, UPPER, TAG_MILNER, flag(3)),
    )


Oracle = Callable[[int, int, int], BoundValue]


def lemma_bound(n: int, d: int, k: int, oracle: Oracle) -> BoundValue:
    """Upper bound ``g(n,d,k) <= f(n-k,d) + sum_{i=1}^k C(k,i) f(n-k,d-1,i)``.

    ``oracle(m, e, j)`` must return ``f(m, e, j)`` (with ``j = 0`` meaning
    ``f(m, e)``), including ground size ``m = 0``.  The result is tagged as an
    upper bound unless a weaker input status drags it down.
    """
    if not 1 <= k <= n or d < 2:
        raise ValueError(f"lemma_bound needs n >= k >= 1 and d >= 2; got n={n}, d={d}, k={k}")
    m = n - k

    def ask(nn, dd, kk):
        try:
            v = oracle(nn, dd, kk)
        except KeyError:
            v = None
        if v is None:
            raise LookupError(f"oracle has no value for f({nn},{dd},{kk})")
        return v

    total = ask(m, d, 0)
    for i in range(1, k + 1):
        total = total + binom(k, i) * ask(m, d - 1, i)
    return BoundValue(total.value, weakest(total.status, UPPER), TAG_LINK,
                      f"inputs: {total.provenance}")


def lemma_bound_d2(n: int, k: int) -> int:
    """Simplified form of the ``d = 2`` link bound once the ``d = 1`` values are substituted.

    Equals ``2^(n-1) + C(n-k-1,0) + C(n-k-1,1) (1 - C(k,2))`` for ``1 <= k <= n - 1``.
    """
    if not 1 <= k <= n - 1:
        raise ValueError("lemma_bound_d2 needs 1 <= k <= n - 1")
    return 2 ** (n - 1) + binom(n - k - 1, 0) + binom(n - k - 1, 1) * (1 - binom(k, 2))


def known_value(n: int, d: int, k: int = 0) -> BoundValue:
    """Best closed-form value of ``f(n, d, k)``, usable as a :func:`lemma_bound` oracle."""
    if n == 0:
        return BoundValue(1 if k == 0 else 0, PROVEN, "empty ground set")
    if k > n:
        return BoundValue(0, PROVEN, "empty size range")
    if d == 1 and k >= 1:
        return f_d1(n, k)
    return star_value(n, d, k)


def d4_gap(n: int) -> tuple[int, int]:
    """Best link bound on ``g(n,4,2)`` versus the star value of ``f(n,4)`` minus one.

    The first entry exceeds the second exactly when ``n >= 8``.
    """
    if n < 4:
        raise ValueError("d4_gap needs n >= 4")
    link = 2 ** (n - 1) + binom(n - 1, 2) + binom(n - 1, 3) + binom(n - 3, 2)
    star = 2 ** (n - 1) + binom(n - 1, 1) + binom(n - 1, 2) + binom(n - 1, 3)
    return link, star


def build_star_family(n: int, x: int, d: int, k: int = 0) -> SetFamily:
    """Sets through ``x`` of size at most ``n - k`` plus all sets of size < ``d`` avoiding ``x``."""
    check_ground(n)
    if not 0 <= x < n or d < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"build_star_family needs 0<=x<n, d>=1, 0<=k<=n-1; got x={x}, d={d}, k={k}")
    if n > 24:
        raise ValueError(f"n={n} too large to materialize the star family")
    xb = 1 << x
    cap = n - k
    members = [m for m in range(1 << n)
               if (m & xb and m.bit_count() <= cap) or (not m & xb and m.bit_count() <= d - 1)]
    return SetFamily(n, tuple(members))

from math import comb

import pytest

from simplexfree.family import SetFamily
from simplexfree.formulas import (CONJECTURED, EXACT, LOWER, PROVEN, UPPER, BoundValue, binom,
                                  build_star_family, d4_gap, f_d1, known_value, lemma_bound,
                                  lemma_bound_d2, milner_bounds, star_value, weakest)
from simplexfree.simplex import find_simplex

from .oracles import naive_max


@pytest.mark.parametrize("n,d,k,value,status", [
    (5, 3, 0, 27, PROVEN),
    (4, 3, 0, 15, PROVEN),
    (1, 3, 0, 2, PROVEN),
    (6, 3, 2, 42, CONJECTURED),
    (5, 3, 1, 26, PROVEN),
    (5, 4, 0, 31, CONJECTURED),
    (4, 1, 3, 2, PROVEN),
])
def test_star_value(n, d, k, value, status):
    bv = star_value(n, d, k)
    assert (bv.value, bv.status) == (value, status)
    assert bv.provenance


def test_star_value_ranges():
    with pytest.raises(ValueError):
        star_value(0, 1, 0)
    with pytest.raises(ValueError):
        star_value(3, 1, 4)


def test_binom_is_total():
    assert binom(3, 5) == 0 and binom(3, -1) == 0 and binom(5, 2) == 10


def test_f_d1_examples():
    assert f_d1(4, 2).value == 5
    assert f_d1(3, 3).value == 1
    for n in range(1, 15):
        assert f_d1(n, 1).value == 2 ** (n - 1)
        assert f_d1(n, 1).value + 1 == 2 ** (n - 1) + 1
    with pytest.raises(ValueError):
        f_d1(2, 3)


def test_f_d1_brute_force_small():
    for n in range(1, 5):
        for k in range(1, n + 1):
            assert f_d1(n, k).value == naive_max(n, 1, cap=n - k)


def test_f_d1_equals_star_value():
    for n in range(1, 25):
        for k in range(1, n + 1):
            assert f_d1(n, k).value == star_value(n, 1, k).value


def test_milner_bounds():
    b = milner_bounds(4)
    assert [x.value for x in b] == [11, 9, 8]
    assert b.f_n21.status == PROVEN and b.f_n22.status == UPPER and b.f_n23.status == UPPER
    assert b.f_n21.value + 1 == 2 ** 3 + 4
    one = milner_bounds(1)
    assert [x.value for x in one] == [1, 2, 1]
    assert not one.f_n21.note and one.f_n22.note and one.f_n23.note
    for n in range(1, 30):
        assert milner_bounds(n).f_n21.value + 1 == 2 ** (n - 1) + n == star_value(n, 2, 0).value


def test_lemma_bound_d2_example():
    bv = lemma_bound(6, 2, 2, known_value)
    assert bv.value == 33
    assert lemma_bound_d2(6, 2) == 2 ** 5 + comb(3, 0) + comb(3, 1) * (1 - comb(2, 2)) == 33
    assert bv.status == UPPER


def test_lemma_bound_raw_below_simplified_chain():
    for n in range(2, 16):
        for k in range(1, n):
            raw = lemma_bound(n, 2, k, known_value).value
            assert raw <= lemma_bound_d2(n, k)


def test_lemma_bound_degenerate_k_equals_n():
    for n in range(1, 8):
        for d in (2, 3, 4):
            assert lemma_bound(n, d, n, known_value).value == 1


def test_lemma_bound_d4_with_star_oracle():
    bv = lemma_bound(8, 4, 2, known_value)
    assert bv.value == 2 ** 7 + comb(7, 2) + comb(7, 3) + comb(5, 2) == 194
    assert bv.status == CONJECTURED
    assert star_value(8, 4, 1).value == 191
    assert d4_gap(8) == (194, 191)


def test_lemma_bound_missing_oracle_value():
    def partial(n, d, k):
        if d == 1:
            raise KeyError((n, d, k))
        return known_value(n, d, k)
    with pytest.raises(LookupError):
        lemma_bound(5, 2, 1, partial)


def test_lemma_bound_status_propagation():
    def exact(n, d, k):
        return BoundValue(known_value(n, d, k).value, EXACT, "table")

    def lower(n, d, k):
        return BoundValue(known_value(n, d, k).value, LOWER, "table")

    assert lemma_bound(5, 3, 1, exact).status == UPPER
    assert lemma_bound(5, 3, 1, lower).status == LOWER
    assert weakest(PROVEN, CONJECTURED, UPPER) == CONJECTURED


def test_d4_gap():
    assert d4_gap(8) == (194, 191)
    a, b = d4_gap(7)
    assert a == b == 105
    a, b = d4_gap(4)
    assert a <= b
    for n in range(4, 70):
        a, b = d4_gap(n)
        assert (a > b) == (n >= 8)


def test_bound_value_arithmetic():
    a = BoundValue(3, PROVEN, "x")
    b = BoundValue(4, CONJECTURED, "y")
    c = a + 2 * b
    assert c.value == 11 and c.status == CONJECTURED
    assert str(a) == "3 (proven, x)"
    with pytest.raises(ValueError):
        BoundValue(1, "maybe", "x")
    with pytest.raises(ValueError):
        BoundValue(1, PROVEN, "")


def test_build_star_family_examples():
    assert len(build_star_family(5, 0, 3, 0)) == 27
    fam = build_star_family(4, 0, 3, 0)
    assert fam.members == tuple(m for m in range(16) if m != 0b1110)
    for n in range(2, 7):
        for x in range(n):
            fam = build_star_family(n, x, 1, 1)
            expect = [0] + [s for s in range(1 << n) if s >> x & 1 and s.bit_count() <= n - 1]
            assert fam == SetFamily(n, tuple(expect))


def test_build_star_family_errors():
    with pytest.raises(ValueError):
        build_star_family(4, 4, 3, 0)
    with pytest.raises(ValueError):
        build_star_family(4, 0, 0, 0)
    with pytest.raises(ValueError):
        build_star_family(4, 0, 3, 4)


def test_size_law():
    for n in range(1, 13):
        for d in range(1, n + 2):
            for k in range(0, n):
                want = star_value(n, d, k).value
                for x in {0, n - 1}:
                    assert len(build_star_family(n, x, d, k)) == want


def test_star_families_are_simplex_free():
    for n in range(1, 7):
        for d in range(1, 5):
            for k in range(0, min(2, n - 1) + 1):
                for x in range(n):
                    assert find_simplex(build_star_family(n, x, d, k), d) is None


def test_identity_f_equals_one_plus_f1_and_monotonicity():
    for n in range(1, 20):
        for d in range(1, 8):
            assert star_value(n, d, 0).value == 1 + star_value(n, d, 1).value
            vals = [star_value(n, d, k).value for k in range(n + 1)]
            assert all(a >= b for a, b in zip(vals, vals[1:]))
            assert star_value(n, d + 1, 0).value >= star_value(n, d, 0).value


def test_f3_2_lower_bound_construction():
    for n in range(4, 13):
        assert len(build_star_family(n, 0, 3, 2)) == 2 ** (n - 1) + comb(n - 1, 2)

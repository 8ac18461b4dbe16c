import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexfree.family import SetFamily, apply_permutation, mask_of, permute_mask
from simplexfree.formulas import build_star_family
from simplexfree.simplex import (BudgetExceeded, SimplexWitness, enumerate_simplices,
                                 find_simplex, is_simplex, simplex_index_tuples)

from .oracles import naive_is_simplex, naive_simplices, subsets


def m(*elems):
    return mask_of(elems)


def test_disjoint_pair_is_1_simplex():
    assert is_simplex([m(0), m(1)], 1)
    assert not is_simplex([m(0), m(0, 1)], 1)
    assert not is_simplex([0, m(1)], 1)


def test_triangle():
    assert is_simplex([m(0, 1), m(1, 2), m(0, 2)], 2)


def test_tetrahedron_and_common_element():
    assert is_simplex([m(0, 1, 2), m(0, 1, 3), m(0, 2, 3), m(1, 2, 3)], 3)
    assert not is_simplex([m(0, 1), m(0, 2), m(0, 3), m(0)], 3)


def test_repeated_sets_never_form_a_simplex():
    assert not is_simplex([m(0, 1), m(0, 1), m(2)], 2)


def test_is_simplex_errors():
    with pytest.raises(ValueError):
        is_simplex([m(0), m(1)], 2)
    with pytest.raises(ValueError):
        is_simplex([m(0), m(5)], 1, n=3)


def test_is_simplex_matches_definition_exhaustively():
    # every pair/triple of subsets of [3], every quadruple of subsets of [3]
    sets = subsets(3)
    masks = [mask_of(s) for s in sets]
    for d in (1, 2, 3):
        for idx in itertools.combinations(range(len(sets)), d + 1):
            assert is_simplex([masks[i] for i in idx], d) == naive_is_simplex([sets[i] for i in idx])


@settings(max_examples=300)
@given(st.integers(1, 4).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.integers(0, 63), min_size=d + 1, max_size=d + 1))),
    st.permutations(range(6)), st.randoms())
def test_is_simplex_symmetries(dsets, perm, rnd):
    d, sets = dsets
    base = is_simplex(sets, d)
    shuffled = list(sets)
    rnd.shuffle(shuffled)
    assert is_simplex(shuffled, d) == base
    assert is_simplex([permute_mask(s, perm) for s in sets], d) == base
    assert base == naive_is_simplex([[i for i in range(6) if s >> i & 1] for s in sets])


def test_find_simplex_star_is_free():
    assert find_simplex(build_star_family(5, 0, 3, 0), 3) is None


def test_find_simplex_power_set_4():
    wit = find_simplex(SetFamily.power_set(4), 3)
    assert wit is not None
    assert is_simplex(wit.sets, 3)


def test_find_simplex_is_lexicographically_least():
    fam = SetFamily.power_set(4)
    cands = [s for s in fam.members if s not in (0, 15)]
    first = next(t for t in itertools.combinations(cands, 4) if is_simplex(t, 3))
    assert find_simplex(fam, 3).sets == first


def test_power_set_4_has_exactly_one_3_simplex():
    # n=4: the four 3-subsets are the only 3-simplex
    wits = enumerate_simplices(SetFamily.power_set(4), 3)
    assert [w.sets for w in wits] == [(m(0, 1, 2), m(0, 1, 3), m(0, 2, 3), m(1, 2, 3))]


def test_full_set_never_in_witness():
    for n in (3, 4, 5):
        full = (1 << n) - 1
        for d in (1, 2, 3):
            for w in enumerate_simplices(SetFamily.power_set(n), d):
                assert full not in w.sets and 0 not in w.sets
            wit = find_simplex(SetFamily.power_set(n), d)
            if wit is not None:
                assert full not in wit.sets


def test_enumerate_power_set_3_has_no_3_simplex():
    assert enumerate_simplices(SetFamily.power_set(3), 3) == []


def test_enumerate_two_subsets_of_3():
    fam = SetFamily.from_sets(3, [[0, 1], [0, 2], [1, 2]])
    wits = enumerate_simplices(fam, 2)
    assert len(wits) == 1 and wits[0].sets == fam.members


@pytest.mark.parametrize("n,d", [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 3), (5, 4)])
def test_enumerate_matches_brute_force(n, d):
    universe = subsets(n)
    expect = sorted(tuple(sorted(mask_of(universe[i]) for i in t)) for t in naive_simplices(universe, d))
    got = [w.sets for w in enumerate_simplices(SetFamily.power_set(n), d)]
    assert got == expect


def test_enumerate_budget():
    with pytest.raises(BudgetExceeded):
        simplex_index_tuples(SetFamily.power_set(5), 3, budget=100)


def test_witness_json_and_invariants():
    w = SimplexWitness(2, (m(1, 2), m(0, 1), m(0, 2)))
    assert w.sets == (m(0, 1), m(0, 2), m(1, 2))
    assert json.loads(w.to_json()) == {"d": 2, "sets": [[0, 1], [0, 2], [1, 2]]}
    with pytest.raises(ValueError):
        SimplexWitness(3, (1, 2))


def _random_family(rng, n):
    size = rng.randint(0, min(12, 1 << n))
    return SetFamily(n, tuple(rng.sample(range(1 << n), size)))


def test_find_and_enumerate_agree_random():
    rng = random.Random(2024)
    for _ in range(400):
        n = rng.randint(1, 6)
        fam = _random_family(rng, n)
        for d in (1, 2, 3):
            wit = find_simplex(fam, d)
            allw = enumerate_simplices(fam, d)
            assert (wit is None) == (allw == [])
            if wit is not None:
                assert is_simplex(wit.sets, d)
                assert wit == allw[0]
                assert all(s in fam for s in wit.sets)


def test_monotone_under_superfamily():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(2, 6)
        fam = _random_family(rng, n)
        bigger = SetFamily(n, fam.members + tuple(rng.sample(range(1 << n), 3)))
        for d in (1, 2, 3):
            if find_simplex(fam, d) is not None:
                assert find_simplex(bigger, d) is not None


def test_relabeling_preserves_existence():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 7)
        fam = _random_family(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        img = apply_permutation(fam, perm)
        for d in (1, 2, 3):
            assert (find_simplex(fam, d) is None) == (find_simplex(img, d) is None)

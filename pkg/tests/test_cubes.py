import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_cube_free, cube_sums
from cubefree.ambient import Ambient, DenseSet
from cubefree.cubes import (
    GeneratorMultiset,
    diagonal_witness,
    find_cube,
    is_cube_free,
    project_cube,
    shifted_intersection,
)


def dense(n, elems, cyclic=True):
    amb = Ambient.cyclic(n) if cyclic else Ambient.interval(n)
    return DenseSet.from_iterable(amb, elems)


def test_project_cube_examples():
    assert project_cube(GeneratorMultiset(Ambient.cyclic(100), (1, 2, 4))).elements() == list(range(1, 8))
    assert project_cube(GeneratorMultiset(Ambient.cyclic(9), (3, 3, 3))).elements() == [0, 3, 6]
    assert project_cube(GeneratorMultiset(Ambient.cyclic(7), (5,))).elements() == [5]
    assert project_cube(GeneratorMultiset(Ambient.interval(7), (5,))).elements() == [5]


def test_generator_multiset_validation():
    with pytest.raises(ValueError):
        GeneratorMultiset(Ambient.cyclic(5), ())
    with pytest.raises(ValueError):
        GeneratorMultiset(Ambient.cyclic(5), (3, 1))
    with pytest.raises(ValueError):
        GeneratorMultiset(Ambient.cyclic(5), (1, 7))


@pytest.mark.parametrize("n,cyclic", [(9, True), (9, False), (12, True)])
def test_project_cube_matches_oracle(n, cyclic):
    amb = Ambient.cyclic(n) if cyclic else Ambient.interval(n)
    universe = range(n) if cyclic else range(1, n + 1)
    for entries in itertools.combinations_with_replacement(universe, 3):
        got = set(project_cube(GeneratorMultiset(amb, entries)))
        want = cube_sums(entries, n, cyclic)
        if want is None:  # some sum left [N]: the projection just drops those
            want = {s for s in (sum(entries[i] for i in c)
                    for r in (1, 2, 3) for c in itertools.combinations(range(3), r))
                    if s <= n}
        assert got == want


def test_cube_size_bound_and_tightness():
    for entries in itertools.combinations_with_replacement(range(12), 3):
        cube = project_cube(GeneratorMultiset(Ambient.cyclic(12), entries))
        assert len(cube) <= 7
    full = project_cube(GeneratorMultiset(Ambient.cyclic(100), (1, 2, 4)))
    assert len(full) == 7


def test_three_cube_explicit_pattern():
    # distinct x, y, z: the cube is exactly {x,y,z,x+y,y+z,x+z,x+y+z} reduced
    for n in range(3, 13):
        amb = Ambient.cyclic(n)
        for x, y, z in itertools.combinations(range(n), 3):
            expected = {v % n for v in
                        (x, y, z, x + y, y + z, x + z, x + y + z)}
            got = set(project_cube(GeneratorMultiset(amb, (x, y, z))))
            assert got == expected


def test_find_cube_frozen_examples():
    assert find_cube(dense(9, [1, 2, 4, 5, 7, 8]), 3) is None
    assert find_cube(dense(7, [1, 2]), 3) is None

    w = find_cube(dense(9, [0, 4, 5, 6, 7, 8]), 3)
    assert w.generator.entries == (0, 0, 0)
    assert w.cube.elements() == [0]

    # any cyclic set containing 0 fails instantly through the zero generator
    w = find_cube(dense(6, [0, 2]), 3)
    assert w.generator.entries == (0, 0, 0)


def test_find_cube_witness_lies_inside_and_is_lex_smallest():
    a = dense(9, [3, 4, 5, 6, 7, 8, 0])
    w = find_cube(a, 3)
    assert w is not None
    assert w.cube <= a
    assert w.generator.entries == (0, 0, 0)
    # without 0 there is still a witness, now a real one
    b = dense(9, [3, 4, 5, 6, 7, 8])
    w = find_cube(b, 3)
    assert w is not None and w.cube <= b
    # oracle agrees on non-freeness
    assert not brute_cube_free([3, 4, 5, 6, 7, 8], 9, 3)


def test_is_cube_free_examples():
    assert is_cube_free(dense(10, range(4, 11), cyclic=False), 3)
    assert not is_cube_free(dense(9, [0, 4, 5, 6, 7, 8]), 3)
    assert is_cube_free(dense(3, [1, 2]), 3)


@pytest.mark.parametrize("n", [6, 8, 9])
@pytest.mark.parametrize("d", [2, 3])
def test_freeness_matches_oracle_exhaustively(n, d):
    amb = Ambient.cyclic(n)
    for mask in range(1 << n):
        a = DenseSet(amb, mask)
        assert is_cube_free(a, d) == brute_cube_free(a.elements(), n, d)


@pytest.mark.parametrize("n", [7, 9])
def test_interval_freeness_matches_oracle(n):
    amb = Ambient.interval(n)
    for mask in range(0, 1 << n, 3):  # every third mask keeps this quick
        a = DenseSet(amb, mask << 1)
        assert is_cube_free(a, 3) == brute_cube_free(a.elements(), n, 3, cyclic=False)


def test_find_cube_beyond_64_bit_universe_uses_fallback():
    # universes above 63 bits go to the pure kernel; answers must not change
    a = dense(70, [5, 10, 15, 20, 25, 30, 35, 41, 57])
    w = find_cube(a, 3)
    assert w.generator.entries == (5, 5, 5)
    assert w.cube.elements() == [5, 10, 15]
    assert w.cube <= a
    assert not brute_cube_free(a.elements(), 70, 3)
    b = dense(70, [1, 2, 4, 41])
    assert is_cube_free(b, 3)
    assert brute_cube_free(b.elements(), 70, 3)


def test_find_cube_is_deterministic():
    a = dense(12, [2, 3, 4, 6, 8, 9, 10])
    w1 = find_cube(a, 3)
    w2 = find_cube(a, 3)
    assert w1 == w2


@settings(max_examples=80, deadline=None)
@given(st.integers(4, 14).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))
))
def test_monotonicity_subsets_of_free_sets_are_free(args):
    n, m1, m2 = args
    amb = Ambient.cyclic(n)
    b = DenseSet(amb, m1 | m2)
    a = DenseSet(amb, m1)
    if is_cube_free(b, 3):
        assert is_cube_free(a, 3)


def test_shifted_intersection_examples():
    assert shifted_intersection(dense(6, [1, 2, 4, 5]), 1, 3).elements() == []
    a = dense(11, [1, 2, 5, 7])
    assert shifted_intersection(a, 0, 4) == a
    z5 = DenseSet.full(Ambient.cyclic(5))
    assert shifted_intersection(z5, 3, 2) == z5
    with pytest.raises(ValueError):
        shifted_intersection(dense(5, [1], cyclic=False), 1, 2)


def test_shifted_intersection_matches_direct_translates():
    a = dense(10, [0, 1, 3, 6, 8])
    for x in range(10):
        direct = set(a)
        for j in range(1, 4):
            direct &= {(v - j * x) % 10 for v in a}
        assert set(shifted_intersection(a, x, 4)) == direct


def test_diagonal_witness_examples():
    # the residue construction contains {1, 2}, so x = 1 is the smallest witness
    assert diagonal_witness(dense(9, [1, 2, 4, 5, 7, 8]), 3) == 1
    assert diagonal_witness(dense(9, [1, 2, 3]), 3) == 1
    assert diagonal_witness(dense(9, [1, 4, 7]), 3) is None
    assert diagonal_witness(dense(8, [0]), 3) is None
    assert diagonal_witness(dense(8, [0]), 3, include_zero=True) == 0


def test_diagonal_then_nonempty_shift_gives_cube():
    # when a diagonal {x,...,(d-1)x} sits inside A and some y survives all the
    # shifts, the generator (x, ..., x, y) is a full cube inside A
    d = 3
    for n in range(1, 13):
        amb = Ambient.cyclic(n)
        for mask in range(1 << n):
            a = DenseSet(amb, mask)
            x = diagonal_witness(a, d)
            if x is None:
                continue
            if len(shifted_intersection(a, x, d)):
                w = find_cube(a, d)
                assert w is not None and w.cube <= a


def test_zero_membership_never_diagonal_but_always_cube():
    a = dense(9, [0, 1, 3])
    assert diagonal_witness(dense(9, [0]), 3) is None
    assert not is_cube_free(a, 3)

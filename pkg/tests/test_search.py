import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_max
from cubefree.ambient import Ambient, DenseSet
from cubefree.search import (
    CUBE,
    DIAGONAL,
    PAIR,
    CapExceededError,
    Problem,
    bound_value,
    branch_and_bound_max,
    brute_force_max,
    chain_dp_max_pairfree_interval,
    forbidden_masks,
    graph_dp_max_pairfree_cyclic,
    satisfies,
)


def cyc(n):
    return Ambient.cyclic(n)


def test_brute_force_frozen_examples():
    r = brute_force_max(Problem(CUBE, 3, cyc(6)))
    assert (r.max_size, r.witness.elements(), r.explored) == (4, [1, 2, 4, 5], 64)
    r = brute_force_max(Problem(CUBE, 3, cyc(3)))
    assert (r.max_size, r.witness.elements()) == (2, [1, 2])
    r = brute_force_max(Problem(PAIR, 2, cyc(10)))
    assert (r.max_size, r.witness.elements()) == (5, [1, 3, 4, 5, 9])


@pytest.mark.parametrize("kind,dmax,nmax", [(CUBE, 3, 9), (DIAGONAL, 4, 11), (PAIR, 3, 11)])
@pytest.mark.parametrize("cyclic", [True, False])
def test_brute_force_matches_slow_oracle(kind, dmax, nmax, cyclic):
    for n in range(1, nmax + 1):
        for d in range(2, dmax + 1):
            amb = cyc(n) if cyclic else Ambient.interval(n)
            got = brute_force_max(Problem(kind, d, amb))
            size, witness = brute_max(n, d, kind, cyclic)
            assert got.max_size == size, (kind, n, d, cyclic)
            assert tuple(got.witness.elements()) == witness, (kind, n, d, cyclic)


def test_branch_and_bound_frozen_examples():
    assert branch_and_bound_max(Problem(CUBE, 3, cyc(9))).max_size == 6
    assert branch_and_bound_max(Problem(CUBE, 3, cyc(12))).max_size == 8
    assert branch_and_bound_max(Problem(CUBE, 3, cyc(15))).max_size == 10


@pytest.mark.parametrize("kind,dvals", [(CUBE, (1, 2, 3, 4, 5)), (DIAGONAL, (2, 3, 4, 5)), (PAIR, (2, 3, 4, 5))])
@pytest.mark.parametrize("cyclic", [True, False])
def test_branch_and_bound_equals_brute_force(kind, dvals, cyclic):
    for n in range(1, 15):
        for d in dvals:
            amb = cyc(n) if cyclic else Ambient.interval(n)
            problem = Problem(kind, d, amb)
            bf = brute_force_max(problem)
            bb = branch_and_bound_max(problem)
            assert bf.max_size == bb.max_size, (kind, n, d, cyclic)
            assert bf.witness == bb.witness, (kind, n, d, cyclic)
            assert satisfies(problem, bb.witness)


def test_diagonal_z25_true_maximum_is_19():
    # upper bound: the 24 indexed diagonal sets each need a nonzero element of
    # the complement, and every nonzero element covers exactly 4 of them, so
    # the complement needs at least 6 nonzero elements
    result = branch_and_bound_max(Problem(DIAGONAL, 5, cyc(25)))
    assert result.max_size == 19
    assert satisfies(Problem(DIAGONAL, 5, cyc(25)), result.witness)
    # explicit certificate built from a perfect hitting set
    certificate = DenseSet.from_iterable(
        cyc(25), [a for a in range(25) if a % 5 != 4 and a != 5])
    assert len(certificate) == 19
    assert satisfies(Problem(DIAGONAL, 5, cyc(25)), certificate)


def test_pairfree_z7_true_maximum_is_2():
    # the conflict graph is two triangles plus the 0 self-loop, so 2, not the
    # floor(7/2) = 3 the gcd bound alone would allow
    assert brute_force_max(Problem(PAIR, 2, cyc(7))).max_size == 2
    assert graph_dp_max_pairfree_cyclic(7, 2).max_size == 2


def test_chain_dp_examples_and_structure():
    r = chain_dp_max_pairfree_interval(10, 2)
    assert (r.max_size, r.witness.elements()) == (6, [1, 3, 4, 5, 7, 9])
    assert chain_dp_max_pairfree_interval(1, 5).max_size == 1
    big = chain_dp_max_pairfree_interval(10**6, 2)
    assert abs(big.max_size - Fraction(2 * 10**6, 3)) <= 2 * math.log2(10**6)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_chain_dp_equals_brute_force(d):
    for n in range(1, 17):
        dp = chain_dp_max_pairfree_interval(n, d)
        bf = brute_force_max(Problem(PAIR, d, Ambient.interval(n)))
        assert dp.max_size == bf.max_size, (n, d)
        assert satisfies(dp.problem, dp.witness)


def test_graph_dp_examples():
    assert graph_dp_max_pairfree_cyclic(10, 2).max_size == 5
    assert graph_dp_max_pairfree_cyclic(2, 3).max_size == 0


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_graph_dp_equals_brute_force(d):
    for n in range(1, 17):
        dp = graph_dp_max_pairfree_cyclic(n, d)
        bf = brute_force_max(Problem(PAIR, d, cyc(n)))
        assert dp.max_size == bf.max_size, (n, d)
        assert satisfies(dp.problem, dp.witness)
        k = math.gcd(d, n)
        assert dp.max_size <= k * n // (k + 1)


def test_cube_free_maximum_equals_bound_in_proved_cases():
    # d = 3, or d the smallest prime factor of N, or N a prime power; the
    # residue construction meets the (d-1)N/d ceiling exactly when d | N
    cases = [(6, 3), (9, 3), (12, 3), (6, 2), (10, 2), (14, 2), (8, 2), (16, 2), (4, 2)]
    for n, d in cases:
        res = brute_force_max(Problem(CUBE, d, cyc(n)))
        assert res.max_size == (d - 1) * n // d, (n, d)
    # past the scan cap the branch and bound continues the pattern
    assert branch_and_bound_max(Problem(CUBE, 3, cyc(27))).max_size == 18
    assert branch_and_bound_max(Problem(CUBE, 3, cyc(30))).max_size == 20


def test_diagonal_free_bound_when_smallest_prime_factor():
    # the counting bound floor((d-1)N/d) holds; tightness is not implied
    for n, d in [(5, 5), (10, 2), (15, 3), (25, 5)]:
        res = branch_and_bound_max(Problem(DIAGONAL, d, cyc(n)))
        assert res.max_size <= (d - 1) * n // d, (n, d)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([CUBE, DIAGONAL, PAIR]),
       st.integers(2, 4),
       st.integers(1, 10),
       st.booleans(),
       st.data())
def test_solver_maximum_dominates_every_satisfying_subset(kind, d, n, cyclic, data):
    amb = cyc(n) if cyclic else Ambient.interval(n)
    problem = Problem(kind, d, amb)
    best = brute_force_max(problem)
    mask = data.draw(st.integers(0, 2**n - 1))
    subset = DenseSet(amb, mask << (0 if cyclic else 1))
    if satisfies(problem, subset):
        assert len(subset) <= best.max_size


def test_graph_dp_bound_holds_at_scale():
    for n in range(1, 400, 13):
        for d in (2, 3, 5):
            res = graph_dp_max_pairfree_cyclic(n, d)
            k = math.gcd(d, n)
            assert res.max_size <= k * n // (k + 1), (n, d)


def test_search_result_serialization():
    r = brute_force_max(Problem(CUBE, 3, cyc(6)))
    js = r.as_json_dict()
    assert js["problem"] == "cube" and js["N"] == 6 and js["max"] == 4
    assert js["witness"] == [1, 2, 4, 5] and js["optimal"] is True
    assert js["method"] == "brute_force"


def test_caps_and_force():
    with pytest.raises(CapExceededError):
        brute_force_max(Problem(CUBE, 3, cyc(23)))
    with pytest.raises(CapExceededError):
        branch_and_bound_max(Problem(CUBE, 3, cyc(31)))
    # 3 does not divide 23, and the scan shows floor(2N/3) = 15 is not attained
    forced = brute_force_max(Problem(CUBE, 3, cyc(23)), cap=23)
    assert forced.max_size == 12
    assert forced.max_size <= 2 * 23 // 3


def test_timeout_flags_non_optimal():
    deadline_result = branch_and_bound_max(
        Problem(DIAGONAL, 5, cyc(25)), timeout=0.0)
    assert not deadline_result.optimal
    assert satisfies(deadline_result.problem, deadline_result.witness)


def test_determinism_repeated_runs():
    a = branch_and_bound_max(Problem(DIAGONAL, 5, cyc(25)))
    b = branch_and_bound_max(Problem(DIAGONAL, 5, cyc(25)))
    assert a.max_size == b.max_size and a.witness == b.witness
    assert a.explored == b.explored


def test_forbidden_masks_are_minimal_and_sorted():
    masks = forbidden_masks(Problem(PAIR, 2, cyc(10)))
    assert masks == sorted(masks)
    for i, m in enumerate(masks):
        for j, other in enumerate(masks):
            if i != j:
                assert (m & other) != other or m == other
    # a cyclic set containing 0 dies through the singleton zero cube
    cube_masks = forbidden_masks(Problem(CUBE, 3, cyc(9)))
    assert 1 in cube_masks


def test_bound_value_examples():
    assert bound_value("conj3", N=9, d=3) == 6
    assert bound_value("thm9", N=10, d=2) == Fraction(20, 3)
    assert bound_value("sec4.2", p=2, l=3, d=2) == Fraction(16, 3)
    assert bound_value("cor10", N=12, d=4) == Fraction(3 * 12, 4)
    assert bound_value("thm8-main", N=10, d=2) == Fraction(20, 3)
    with pytest.raises(ValueError):
        bound_value("nope", N=1)

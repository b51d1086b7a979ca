import pytest

from oracles import brute_cube_free
from cubefree.ambient import factorize
from cubefree.constructions import (
    alternating_chain_set,
    block_partition,
    chain_decomposition,
    interval_construction,
    layers_integers,
    layers_prime_power,
    matrix_coord,
    matrix_coord_inverse,
    residue_construction,
)
from cubefree.cubes import find_cube, is_cube_free


def test_residue_construction_examples():
    assert residue_construction(9, 3).elements() == [1, 2, 4, 5, 7, 8]
    assert residue_construction(6, 2).elements() == [1, 3, 5]
    assert residue_construction(4, 4).elements() == [1, 2, 3]
    with pytest.raises(ValueError):
        residue_construction(10, 3)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_residue_construction_size_and_freeness(d):
    for n in range(d, 37, d):
        a = residue_construction(n, d)
        assert len(a) == (d - 1) * n // d
        assert is_cube_free(a, d)


def test_residue_construction_oracle_spot_checks():
    assert brute_cube_free(residue_construction(12, 3).elements(), 12, 3)
    assert brute_cube_free(residue_construction(10, 5).elements(), 10, 5)


def test_interval_construction_examples():
    assert interval_construction(9).elements() == [4, 5, 6, 7, 8, 9]
    assert interval_construction(9, cyclic=True).elements() == [0, 4, 5, 6, 7, 8]
    assert interval_construction(3).elements() == [2, 3]
    with pytest.raises(ValueError):
        interval_construction(10)


@pytest.mark.parametrize("n", [3, 6, 9, 12])
def test_interval_dichotomy(n):
    assert is_cube_free(interval_construction(n), 3)
    cyc = interval_construction(n, cyclic=True)
    witness = find_cube(cyc, 3)
    assert witness is not None
    assert witness.cube <= cyc


def test_chain_decomposition_examples():
    assert chain_decomposition(10, 2).chains == (
        (1, 2, 4, 8), (3, 6), (5, 10), (7,), (9,))
    assert chain_decomposition(3, 5).chains == ((1,), (2,), (3,))
    assert chain_decomposition(9, 3).chains == (
        (1, 3, 9), (2, 6), (4,), (5,), (7,), (8,))


@pytest.mark.parametrize("n,d", [(1, 2), (50, 2), (60, 3), (37, 5)])
def test_chain_decomposition_partitions(n, d):
    dec = chain_decomposition(n, d)
    seen = [e for c in dec.chains for e in c]
    assert sorted(seen) == list(range(1, n + 1))
    assert len(seen) == len(set(seen))
    for c in dec.chains:
        assert c[0] % d != 0
        assert all(b == a * d for a, b in zip(c, c[1:]))
    assert dec.chain_of(min(n, 4 * d)) in dec.chains


def test_layers_integers_examples():
    dec = layers_integers(10, 2)
    assert [l.elements() for l in dec.layers] == [
        [1, 3, 5, 7, 9], [2, 6, 10], [4], [8]]


def test_layers_prime_power_examples():
    dec = layers_prime_power(2, 3)
    assert [l.elements() for l in dec.layers] == [[1, 3, 5, 7], [2, 6], [4], [0]]
    dec = layers_prime_power(3, 1)
    assert [l.elements() for l in dec.layers] == [[1, 2], [0]]
    with pytest.raises(ValueError):
        layers_prime_power(6, 2)


@pytest.mark.parametrize("n,d", [(1, 2), (64, 2), (81, 3), (100, 7)])
def test_layers_integers_partition_by_valuation(n, d):
    dec = layers_integers(n, d)
    seen = []
    for i, layer in enumerate(dec.layers, 1):
        for x in layer:
            assert factorize(x, d).exponent == i - 1
            seen.append(x)
    assert sorted(seen) == list(range(1, n + 1))


@pytest.mark.parametrize("p,l", [(2, 1), (2, 4), (3, 3), (5, 2), (7, 1)])
def test_layers_prime_power_sizes(p, l):
    dec = layers_prime_power(p, l)
    assert len(dec.layers) == l + 1
    for i in range(1, l + 1):
        assert len(dec.layer(i)) == (p - 1) * p ** (l - i)
    assert dec.layer(l + 1).elements() == [0]
    total = sum(len(lay) for lay in dec.layers)
    assert total == p**l


def test_block_partition_examples():
    bp = block_partition(2, 3, 2)
    assert bp.q == 2
    assert bp.ranges == ((1, 2), (3, 4))
    assert [b.elements() for b in bp.blocks] == [[1, 2, 3, 5, 6, 7], [0, 4]]

    bp = block_partition(3, 1, 2)
    assert bp.q == 1
    assert bp.ranges == ((1, 2),)
    assert bp.blocks[0].elements() == [0, 1, 2]

    # l + 1 = 5, d = 2: two full blocks plus the short remainder [5, 5]
    bp = block_partition(2, 4, 2)
    assert bp.q == 2
    assert bp.ranges == ((1, 2), (3, 4), (5, 5))


@pytest.mark.parametrize("p,l,d", [(2, 3, 2), (3, 3, 2), (2, 4, 2), (2, 5, 3), (5, 1, 1)])
def test_block_partition_counts_and_cover(p, l, d):
    bp = block_partition(p, l, d)
    assert len(bp.blocks) == -(-(l + 1) // d)  # ceil
    union = set()
    total = 0
    for b in bp.blocks:
        total += len(b)
        union |= set(b)
    assert total == p**l and union == set(range(p**l))


def test_alternating_chain_set_examples():
    assert alternating_chain_set(10, 2).elements() == [1, 3, 4, 5, 7, 9]
    assert alternating_chain_set(3, 5).elements() == [1, 2, 3]
    assert alternating_chain_set(9, 3).elements() == [1, 2, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("n,d", [(50, 2), (200, 3), (1000, 2), (77, 7)])
def test_alternating_chain_set_structure(n, d):
    a = alternating_chain_set(n, d)
    assert len(a & a.dilate(d)) == 0
    dec = chain_decomposition(n, d)
    for chain in dec.chains:
        inside = [e for e in chain if e in a]
        assert len(inside) == (len(chain) + 1) // 2
        assert inside == list(chain[0::2])


def test_matrix_coord_examples():
    assert matrix_coord(1, 2) == (1, 1)
    assert matrix_coord(12, 2) == (3, 2)
    assert matrix_coord(7, 3) == (1, 5)
    assert matrix_coord_inverse(1, 1, 2) == 1
    assert matrix_coord_inverse(3, 2, 2) == 12
    assert matrix_coord_inverse(2, 3, 3) == 12


@pytest.mark.parametrize("d", [2, 3, 5])
def test_matrix_coord_bijection_sweep(d):
    seen = set()
    for m in range(1, 100_001):
        rc = matrix_coord(m, d)
        assert rc not in seen
        seen.add(rc)
        assert matrix_coord_inverse(*rc, d) == m


def test_json_shapes():
    dec = chain_decomposition(6, 2)
    js = dec.as_json_dict()
    assert js["chains"] == [[1, 2, 4], [3, 6], [5]]
    lay = layers_prime_power(2, 2).as_json_dict()
    assert lay["layers"]["3"] == [0]
    blk = block_partition(2, 2, 2).as_json_dict()
    assert {b["layers"][0] for b in blk["blocks"]} == {1, 3}

"""Named sets and decompositions used throughout the package.

Covers the residue-class construction, the top-third interval, geometric
chains and their alternating selection, valuation layers over [N] and over
Z_{p^l}, the block grouping of those layers, and the square-matrix coordinate
map m = d^s * l  ->  (s + 1, l - floor(l / d)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ambient import Ambient, DenseSet, factorize


def residue_construction(n: int, d: int) -> DenseSet:
    """{a in Z_n : a = 1, ..., d-1 (mod d)}; size (d-1)n/d, and d-cube-free."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if n % d:
        raise ValueError(f"d={d} must divide N={n}")
    amb = Ambient.cyclic(n)
    arr = np.zeros(n, dtype=np.uint8)
    arr[np.arange(n) % d != 0] = 1
    return DenseSet.from_array(amb, arr)


def interval_construction(n: int, cyclic: bool = False) -> DenseSet:
    """The top two thirds (N/3, N]; in Z_n the endpoint N becomes 0."""
    if n % 3:
        raise ValueError("N must be divisible by 3")
    elems = list(range(n // 3 + 1, n + 1))
    if cyclic:
        return DenseSet.from_iterable(Ambient.cyclic(n), [e % n for e in elems])
    return DenseSet.from_iterable(Ambient.interval(n), elems)


@dataclass(frozen=True)
class ChainDecomposition:
    """[1, limit] split into geometric chains l, d*l, d^2*l with d not dividing l."""

    d: int
    limit: int
    chains: tuple[tuple[int, ...], ...]

    def chain_of(self, m: int) -> tuple[int, ...]:
        l = factorize(m, self.d).cofactor
        for c in self.chains:
            if c[0] == l:
                return c
        raise KeyError(m)

    def as_json_dict(self) -> dict:
        return {
            "d": self.d,
            "limit": self.limit,
            "chains": [list(c) for c in self.chains],
        }


def chain_decomposition(n: int, d: int) -> ChainDecomposition:
    if d < 2:
        raise ValueError("chain ratio must be at least 2")
    chains = []
    for l in range(1, n + 1):
        if l % d == 0:
            continue
        chain = []
        m = l
        while m <= n:
            chain.append(m)
            m *= d
        chains.append(tuple(chain))
    return ChainDecomposition(d, n, tuple(chains))


@dataclass(frozen=True)
class LayerDecomposition:
    """Valuation layers: layer i holds the elements of exact valuation i - 1.

    Over [N] with ratio d the layers are L_i = {x : d^(i-1) | x, d^i not | x}.
    Over Z_{p^l} layer i <= l holds the elements of p-adic valuation i - 1 and
    layer l + 1 is {0}; layer i <= l has size (p-1) p^(l-i).
    """

    kind: str  # "integers" | "prime-power"
    params: tuple[int, int]  # (N, d) or (p, l)
    layers: tuple[DenseSet, ...]

    def layer(self, i: int) -> DenseSet:
        if not 1 <= i <= len(self.layers):
            raise IndexError(f"layer index {i} out of range")
        return self.layers[i - 1]

    def layer_range(self, lo: int, hi: int) -> DenseSet:
        """Union of layers lo..hi (inclusive); empty when lo > hi."""
        out = DenseSet.empty(self.layers[0].ambient)
        for i in range(lo, hi + 1):
            out = out | self.layer(i)
        return out

    def as_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": list(self.params),
            "layers": {str(i + 1): lay.elements() for i, lay in enumerate(self.layers)},
        }


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def layers_integers(n: int, d: int) -> LayerDecomposition:
    if d < 2:
        raise ValueError("ratio must be at least 2")
    amb = Ambient.interval(n)
    depth = 1
    while d**depth <= n:
        depth += 1
    buckets = [np.zeros(n + 1, dtype=np.uint8) for _ in range(depth)]
    for x in range(1, n + 1):
        buckets[factorize(x, d).exponent][x] = 1
    return LayerDecomposition(
        "integers", (n, d), tuple(DenseSet.from_array(amb, b) for b in buckets)
    )


def layers_prime_power(p: int, l: int) -> LayerDecomposition:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if l < 1:
        raise ValueError("exponent must be at least 1")
    n = p**l
    amb = Ambient.cyclic(n)
    buckets = [np.zeros(n, dtype=np.uint8) for _ in range(l + 1)]
    for x in range(1, n):
        buckets[factorize(x, p).exponent][x] = 1
    buckets[l][0] = 1  # zero sits in the extra top layer
    return LayerDecomposition(
        "prime-power", (p, l), tuple(DenseSet.from_array(amb, b) for b in buckets)
    )


@dataclass(frozen=True)
class BlockPartition:
    """Z_{p^l} as ceil((l+1)/d) groups of consecutive layers.

    With q the largest integer satisfying q*d <= l + 1, the q full blocks
    cover layers [1,d], ..., [(q-1)d+1, qd]; a final short block [qd+1, l+1]
    exists only when qd < l + 1.
    """

    p: int
    l: int
    d: int
    q: int
    ranges: tuple[tuple[int, int], ...]
    blocks: tuple[DenseSet, ...]

    def as_json_dict(self) -> dict:
        return {
            "p": self.p,
            "l": self.l,
            "d": self.d,
            "q": self.q,
            "blocks": [
                {"layers": list(r), "elements": b.elements()}
                for r, b in zip(self.ranges, self.blocks)
            ],
        }


def block_partition(p: int, l: int, d: int) -> BlockPartition:
    if d < 1:
        raise ValueError("block width must be at least 1")
    layers = layers_prime_power(p, l)
    q = (l + 1) // d
    ranges = [((t - 1) * d + 1, t * d) for t in range(1, q + 1)]
    if q * d < l + 1:
        ranges.append((q * d + 1, l + 1))
    blocks = tuple(layers.layer_range(lo, hi) for lo, hi in ranges)
    return BlockPartition(p, l, d, q, tuple(ranges), blocks)


def alternating_chain_set(n: int, d: int) -> DenseSet:
    """Union of the odd-indexed layers of [N]: every chain keeps its odd
    positions, so the set meets each chain in ceil(len/2) elements and never
    contains both x and d*x."""
    if d < 2:
        raise ValueError("ratio must be at least 2")
    from . import _kernels

    _, member = _kernels.alternating_walk(n, d)
    return DenseSet.from_array(
        Ambient.interval(n), np.frombuffer(bytes(member), dtype=np.uint8)
    )


def matrix_coord(m: int, d: int) -> tuple[int, int]:
    """Coordinates (s+1, l - floor(l/d)) of m = d^s * l in the square arrangement."""
    if m < 1:
        raise ValueError("m must be positive")
    f = factorize(m, d)
    return f.exponent + 1, f.cofactor - f.cofactor // d


def matrix_coord_inverse(row: int, col: int, d: int) -> int:
    """The unique m mapping to (row, col): l is the col-th positive integer
    not divisible by d, and m = d^(row-1) * l."""
    if row < 1 or col < 1:
        raise ValueError("row and column are 1-based")
    if d < 2:
        raise ValueError("d must be at least 2")
    l = col + (col - 1) // (d - 1)
    return d ** (row - 1) * l

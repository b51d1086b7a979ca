"""Arithmetic universes and dense subsets.

Two universes: the cyclic group Z_N with elements 0..N-1, and the integer
interval [N] = {1..N}.  A ``DenseSet`` stores membership as a Python int used
as a bit vector (bit e set iff element e belongs), which keeps union,
intersection, complement and translation at word speed for every N this
package targets.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

#: Largest supported universe; bit vectors are sized at construction time.
MAX_ORDER = int(os.environ.get("CUBEFREE_MAX_ORDER", 1 << 20))

CYCLIC = "cyclic"
INTERVAL = "interval"


@dataclass(frozen=True)
class Ambient:
    """A universe to take subsets of: Z_N (``cyclic``) or [N] (``interval``)."""

    kind: str
    order: int

    def __post_init__(self):
        if self.kind not in (CYCLIC, INTERVAL):
            raise ValueError(f"unknown ambient kind {self.kind!r}")
        if self.order < 1:
            raise ValueError("ambient order must be at least 1")
        if self.order > MAX_ORDER:
            raise ValueError(
                f"order {self.order} exceeds the configured bit-vector capacity "
                f"{MAX_ORDER} (set CUBEFREE_MAX_ORDER to raise it)"
            )

    @classmethod
    def cyclic(cls, order: int) -> "Ambient":
        return cls(CYCLIC, order)

    @classmethod
    def interval(cls, order: int) -> "Ambient":
        return cls(INTERVAL, order)

    @property
    def is_cyclic(self) -> bool:
        return self.kind == CYCLIC

    def elements(self) -> range:
        return range(self.order) if self.is_cyclic else range(1, self.order + 1)

    def full_mask(self) -> int:
        n = self.order
        return (1 << n) - 1 if self.is_cyclic else ((1 << n) - 1) << 1

    def __contains__(self, e: int) -> bool:
        return (0 <= e < self.order) if self.is_cyclic else (1 <= e <= self.order)

    def __str__(self):
        return f"Z_{self.order}" if self.is_cyclic else f"[{self.order}]"


def _mask_to_array(mask: int, length: int) -> np.ndarray:
    raw = mask.to_bytes((length + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[:length]


def _array_to_mask(bits: np.ndarray) -> int:
    packed = np.packbits(bits.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True)
class DenseSet:
    """An immutable subset of an ambient, stored as a membership bit vector."""

    ambient: Ambient
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask & ~self.ambient.full_mask():
            raise ValueError("membership mask contains bits outside the ambient")

    @classmethod
    def from_iterable(cls, ambient: Ambient, elems: Iterable[int]) -> "DenseSet":
        mask = 0
        for e in elems:
            if e not in ambient:
                raise ValueError(f"element {e} is not in {ambient}")
            mask |= 1 << e
        return cls(ambient, mask)

    @classmethod
    def empty(cls, ambient: Ambient) -> "DenseSet":
        return cls(ambient, 0)

    @classmethod
    def full(cls, ambient: Ambient) -> "DenseSet":
        return cls(ambient, ambient.full_mask())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, e: int) -> bool:
        return e >= 0 and bool(self.mask >> e & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            lsb = m & -m
            yield lsb.bit_length() - 1
            m ^= lsb

    def __and__(self, other: "DenseSet") -> "DenseSet":
        self._check_same(other)
        return DenseSet(self.ambient, self.mask & other.mask)

    def __or__(self, other: "DenseSet") -> "DenseSet":
        self._check_same(other)
        return DenseSet(self.ambient, self.mask | other.mask)

    def __sub__(self, other: "DenseSet") -> "DenseSet":
        self._check_same(other)
        return DenseSet(self.ambient, self.mask & ~other.mask)

    def __le__(self, other: "DenseSet") -> bool:
        self._check_same(other)
        return self.mask & ~other.mask == 0

    def _check_same(self, other: "DenseSet") -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def elements(self) -> list[int]:
        return list(self)

    def to_array(self) -> np.ndarray:
        """Membership as a uint8 array indexed by element (cheap for large N)."""
        n = self.ambient.order
        length = n if self.ambient.is_cyclic else n + 1
        return _mask_to_array(self.mask, length)

    @classmethod
    def from_array(cls, ambient: Ambient, bits: np.ndarray) -> "DenseSet":
        return cls(ambient, _array_to_mask(bits))

    def complement(self) -> "DenseSet":
        """Ambient minus this set."""
        return DenseSet(self.ambient, self.ambient.full_mask() ^ self.mask)

    def dilate(self, c: int) -> "DenseSet":
        """The image {c*a}: reduced mod N when cyclic, products above N dropped
        when interval."""
        if c < 0:
            raise ValueError("dilation factor must be nonnegative")
        n = self.ambient.order
        idx = np.flatnonzero(self.to_array()).astype(np.int64) * c
        if self.ambient.is_cyclic:
            idx %= n
        else:
            idx = idx[(idx >= 1) & (idx <= n)]
        out = np.zeros(n if self.ambient.is_cyclic else n + 1, dtype=np.uint8)
        out[idx] = 1
        return DenseSet.from_array(self.ambient, out)

    def translate(self, t: int) -> "DenseSet":
        """The shifted copy {a - t mod N}; cyclic only."""
        if not self.ambient.is_cyclic:
            raise ValueError("translation leaves the interval universe")
        n = self.ambient.order
        t %= n
        rot = ((self.mask >> t) | (self.mask << (n - t))) & self.ambient.full_mask()
        return DenseSet(self.ambient, rot if t else self.mask)

    def __str__(self):
        return "{" + ",".join(str(e) for e in self) + "}"


@dataclass(frozen=True)
class Factorization:
    """m written as base^exponent * cofactor with the cofactor coprime to base
    in the relevant sense (base does not divide it)."""

    base: int
    exponent: int
    cofactor: int

    @property
    def value(self) -> int:
        return self.base**self.exponent * self.cofactor


def factorize(m: int, d: int) -> Factorization:
    """Unique m = d^s * l with d not dividing l."""
    if d < 2:
        raise ValueError("base must be at least 2")
    if m < 1:
        raise ValueError("m must be positive")
    s = 0
    while m % d == 0:
        m //= d
        s += 1
    return Factorization(d, s, m)


def preimage_count(y: int, c: int, n: int) -> int:
    """Number of x in Z_n with c*x = y (mod n): gcd(c, n) if it divides y, else 0."""
    if n < 1:
        raise ValueError("modulus must be positive")
    k = math.gcd(c, n)
    return k if (y % n) % k == 0 else 0

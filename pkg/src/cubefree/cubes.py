"""Projective cubes: generation, freeness testing, and the shift machinery.

The cube generated by a size-d multiset S is the set of all of its nonempty
subset sums, the full sum included.  A set A is d-cube-free when no generator
produces a cube lying entirely inside A.  In the cyclic universe sums reduce
mod N; in the interval universe a sum above N means that generator cannot be
contained (sums only grow, so the search prunes there).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .ambient import Ambient, DenseSet


@dataclass(frozen=True)
class GeneratorMultiset:
    """A nondecreasing tuple of d ambient elements (the canonical multiset form)."""

    ambient: Ambient
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 1:
            raise ValueError("generator multiset must be nonempty")
        if any(e not in self.ambient for e in self.entries):
            raise ValueError("generator entries must lie in the ambient")
        if any(a > b for a, b in zip(self.entries, self.entries[1:])):
            raise ValueError("generator entries must be nondecreasing")

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CubeWitness:
    """A generator together with its cube, produced when freeness fails."""

    generator: GeneratorMultiset
    cube: DenseSet


def project_cube(s: GeneratorMultiset) -> DenseSet:
    """All nonempty subset sums of the generator, reduced in its ambient.

    Built by incremental doubling: adding entry a maps the achieved sums P to
    P | (P + a) | {a}.
    """
    amb = s.ambient
    n = amb.order
    full = amb.full_mask()
    sums = 0
    for a in s.entries:
        if amb.is_cyclic:
            shifted = ((sums << a) | (sums >> (n - a))) & full if a else sums
        else:
            shifted = (sums << a) & full
        sums = sums | shifted | (1 << a)
    return DenseSet(amb, sums & full)


def find_cube(a: DenseSet, d: int) -> Optional[CubeWitness]:
    """Search for a size-d generator whose whole cube lies inside ``a``.

    Entries are drawn from ``a`` itself (every singleton sum must belong), in
    nondecreasing order, and a partial generator is dropped as soon as any
    achieved sum leaves the set.  The first hit in this order is the
    lexicographically smallest witness, so the result is deterministic.
    Returns None when the set is d-cube-free.
    """
    if d < 1:
        raise ValueError("cube size must be at least 1")
    amb = a.ambient
    hit = _kernels.cube_search_any(amb.order, d, a.mask, amb.is_cyclic)
    if hit is None:
        return None
    gen = GeneratorMultiset(amb, tuple(hit))
    return CubeWitness(gen, project_cube(gen))


def is_cube_free(a: DenseSet, d: int) -> bool:
    return find_cube(a, d) is None


def shifted_intersection(a: DenseSet, x: int, d: int) -> DenseSet:
    """The common part of A, A-x, A-2x, ..., A-(d-1)x; cyclic only."""
    if not a.ambient.is_cyclic:
        raise ValueError("shifted intersections require the cyclic universe")
    if d < 1:
        raise ValueError("d must be at least 1")
    out = a
    for j in range(1, d):
        out = out & a.translate(j * x)
    return out


def diagonal_witness(a: DenseSet, d: int, include_zero: bool = False) -> Optional[int]:
    """Smallest x with the whole diagonal set {x, 2x, ..., (d-1)x} inside ``a``.

    x ranges over the nonzero elements unless ``include_zero`` widens it (only
    meaningful in the cyclic universe, where the x = 0 diagonal is {0}).
    Interval multiples above N disqualify the x. Returns None when ``a`` is
    diagonal-free.
    """
    if d < 2:
        raise ValueError("diagonal sets need d of at least 2")
    amb = a.ambient
    if include_zero and amb.is_cyclic and 0 in a:
        return 0
    for x in amb.elements():
        if x == 0:
            continue
        if all(_multiple_in(a, t * x) for t in range(1, d)):
            return x
    return None


def _multiple_in(a: DenseSet, value: int) -> bool:
    if a.ambient.is_cyclic:
        return value % a.ambient.order in a
    return value <= a.ambient.order and value in a

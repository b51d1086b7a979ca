"""Pure-Python/numpy fallback kernels.

Same contracts as the compiled twin in ``_ext``:

* ``subset_scan_max``   exhaustive 2^n scan for a maximum subset avoiding
  every forbidden bitmask,
* ``dfs_bnb_max``       include/exclude branch and bound over the same space,
* ``cube_search``       lexicographically first generator multiset whose full
  subset-sum set stays inside a given membership mask,
* ``alternating_walk``  odd positions of every geometric chain l, d*l, d^2*l
  inside [1, n].

Masks use bit e for element e.  Ties between equal-size subsets resolve to
the lexicographically smallest sorted element tuple, which is the candidate
whose bit-reversed mask is numerically largest.
"""

from __future__ import annotations

import time

import numpy as np

_REV8 = np.array([int(f"{i:08b}"[::-1], 2) for i in range(256)], dtype=np.uint64)


def _popcount(arr: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(arr)
    v = arr.astype(np.uint64)
    m1 = np.uint64(0x5555555555555555)
    m2 = np.uint64(0x3333333333333333)
    m4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    v = v - ((v >> np.uint64(1)) & m1)
    v = (v & m2) + ((v >> np.uint64(2)) & m2)
    v = (v + (v >> np.uint64(4))) & m4
    return (v * np.uint64(0x0101010101010101)) >> np.uint64(56)


def _revbits(vals: np.ndarray, n: int) -> np.ndarray:
    """Reverse the low 64 bits bytewise, then shift so only n bits remain."""
    out = np.zeros_like(vals)
    v = vals.copy()
    for _ in range(8):
        out = (out << np.uint64(8)) | _REV8[(v & np.uint64(0xFF)).astype(np.int64)]
        v = v >> np.uint64(8)
    return out >> np.uint64(64 - n)


def subset_scan_max(n: int, forbidden: list[int]) -> tuple[int, int, int]:
    """Scan all 2^n subsets; return (best_size, best_mask, subsets_examined).

    A subset is valid when it contains no forbidden mask entirely.  Among the
    maximum-size valid subsets the lexicographically smallest is returned.
    """
    if n > 26:
        raise ValueError(f"subset scan over 2^{n} subsets refused (n > 26)")
    size = 1 << n
    idx = np.arange(size, dtype=np.uint64)
    valid = np.ones(size, dtype=bool)
    for f in forbidden:
        fv = np.uint64(f)
        np.logical_and(valid, (idx & fv) != fv, out=valid)
    pc = _popcount(idx)
    pc[~valid] = 0
    if not valid[0]:
        raise ValueError("empty forbidden mask makes every subset invalid")
    best = int(pc.max())
    cands = idx[valid & (pc == best)]
    winner = int(cands[int(np.argmax(_revbits(cands, n)))]) if best else 0
    return best, winner, size


def _bucket_by_max_element(forbidden: list[int]) -> list[list[int]]:
    buckets: dict[int, list[int]] = {}
    for f in forbidden:
        buckets.setdefault(f.bit_length() - 1, []).append(f)
    top = max(buckets) + 1 if buckets else 0
    return [sorted(buckets.get(i, [])) for i in range(top)]


def dfs_bnb_max(
    n: int, forbidden: list[int], deadline: float | None = None
) -> tuple[int, int, int, bool]:
    """Branch and bound over include/exclude decisions in ascending element order.

    Include branch first; a branch dies when the remaining element count cannot
    beat the incumbent or when including an element completes a forbidden mask.
    Because the incumbent only improves strictly, the first maximum found is the
    lexicographically smallest one.  Returns (size, mask, nodes, optimal); a
    missed ``deadline`` (``time.monotonic()`` value) flags the result
    non-optimal with the best subset seen so far.
    """
    buckets = _bucket_by_max_element(forbidden)
    nbuckets = len(buckets)
    best_size = 0
    best_mask = 0
    nodes = 0
    timed_out = False

    def walk(i: int, inc: int, cnt: int) -> None:
        nonlocal best_size, best_mask, nodes, timed_out
        nodes += 1
        if timed_out or (deadline is not None and nodes % 4096 == 0
                         and time.monotonic() > deadline):
            timed_out = True
            return
        if cnt > best_size:
            best_size, best_mask = cnt, inc
        if i == n or cnt + (n - i) <= best_size:
            return
        ninc = inc | (1 << i)
        completed = i < nbuckets and any((f & ninc) == f for f in buckets[i])
        if not completed:
            walk(i + 1, ninc, cnt + 1)
        walk(i + 1, inc, cnt)

    walk(0, 0, 0)
    return best_size, best_mask, nodes, not timed_out


def cube_search(n: int, d: int, amask: int, cyclic: bool) -> tuple[int, ...] | None:
    """First nondecreasing d-tuple from the mask whose subset sums all stay inside.

    Cyclic: sums reduce mod n (bits 0..n-1).  Interval: bits 1..n; a partial
    sum above n kills the branch because sums only grow.
    """
    full = (1 << n) - 1 if cyclic else ((1 << (n + 1)) - 2)
    elems = [e for e in range(n + (0 if cyclic else 1)) if amask >> e & 1]
    entries: list[int] = []

    def extend(sums: int, maxsum: int, lo: int) -> tuple[int, ...] | None:
        if len(entries) == d:
            return tuple(entries)
        for j in range(lo, len(elems)):
            a = elems[j]
            if cyclic:
                rot = ((sums << a) | (sums >> (n - a))) & full if a else sums
                nsums = sums | rot | (1 << a)
                nmax = 0
            else:
                if maxsum + a > n:
                    break  # larger entries overflow as well
                nsums = sums | (sums << a) | (1 << a)
                nmax = maxsum + a
            if nsums & ~amask & full:
                continue
            entries.append(a)
            hit = extend(nsums, nmax, j)
            if hit is not None:
                return hit
            entries.pop()
        return None

    return extend(0, 0, 0)


def alternating_walk(n: int, d: int) -> tuple[int, bytearray]:
    """Take odd positions of every chain l, d*l, d^2*l, ... within [1, n].

    Returns (size, membership) with membership[e] nonzero iff element e is
    kept; equivalently keeps every m whose d-adic valuation is even.
    """
    member = np.zeros(n + 1, dtype=np.uint8)
    step = 1
    while step <= n:
        member[step::step] = 1
        nxt = step * d
        if nxt <= n:
            member[nxt::nxt] = 0
        step = nxt * d
    total = int(member.sum())
    return total, bytearray(member.tobytes())

"""Independent brute-force oracles for the test suite.

Everything here is deliberately naive (itertools enumeration, no pruning, no
bitmasks) and shares no code path with the package, so the tests get a second
route to every frozen expected value.
"""

import itertools


def cube_sums(entries, n, cyclic):
    """All nonempty index-subset sums of the multiset; None when a sum leaves [N]."""
    sums = set()
    for r in range(1, len(entries) + 1):
        for combo in itertools.combinations(range(len(entries)), r):
            s = sum(entries[i] for i in combo)
            if cyclic:
                sums.add(s % n)
            else:
                if s > n:
                    return None
                sums.add(s)
    return sums


def brute_cube_free(elems, n, d, cyclic=True):
    universe = range(n) if cyclic else range(1, n + 1)
    aset = set(elems)
    for entries in itertools.combinations_with_replacement(universe, d):
        sums = cube_sums(entries, n, cyclic)
        if sums is not None and sums <= aset:
            return False
    return True


def brute_diag_free(elems, n, d, cyclic=True):
    aset = set(elems)
    universe = range(1, n) if cyclic else range(1, n + 1)
    for x in universe:
        mults = [t * x for t in range(1, d)]
        if cyclic:
            if all(m % n in aset for m in mults):
                return False
        elif all(m <= n for m in mults) and all(m in aset for m in mults):
            return False
    return True


def brute_pair_free(elems, n, d, cyclic=True):
    aset = set(elems)
    for x in aset:
        y = d * x % n if cyclic else d * x
        if cyclic or y <= n:
            if y in aset:
                return False
    return True


PREDICATES = {
    "cube": brute_cube_free,
    "diagonal": brute_diag_free,
    "pair": brute_pair_free,
}


def brute_max(n, d, kind, cyclic=True):
    """Maximum pattern-free subset by scanning all 2^n subsets (small n only).

    Returns (size, lexicographically smallest witness as a sorted tuple).
    """
    predicate = PREDICATES[kind]
    universe = list(range(n)) if cyclic else list(range(1, n + 1))
    best_size, best = 0, ()
    for mask in range(1 << n):
        elems = tuple(e for i, e in enumerate(universe) if mask >> i & 1)
        if len(elems) < best_size or not predicate(elems, n, d, cyclic):
            continue
        if len(elems) > best_size or (best_size and elems < best):
            best_size, best = len(elems), elems
    return best_size, best

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring ``cubefree._kernels.pure`` bit for bit.

Masks are uint64 (element e <-> bit e), so every entry point requires the
universe to fit 63 bits; the callers fall back to the pure twin above that.
"""

import time

from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef unsigned long long _rev(unsigned long long v, int n) noexcept nogil:
    cdef unsigned long long out = 0
    cdef int i
    for i in range(n):
        if (v >> i) & 1ULL:
            out |= 1ULL << (n - 1 - i)
    return out


def subset_scan_max(int n, forbidden):
    """Scan all 2^n subsets; return (best_size, best_mask, subsets_examined)."""
    if n > 26:
        raise ValueError(f"subset scan over 2^{n} subsets refused (n > 26)")
    cdef Py_ssize_t k = len(forbidden), j
    cdef unsigned long long *fb = <unsigned long long *> malloc(max(k, 1) * sizeof(unsigned long long))
    if fb == NULL:
        raise MemoryError()
    try:
        for j in range(k):
            fb[j] = forbidden[j]
            if fb[j] == 0:
                raise ValueError("empty forbidden mask makes every subset invalid")
        return _scan(n, fb, k)
    finally:
        free(fb)


cdef _scan(int n, unsigned long long *fb, Py_ssize_t k):
    cdef unsigned long long size = 1ULL << n
    cdef unsigned long long m, f, r, best_mask = 0, best_rev = 0
    cdef int best = 0, pc
    cdef Py_ssize_t j
    cdef bint ok
    for m in range(size):
        ok = True
        for j in range(k):
            f = fb[j]
            if (m & f) == f:
                ok = False
                break
        if not ok:
            continue
        pc = __builtin_popcountll(m)
        if pc < best:
            continue
        r = _rev(m, n)
        if pc > best or r > best_rev:
            best = pc
            best_mask = m
            best_rev = r
    return best, best_mask, int(size)


cdef struct _Bnb:
    int n
    int best_size
    unsigned long long best_mask
    long long nodes
    bint timed_out
    double deadline  # negative: no deadline
    int nbuckets
    unsigned long long *flat
    int *offs


cdef void _bnb(_Bnb *st, int i, unsigned long long inc, int cnt):
    st.nodes += 1
    if st.timed_out or (st.deadline >= 0 and st.nodes % 4096 == 0
                        and time.monotonic() > st.deadline):
        st.timed_out = True
        return
    if cnt > st.best_size:
        st.best_size = cnt
        st.best_mask = inc
    if i == st.n or cnt + (st.n - i) <= st.best_size:
        return
    cdef unsigned long long ninc = inc | (1ULL << i)
    cdef bint completed = False
    cdef int j
    if i < st.nbuckets:
        for j in range(st.offs[i], st.offs[i + 1]):
            if (st.flat[j] & ninc) == st.flat[j]:
                completed = True
                break
    if not completed:
        _bnb(st, i + 1, ninc, cnt + 1)
    _bnb(st, i + 1, inc, cnt)


def dfs_bnb_max(int n, forbidden, deadline=None):
    """Branch and bound, include-first ascending; see the pure twin for rules."""
    buckets = {}
    for f in forbidden:
        fi = int(f)
        if fi == 0:
            raise ValueError("empty forbidden mask makes every subset invalid")
        buckets.setdefault(fi.bit_length() - 1, []).append(fi)
    cdef int nb = (max(buckets) + 1) if buckets else 0
    flat_py = []
    offs_py = [0]
    for i in range(nb):
        flat_py.extend(sorted(buckets.get(i, [])))
        offs_py.append(len(flat_py))

    cdef _Bnb st
    st.n = n
    st.best_size = 0
    st.best_mask = 0
    st.nodes = 0
    st.timed_out = False
    st.deadline = deadline if deadline is not None else -1.0
    st.nbuckets = nb
    st.flat = <unsigned long long *> malloc(max(len(flat_py), 1) * sizeof(unsigned long long))
    st.offs = <int *> malloc((nb + 1) * sizeof(int))
    if st.flat == NULL or st.offs == NULL:
        free(st.flat)
        free(st.offs)
        raise MemoryError()
    try:
        for i, f in enumerate(flat_py):
            st.flat[i] = f
        for i, o in enumerate(offs_py):
            st.offs[i] = o
        _bnb(&st, 0, 0, 0)
        return st.best_size, int(st.best_mask), int(st.nodes), not st.timed_out
    finally:
        free(st.flat)
        free(st.offs)


cdef struct _Cube:
    int n
    int d
    bint cyclic
    unsigned long long amask
    unsigned long long full
    int ne
    int *elems
    int *entries


cdef bint _cube_dfs(_Cube *st, int depth, unsigned long long sums, int maxsum, int lo):
    if depth == st.d:
        return True
    cdef int j, a, nmax
    cdef unsigned long long rot, nsums
    for j in range(lo, st.ne):
        a = st.elems[j]
        if st.cyclic:
            rot = ((sums << a) | (sums >> (st.n - a))) & st.full if a else sums
            nsums = sums | rot | (1ULL << a)
            nmax = 0
        else:
            if maxsum + a > st.n:
                break  # larger entries overflow as well
            nsums = sums | (sums << a) | (1ULL << a)
            nmax = maxsum + a
        if nsums & ~st.amask & st.full:
            continue
        st.entries[depth] = a
        if _cube_dfs(st, depth + 1, nsums, nmax, j):
            return True
    return False


def cube_search(int n, int d, unsigned long long amask, bint cyclic):
    """First nondecreasing d-tuple from the mask with all subset sums inside."""
    if n > 63:
        raise ValueError("compiled cube search limited to 63-bit universes")
    cdef _Cube st
    st.n = n
    st.d = d
    st.cyclic = cyclic
    st.amask = amask
    st.full = ((1ULL << n) - 1ULL) if cyclic else (((1ULL << n) - 1ULL) << 1)
    cdef int top = n if cyclic else n + 1
    st.elems = <int *> malloc(max(top, 1) * sizeof(int))
    st.entries = <int *> malloc(max(d, 1) * sizeof(int))
    if st.elems == NULL or st.entries == NULL:
        free(st.elems)
        free(st.entries)
        raise MemoryError()
    cdef int e
    st.ne = 0
    try:
        for e in range(top):
            if (amask >> e) & 1ULL:
                st.elems[st.ne] = e
                st.ne += 1
        if _cube_dfs(&st, 0, 0, 0, 0):
            return tuple(st.entries[i] for i in range(d))
        return None
    finally:
        free(st.elems)
        free(st.entries)


def alternating_walk(long long n, long long d):
    """Walk every chain l, d*l, d^2*l, ... in [1, n] keeping odd positions."""
    buf = bytearray(n + 1)
    cdef unsigned char[::1] mv = buf
    cdef long long l, m, total = 0
    cdef int pos
    for l in range(1, n + 1):
        if l % d == 0:
            continue
        m = l
        pos = 0
        while m <= n:
            if pos % 2 == 0:
                mv[m] = 1
                total += 1
            m *= d
            pos += 1
    return int(total), buf

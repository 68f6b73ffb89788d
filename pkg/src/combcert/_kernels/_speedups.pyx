# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the enumeration kernels in `reference`.

Limits (enforced by the facade): at most 24 vertices for the subset scan
(the sum-over-subsets table is 2^n int64 slots) and weights/denominator
small enough that every partial sum fits in int64.
"""

from libc.stdlib cimport calloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def sec_violations(int num_vertices, list edge_masks, list weights,
                   long long denom, int lo, int hi):
    """See reference.sec_violations; identical contract within int64 range."""
    cdef size_t total = (<size_t>1) << num_vertices
    cdef long long *acc = <long long *> calloc(total, sizeof(long long))
    if acc == NULL:
        raise MemoryError()
    cdef size_t mask, bit
    cdef int i, pc
    cdef long long w
    out = []
    try:
        for i in range(len(edge_masks)):
            w = weights[i]
            if w != 0:
                acc[<size_t> edge_masks[i]] += w
        # Sum-over-subsets: acc[S] = total scaled weight of edges inside S.
        for i in range(num_vertices):
            bit = (<size_t>1) << i
            for mask in range(total):
                if mask & bit:
                    acc[mask] += acc[mask ^ bit]
        for mask in range(total):
            pc = __builtin_popcountll(mask)
            if lo <= pc <= hi and acc[mask] > denom * (pc - 1):
                out.append((mask, acc[mask]))
    finally:
        free(acc)
    return out


def hamiltonian_cycles(int n, list adj12_py, list adj21_py):
    """See reference.hamiltonian_cycles; returns a list instead of a generator."""
    if n < 2:
        return []
    if n > 20:
        raise ValueError("compiled tour kernel handles n <= 20")
    cdef unsigned int adj12[20]
    cdef unsigned int adj21[20]
    cdef int seq[40]
    cdef int i, j, depth, b, a
    cdef unsigned int used1, used2, candidates, low, adj21_back
    for i in range(n):
        adj12[i] = adj12_py[i]
        adj21[i] = adj21_py[i]
    adj21_back = 0
    for j in range(n):
        if adj21[j] & 1u:
            adj21_back |= (<unsigned int>1) << j

    out = []
    # Explicit DFS over alternating positions; seq[0] is class-1 vertex 0.
    cdef unsigned int pending[41]
    cdef unsigned int u1s[41]
    cdef unsigned int u2s[41]
    seq[0] = 0
    depth = 1
    u1s[1] = 1
    u2s[1] = 0
    pending[1] = adj12[0] & ~u2s[1]
    while depth >= 1:
        if pending[depth] == 0:
            depth -= 1
            continue
        low = pending[depth] & (~pending[depth] + 1)
        pending[depth] ^= low
        used1 = u1s[depth]
        used2 = u2s[depth]
        if depth % 2 == 1:
            b = _bit_index(low)
            seq[depth] = b
            if depth == 2 * n - 1:
                if (low & adj21_back) and seq[1] < b:
                    out.append(tuple([seq[i] for i in range(2 * n)]))
                continue
            depth += 1
            u1s[depth] = used1
            u2s[depth] = used2 | low
            pending[depth] = adj21[b] & ~used1
        else:
            a = _bit_index(low)
            seq[depth] = a
            depth += 1
            u1s[depth] = used1 | low
            u2s[depth] = used2
            if depth == 2 * n - 1:
                # Final class-2 slot: must also close the cycle to vertex 0.
                pending[depth] = adj12[a] & ~used2 & adj21_back
            else:
                pending[depth] = adj12[a] & ~used2
    return out


cdef inline int _bit_index(unsigned int x) nogil:
    cdef int k = 0
    while not (x & 1u):
        x >>= 1
        k += 1
    return k

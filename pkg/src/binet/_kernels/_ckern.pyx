# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels. Contracts match _pykern exactly."""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc

import numpy as np


def triangle_counts(int64_t[::1] indptr, int[::1] indices):
    """Number of triangles through each node (symmetric sorted CSR)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] t = out
    cdef Py_ssize_t u, i
    cdef int64_t a, b
    cdef int v, w
    for u in range(n):
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            if v <= u:
                continue
            a = indptr[u]
            b = indptr[v]
            while a < indptr[u + 1] and b < indptr[v + 1]:
                if indices[a] < indices[b]:
                    a += 1
                elif indices[a] > indices[b]:
                    b += 1
                else:
                    w = indices[a]
                    if w > v:
                        t[u] += 1
                        t[v] += 1
                        t[w] += 1
                    a += 1
                    b += 1
    return out


cdef int64_t _descend(const int64_t* indptr, const int* indices,
                      const int* cand, int64_t m,
                      int depth, int k, int** bufs) noexcept nogil:
    cdef int64_t total = 0
    cdef int64_t i, a, b, size
    cdef int v
    cdef int* sub
    if depth == k - 1:
        return m
    sub = bufs[depth]
    for i in range(m):
        v = cand[i]
        a = 0
        b = indptr[v]
        size = 0
        while a < m and b < indptr[v + 1]:
            if cand[a] < indices[b]:
                a += 1
            elif cand[a] > indices[b]:
                b += 1
            else:
                sub[size] = cand[a]
                size += 1
                a += 1
                b += 1
        if size >= k - depth - 1:
            total += _descend(indptr, indices, sub, size, depth + 1, k, bufs)
    return total


def count_cliques(int64_t[::1] indptr, int[::1] indices, int k):
    """Total number of k-vertex cliques, given a forward-oriented CSR."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    if k == 1:
        return n
    if k == 2:
        return indices.shape[0]
    if n == 0 or indices.shape[0] == 0:
        return 0

    cdef int64_t maxdeg = 0, d
    cdef Py_ssize_t u
    for u in range(n):
        d = indptr[u + 1] - indptr[u]
        if d > maxdeg:
            maxdeg = d
    if maxdeg < k - 1:
        return 0

    # one scratch buffer per recursion depth; candidates only shrink,
    # so the maximum forward degree bounds every level
    cdef int** bufs = <int**> malloc(k * sizeof(int*))
    if bufs == NULL:
        raise MemoryError()
    cdef int depth
    for depth in range(k):
        bufs[depth] = <int*> malloc(maxdeg * sizeof(int))
        if bufs[depth] == NULL:
            for d in range(depth):
                free(bufs[d])
            free(bufs)
            raise MemoryError()

    cdef const int64_t* ip = &indptr[0]
    cdef const int* ix = &indices[0]
    cdef int64_t total = 0, m
    try:
        with nogil:
            for u in range(n):
                m = ip[u + 1] - ip[u]
                if m >= k - 1:
                    total += _descend(ip, ix, ix + ip[u], m, 1, k, bufs)
    finally:
        for depth in range(k):
            free(bufs[depth])
        free(bufs)
    return total

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled homomorphism-counting kernels over flat Cayley tables.

Same interface and enumeration order as _kernels_py; accepts any int32
buffer (array('i'), numpy int32) for the table and inverse map.
"""

from cpython cimport array
import array


cdef long _orient(const int[::1] cay, const int[::1] inv, int n, int identity,
                  int pairs_left, int prod) noexcept:
    cdef long total = 0
    cdef int a, b, ia, pa, x
    if pairs_left == 1:
        for a in range(n):
            ia = inv[a]
            pa = cay[prod * n + a]
            for b in range(n):
                x = cay[cay[cay[pa * n + b] * n + ia] * n + inv[b]]
                if x == identity:
                    total += 1
        return total
    for a in range(n):
        ia = inv[a]
        pa = cay[prod * n + a]
        for b in range(n):
            x = cay[cay[cay[pa * n + b] * n + ia] * n + inv[b]]
            total += _orient(cay, inv, n, identity, pairs_left - 1, x)
    return total


cdef long _nonorient(const int[::1] cay, const int[::1] inv, const int[::1] sq,
                     int n, int identity, int left, int prod) noexcept:
    cdef long total = 0
    cdef int a, target
    if left == 1:
        target = inv[prod]
        for a in range(n):
            if sq[a] == target:
                total += 1
        return total
    for a in range(n):
        total += _nonorient(cay, inv, sq, n, identity, left - 1, cay[prod * n + sq[a]])
    return total


def hom_count_orientable(cayley, inverse, int order, int identity, int genus):
    """Number of 2g-tuples (a1,b1,..,ag,bg) with [a1,b1]..[ag,bg] = 1."""
    if genus == 0:
        return 1
    cdef const int[::1] cay = cayley
    cdef const int[::1] inv = inverse
    return _orient(cay, inv, order, identity, genus, identity)


def hom_count_nonorientable(cayley, inverse, int order, int identity, int crosscaps):
    """Number of k-tuples (a1,..,ak) with a1^2 .. ak^2 = 1."""
    if crosscaps == 0:
        return 1
    cdef const int[::1] cay = cayley
    cdef const int[::1] inv = inverse
    cdef array.array sq_arr = array.array('i', [0] * order)
    cdef int[::1] sq = sq_arr
    cdef int a
    for a in range(order):
        sq[a] = cay[a * order + a]
    return _nonorient(cay, inv, sq, order, identity, crosscaps, identity)

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: non-dominated ranking and Pareto masking.

Semantics are identical to `fallback.py`; see that module for the contract.
"""

import numpy as np

IMPLEMENTATION = "native"


def nd_ranks(objs):
    """Non-dominated sorting ranks (0 = non-dominated) of an (n, m) matrix."""
    cdef double[:, ::1] f = np.ascontiguousarray(objs, dtype=np.float64)
    cdef Py_ssize_t n = f.shape[0], m = f.shape[1]
    ranks_arr = np.empty(n, dtype=np.int64)
    if n == 0:
        return ranks_arr
    cdef long long[::1] ranks = ranks_arr
    # Visit in ascending objective-sum order: dominators always precede.
    order_arr = np.argsort(
        np.asarray(f).sum(axis=1), kind="stable"
    ).astype(np.intp)
    cdef Py_ssize_t[::1] order = order_arr
    cdef Py_ssize_t oi, oj, i, j, k
    cdef long long best
    cdef bint le, lt
    for oj in range(n):
        j = order[oj]
        best = -1
        for oi in range(oj):
            i = order[oi]
            le = True
            lt = False
            for k in range(m):
                if f[i, k] > f[j, k]:
                    le = False
                    break
                if f[i, k] < f[j, k]:
                    lt = True
            if le and lt and ranks[i] > best:
                best = ranks[i]
        ranks[j] = best + 1
    return ranks_arr


def pareto_mask(objs):
    """Boolean mask of the non-dominated (rank-0) rows of an (n, m) matrix."""
    f_arr = np.ascontiguousarray(objs, dtype=np.float64)
    cdef double[:, ::1] f = f_arr
    cdef Py_ssize_t n = f.shape[0], m = f.shape[1]
    mask_arr = np.zeros(n, dtype=np.uint8)
    if n == 0:
        return mask_arr.astype(bool)
    cdef unsigned char[::1] mask = mask_arr
    if m == 2:
        _mask_2d(f, mask, n)
    else:
        _mask_pairwise(f, mask, n, m)
    return mask_arr.astype(bool)


cdef void _mask_2d(double[:, ::1] f, unsigned char[::1] mask, Py_ssize_t n):
    # Skyline scan over (f0, f1)-lexsorted order; duplicates of a kept
    # point are kept with it.
    order_arr = np.lexsort(
        (np.asarray(f)[:, 1], np.asarray(f)[:, 0])
    ).astype(np.intp)
    cdef Py_ssize_t[::1] order = order_arr
    cdef Py_ssize_t oi, i
    cdef double best = 0.0, kept_f0 = 0.0, kept_f1 = 0.0
    cdef bint have = False
    for oi in range(n):
        i = order[oi]
        if not have or f[i, 1] < best:
            mask[i] = 1
            best = f[i, 1]
            kept_f0 = f[i, 0]
            kept_f1 = f[i, 1]
            have = True
        elif f[i, 0] == kept_f0 and f[i, 1] == kept_f1:
            mask[i] = 1


cdef void _mask_pairwise(
    double[:, ::1] f, unsigned char[::1] mask, Py_ssize_t n, Py_ssize_t m
):
    cdef Py_ssize_t i, j, k
    cdef bint le, lt, dominated
    for j in range(n):
        dominated = False
        for i in range(n):
            if i == j:
                continue
            le = True
            lt = False
            for k in range(m):
                if f[i, k] > f[j, k]:
                    le = False
                    break
                if f[i, k] < f[j, k]:
                    lt = True
            if le and lt:
                dominated = True
                break
        if not dominated:
            mask[j] = 1

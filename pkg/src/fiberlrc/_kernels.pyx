# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for table-backed GF(q) array arithmetic.

All symbols are element indices (uint16, q <= 1024).  ``mul_flat`` and
``add_flat`` are the field's dense q*q tables flattened row-major.
"""

import numpy as np


def horner_eval(const unsigned short[:, ::1] coeffs,
                const unsigned short[::1] xs,
                const unsigned short[::1] mul_flat,
                const unsigned short[::1] add_flat,
                int q):
    """Evaluate T polynomials (coeffs[t, d] = degree-d coefficient) at S
    points; returns a (T, S) array."""
    cdef Py_ssize_t T = coeffs.shape[0]
    cdef Py_ssize_t L = coeffs.shape[1]
    cdef Py_ssize_t S = xs.shape[0]
    out_arr = np.zeros((T, S), dtype=np.uint16)
    cdef unsigned short[:, ::1] out = out_arr
    cdef Py_ssize_t t, s, d
    cdef unsigned int c
    # degree loop outermost: the S accumulator chains stay independent,
    # so the table lookups pipeline instead of serializing
    for d in range(L - 1, -1, -1):
        for t in range(T):
            c = coeffs[t, d]
            for s in range(S):
                out[t, s] = add_flat[mul_flat[<unsigned int>out[t, s] * q + xs[s]] * q + c]
    return out_arr


def combine_monomials(const unsigned short[:, ::1] mono,
                      const unsigned short[:, ::1] pvals,
                      const int[::1] base_idx,
                      const unsigned short[::1] mul_flat,
                      const unsigned short[::1] add_flat,
                      int q):
    """word[i] = sum_t mono[t, i] * pvals[t, base_idx[i]]."""
    cdef Py_ssize_t T = mono.shape[0]
    cdef Py_ssize_t n = mono.shape[1]
    out_arr = np.zeros(n, dtype=np.uint16)
    cdef unsigned short[::1] out = out_arr
    cdef Py_ssize_t t, i
    cdef unsigned int acc, prod
    for i in range(n):
        acc = 0
        for t in range(T):
            prod = mul_flat[<unsigned int>mono[t, i] * q + pvals[t, base_idx[i]]]
            acc = add_flat[acc * q + prod]
        out[i] = acc
    return out_arr


def matvec(const unsigned short[:, ::1] rows,
           const unsigned short[::1] vec,
           const unsigned short[::1] mul_flat,
           const unsigned short[::1] add_flat,
           int q):
    """word[i] = sum_r vec[r] * rows[r, i]."""
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t n = rows.shape[1]
    out_arr = np.zeros(n, dtype=np.uint16)
    cdef unsigned short[::1] out = out_arr
    cdef Py_ssize_t r, i
    cdef unsigned int s, acc
    for r in range(k):
        s = vec[r]
        if s == 0:
            continue
        for i in range(n):
            acc = add_flat[<unsigned int>out[i] * q + mul_flat[s * q + rows[r, i]]]
            out[i] = acc
    return out_arr


def min_weight(const unsigned short[:, ::1] rows,
               const unsigned short[::1] inc_delta,
               const unsigned short[::1] mul_flat,
               const unsigned short[::1] add_flat,
               int q):
    """Minimum Hamming weight over the nonzero row span of ``rows``.

    Walks all q^k messages in index order, applying one row delta per
    mixed-radix digit change and tracking the nonzero count incrementally.
    """
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t n = rows.shape[1]
    cdef unsigned long long total = 1
    cdef Py_ssize_t r, i
    for r in range(k):
        total *= q
    cw_arr = np.zeros(n, dtype=np.uint16)
    dig_arr = np.zeros(k, dtype=np.int64)
    cdef unsigned short[::1] cw = cw_arr
    cdef long long[::1] dig = dig_arr
    cdef unsigned long long step
    cdef long long wt = 0, best = n + 1
    cdef unsigned int d, old_c, new_c
    cdef long long v
    for step in range(total - 1):
        r = 0
        while True:
            v = dig[r]
            d = inc_delta[v]
            for i in range(n):
                old_c = cw[i]
                new_c = add_flat[old_c * q + mul_flat[d * q + rows[r, i]]]
                if old_c != 0:
                    wt -= 1
                if new_c != 0:
                    wt += 1
                cw[i] = new_c
            if v + 1 == q:
                dig[r] = 0
                r += 1
            else:
                dig[r] = v + 1
                break
        if wt < best:
            best = wt
    return int(best)

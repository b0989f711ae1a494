# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled basis-sign kernel.

Bareiss elimination in 64-bit integers with overflow detection.  A minor whose
elimination overflows is reported as ``OVERFLOW`` and recomputed by the caller
with Python integers.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int nb_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int nb_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int nb_mul_ovf(long long a, long long b, long long *r) nogil
    int nb_sub_ovf(long long a, long long b, long long *r) nogil

OVERFLOW = 2


cdef int _det_sign(long long *a, int r) noexcept nogil:
    cdef int k, i, j, sgn = 1
    cdef long long prev = 1, akk, aik, x, y, t
    for k in range(r - 1):
        if a[k * r + k] == 0:
            for i in range(k + 1, r):
                if a[i * r + k] != 0:
                    for j in range(r):
                        t = a[k * r + j]
                        a[k * r + j] = a[i * r + j]
                        a[i * r + j] = t
                    sgn = -sgn
                    break
            else:
                return 0
        akk = a[k * r + k]
        for i in range(k + 1, r):
            aik = a[i * r + k]
            for j in range(k + 1, r):
                if nb_mul_ovf(a[i * r + j], akk, &x):
                    return 2
                if nb_mul_ovf(aik, a[k * r + j], &y):
                    return 2
                if nb_sub_ovf(x, y, &t):
                    return 2
                a[i * r + j] = t // prev
        prev = akk
    t = a[(r - 1) * r + (r - 1)]
    if t > 0:
        return sgn
    if t < 0:
        return -sgn
    return 0


def basis_signs(rows, int r):
    """Sign of every r x r minor of ``rows`` in lex subset order.

    Raises OverflowError if an input entry does not fit in 64 bits.
    """
    cdef int n = len(rows)
    cdef int i, j, p, pos
    cdef long long *data
    cdef long long *work
    cdef int *idx
    out = []
    if r > n:
        return out
    data = <long long *> malloc(n * r * sizeof(long long))
    work = <long long *> malloc(r * r * sizeof(long long) + 1)
    idx = <int *> malloc((r + 1) * sizeof(int))
    if data == NULL or work == NULL or idx == NULL:
        free(data); free(work); free(idx)
        raise MemoryError()
    try:
        for i in range(n):
            row = rows[i]
            for j in range(r):
                data[i * r + j] = row[j]
        for i in range(r):
            idx[i] = i
        while True:
            for i in range(r):
                p = idx[i]
                for j in range(r):
                    work[i * r + j] = data[p * r + j]
            out.append(_det_sign(work, r) if r > 0 else 1)
            pos = r - 1
            while pos >= 0 and idx[pos] == n - r + pos:
                pos -= 1
            if pos < 0:
                break
            idx[pos] += 1
            for i in range(pos + 1, r):
                idx[i] = idx[i - 1] + 1
    finally:
        free(data)
        free(work)
        free(idx)
    return out

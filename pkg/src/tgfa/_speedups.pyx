# cython: boundscheck=False, wraparound=False
"""Compiled Levenshtein kernel.

Behaviorally identical to tgfa._kernels_py.levenshtein; the DP runs
without the GIL so corpus scoring can fan out over threads.
"""

from libc.stdlib cimport free, malloc


cdef Py_ssize_t _dp(Py_UCS4 *ua, Py_ssize_t la,
                    Py_UCS4 *ub, Py_ssize_t lb,
                    Py_ssize_t *row) nogil:
    cdef Py_ssize_t i, j, cur, prev, x
    for j in range(lb + 1):
        row[j] = j
    for i in range(1, la + 1):
        prev = row[0]
        row[0] = i
        for j in range(1, lb + 1):
            cur = row[j]
            if ua[i - 1] == ub[j - 1]:
                row[j] = prev
            else:
                x = row[j - 1]
                if cur < x:
                    x = cur
                if prev < x:
                    x = prev
                row[j] = x + 1
            prev = cur
    return row[lb]


def levenshtein(str a, str b):
    """Unit-cost edit distance over Unicode scalar values."""
    if a == b:
        return 0
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi_a = len(a), hi_b = len(b)
    while lo < hi_a and lo < hi_b and a[lo] == b[lo]:
        lo += 1
    while hi_a > lo and hi_b > lo and a[hi_a - 1] == b[hi_b - 1]:
        hi_a -= 1
        hi_b -= 1
    cdef Py_ssize_t la = hi_a - lo, lb = hi_b - lo
    if la == 0:
        return lb
    if lb == 0:
        return la
    # The common-prefix length lo is shared by both strings, so the trim
    # offsets survive the swap.
    if lb > la:
        a, b = b, a
        la, lb = lb, la
        hi_a, hi_b = hi_b, hi_a
    cdef Py_UCS4 *ua = <Py_UCS4 *> malloc(la * sizeof(Py_UCS4))
    cdef Py_UCS4 *ub = <Py_UCS4 *> malloc(lb * sizeof(Py_UCS4))
    cdef Py_ssize_t *row = <Py_ssize_t *> malloc((lb + 1) * sizeof(Py_ssize_t))
    if ua == NULL or ub == NULL or row == NULL:
        free(ua)
        free(ub)
        free(row)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(la):
        ua[i] = a[lo + i]
    for i in range(lb):
        ub[i] = b[lo + i]
    cdef Py_ssize_t dist
    with nogil:
        dist = _dp(ua, la, ub, lb, row)
    free(ua)
    free(ub)
    free(row)
    return dist

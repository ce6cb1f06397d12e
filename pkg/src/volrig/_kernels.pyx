# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular elimination kernels (same API as ``_kernels_py``).

Moduli must satisfy ``q < 2**63``; products are formed in 128 bits.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t vr_mulmod(uint64_t a, uint64_t b, uint64_t m) {
        return (uint64_t)(((unsigned __int128)a * b) % m);
    }
    """
    uint64_t vr_mulmod(uint64_t a, uint64_t b, uint64_t m) nogil


cdef uint64_t _inv(uint64_t a, uint64_t m) noexcept nogil:
    cdef int64_t t = 0, newt = 1, tmp
    cdef int64_t r = <int64_t>m, newr = <int64_t>a, quo
    while newr != 0:
        quo = r // newr
        tmp = t - quo * newt
        t = newt
        newt = tmp
        tmp = r - quo * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <int64_t>m
    return <uint64_t>t


cdef Py_ssize_t _echelon(uint64_t* a, Py_ssize_t m, Py_ssize_t n, uint64_t q,
                         Py_ssize_t* piv) noexcept nogil:
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef uint64_t inv, f, t
    cdef uint64_t* row
    cdef uint64_t* other
    for c in range(n):
        if r == m:
            break
        p = r
        while p < m and a[p * n + c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            for j in range(c, n):
                t = a[r * n + j]
                a[r * n + j] = a[p * n + j]
                a[p * n + j] = t
        row = a + r * n
        inv = _inv(row[c], q)
        for i in range(r + 1, m):
            other = a + i * n
            f = other[c]
            if f == 0:
                continue
            f = vr_mulmod(f, inv, q)
            for j in range(c, n):
                if row[j]:
                    other[j] = (other[j] + q - vr_mulmod(f, row[j], q)) % q
        piv[r] = c
        r += 1
    return r


cdef uint64_t* _load(rows, Py_ssize_t m, Py_ssize_t n, uint64_t q) except NULL:
    cdef uint64_t* a = <uint64_t*>malloc(max(m * n, 1) * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    try:
        for i in range(m):
            r = rows[i]
            if len(r) != n:
                raise ValueError("ragged matrix")
            for j in range(n):
                a[i * n + j] = <uint64_t>(r[j] % q)
    except BaseException:
        free(a)
        raise
    return a


def pivot_columns(rows, Py_ssize_t ncols, uint64_t q):
    cdef Py_ssize_t m = len(rows)
    if m == 0 or ncols == 0:
        return []
    cdef uint64_t* a = _load(rows, m, ncols, q)
    cdef Py_ssize_t* piv = <Py_ssize_t*>malloc(min(m, ncols) * sizeof(Py_ssize_t))
    cdef Py_ssize_t r, k
    if piv == NULL:
        free(a)
        raise MemoryError()
    try:
        r = _echelon(a, m, ncols, q, piv)
        return [piv[k] for k in range(r)]
    finally:
        free(a)
        free(piv)


def rank(rows, Py_ssize_t ncols, uint64_t q):
    return len(pivot_columns(rows, ncols, q))


cdef uint64_t _det_buf(uint64_t* a, Py_ssize_t n, uint64_t q) noexcept nogil:
    cdef Py_ssize_t c, p, i, j
    cdef uint64_t acc = 1, inv, f, t
    cdef int neg = 0
    for c in range(n):
        p = c
        while p < n and a[p * n + c] == 0:
            p += 1
        if p == n:
            return 0
        if p != c:
            for j in range(c, n):
                t = a[c * n + j]
                a[c * n + j] = a[p * n + j]
                a[p * n + j] = t
            neg ^= 1
        acc = vr_mulmod(acc, a[c * n + c], q)
        inv = _inv(a[c * n + c], q)
        for i in range(c + 1, n):
            f = a[i * n + c]
            if f == 0:
                continue
            f = vr_mulmod(f, inv, q)
            for j in range(c, n):
                a[i * n + j] = (a[i * n + j] + q - vr_mulmod(f, a[c * n + j], q)) % q
    if neg and acc:
        return q - acc
    return acc


def det(rows, uint64_t q):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef uint64_t* a = _load(rows, n, n, q)
    try:
        return _det_buf(a, n, q)
    finally:
        free(a)


def minors(matrix, row_sets, col_sets, uint64_t q):
    cdef Py_ssize_t nr = len(matrix)
    if nr == 0:
        return [[] for _ in row_sets]
    cdef Py_ssize_t nc = len(matrix[0])
    cdef uint64_t* x = _load(matrix, nr, nc, q)
    cdef Py_ssize_t k = 0, a, b, i, j
    cdef Py_ssize_t* ri = NULL
    cdef Py_ssize_t* ci = NULL
    cdef uint64_t* buf = NULL
    out = []
    try:
        if len(row_sets):
            k = len(row_sets[0])
        ri = <Py_ssize_t*>malloc(max(k, 1) * sizeof(Py_ssize_t))
        ci = <Py_ssize_t*>malloc(max(k, 1) * sizeof(Py_ssize_t))
        buf = <uint64_t*>malloc(max(k * k, 1) * sizeof(uint64_t))
        if ri == NULL or ci == NULL or buf == NULL:
            raise MemoryError()
        for rs in row_sets:
            if len(rs) != k:
                raise ValueError("row subsets must share one size")
            for a in range(k):
                ri[a] = rs[a]
                if ri[a] < 0 or ri[a] >= nr:
                    raise IndexError("row index out of range")
            line = []
            for cs in col_sets:
                if len(cs) != k:
                    raise ValueError("column subsets must match row subset size")
                for b in range(k):
                    ci[b] = cs[b]
                    if ci[b] < 0 or ci[b] >= nc:
                        raise IndexError("column index out of range")
                for i in range(k):
                    for j in range(k):
                        buf[i * k + j] = x[ri[i] * nc + ci[j]]
                line.append(_det_buf(buf, k, q))
            out.append(line)
    finally:
        free(x)
        free(ri)
        free(ci)
        free(buf)
    return out

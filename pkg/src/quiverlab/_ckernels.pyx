# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled necklace kernels; same API as ``_pykernels``."""
from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef Py_ssize_t _booth(const long *s, Py_ssize_t n, Py_ssize_t *f) noexcept nogil:
    cdef Py_ssize_t j, i, k = 0
    cdef long sj
    if n == 0:
        return 0
    for j in range(2 * n):
        f[j] = -1
    for j in range(1, 2 * n):
        sj = s[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if sj != s[(k + i + 1) % n]:
            if sj < s[k % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


cdef tuple _as_tuple(const long *s, Py_ssize_t n, Py_ssize_t k):
    cdef list out = [None] * n
    cdef Py_ssize_t t
    for t in range(n):
        out[t] = s[(k + t) % n]
    return tuple(out)


cdef long *_load(seq, Py_ssize_t *n) except NULL:
    cdef Py_ssize_t m = len(seq), t
    cdef long *buf = <long *> PyMem_Malloc((m + 1) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    for t in range(m):
        buf[t] = seq[t]
    n[0] = m
    return buf


def least_rotation_start(s):
    cdef Py_ssize_t n, k
    cdef long *buf = _load(s, &n)
    cdef Py_ssize_t *f = <Py_ssize_t *> PyMem_Malloc((2 * n + 1) * sizeof(Py_ssize_t))
    try:
        if f == NULL:
            raise MemoryError()
        k = _booth(buf, n, f)
    finally:
        PyMem_Free(buf)
        PyMem_Free(f)
    return k


def least_rotation(s):
    cdef Py_ssize_t n, k
    cdef long *buf = _load(s, &n)
    cdef Py_ssize_t *f = <Py_ssize_t *> PyMem_Malloc((2 * n + 1) * sizeof(Py_ssize_t))
    try:
        if f == NULL:
            raise MemoryError()
        k = _booth(buf, n, f)
        return _as_tuple(buf, n, k)
    finally:
        PyMem_Free(buf)
        PyMem_Free(f)


def bracket_counts(w1, w2):
    cdef Py_ssize_t n1, n2, i, j, t, m, k
    cdef long c, d
    cdef int sign
    cdef long *a = _load(w1, &n1)
    cdef long *b = NULL
    cdef long *g = NULL
    cdef Py_ssize_t *f = NULL
    cdef dict out = {}
    try:
        b = _load(w2, &n2)
        if n1 == 0 or n2 == 0:
            return out
        m = n1 + n2 - 2
        g = <long *> PyMem_Malloc((m + 2) * sizeof(long))
        f = <Py_ssize_t *> PyMem_Malloc((2 * m + 2) * sizeof(Py_ssize_t))
        if g == NULL or f == NULL:
            raise MemoryError()
        for i in range(n1):
            c = a[i]
            d = c ^ 1
            sign = -1 if (c & 1) else 1
            for t in range(n1 - 1):
                g[t] = a[(i + 1 + t) % n1]
            for j in range(n2):
                if b[j] != d:
                    continue
                for t in range(n2 - 1):
                    g[n1 - 1 + t] = b[(j + 1 + t) % n2]
                k = _booth(g, m, f)
                key = _as_tuple(g, m, k)
                val = out.get(key, 0) + sign
                if val:
                    out[key] = val
                else:
                    del out[key]
    finally:
        PyMem_Free(a)
        PyMem_Free(b)
        PyMem_Free(g)
        PyMem_Free(f)
    return out

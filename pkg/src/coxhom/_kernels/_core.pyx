# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled permutation kernels; same contract as the numpy fallback.

Rows are uint16 arrays of a fixed width d; row i maps point r to
row[i, r].  Composition is function composition: (a o b)(r) = a[b[r]].
"""

import numpy as np

from libcpp.string cimport string
from libcpp.unordered_set cimport unordered_set

ctypedef unsigned short u16

BACKEND = "c"


cdef inline object _rows(object A):
    return np.ascontiguousarray(A, dtype=np.uint16)


cdef inline object _row(object a):
    return np.ascontiguousarray(a, dtype=np.uint16).reshape(-1)


def compose_rows(A, B):
    """Rowwise A[i] o B[i]."""
    cdef const u16[:, ::1] a = _rows(A)
    cdef const u16[:, ::1] b = _rows(B)
    cdef Py_ssize_t m = a.shape[0], d = a.shape[1], i, r
    out_np = np.empty((m, d), dtype=np.uint16)
    cdef u16[:, ::1] out = out_np
    with nogil:
        for i in range(m):
            for r in range(d):
                out[i, r] = a[i, b[i, r]]
    return out_np


def compose_many_one(A, b):
    """Rowwise A[i] o b."""
    cdef const u16[:, ::1] a = _rows(A)
    cdef const u16[::1] bv = _row(b)
    cdef Py_ssize_t m = a.shape[0], d = a.shape[1], i, r
    out_np = np.empty((m, d), dtype=np.uint16)
    cdef u16[:, ::1] out = out_np
    with nogil:
        for i in range(m):
            for r in range(d):
                out[i, r] = a[i, bv[r]]
    return out_np


def compose_one_many(a, B):
    """Rowwise a o B[i]."""
    cdef const u16[::1] av = _row(a)
    cdef const u16[:, ::1] b = _rows(B)
    cdef Py_ssize_t m = b.shape[0], d = b.shape[1], i, r
    out_np = np.empty((m, d), dtype=np.uint16)
    cdef u16[:, ::1] out = out_np
    with nogil:
        for i in range(m):
            for r in range(d):
                out[i, r] = av[b[i, r]]
    return out_np


def invert_rows(A):
    cdef const u16[:, ::1] a = _rows(A)
    cdef Py_ssize_t m = a.shape[0], d = a.shape[1], i, r
    out_np = np.empty((m, d), dtype=np.uint16)
    cdef u16[:, ::1] out = out_np
    with nogil:
        for i in range(m):
            for r in range(d):
                out[i, a[i, r]] = <u16> r
    return out_np


def conjugate_by(g, ginv, U):
    """Rowwise g o U[i] o ginv."""
    cdef const u16[::1] gv = _row(g)
    cdef const u16[::1] hv = _row(ginv)
    cdef const u16[:, ::1] u = _rows(U)
    cdef Py_ssize_t m = u.shape[0], d = u.shape[1], i, r
    out_np = np.empty((m, d), dtype=np.uint16)
    cdef u16[:, ::1] out = out_np
    with nogil:
        for i in range(m):
            for r in range(d):
                out[i, r] = gv[u[i, hv[r]]]
    return out_np


def commute_mask(U, t):
    cdef const u16[:, ::1] u = _rows(U)
    cdef const u16[::1] tv = _row(t)
    cdef Py_ssize_t m = u.shape[0], d = u.shape[1], i, r
    cdef bint ok
    out_np = np.empty(m, dtype=bool)
    cdef unsigned char[::1] out = out_np.view(np.uint8)
    with nogil:
        for i in range(m):
            ok = 1
            for r in range(d):
                if u[i, tv[r]] != tv[u[i, r]]:
                    ok = 0
                    break
            out[i] = ok
    return out_np


def braid_mask(U, t):
    """Mask of rows u with u o t o u == t o u o t."""
    cdef const u16[:, ::1] u = _rows(U)
    cdef const u16[::1] tv = _row(t)
    cdef Py_ssize_t m = u.shape[0], d = u.shape[1], i, r
    cdef bint ok
    out_np = np.empty(m, dtype=bool)
    cdef unsigned char[::1] out = out_np.view(np.uint8)
    with nogil:
        for i in range(m):
            ok = 1
            for r in range(d):
                if u[i, tv[u[i, r]]] != tv[u[i, tv[r]]]:
                    ok = 0
                    break
            out[i] = ok
    return out_np


def commute_matrix(A, B):
    cdef const u16[:, ::1] a = _rows(A)
    cdef const u16[:, ::1] b = _rows(B)
    cdef Py_ssize_t m = a.shape[0], n = b.shape[0], d = a.shape[1], i, k, r
    cdef bint ok
    out_np = np.empty((m, n), dtype=bool)
    cdef unsigned char[:, ::1] out = out_np.view(np.uint8)
    with nogil:
        for k in range(n):
            for i in range(m):
                ok = 1
                for r in range(d):
                    if a[i, b[k, r]] != b[k, a[i, r]]:
                        ok = 0
                        break
                out[i, k] = ok
    return out_np


def braid_matrix(A, B):
    cdef const u16[:, ::1] a = _rows(A)
    cdef const u16[:, ::1] b = _rows(B)
    cdef Py_ssize_t m = a.shape[0], n = b.shape[0], d = a.shape[1], i, k, r
    cdef bint ok
    out_np = np.empty((m, n), dtype=bool)
    cdef unsigned char[:, ::1] out = out_np.view(np.uint8)
    with nogil:
        for k in range(n):
            for i in range(m):
                ok = 1
                for r in range(d):
                    if a[i, b[k, a[i, r]]] != b[k, a[i, b[k, r]]]:
                        ok = 0
                        break
                out[i, k] = ok
    return out_np


cdef class RowSet:
    """Set of rows keyed by their raw bytes; exact deduplication."""

    cdef unordered_set[string] _seen
    cdef public Py_ssize_t width

    def __init__(self, width):
        self.width = width

    def __len__(self):
        return self._seen.size()

    def add_new(self, rows):
        """Insert each row; return the mask of rows not seen before."""
        arr = _rows(rows)
        cdef const u16[:, ::1] rv = arr
        cdef Py_ssize_t m = rv.shape[0], i
        cdef size_t nbytes = rv.shape[1] * sizeof(u16)
        out_np = np.zeros(m, dtype=bool)
        cdef unsigned char[::1] out = out_np.view(np.uint8)
        cdef string key
        for i in range(m):
            key = string(<const char*> &rv[i, 0], nbytes)
            if self._seen.insert(key).second:
                out[i] = 1
        return out_np

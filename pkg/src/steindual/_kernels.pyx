# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; behaviour matches ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def _as_table(table):
    return np.ascontiguousarray(np.asarray(table, dtype=np.int32))


def _as_index(values):
    return np.ascontiguousarray(np.asarray(sorted(values), dtype=np.int32))


def _as_mask(values):
    return np.ascontiguousarray(np.asarray(values, dtype=np.uint8))


def find_nonassociative(mult):
    cdef const int[:, ::1] rows = _as_table(mult)
    cdef Py_ssize_t n = rows.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int ab
    for a in range(n):
        for b in range(n):
            ab = rows[a, b]
            for c in range(n):
                if rows[ab, c] != rows[a, rows[b, c]]:
                    return (int(a), int(b), int(c))
    return None


def restriction_matrix(mult, zlist):
    cdef const int[:, ::1] rows = _as_table(mult)
    cdef const int[::1] zs = _as_index(zlist)
    cdef Py_ssize_t n = rows.shape[0]
    left_arr = np.zeros((n, n), dtype=np.uint8)
    right_arr = np.zeros((n, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] left = left_arr
    cdef unsigned char[:, ::1] right = right_arr
    cdef Py_ssize_t i, b
    cdef int y, a
    for i in range(zs.shape[0]):
        y = zs[i]
        for b in range(n):
            a = rows[y, b]
            if rows[y, a] == a:
                left[a, b] = 1
        for b in range(n):
            a = rows[b, y]
            if rows[a, y] == a:
                right[a, b] = 1
    return (left_arr & right_arr).astype(bool)


def domination_witnesses(mult, slist, zmask, dmask):
    cdef const int[:, ::1] rows = _as_table(mult)
    cdef const int[::1] ss = _as_index(slist)
    cdef const unsigned char[::1] zm = _as_mask(zmask)
    cdef const unsigned char[::1] dm = _as_mask(dmask)
    cdef Py_ssize_t n = rows.shape[0]
    witness_arr = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, ::1] witness = witness_arr
    cdef Py_ssize_t i, a, b
    cdef int s, bs, sb, as_
    for i in range(ss.shape[0]):
        s = ss[i]
        for b in range(n):
            bs = rows[b, s]
            sb = rows[s, b]
            if not (zm[bs] and zm[sb]):
                continue
            for a in range(n):
                if witness[a, b] >= 0:
                    continue
                as_ = rows[a, s]
                if not (dm[as_] and dm[rows[s, a]]):
                    continue
                if rows[bs, a] == a and rows[as_, b] == a:
                    witness[a, b] = s
    return witness_arr


def orthogonality_matrix(mult, zlist, int zero):
    cdef const int[:, ::1] rows = _as_table(mult)
    cdef const int[::1] zs = _as_index(zlist)
    cdef Py_ssize_t n = rows.shape[0]
    left_arr = np.zeros((n, n), dtype=np.uint8)
    right_arr = np.zeros((n, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] left = left_arr
    cdef unsigned char[:, ::1] right = right_arr
    cdef Py_ssize_t i, a, b
    cdef int y
    for i in range(zs.shape[0]):
        y = zs[i]
        for a in range(n):
            if rows[y, a] != a:
                continue
            for b in range(n):
                if rows[y, b] == zero:
                    left[a, b] = 1
        for a in range(n):
            if rows[a, y] != a:
                continue
            for b in range(n):
                if rows[b, y] == zero:
                    right[a, b] = 1
    return (left_arr & right_arr).astype(bool)

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Same contracts as _fallback."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _mod(int64_t a, int64_t p) nogil:
    a = a % p
    if a < 0:
        a += p
    return a


cdef int64_t _inv(int64_t a, int64_t p):
    return pow(int(a), -1, int(p))


def greedy_rows_modp(A, int64_t p):
    cdef cnp.ndarray[int64_t, ndim=2] M = np.ascontiguousarray(A, dtype=np.int64) % p
    cdef Py_ssize_t n = M.shape[0], m = M.shape[1]
    cdef cnp.ndarray[int64_t, ndim=2] B = np.zeros((min(n, m), m), dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] row = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] pc = np.zeros(min(n, m), dtype=np.int64)
    cdef Py_ssize_t r = 0, i, j, k, c
    cdef int64_t f, iv
    sel = []
    for i in range(n):
        for k in range(m):
            row[k] = M[i, k]
        for j in range(r):
            f = row[pc[j]]
            if f != 0:
                for k in range(m):
                    if B[j, k] != 0:
                        row[k] = _mod(row[k] - f * B[j, k], p)
        c = -1
        for k in range(m):
            if row[k] != 0:
                c = k
                break
        if c < 0:
            continue
        iv = _inv(row[c], p)
        for k in range(m):
            row[k] = row[k] * iv % p
        for j in range(r):
            f = B[j, c]
            if f != 0:
                for k in range(m):
                    if row[k] != 0:
                        B[j, k] = _mod(B[j, k] - f * row[k], p)
        for k in range(m):
            B[r, k] = row[k]
        pc[r] = c
        r += 1
        sel.append(i)
        if r == m:
            break
    return sel, B[:r].copy(), [int(x) for x in pc[:r]]


def rref_modp(A, int64_t p):
    cdef cnp.ndarray[int64_t, ndim=2] M = np.array(A, dtype=np.int64) % p
    cdef Py_ssize_t n = M.shape[0], m = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, piv_row
    cdef int64_t iv, f, t
    piv = []
    for c in range(m):
        if r == n:
            break
        piv_row = -1
        for i in range(r, n):
            if M[i, c] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != r:
            for k in range(m):
                t = M[r, k]
                M[r, k] = M[piv_row, k]
                M[piv_row, k] = t
        iv = _inv(M[r, c], p)
        for k in range(m):
            M[r, k] = M[r, k] * iv % p
        for i in range(n):
            if i != r:
                f = M[i, c]
                if f != 0:
                    for k in range(c, m):
                        if M[r, k] != 0:
                            M[i, k] = _mod(M[i, k] - f * M[r, k], p)
        piv.append(c)
        r += 1
    return M[:r].copy(), piv


def jacobi_scan(indptr, indices, data, Py_ssize_t n, triples, int64_t p=0):
    cdef cnp.ndarray[int64_t, ndim=1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] dt = np.ascontiguousarray(data, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] tr = np.ascontiguousarray(triples, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] acc = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] touched = np.zeros(3 * n * n + 1, dtype=np.int64)
    cdef Py_ssize_t t, s, u, v, ntouch, q
    cdef int64_t a, b, c, r, r2, mm, cu, key, val
    cdef int64_t perm[3][3]
    for t in range(tr.shape[0]):
        perm[0][0] = tr[t, 0]; perm[0][1] = tr[t, 1]; perm[0][2] = tr[t, 2]
        perm[1][0] = tr[t, 1]; perm[1][1] = tr[t, 2]; perm[1][2] = tr[t, 0]
        perm[2][0] = tr[t, 2]; perm[2][1] = tr[t, 0]; perm[2][2] = tr[t, 1]
        ntouch = 0
        for s in range(3):
            a = perm[s][0]; b = perm[s][1]; c = perm[s][2]
            r = a * n + b
            for u in range(ip[r], ip[r + 1]):
                mm = ix[u]
                cu = dt[u]
                r2 = mm * n + c
                for v in range(ip[r2], ip[r2 + 1]):
                    key = ix[v]
                    if p:
                        acc[key] = (acc[key] + (cu * dt[v]) % p) % p
                    else:
                        acc[key] += cu * dt[v]
                    touched[ntouch] = key
                    ntouch += 1
        val = 0
        for q in range(ntouch):
            if acc[touched[q]] != 0:
                val = 1
            acc[touched[q]] = 0
        if val:
            return t
    return -1

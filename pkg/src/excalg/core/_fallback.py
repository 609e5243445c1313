"""Pure numpy implementations of the hot kernels (used when the compiled
extension is unavailable or EXCALG_PURE=1)."""
import numpy as np

from .exact import _limb_matmul


def greedy_rows_modp(A, p):
    """Greedy independent rows of A mod p, in input order.

    Returns (selected indices, reduced basis rows, pivot columns).  The basis
    is fully reduced: each basis row is 1 at its own pivot and 0 at the others.
    """
    A = np.ascontiguousarray(A, dtype=np.int64) % p
    n, m = A.shape
    basis = np.zeros((0, m), dtype=np.int64)
    pcols = []
    sel = []
    block = 64
    for s in range(0, n, block):
        C = A[s:s + block].copy()
        if pcols:
            coef = C[:, pcols]
            C = (C - _mm(coef, basis, p)) % p
        for t in range(C.shape[0]):
            row = C[t]
            nz = np.flatnonzero(row)
            if nz.size == 0:
                continue
            c = int(nz[0])
            row = row * pow(int(row[c]), -1, p) % p
            if basis.shape[0]:
                f = basis[:, c].copy()
                basis = (basis - np.outer(f, row) % p) % p
            rest = C[t + 1:]
            if rest.shape[0]:
                f = rest[:, c].copy()
                C[t + 1:] = (rest - np.outer(f, row) % p) % p
            basis = np.vstack([basis, row[None, :]])
            pcols.append(c)
            sel.append(s + t)
    return sel, basis, pcols


def _mm(a, b, p):
    k = a.shape[1]
    if (p - 1) ** 2 * k < 2 ** 53:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    if p < 2 ** 31:
        return _limb_matmul(a, b, p)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    chunk = max(1, (2 ** 62) // ((p - 1) ** 2))
    for i in range(0, k, chunk):
        out = (out + (a[:, i:i + chunk] @ b[i:i + chunk]) % p) % p
    return out


def rref_modp(A, p):
    """Reduced row echelon form mod p.  Returns (R, pivots)."""
    A = np.array(A, dtype=np.int64) % p
    n, m = A.shape
    r = 0
    piv = []
    for c in range(m):
        if r == n:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        f = A[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            A[rows] = (A[rows] - np.outer(f[rows], A[r]) % p) % p
        piv.append(c)
        r += 1
    return A[:r], piv


def jacobi_scan(indptr, indices, data, n, triples, p=0):
    """First triple (row index into `triples`) violating Jacobi, or -1.

    Structure constants are integers (scaled by a common denominator): the
    bracket of basis i, j is sum of data[t] e_{indices[t]} over the CSR row
    i*n + j.  With p > 0 the constants are residues mod p.
    """
    acc = {}
    for t in range(triples.shape[0]):
        i, j, k = (int(x) for x in triples[t])
        acc.clear()
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            r = a * n + b
            for u in range(indptr[r], indptr[r + 1]):
                m = int(indices[u])
                cu = int(data[u])
                r2 = m * n + c
                for v in range(indptr[r2], indptr[r2 + 1]):
                    key = int(indices[v])
                    acc[key] = acc.get(key, 0) + cu * int(data[v])
        for val in acc.values():
            if (val % p if p else val) != 0:
                return t
    return -1

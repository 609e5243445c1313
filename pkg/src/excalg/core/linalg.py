"""Rank, span, nullspace and solves over QQ or F_p.

Small rational systems use fraction-free (Bareiss) Gauss-Jordan on Python
ints.  Large rational systems are solved modulo word-size primes, lifted by
CRT and rational reconstruction, and then certified by exact integer checks:
a result is only returned once it has been verified over QQ.
"""
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from .exact import FMat, imatmul, to_modp, _as_obj, maxabs
from .field import ConfigError, is_prime, rational_reconstruct
from . import kernels

# systems with fewer entry-operations than this go through Bareiss
SMALL_WORK = 3_000_000


class LinAlgError(ArithmeticError):
    pass


def _prime_stream(start=2 ** 31 - 1):
    p = start
    while True:
        if is_prime(p):
            yield p
        p -= 2 if p % 2 else 1


PRIMES = []


def prime(i):
    """The i-th working prime (descending from 2**31 - 1)."""
    if not PRIMES:
        gen = _prime_stream()
        PRIMES.extend(next(gen) for _ in range(64))
    return PRIMES[i]


# ---------------------------------------------------------------- Bareiss

def _content(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def bareiss_rref(rows, ncols):
    """Fraction-free Gauss-Jordan on integer rows.

    Rows are combined by cross-multiplication with gcd cancellation and kept
    primitive, so all arithmetic stays in the integers.  Returns (R, pivots)
    with R[i][pivots[i]] != 0 and R[j][pivots[i]] = 0 for j != i.
    """
    A = [_content(list(r)) for r in rows]
    m = len(A)
    r = 0
    piv = []
    for c in range(ncols):
        k = next((i for i in range(r, m) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        pr = A[r]
        pv = pr[c]
        for i in range(m):
            if i == r:
                continue
            Ai = A[i]
            a = Ai[c]
            if a == 0:
                continue
            g = gcd(pv, a)
            u, w = pv // g, a // g
            A[i] = _content([u * x - w * y for x, y in zip(Ai, pr)])
        piv.append(c)
        r += 1
        if r == m:
            break
    return A[:r], piv


def _int_rows(M):
    """Integer rows spanning the same row space as the QQ matrix M."""
    num = M.num
    return [[int(x) for x in row] for row in (num.tolist() if num.dtype != object else num.tolist())]


def _kernel_from_rref(R, piv, ncols):
    """Kernel vectors (lists of Fractions) from a fraction-free rref."""
    free = [c for c in range(ncols) if c not in set(piv)]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = Fraction(-R[i][f]) / R[i][c]
        out.append(v)
    return out


# ---------------------------------------------------------------- modular

def _crt_pair(r1, m1, r2, m2):
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return r1 + m1 * t, m1 * m2


def _reconstruct_array(res, mod):
    out = np.empty(res.shape, dtype=object)
    for idx, a in np.ndenumerate(res):
        q = rational_reconstruct(int(a), mod)
        if q is None:
            return None
        out[idx] = q
    return out


def _frac_to_fmat(field, arr):
    den = reduce(lcm, (x.denominator for x in arr.flat), 1)
    num = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        num[idx] = x.numerator * (den // x.denominator)
    return FMat(field, num, den)


def _int_num(M):
    """Numerator array of M with object/int64 dtype (denominator dropped)."""
    return M.num


def _modular_nullspace(M, max_primes=24):
    """Kernel basis of the integer matrix num(M) over QQ, certified."""
    num = M.num
    ncols = num.shape[1]
    best = None  # (rank, piv, [ (p, X) ])
    for t in range(max_primes):
        p = prime(t)
        R, piv = kernels.rref_modp(to_modp(FMat(M.field, num, 1, _norm=False), p), p)
        rk = len(piv)
        if best is None or rk > best[0]:
            best = (rk, list(piv), [])
        elif rk < best[0] or list(piv) != best[1]:
            continue
        piv = best[1]
        free = [c for c in range(ncols) if c not in set(piv)]
        X = (-R[:, free]) % p if free else np.zeros((rk, 0), dtype=np.int64)
        best[2].append((p, X))
        if not free:
            return []
        # combine
        acc, mod = _as_obj(best[2][0][1]), best[2][0][0]
        for (q, Y) in best[2][1:]:
            acc, mod = _crt_arrays(acc, mod, _as_obj(Y), q)
        Xq = _reconstruct_array(acc, mod)
        if Xq is None:
            continue
        K = np.empty((ncols, len(free)), dtype=object)
        K[...] = Fraction(0)
        for j, f in enumerate(free):
            K[f, j] = Fraction(1)
        for i, c in enumerate(piv):
            K[c, :] = Xq[i, :]
        Kf = _frac_to_fmat(M.field, K)
        if FMat(M.field, num, 1, _norm=False).__matmul__(Kf).is_zero():
            return [Kf[:, j] for j in range(len(free))]
    raise LinAlgError("modular nullspace did not certify")


def _crt_arrays(a, m1, b, m2):
    t = ((b - a) * pow(m1, -1, m2)) % m2
    return a + m1 * t, m1 * m2


def solve_square(S, B, max_primes=40):
    """Exact X with S X = B for nonsingular square S over QQ."""
    field = S.field
    n = S.shape[0]
    if field.p:
        p = field.p
        R, piv = kernels.rref_modp(np.concatenate([S.num, B.num], axis=1), p)
        if piv[:n] != list(range(n)) or len(piv) < n or (len(piv) > n):
            raise LinAlgError("singular matrix")
        return FMat(field, R[:, n:])
    # S X = B  <=>  num(S) X = num(B) * den(S)/den(B)
    Sn = S.num
    Bn = B.num
    scale = Fraction(S.den, B.den)
    acc = None
    mod = 1
    for t in range(max_primes):
        p = prime(t)
        A = np.concatenate([to_modp(FMat(field, Sn, 1, _norm=False), p),
                            to_modp(FMat(field, Bn, 1, _norm=False), p)], axis=1)
        R, piv = kernels.rref_modp(A, p)
        if list(piv[:n]) != list(range(n)) or len(piv) != n:
            continue  # unlucky prime (or singular)
        Y = _as_obj(R[:, n:])
        if acc is None:
            acc, mod = Y, p
        else:
            acc, mod = _crt_arrays(acc, mod, Y, p)
        Xq = _reconstruct_array(acc, mod)
        if Xq is None:
            continue
        X = _frac_to_fmat(field, Xq)
        if FMat(field, Sn, 1, _norm=False) @ X == FMat(field, Bn, 1, _norm=False):
            return X.scale(scale)
    raise LinAlgError("solve did not certify (singular?)")


def inverse(S):
    return solve_square(S, FMat.eye(S.field, S.shape[0]))


# ---------------------------------------------------------------- public API

def _work(M):
    r, c = M.shape
    return r * c * min(r, c)


def nullspace(M):
    """Basis of {v : M v = 0} as a list of 1-d FMat."""
    field = M.field
    r, c = M.shape
    if r == 0 or M.is_zero():
        return [FMat.unit(field, c, i) for i in range(c)]
    if field.p:
        R, piv = kernels.rref_modp(M.num, field.p)
        free = [j for j in range(c) if j not in set(piv)]
        out = []
        for f in free:
            v = np.zeros(c, dtype=np.int64)
            v[f] = 1
            for i, pc in enumerate(piv):
                v[pc] = -R[i, f]
            out.append(FMat(field, v))
        return out
    if _work(M) <= SMALL_WORK:
        R, piv = bareiss_rref(_int_rows(M), c)
        vs = _kernel_from_rref(R, piv, c)
        return [FMat.from_scalars(field, v) for v in vs]
    return _modular_nullspace(M)


def rank(M):
    if M.size == 0:
        return 0
    return M.shape[1] - len(nullspace(M))


def matrix(field, rows):
    return FMat.from_scalars(field, rows)


def span_rank(vectors, field=None):
    """(rank, greedy basis selection in input order) of a list of vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0, []
    fields = {v.field for v in vectors}
    if len(fields) > 1 or (field is not None and fields != {field}):
        raise ConfigError("mixed-field input")
    lens = {v.shape for v in vectors}
    if len(lens) > 1:
        raise ValueError("vectors of different lengths")
    from .exact import stack
    V = stack(vectors)
    sel = greedy_rows(V)
    return len(sel), sel


def greedy_rows(V):
    """Indices of a greedy maximal independent set of rows of V (input order)."""
    field = V.field
    n, m = V.shape
    if n == 0:
        return []
    if field.p:
        sel, _, _ = kernels.greedy_rows_modp(V.num, field.p)
        return list(sel)
    if n * m * min(n, m) <= SMALL_WORK:
        return _bareiss_greedy(V)
    for t in range(6):
        p = prime(t)
        sel, _, pcols = kernels.greedy_rows_modp(to_modp(V, p), p)
        if _certify_greedy(V, list(sel), list(pcols)):
            return list(sel)
    return _bareiss_greedy(V)


def _bareiss_greedy(V):
    rows = _int_rows(V)
    basis, piv, sel = [], [], []
    m = V.shape[1]
    for i, row in enumerate(rows):
        row = _content(row)
        for b, c in zip(basis, piv):
            a = row[c]
            if a:
                g = gcd(b[c], a)
                row = _content([(b[c] // g) * x - (a // g) * y for x, y in zip(row, b)])
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            continue
        for t, b in enumerate(basis):
            a = b[c]
            if a:
                g = gcd(row[c], a)
                basis[t] = _content([(row[c] // g) * x - (a // g) * y for x, y in zip(b, row)])
        basis.append(row)
        piv.append(c)
        sel.append(i)
        if len(sel) == m:
            break
    return sel


def _certify_greedy(V, sel, pcols):
    """Exact check that the mod-p greedy selection is the greedy selection over QQ."""
    if not sel:
        return V.is_zero()
    B = V.num[sel]
    S = FMat(V.field, B[:, pcols], 1, _norm=False)
    try:
        Sinv = inverse(S)
    except LinAlgError:
        return False
    full = FMat(V.field, V.num, 1, _norm=False)
    coords = FMat(V.field, V.num[:, pcols], 1, _norm=False) @ Sinv
    if not (coords @ FMat(V.field, B, 1, _norm=False) == full):
        return False
    # a rejected row may only use selected rows that come before it
    pos = np.array(sel)
    cn = coords.num
    for i in range(V.shape[0]):
        later = np.flatnonzero(pos > i)
        if later.size and i not in sel:
            if np.any(cn[i, later] != 0):
                return False
    return True


def greedy_stream(field, chunks):
    """Greedy independent rows over a stream of row blocks.

    `chunks` is a zero-argument callable returning an iterable of FMat blocks
    (all with the same number of columns); it is called twice over QQ, once to
    select mod p and once to certify.  Returns (global indices, basis FMat).
    """
    p = field.p or prime(0)
    red = None
    pcols = []
    sel = []
    kept = []
    off = 0
    ncols = 0
    for blk in chunks():
        k = blk.shape[0]
        ncols = blk.shape[1]
        A = blk.num % p if field.p else to_modp(blk, p)
        if red is not None and pcols:
            A = (A - _mod_mm(A[:, pcols], red, p)) % p
        s2, _, _ = kernels.greedy_rows_modp(A, p)
        if s2:
            new = FMat(field, blk.num[list(s2)], blk.den)
            kept.append(new)
            sel.extend(off + i for i in s2)
            rows = A[list(s2)]
            red, pcols = _extend_reduced(red, pcols, rows, p)
        off += k
    if not kept:
        return [], FMat.zeros(field, (0, ncols))
    from .exact import concat
    basis = concat(kept)
    if field.p:
        return sel, basis
    coord = Coordinatizer(basis)
    pos = np.array(sel)
    chosen = set(sel)
    off = 0
    for blk in chunks():
        C = coord.coords(blk)  # raises NotInSpan if the mod-p selection missed a row
        cn = C.num
        for i in range(blk.shape[0]):
            g = off + i
            if g in chosen:
                continue
            later = np.flatnonzero(pos > g)
            if later.size and np.any(cn[i, later] != 0):
                raise LinAlgError("greedy selection not certified over QQ")
        off += blk.shape[0]
    return sel, basis


def _mod_mm(a, b, p):
    from .exact import modmatmul
    return modmatmul(a, b, p)


def _extend_reduced(red, pcols, rows, p):
    """Add rows (already reduced against red) to a fully reduced basis mod p."""
    _, R, pc = kernels.greedy_rows_modp(rows, p)
    R = np.asarray(R, dtype=np.int64)
    pc = list(pc)
    if red is None:
        return R, pc
    red = (red - _mod_mm(red[:, pc], R, p)) % p
    return np.vstack([red, R]), pcols + pc


class NotInSpan(LinAlgError):
    def __init__(self, index):
        super().__init__(f"vector {index} is not in the span")
        self.index = index


class Coordinatizer:
    """Exact coordinates with respect to a list of independent vectors."""

    def __init__(self, basis):
        self.basis = basis  # FMat (r x m), independent rows
        self.field = basis.field
        r, m = basis.shape
        self.r, self.m = r, m
        if r == 0:
            self.pcols = []
            self.inv = FMat.zeros(self.field, (0, 0))
            return
        if self.field.p:
            sel, _, pcols = kernels.greedy_rows_modp(basis.num.T.copy(), self.field.p)
            # independent columns of the basis = pivot positions
            self.pcols = sorted(sel)
        else:
            self.pcols = None
            for t in range(6):
                p = prime(t)
                sel, _, _ = kernels.greedy_rows_modp(to_modp(basis, p).T.copy(), p)
                if len(sel) == r:
                    self.pcols = sorted(sel)
                    break
            if self.pcols is None:
                raise LinAlgError("basis vectors are dependent")
        if len(self.pcols) != r:
            raise LinAlgError("basis vectors are dependent")
        S = FMat(self.field, basis.num[:, self.pcols], basis.den)
        self.inv = inverse(S)

    def coords(self, V, check=True):
        """Coordinates (k x r) of the rows of V (k x m); raises NotInSpan."""
        single = V.ndim == 1
        if single:
            V = V.reshape(1, -1)
        if self.r == 0:
            C = FMat.zeros(self.field, (V.shape[0], 0))
            if check and not V.is_zero():
                nz = np.flatnonzero(np.any(V.num != 0, axis=1))
                raise NotInSpan(int(nz[0]))
            return C[0] if single else C
        Vp = FMat(self.field, V.num[:, self.pcols], V.den)
        C = Vp @ self.inv
        if check:
            back = C @ self.basis
            if not (back == V):
                diff = (back - V).num
                bad = np.flatnonzero(np.any(diff != 0, axis=1))
                raise NotInSpan(int(bad[0]))
        return C[0] if single else C

    def contains(self, V):
        try:
            self.coords(V)
            return True
        except NotInSpan:
            return False

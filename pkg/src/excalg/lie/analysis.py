"""Jacobi, Killing form, centralizers, derivation algebras and induced embeddings."""
import itertools
import random

import numpy as np

from ..core import kernels
from ..core.exact import FMat, concat, stack, maxabs, modmatmul, _as_obj
from ..core.linalg import (Coordinatizer, greedy_stream, nullspace, prime, rank,
                           LinAlgError)
from ..core.report import Check

EXHAUSTIVE_MAX = 66
SAMPLED_TRIPLES = 100_000
SAMPLED_SEED = 20240601


class EmbeddingError(ValueError):
    pass


# ---------------------------------------------------------------- structure checks

def antisymmetry_check(L):
    n = L.n
    bad = None
    for i in range(n):
        for j in range(i, n):
            ki, vi = L.row(i, j)
            kj, vj = L.row(j, i)
            if not (np.array_equal(ki, kj) and np.array_equal(vi, -vj if not L.field.p else (-vj) % L.field.p)):
                bad = (L.labels[i], L.labels[j])
                break
        if bad:
            break
    return Check(f"{L.name}: antisymmetric", bad is None, bad)


def grading_check(L):
    n = L.n
    rows = np.repeat(np.arange(n * n), np.diff(L.indptr))
    i, j = np.divmod(rows, n)
    deg = L.degrees
    badmask = deg[L.indices] != deg[i] + deg[j]
    bad = None
    if badmask.any():
        t = int(np.flatnonzero(badmask)[0])
        bad = (L.labels[i[t]], L.labels[j[t]], L.labels[L.indices[t]])
    return Check(f"{L.name}: [g^i, g^j] in g^(i+j)", bad is None, bad)


def _jacobi_safe(L):
    if L.data.dtype == object:
        return False
    nnz_row = int(np.diff(L.indptr).max()) if L.n else 0
    return maxabs(L.data) ** 2 * (3 * nnz_row * nnz_row + 1) < 2 ** 62


def _scan(L, triples):
    if L.field.p:
        return kernels.jacobi_scan(L.indptr, L.indices, L.data, L.n, triples, L.field.p)
    if _jacobi_safe(L):
        return kernels.jacobi_scan(L.indptr, L.indices, L.data, L.n, triples, 0)
    from ..core import _fallback
    return _fallback.jacobi_scan(L.indptr, L.indices, list(L.data), L.n, triples, 0)


def jacobi_check(L, mode="auto", samples=SAMPLED_TRIPLES, seed=SAMPLED_SEED):
    """Jacobi identity on all basis triples (exhaustive) or on random ones (sampled)."""
    n = L.n
    if mode == "auto":
        mode = "exhaustive" if n <= EXHAUSTIVE_MAX else "sampled"
    if mode == "exhaustive":
        count = 0
        ar = np.arange(n, dtype=np.int64)
        jk = np.array(list(itertools.product(range(n), repeat=2)), dtype=np.int64).reshape(-1, 2)
        for i in range(n):
            tr = np.column_stack([np.full(jk.shape[0], i, dtype=np.int64), jk])
            t = _scan(L, tr)
            count += tr.shape[0]
            if t >= 0:
                w = tuple(L.labels[int(x)] for x in tr[t])
                return Check(f"{L.name}: Jacobi (exhaustive)", False, w, detail={"triples": count})
        return Check(f"{L.name}: Jacobi (exhaustive)", True, detail={"triples": count})
    rng = np.random.default_rng(seed)
    tr = rng.integers(0, n, size=(samples, 3), dtype=np.int64)
    t = _scan(L, tr)
    if t >= 0:
        w = tuple(L.labels[int(x)] for x in tr[t])
        return Check(f"{L.name}: Jacobi ({samples} sampled)", False, w, detail={"seed": seed})
    return Check(f"{L.name}: Jacobi ({samples} sampled)", True, detail={"triples": samples, "seed": seed})


# ---------------------------------------------------------------- Killing form

def _killing_num(L):
    """Integer Gram matrix den^2 * K (or residues) as a dense int64/object array."""
    n = L.n
    S = L.cmat().tocsr()          # [i, k*n + l] = c_ik^l
    perm = (np.arange(n * n) % n) * n + np.arange(n * n) // n
    S2 = S[:, perm]                # [j, k*n + l] = c_jl^k
    if L.field.p:
        p = L.field.p
        return modmatmul(S.toarray() % p, (S2.toarray() % p).T.copy(), p)
    nnz_row = int(np.diff(S.indptr).max()) if S.nnz else 0
    if maxabs(L.data) ** 2 * max(nnz_row, 1) < 2 ** 62:
        return np.asarray((S @ S2.T).toarray(), dtype=np.int64)
    return _as_obj(S.toarray()) @ _as_obj(S2.toarray()).T


def killing(L):
    """(Gram matrix of K(x, y) = tr(ad x ad y), rank)."""
    if L._killing is None:
        num = _killing_num(L)
        K = FMat(L.field, num, 1 if L.field.p else L.den ** 2)
        if L.field.p:
            r = rank(K)
        else:
            p = prime(0)
            r_p = len(kernels.greedy_rows_modp((np.asarray(num % p, dtype=np.int64)), p)[0])
            # full rank mod p certifies full rank over QQ; otherwise compute exactly
            r = r_p if r_p == L.n else rank(K)
        L._killing = (K, r)
    return L._killing


def killing_checks(L, samples=10_000, seed=0):
    K, r = killing(L)
    n = L.n
    out = [Check(f"{L.name}: Killing form nondegenerate", r == n, detail={"rank": r, "dim": n})]
    deg = L.degrees
    nz = np.argwhere(K.num != 0)
    off = nz[deg[nz[:, 0]] + deg[nz[:, 1]] != 0]
    w = None if off.size == 0 else (L.labels[off[0][0]], L.labels[off[0][1]])
    out.append(Check(f"{L.name}: K(g^i, g^j) = 0 unless i + j = 0", w is None, w))
    rng = random.Random(seed)
    Kf = K
    bad = None
    for _ in range(samples):
        i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        lhs = _row_dot(L, i, j, Kf, k, left=True)
        rhs = _row_dot(L, j, k, Kf, i, left=False)
        if lhs != rhs:
            bad = (L.labels[i], L.labels[j], L.labels[k])
            break
    out.append(Check(f"{L.name}: K([x,y],z) = K(x,[y,z]) ({samples} sampled)", bad is None, bad))
    return out


def _row_dot(L, i, j, K, k, left):
    ks, vs = L.row(i, j)
    if ks.size == 0:
        return 0
    col = K.num[ks, k] if left else K.num[k, ks]
    tot = sum(int(a) * int(b) for a, b in zip(vs, col))
    if L.field.p:
        return tot % L.field.p
    return tot


# ---------------------------------------------------------------- subalgebras

class Subalgebra:
    def __init__(self, parent, basis, name=""):
        self.parent = parent
        self.field = parent.field
        self.basis = basis if basis.ndim == 2 else basis.reshape(-1, parent.n)
        self.dim = self.basis.shape[0]
        self.name = name
        self._coord = None

    def coordinatizer(self):
        if self._coord is None:
            self._coord = Coordinatizer(self.basis)
        return self._coord

    def contains(self, V):
        if self.dim == 0:
            return V.is_zero()
        return self.coordinatizer().contains(V)

    def bracket_table(self):
        """Brackets [b_a, b_b] as rows, for a < b (list of (a, FMat rows))."""
        B = self.basis
        for a in range(self.dim):
            yield a, (self.parent.ad(B[a]) @ B.T).T

    def is_closed(self):
        if self.dim == 0:
            return True
        for a, rows in self.bracket_table():
            if not self.contains(rows):
                return False
        return True

    def __repr__(self):
        return f"<Subalgebra {self.name} dim={self.dim} of {self.parent.name}>"


def whole(L):
    return Subalgebra(L, FMat.eye(L.field, L.n), L.name)


def centralizer(L, S):
    """{c : [c, s] = 0 for all s in S} as a Subalgebra of L."""
    n = L.n
    if S.dim == 0:
        return whole(L)
    M = concat([L.ad(S.basis[a]) for a in range(S.dim)])
    ker = nullspace(M)
    basis = stack(ker) if ker else FMat.zeros(L.field, (0, n))
    C = Subalgebra(L, basis, f"z({S.name})")
    # independent re-verification
    for a in range(S.dim):
        if C.dim and not (L.ad(S.basis[a]) @ C.basis.T).is_zero():
            raise LinAlgError("centralizer solve not verified")
    return C


def derived_and_center(S):
    if not isinstance(S, Subalgebra):
        S = whole(S)
    L = S.parent
    n = L.n
    B = S.basis
    m = S.dim
    if m == 0:
        z = Subalgebra(L, FMat.zeros(L.field, (0, n)))
        return z, z
    blocks = [(L.ad(B[a]) @ B.T) for a in range(m)]   # (n x m): column b = [b_a, b_b]

    def chunks():
        for a in range(m):
            yield blocks[a].T

    _, der = greedy_stream(L.field, chunks)
    D = Subalgebra(L, der, f"[{S.name},{S.name}]")
    # center: coefficients c with sum_a c_a [b_a, b_b] = 0 for all b
    M = stack([blk.T.reshape(-1) for blk in blocks]).T      # (m*n, m)
    ker = nullspace(M)
    Z = Subalgebra(L, stack(ker) @ B if ker else FMat.zeros(L.field, (0, n)), f"Z({S.name})")
    return D, Z


# ---------------------------------------------------------------- derivations

def derivation_algebra(A, fixed=None):
    """Derivations D of the algebra A (commuting with its involution if any),
    optionally vanishing on the columns of `fixed` (n x k)."""
    n = A.dim
    F = A.field
    c = A.consts                              # [i, j, k]
    cn = c.num
    den = c.den
    rows = []
    # D(e_i e_j) - D(e_i) e_j - e_i D(e_j) = 0, unknown D[r, s] at r*n + s
    eqs = np.zeros((n, n, n, n * n), dtype=object)
    eqs[...] = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = eqs[i, j, k]
                for m in range(n):
                    v = cn[i, j, m]
                    if v:
                        row[k * n + m] += int(v)
                    v = cn[m, j, k]
                    if v:
                        row[m * n + i] -= int(v)
                    v = cn[i, m, k]
                    if v:
                        row[m * n + j] -= int(v)
    M = FMat(F, eqs.reshape(n * n * n, n * n), den)
    parts = [M]
    P = getattr(A, "involution", None)
    if P is not None:
        # D P - P D = 0
        Pn = P.num
        cm = np.zeros((n, n, n * n), dtype=object)
        cm[...] = 0
        for r in range(n):
            for s in range(n):
                for t in range(n):
                    cm[r, s, r * n + t] += int(Pn[t, s])
                    cm[r, s, t * n + s] -= int(Pn[r, t])
        parts.append(FMat(F, cm.reshape(n * n, n * n), P.den))
    if fixed is not None:
        k = fixed.shape[1]
        fx = np.zeros((n, k, n * n), dtype=object)
        fx[...] = 0
        for r in range(n):
            for a in range(k):
                for s in range(n):
                    fx[r, a, r * n + s] = int(fixed.num[s, a])
        parts.append(FMat(F, fx.reshape(n * k, n * n), fixed.den))
    ker = nullspace(concat(parts))
    ops = [v.reshape(n, n) for v in ker]
    _verify_derivations(A, ops, fixed)
    return ops


def _verify_derivations(A, ops, fixed):
    n = A.dim
    E = [A.basis(i) for i in range(n)]
    for D in ops:
        for i in range(n):
            for j in range(n):
                if not (D @ A.mul(E[i], E[j]) == A.mul(D @ E[i], E[j]) + A.mul(E[i], D @ E[j])):
                    raise LinAlgError("derivation solve not verified")
        if fixed is not None and not (D @ fixed).is_zero():
            raise LinAlgError("derivation does not fix the subalgebra")


def operator_span(ops):
    """Subalgebra-like data for a list of operators: (dim, perfect?, center dim)."""
    if not ops:
        return {"dim": 0, "derived_dim": 0, "center_dim": 0}
    n = ops[0].shape[0]
    F = ops[0].field
    B = stack([o.reshape(-1) for o in ops])
    coord = Coordinatizer(B)
    m = len(ops)
    comms = []
    for a in range(m):
        for b in range(a + 1, m):
            comms.append((ops[a] @ ops[b] - ops[b] @ ops[a]).reshape(-1))
    closed = True
    if comms:
        closed = coord.contains(stack(comms))
    der = rank(stack(comms)) if comms else 0
    # center: sum c_a [X_a, X_b] = 0 for all b
    cols = []
    for a in range(m):
        cols.append(concat([(ops[a] @ ops[b] - ops[b] @ ops[a]).reshape(-1) for b in range(m)]))
    Z = nullspace(stack(cols).T)
    return {"dim": m, "closed": closed, "derived_dim": der, "center_dim": len(Z)}


# ---------------------------------------------------------------- embeddings

class LieEmbedding:
    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = matrix      # (N x n)

    def image(self):
        return Subalgebra(self.target, self.matrix.T, f"im({self.source.name})")

    def check(self):
        """Bracket and degree preservation on all source basis pairs."""
        S, T, P = self.source, self.target, self.matrix
        out = []
        bad_deg = None
        for i in range(S.n):
            col = P.num[:, i]
            nzr = np.flatnonzero(col != 0)
            if np.any(T.degrees[nzr] != S.degrees[i]):
                bad_deg = S.labels[i]
                break
        out.append(Check(f"{S.name} -> {T.name}: degree preserving", bad_deg is None, bad_deg))
        bad = None
        for i in range(S.n):
            lhs = P @ S.ad_basis(i)
            rhs = T.ad(P[:, i]) @ P
            if not (lhs == rhs):
                bad = S.labels[i]
                break
        out.append(Check(f"{S.name} -> {T.name}: bracket preserving", bad is None, bad))
        inj = rank(P) == S.n
        out.append(Check(f"{S.name} -> {T.name}: injective", inj))
        return out

    def compose(self, other):
        """self after other."""
        return LieEmbedding(other.source, self.target, self.matrix @ other.matrix)


def induced_embedding(small, big, inclusion):
    """The graded embedding induced by an inclusion of Jordan or structurable algebras."""
    kind = small.provenance.get("construction")
    if kind != big.provenance.get("construction"):
        raise EmbeddingError("different constructions")
    if kind == "koecher":
        return _koecher_embedding(small, big, inclusion)
    if kind == "allison":
        return _allison_embedding(small, big, inclusion)
    raise EmbeddingError(f"no induced embedding for {kind}")


def _assemble(field, blocks, N, n):
    from fractions import Fraction
    num = np.zeros((N, n), dtype=object)
    num[...] = Fraction(0)
    for tgt, src, M in blocks:
        Ml = M.tolist()
        for a, r in enumerate(tgt):
            for b, c in enumerate(src):
                num[r, c] = Ml[a][b]
    return FMat.from_scalars(field, num.tolist())


def _check_relations(gen_src, gen_img, coord_src, basis_img, what):
    """Every relation among source generators must hold among their images."""
    C = coord_src.coords(gen_src)          # (g x d)
    if not (C @ basis_img == gen_img):
        diff = (C @ basis_img - gen_img).num
        bad = int(np.flatnonzero(np.any(diff != 0, axis=1))[0])
        raise EmbeddingError(f"{what}: generator relation {bad} violated in the target")


def _koecher_embedding(small, big, M):
    Js, Jb = small.extra["source"], big.extra["source"]
    m, mb = Js.dim, Jb.dim
    ds = len(small.extra["g0_gens"])
    E = FMat.eye(Js.field, m)
    Ms = M
    # generator images
    def Lop(J, X):
        k = X.shape[0]
        return (X @ J.mt).reshape(k, J.dim, J.dim).transpose(0, 2, 1)

    Ls_s = Lop(Js, E)
    Ls_b = Lop(Jb, Ms.T)                       # L_{M e_i}
    gens_s = [Ls_s.reshape(m, -1)]
    gens_b = [Ls_b.reshape(m, -1)]
    for i in range(m - 1):
        a = Ls_s[i].reshape(1, m, m)
        gens_s.append((a @ Ls_s[i + 1:] - Ls_s[i + 1:] @ a).reshape(-1, m * m))
        b = Ls_b[i].reshape(1, mb, mb)
        gens_b.append((b @ Ls_b[i + 1:] - Ls_b[i + 1:] @ b).reshape(-1, mb * mb))
    gs, gb = concat(gens_s), concat(gens_b)
    order = [("L", i) for i in range(m)] + [("LL", i, j) for i in range(m) for j in range(i + 1, m)]
    pos = {g: t for t, g in enumerate(order)}
    sel = [pos[g] for g in small.extra["g0_gens"]]
    basis_img = gb[sel]
    _check_relations(gs, gb, small.extra["g0_coord"], basis_img, "koecher g0")
    img0 = big.extra["g0_coord"].coords(basis_img).T    # (db x ds)
    lo_s, g0_s, hi_s = np.arange(m), np.arange(m, m + ds), np.arange(m + ds, 2 * m + ds)
    db = big.n - 2 * mb
    lo_b, g0_b, hi_b = np.arange(mb), np.arange(mb, mb + db), np.arange(mb + db, big.n)
    P = _assemble(Js.field, [(lo_b, lo_s, Ms), (g0_b, g0_s, img0), (hi_b, hi_s, Ms)], big.n, small.n)
    return LieEmbedding(small, big, P)


def _allison_embedding(small, big, M):
    As, Ab = small.extra["source"], big.extra["source"]
    n, nb = As.dim, Ab.dim
    Is, Ib = small.extra["instrl"], big.extra["instrl"]
    E = FMat.eye(As.field, n)
    Mt = M.T
    gens_s, gens_b = [], []
    for i in range(n):
        gens_s.append(As.V_batch(FMat(As.field, np.repeat(E.num[i:i + 1], n, axis=0)), E).reshape(n, n * n))
        Xi = FMat(Ab.field, np.repeat(Mt.num[i:i + 1], n, axis=0), Mt.den)
        gens_b.append(Ab.V_batch(Xi, Mt).reshape(n, nb * nb))
    gs, gb = concat(gens_s), concat(gens_b)
    sel = [i * n + j for (i, j) in Is.pairs]
    basis_img = gb[sel]
    _check_relations(gs, gb, Is._coord, basis_img, "Instrl")
    img0 = Ib.coords(basis_img.reshape(-1, nb, nb)).T
    # skew parts: image of the small skew basis in big skew coordinates
    sk = Ab.skew_coords((M @ As.skew.T).T).T if As.skew_dim else FMat.zeros(As.field, (Ab.skew_dim, 0))
    s, d = As.skew_dim, Is.dim
    sb, dbb = Ab.skew_dim, Ib.dim
    idx_s = _allison_index(s, n, d)
    idx_b = _allison_index(sb, nb, dbb)
    blocks = [(idx_b[0], idx_s[0], sk), (idx_b[1], idx_s[1], M), (idx_b[2], idx_s[2], img0),
              (idx_b[3], idx_s[3], M), (idx_b[4], idx_s[4], sk)]
    P = _assemble(As.field, blocks, big.n, small.n)
    return LieEmbedding(small, big, P)


def _allison_index(s, n, d):
    o = [0, s, s + n, s + n + d, s + 2 * n + d, 2 * s + 2 * n + d]
    return [np.arange(o[t], o[t + 1]) for t in range(5)]

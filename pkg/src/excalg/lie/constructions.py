"""The Heisenberg, Koecher and Allison graded Lie algebras."""
import numpy as np

from .. import __version__
from ..core.exact import FMat, concat
from ..core.linalg import Coordinatizer, greedy_stream
from .algebra import Builder


class ConstructionError(ValueError):
    pass


def _prov(kind, src):
    return {"construction": kind, "input": src.name, "name": f"{kind}({src.name})",
            "field": src.field.spec, "version": __version__}


def _rep(X, k):
    """k copies of the row vector X (1 x n) as a (k, n) FMat."""
    return FMat(X.field, np.repeat(X.num.reshape(1, -1), k, axis=0), X.den)


def _rows(M):
    """Row t of the result is column t of the square matrix M."""
    return M.T


# ---------------------------------------------------------------- Heisenberg

def heisenberg(A):
    """h(A, A_o): degree 1 is A, degree 2 is A_o, [x, y] = <x, y>."""
    n, s = A.dim, A.skew_dim
    N = n + s
    E = FMat.eye(A.field, n)
    b = Builder(A.field, N)
    for i in range(n):
        X = _rep(E[i], n - i - 1) if i + 1 < n else None
        if X is None:
            continue
        Y = E[i + 1:]
        form = A.mul_batch(X, A.conj_batch(Y)) - A.mul_batch(Y, A.conj_batch(X))
        b.add(np.full(n - i - 1, i), np.arange(i + 1, n), A.skew_coords(form), np.arange(n, N))
    labels = [f"x.{l}" for l in A.labels] + [f"z.{a}" for a in range(s)]
    degrees = [1] * n + [2] * s
    return b.build(labels, degrees, _prov("heisenberg", A))


# ---------------------------------------------------------------- Koecher

def koecher_g0(J):
    """Greedy basis of span{L_j} + span{[L_j, L_j']} over basis generators."""
    m = J.dim
    F = J.field
    E = FMat.eye(F, m)
    Ls = (E @ J.mt).reshape(m, m, m).transpose(0, 2, 1)     # L_{e_i}
    gens = [("L", i) for i in range(m)] + [("LL", i, j) for i in range(m) for j in range(i + 1, m)]

    def chunks():
        yield Ls.reshape(m, m * m)
        for i in range(m - 1):
            Li = Ls[i].reshape(1, m, m)
            rest = Ls[i + 1:]
            yield (Li @ rest - rest @ Li).reshape(-1, m * m)

    sel, basis = greedy_stream(F, chunks)
    return [gens[s] for s in sel], basis.reshape(-1, m, m), Ls


def koecher(J):
    """The 3-graded algebra J + Str(J) + J."""
    m = J.dim
    F = J.field
    gens, ops, Ls = koecher_g0(J)
    d = len(gens)
    coord = Coordinatizer(ops.reshape(d, m * m))
    N = 2 * m + d
    lo, g0, hi = np.arange(m), np.arange(m, m + d), np.arange(m + d, N)
    b = Builder(F, N)
    for a in range(d):
        X = ops[a]
        if a + 1 < d:
            rest = ops[a + 1:]
            Xa = X.reshape(1, m, m)
            comm = (Xa @ rest - rest @ Xa).reshape(-1, m * m)
            b.add(np.full(d - a - 1, g0[a]), g0[a + 1:], coord.coords(comm), g0)
        b.add(np.full(m, g0[a]), hi, _rows(X), hi)
        Xstar = J.adjoint(X)
        b.add(np.full(m, g0[a]), lo, _rows(-Xstar), lo)
    # [a+(e_i), a-(e_j)] = 2 (L_{e_i o e_j} + [L_i, L_j])
    Lflat = Ls.reshape(m, m * m)
    for i in range(m):
        prods = J.consts[i]                         # row j: e_i o e_j
        Lp = (prods @ Lflat).reshape(m, m, m)
        Li = Ls[i].reshape(1, m, m)
        ops_ij = (Lp + Li @ Ls - Ls @ Li).scale(2)
        b.add(np.full(m, hi[i]), lo, coord.coords(ops_ij.reshape(m, m * m)), g0)
    labels = [f"a-.{l}" for l in J.labels] + [_gen_label(J, g) for g in gens] + \
        [f"a+.{l}" for l in J.labels]
    degrees = [-1] * m + [0] * d + [1] * m
    L = b.build(labels, degrees, _prov("koecher", J))
    L.extra.update(source=J, g0_gens=gens, g0_ops=ops, g0_coord=coord)
    return L


def _gen_label(A, g):
    if g[0] == "L":
        return f"L[{A.labels[g[1]]}]"
    if g[0] == "LL":
        return f"[L[{A.labels[g[1]]}],L[{A.labels[g[2]]}]]"
    return f"V[{A.labels[g[1]]},{A.labels[g[2]]}]"


# ---------------------------------------------------------------- Allison

def eps_batch(A, X):
    """X^eps for a stack X (d, n, n)."""
    d, n = X.shape[0], A.dim
    x1 = (X @ A.unit.reshape(n, 1)).reshape(d, n)
    w = x1 + A.conj_batch(x1)
    return X - A.V_batch(w, _rep(A.unit, d))


def delta_batch(A, X):
    """X^delta on A_o for a stack X: (d, s, s) with [a, b, c] = coordinate c of X_a^delta(s_b)."""
    d, n = X.shape[0], A.dim
    s = A.skew_dim
    x1 = (X @ A.unit.reshape(n, 1)).reshape(d, n)
    Y = X + A.R_batch(A.conj_batch(x1))
    img = (Y @ A.skew.T).transpose(0, 2, 1).reshape(d * s, n)
    return A.skew_coords(img).reshape(d, s, s)


def allison(A):
    """The 5-graded algebra A_o + A + Instrl(A) + A + A_o."""
    n, s = A.dim, A.skew_dim
    F = A.field
    I = A.instrl()
    d = I.dim
    ops = I.ops
    N = 2 * s + 2 * n + d
    zm = np.arange(0, s)
    em = np.arange(s, s + n)
    g0 = np.arange(s + n, s + n + d)
    ep = np.arange(s + n + d, s + 2 * n + d)
    zp = np.arange(s + 2 * n + d, N)
    b = Builder(F, N)
    E = FMat.eye(F, n)
    # degree +-1 with itself
    for i in range(n - 1):
        X = _rep(E[i], n - i - 1)
        Y = E[i + 1:]
        form = A.mul_batch(X, A.conj_batch(Y)) - A.mul_batch(Y, A.conj_batch(X))
        c = A.skew_coords(form)
        b.add(np.full(n - i - 1, ep[i]), ep[i + 1:], c, zp)
        b.add(np.full(n - i - 1, em[i]), em[i + 1:], c, zm)
    # degree 0 with everything
    eps_ops = eps_batch(A, ops)
    dl = delta_batch(A, ops)
    dle = delta_batch(A, eps_ops)
    for a in range(d):
        X = ops[a]
        if a + 1 < d:
            rest = ops[a + 1:]
            Xa = X.reshape(1, n, n)
            comm = (Xa @ rest - rest @ Xa).reshape(-1, n * n)
            b.add(np.full(d - a - 1, g0[a]), g0[a + 1:], I.coords(comm.reshape(-1, n, n)), g0)
        b.add(np.full(n, g0[a]), ep, _rows(X), ep)
        b.add(np.full(n, g0[a]), em, _rows(eps_ops[a]), em)
        if s:
            b.add(np.full(s, g0[a]), zp, dl[a], zp)
            b.add(np.full(s, g0[a]), zm, dle[a], zm)
    # [eta+(x), eta-(y)] = V_{x,y}
    for i in range(n):
        V = A.V_batch(_rep(E[i], n), E)
        b.add(np.full(n, ep[i]), em, I.coords(V), g0)
    if s:
        S = A.skew
        Ls = A.L_batch(S)
        for a in range(s):
            LL = Ls[a].reshape(1, n, n) @ Ls
            b.add(np.full(s, zp[a]), zm, I.coords(LL), g0)
            # [zeta+(r), eta-(y)] = eta+(r y)
            b.add(np.full(n, zp[a]), em, _rows(Ls[a]), ep)
        # [eta+(x), zeta-(s)] = -eta-(s x)
        for bb in range(s):
            b.add(ep, np.full(n, zm[bb]), _rows(-Ls[bb]), em)
    labels = [f"z-.{a}" for a in range(s)] + [f"e-.{l}" for l in A.labels] + \
        [_gen_label(A, ("V",) + tuple(p)) for p in I.pairs] + \
        [f"e+.{l}" for l in A.labels] + [f"z+.{a}" for a in range(s)]
    degrees = [-2] * s + [-1] * n + [0] * d + [1] * n + [2] * s
    L = b.build(labels, degrees, _prov("allison", A))
    L.extra.update(source=A, instrl=I)
    return L

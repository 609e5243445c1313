"""Hermitian 3x3 matrices over a composition algebra: the cubic Jordan algebra J_C.

A matrix
    [[a,     g,     bar(b)],
     [bar(g), b,    al    ],
     [b',    bar(al), c   ]]
is stored as (a, b, c, alpha, beta, gamma) with alpha = entry (2,3),
beta = entry (3,1), gamma = entry (1,2).  Basis order: E1, E2, E3, then the
alpha, beta and gamma blocks, each in the basis order of C.
"""
import random
from fractions import Fraction

import numpy as np

from .core.exact import FMat, concat, stack
from .core.field import QQ
from .core.linalg import rank
from .core.report import Check
from .core.table import Algebra, Elt
from . import composition


class JordanAlgebra(Algebra):
    def __init__(self, C):
        self.C = C
        field = C.field
        d = C.dim
        n = 3 + 3 * d
        self.cdim = d
        self.field = field
        labels = ["E1", "E2", "E3"] + [f"{blk}.{l}" for blk in ("alpha", "beta", "gamma") for l in C.labels]
        self._cross_consts = _bilinear_table(field, n, lambda x, y: _cross_raw(self, x, y))
        consts = _bilinear_table(field, n, lambda x, y: _circ_raw(self, x, y))
        unit = FMat.from_scalars(field, [1, 1, 1] + [0] * (3 * d))
        super().__init__(field, labels, consts, unit=unit, name=f"J_{C.name}")
        self.cross_mt = self._cross_consts.reshape(n, n * n)
        g = np.zeros((n, n), dtype=object)
        g[...] = Fraction(0)
        G = C.gram.tolist()
        for i in range(3):
            g[i, i] = Fraction(1)
        for b in range(3):
            o = 3 + b * d
            for i in range(d):
                for j in range(d):
                    g[o + i, o + j] = G[i][j]
        self.gram = FMat.from_scalars(field, g.tolist())

    # -- coordinates
    def make(self, a, b, c, alpha, beta, gamma):
        F = self.field
        parts = [F(a), F(b), F(c)]
        for blk in (alpha, beta, gamma):
            v = blk.v if isinstance(blk, Elt) else self.C.elt(blk)
            parts += v.scalars()
        return FMat.from_scalars(F, parts)

    def parts(self, x):
        d = self.cdim
        return x[0], x[1], x[2], x[3:3 + d], x[3 + d:3 + 2 * d], x[3 + 2 * d:]

    def diag(self, a, b, c):
        z = [0] * self.cdim
        return self.make(a, b, c, z, z, z)

    # -- operations
    def cross(self, x, y):
        n = self.dim
        return (x.reshape(1, n) @ self.cross_mt).reshape(n, n).T @ y

    def sharp(self, x):
        return self.cross(x, x).scale(Fraction(1, 2))

    def T(self, x, y):
        return (x.reshape(1, -1) @ (self.gram @ y).reshape(-1, 1))[0, 0]

    def norm(self, x):
        """Cubic norm N(x) = T(x, x#) / 3."""
        return self.T(x, self.sharp(x)) * Fraction(1, 3)

    def adjoint(self, X):
        """T-adjoint X* of an operator X (T(Xx, y) = T(x, X*y))."""
        if not hasattr(self, "_gram_inv"):
            from .core.linalg import inverse
            self._gram_inv = inverse(self.gram)
        return self._gram_inv @ X.T @ self.gram


def _bilinear_table(field, n, fn):
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(fn(i, j))
        rows.append(row)
    return FMat.from_scalars(field, rows)


# Raw products on basis indices, computed from the matrix model in C.

def _entries(J, i):
    """3x3 matrix (list of C-vectors or scalars) of the basis element i."""
    C = J.C
    d = J.cdim
    z = C.zero()
    one = C.unit
    M = [[z, z, z], [z, z, z], [z, z, z]]
    if i < 3:
        M[i][i] = one
        return M
    blk, k = divmod(i - 3, d)
    e = C.basis(k)
    eb = C.conj(e)
    if blk == 0:      # alpha at (2,3), conj at (3,2)
        M[1][2], M[2][1] = e, eb
    elif blk == 1:    # beta at (3,1), conj at (1,3)
        M[2][0], M[0][2] = e, eb
    else:             # gamma at (1,2), conj at (2,1)
        M[0][1], M[1][0] = e, eb
    return M


def _matmul(C, X, Y):
    return [[sum((C.mul(X[i][k], Y[k][j]) for k in range(3)), C.zero()) for j in range(3)]
            for i in range(3)]


def _coords_of(J, M):
    """Coordinates of a hermitian matrix given by its C-entries."""
    C = J.C
    half = Fraction(1, 2)
    out = []
    for i in range(3):
        out.append(C.trace(M[i][i]) * half)
    for (r, c) in ((1, 2), (2, 0), (0, 1)):
        out += M[r][c].scalars()
    return out


def _circ_raw(J, i, j):
    C = J.C
    X, Y = _entries(J, i), _entries(J, j)
    P, Q = _matmul(C, X, Y), _matmul(C, Y, X)
    S = [[(P[r][c] + Q[r][c]).scale(Fraction(1, 2)) for c in range(3)] for r in range(3)]
    return _coords_of(J, S)


def _sharp_parts(C, a, b, c, al, be, ga):
    """The quadratic adjoint on (a, b, c, alpha, beta, gamma) over C."""
    conj, mul, N = C.conj, C.mul, C.norm
    a2 = b * c - N(al)
    b2 = c * a - N(be)
    c2 = a * b - N(ga)
    al2 = mul(conj(ga), conj(be)) - al.scale(a)
    be2 = mul(conj(al), conj(ga)) - be.scale(b)
    ga2 = mul(conj(be), conj(al)) - ga.scale(c)
    return a2, b2, c2, al2, be2, ga2


def _split(J, v):
    d = J.cdim
    s = v.scalars()
    F = J.field
    mk = lambda t: FMat.from_scalars(F, t)
    return s[0], s[1], s[2], mk(s[3:3 + d]), mk(s[3 + d:3 + 2 * d]), mk(s[3 + 2 * d:])


def _join(J, parts):
    a, b, c, al, be, ga = parts
    return FMat.from_scalars(J.field, [a, b, c] + al.scalars() + be.scalars() + ga.scalars())


def sharp_display(J, x):
    """j# evaluated entrywise from the entrywise adjoint formula (used as the definition)."""
    return _join(J, _sharp_parts(J.C, *_split(J, x)))


def _cross_raw(J, i, j):
    n = 3 + 3 * J.cdim
    F = J.C.field
    ei = FMat.unit(F, n, i)
    ej = FMat.unit(F, n, j)
    s = sharp_display(J, ei + ej) - sharp_display(J, ei) - sharp_display(J, ej)
    return s.scalars()


def build_jordan(C):
    return JordanAlgebra(C)


JElt = Elt


# ---------------------------------------------------------------- operations

def jprod(x, y):
    return x * y


def sharp_and_norm(j):
    J = j.alg
    return Elt(J, J.sharp(j.v)), J.norm(j.v)


def cross_and_pairing(x, y):
    J = x.alg
    if y.alg is not J:
        raise ValueError("elements of different Jordan algebras")
    return Elt(J, J.cross(x.v, y.v)), J.T(x.v, y.v)


def norm_from_cross(J, x):
    """The scalar t with x * x# = t x, or None when x * x# is not a multiple of x."""
    y = J.cross(x, J.sharp(x))
    if x.is_zero():
        return None
    nz = int(np.flatnonzero(x.num)[0])
    t = y[nz] / x[nz]
    return t if y == x.scale(t) else None


def embedding_matrix(J_small, J_big, E):
    """Entrywise embedding J_H -> J_E induced by a composition embedding E."""
    F = J_small.field
    ds, db = J_small.cdim, J_big.cdim
    M = np.zeros((3 + 3 * db, 3 + 3 * ds), dtype=object)
    M[...] = 0
    for i in range(3):
        M[i, i] = 1
    En = E.tolist()
    for b in range(3):
        for r in range(db):
            for c in range(ds):
                M[3 + b * db + r, 3 + b * ds + c] = En[r][c]
    return FMat.from_scalars(F, M.tolist())


def inner_derivation(J, x, y):
    Lx, Ly = J.L(x), J.L(y)
    return Lx @ Ly - Ly @ Lx


# ---------------------------------------------------------------- suites

def jordan_checks(J, samples=1000, seed=0):
    rng = random.Random(seed)
    n = J.dim
    out = []
    E = [J.basis(i) for i in range(n)]
    comm = all(J.mul(E[i], E[j]) == J.mul(E[j], E[i]) for i in range(n) for j in range(i, n))
    out.append(Check(f"{J.name}: commutative", comm))
    out.append(Check(f"{J.name}: I o x = x", all(J.mul(J.unit, E[i]) == E[i] for i in range(n))))

    def jordan_id(x, y):
        x2 = J.mul(x, x)
        return J.mul(J.mul(x2, y), x) == J.mul(x2, J.mul(y, x))

    bad = next(((i, j) for i in range(n) for j in range(n) if not jordan_id(E[i], E[j])), None)
    if bad is None:
        for _ in range(samples // 4):
            x, y = J.random_element(rng), J.random_element(rng)
            if not jordan_id(x, y):
                bad = (x, y)
                break
    out.append(Check(f"{J.name}: Jordan identity", bad is None, bad))
    out.append(Check(f"{J.name}: I# = I and N(I) = 1", J.sharp(J.unit) == J.unit and J.norm(J.unit) == 1))
    out.append(Check(f"{J.name}: T symmetric with full-rank Gram", J.gram == J.gram.T and rank(J.gram) == n))
    bad_adj = bad_circ = bad_cubic = bad_xx = None
    for _ in range(samples):
        x = J.random_element(rng)
        s = J.sharp(x)
        N = J.norm(x)
        if bad_adj is None and not (J.sharp(s) == x.scale(N)):
            bad_adj = x
        if bad_circ is None and not (J.mul(x, s) == J.unit.scale(N)):
            bad_circ = x
        if bad_xx is None and not (J.cross(x, x) == s.scale(2)):
            bad_xx = x
        t = rng.randint(-5, 5)
        if bad_cubic is None and J.norm(x.scale(t)) != N * t ** 3:
            bad_cubic = (x, t)
    out.append(Check(f"{J.name}: (j#)# = N(j) j", bad_adj is None, bad_adj))
    out.append(Check(f"{J.name}: j o j# = N(j) I", bad_circ is None, bad_circ))
    out.append(Check(f"{J.name}: x x x = 2 x#", bad_xx is None, bad_xx))
    out.append(Check(f"{J.name}: N(t j) = t^3 N(j)", bad_cubic is None, bad_cubic))
    bad_sym = None
    for _ in range(max(1, samples // 2)):
        x, y, z = (J.random_element(rng) for _ in range(3))
        vals = {J.T(J.cross(p, q), r) for (p, q, r) in
                ((x, y, z), (y, x, z), (x, z, y), (z, x, y), (y, z, x), (z, y, x))}
        if len(vals) != 1:
            bad_sym = (x, y, z)
            break
    out.append(Check(f"{J.name}: T(x x y, z) totally symmetric", bad_sym is None, bad_sym))
    bad_der = None
    for _ in range(max(1, samples // 20)):
        x, y, u, v = (J.random_element(rng) for _ in range(4))
        D = inner_derivation(J, x, y)
        if not (D @ J.unit).is_zero() or not (D @ J.mul(u, v) == J.mul(D @ u, v) + J.mul(u, D @ v)):
            bad_der = (x, y, u, v)
            break
    out.append(Check(f"{J.name}: [L_x, L_y] are derivations", bad_der is None, bad_der))
    return out


def cross_identity_check(J, samples=1000, seed=0):
    """The literal identity j x j# = N(j) j; it does not hold (see README)."""
    rng = random.Random(seed)
    bad = None
    for _ in range(samples):
        x = J.random_element(rng)
        if not (J.cross(x, J.sharp(x)) == x.scale(J.norm(x))):
            bad = x
            break
    return Check(f"{J.name}: j x j# = N(j) j", bad is None, bad, expected_fail=True)


def display_checks(J):
    out = []
    d = J.diag(1, 2, 3)
    out.append(Check(f"{J.name}: diag(1,2,3)# = diag(6,3,2)", J.sharp(d) == J.diag(6, 3, 2)))
    out.append(Check(f"{J.name}: N(diag(1,2,3)) = 6", J.norm(d) == 6))
    out.append(Check(f"{J.name}: diag(1,2,3) o diag(4,5,6) = diag(4,10,18)",
                     J.mul(d, J.diag(4, 5, 6)) == J.diag(4, 10, 18)))
    out.append(Check(f"{J.name}: I x I = 2I and T(I, I) = 3",
                     J.cross(J.unit, J.unit) == J.unit.scale(2) and J.T(J.unit, J.unit) == 3))
    return out


def embedding_checks(Js, Jb, E, samples=100, seed=0):
    rng = random.Random(seed)
    M = embedding_matrix(Js, Jb, E)
    bad = None
    for _ in range(samples):
        x, y = Js.random_element(rng), Js.random_element(rng)
        mx, my = M @ x, M @ y
        if not (M @ Js.mul(x, y) == Jb.mul(mx, my)) or not (M @ Js.sharp(x) == Jb.sharp(mx)) \
                or Js.norm(x) != Jb.norm(mx) or Js.T(x, y) != Jb.T(mx, my):
            bad = (x, y)
            break
    return Check(f"{Js.name} -> {Jb.name}: preserves o, #, N, T", bad is None, bad)


def suite(field=QQ, samples=1000, seed=0):
    chain = composition.build_chain(field)
    Js = [JordanAlgebra(A) for A in chain.algebras]
    out = [Check("J dims (6, 9, 15, 27)", tuple(J.dim for J in Js) == (6, 9, 15, 27),
                 detail=[J.dim for J in Js])]
    for i, J in enumerate(Js):
        m = samples if J.dim == 27 else max(50, samples // 10)
        out += display_checks(J)
        out += jordan_checks(J, m, seed + i)
    names = ["k", "K", "B", "C"]
    for i in range(3):
        E = chain.embedding(names[i], names[i + 1])
        out.append(embedding_checks(Js[i], Js[i + 1], E, seed=seed))
    out.append(cross_identity_check(Js[3], samples, seed))
    return out

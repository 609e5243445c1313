"""Algebras with involution, the structurable identity, and the operator calculus.

Two families are built: tensor products H (x) H' of composition algebras and
the Freudenthal algebras F_J = k + J + J + k over the cubic Jordan algebras.
Operators are exact n x n matrices acting on coordinate columns.
"""
import random
from fractions import Fraction

import numpy as np

from .core.exact import FMat, concat, stack
from .core.field import QQ
from .core.linalg import Coordinatizer, NotInSpan, greedy_rows, greedy_stream, rank
from .core.report import Check
from .core.table import Algebra, perturbed
from . import composition, jordan


class StructurableError(ValueError):
    pass


class MembershipError(ValueError):
    pass


class StructurableAlgebra(Algebra):
    """An algebra with involution, split as A = A_o (skew) + A_+ (hermitian)."""

    def __init__(self, field, labels, consts, unit, involution, kind, parts=(), name=""):
        super().__init__(field, labels, consts, unit=unit, involution=involution, name=name)
        self.kind = kind
        self.parts = parts
        n = self.dim
        I = FMat.eye(field, n)
        half = Fraction(1, 2)
        # greedy bases of the images of the two projections, in basis order
        P_skew = (I - involution).scale(half).T
        P_herm = (I + involution).scale(half).T
        self.skew = P_skew[greedy_rows(P_skew)] if n else P_skew
        self.herm = P_herm[greedy_rows(P_herm)] if n else P_herm
        self._skew_coord = None
        self._instrl = None

    # -- element helpers
    @property
    def skew_dim(self):
        return self.skew.shape[0]

    def skew_coords(self, r):
        if self._skew_coord is None:
            self._skew_coord = Coordinatizer(self.skew)
        return self._skew_coord.coords(r)

    def is_skew(self, x):
        return (x + self.conj(x)).is_zero()

    def random_skew(self, rng, lo=-3, hi=3):
        c = [rng.randint(lo, hi) for _ in range(self.skew_dim)]
        return FMat.from_scalars(self.field, c) @ self.skew

    # -- ternary product and operators
    def triple(self, x, y, z):
        """{x, y, z} = (x y*) z + (z y*) x - (z x*) y."""
        m, c = self.mul, self.conj
        return m(m(x, c(y)), z) + m(m(z, c(y)), x) - m(m(z, c(x)), y)

    def V(self, x, y):
        xb, yb = self.conj(x), self.conj(y)
        return self.L(self.mul(x, yb)) + self.R(x) @ self.R(yb) - self.R(y) @ self.R(xb)

    def T(self, x):
        return self.V(x, self.one())

    def D(self, x, y):
        """The inner derivation D_{x,y}."""
        xb, yb = self.conj(x), self.conj(y)
        c = self.commutator(x, y) + self.commutator(xb, yb)
        third = Fraction(1, 3)
        return (self.L(c) - self.R(c)).scale(third) \
            + self.R(x) @ self.R(y) - self.R(self.mul(y, x)) \
            - self.R(yb) @ self.R(xb) + self.R(self.mul(xb, yb))

    def LL(self, r, s):
        if not (self.is_skew(r) and self.is_skew(s)):
            raise composition.PreconditionError("L_r L_s needs skew r and s")
        return self.L(r) @ self.L(s)

    def bracket_form(self, x, y):
        """<x, y> = x y* - y x*, a skew element."""
        return self.mul(x, self.conj(y)) - self.mul(y, self.conj(x))

    # -- batched forms used by the Lie constructions
    def L_batch(self, X):
        m, n = X.shape
        return (X @ self.mt).reshape(m, n, n).transpose(0, 2, 1)

    def R_batch(self, X):
        m, n = X.shape
        return (X @ self.mt_r).reshape(m, n, n).transpose(0, 2, 1)

    def conj_batch(self, X):
        return X @ self.involution.T

    def mul_batch(self, X, Y):
        m, n = X.shape
        return (self.L_batch(X) @ Y.reshape(m, n, 1)).reshape(m, n)

    def V_batch(self, X, Y):
        Xb, Yb = self.conj_batch(X), self.conj_batch(Y)
        return self.L_batch(self.mul_batch(X, Yb)) + self.R_batch(X) @ self.R_batch(Yb) \
            - self.R_batch(Y) @ self.R_batch(Xb)

    # -- Instrl
    def instrl(self):
        if self._instrl is None:
            self._instrl = Instrl(self)
        return self._instrl


class Instrl:
    """The span of the V_{x,y}: a greedy basis V_{b_i,b_j} in lexicographic pair order."""

    def __init__(self, A):
        self.A = A
        n = A.dim
        F = A.field
        E = FMat.eye(F, n)

        def chunks():
            for i in range(n):
                Xi = FMat(F, np.repeat(E.num[i:i + 1], n, axis=0))
                yield A.V_batch(Xi, E).reshape(n, n * n)

        sel, basis = greedy_stream(F, chunks)
        self.pairs = [divmod(s, n) for s in sel]
        self.flat = basis                      # (d, n*n)
        self.ops = basis.reshape(-1, n, n)     # (d, n, n)
        self.dim = len(sel)
        self._coord = Coordinatizer(basis) if self.dim else None

    def coords(self, X):
        """Coordinates of operators X (n x n or (m, n, n)); raises MembershipError."""
        n = self.A.dim
        single = X.ndim == 2
        flat = X.reshape(1 if single else X.shape[0], n * n)
        try:
            c = self._coord.coords(flat)
        except NotInSpan as e:
            raise MembershipError(f"operator {e} is not in Instrl") from None
        return c[0] if single else c

    def contains(self, X):
        try:
            self.coords(X)
            return True
        except MembershipError:
            return False

    def op(self, i):
        return self.ops[i]

    def closure_check(self):
        """[X_i, X_j] lies in the span for all basis pairs."""
        d = self.dim
        for i in range(d):
            Xi = self.ops[i]
            rest = self.ops[i + 1:] if i + 1 < d else None
            if rest is None:
                continue
            comm = Xi.reshape(1, *Xi.shape) @ rest - rest @ Xi.reshape(1, *Xi.shape)
            try:
                self.coords(comm)
            except MembershipError:
                return (i, None)
        return None


# ---------------------------------------------------------------- builders

def _kron_consts(H1, H2):
    a, b = H1.consts, H2.consts
    n1, n2 = H1.dim, H2.dim
    num = np.einsum("ikm,jln->ijklmn", a.num.astype(object) if a.num.dtype == object else a.num,
                    b.num.astype(object) if b.num.dtype == object else b.num)
    return FMat(H1.field, num.reshape(n1 * n2, n1 * n2, n1 * n2), a.den * b.den)


def _kron(M1, M2):
    num = np.kron(M1.num, M2.num)
    return FMat(M1.field, num, M1.den * M2.den)


def build_tensor(H1, H2):
    if H1.field != H2.field:
        raise composition.ConfigError("mixed fields")
    labels = [f"{a}*{b}" for a in H1.labels for b in H2.labels]
    consts = _kron_consts(H1, H2)
    unit = _kron(H1.unit.reshape(-1, 1), H2.unit.reshape(-1, 1)).reshape(-1)
    inv = _kron(H1.involution, H2.involution)
    return StructurableAlgebra(H1.field, labels, consts, unit, inv, "tensor", (H1, H2),
                               name=f"{H1.name}(x){H2.name}")


def tensor_embedding(E1, E2):
    """Matrix of H1 (x) H2 -> H1' (x) H2' from the two factor embeddings."""
    return _kron(E1, E2)


def _freudenthal_consts(J):
    """Structure constants of F_J with third component d1 j2' + a2 j1' + j1 x j2."""
    m = J.dim
    n = 2 + 2 * m
    Tg = J.gram
    Xc = J.cross_mt.reshape(m, m, m)
    den = Tg.den * Xc.den
    if Tg.num.dtype == object or Xc.num.dtype == object:
        raise NotImplementedError("integer tables expected")
    c = np.zeros((n, n, n), dtype=np.int64)
    a, d = 0, n - 1
    jj = slice(1, 1 + m)
    jp = slice(1 + m, 1 + 2 * m)
    T = Tg.num * Xc.den
    X = Xc.num * Tg.den
    one = den
    r = np.arange(m)
    c[a, a, a] = one
    c[jj, jp, a] = T                       # T(j1, j2')
    c[a, 1 + r, 1 + r] = one               # a1 j2
    c[1 + r, d, 1 + r] = one               # d2 j1
    c[jp, jp, jj] = X                      # j1' x j2'
    c[d, 1 + m + r, 1 + m + r] = one       # d1 j2'
    c[1 + m + r, a, 1 + m + r] = one       # a2 j1'
    c[jj, jj, jp] = X                      # j1 x j2
    c[jp, jj, d] = T.T                     # T(j2, j1')
    c[d, d, d] = one
    return FMat(J.field, c, den)


def _freudenthal_involution(J):
    m = J.dim
    n = 2 + 2 * m
    P = np.eye(n, dtype=np.int64)
    P[0, 0] = P[n - 1, n - 1] = 0
    P[0, n - 1] = P[n - 1, 0] = 1
    return FMat(J.field, P)


def _freudenthal_labels(J):
    return ["a"] + [f"j.{l}" for l in J.labels] + [f"j'.{l}" for l in J.labels] + ["d"]


class LiteralFreudenthal:
    """F_J with the third product component a2 j1' + a2 j2' + j1 x j2, read literally.

    This product is not bilinear (the a2 j2' term is quadratic in the second
    factor), so it is kept as a product function rather than a table.
    """
    kind = "freudenthal-literal"

    def __init__(self, J):
        self.J = J
        self.field = J.field
        self.dim = 2 + 2 * J.dim
        self.labels = _freudenthal_labels(J)
        self.involution = _freudenthal_involution(J)
        self.unit = FMat.from_scalars(J.field, [1] + [0] * (2 * J.dim) + [1])
        self.name = f"F_{J.C.name}[literal]"

    def _split(self, x):
        m = self.J.dim
        return x[0], x[1:1 + m], x[1 + m:1 + 2 * m], x[1 + 2 * m]

    def mul(self, x, y):
        J = self.J
        a1, j1, k1, d1 = self._split(x)
        a2, j2, k2, d2 = self._split(y)
        a = a1 * a2 + J.T(j1, k2)
        j = j2.scale(a1) + j1.scale(d2) + J.cross(k1, k2)
        k = k1.scale(a2) + k2.scale(a2) + J.cross(j1, j2)
        d = J.T(j2, k1) + d1 * d2
        F = self.field
        return concat([FMat.from_scalars(F, [a]), j, k, FMat.from_scalars(F, [d])])

    def conj(self, x):
        return self.involution @ x

    def one(self):
        return self.unit

    def random_element(self, rng, lo=-3, hi=3):
        return FMat(self.field, np.array([rng.randint(lo, hi) for _ in range(self.dim)], dtype=np.int64))

    def triple(self, x, y, z):
        m, c = self.mul, self.conj
        return m(m(x, c(y)), z) + m(m(z, c(y)), x) - m(m(z, c(x)), y)


def build_freudenthal(J, literal=False, validate=True, samples=10, seed=0):
    """The Freudenthal algebra F_J; the literal variant is rejected when validated."""
    if literal:
        F = LiteralFreudenthal(J)
    else:
        F = StructurableAlgebra(J.field, _freudenthal_labels(J), _freudenthal_consts(J),
                                FMat.from_scalars(J.field, [1] + [0] * (2 * J.dim) + [1]),
                                _freudenthal_involution(J), "freudenthal", (J,),
                                name=f"F_{J.C.name}")
    if validate:
        chk = check_structurable(F, samples, seed)
        if not chk.passed:
            raise StructurableError(f"{F.name} is not structurable; failing triple {chk.witness}")
    return F


def freudenthal_embedding(EJ):
    m2, m1 = EJ.shape
    F = EJ.field
    M = np.zeros((2 + 2 * m2, 2 + 2 * m1), dtype=object)
    M[...] = 0
    M[0, 0] = 1
    M[-1, -1] = 1
    e = EJ.tolist()
    for r in range(m2):
        for c in range(m1):
            M[1 + r, 1 + c] = e[r][c]
            M[1 + m2 + r, 1 + m1 + c] = e[r][c]
    return FMat.from_scalars(F, M.tolist())


# ---------------------------------------------------------------- checks

def _pointwise_identity(A, x, y, z):
    """[T_z, V_{x,y}] w = V_{T_z x, y} w - V_{x, T_zbar y} w, evaluated on all basis w."""
    one = A.one()
    zb = A.conj(z)
    Tz = lambda w: A.triple(z, one, w)
    Tzb = lambda w: A.triple(zb, one, w)
    Tzx, Tzby = Tz(x), Tzb(y)
    for k in range(A.dim):
        w = FMat.unit(A.field, A.dim, k)
        lhs = Tz(A.triple(x, y, w)) - A.triple(x, y, Tz(w))
        rhs = A.triple(Tzx, y, w) - A.triple(x, Tzby, w)
        if not (lhs == rhs):
            return False
    return True


def check_structurable(A, samples=500, seed=0):
    """The quartic identity [T_z, V_{x,y}] = V_{T_z x, y} - V_{x, T_zbar y} on random triples."""
    rng = random.Random(seed)
    name = f"{A.name}: structurable identity ({samples} samples)"
    for _ in range(samples):
        x, y, z = (A.random_element(rng) for _ in range(3))
        if isinstance(A, StructurableAlgebra):
            Tz = A.T(z)
            Vxy = A.V(x, y)
            ok = Tz @ Vxy - Vxy @ Tz == A.V(Tz @ x, y) - A.V(x, A.T(A.conj(z)) @ y)
        else:
            ok = _pointwise_identity(A, x, y, z)
        if not ok:
            return Check(name, False, witness={"x": x, "y": y, "z": z})
    return Check(name, True)


def literal_freudenthal_report(J, samples=20, seed=0):
    """Outcome of the literal third product component: bilinearity and the quartic identity."""
    F = LiteralFreudenthal(J)
    rng = random.Random(seed)
    out = []
    bad = None
    for _ in range(samples):
        x, y = F.random_element(rng), F.random_element(rng)
        if not (F.mul(x, y.scale(2)) == F.mul(x, y).scale(2)):
            bad = (x, y)
            break
    out.append(Check(f"{F.name}: product is bilinear", bad is None, bad, expected_fail=True))
    chk = check_structurable(F, samples, seed)
    chk.expected_fail = True
    out.append(chk)
    return out


def involution_checks(A):
    n = A.dim
    P = A.involution
    E = [A.basis(i) for i in range(n)]
    anti = all(A.conj(A.mul(E[i], E[j])) == A.mul(A.conj(E[j]), A.conj(E[i]))
               for i in range(n) for j in range(n))
    out = [Check(f"{A.name}: involution is an anti-automorphism", anti),
           Check(f"{A.name}: involution has order 2 and fixes 1",
                 P @ P == FMat.eye(A.field, n) and A.conj(A.unit) == A.unit)]
    split = A.skew_dim + A.herm.shape[0] == n and rank(concat([A.skew, A.herm])) == n
    out.append(Check(f"{A.name}: A = A_o + A_+", split, detail=[A.skew_dim, A.herm.shape[0]]))
    return out


def tensor_skew_check(A):
    """A_o = (H_o (x) 1) + (1 (x) H'_o) for a tensor product."""
    H1, H2 = A.parts
    s1 = composition_skew(H1)
    s2 = composition_skew(H2)
    gens = []
    for r in range(s1.shape[0]):
        gens.append(_kron(s1[r].reshape(-1, 1), H2.unit.reshape(-1, 1)).reshape(-1))
    for r in range(s2.shape[0]):
        gens.append(_kron(H1.unit.reshape(-1, 1), s2[r].reshape(-1, 1)).reshape(-1))
    ok = len(gens) == A.skew_dim
    if ok and gens:
        G = stack(gens)
        ok = rank(G) == A.skew_dim and Coordinatizer(A.skew).contains(G)
    return Check(f"{A.name}: A_o = H_o (x) 1 + 1 (x) H'_o", ok, detail=[s1.shape[0], s2.shape[0]])


def composition_skew(H):
    n = H.dim
    P = (FMat.eye(H.field, n) - H.involution).scale(Fraction(1, 2)).T
    sel = greedy_rows(P)
    return P[sel] if sel else FMat.zeros(H.field, (0, n))


def triple_checks(A, samples=500, seed=0):
    rng = random.Random(seed)
    one = A.one()
    out = []
    E = [A.basis(i) for i in range(A.dim)]
    out.append(Check(f"{A.name}: {{1,1,z}} = z", all(A.triple(one, one, e) == e for e in E)))
    out.append(Check(f"{A.name}: V_(1,1) = id", A.V(one, one) == FMat.eye(A.field, A.dim)))
    bad_t = bad_lin = None
    for _ in range(samples):
        x, z = A.random_element(rng), A.random_element(rng)
        Tx = A.L(x) + A.R(x - A.conj(x))
        if bad_t is None and not (A.triple(x, one, z) == Tx @ z):
            bad_t = (x, z)
    for _ in range(max(1, samples // 10)):
        x, y, z, w = (A.random_element(rng) for _ in range(4))
        t = rng.randint(-4, 4)
        lin = (A.triple(x + w.scale(t), y, z) == A.triple(x, y, z) + A.triple(w, y, z).scale(t)
               and A.triple(x, y + w.scale(t), z) == A.triple(x, y, z) + A.triple(x, w, z).scale(t)
               and A.triple(x, y, z + w.scale(t)) == A.triple(x, y, z) + A.triple(x, y, w).scale(t))
        if not lin:
            bad_lin = (x, y, z, w, t)
            break
    out.append(Check(f"{A.name}: {{x,1,z}} = (L_x + R_(x - x*)) z", bad_t is None, bad_t))
    out.append(Check(f"{A.name}: triple product trilinear", bad_lin is None, bad_lin))
    return out


def operator_relation_checks(A, samples=200, seed=0, ll=True, vtd=True):
    """Relations among V, T, D and L_r L_s.

    Each relation is reported twice: the literal reading, which fails, and
    the form that holds.
    """
    rng = random.Random(seed)
    out = []
    if ll and A.skew_dim:
        bad_lit = bad = None
        for _ in range(samples):
            r, s = A.random_skew(rng), A.random_skew(rng)
            LL = A.LL(r, s)
            rhs = A.T(A.mul(r, s)) - A.V(r, s)
            if bad_lit is None and not (LL == rhs):
                bad_lit = (r, s)
            if bad is None and not (LL.scale(2) == rhs):
                bad = (r, s)
        out.append(Check(f"{A.name}: L_r L_s = T_rs - V_(r,s) (literal)", bad_lit is None, bad_lit,
                         expected_fail=True))
        out.append(Check(f"{A.name}: 2 L_r L_s = T_rs - V_(r,s)", bad is None, bad))
    if vtd:
        bad_lit = bad = None
        c = A.conj
        for _ in range(samples):
            x, y = A.random_element(rng), A.random_element(rng)
            rest = A.mul(c(y), x) - A.mul(c(x), y) + A.mul(y, c(x))
            Dx = A.D(x, c(y))
            V = A.V(x, y)
            lit = A.T(A.mul(x, y).scale(2) + rest).scale(Fraction(1, 3)) + Dx
            fixed = A.T(A.mul(x, c(y)).scale(2) + rest).scale(Fraction(1, 3)) + Dx
            if bad_lit is None and not (V == lit):
                bad_lit = (x, y)
            if bad is None and not (V == fixed):
                bad = (x, y)
        out.append(Check(f"{A.name}: V_(x,y) = T_(2xy + y*x - x*y + yx*)/3 + D_(x,y*) (literal)",
                         bad_lit is None, bad_lit, expected_fail=True))
        out.append(Check(f"{A.name}: V_(x,y) = T_(2xy* + y*x - x*y + yx*)/3 + D_(x,y*)",
                         bad is None, bad))
    return out


def skew_form_checks(A, samples=200, seed=0):
    rng = random.Random(seed)
    n = A.dim
    E = [A.basis(i) for i in range(n)]
    ok = True
    for i in range(n):
        for j in range(i, n):
            f = A.bracket_form(E[i], E[j])
            if not A.is_skew(f) or not (f == -A.bracket_form(E[j], E[i])):
                ok = False
                break
        if not ok:
            break
    out = [Check(f"{A.name}: <x,y> skew-valued and alternating", ok)]
    bad = None
    for _ in range(samples if A.skew_dim else 0):
        r = A.random_skew(rng)
        x, y = A.random_element(rng), A.random_element(rng)
        a1 = A.associator(r, x, y)
        if not (a1 == A.associator(x, y, r) and a1 == -A.associator(x, r, y)):
            bad = (r, x, y)
            break
    out.append(Check(f"{A.name}: [r,x,y] = [x,y,r] = -[x,r,y] for skew r", bad is None, bad))
    bad = None
    for _ in range(max(1, samples // 10)):
        x, y, u, v = (A.random_element(rng) for _ in range(4))
        D = A.D(x, y)
        if not (D @ A.mul(u, v) == A.mul(D @ u, v) + A.mul(u, D @ v)) \
                or not (D @ A.conj(u) == A.conj(D @ u)):
            bad = (x, y, u, v)
            break
    out.append(Check(f"{A.name}: D_(x,y) is a derivation commuting with *", bad is None, bad))
    return out


# ---------------------------------------------------------------- epsilon, delta

def eps(A, X):
    """X^eps = X - T_(X(1) + X(1)*)."""
    x1 = X @ A.one()
    return X - A.T(x1 + A.conj(x1))


def delta(A, X):
    """X^delta = X + R_(X(1)*) as a matrix on A_o in the skew basis."""
    x1 = X @ A.one()
    Y = X + A.R(A.conj(x1))
    img = (Y @ A.skew.T).T          # rows: images of skew basis vectors
    try:
        return A.skew_coords(img).T
    except NotInSpan:
        raise MembershipError("X^delta does not preserve A_o") from None


def eps_delta(A, X):
    A.instrl().coords(X)
    return eps(A, X), delta(A, X)


def eps_delta_checks(A, samples=200, seed=0):
    rng = random.Random(seed)
    I = A.instrl()
    n = A.dim
    out = []
    idn = FMat.eye(A.field, n)
    out.append(Check(f"{A.name}: id^eps = -id", eps(A, idn) == -idn))
    out.append(Check(f"{A.name}: id^delta = 2 id on A_o",
                     delta(A, idn) == FMat.eye(A.field, A.skew_dim).scale(2)))

    def rand_op():
        c = FMat.from_scalars(A.field, [rng.randint(-2, 2) for _ in range(I.dim)])
        return (c.reshape(1, -1) @ I.flat).reshape(n, n)

    bad_in = bad_inv = bad_hom = bad_del = None
    for _ in range(samples):
        X, Y = rand_op(), rand_op()
        Xe, Ye = eps(A, X), eps(A, Y)
        if bad_in is None and not I.contains(Xe):
            bad_in = X
        if bad_inv is None and not (eps(A, Xe) == X):
            bad_inv = X
        XY = X @ Y - Y @ X
        if bad_hom is None and not (eps(A, XY) == Xe @ Ye - Ye @ Xe):
            bad_hom = (X, Y)
        dX, dY = delta(A, X), delta(A, Y)
        if bad_del is None and not (delta(A, XY) == dX @ dY - dY @ dX):
            bad_del = (X, Y)
    out.append(Check(f"{A.name}: X^eps in Instrl", bad_in is None, bad_in))
    out.append(Check(f"{A.name}: eps is an involution", bad_inv is None, bad_inv))
    out.append(Check(f"{A.name}: [X,Y]^eps = [X^eps, Y^eps]", bad_hom is None, bad_hom))
    out.append(Check(f"{A.name}: [X,Y]^delta = [X^delta, Y^delta] on A_o", bad_del is None, bad_del))
    return out


def negative_control(A, samples=50, seed=0):
    """Perturb one structure constant; the structurable identity must then fail."""
    rng = random.Random(seed)
    n = A.dim
    i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
    P = perturbed(A, i, j, k)
    B = StructurableAlgebra(A.field, A.labels, P.consts, A.unit, A.involution, A.kind,
                            name=A.name + "~")
    chk = check_structurable(B, samples, seed)
    return Check(f"{A.name}: perturbed c_({i},{j},{k}) fails the structurable identity",
                 not chk.passed, chk.witness)


# ---------------------------------------------------------------- families

TENSOR_NAMES = [("k", "B"), ("k", "C"), ("K", "C"), ("B", "C"), ("C", "C")]
FREUDENTHAL_NAMES = ["k", "K", "B", "C"]


def tensor_chain(field=QQ, chain=None):
    chain = chain or composition.build_chain(field)
    alg = {A.name: A for A in chain.algebras}
    return chain, [build_tensor(alg[a], alg[b]) for a, b in TENSOR_NAMES]


def freudenthal_chain(field=QQ, chain=None, validate=False):
    chain = chain or composition.build_chain(field)
    Js = [jordan.JordanAlgebra(A) for A in chain.algebras]
    return chain, Js, [build_freudenthal(J, validate=validate) for J in Js]


def report(A):
    return {"kind": A.kind, "name": A.name, "dim": A.dim, "skew_dim": A.skew_dim,
            "instrl_dim": A.instrl().dim}


def suite(field=QQ, samples=500, seed=0):
    chain, tens = tensor_chain(field)
    _, Js, freus = freudenthal_chain(field, chain)
    out = []
    out.append(Check("tensor dims (4, 8, 16, 32, 64)",
                     tuple(A.dim for A in tens) == (4, 8, 16, 32, 64), detail=[A.dim for A in tens]))
    out.append(Check("tensor skew dims (3, 7, 8, 10, 14)",
                     tuple(A.skew_dim for A in tens) == (3, 7, 8, 10, 14),
                     detail=[A.skew_dim for A in tens]))
    out.append(Check("Freudenthal dims (14, 20, 32, 56)",
                     tuple(A.dim for A in freus) == (14, 20, 32, 56), detail=[A.dim for A in freus]))
    out.append(Check("Freudenthal skew dims all 1", all(A.skew_dim == 1 for A in freus)))
    Fk = freus[0]
    diag = FMat.from_scalars(field, [1] + [0] * (Fk.dim - 2) + [-1])
    out.append(Check("F_k: A_o spanned by diag(1,-1)", Coordinatizer(Fk.skew).contains(diag)))
    e11 = FMat.unit(field, Fk.dim, 0)
    e22 = FMat.unit(field, Fk.dim, Fk.dim - 1)
    out.append(Check("F_k: e11 e22 = 0", Fk.mul(e11, e22).is_zero()))
    for A in tens + freus:
        out += involution_checks(A)
    for A in tens:
        out.append(tensor_skew_check(A))
    full = {"B(x)C", "C(x)C", "F_k", "F_C"}
    for t, A in enumerate(tens + freus):
        m = samples if A.name in full else max(20, samples // 10)
        out.append(check_structurable(A, m, seed + t))
    out += literal_freudenthal_report(Js[-1], samples=5, seed=seed)
    BC, CC, FC = tens[3], tens[4], freus[3]
    out += triple_checks(BC, samples, seed)
    out += operator_relation_checks(CC, max(20, samples * 2 // 5), seed, vtd=False)
    out += operator_relation_checks(FC, max(20, samples * 2 // 5), seed, ll=False)
    out += skew_form_checks(BC, samples // 2, seed)
    out += skew_form_checks(FC, samples // 5, seed)
    want_t = (7, 22, 30, 49, 92)
    want_f = (22, 36, 67, 134)
    got_t = tuple(A.instrl().dim for A in tens)
    got_f = tuple(A.instrl().dim for A in freus)
    out.append(Check("Instrl dims over the tensor chain (7, 22, 30, 49, 92)", got_t == want_t, detail=got_t))
    out.append(Check("Instrl dims over the Freudenthal chain (22, 36, 67, 134)", got_f == want_f,
                     detail=got_f))
    for A in tens + freus:
        bad = A.instrl().closure_check()
        out.append(Check(f"{A.name}: Instrl closed under commutator", bad is None, bad))
    out += eps_delta_checks(BC, max(20, samples * 2 // 5), seed)
    out += eps_delta_checks(FC, max(10, samples // 25), seed)
    out.append(negative_control(BC, seed=seed))
    return out

"""The split composition algebras k, K = k+k, B = M_2(k) and the split octonions C.

C is modelled by Zorn vector matrices (a, v; w, b) with a, b scalars and
v, w in k^3.  Coordinates: e0 = a, e1..e3 = v, e4..e6 = w, e7 = b.  The unit
is e0 + e7.
"""
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core.exact import FMat, stack
from .core.field import QQ, ConfigError
from .core.linalg import rank
from .core.report import Check
from .core.table import Algebra, Elt, consts_from_products, perturbed

CElt = Elt


class PreconditionError(ValueError):
    pass


class CompositionAlgebra(Algebra):
    """Algebra with a quadratic norm N(x) = x^T Q x (Q upper triangular)."""

    def __init__(self, field, labels, consts, unit, quad, name):
        super().__init__(field, labels, consts, unit=unit, name=name)
        self.quad = quad
        self.gram = quad + quad.T  # N(x, y) = x^T G y
        one_form = self.gram @ unit
        n = self.dim
        # conj(x) = N(x, 1) 1 - x
        self.involution = unit.reshape(n, 1) @ one_form.reshape(1, n) - FMat.eye(field, n)

    def norm(self, x):
        return _dot(x, self.quad @ x)

    def bilin(self, x, y):
        return _dot(x, self.gram @ y)

    def trace(self, x):
        return self.bilin(x, self.unit)


def _dot(x, y):
    return (x.reshape(1, -1) @ y.reshape(-1, 1))[0, 0]


def _cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def zorn_product(x, y):
    a1, v1, w1, b1 = x[0], x[1:4], x[4:7], x[7]
    a2, v2, w2, b2 = y[0], y[1:4], y[4:7], y[7]
    dot = lambda p, q: sum(s * t for s, t in zip(p, q))
    a = a1 * a2 + dot(v1, w2)
    v = [a1 * s + b2 * t - c for s, t, c in zip(v2, v1, _cross(w1, w2))]
    w = [a2 * s + b1 * t + c for s, t, c in zip(w1, w2, _cross(v1, v2))]
    b = b1 * b2 + dot(w1, v2)
    return [a] + v + w + [b]


def _check_field(field):
    if field.p in (2, 3):
        raise ConfigError("characteristic 2 or 3 is not supported")


def build_k(field=QQ):
    _check_field(field)
    c = FMat.from_scalars(field, [[[1]]])
    q = FMat.from_scalars(field, [[1]])
    return CompositionAlgebra(field, ["1"], c, FMat.from_scalars(field, [1]), q, "k")


def build_K(field=QQ):
    _check_field(field)
    prod = lambda x, y: [x[0] * y[0], x[1] * y[1]]
    c = consts_from_products(field, 2, prod)
    q = FMat.from_scalars(field, [[0, 1], [0, 0]])  # N = x0 x1
    return CompositionAlgebra(field, ["k0", "k1"], c, FMat.from_scalars(field, [1, 1]), q, "K")


def build_B(field=QQ):
    _check_field(field)

    def prod(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h]

    c = consts_from_products(field, 4, prod)
    # N = det = a d - b c
    q = FMat.from_scalars(field, [[0, 0, 0, 1], [0, 0, -1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    return CompositionAlgebra(field, ["E11", "E12", "E21", "E22"], c,
                              FMat.from_scalars(field, [1, 0, 0, 1]), q, "B")


def build_C(field=QQ):
    _check_field(field)
    c = consts_from_products(field, 8, zorn_product)
    q = np.zeros((8, 8), dtype=np.int64)
    q[0, 7] = 1  # a b
    for i in range(3):
        q[1 + i, 4 + i] = -1  # - v.w
    unit = FMat.from_scalars(field, [1, 0, 0, 0, 0, 0, 0, 1])
    return CompositionAlgebra(field, [f"e{i}" for i in range(8)], c, unit, FMat(field, q), "C")


@dataclass
class Chain:
    k: CompositionAlgebra
    K: CompositionAlgebra
    B: CompositionAlgebra
    C: CompositionAlgebra
    embeddings: dict

    @property
    def algebras(self):
        return [self.k, self.K, self.B, self.C]

    def embedding(self, small, big):
        """Matrix of the chain inclusion small -> big (composite if needed)."""
        names = ["k", "K", "B", "C"]
        i, j = names.index(small), names.index(big)
        if i > j:
            raise ValueError("no embedding in that direction")
        M = FMat.eye(self.k.field, self.algebras[i].dim)
        for t in range(i, j):
            M = self.embeddings[(names[t], names[t + 1])] @ M
        return M


def build_chain(field=QQ):
    """k in K in B in C with the fixed chain embeddings."""
    k, K, B, C = build_k(field), build_K(field), build_B(field), build_C(field)
    emb = {
        ("k", "K"): FMat.from_scalars(field, [[1], [1]]),
        ("K", "B"): FMat.from_scalars(field, [[1, 0], [0, 0], [0, 0], [0, 1]]),
        # [[a, b], [c, d]] -> (a, b u1; c u1, d)
        ("B", "C"): FMat.from_scalars(field, [
            [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0],
            [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]),
    }
    return Chain(k, K, B, C, emb)


# ---------------------------------------------------------------- operations

def cmul(x, y):
    if x.alg is not y.alg:
        raise ConfigError("product of elements of different algebras needs an embedding")
    return x * y


def conj_norm_trace(x):
    A = x.alg
    xb = Elt(A, A.conj(x.v))
    bilin = lambda y: A.bilin(x.v, y.v if isinstance(y, Elt) else y)
    return xb, A.norm(x.v), A.trace(x.v), bilin


def nonassoc(x, y, z):
    A = x.alg
    comm = Elt(A, A.commutator(x.v, y.v))
    assoc = Elt(A, A.associator(x.v, y.v, z.v))
    tr = A.trace(A.mul(A.mul(x.v, y.v), z.v))
    return comm, assoc, tr


def is_scalar_multiple(u, v):
    """True when u is a scalar multiple of v (v != 0)."""
    return rank(stack([u, v])) <= 1


def nilspace_audit(vectors):
    """Nil-space test for a span of trace-zero octonions.

    For two isotropic vectors with nonzero product it also records gamma =
    alpha beta, gamma^2 and beta alpha + alpha beta; for three it records the
    associator [alpha, beta, gamma] and whether all sampled associators lie on
    its line.
    """
    vectors = list(vectors)
    if not vectors:
        return {"is_nil": True, "checks": []}
    A = vectors[0].alg
    for v in vectors:
        if A.trace(v.v) != 0:
            raise PreconditionError("nilspace_audit needs trace-zero vectors")
    prods = [[A.mul(a.v, b.v) for b in vectors] for a in vectors]
    is_nil = all(p.is_zero() for row in prods for p in row)
    out = {"is_nil": is_nil, "checks": []}
    checks = out["checks"]
    if len(vectors) >= 2:
        a, b = vectors[0], vectors[1]
        g = A.mul(a.v, b.v)
        out["gamma"] = Elt(A, g)
        out["gamma_sq"] = Elt(A, A.mul(g, g))
        checks.append(Check("gamma^2 = 0", A.mul(g, g).is_zero()))
        checks.append(Check("beta alpha = -alpha beta", (A.mul(b.v, a.v) + g).is_zero()))
    if len(vectors) >= 3:
        a, b, c = vectors[:3]
        line = A.associator(a.v, b.v, c.v)
        out["associator_line"] = Elt(A, line)
        ok = True
        witness = None
        span = vectors[:3]
        rng = random.Random(0)
        triples = [(x, y, z) for x in span for y in span for z in span]
        for _ in range(20):
            combo = [sum((rng.randint(-3, 3) * w for w in span), Elt(A, A.zero())) for _ in range(3)]
            triples.append(tuple(combo))
        for (x, y, z) in triples:
            asc = A.associator(x.v, y.v, z.v)
            if asc.is_zero():
                continue
            if line.is_zero() or not is_scalar_multiple(asc, line):
                ok, witness = False, (x, y, z)
                break
        checks.append(Check("[V,V,V] on the line of [alpha,beta,gamma]", ok, witness))
    return out


# ---------------------------------------------------------------- sampling

def random_trace_zero(C, rng, lo=-4, hi=4):
    x = [rng.randint(lo, hi) for _ in range(8)]
    x[7] = -x[0]
    return Elt(C, x)


def _solve_w(C, rng, a, v, conditions):
    """Solve for the w-part given a, v so that the linear conditions hold.

    Each condition is an element y demanding N(x, y) = 0, except the string
    'iso' which demands N(x) = 0 (linear in w once a, v are fixed).
    """
    F = C.field
    rows, rhs = [], []
    for cond in conditions:
        if cond == "iso":
            # N(x) = -a^2 - v.w
            rows.append([-v[0], -v[1], -v[2]])
            rhs.append(F(a) * a)
        else:
            y = cond.coords()
            # N(x, y) = a y7 + b y0 - v.yw - w.yv  with b = -a
            rows.append([-y[1], -y[2], -y[3]])
            rhs.append(-(a * y[7] - a * y[0] - sum(vi * yi for vi, yi in zip(v, y[4:7]))))
    # pick the last free w coordinates from rng, solve for the first len(rows)
    k = len(rows)
    free = [F(rng.randint(-4, 4)) for _ in range(3 - k)]
    M = [[F(r[j]) for j in range(k)] for r in rows]
    b = [F(rhs[i]) - sum(F(rows[i][k + t]) * free[t] for t in range(3 - k)) for i in range(k)]
    sol = _solve_small(M, b)
    if sol is None:
        return None
    w = sol + free
    return Elt(C, [a] + list(v) + w + [-a])


def _solve_small(M, b):
    n = len(M)
    A = [list(M[i]) + [b[i]] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [A[i][n] for i in range(n)]


def random_isotropic_pair(C, rng, tries=200):
    """Trace-zero alpha, beta with alpha^2 = beta^2 = (alpha+beta)^2 = 0, alpha beta != 0."""
    for _ in range(tries):
        a = rng.randint(-4, 4)
        v = [rng.randint(-4, 4) for _ in range(3)]
        alpha = _solve_w(C, rng, a, v, ["iso"])
        if alpha is None:
            continue
        a2 = rng.randint(-4, 4)
        v2 = [rng.randint(-4, 4) for _ in range(3)]
        beta = _solve_w(C, rng, a2, v2, ["iso", alpha])
        if beta is None:
            continue
        if not C.mul(alpha.v, beta.v).is_zero():
            return alpha, beta
    raise RuntimeError("could not sample an isotropic pair")


def random_isotropic_triple(C, rng, tries=200):
    """Totally isotropic trace-zero alpha, beta, gamma with gamma outside span(alpha, beta, alpha beta).

    Inside that span the subalgebra generated by alpha and beta is associative,
    so the associator would vanish.
    """
    for _ in range(tries):
        alpha, beta = random_isotropic_pair(C, rng)
        a3 = rng.randint(-4, 4)
        v3 = [rng.randint(-4, 4) for _ in range(3)]
        gamma = _solve_w(C, rng, a3, v3, ["iso", alpha, beta])
        if gamma is None:
            continue
        ab = C.mul(alpha.v, beta.v)
        if rank(stack([alpha.v, beta.v, ab, gamma.v])) == 4:
            return alpha, beta, gamma
    raise RuntimeError("could not sample an isotropic triple")


# ---------------------------------------------------------------- suites

def _basis_pairs(A):
    return [(A.basis(i), A.basis(j)) for i in range(A.dim) for j in range(A.dim)]


def norm_multiplicative_checks(A, samples, rng):
    fails = None
    for x, y in _basis_pairs(A):
        if A.norm(A.mul(x, y)) != A.norm(x) * A.norm(y):
            fails = (x, y)
            break
    if fails is None:
        for _ in range(samples):
            x, y = A.random_element(rng), A.random_element(rng)
            if A.norm(A.mul(x, y)) != A.norm(x) * A.norm(y):
                fails = (x, y)
                break
    return Check(f"{A.name}: N(xy) = N(x)N(y)", fails is None, fails)


def composition_checks(A, samples=1000, seed=0):
    """Composition-law identities: exhaustive on basis pairs plus random samples."""
    rng = random.Random(seed)
    out = [norm_multiplicative_checks(A, samples, rng)]
    n = A.dim
    one = A.unit
    out.append(Check(f"{A.name}: unit", all(
        (A.mul(one, A.basis(i)) == A.basis(i)) and (A.mul(A.basis(i), one) == A.basis(i))
        for i in range(n))))
    out.append(Check(f"{A.name}: N nondegenerate", rank(A.gram) == n))
    # alternative laws on basis pairs and samples
    bad = None
    pairs = _basis_pairs(A) + [(A.random_element(rng), A.random_element(rng)) for _ in range(samples)]
    for x, y in pairs:
        xx = A.mul(x, x)
        if not (A.mul(xx, y) == A.mul(x, A.mul(x, y))) or not (A.mul(A.mul(y, x), x) == A.mul(y, xx)):
            bad = (x, y)
            break
    out.append(Check(f"{A.name}: alternative laws", bad is None, bad))
    # conj anti-automorphism, exhaustive
    bad = None
    for x, y in _basis_pairs(A):
        if not (A.conj(A.mul(x, y)) == A.mul(A.conj(y), A.conj(x))):
            bad = (x, y)
            break
    out.append(Check(f"{A.name}: conj(xy) = conj(y)conj(x)", bad is None, bad))
    out.append(Check(f"{A.name}: conj is an involution", A.involution @ A.involution == FMat.eye(A.field, n)))
    # N(x) = x conj(x), Tr(x) = x + conj(x)
    bad = None
    for _ in range(samples // 4 + n):
        x = A.random_element(rng)
        if not (A.mul(x, A.conj(x)) == one.scale(A.norm(x))) or not (x + A.conj(x) == one.scale(A.trace(x))):
            bad = x
            break
    out.append(Check(f"{A.name}: N(x) = x conj(x), Tr(x) = x + conj(x)", bad is None, bad))
    # Moufang and trace associativity
    bad_m = bad_t = None
    for _ in range(samples):
        x, y, z = (A.random_element(rng) for _ in range(3))
        lhs = A.mul(A.mul(x, y), A.mul(z, x))
        rhs = A.mul(A.mul(x, A.mul(y, z)), x)
        if bad_m is None and not (lhs == rhs):
            bad_m = (x, y, z)
        if bad_t is None and A.trace(A.mul(A.mul(x, y), z)) != A.trace(A.mul(x, A.mul(y, z))):
            bad_t = (x, y, z)
    out.append(Check(f"{A.name}: Moufang (xy)(zx) = (x(yz))x", bad_m is None, bad_m))
    out.append(Check(f"{A.name}: Tr((xy)z) = Tr(x(yz))", bad_t is None, bad_t))
    return out


def embedding_checks(chain, small, big):
    S = getattr(chain, small)
    Bg = getattr(chain, big)
    E = chain.embedding(small, big)
    name = f"{small} -> {big}"
    out = []
    hom = all(E @ S.mul(S.basis(i), S.basis(j)) == Bg.mul(E @ S.basis(i), E @ S.basis(j))
              for i in range(S.dim) for j in range(S.dim))
    out.append(Check(f"{name}: homomorphism", hom))
    out.append(Check(f"{name}: injective", rank(E) == S.dim))
    out.append(Check(f"{name}: unit", E @ S.unit == Bg.unit))
    out.append(Check(f"{name}: commutes with conj", E @ S.involution == Bg.involution @ E))
    out.append(Check(f"{name}: preserves N", all(
        Bg.norm(E @ S.basis(i)) == S.norm(S.basis(i)) and
        all(Bg.bilin(E @ S.basis(i), E @ S.basis(j)) == S.bilin(S.basis(i), S.basis(j)) for j in range(S.dim))
        for i in range(S.dim))))
    out.append(Check(f"{name}: preserves Tr", all(
        Bg.trace(E @ S.basis(i)) == S.trace(S.basis(i)) for i in range(S.dim))))
    return out


def negative_control(C, samples=200, seed=0):
    """Norm multiplicativity must fail once a structure constant is perturbed."""
    consts = perturbed(C, 1, 4, 0, 1).consts
    bad = CompositionAlgebra(C.field, C.labels, consts, C.unit, C.quad, "C~")
    chk = norm_multiplicative_checks(bad, samples, random.Random(seed))
    return Check("C perturbed: norm multiplicativity fails", not chk.passed, chk.witness)


def nilspace_checks(C, samples=50, seed=0):
    rng = random.Random(seed)
    out = []
    ok = True
    witness = None
    for _ in range(samples):
        a, b = random_isotropic_pair(C, rng)
        rep = nilspace_audit([a, b])
        if not all(c.passed for c in rep["checks"]):
            ok, witness = False, (a, b)
            break
    out.append(Check("isotropic pair: gamma^2 = 0 and beta alpha = -alpha beta", ok, witness))
    ok = True
    witness = None
    for _ in range(max(1, samples // 5)):
        a, b, c = random_isotropic_triple(C, rng)
        rep = nilspace_audit([a, b, c])
        if rep["associator_line"].is_zero() or not all(ch.passed for ch in rep["checks"]):
            ok, witness = False, (a, b, c)
            break
    out.append(Check("isotropic triple: [V,V,V] on the associator line", ok, witness))
    z = nilspace_audit([Elt(C, C.zero())])
    out.append(Check("zero space is nil", z["is_nil"]))
    return out


def suite(field=QQ, samples=1000, seed=0):
    chain = build_chain(field)
    out = []
    dims = tuple(A.dim for A in chain.algebras)
    out.append(Check("chain dims (1, 2, 4, 8)", dims == (1, 2, 4, 8), detail=dims))
    for i, A in enumerate(chain.algebras):
        out += composition_checks(A, samples if A.dim == 8 else max(50, samples // 10), seed + i)
    for s, b in (("k", "K"), ("K", "B"), ("B", "C"), ("k", "C")):
        out += embedding_checks(chain, s, b)
    out.append(negative_control(chain.C, seed=seed))
    out += nilspace_checks(chain.C, seed=seed)
    return out

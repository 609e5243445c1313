"""Symplectic similitudes of a six-dimensional space and the Shalika subgroup.

Matrices are 6x6 FMat split into 2x2 blocks.  J3 is the antidiagonal block
matrix with J = [[0, -1], [1, 0]] in each antidiagonal slot.  The Shalika
subgroup S consists of Delta(g) u(X, Z) with Delta(g) = diag(g, g, g) and

    u(X, Z) = [[I, X, Z], [0, I, Y], [0, 0, I]],   Y = J X^T J,

subject to Z J + J Z^T = -X J X^T.  Character values are modelled by their
arguments: arg(Delta(g) u(X, Z)) = -Tr(X).
"""
import random
from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .core.exact import FMat
from .core.field import parse_field
from .core.linalg import inverse, nullspace
from .core.report import Check

QQ = parse_field("q")


class NotInGSp6(ValueError):
    pass


class NotInShalika(ValueError):
    pass


class DecompositionError(ValueError):
    pass


class SamplingError(RuntimeError):
    pass


class DualRingError(ArithmeticError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class CosetEnumerationError(RuntimeError):
    pass


# ---------------------------------------------------------------- 2x2 helpers

def m2(F, a, b, c, d):
    return FMat.from_scalars(F, [[a, b], [c, d]])


def det2(m):
    a, b, c, d = m.scalars()
    return a * d - b * c


def adj2(m):
    a, b, c, d = m.scalars()
    return m2(m.field, d, -b, -c, a)


def inv2(m):
    d = det2(m)
    if d == 0:
        raise ZeroDivisionError("singular 2x2 matrix")
    return adj2(m).scale(1 / d)


def tr2(m):
    a, _, _, d = m.scalars()
    return a + d


def eye2(F):
    return FMat.eye(F, 2)


def jmat(F):
    return m2(F, 0, -1, 1, 0)


def block(F, grid):
    """6x6 FMat from a 3x3 grid of 2x2 FMat (None for zero)."""
    rows = [[F(0)] * 6 for _ in range(6)]
    for i in range(3):
        for j in range(3):
            b = grid[i][j]
            if b is None:
                continue
            s = b.scalars()
            for r in range(2):
                for c in range(2):
                    rows[2 * i + r][2 * j + c] = s[2 * r + c]
    return FMat.from_scalars(F, rows)


def blk(m, i, j):
    return m[2 * i:2 * i + 2, 2 * j:2 * j + 2]


def j3(F):
    J = jmat(F)
    return block(F, [[None, None, J], [None, J, None], [J, None, None]])


# ---------------------------------------------------------------- similitudes

def similitude(m):
    """lambda with m J3 m^T = lambda J3."""
    if isinstance(m, SimMatrix):
        m = m.m
    F = m.field
    J = j3(F)
    P = m @ J @ m.T
    lam = -P[0, 5]          # J3[0, 5] = -1
    if lam == 0 or not (P == J.scale(lam)):
        raise NotInGSp6("m J3 m^T is not a nonzero multiple of J3")
    return lam


class SimMatrix:
    """An element of GSp6 with its similitude factor cached."""
    __slots__ = ("m", "_sim")

    def __init__(self, m, sim=None, check=True):
        if m.shape != (6, 6):
            raise ValueError("expected a 6x6 matrix")
        self.m = m
        self._sim = sim
        if check and sim is None:
            self._sim = similitude(m)

    @property
    def field(self):
        return self.m.field

    @property
    def sim(self):
        if self._sim is None:
            self._sim = similitude(self.m)
        return self._sim

    def __matmul__(self, o):
        return SimMatrix(self.m @ o.m, self.sim * o.sim, check=False)

    @property
    def T(self):
        return SimMatrix(self.m.T, self.sim, check=False)

    def inv(self):
        return SimMatrix(inverse(self.m), 1 / self.sim, check=False)

    def __eq__(self, o):
        return isinstance(o, SimMatrix) and self.m == o.m

    def __hash__(self):
        return hash(tuple(self.m.to_strs()))

    def block(self, i, j):
        return blk(self.m, i, j)

    def __repr__(self):
        return f"SimMatrix(sim={self._sim}, {self.m.to_strs()})"


def delta(g):
    return SimMatrix(block(g.field, [[g, None, None], [None, g, None], [None, None, g]]), det2(g),
                     check=False)


def eta(h):
    F = h.field
    d = det2(h)
    return SimMatrix(block(F, [[eye2(F), None, None], [None, h, None], [None, None, eye2(F).scale(d)]]),
                     d, check=False)


def eta_prime(v):
    """Delta(v) eta(v)^{-1} = diag(v, I, v / det v)."""
    return delta(v) @ eta(inv2(v))


def levi(g, h):
    """The element of L3 acting on U3/Z3 by X -> g X h^{-1}."""
    F = g.field
    c = det2(inv2(g) @ h)
    m = block(F, [[g, None, None], [None, h, None], [None, None, g.scale(c)]])
    return SimMatrix(m, det2(g) * c, check=False)


def factor_levi(l):
    """(p, q) with l = Delta(p) eta(q) for l in L3."""
    m = l.m if isinstance(l, SimMatrix) else l
    for i in range(3):
        for j in range(3):
            if i != j and not blk(m, i, j).is_zero():
                raise DecompositionError("not block diagonal")
    A, B, C = blk(m, 0, 0), blk(m, 1, 1), blk(m, 2, 2)
    if det2(A) == 0:
        raise DecompositionError("singular diagonal block")
    q = inv2(A) @ B
    if not (C == A.scale(det2(q))):
        raise DecompositionError("third block is not det(q) times the first")
    return A, q


def embed_delta_eta(g, h):
    """Delta(g), eta(h) and the factorization of their product."""
    D, E = delta(g), eta(h)
    p, q = factor_levi(D @ E)
    return D, E, (p, q)


# ---------------------------------------------------------------- U3 and S

def _u3_constraint(X, Z):
    J = jmat(X.field)
    return Z @ J + J @ Z.T + X @ J @ X.T


def y_of(X):
    J = jmat(X.field)
    return J @ X.T @ J


def u3(X, Z=None):
    """u(X, Z); Z defaults to -det(X)/2 I, the trace-free-part-zero solution."""
    F = X.field
    if Z is None:
        Z = eye2(F).scale(-det2(X) / 2)
    if not _u3_constraint(X, Z).is_zero():
        raise NotInShalika("Z J + J Z^T != -X J X^T")
    I = eye2(F)
    m = block(F, [[I, X, Z], [None, I, y_of(X)], [None, None, I]])
    return SimMatrix(m, F(1), check=False)


def _linear_parts(fn, n, F):
    """fn affine in n scalars: value at 0 and the n linear columns."""
    zero = [F(0)] * n
    c0 = fn(zero)
    cols = []
    for i in range(n):
        e = list(zero)
        e[i] = F(1)
        cols.append([a - b for a, b in zip(fn(e), c0)])
    return c0, cols


def affine_solve(F, c0, cols):
    """(particular theta or None, homogeneous basis) for c0 + sum theta_i cols_i = 0."""
    n = len(cols)
    A = FMat.from_scalars(F, [[col[k] for col in cols] + [c0[k]] for k in range(len(c0))])
    ker = nullspace(A)
    hom = FMat.from_scalars(F, [[col[k] for col in cols] for k in range(len(c0))])
    basis = nullspace(hom)
    for v in ker:
        t = v[n]
        if t != 0:
            return [v[i] / t for i in range(n)], basis
    return None, basis


def z_solutions(X):
    """(Z0, basis) with {Z : u(X, Z) in U3} = Z0 + span(basis)."""
    F = X.field

    def fn(z):
        return _u3_constraint(X, m2(F, *z)).scalars()

    c0, cols = _linear_parts(fn, 4, F)
    theta, basis = affine_solve(F, c0, cols)
    if theta is None:
        raise NotInShalika("no Z solves the constraint")
    return m2(F, *theta), [b.reshape(2, 2) for b in basis]


class ShalikaElement:
    """Delta(g) u(X, Z) with its argument -Tr(X) cached."""

    def __init__(self, g, X, Z=None):
        if det2(g) == 0:
            raise NotInShalika("g is singular")
        self.g = g
        self.X = X
        self.matrix = delta(g) @ u3(X, Z)
        self.Z = blk(delta(inv2(g)).m @ self.matrix.m, 0, 2)
        self.arg = -tr2(X)

    @property
    def field(self):
        return self.g.field

    @classmethod
    def from_matrix(cls, m):
        m = m.m if isinstance(m, SimMatrix) else m
        for i, j in ((1, 0), (2, 0), (2, 1)):
            if not blk(m, i, j).is_zero():
                raise NotInShalika("not block upper triangular")
        g = blk(m, 0, 0)
        if not (blk(m, 1, 1) == g and blk(m, 2, 2) == g):
            raise NotInShalika("diagonal blocks differ")
        if det2(g) == 0:
            raise NotInShalika("singular diagonal block")
        u = inv2(g)
        X, Y, Z = u @ blk(m, 0, 1), u @ blk(m, 1, 2), u @ blk(m, 0, 2)
        if not (Y == y_of(X)):
            raise NotInShalika("X J + J Y^T != 0")
        return cls(g, X, Z)

    def __matmul__(self, o):
        return ShalikaElement.from_matrix(self.matrix.m @ o.matrix.m)

    def inv(self):
        return ShalikaElement.from_matrix(self.matrix.inv().m)

    def __eq__(self, o):
        return isinstance(o, ShalikaElement) and self.matrix == o.matrix


def in_S(m):
    try:
        ShalikaElement.from_matrix(m)
        return True
    except NotInShalika:
        return False


def in_ST(m):
    return in_S(m.T)


def shalika_arg(s):
    if not isinstance(s, ShalikaElement):
        s = ShalikaElement.from_matrix(s)
    return s.arg


def shalika_arg_t(t):
    """Argument of the transposed character on S^T."""
    m = t.m if isinstance(t, SimMatrix) else t
    return shalika_arg(m.T)


# ---------------------------------------------------------------- Weyl elements

def weyl_and_sigma(F=QQ):
    J, I = jmat(F), eye2(F)
    a = SimMatrix(block(F, [[J, None, None], [None, I, None], [None, None, J]]))
    c = SimMatrix(block(F, [[I, None, None], [None, J, None], [None, None, I]]))
    b = SimMatrix(FMat.from_scalars(F, [
        [1, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 0, 1]]))
    gens = {"a": a, "b": b, "c": c}
    one = SimMatrix(FMat.eye(F, 6))
    sigma = {}
    for word in SIGMA_WORDS:
        m = one
        for ch in word:
            m = m @ gens[ch]
        sigma[word or "1"] = m
    return a, b, c, sigma


SIGMA_WORDS = ("", "b", "bcb", "bacb", "bcabacb")


@dataclass
class CosetAudit:
    group_order: int
    diagonal_order: int
    quotient_order: int
    double_coset_count: int
    representatives: list
    sigma_words: list
    sigma_match: bool
    details: dict = dc_field(default_factory=dict)

    def to_dict(self):
        return {"group_order": self.group_order, "diagonal_order": self.diagonal_order,
                "quotient_order": self.quotient_order, "double_coset_count": self.double_coset_count,
                "representatives": self.representatives, "sigma_words": self.sigma_words,
                "sigma_match": self.sigma_match}


def _int_mat(s):
    return np.array([[int(x) for x in row] for row in s.m.tolist()], dtype=np.int64)


def _closure(gens, bound):
    start = np.eye(6, dtype=np.int64)
    seen = {start.tobytes(): start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            k = y.tobytes()
            if k not in seen:
                seen[k] = y
                if len(seen) > bound:
                    raise CosetEnumerationError(f"group exceeds {bound} elements")
                queue.append(y)
    return list(seen.values())


def double_coset_audit(bound=10_000):
    a, b, c, sigma = weyl_and_sigma(QQ)
    gens = {ch: _int_mat(m) for ch, m in (("a", a), ("b", b), ("c", c))}
    elems = _closure(list(gens.values()), bound)
    diag = [d for d in elems if not (d - np.diag(np.diag(d))).any()]

    def key(w):
        return min((w @ d).tobytes() for d in diag)

    # word lengths in W by breadth-first search over the generators
    one = key(np.eye(6, dtype=np.int64))
    rep = {one: np.eye(6, dtype=np.int64)}
    word = {one: ""}
    queue = deque([one])
    while queue:
        k = queue.popleft()
        for ch, g in gens.items():
            y = rep[k] @ g
            ky = key(y)
            if ky not in word:
                word[ky] = word[k] + ch
                rep[ky] = y
                queue.append(ky)
    W = list(word)
    wj = {key(x) for x in _closure([gens["a"], gens["c"]], bound)}
    wj_mats = [rep[k] for k in wj]
    unseen = set(W)
    cosets = []
    while unseen:
        k = min(unseen, key=lambda t: (len(word[t]), word[t]))
        dc = {key(x @ rep[k] @ y) for x in wj_mats for y in wj_mats}
        cosets.append(dc)
        unseen -= dc
    reps = []
    for dc in cosets:
        m = min(len(word[t]) for t in dc)
        mins = [t for t in dc if len(word[t]) == m]
        reps.append({"word": word[mins[0]] or "1", "length": m, "size": len(dc),
                     "unique_minimum": len(mins) == 1})
    sig_keys = {w: key(_int_mat(sigma[w or "1"])) for w in SIGMA_WORDS}
    min_keys = []
    for dc in cosets:
        m = min(len(word[t]) for t in dc)
        min_keys.append({t for t in dc if len(word[t]) == m})
    match = len(cosets) == len(SIGMA_WORDS) and all(
        sum(sig_keys[w] in mk for w in SIGMA_WORDS) == 1 for mk in min_keys)
    return CosetAudit(len(elems), len(diag), len(W), len(cosets), reps,
                      [w or "1" for w in SIGMA_WORDS], match,
                      {"sigma_lengths": {w or "1": len(word[sig_keys[w]]) for w in SIGMA_WORDS}})


# ---------------------------------------------------------------- case registry

def _rand(F, rng, nonzero=False):
    while True:
        x = F(rng.randint(-9, 9))
        if x != 0 or not nonzero:
            return x


def _rand_gl2(F, rng):
    while True:
        m = m2(F, *(_rand(F, rng) for _ in range(4)))
        if det2(m) != 0:
            return m


def _draw(F, rng, make, ok, tries=200):
    for _ in range(tries):
        x = make()
        if ok(x):
            return x
    raise SamplingError("could not satisfy the case hypotheses")


def _fmt(x):
    if isinstance(x, SimMatrix):
        x = x.m
    if isinstance(x, FMat):
        return x.to_strs()
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    return str(x)


def _a(name, lhs, rhs, gating=True, passed=None):
    if passed is None:
        passed = bool(lhs == rhs)
    return {"name": name, "lhs": _fmt(lhs), "rhs": _fmt(rhs), "pass": passed, "gating": gating}


def _upper_zero_blocks(m):
    return [blk(m, i, j) for i, j in ((0, 1), (0, 2), (1, 2))]


def _st_conditions(m):
    """Linear conditions for m in S^T (lower block triangular with equal diagonal blocks)."""
    out = []
    for b in _upper_zero_blocks(m):
        out += b.scalars()
    d0, d1, d2 = blk(m, 0, 0), blk(m, 1, 1), blk(m, 2, 2)
    out += (d0 - d1).scalars() + (d1 - d2).scalars()
    return out


def _trace_free(F, theta):
    p, q, r = theta
    return m2(F, p, q, r, -p)


def solve_conjugator(g, x, trace_free_z=True):
    """Z completing u(x, .) so that g u g^{-1} lies in S^T; None if infeasible."""
    F = x.field
    ginv = g.inv().m
    base = eye2(F).scale(-det2(x) / 2)

    def fn(theta):
        s = u3(x, base + _trace_free(F, theta))
        return _st_conditions(g.m @ s.m @ ginv)

    c0, cols = _linear_parts(fn, 3, F)
    theta, _ = affine_solve(F, c0, cols)
    if theta is None:
        return None, g.m @ u3(x, base).m @ ginv
    Z = base + _trace_free(F, theta)
    return Z, g.m @ u3(x, Z).m @ ginv


def _r1(F, g, x, kappa, closed_s, closed_t, prefix=""):
    """Membership, closed forms and separation for an (R1) step."""
    s = ShalikaElement(eye2(F), x, _placeholder_z(x))
    Z, t = solve_conjugator(g, x)
    out = []
    if Z is None:
        out.append(_a(prefix + "g s g^-1 in S^T", "infeasible for every Z", "member", passed=False))
        out.append(_a(prefix + "arg(s) closed form", s.arg, kappa * closed_s))
        out.append(_a(prefix + "arg^T(g s g^-1) closed form", "undefined", _fmt(kappa * closed_t),
                      passed=False))
        out.append(_a(prefix + "arguments differ", "undefined", "distinct", passed=False))
        return out, {"residual": t}
    s = ShalikaElement(eye2(F), x, Z)
    at = shalika_arg_t(t)
    out.append(_a(prefix + "g s g^-1 in S^T", "member", "member", passed=in_ST(t)))
    out.append(_a(prefix + "arg(s) closed form", s.arg, kappa * closed_s))
    out.append(_a(prefix + "arg^T(g s g^-1) closed form", at, kappa * closed_t))
    out.append(_a(prefix + "arguments differ", s.arg, at, passed=s.arg != at))
    return out, {"Z": Z, "conjugate": t}


def _placeholder_z(x):
    return eye2(x.field).scale(-det2(x) / 2)


def _g(u, sigma, v, prime=False):
    return eta(u) @ sigma @ (eta_prime(v) if prime else eta(v))


def _transpose_conjugator(F, rng, n):
    """Invertible s with s n s^{-1} = n^T, from the linear conjugacy system."""
    def fn(z):
        s = m2(F, *z)
        return (s @ n - n.T @ s).scalars()

    c0, cols = _linear_parts(fn, 4, F)
    basis = [b.reshape(2, 2) for b in affine_solve(F, c0, cols)[1]]

    def make():
        out = FMat.zeros(F, (2, 2))
        for b in basis:
            out = out + b.scale(_rand(F, rng))
        return out

    return _draw(F, rng, make, lambda s: det2(s) != 0)


def _case_sigma1(F, rng):
    x, y = _rand_gl2(F, rng), _rand_gl2(F, rng)
    n = y @ inv2(x)
    s = _transpose_conjugator(F, rng, n)
    g, h = x.T @ s, inv2(x) @ inv2(s)
    l = levi(x, y)
    l6 = delta(g) @ levi(x, y) @ delta(h)
    orbit = levi(eye2(F), inv2(x) @ y)
    return [
        _a("orbit representative (1, x^-1 y)", delta(inv2(x)).m @ l.m, orbit.m),
        _a("s invertible", det2(s) != 0, True),
        _a("s n s^-1 = n^T", s @ n @ inv2(s), n.T),
        _a("Delta(g) l Delta(h) = l^T", l6.m, l.m.T),
        _a("arg(Delta(g)) = arg(Delta(h)) = 0", (shalika_arg(delta(g)), shalika_arg(delta(h))),
           (F(0), F(0))),
    ], {"x": x, "y": y, "s": s}


def _case_b_u3zero(F, rng):
    _, b, _, _ = weyl_and_sigma(F)
    u = _draw(F, rng, lambda: m2(F, _rand(F, rng), _rand(F, rng), 0, _rand(F, rng)),
              lambda m: det2(m) != 0)
    v = _rand_gl2(F, rng)
    v1, v2, v3, v4 = v.scalars()
    l1, l2 = _draw(F, rng, lambda: (_rand(F, rng), _rand(F, rng)), lambda t: t[0] * v1 + t[1] * v2 != 0)
    x = m2(F, l1 * v1, l1 * v2, l2 * v1, l2 * v2)
    out, info = _r1(F, _g(u, b, v), x, F(-1), tr2(x), F(0))
    return out, {"u": u, "v": v, **info}


def _case_b_v1nonzero(F, rng):
    _, b, _, _ = weyl_and_sigma(F)
    u = _draw(F, rng, lambda: m2(F, *(_rand(F, rng) for _ in range(4))),
              lambda m: det2(m) != 0 and m.scalars()[2] != 0)
    v = _draw(F, rng, lambda: _rand_gl2(F, rng), lambda m: m.scalars()[0] != 0)
    v1, v2, v3, v4 = v.scalars()
    l2 = _rand(F, rng, nonzero=True)
    l1 = -l2 * v2 / v1
    x = m2(F, l1 * v1, l1 * v2, l2 * v1, l2 * v2)
    u3_ = u.scalars()[2]
    out, info = _r1(F, _g(u, b, v), x, F(-1), F(0), -l2 * u3_)
    return out, {"u": u, "v": v, **info}


def _case_b_v1zero(F, rng):
    _, b, _, _ = weyl_and_sigma(F)
    u = _draw(F, rng, lambda: m2(F, *(_rand(F, rng) for _ in range(4))),
              lambda m: det2(m) != 0 and m.scalars()[2] != 0)
    u3_ = u.scalars()[2]
    v = _draw(F, rng, lambda: m2(F, 0, _rand(F, rng), _rand(F, rng), _rand(F, rng)),
              lambda m: det2(m) != 0 and m.scalars()[1] != -u3_)
    v2 = v.scalars()[1]
    l2 = _rand(F, rng, nonzero=True)
    x = m2(F, 0, 0, 0, l2 * v2)
    out, info = _r1(F, _g(u, b, v), x, F(-1), l2 * v2, -l2 * u3_)
    return out, {"u": u, "v": v, **info}


def _case_b_support(F, rng):
    _, b, _, _ = weyl_and_sigma(F)
    u2, u3_, v3 = (_rand(F, rng, nonzero=True) for _ in range(3))
    u4, v4 = _rand(F, rng), _rand(F, rng)
    u = m2(F, 0, u2, u3_, u4)
    v = m2(F, 0, -u3_, v3, v4)
    v2 = -u3_
    g = _g(u, b, v)
    one = FMat.eye(F, 6)

    def e25(c):
        return FMat.from_scalars(F, [[c if (i, j) == (1, 4) else 0 for j in range(6)] for i in range(6)])

    z = one + e25(u4 * v3)
    y = one + e25(v4 * u2)
    m = y.T @ g.m @ z
    disp = FMat.from_scalars(F, [
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, v2, 0, 0],
        [0, 0, 0, 0, -u2 * v2 * v3, 0],
        [0, v2, 0, 0, 0, 0],
        [0, 0, -u2 * v2 * v3, 0, 0, 0],
        [0, 0, 0, 0, 0, det2(u @ v)]])
    return [
        _a("y, z in S", (in_S(y), in_S(z)), (True, True)),
        _a("arg(y) = arg(z) = 0", (shalika_arg(y), shalika_arg(z)), (F(0), F(0))),
        _a("y^T g z matches the closed form", m, disp),
        _a("y^T g z symmetric", m, m.T),
    ], {"u": u, "v": v}


def _w(u, v):
    return (u @ v).scalars()


def _case_bcb_off(F, rng):
    _, _, _, sig = weyl_and_sigma(F)
    def make():
        return _rand_gl2(F, rng), _rand_gl2(F, rng)

    def off(uv):
        w1, w2, w3, w4 = _w(*uv)
        return (w3, w4) != (-det2(uv[1]), F(0))

    u, v = _draw(F, rng, make, off)
    dv = det2(v)
    w1, w2, w3, w4 = _w(u, v)

    def args(t):
        x3, x4 = t
        return x4, (w4 * x3 - w3 * x4) / dv

    x3, x4 = _draw(F, rng, lambda: (_rand(F, rng), _rand(F, rng)), lambda t: args(t)[0] != args(t)[1])
    x = m2(F, 0, 0, x3, x4)
    out, info = _r1(F, _g(u, sig["bcb"], v), x, F(-1), x4, (w4 * x3 - w3 * x4) / dv)
    return out, {"u": u, "v": v, **info}


def _bcb_support_pair(F, rng):
    def make():
        v = _rand_gl2(F, rng)
        v1, v2, v3, v4 = v.scalars()
        u = m2(F, _rand(F, rng), _rand(F, rng), -v4, v2)
        return u, v

    return _draw(F, rng, make, lambda uv: det2(uv[0]) != 0)


def _case_bcb_transpose(F, rng):
    _, _, _, sig = weyl_and_sigma(F)
    u, v = _bcb_support_pair(F, rng)
    du, dv = det2(u), det2(v)
    w1, w2, w3, w4 = _w(u, v)
    g = _g(u, sig["bcb"], v)
    D = delta(m2(F, dv, 0, 0, -du))
    disp = FMat.from_scalars(F, [
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, -dv, 0],
        [0, 0, w1, du, 0, 0],
        [0, 0, -dv, 0, 0, 0],
        [0, du, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, du * dv]])
    # on the support both argument forms reduce to x4
    agree = [w4 / dv, -w3 / dv]
    return [
        _a("uv = [[*, det u], [-det v, 0]]", (w2, w3, w4), (du, -dv, F(0))),
        _a("Delta(d) g Delta(d)^-1 = g^T", (D @ g @ D.inv()).m, g.m.T),
        _a("arg(Delta(d)) = 0", shalika_arg(D), F(0)),
        _a("g matches the closed form", g.m, disp, gating=False),
        _a("argument forms coincide on the support", agree, [F(0), F(1)], gating=False),
    ], {"u": u, "v": v}


def _case_bacb_u1zero(F, rng):
    _, _, _, sig = weyl_and_sigma(F)
    u = _draw(F, rng, lambda: m2(F, 0, _rand(F, rng), _rand(F, rng), _rand(F, rng)),
              lambda m: det2(m) != 0)
    v = _rand_gl2(F, rng)
    v1, v2, _, _ = v.scalars()
    lam, x4 = _draw(F, rng, lambda: (_rand(F, rng), _rand(F, rng)), lambda t: t[0] * v1 + t[1] != 0)
    x = m2(F, lam * v1, lam * v2, 0, x4)
    out, info = _r1(F, _g(u, sig["bacb"], v), x, F(-1), lam * v1 + x4, F(0))
    return out, {"u": u, "v": v, **info}


def _case_bacb_u1nonzero(F, rng):
    _, _, _, sig = weyl_and_sigma(F)
    u = _draw(F, rng, lambda: _rand_gl2(F, rng), lambda m: m.scalars()[0] != 0)
    v = _rand_gl2(F, rng)
    v1, v2, _, _ = v.scalars()
    lam = _rand(F, rng, nonzero=True)
    x = m2(F, lam * v1, lam * v2, 0, -lam * v1)
    out, info = _r1(F, _g(u, sig["bacb"], v), x, F(-1), F(0), u.scalars()[0] * lam)
    return out, {"u": u, "v": v, **info}


def _diag_checks(F, rng, u, v, sigma, gating, tag=""):
    g = _g(u, sigma, v, prime=True)
    disp = block(F, [[None, None, -u], [None, u, None], [-u, None, None]])
    gam = _transpose_conjugator(F, rng, u)
    D = delta(gam)
    return [
        _a(tag + "g matches the closed form", g.m, disp, gating),
        _a(tag + "Delta(gamma) g Delta(gamma)^-1 = g^T", (D @ g @ D.inv()).m, g.m.T, gating),
    ]


def _case_bcabacb_diag(F, rng):
    _, _, _, sig = weyl_and_sigma(F)
    v = _rand_gl2(F, rng)
    u = v.scale(-det2(v))           # u det(v)^{-1} = -v
    out = _diag_checks(F, rng, u, v, sig["bcabacb"], True)
    uc = v.scale(-1 / det2(v))      # the relation that produces the closed form
    out += _diag_checks(F, rng, uc, v, sig["bcabacb"], False, "with u = -v/det v: ")
    return out, {"u": u, "v": v}


def _case_bcabacb_generic(F, rng):
    _, _, _, sig = weyl_and_sigma(F)
    u, v = _draw(F, rng, lambda: (_rand_gl2(F, rng), _rand_gl2(F, rng)),
                 lambda uv: not (uv[0].scale(1 / det2(uv[1])) == uv[1].scale(-1)))
    dv = det2(v)
    vi = inv2(v)

    def closed(X):
        return tr2(u @ X @ vi) / dv

    X = _draw(F, rng, lambda: m2(F, *(_rand(F, rng) for _ in range(4))),
              lambda X: -tr2(X) != closed(X))
    g = _g(u, sig["bcabacb"], v, prime=True)
    s = ShalikaElement(eye2(F), X)
    t = g.m @ s.matrix.m @ g.inv().m
    member = in_ST(t)
    at = shalika_arg_t(t) if member else None
    J = jmat(F)
    return [
        _a("g s g^-1 in S^T", member, True),
        _a("arg(s) closed form", s.arg, -tr2(X)),
        _a("arg^T(g s g^-1) closed form", at, closed(X)),
        _a("arguments differ", s.arg, at, passed=member and s.arg != at),
        _a("block (2,1) matches the closed form", blk(t, 1, 0), u @ J @ X.T @ J @ vi.scale(1 / dv), False),
        _a("block (3,2) matches the closed form", blk(t, 2, 1), (v @ X @ inv2(u)).scale(det2(u)), False),
    ], {"u": u, "v": v, "X": X}


CASES = {
    "σ1.transpose": _case_sigma1,
    "b.u3zero": _case_b_u3zero,
    "b.u3nonzero.v1nonzero": _case_b_v1nonzero,
    "b.u3nonzero.v1zero": _case_b_v1zero,
    "b.support.transpose": _case_b_support,
    "bcb.offsupport": _case_bcb_off,
    "bcb.transpose": _case_bcb_transpose,
    "bacb.u1zero": _case_bacb_u1zero,
    "bacb.u1nonzero": _case_bacb_u1nonzero,
    "bcabacb.diagonal": _case_bcabacb_diag,
    "bcabacb.generic": _case_bcabacb_generic,
}

# cases whose literal claim is known to fail; see the README
KNOWN_FAILURES = {"b.u3nonzero.v1nonzero", "bacb.u1zero", "bacb.u1nonzero",
                  "bcabacb.diagonal", "bcabacb.generic"}


def _rng(case_id, seed):
    return random.Random(f"{case_id}:{seed}")


def dist_case_check(case_id, seed, field=QQ):
    if case_id not in CASES:
        raise KeyError(f"unknown case {case_id!r}")
    out, info = CASES[case_id](field, _rng(case_id, seed))
    return {"case_id": case_id, "seeds": [seed], "assertions": out,
            "pass": all(a["pass"] for a in out if a["gating"]),
            "parameters": {k: _fmt(v) for k, v in info.items() if k in ("u", "v", "x", "y", "X", "s", "Z")}}


def run_case(case_id, seeds=100, field=QQ, seed=0):
    """Aggregate dist_case_check over `seeds` consecutive seeds."""
    agg = {}
    order = []
    first_fail = None
    for k in range(seeds):
        r = dist_case_check(case_id, seed + k, field)
        if not r["pass"] and first_fail is None:
            first_fail = {"seed": seed + k, "parameters": r["parameters"]}
        for a in r["assertions"]:
            e = agg.get(a["name"])
            if e is None:
                e = agg[a["name"]] = {"name": a["name"], "lhs": a["lhs"], "rhs": a["rhs"],
                                      "pass": True, "passed_seeds": 0, "gating": a["gating"]}
                order.append(a["name"])
            e["passed_seeds"] += a["pass"]
            if not a["pass"] and e["pass"]:
                e.update(pass_=False, lhs=a["lhs"], rhs=a["rhs"], first_failing_seed=seed + k)
                e["pass"] = False
                e.pop("pass_")
    items = [agg[n] for n in order]
    return {"case_id": case_id, "seeds": seeds,
            "pass": all(a["pass"] for a in items if a["gating"]),
            "assertions": items, "witness": first_fail}


def run_registry(seeds=100, field=QQ, seed=0):
    return [run_case(c, seeds, field, seed) for c in CASES]


def literal_display_element(F=QQ):
    """The unipotent element written with Y = J X^T J^{-1} and Z = 0, at X = I."""
    I = eye2(F)
    J = jmat(F)
    return block(F, [[I, I, None], [None, I, J @ I.T @ inverse(J)], [None, None, I]])


# ---------------------------------------------------------------- dual numbers

class DualNumberMat:
    """m0 + m1 eps + m2 eps^2 in M2(k[eps]/eps^3)."""
    __slots__ = ("m0", "m1", "m2")

    def __init__(self, m0, m1, m2_):
        self.m0, self.m1, self.m2 = m0, m1, m2_

    @classmethod
    def identity(cls, F):
        z = FMat.zeros(F, (2, 2))
        return cls(eye2(F), z, z)

    def __matmul__(self, o):
        return DualNumberMat(self.m0 @ o.m0, self.m0 @ o.m1 + self.m1 @ o.m0,
                             self.m0 @ o.m2 + self.m1 @ o.m1 + self.m2 @ o.m0)

    def is_invertible(self):
        return det2(self.m0) != 0

    def inv(self):
        a = inv2(self.m0)
        b = -(a @ self.m1 @ a)
        c = -(a @ self.m2 @ a) + a @ self.m1 @ a @ self.m1 @ a
        return DualNumberMat(a, b, c)

    def __eq__(self, o):
        return self.m0 == o.m0 and self.m1 == o.m1 and self.m2 == o.m2

    def to_strs(self):
        return [self.m0.to_strs(), self.m1.to_strs(), self.m2.to_strs()]


def _unit2(F, k):
    z = [0, 0, 0, 0]
    z[k] = 1
    return m2(F, *z)


@lru_cache(maxsize=None)
def _coordinate_change(spec):
    """Quadratic Q with phi(u(X, Z)) = I + X eps + (Z + Q(X)) eps^2 a homomorphism on U3.

    Matching the eps^2 components of the two products requires the polarization
    Q(X + X') - Q(X) - Q(X') = X X' - X Y' for all X, X'.  The left side is
    symmetric in (X, X'); we solve for the coefficients of Q exactly.
    """
    F = parse_field(spec)
    mons = [(i, j) for i in range(4) for j in range(i, 4)]
    nq = 4 * len(mons)
    rows, rhs = [], []
    for a in range(4):
        for b in range(4):
            Ea, Eb = _unit2(F, a), _unit2(F, b)
            target = (Ea @ Eb - Ea @ y_of(Eb)).scalars()
            key = (min(a, b), max(a, b))
            mi = mons.index(key)
            coef = F(2) if a == b else F(1)
            for e in range(4):
                row = [F(0)] * nq
                row[e * len(mons) + mi] = coef
                rows.append(row)
                rhs.append(target[e])
    c0 = [-r for r in rhs]
    cols = [[row[k] for row in rows] for k in range(nq)]
    theta, _ = affine_solve(F, c0, cols)
    if theta is None:
        for a in range(4):
            for b in range(4):
                Ea, Eb = _unit2(F, a), _unit2(F, b)
                lhs = Ea @ Eb - Ea @ y_of(Eb)
                rhs_ = Eb @ Ea - Eb @ y_of(Ea)
                if not (lhs == rhs_):
                    return None, {"X": Ea, "X'": Eb, "B(X,X')": lhs, "B(X',X)": rhs_}
    return theta, None


def derive_coordinate_change(field=QQ):
    theta, witness = _coordinate_change(field.spec)
    if theta is None:
        raise DualRingError("no coordinate change matches the two group laws", witness)
    return theta


def dual_ring_embed(s):
    """phi(s) in GL2(k[eps]/eps^3); fails at the coordinate-change derivation."""
    F = s.field
    theta = derive_coordinate_change(F)
    mons = [(i, j) for i in range(4) for j in range(i, 4)]
    x = s.X.scalars()
    q = [sum((theta[e * len(mons) + k] * x[i] * x[j] for k, (i, j) in enumerate(mons)), F(0))
         for e in range(4)]
    return DualNumberMat(s.g, s.g @ s.X, s.g @ (s.Z + m2(F, *q)))


def naive_dual_ring_map(s):
    """Delta(g) u(X, Z) -> g (I + X eps + Z eps^2), the uncorrected coordinates."""
    return DualNumberMat(s.g, s.g @ s.X, s.g @ s.Z)


def tangent_dimension(F=QQ):
    """Dimension of Lie(S): block upper triangular A with equal diagonal blocks and
    A J3 + J3 A^T a multiple of J3."""
    J = j3(F)
    n = 37
    rows = []

    def unpack(z):
        return FMat.from_scalars(F, [z[6 * i:6 * i + 6] for i in range(6)]), z[36]

    def cond(z):
        A, mu = unpack(z)
        out = (A @ J + J @ A.T - J.scale(mu)).scalars()
        for i, j in ((1, 0), (2, 0), (2, 1)):
            out += blk(A, i, j).scalars()
        out += (blk(A, 0, 0) - blk(A, 1, 1)).scalars() + (blk(A, 1, 1) - blk(A, 2, 2)).scalars()
        return out

    c0, cols = _linear_parts(cond, n, F)
    rows = FMat.from_scalars(F, [[c[k] for c in cols] for k in range(len(c0))])
    return len(nullspace(rows))


def monomorphism_obstruction(F=QQ):
    """Rank of X -> [u(X), u(.)] on U3/Z3 versus the room left in GL2(k[eps]/eps^3).

    For a homomorphism into 1 + eps M2 + eps^2 M2 the eps-part f is additive and
    commutators land in [f(X), f(X')] eps^2, which only sees the trace-free part
    of f (dimension 3).  If the commutator pairing needs rank 4, some X has
    f(X) central while u(X) is not, so the map cannot be injective.
    """
    rows = []
    for a in range(4):
        Ea = _unit2(F, a)
        row = []
        for b in range(4):
            Eb = _unit2(F, b)
            row += (Ea @ y_of(Eb) - Eb @ y_of(Ea)).scalars()
        rows.append(row)
    M = FMat.from_scalars(F, rows)
    r = 4 - len(nullspace(M.T))
    return {"commutator_rank": r, "trace_free_dim": 3, "injective_possible": r <= 3}


def _random_shalika(F, rng):
    g = _rand_gl2(F, rng)
    X = m2(F, *(_rand(F, rng) for _ in range(4)))
    p, q, r = (_rand(F, rng) for _ in range(3))
    return ShalikaElement(g, X, _placeholder_z(X) + m2(F, p, q, r, -p))


def dual_ring_checks(F=QQ, pairs=1000, samples=200, seed=0):
    rng = random.Random(f"dual:{seed}")
    out = []
    try:
        derive_coordinate_change(F)
        out.append(Check("dual ring: coordinate change derived", True))
        phi = dual_ring_embed
    except DualRingError as e:
        out.append(Check("dual ring: coordinate change derived", False, e.witness,
                         "matching the eps^2 components needs a non-symmetric polarization",
                         expected_fail=True))
        phi = naive_dual_ring_map
    one = ShalikaElement(eye2(F), FMat.zeros(F, (2, 2)), FMat.zeros(F, (2, 2)))
    out.append(Check("dual ring: phi(1) = 1", phi(one) == DualNumberMat.identity(F)))
    bad = None
    for _ in range(pairs):
        s, t = _random_shalika(F, rng), _random_shalika(F, rng)
        if not (phi(s @ t) == phi(s) @ phi(t)):
            bad = {"s": s.matrix.m, "t": t.matrix.m}
            break
    out.append(Check(f"dual ring: phi(st) = phi(s)phi(t) on {pairs} pairs", bad is None, bad,
                     expected_fail=True))
    seen = {}
    bad = None
    for _ in range(samples):
        s = _random_shalika(F, rng)
        k = tuple(map(str, [*phi(s).m0.scalars(), *phi(s).m1.scalars(), *phi(s).m2.scalars()]))
        prev = seen.setdefault(k, s)
        if not (prev == s):
            bad = {"s": s.matrix.m, "t": prev.matrix.m}
            break
    out.append(Check(f"dual ring: injective on {samples} samples", bad is None, bad))
    ob = monomorphism_obstruction(F)
    out.append(Check("dual ring: commutator pairing fits a trace-free image", ob["injective_possible"],
                     ob, expected_fail=True))
    td = tangent_dimension(F)
    out.append(Check("dual ring: tangent dimension 11 vs 12", td == 11, {"S": td, "GL2(k[eps]/eps^3)": 12}))
    return out


# ---------------------------------------------------------------- suites

def _random_gsp6(F, rng, gens):
    m = gens[rng.randrange(len(gens))]
    for _ in range(rng.randint(1, 3)):
        m = m @ gens[rng.randrange(len(gens))]
    return m


def _generators(F, rng, k=12):
    a, b, c, sig = weyl_and_sigma(F)
    out = [a, b, c] + list(sig.values())
    for _ in range(k):
        out.append(delta(_rand_gl2(F, rng)))
        out.append(eta(_rand_gl2(F, rng)))
        out.append(_random_shalika(F, rng).matrix)
    return out


def cosets_suite(F=QQ, seed=0):
    out = []
    a, b, c, sig = weyl_and_sigma(F)
    I, J = eye2(F), jmat(F)
    out.append(Check("a^2 = diag(-I, I, -I)", (a @ a).m == block(F, [[-I, None, None], [None, I, None],
                                                                      [None, None, -I]])))
    b4 = b @ b @ b @ b
    out.append(Check("b^4 = 1", b4.m == FMat.eye(F, 6)))
    sims = {w: similitude(m) for w, m in sig.items()}
    out.append(Check("similitude 1 on a, b, c and Sigma",
                     all(similitude(m) == 1 for m in (a, b, c)) and all(s == 1 for s in sims.values()),
                     detail=sims))
    aud = double_coset_audit()
    out.append(Check("Weyl group order 48", aud.quotient_order == 48, detail=aud.to_dict()))
    out.append(Check("5 double cosets", aud.double_coset_count == 5))
    out.append(Check("minimal representatives are the images of Sigma", aud.sigma_match,
                     detail=aud.details))
    return out


def shalika_suite(F=QQ, seed=0, samples=100, pairs=1000, seeds=100):
    rng = random.Random(f"shalika:{seed}")
    out = []
    I = FMat.eye(F, 6)
    t = _rand(F, rng, nonzero=True)
    out.append(Check("Sim(1) = 1, Sim(tI) = t^2, Sim(J3) = 1",
                     similitude(I) == 1 and similitude(I.scale(t)) == t * t and similitude(j3(F)) == 1))
    bad = None
    for _ in range(samples):
        g, h = _rand_gl2(F, rng), _rand_gl2(F, rng)
        D, E, (p, q) = embed_delta_eta(g, h)
        if not (similitude(D) == det2(g) and (delta(p) @ eta(q)) == D @ E):
            bad = {"g": g, "h": h}
            break
    out.append(Check("Sim(Delta(g)) = det g and l = Delta(p) eta(q)", bad is None, bad))
    out.append(Check("Delta(I) eta(I) = 1", (delta(eye2(F)) @ eta(eye2(F))).m == I))
    bad = None
    for _ in range(samples):
        g, h = _rand_gl2(F, rng), _rand_gl2(F, rng)
        X = m2(F, *(_rand(F, rng) for _ in range(4)))
        l = levi(g, h)
        c = l.m @ u3(X).m @ l.inv().m
        if not (in_S(c) and blk(c, 0, 1) == g @ X @ inv2(h)):
            bad = {"g": g, "h": h, "X": X}
            break
    out.append(Check("L3 acts on U3/Z3 by X -> g X h^-1", bad is None, bad))
    try:
        factor_levi(u3(m2(F, 1, 0, 0, 0)))
        ok = False
    except DecompositionError:
        ok = True
    out.append(Check("non-Levi element rejected", ok))
    bad = None
    for _ in range(samples):
        X = m2(F, *(_rand(F, rng) for _ in range(4)))
        Z0, basis = z_solutions(X)
        if len(basis) != 3 or not in_S(u3(X, Z0).m):
            bad = {"X": X}
            break
    out.append(Check("Z-solutions form a 3-dimensional affine space", bad is None, bad))
    gens = _generators(F, rng)
    bad = None
    for _ in range(pairs):
        g, h = _random_gsp6(F, rng, gens), _random_gsp6(F, rng, gens)
        if similitude(g.m @ h.m) != similitude(g) * similitude(h):
            bad = {"g": g.m, "h": h.m}
            break
    out.append(Check(f"Sim multiplicative on {pairs} pairs", bad is None, bad))
    bad = None
    for _ in range(samples):
        g = _random_gsp6(F, rng, gens)
        if similitude(g.m.T) != similitude(g):
            bad = {"g": g.m}
            break
    out.append(Check("transpose keeps similitude", bad is None, bad))
    bad = None
    for _ in range(samples):
        s, u = _random_shalika(F, rng), _random_shalika(F, rng)
        p = s @ u
        if not (p.matrix.m == s.matrix.m @ u.matrix.m and (s @ s.inv()).matrix.m == I
                and p.arg == s.arg + u.arg and shalika_arg(delta(s.g)) == 0):
            bad = {"s": s.matrix.m, "u": u.matrix.m}
            break
    out.append(Check("S closed, arg additive, arg(Delta(g)) = 0", bad is None, bad))
    lit = literal_display_element(F)
    try:
        similitude(lit)
        ok = True
    except NotInGSp6:
        ok = False
    out.append(Check("unipotent element with Y = J X^T J^-1, Z = 0 lies in GSp6", ok,
                     None if ok else {"m": lit}, expected_fail=True))
    for case in CASES:
        r = run_case(case, seeds, F, seed)
        failing = [a["name"] for a in r["assertions"] if a["gating"] and not a["pass"]]
        out.append(Check(f"case {case}", r["pass"], r["witness"],
                         {"failing": failing, "seeds": seeds} if failing else {"seeds": seeds},
                         expected_fail=case in KNOWN_FAILURES))
    out += dual_ring_checks(F, pairs=pairs, seed=seed)
    return out

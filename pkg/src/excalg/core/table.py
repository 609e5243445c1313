"""Finite-dimensional algebras given by structure constants."""
import json

import numpy as np

from .exact import FMat, stack
from .field import ConfigError


class Algebra:
    """An algebra with basis e_0..e_{n-1} and products e_i e_j = sum_k c_ijk e_k.

    `mt` holds c as an FMat of shape (n, n*n) indexed [i, j*n + k]; `mt_r` the
    same constants indexed [j, i*n + k] (for right multiplications).
    Elements are 1-d FMat coordinate vectors; operators act on columns.
    """

    def __init__(self, field, labels, consts, unit=None, involution=None, name=""):
        self.field = field
        self.labels = list(labels)
        n = len(self.labels)
        self.dim = n
        self.name = name
        c = consts if isinstance(consts, FMat) else FMat.from_scalars(field, consts)
        if c.shape != (n, n, n):
            raise ValueError("structure constants must have shape (n, n, n)")
        self.consts = c
        self.mt = c.reshape(n, n * n)
        self.mt_r = c.transpose(1, 0, 2).reshape(n, n * n)
        self.unit = unit
        self.involution = involution  # FMat (n x n) or None

    # -- elements
    def zero(self):
        return FMat.zeros(self.field, (self.dim,))

    def basis(self, i):
        return FMat.unit(self.field, self.dim, i)

    def elt(self, coeffs):
        v = coeffs if isinstance(coeffs, FMat) else FMat.from_scalars(self.field, list(coeffs))
        if v.shape != (self.dim,):
            raise ValueError(f"need {self.dim} coordinates, got {v.shape}")
        return v

    def one(self):
        if self.unit is None:
            raise ValueError(f"{self.name} has no designated unit")
        return self.unit

    # -- products
    def _check(self, x):
        if not isinstance(x, FMat) or x.shape != (self.dim,) or x.field != self.field:
            raise ValueError("element does not belong to this algebra")

    def L(self, x):
        """Matrix of y -> x y."""
        self._check(x)
        n = self.dim
        return (x.reshape(1, n) @ self.mt).reshape(n, n).T

    def R(self, x):
        """Matrix of y -> y x."""
        self._check(x)
        n = self.dim
        return (x.reshape(1, n) @ self.mt_r).reshape(n, n).T

    def mul(self, x, y):
        return self.L(x) @ y

    def conj(self, x):
        if self.involution is None:
            raise ValueError(f"{self.name} has no involution")
        return self.involution @ x

    def commutator(self, x, y):
        return self.mul(x, y) - self.mul(y, x)

    def associator(self, x, y, z):
        return self.mul(self.mul(x, y), z) - self.mul(x, self.mul(y, z))

    def basis_products(self):
        """All e_i e_j as an FMat of shape (n, n, n)."""
        return self.consts

    def random_element(self, rng, lo=-3, hi=3):
        return FMat(self.field, np.array([rng.randint(lo, hi) for _ in range(self.dim)], dtype=np.int64))

    def to_json(self):
        f = self.field
        out = {"name": self.name, "field": f.spec, "labels": self.labels, "products": []}
        num = self.consts.num
        for i in range(self.dim):
            for j in range(self.dim):
                for k in np.flatnonzero(num[i, j]):
                    out["products"].append([self.labels[i], self.labels[j], self.labels[int(k)],
                                            f.to_str(self.consts[i, j, int(k)])])
        return json.dumps(out, sort_keys=True)

    def __repr__(self):
        return f"<Algebra {self.name} dim={self.dim} over {self.field!r}>"


def operator_of(table, side, x):
    """Matrix of y -> x y (side='left') or y -> y x (side='right')."""
    if x.shape != (table.dim,):
        raise ValueError("dimension mismatch")
    if side == "left":
        return table.L(x)
    if side == "right":
        return table.R(x)
    raise ValueError("side must be 'left' or 'right'")


def consts_from_products(field, n, prod):
    """Structure constants from a product function on coordinate lists."""
    rows = []
    for i in range(n):
        ei = [0] * n
        ei[i] = 1
        row = []
        for j in range(n):
            ej = [0] * n
            ej[j] = 1
            row.append(prod(ei, ej))
        rows.append(row)
    return FMat.from_scalars(field, rows)


def same_field(*objs):
    fs = {o.field for o in objs}
    if len(fs) != 1:
        raise ConfigError("mixed fields")
    return fs.pop()


class Elt:
    """An algebra element: coordinates plus the algebra they belong to."""
    __slots__ = ("alg", "v")

    def __init__(self, alg, v):
        self.alg = alg
        self.v = alg.elt(v)

    def _same(self, o):
        if not isinstance(o, Elt):
            return False
        if o.alg is not self.alg:
            raise ConfigError(f"elements of different algebras ({self.alg.name}, {o.alg.name})")
        return True

    def __add__(self, o):
        self._same(o)
        return Elt(self.alg, self.v + o.v)

    def __sub__(self, o):
        self._same(o)
        return Elt(self.alg, self.v - o.v)

    def __neg__(self):
        return Elt(self.alg, -self.v)

    def __mul__(self, o):
        if isinstance(o, Elt):
            self._same(o)
            return Elt(self.alg, self.alg.mul(self.v, o.v))
        return Elt(self.alg, self.v.scale(o))

    def __rmul__(self, c):
        return Elt(self.alg, self.v.scale(c))

    def __eq__(self, o):
        if not isinstance(o, Elt):
            return NotImplemented
        return o.alg is self.alg and self.v == o.v

    __hash__ = None

    def conj(self):
        return Elt(self.alg, self.alg.conj(self.v))

    def coords(self):
        return self.v.scalars()

    def is_zero(self):
        return self.v.is_zero()

    def __repr__(self):
        return f"{self.alg.name}{[str(c) for c in self.coords()]}"


def perturbed(alg, i, j, k, delta=1):
    """Copy of `alg` with one structure constant c_ijk shifted by delta."""
    c = alg.consts
    bump = np.zeros(c.shape, dtype=np.int64)
    bump[i, j, k] = 1
    newc = c + FMat(alg.field, bump).scale(delta)
    out = Algebra(alg.field, alg.labels, newc, unit=alg.unit, involution=alg.involution,
                  name=alg.name + "~")
    for attr in ("gram", "quad"):
        if hasattr(alg, attr):
            setattr(out, attr, getattr(alg, attr))
    return out

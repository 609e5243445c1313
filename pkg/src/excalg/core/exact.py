"""Exact dense arrays over QQ or F_p.

Over QQ an array is an integer numerator array with one common positive
denominator.  Numerators live in int64 while they provably fit and fall back to
Python ints (object dtype) otherwise.  Over F_p the numerators are residues and
the denominator is always 1.
"""
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from .field import QQ, Fp, Field, ConfigError

# products/sums are computed in int64 only below this magnitude
_I64 = 2 ** 62
_F53 = 2 ** 53


def maxabs(a):
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _as_obj(a):
    if a.dtype == object:
        return a
    out = np.empty(a.shape, dtype=object)
    out[...] = a.tolist() if a.ndim else int(a)
    return out


def _shrink(a):
    """Convert an object array to int64 when all entries fit."""
    if a.dtype != object or a.size == 0:
        return a if a.dtype != object else a.astype(np.int64)
    if maxabs(a) < _I64:
        return np.array(a.tolist(), dtype=np.int64).reshape(a.shape)
    return a


def _ints(a):
    a = np.asarray(a)
    if a.dtype == object:
        return _shrink(a)
    if a.dtype.kind in "iu":
        return a.astype(np.int64, copy=False)
    if a.dtype == bool:
        return a.astype(np.int64)
    raise TypeError(f"integer array expected, got {a.dtype}")


def imatmul(a, b):
    """Exact integer matmul; picks float64 BLAS, int64 or Python ints by bound."""
    k = a.shape[-1]
    if k == 0:
        return np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    bound = maxabs(a) * maxabs(b) * k
    if a.dtype != object and b.dtype != object:
        if bound < _F53:
            return np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64))).astype(np.int64)
        if bound < _I64:
            return np.matmul(a, b)
    return _shrink(np.matmul(_as_obj(a), _as_obj(b)))


def modmatmul(a, b, p):
    """(a @ b) mod p for residue arrays."""
    k = a.shape[-1]
    if k == 0:
        return np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    pp = (p - 1) * (p - 1)
    if p >= 2 ** 31:
        return np.matmul(_as_obj(a), _as_obj(b)) % p
    if pp * k < _F53:
        return np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64))).astype(np.int64) % p
    if k < 2 ** 20:
        return _limb_matmul(a, b, p)
    chunk = max(1, _I64 // pp)
    if chunk >= k:
        return np.matmul(a, b) % p
    out = None
    for s in range(0, k, chunk):
        part = np.matmul(a[..., s:s + chunk], b[..., s:s + chunk, :]) % p
        out = part if out is None else (out + part) % p
    return out


def _limb_matmul(a, b, p):
    """(a @ b) mod p via 16-bit limbs, so every partial product is exact in float64."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a0, a1 = (a & 0xFFFF).astype(np.float64), (a >> 16).astype(np.float64)
    b0, b1 = (b & 0xFFFF).astype(np.float64), (b >> 16).astype(np.float64)

    def mm(x, y):
        return np.rint(np.matmul(x, y)).astype(np.int64) % p

    hi = mm(a1, b1)
    mid = (mm(a1, b0) + mm(a0, b1)) % p
    lo = mm(a0, b0)
    return (hi * (2 ** 32 % p) % p + mid * (2 ** 16) % p + lo) % p


def _gcd_all(a, start=0):
    if a.size == 0:
        return start
    if a.dtype == object:
        return reduce(gcd, (int(x) for x in a.flat), start)
    return gcd(int(np.gcd.reduce(a, axis=None)), start)


class FMat:
    """Exact n-dimensional array over a Field."""
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=1, _norm=True):
        self.field = field
        if field.p:
            p = field.p
            num = _ints(num)
            if den != 1:
                num = _mulscalar_int(num, pow(den, -1, p)) if num.dtype != object else num * pow(den, -1, p)
            if num.dtype == object or p >= 2 ** 31:
                num = _as_obj(num) % p
                if p < 2 ** 31:
                    num = num.astype(np.int64)
            else:
                num = num % p
            self.num, self.den = num, 1
            return
        num = _ints(num)
        if den < 0:
            num, den = -num, -den
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if _norm and den != 1:
            g = _gcd_all(num, den)
            if g > 1:
                num = num // g
                den //= g
        self.num, self.den = num, den

    # -- construction
    @classmethod
    def from_scalars(cls, field, data):
        arr = np.array(data, dtype=object)
        if field.p:
            num = np.empty(arr.shape, dtype=object)
            for idx, x in np.ndenumerate(arr):
                num[idx] = int(field(x))
            return cls(field, num)
        fr = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            fr[idx] = Fraction(x)
        den = reduce(lcm, (x.denominator for x in fr.flat), 1)
        num = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(fr):
            num[idx] = x.numerator * (den // x.denominator)
        return cls(field, num, den)

    @classmethod
    def zeros(cls, field, shape):
        return cls(field, np.zeros(shape, dtype=np.int64), 1, _norm=False)

    @classmethod
    def eye(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64), 1, _norm=False)

    @classmethod
    def unit(cls, field, n, i):
        v = np.zeros(n, dtype=np.int64)
        v[i] = 1
        return cls(field, v, 1, _norm=False)

    # -- shape
    @property
    def shape(self):
        return self.num.shape

    @property
    def ndim(self):
        return self.num.ndim

    @property
    def size(self):
        return self.num.size

    def __len__(self):
        return self.num.shape[0]

    @property
    def T(self):
        return FMat(self.field, self.num.T, self.den, _norm=False)

    def transpose(self, *axes):
        return FMat(self.field, self.num.transpose(*axes), self.den, _norm=False)

    def reshape(self, *shape):
        return FMat(self.field, self.num.reshape(*shape), self.den, _norm=False)

    def copy(self):
        return FMat(self.field, self.num.copy(), self.den, _norm=False)

    def _scalar(self, n):
        if self.field.p:
            return Fp(int(n), self.field.p)
        return Fraction(int(n), self.den)

    def __getitem__(self, idx):
        sub = self.num[idx]
        if isinstance(sub, np.ndarray) and sub.ndim > 0:
            return FMat(self.field, sub, self.den)
        return self._scalar(sub)

    def __setitem__(self, idx, value):
        raise TypeError("FMat is immutable; use with_entries")

    def tolist(self):
        return _map_nested(self.num.tolist(), self._scalar)

    def scalars(self):
        return [self._scalar(x) for x in self.num.flat]

    # -- arithmetic
    def _check(self, o):
        if not isinstance(o, FMat):
            raise TypeError("FMat expected")
        if o.field != self.field:
            raise ConfigError("mixed fields")

    def _align(self, o):
        """Numerators of self and o over a common denominator."""
        if self.den == o.den:
            return self.num, o.num, self.den
        L = lcm(self.den, o.den)
        return _mulscalar_int(self.num, L // self.den), _mulscalar_int(o.num, L // o.den), L

    def __add__(self, o):
        if isinstance(o, int) and o == 0:
            return self
        self._check(o)
        a, b, d = self._align(o)
        return FMat(self.field, _addint(a, b), d)

    __radd__ = __add__

    def __sub__(self, o):
        self._check(o)
        a, b, d = self._align(o)
        return FMat(self.field, _addint(a, _negint(b)), d)

    def __neg__(self):
        return FMat(self.field, _negint(self.num), self.den, _norm=False)

    def scale(self, c):
        c = self.field(c)
        if self.field.p:
            return FMat(self.field, _mulscalar_int(self.num, int(c)))
        return FMat(self.field, _mulscalar_int(self.num, c.numerator), self.den * c.denominator)

    def __mul__(self, c):
        if isinstance(c, FMat):
            self._check(c)
            return FMat(self.field, _mulint(self.num, c.num), self.den * c.den)
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, o):
        self._check(o)
        if self.field.p:
            return FMat(self.field, modmatmul(self.num, o.num, self.field.p))
        return FMat(self.field, imatmul(self.num, o.num), self.den * o.den)

    def is_zero(self):
        if self.num.dtype == object:
            return all(x == 0 for x in self.num.flat)
        return not self.num.any()

    def __eq__(self, o):
        if not isinstance(o, FMat):
            return NotImplemented
        if o.field != self.field or o.shape != self.shape:
            return False
        return self.den == o.den and bool(np.array_equal(self.num, o.num))

    __hash__ = None

    def nonzero_mask(self):
        return self.num != 0

    def __repr__(self):
        return f"FMat({self.field!r}, shape={self.shape}, den={self.den})"

    def to_strs(self):
        f = self.field
        return _map_nested(self.num.tolist(), lambda n: f.to_str(self._scalar(n)))


def _map_nested(x, fn):
    if isinstance(x, list):
        return [_map_nested(y, fn) for y in x]
    return fn(x)


def _mulscalar_int(a, c):
    if c == 1:
        return a
    if a.dtype != object and maxabs(a) * abs(c) < _I64:
        return a * c
    return _shrink(_as_obj(a) * c)


def _addint(a, b):
    if a.dtype != object and b.dtype != object and maxabs(a) + maxabs(b) < _I64:
        return a + b
    return _shrink(_as_obj(a) + _as_obj(b))


def _negint(a):
    return -a


def _mulint(a, b):
    if a.dtype != object and b.dtype != object and maxabs(a) * maxabs(b) < _I64:
        return a * b
    return _shrink(_as_obj(a) * _as_obj(b))


def stack(mats, axis=0):
    mats = list(mats)
    field = mats[0].field
    if field.p:
        return FMat(field, np.stack([m.num for m in mats], axis=axis))
    L = reduce(lcm, (m.den for m in mats), 1)
    nums = [_mulscalar_int(m.num, L // m.den) for m in mats]
    if any(n.dtype == object for n in nums):
        nums = [_as_obj(n) for n in nums]
    return FMat(field, np.stack(nums, axis=axis), L)


def concat(mats, axis=0):
    mats = list(mats)
    field = mats[0].field
    if field.p:
        return FMat(field, np.concatenate([m.num for m in mats], axis=axis))
    L = reduce(lcm, (m.den for m in mats), 1)
    nums = [_mulscalar_int(m.num, L // m.den) for m in mats]
    if any(n.dtype == object for n in nums):
        nums = [_as_obj(n) for n in nums]
    return FMat(field, np.concatenate(nums, axis=axis), L)


def vec(field, values):
    return FMat.from_scalars(field, list(values))


def as_fmat(field, x):
    if isinstance(x, FMat):
        if x.field != field:
            raise ConfigError("mixed fields")
        return x
    return FMat.from_scalars(field, x)


def to_modp(m, p):
    """Reduce a QQ array mod p (den must be invertible mod p)."""
    num = m.num
    if num.dtype == object:
        r = (_as_obj(num) % p).astype(np.int64)
    else:
        r = num % p
    if m.den % p == 0:
        raise ZeroDivisionError("denominator divisible by p")
    if m.den != 1:
        r = modmatmul_scalar(r, pow(m.den, -1, p), p)
    return r


def modmatmul_scalar(a, c, p):
    if p < 2 ** 31:
        return (a * c) % p
    return (_as_obj(a) * c) % p

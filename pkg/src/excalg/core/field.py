"""Exact scalar fields: the rationals and prime fields F_p with p > 3."""
from fractions import Fraction
from math import isqrt


class ConfigError(ValueError):
    pass


def is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """Residue class mod a prime. Immutable."""
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "v", int(v) % p)

    def __setattr__(self, k, v):
        raise AttributeError("Fp is immutable")

    def _coerce(self, o):
        if isinstance(o, Fp):
            if o.p != self.p:
                raise ConfigError("mixed prime fields")
            return o.v
        if isinstance(o, int):
            return o % self.p
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is NotImplemented else Fp(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is NotImplemented else Fp(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is NotImplemented else Fp(w - self.v, self.p)

    def __mul__(self, o):
        w = self._coerce(o)
        return NotImplemented if w is NotImplemented else Fp(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._coerce(o)
        if w is NotImplemented:
            return w
        return Fp(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._coerce(o)
        return Fp(w * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, e):
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        w = self._coerce(o)
        return False if w is NotImplemented else self.v == w

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"


class Field:
    """A field tag. `QQ` is the rationals; `GF(p)` a prime field."""

    def __init__(self, p=0):
        if p:
            if not is_prime(p) or p <= 3:
                raise ConfigError(f"need a prime > 3, got {p}")
            if p >= 2 ** 31:
                raise ConfigError("prime fields are limited to p < 2**31")
        self.p = p

    @property
    def char(self):
        return self.p

    @property
    def is_rational(self):
        return self.p == 0

    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, Fp):
                raise ConfigError("cannot lift F_p element to QQ")
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ConfigError("mixed prime fields")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(x, self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def to_str(self, x):
        if self.p == 0:
            x = Fraction(x)
            return f"{x.numerator}/{x.denominator}"
        return f"{int(x)}/1"

    def from_str(self, s):
        return self(Fraction(s))

    def __eq__(self, o):
        return isinstance(o, Field) and o.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def spec(self):
        return "q" if self.p == 0 else f"fp:{self.p}"


QQ = Field()


def GF(p):
    return Field(p)


def parse_field(spec):
    s = str(spec).strip().lower()
    if s in ("q", "qq"):
        return QQ
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise ConfigError(f"bad field spec {spec!r}") from None
        return GF(p)
    raise ConfigError(f"bad field spec {spec!r}")


def rational_reconstruct(a, m):
    """Return Fraction n/d with n = a d mod m, |n|, d <= sqrt(m/2), or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)

"""Graded Lie algebras stored as sparse integer structure constants.

[e_i, e_j] = sum_k (data / den) e_k, where the (i, j) row of a CSR table over
the n*n ordered pairs lists the k's.  Over F_p the data are residues and
den = 1.
"""
import gzip
import io
import json
from fractions import Fraction
from functools import reduce
from math import lcm

import numpy as np
import scipy.sparse as sp

from ..core.exact import FMat, maxabs, _as_obj, _shrink
from ..core.field import ConfigError

_I62 = 2 ** 62


class GradedLieAlgebra:
    def __init__(self, field, labels, degrees, indptr, indices, data, den=1, provenance=None):
        self.field = field
        self.labels = list(labels)
        self.n = n = len(self.labels)
        self.dim = n
        self.degrees = np.asarray(degrees, dtype=np.int64)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.data = data
        self.den = den
        self.provenance = dict(provenance or {})
        if self.indptr.shape != (n * n + 1,):
            raise ValueError("indptr must have n*n + 1 entries")
        self._cmat = None
        self._killing = None
        self.extra = {}

    @property
    def name(self):
        return self.provenance.get("name", "g")

    # -- grading
    def graded_dims(self):
        ds = sorted(set(self.degrees.tolist()))
        return {d: int((self.degrees == d).sum()) for d in ds}

    def part(self, d):
        return np.flatnonzero(self.degrees == d)

    # -- constants
    def row(self, i, j):
        r = i * self.n + j
        a, b = self.indptr[r], self.indptr[r + 1]
        return self.indices[a:b], self.data[a:b]

    def const(self, i, j, k):
        ks, vs = self.row(i, j)
        hit = np.flatnonzero(ks == k)
        if hit.size == 0:
            return self.field(0)
        return self._scalar(int(vs[hit[0]]))

    def _scalar(self, v):
        if self.field.p:
            return self.field(v)
        return Fraction(v, self.den)

    def nnz(self):
        return int(self.indices.size)

    def cmat(self):
        """Sparse (n, n*n) matrix with entry [i, j*n + k] = data of c_ij^k (int64)."""
        if self._cmat is None:
            n = self.n
            rows = np.repeat(np.arange(n * n, dtype=np.int64), np.diff(self.indptr))
            i, j = np.divmod(rows, n)
            cols = j * n + self.indices
            d = self.data if self.data.dtype != object else None
            if d is None:
                raise OverflowError("structure constants do not fit in int64")
            self._cmat = sp.csr_matrix((d, (i, cols)), shape=(n, n * n), dtype=np.int64)
        return self._cmat

    def basis(self, i):
        return FMat.unit(self.field, self.n, i)

    def bracket_basis(self, i, j):
        ks, vs = self.row(i, j)
        num = np.zeros(self.n, dtype=np.int64 if self.data.dtype != object else object)
        if vs.size:
            num[ks] = vs
        return FMat(self.field, num, self.den)

    def _left(self, xnum):
        """xnum (length n integer vector) times cmat, exactly."""
        n = self.n
        C = self.cmat()
        if xnum.dtype != object and self.data.size:
            colmax = np.diff(C.tocsc().indptr).max() if C.nnz else 0
            if maxabs(xnum) * maxabs(self.data) * max(colmax, 1) < _I62:
                return np.asarray(C.T @ xnum.astype(np.int64)).reshape(-1)
        out = np.zeros(n * n, dtype=object)
        out[...] = 0
        Cc = C.tocoo()
        xo = _as_obj(xnum)
        np.add.at(out, Cc.col, _as_obj(Cc.data) * xo[Cc.row])
        return _shrink(out)

    def ad(self, x):
        """Dense matrix of ad(x) = [x, .] (acting on columns)."""
        n = self.n
        v = self._left(x.num).reshape(n, n)      # [j, k]
        num = v.T
        if self.field.p:
            return FMat(self.field, num % self.field.p if num.dtype != object else _shrink(num % self.field.p))
        return FMat(self.field, num, x.den * self.den)

    def ad_basis(self, i):
        return self.ad(self.basis(i))

    def bracket(self, x, y):
        return self.ad(x) @ y

    def to_jsonl(self):
        """Structure constants as JSON lines {i, j, k, c}, sorted."""
        lines = []
        f = self.field
        n = self.n
        for r in range(n * n):
            i, j = divmod(r, n)
            for u in range(self.indptr[r], self.indptr[r + 1]):
                c = f.to_str(self._scalar(int(self.data[u])))
                lines.append(json.dumps({"i": i, "j": j, "k": int(self.indices[u]), "c": c},
                                        sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"

    def header(self):
        return {"labels": self.labels, "degrees": self.degrees.tolist(),
                "provenance": self.provenance, "field": self.field.spec}

    def dump_bytes(self):
        """Deterministic gzip of the header line plus the structure constants."""
        body = json.dumps(self.header(), sort_keys=True, separators=(",", ":")) + "\n" + self.to_jsonl()
        buf = io.BytesIO()
        with gzip.GzipFile(fileobj=buf, mode="wb", mtime=0, filename="") as gz:
            gz.write(body.encode())
        return buf.getvalue()

    def __repr__(self):
        return f"<GradedLieAlgebra {self.name} dim={self.n} degrees={self.graded_dims()}>"


class Builder:
    """Collects brackets block by block and assembles the CSR table."""

    def __init__(self, field, n):
        self.field = field
        self.n = n
        self.blocks = []   # (i array, j array, k array, num array, den)

    def add(self, I, J, coords, kmap, antisym=True):
        """Rows t: [e_I[t], e_J[t]] = sum_c coords[t, c] e_kmap[c]."""
        I = np.asarray(I, dtype=np.int64)
        J = np.asarray(J, dtype=np.int64)
        kmap = np.asarray(kmap, dtype=np.int64)
        num = coords.num
        t, c = np.nonzero(num != 0)
        if t.size == 0:
            return
        vals = num[t, c]
        self.blocks.append((I[t], J[t], kmap[c], vals, coords.den))
        if antisym:
            off = I[t] != J[t]
            self.blocks.append((J[t][off], I[t][off], kmap[c][off], -vals[off], coords.den))

    def build(self, labels, degrees, provenance):
        F = self.field
        n = self.n
        if F.p:
            D = 1
        else:
            D = reduce(lcm, (b[4] for b in self.blocks), 1)
        Is, Js, Ks, Vs = [], [], [], []
        big = False
        for (I, J, K, V, d) in self.blocks:
            f = D // d
            V = _as_obj(V) * f if (V.dtype == object or maxabs(V) * f >= _I62) else V.astype(np.int64) * f
            big |= V.dtype == object
            Is.append(I)
            Js.append(J)
            Ks.append(K)
            Vs.append(V)
        if not Is:
            return GradedLieAlgebra(F, labels, degrees, np.zeros(n * n + 1, dtype=np.int64),
                                    np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), 1,
                                    provenance)
        I = np.concatenate(Is)
        J = np.concatenate(Js)
        K = np.concatenate(Ks)
        V = np.concatenate([_as_obj(v) for v in Vs]) if big else np.concatenate(Vs)
        key = (I * n + J) * n + K
        order = np.argsort(key, kind="stable")
        key, V = key[order], V[order]
        uk, start = np.unique(key, return_index=True)
        if uk.size != key.size:
            V = np.add.reduceat(V, start) if V.dtype != object else \
                np.array([sum(V[a:b]) for a, b in zip(start, list(start[1:]) + [key.size])], dtype=object)
            key = uk
        if F.p:
            V = V % F.p
        keep = V != 0
        key, V = key[keep], V[keep]
        if V.dtype == object:
            V = _shrink(V)
        # common content
        if not F.p and V.size:
            from math import gcd
            g = reduce(gcd, (int(x) for x in np.unique(np.abs(V)).tolist()), D)
            if g > 1:
                V = V // g
                D //= g
        rows = key // n
        indptr = np.zeros(n * n + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        indptr = np.cumsum(indptr)
        return GradedLieAlgebra(F, labels, degrees, indptr, key % n, V, D, provenance)


def check_same_field(*objs):
    fs = {o.field for o in objs}
    if len(fs) != 1:
        raise ConfigError("mixed fields")

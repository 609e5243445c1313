from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from excalg.core import _fallback, kernels
from excalg.core.exact import FMat
from excalg.core.field import ConfigError, Fp, parse_field
from excalg.core.linalg import inverse, nullspace, rank
from excalg.core.report import Check, jsonable
from excalg.lie import suites

small = st.integers(-20, 20)


def mat(F, rows):
    return FMat.from_scalars(F, rows)


def test_parse_field():
    assert parse_field("q").p == 0
    assert parse_field("QQ").spec == "q"
    assert parse_field("fp:7").spec == "fp:7"
    for bad in ("fp:3", "fp:9", "fp:x", "r", f"fp:{2**31 + 11}"):
        with pytest.raises(ConfigError):
            parse_field(bad)


def test_fp_arithmetic():
    a, b = Fp(3, 7), Fp(5, 7)
    assert a + b == Fp(1, 7)
    assert a * b == Fp(1, 7)
    assert a / b == a * Fp(3, 7)
    assert -a == Fp(4, 7)
    assert 1 / a == Fp(5, 7)


def test_fraction_to_fp():
    F = parse_field("fp:7")
    assert F(Fraction(1, 2)) == Fp(4, 7)
    assert F.to_str(F(-1)) == "6/1"


@settings(max_examples=50, deadline=None)
@given(st.lists(small, min_size=9, max_size=9), st.lists(small, min_size=9, max_size=9),
       st.integers(1, 9))
def test_matmul_matches_fractions(a, b, d):
    F = parse_field("q")
    A = [[Fraction(a[3 * i + j], d) for j in range(3)] for i in range(3)]
    B = [[Fraction(b[3 * i + j], 1) for j in range(3)] for i in range(3)]
    want = [[sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert (mat(F, A) @ mat(F, B)).tolist() == want


@settings(max_examples=50, deadline=None)
@given(st.lists(small, min_size=16, max_size=16), st.sampled_from(["q", "fp:7", "fp:10007"]))
def test_inverse_and_nullspace(vals, spec):
    F = parse_field(spec)
    M = mat(F, [vals[4 * i:4 * i + 4] for i in range(4)])
    ker = nullspace(M)
    for v in ker:
        assert (M @ v).is_zero()
    assert rank(M) + len(ker) == 4
    if not ker:
        assert M @ inverse(M) == FMat.eye(F, 4)


def test_rank_over_q_and_fp():
    rows = [[1, 2], [3, 6]]
    assert rank(mat(parse_field("q"), rows)) == 1
    rows = [[1, 2], [3, 1]]            # det = -5
    assert rank(mat(parse_field("q"), rows)) == 2
    assert rank(mat(parse_field("fp:5"), rows)) == 1


def test_fmat_immutable_and_strings():
    F = parse_field("q")
    M = mat(F, [[Fraction(1, 2), 0], [0, 3]])
    with pytest.raises(TypeError):
        M[0, 0] = 1
    assert M.to_strs() == [["1/2", "0/1"], ["0/1", "3/1"]]


def test_check_record_serializes():
    F = parse_field("q")
    c = Check("x", False, {"m": mat(F, [[1]])}, expected_fail=True)
    d = c.to_dict()
    assert d == {"name": "x", "status": "fail", "expected_fail": True, "witness": {"m": [["1/1"]]}}
    assert jsonable(Fraction(-3, 4)) == "-3/4"


@pytest.mark.skipif(not kernels.COMPILED, reason="compiled kernels not built")
@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_compiled_kernels_match_fallback(n, m, seed):
    from excalg.core import _kernels
    rng = np.random.default_rng(seed)
    p = 10007
    A = rng.integers(0, 4, size=(n, m)).astype(np.int64) * rng.integers(0, p, size=(n, m))
    R1, p1 = _kernels.rref_modp(A, p)
    R2, p2 = _fallback.rref_modp(A, p)
    assert list(p1) == list(p2) and np.array_equal(np.asarray(R1) % p, np.asarray(R2) % p)
    s1, b1, c1 = _kernels.greedy_rows_modp(A, p)
    s2, b2, c2 = _fallback.greedy_rows_modp(A, p)
    assert list(s1) == list(s2) and list(c1) == list(c2)
    assert np.array_equal(np.asarray(b1) % p, np.asarray(b2) % p)


@pytest.mark.skipif(not kernels.COMPILED, reason="compiled kernels not built")
def test_jacobi_scan_backends_agree(QQ):
    from excalg.core import _kernels
    L = suites.koechers(QQ)[0]
    tr = np.array([(i, j, k) for i in range(L.n) for j in range(L.n) for k in range(0, L.n, 3)],
                  dtype=np.int64)
    assert _kernels.jacobi_scan(L.indptr, L.indices, L.data, L.n, tr, 0) == -1
    assert _fallback.jacobi_scan(L.indptr, L.indices, L.data, L.n, tr, 0) == -1
    bad = L.data.copy()
    bad[0] += 1
    t1 = _kernels.jacobi_scan(L.indptr, L.indices, bad, L.n, tr, 0)
    t2 = _fallback.jacobi_scan(L.indptr, L.indices, bad, L.n, tr, 0)
    assert t1 == t2 >= 0


def test_backend_name():
    assert kernels.backend() in ("cython", "numpy")

import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from excalg import composition
from excalg.core.exact import FMat

coef = st.integers(-6, 6)
octo = st.lists(coef, min_size=8, max_size=8)


def zorn_norm(x):
    # ab - v.w, written out by hand
    return x[0] * x[7] - sum(x[1 + i] * x[4 + i] for i in range(3))


@pytest.fixture(scope="module")
def chain(QQ):
    return composition.build_chain(QQ)


def test_chain_dims_and_labels(chain):
    assert [A.dim for A in chain.algebras] == [1, 2, 4, 8]
    assert chain.C.labels == [f"e{i}" for i in range(8)]
    assert chain.B.labels == ["E11", "E12", "E21", "E22"]
    assert chain.C.unit.scalars() == [1, 0, 0, 0, 0, 0, 0, 1]


def test_unit_is_not_a_basis_vector(chain):
    C = chain.C
    assert all(C.unit != C.basis(i) for i in range(8))
    for i in range(8):
        assert C.mul(C.unit, C.basis(i)) == C.basis(i)


@settings(max_examples=60, deadline=None)
@given(octo, octo)
def test_octonion_norm_multiplicative(chain, x, y):
    C = chain.C
    F = C.field
    xy = C.mul(FMat.from_scalars(F, x), FMat.from_scalars(F, y))
    assert zorn_norm(xy.scalars()) == zorn_norm(x) * zorn_norm(y)
    assert C.norm(FMat.from_scalars(F, x)) == zorn_norm(x)


@settings(max_examples=60, deadline=None)
@given(st.lists(coef, min_size=4, max_size=4), st.lists(coef, min_size=4, max_size=4))
def test_split_quaternions_are_2x2_matrices(chain, x, y):
    B = chain.B
    F = B.field
    want = sympy.Matrix(2, 2, x) * sympy.Matrix(2, 2, y)
    got = B.mul(FMat.from_scalars(F, x), FMat.from_scalars(F, y))
    assert got.scalars() == list(want)
    assert B.norm(FMat.from_scalars(F, x)) == sympy.Matrix(2, 2, x).det()


@settings(max_examples=40, deadline=None)
@given(octo, octo)
def test_alternative_and_conjugation(chain, x, y):
    C = chain.C
    F = C.field
    x, y = FMat.from_scalars(F, x), FMat.from_scalars(F, y)
    assert C.mul(C.mul(x, x), y) == C.mul(x, C.mul(x, y))
    assert C.conj(C.mul(x, y)) == C.mul(C.conj(y), C.conj(x))
    assert C.mul(x, C.conj(x)) == C.unit.scale(C.norm(x))


def test_embeddings_are_unital_and_multiplicative(chain):
    rng = random.Random(1)
    for s, b in (("k", "K"), ("K", "B"), ("B", "C"), ("k", "C")):
        S, Bg = getattr(chain, s), getattr(chain, b)
        E = chain.embedding(s, b)
        assert E @ S.unit == Bg.unit
        for _ in range(20):
            x, y = S.random_element(rng), S.random_element(rng)
            assert E @ S.mul(x, y) == Bg.mul(E @ x, E @ y)
    with pytest.raises(ValueError):
        chain.embedding("C", "k")


def test_octonions_not_associative(chain):
    C = chain.C
    e = [C.basis(i) for i in range(8)]
    assert not C.associator(e[1], e[2], e[3]).is_zero()


def test_negative_control_detects_perturbation(chain):
    c = composition.negative_control(chain.C)
    assert c.passed and c.witness is not None


@pytest.mark.parametrize("spec", ["q", "fp:7", "fp:10007"])
def test_suite_passes(spec):
    from excalg.core.field import parse_field
    checks = composition.suite(parse_field(spec), samples=100, seed=3)
    assert [c.name for c in checks if not c.passed] == []

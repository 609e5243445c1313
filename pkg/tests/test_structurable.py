import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from excalg import composition, jordan, structurable
from excalg.core.exact import FMat

seeds = st.integers(0, 2**32 - 1)


@pytest.fixture(scope="module")
def chain(QQ):
    return composition.build_chain(QQ)


@pytest.fixture(scope="module")
def kB(chain):
    return structurable.build_tensor(chain.k, chain.B)


@pytest.fixture(scope="module")
def KC(chain):
    return structurable.build_tensor(chain.K, chain.C)


@pytest.fixture(scope="module")
def Fk(chain):
    return structurable.build_freudenthal(jordan.JordanAlgebra(chain.k))


def test_tensor_shapes(chain, kB, KC):
    assert (kB.dim, kB.skew_dim) == (4, 3)
    assert (KC.dim, KC.skew_dim) == (16, 8)
    assert KC.labels[0] == "k0*e0"
    assert KC.conj(KC.unit) == KC.unit


def test_freudenthal_shape(Fk):
    assert Fk.dim == 14 and Fk.skew_dim == 1
    assert Fk.labels[0] != Fk.labels[-1]
    e11 = FMat.unit(Fk.field, 14, 0)
    e22 = FMat.unit(Fk.field, 14, 13)
    assert Fk.mul(e11, e22).is_zero()
    assert Fk.mul(e11, e11) == e11


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_structurable_identity_small(kB, KC, Fk, seed):
    for A in (kB, KC, Fk):
        assert structurable.check_structurable(A, 3, seed).passed, A.name


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_involution_splits(KC, seed):
    rng = random.Random(seed)
    x = KC.random_element(rng)
    h = (x + KC.conj(x)).scale(Fraction(1, 2))
    s = x - h
    assert KC.is_skew(s)
    assert KC.conj(h) == h


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_triple_product_unit(KC, seed):
    rng = random.Random(seed)
    one = KC.one()
    x, z = KC.random_element(rng), KC.random_element(rng)
    assert KC.triple(one, one, z) == z
    assert KC.triple(x, one, z) == (KC.L(x) + KC.R(x - KC.conj(x))) @ z


def test_tensor_skew_decomposition(kB, KC):
    assert structurable.tensor_skew_check(kB).passed
    assert structurable.tensor_skew_check(KC).passed


def test_negative_control(kB, Fk):
    for A in (kB, Fk):
        c = structurable.negative_control(A)
        assert c.passed and c.witness is not None


def test_literal_freudenthal_rejected(chain):
    J = jordan.JordanAlgebra(chain.k)
    rep = structurable.literal_freudenthal_report(J, samples=5)
    assert [c.passed for c in rep] == [False, False]
    assert all(c.expected_fail for c in rep)
    with pytest.raises(structurable.StructurableError):
        structurable.build_freudenthal(J, literal=True)


def test_LL_needs_skew(kB):
    with pytest.raises(composition.PreconditionError):
        kB.LL(kB.unit, kB.unit)


def test_operator_relations_fixed_forms(KC):
    checks = structurable.operator_relation_checks(KC, samples=10, vtd=False)
    lit = [c for c in checks if "literal" in c.name]
    assert lit and all(not c.passed and c.expected_fail for c in lit)
    assert all(c.passed for c in checks if "literal" not in c.name)


def test_instrl_small(kB, Fk):
    assert kB.instrl().dim == 7
    assert Fk.instrl().dim == 22
    assert kB.instrl().closure_check() is None


@pytest.mark.slow
def test_suite_documented_failures(QQ):
    checks = structurable.suite(QQ, samples=60, seed=1)
    failing = [c for c in checks if not c.passed]
    assert len(failing) == 4
    assert all(c.expected_fail for c in failing)

import random

import pytest
from hypothesis import given, settings, strategies as st

from excalg import gsp6 as G
from excalg.core.exact import FMat

ent = st.integers(-5, 5)
mat2 = st.lists(ent, min_size=4, max_size=4)
seeds = st.integers(0, 2**32 - 1)


def nonsingular(v):
    return v[0] * v[3] - v[1] * v[2] != 0


def random_gsp6(F, rng):
    gens = G._generators(F, rng, k=3)
    return G._random_gsp6(F, rng, gens)


def test_similitude_examples(QQ):
    I = FMat.eye(QQ, 6)
    assert G.similitude(I) == 1
    assert G.similitude(I.scale(3)) == 9
    assert G.similitude(G.j3(QQ)) == 1
    with pytest.raises(G.NotInGSp6):
        G.SimMatrix(FMat.unit(QQ, 6, 0).reshape(6, 1) @ FMat.unit(QQ, 6, 0).reshape(1, 6) + I)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_similitude_multiplicative_and_transpose(QQ, seed):
    rng = random.Random(seed)
    x, y = random_gsp6(QQ, rng), random_gsp6(QQ, rng)
    xy = G.SimMatrix(x.m @ y.m)
    assert xy.sim == x.sim * y.sim
    assert G.similitude(x.m.T) == x.sim
    assert G.similitude(x.inv().m) == 1 / x.sim


@settings(max_examples=30, deadline=None)
@given(mat2.filter(nonsingular), mat2.filter(nonsingular))
def test_delta_eta_factorization(QQ, g, h):
    g, h = G.m2(QQ, *g), G.m2(QQ, *h)
    D, E, (p, q) = G.embed_delta_eta(g, h)
    assert G.similitude(D) == G.det2(g)
    assert G.similitude(E) == G.det2(h)
    assert G.delta(p) @ G.eta(q) == D @ E
    assert p == g and q == h


def test_factor_levi_rejects(QQ):
    with pytest.raises(G.DecompositionError):
        G.factor_levi(G.j3(QQ))


@settings(max_examples=30, deadline=None)
@given(mat2)
def test_u3_z_space(QQ, x):
    X = G.m2(QQ, *x)
    Z0, basis = G.z_solutions(X)
    assert len(basis) == 3
    assert G.similitude(G.u3(X, Z0)) == 1
    for b in basis:
        G.u3(X, Z0 + b)
    with pytest.raises(G.NotInShalika):
        G.u3(X, Z0 + G.m2(QQ, 1, 0, 0, 1))


def test_literal_unipotent_not_in_group(QQ):
    with pytest.raises(G.NotInGSp6):
        G.similitude(G.literal_display_element(QQ))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_shalika_closure_and_arg(QQ, seed):
    rng = random.Random(seed)
    s, t = G._random_shalika(QQ, rng), G._random_shalika(QQ, rng)
    st_ = s @ t
    assert st_.arg == s.arg + t.arg
    assert (s @ s.inv()).arg == 0
    assert G.in_S(st_.matrix.m) and G.in_ST(st_.matrix.m.T)
    assert G.shalika_arg_t(st_.matrix.m.T) == st_.arg


def test_not_in_shalika(QQ):
    assert not G.in_S(G.j3(QQ))
    with pytest.raises(G.NotInShalika):
        G.ShalikaElement(G.m2(QQ, 1, 1, 1, 1), G.eye2(QQ))


def test_weyl_elements(QQ):
    a, b, c, sig = G.weyl_and_sigma(QQ)
    one = FMat.eye(QQ, 6)
    assert (b @ b @ b @ b).m == one
    assert (c @ c @ c @ c).m == one
    assert set(sig) == {"1", "b", "bcb", "bacb", "bcabacb"}
    assert all(m.sim == 1 for m in sig.values())


def test_coset_audit():
    aud = G.double_coset_audit()
    assert (aud.group_order, aud.diagonal_order, aud.quotient_order) == (384, 8, 48)
    assert aud.double_coset_count == 5 and aud.sigma_match
    assert sorted(r["length"] for r in aud.representatives) == sorted(
        aud.details["sigma_lengths"].values())
    with pytest.raises(G.CosetEnumerationError):
        G.double_coset_audit(bound=100)


@pytest.mark.parametrize("case_id", sorted(G.CASES))
def test_case_outcomes(QQ, case_id):
    r = G.run_case(case_id, seeds=10, field=QQ)
    assert r["pass"] == (case_id not in G.KNOWN_FAILURES)
    if not r["pass"]:
        assert r["witness"] is not None
        failing = [a for a in r["assertions"] if a["gating"] and not a["pass"]]
        assert failing and all("first_failing_seed" in a for a in failing)


def test_case_report_format(QQ):
    r = G.dist_case_check("b.u3zero", 4, QQ)
    assert set(r) == {"case_id", "seeds", "assertions", "pass", "parameters"}
    assert r["seeds"] == [4]
    for a in r["assertions"]:
        assert set(a) >= {"name", "lhs", "rhs", "pass", "gating"}
    assert G.dist_case_check("b.u3zero", 4, QQ) == r


def test_unknown_case(QQ):
    with pytest.raises(KeyError):
        G.dist_case_check("nope", 0, QQ)


def test_cases_over_fp(QQ):
    from excalg.core.field import parse_field
    F = parse_field("fp:10007")
    for cid in ("σ1.transpose", "bcb.offsupport", "bacb.u1nonzero"):
        r = G.run_case(cid, seeds=5, field=F)
        assert r["pass"] == (cid not in G.KNOWN_FAILURES)


def test_dual_numbers(QQ):
    rng = random.Random(0)
    x = G.DualNumberMat(G.m2(QQ, 2, 1, 1, 1), G.m2(QQ, 1, 2, 3, 4), G.m2(QQ, 0, 1, 0, 0))
    assert x @ x.inv() == G.DualNumberMat.identity(QQ)
    s = G._random_shalika(QQ, rng)
    assert G.naive_dual_ring_map(s).is_invertible()


def test_dual_ring_obstruction(QQ):
    with pytest.raises(G.DualRingError) as e:
        G.derive_coordinate_change(QQ)
    assert e.value.witness is not None
    ob = G.monomorphism_obstruction(QQ)
    assert ob == {"commutator_rank": 4, "trace_free_dim": 3, "injective_possible": False}
    assert G.tangent_dimension(QQ) == 11


def test_suites_over_fp(F7):
    assert all(c.passed for c in G.cosets_suite(F7))
    checks = G.shalika_suite(F7, samples=20, pairs=50, seeds=5)
    assert all(c.expected_fail for c in checks if not c.passed)

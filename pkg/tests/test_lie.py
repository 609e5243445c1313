import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from excalg.core.exact import FMat
from excalg.lie import analysis as an
from excalg.lie import suites
from excalg.lie.algebra import GradedLieAlgebra


@pytest.fixture(scope="module")
def sp6(QQ):
    return suites.koechers(QQ)[0]


def perturb(L, t=0, delta=1):
    data = L.data.copy()
    data[t] += delta
    return GradedLieAlgebra(L.field, L.labels, L.degrees, L.indptr, L.indices, data, L.den,
                            {**L.provenance, "name": L.name + "~"})


def test_koecher_grading(QQ):
    got = [(L.n, L.graded_dims()) for L in suites.koechers(QQ)]
    assert [n for n, _ in got] == [21, 35, 66, 133]
    for (n, g), m in zip(got, (6, 9, 15, 27)):
        assert g[-1] == g[1] == m


def test_allison_grading_fp(F7):
    Ts = suites.allisons(F7, "tensor")
    assert [L.n for L in Ts[:3]] == [21, 52, 78]
    assert [L.graded_dims()[2] for L in Ts[:3]] == [3, 7, 8]
    assert [L.graded_dims()[-2] for L in Ts[:3]] == [3, 7, 8]


def test_labels_unique(QQ):
    for L in suites.koechers(QQ)[:2] + suites.allisons(QQ, "tensor")[:2]:
        assert len(set(L.labels)) == L.n


def test_structure_checks_small(sp6):
    assert an.antisymmetry_check(sp6).passed
    assert an.grading_check(sp6).passed
    c = an.jacobi_check(sp6, "exhaustive")
    assert c.passed and c.detail["triples"] == 21 ** 3


def test_perturbed_jacobi_fails(sp6):
    bad = perturb(sp6)
    c = an.jacobi_check(bad, "exhaustive")
    assert not c.passed and len(c.witness) == 3


def test_killing_matches_dense_trace(sp6):
    K, r = an.killing(sp6)
    assert r == 21
    ads = [sp6.ad_basis(i) for i in range(sp6.n)]
    for i in range(0, 21, 4):
        for j in range(0, 21, 3):
            tr = sum((ads[i] @ ads[j])[k, k] for k in range(21))
            assert K[i, j] == tr


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=21, max_size=21),
       st.lists(st.integers(-3, 3), min_size=21, max_size=21))
def test_ad_is_a_representation(sp6, x, y):
    F = sp6.field
    x, y = FMat.from_scalars(F, x), FMat.from_scalars(F, y)
    ax, ay = sp6.ad(x), sp6.ad(y)
    assert ax @ ay - ay @ ax == sp6.ad(sp6.bracket(x, y))
    assert sp6.bracket(x, y) == -sp6.bracket(y, x)


def test_killing_checks_pass(QQ):
    for L in suites.allisons(QQ, "tensor")[:2]:
        assert all(c.passed for c in an.killing_checks(L, samples=50))


def test_derivations(QQ):
    fam = suites.family(QQ)
    chain = fam["chain"]
    g2 = an.operator_span(an.derivation_algebra(chain.C))
    assert (g2["dim"], g2["derived_dim"], g2["center_dim"]) == (14, 14, 0)
    assert len(an.derivation_algebra(chain.B)) == 3
    assert len(an.derivation_algebra(chain.C, fixed=chain.embedding("B", "C"))) == 3
    assert len(an.derivation_algebra(chain.k)) == 0


def test_induced_embeddings(QQ):
    fam = suites.family(QQ)
    Ks, Js, chain = suites.koechers(QQ), fam["J"], fam["chain"]
    from excalg import jordan
    E = chain.embedding("k", "K")
    e = an.induced_embedding(Ks[0], Ks[1], jordan.embedding_matrix(Js[0], Js[1], E))
    assert all(c.passed for c in e.check())
    with pytest.raises(an.EmbeddingError):
        an.induced_embedding(Ks[0], suites.allisons(QQ, "tensor")[0], E)


def test_levi_data(QQ):
    assert suites.levi_data(suites.koechers(QQ)[0]) == {"dim": 9, "derived": 8, "center": 1}
    assert suites.levi_data(suites.allisons(QQ, "tensor")[2]) == {"dim": 30, "derived": 28, "center": 2}


@pytest.mark.parametrize("i,want", [(0, 14), (1, 8), (2, 3)])
def test_dual_pair_centralizers(QQ, i, want):
    d = suites.pair_data(QQ, i)
    assert d["dim"] == d["aut_dim"] == want
    assert d["center"] == 0 and d["mutual"]


def test_dump_is_deterministic(sp6):
    assert sp6.dump_bytes() == sp6.dump_bytes()
    head = sp6.header()
    assert len(head["labels"]) == 21 and head["labels"][0] == "a-.E1"
    assert head["provenance"]["construction"] == "koecher"
    first = sp6.to_jsonl().splitlines()[0]
    assert set(json.loads(first)) == {"i", "j", "k", "c"}


def test_koecher_suite_fp(F7):
    checks = suites.koecher_suite(F7, samples=20)
    assert [c.name for c in checks if not c.passed] == []
    assert np.all(suites.koechers(F7)[0].data >= 0)


def test_killing_degenerates_when_p_divides_2h():
    from excalg.core.field import parse_field
    F5 = parse_field("fp:5")
    Ks = suites.koechers(F5)
    ranks = [an.killing(L)[1] for L in Ks]
    assert [r == L.n for r, L in zip(ranks, Ks)] == [True, True, False, True]
    assert [suites.killing_degenerate_mod_p(L) for L in Ks] == [False, False, True, False]
    checks = suites.koecher_suite(F5, samples=10)
    bad = [c for c in checks if not c.passed]
    assert [c.name for c in bad] == ["koecher(J_B): Killing form nondegenerate"]
    assert bad[0].expected_fail and "2h^v = 20" in bad[0].detail["reason"]

"""Acceptance criteria 1-11.  Each test logs one PASS/FAIL line, shown in the terminal summary.

Criteria 7, 9 and 10 contain sub-checks whose literal statements are false; the
full criterion is marked xfail(strict=True) and the attainable parts are
asserted separately.
"""
import re
import time
from pathlib import Path

import pytest

from excalg import cli, composition, gsp6, jordan, structurable
from excalg.lie import analysis as an
from excalg.lie import suites

GOLDEN = Path(__file__).parent / "golden"


def _log(log, n, ok, detail, t0):
    log.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - t0:.1f}s) {detail}")


def _all13(F):
    return suites.koechers(F) + suites.allisons(F, "tensor") + suites.allisons(F, "freudenthal")


def test_criterion_1_tensor_tables(QQ, acceptance_log):
    t0 = time.perf_counter()
    Ts = suites.allisons(QQ, "tensor")
    dims = tuple(L.n for L in Ts)
    skew = tuple(L.graded_dims().get(2, 0) for L in Ts)
    adim = tuple(L.graded_dims().get(1, 0) for L in Ts)
    ok = dims == (21, 52, 78, 133, 248) and skew == (3, 7, 8, 10, 14) and adim == (4, 8, 16, 32, 64)
    _log(acceptance_log, 1, ok, f"dims {dims}, Z_A {skew}, U_A/Z_A {adim}", t0)
    assert ok
    assert time.perf_counter() - t0 < 300


def test_criterion_2_koecher_freudenthal_dims(QQ, acceptance_log):
    t0 = time.perf_counter()
    Ks = suites.koechers(QQ)
    Fs = suites.allisons(QQ, "freudenthal")
    k = (tuple(L.n for L in Ks), tuple(L.graded_dims()[0] for L in Ks))
    f = (tuple(L.n for L in Fs), tuple(L.graded_dims()[0] for L in Fs))
    ok = k == ((21, 35, 66, 133), (9, 17, 36, 79)) and f == ((52, 78, 133, 248), (22, 36, 67, 134))
    _log(acceptance_log, 2, ok, f"koecher {k}, freudenthal {f}", t0)
    assert ok


def test_criterion_3_jacobi(QQ, acceptance_log):
    t0 = time.perf_counter()
    bad = []
    for L in _all13(QQ):
        modes = ["exhaustive"] + (["sampled"] if L.n >= 133 else [])
        for mode in modes:
            if not an.jacobi_check(L, mode).passed:
                bad.append((L.name, mode))
    ok = not bad and an.SAMPLED_TRIPLES == 100_000
    _log(acceptance_log, 3, ok, f"13 algebras exhaustive (E8 included), plus {an.SAMPLED_TRIPLES} sampled "
                                f"triples for dims 133 and 248; violations {bad or 'none'}", t0)
    assert ok
    assert time.perf_counter() - t0 < 600


def test_criterion_4_killing(QQ, acceptance_log):
    t0 = time.perf_counter()
    bad = []
    for L in _all13(QQ):
        for c in an.killing_checks(L, samples=0):
            if not c.passed:
                bad.append(c.name)
    ok = not bad
    _log(acceptance_log, 4, ok, f"full rank and graded orthogonality on 13 algebras; failures {bad or 'none'}",
         t0)
    assert ok


def test_criterion_5_derivations(QQ, acceptance_log):
    t0 = time.perf_counter()
    C = composition.build_chain(QQ)
    g2 = an.operator_span(an.derivation_algebra(C.C))
    a2 = an.operator_span(an.derivation_algebra(C.C, fixed=C.embedding("K", "C")))
    ok = (g2["dim"], g2["derived_dim"], g2["center_dim"]) == (14, 14, 0) and a2["dim"] == 8
    _log(acceptance_log, 5, ok, f"Der(C) {g2['dim']} (derived {g2['derived_dim']}, center "
                                f"{g2['center_dim']}); Der(C/K) {a2['dim']}", t0)
    assert ok
    assert time.perf_counter() - t0 < 60


def _row(kind, H, E, Hp=None):
    for i, r in enumerate(suites.DUAL_PAIRS):
        if r["kind"] == kind and r["H"] == H and r["E"] == E and r.get("H'") == Hp:
            return i
    raise KeyError((kind, H, E, Hp))


def test_criterion_6_dual_pair_centralizers(QQ, acceptance_log):
    t0 = time.perf_counter()
    got = (suites.pair_data(QQ, _row("jordan", "k", "C"))["dim"],
           suites.pair_data(QQ, _row("jordan", "K", "C"))["dim"],
           suites.pair_data(QQ, _row("tensor", "k", "C", "C"))["dim"])
    ok = got == (14, 8, 14)
    _log(acceptance_log, 6, ok, f"centralizer dims {got}", t0)
    assert ok
    assert time.perf_counter() - t0 < 900


def _criterion_7(F):
    parts = {}
    comp = composition.suite(F, samples=1000, seed=0)
    parts["composition"] = all(c.passed for c in comp)
    Js = suites.family(F)["J"]
    adj = []
    for J in Js:
        adj += [c for c in jordan.jordan_checks(J, samples=1000, seed=0) if "(j#)# " in c.name]
    parts["(j#)# = N(j) j"] = all(c.passed for c in adj) and len(adj) == 4
    parts["j x j# = N(j) j"] = all(jordan.cross_identity_check(J, 1000).passed for J in Js)
    fam = suites.family(F)
    algs = {A.name: A for A in fam["tensor"] + fam["freudenthal"]}
    quart = [structurable.check_structurable(algs[n], 500, seed=i)
             for i, n in enumerate(("B(x)C", "C(x)C", "F_k", "F_C"))]
    parts["quartic identity"] = all(c.passed for c in quart)
    neg = [composition.negative_control(fam["chain"].C), structurable.negative_control(algs["B(x)C"]),
           structurable.negative_control(algs["F_C"])]
    parts["negative controls fail"] = all(c.passed for c in neg)
    return parts


@pytest.fixture(scope="module")
def crit7(QQ):
    return _criterion_7(QQ)


@pytest.mark.xfail(strict=True, reason="j x j# = N(j) j is false in every cubic Jordan algebra here")
def test_criterion_7_identity_suites(crit7, acceptance_log):
    t0 = time.perf_counter()
    ok = all(crit7.values())
    failing = [k for k, v in crit7.items() if not v]
    _log(acceptance_log, 7, ok, f"failing parts: {failing or 'none'}", t0)
    assert ok


def test_criterion_7_attainable_parts(crit7):
    assert {k for k, v in crit7.items() if not v} == {"j x j# = N(j) j"}


def test_criterion_8_weyl_audit(acceptance_log):
    t0 = time.perf_counter()
    aud = gsp6.double_coset_audit()
    dt = time.perf_counter() - t0
    ok = aud.quotient_order == 48 and aud.double_coset_count == 5 and aud.sigma_match and dt < 1
    _log(acceptance_log, 8, ok, f"|W| = {aud.quotient_order}, {aud.double_coset_count} double cosets, "
                                f"minimal reps = Sigma: {aud.sigma_match}", t0)
    assert ok


@pytest.fixture(scope="module")
def registry(QQ):
    t0 = time.perf_counter()
    return gsp6.run_registry(100, QQ), time.perf_counter() - t0


@pytest.mark.xfail(strict=True, reason="five case checks fail on random data")
def test_criterion_9_registry(registry, acceptance_log):
    reports, dt = registry
    failing = [r["case_id"] for r in reports if not r["pass"]]
    ok = not failing and dt < 60
    acceptance_log.append(f"criterion 9: {'PASS' if ok else 'FAIL'} ({dt:.1f}s) "
                          f"{11 - len(failing)}/11 cases pass on 100 seeds; failing {failing}")
    assert ok


def test_criterion_9_attainable_parts(registry):
    reports, dt = registry
    assert dt < 60
    assert {r["case_id"] for r in reports if not r["pass"]} == gsp6.KNOWN_FAILURES
    for r in reports:
        if not r["pass"]:
            assert r["witness"] is not None


@pytest.fixture(scope="module")
def dual(QQ):
    t0 = time.perf_counter()
    return {c.name: c for c in gsp6.dual_ring_checks(QQ, pairs=1000)}, time.perf_counter() - t0


@pytest.mark.xfail(strict=True, reason="no monomorphism S -> GL2(k[eps]/eps^3) with phi(Delta(g)) = g")
def test_criterion_10_dual_ring(dual, acceptance_log):
    checks, dt = dual
    hom = checks["dual ring: phi(st) = phi(s)phi(t) on 1000 pairs"]
    inj = checks["dual ring: injective on 200 samples"]
    tan = checks["dual ring: tangent dimension 11 vs 12"]
    ok = hom.passed and inj.passed and tan.passed and dt < 60
    acceptance_log.append(f"criterion 10: {'PASS' if ok else 'FAIL'} ({dt:.1f}s) homomorphism "
                          f"{hom.passed}, injective {inj.passed}, tangent 11 vs 12 {tan.passed}")
    assert ok


def test_criterion_10_attainable_parts(dual):
    checks, dt = dual
    assert checks["dual ring: injective on 200 samples"].passed
    assert checks["dual ring: tangent dimension 11 vs 12"].passed
    assert not checks["dual ring: coordinate change derived"].passed
    assert checks["dual ring: coordinate change derived"].witness is not None
    assert checks["dual ring: commutator pairing fits a trace-free image"].witness["commutator_rank"] == 4


def golden_name(name):
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_") + ".jsonl.gz"


def test_criterion_11_determinism(QQ, acceptance_log):
    t0 = time.perf_counter()
    r1, _ = cli.run_verify("q", "cosets", seed=1)
    r2, _ = cli.run_verify("q", "cosets", seed=1)
    r3, _ = cli.run_verify("q", "composition", seed=1, samples=100)
    r4, _ = cli.run_verify("q", "composition", seed=1, samples=100)
    same = cli.dumps(r1) == cli.dumps(r2) and cli.dumps(r3) == cli.dumps(r4)
    diff = [n for n in cli.algebra_names()
            if cli.build_algebra(n, QQ).dump_bytes() != (GOLDEN / golden_name(n)).read_bytes()]
    ok = same and not diff
    _log(acceptance_log, 11, ok, f"identical reports {same}; golden mismatches {diff or 'none'}", t0)
    assert ok

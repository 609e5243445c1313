import pytest

from excalg import tables


@pytest.fixture(scope="module")
def T(QQ):
    return tables.all_tables(QQ)


def cells(t, row):
    return dict(zip(t["columns"], dict(t["rows"])[row]))


def test_type_dim():
    assert tables.type_dim("E8") == 248
    assert tables.type_dim("D5xA1") == 48
    assert tables.type_dim("A1xA2xA2") == 19


def test_tensor_rows(T):
    t = T["tensor"]
    assert [c["computed"] for c in cells(t, "Dimension of Z_A").values()] == [3, 7, 8, 10, 14]
    assert [c["computed"] for c in cells(t, "Dimension of U_A / Z_A").values()] == [4, 8, 16, 32, 64]
    g = cells(t, "Type of G_A")
    assert [c["computed"]["dim"] for c in g.values()] == [21, 52, 78, 133, 248]
    assert all(c["computed"]["killing_rank"] == c["computed"]["dim"] for c in g.values())


def test_unresolved_levi_label(T):
    c = cells(T["tensor"], "Type of Levi L_A")["K(x)C"]
    assert c["match"] is None
    assert c["computed"] == {"dim": 30, "derived": 28, "center": 2}
    assert c["display"] == "computed: dim 30 data"


def test_freudenthal_rows(T):
    t = T["freudenthal"]
    assert [c["computed"] for c in cells(t, "Dimension of F").values()] == [14, 20, 32, 56]
    assert all(c["match"] for c in cells(t, "Type of Levi L_F").values())


def test_jordan_rows(T):
    t = T["jordan"]
    assert [c["computed"] for c in cells(t, "Dimension of J").values()] == [6, 9, 15, 27]
    assert all(c["match"] for row in ("Type of G_J", "Type of Levi L_J") for c in cells(t, row).values())


def test_mismatches(T):
    assert tables.mismatches(T) == ["dual_pairs: k/B target", "dual_pairs: B/C sub"]


def test_dual_pair_rows(T):
    rows = T["dual_pairs"]["rows"]
    assert len(rows) == 9
    assert all(r["computed"]["mutual"] for r in rows)
    assert [r["computed"]["dim"] for r in rows] == [14, 8, 3, 3, 14, 8, 3, 14, 3]


def test_markdown(T):
    md = tables.to_markdown(T)
    assert "computed: dim 30 data" in md
    assert md.count("MISMATCH") == 2
    assert "| Dimension of Z_A | 3 / 3 | 7 / 7 | 8 / 8 | 10 / 10 | 14 / 14 |" in md

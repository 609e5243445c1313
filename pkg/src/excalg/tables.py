"""Recomputed dimension and type tables, laid out beside the tabulated values."""
from .lie import suites
from .lie.analysis import killing

TYPE_DIM = suites.TYPE_DIM


def type_dim(label):
    """Dimension of a product of simple types such as 'A1xA2xA2'."""
    return sum(TYPE_DIM[t] for t in label.split("x"))


def _type_cell(tabulated, L):
    _, rank = killing(L)
    ok = type_dim(tabulated) == L.n and rank == L.n
    return {"tabulated": tabulated, "computed": {"dim": L.n, "killing_rank": rank}, "match": ok}


def _levi_cell(tabulated, L, note=None):
    d = suites.levi_data(L)
    # a Levi of a maximal graded parabolic: semisimple part of the stated type plus a center
    ok = tabulated is not None and d["derived"] == type_dim(tabulated) and d["center"] >= 1 and \
        d["derived"] + d["center"] == d["dim"]
    cell = {"tabulated": tabulated, "computed": d, "match": ok}
    if note:
        cell["note"] = note
    return cell


def _dim_cell(tabulated, got):
    return {"tabulated": tabulated, "computed": got, "match": tabulated == got}


def jordan_table(field):
    Ks = suites.koechers(field)
    cols = ["k", "K", "B", "C"]
    Js = suites.family(field)["J"]
    return {
        "title": "Jordan algebras",
        "header": "Composition Algebra", "columns": cols,
        "rows": [
            ("Dimension of J", [_dim_cell(p, J.dim) for p, J in zip((6, 9, 15, 27), Js)]),
            ("Type of G_J", [_type_cell(p, L) for p, L in zip(("C3", "A5", "D6", "E7"), Ks)]),
            ("Type of Levi L_J", [_levi_cell(p, L) for p, L in zip(("A2", "A2xA2", "A5", "E6"), Ks)]),
        ],
    }


KC_NOTE = ("tabulated label A1xA2xA2 (dim 19) cannot be the semisimple part of a 30-dim Levi; "
           "computed data reported, no type asserted")


def tensor_table(field):
    Ts = suites.allisons(field, "tensor")
    cols = ["k(x)B", "k(x)C", "K(x)C", "B(x)C", "C(x)C"]
    levi = []
    for p, L in zip(("A1xA1", "B3", None, "D5xA1", "D7"), Ts):
        if p is None:
            c = _levi_cell(None, L, KC_NOTE)
            c["tabulated"] = "A1xA2xA2"
            c["match"] = None
            c["display"] = f"computed: dim {c['computed']['dim']} data"
            levi.append(c)
        else:
            levi.append(_levi_cell(p, L))
    return {
        "title": "Tensor products of composition algebras",
        "header": "A", "columns": cols,
        "rows": [
            ("Type of G_A", [_type_cell(p, L) for p, L in zip(("C3", "F4", "E6", "E7", "E8"), Ts)]),
            ("Type of Levi L_A", levi),
            ("Dimension of U_A / Z_A", [_dim_cell(p, L.graded_dims().get(1, 0))
                                        for p, L in zip((4, 8, 16, 32, 64), Ts)]),
            ("Dimension of Z_A", [_dim_cell(p, L.graded_dims().get(2, 0))
                                  for p, L in zip((3, 7, 8, 10, 14), Ts)]),
        ],
    }


def freudenthal_table(field):
    Fs = suites.allisons(field, "freudenthal")
    cols = ["J_k", "J_K", "J_B", "J_C"]
    return {
        "title": "Freudenthal structurable algebras",
        "header": "Jordan Algebra", "columns": cols,
        "rows": [
            ("Dimension of F", [_dim_cell(p, L.extra["source"].dim) for p, L in zip((14, 20, 32, 56), Fs)]),
            ("Type of G_F", [_type_cell(p, L) for p, L in zip(("F4", "E6", "E7", "E8"), Fs)]),
            ("Type of Levi L_F", [_levi_cell(p, L) for p, L in zip(("C3", "A5", "D6", "E7"), Fs)]),
        ],
    }


def dual_pair_table(field):
    rows = []
    for i, row in enumerate(suites.DUAL_PAIRS):
        d = suites.pair_data(field, i)
        aut_ok = d["dim"] == d["aut_dim"] == type_dim(row["aut"]) and d["mutual"]
        sub_ok = d["source_dim"] == type_dim(row["sub"])
        tgt_ok = d["target_dim"] == type_dim(row["target"])
        rows.append({**{k: row[k] for k in ("kind", "H", "E") if k in row}, "H'": row.get("H'"),
                     "tabulated": {"aut": row["aut"], "sub": row["sub"], "target": row["target"]},
                     "computed": d, "match": {"aut": aut_ok, "sub": sub_ok, "target": tgt_ok}})
    return {"title": "Dual pairs", "rows": rows}


def all_tables(field):
    return {"jordan": jordan_table(field), "tensor": tensor_table(field),
            "freudenthal": freudenthal_table(field), "dual_pairs": dual_pair_table(field)}


def mismatches(tables):
    out = []
    for key in ("jordan", "tensor", "freudenthal"):
        t = tables[key]
        for name, cells in t["rows"]:
            for col, c in zip(t["columns"], cells):
                if c["match"] is False:
                    out.append(f"{key}: {name} [{col}]")
    for r in tables["dual_pairs"]["rows"]:
        for part, ok in r["match"].items():
            if not ok:
                hp = r.get("H'")
                out.append(f"dual_pairs: {r['H']}/{r['E']}{'/' + hp if hp else ''} {part}")
    return out


def _fmt(c):
    if "display" in c:
        return c["display"]
    comp = c["computed"]
    if isinstance(comp, dict) and "derived" in comp:
        got = f"dim {comp['dim']} = {comp['derived']} + {comp['center']}"
    elif isinstance(comp, dict):
        got = f"dim {comp['dim']}"
    else:
        got = str(comp)
    flag = "" if c["match"] else " (MISMATCH)"
    return f"{c['tabulated']} / {got}{flag}"


def to_markdown(tables):
    lines = []
    for key in ("jordan", "tensor", "freudenthal"):
        t = tables[key]
        lines.append(f"### {t['title']}")
        lines.append("")
        lines.append("| " + " | ".join([t["header"]] + t["columns"]) + " |")
        lines.append("|" + "---|" * (len(t["columns"]) + 1))
        for name, cells in t["rows"]:
            lines.append("| " + " | ".join([name] + [_fmt(c) for c in cells]) + " |")
        notes = [c["note"] for _, cells in t["rows"] for c in cells if "note" in c]
        for n in notes:
            lines.append("")
            lines.append(f"Note: {n}.")
        lines.append("")
    lines.append("### Dual pairs")
    lines.append("")
    lines.append("| H | E | H' | Aut_{E/H} x G' | G | centralizer dim | mutual |")
    lines.append("|---|---|---|---|---|---|---|")
    for r in tables["dual_pairs"]["rows"]:
        p, d, m = r["tabulated"], r["computed"], r["match"]
        pair = f"{p['aut']} x {p['sub']}" + ("" if m["sub"] else f" (MISMATCH: dim {d['source_dim']})")
        tgt = p["target"] + ("" if m["target"] else f" (MISMATCH: dim {d['target_dim']})")
        hp = r.get("H'") or ""
        lines.append(f"| {r['H']} | {r['E']} | {hp} | {pair} | {tgt} | "
                     f"{d['dim']} | {'yes' if d['mutual'] else 'no'} |")
    lines.append("")
    lines.append("Cells read `tabulated / computed`; types are compared through dimensions, "
                 "Killing rank and the derived/center split of the Levi.")
    return "\n".join(lines) + "\n"

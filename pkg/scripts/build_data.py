"""Regenerate src/adinkralab/data from hand-transcribed matrices.

Every matrix maps the upper level to the lower one (rows are lower vertices).
Each document is validated and Laplacian-checked before it is written.

    python3 scripts/build_data.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from adinkralab import adinkra as ad  # noqa: E402
from adinkralab import codes, complexes, formats  # noqa: E402
from adinkralab.exactalg import PolyMatrix, VariableSet  # noqa: E402

DATA = ROOT / "src" / "adinkralab" / "data"


def M(sig: VariableSet, *rows: str) -> PolyMatrix:
    grid = [[formats.parse_poly(sig, x) for x in r.split()] for r in rows]
    return PolyMatrix(sig.n_vars, grid, len(grid), len(grid[0]))


def col(sig: VariableSet, entries: str) -> PolyMatrix:
    return M(sig, *entries.split())


E = VariableSet.euclidean

N4_IRR = ("l1 l2 l3 l4", "l2 -l1 l4 -l3", "l3 -l4 -l1 l2", "l4 l3 -l2 -l1")
N4_OTHER = ("l1 l2 l3 l4", "l2 -l1 -l4 l3", "l3 l4 -l1 -l2", "l4 -l3 l2 -l1")
N4_RAISING = ("l1 l2 l3 -l4", "-l2 l1 l4 l3", "-l3 -l4 l1 -l2", "l4 -l3 l2 l1")
N4_KOSZUL_VALISE = (
    "l1 l2 l3 l4 0 0 0 0",
    "-l2 l1 0 0 l3 0 0 l4",
    "0 -l3 l2 0 l1 l4 0 0",
    "-l3 0 l1 0 -l2 0 l4 0",
    "0 0 -l4 l3 0 l2 l1 0",
    "0 -l4 0 l2 0 -l3 0 l1",
    "-l4 0 0 l1 0 0 -l3 -l2",
    "0 0 0 0 -l4 l1 -l2 l3",
)
N8 = (
    "l1 l2 l3 l4 l5 l6 l7 l8",
    "l2 -l1 -l4 l3 -l6 l5 l8 -l7",
    "l3 l4 -l1 -l2 -l7 -l8 l5 l6",
    "l4 -l3 l2 -l1 -l8 l7 -l6 l5",
    "l5 l6 l7 l8 -l1 -l2 -l3 -l4",
    "l6 -l5 l8 -l7 l2 -l1 l4 -l3",
    "l7 -l8 -l5 l6 l3 -l4 -l1 l2",
    "l8 l7 -l6 -l5 l4 l3 -l2 -l1",
)
N6_A1 = (
    ("l1 l2 l3 l4 l5 l6 0 0", "l2 -l1 -l4 l3 -l6 l5 0 0"),
    ("l3 l4 l5 l6 0 0", "l4 -l3 l6 -l5 0 0", "-l1 l2 0 0 -l5 -l6", "-l2 -l1 0 0 l6 -l5",
     "0 0 -l1 l2 l3 l4", "0 0 -l2 -l1 -l4 l3", "l5 -l6 -l3 l4 -l1 -l2", "l6 l5 -l4 -l3 l2 -l1"),
)
N6_A2 = (
    ("l1 l2 l3 l4 l5 l6 0 0", "l3 l4 -l1 -l2 0 0 l5 l6"),
    ("l2 l4 l5 l6 0 0", "-l1 -l3 l6 -l5 0 0", "-l4 l2 0 0 -l5 -l6", "l3 -l1 0 0 l6 -l5",
     "-l6 0 -l1 l2 l3 l4", "l5 0 -l2 -l1 -l4 l3", "0 -l6 -l3 l4 -l1 -l2", "0 l5 -l4 -l3 l2 -l1"),
)
N7_1771 = (
    ("l7 -l6 -l5 l4 l3 -l2 l1",),
    ("l2 l1 l4 -l3 l6 -l5 0", "l3 -l4 l1 l2 l7 0 -l5", "l4 l3 -l2 l1 0 -l7 l6",
     "l5 -l6 -l7 0 l1 l2 l3", "l6 l5 0 l7 -l2 l1 -l4", "l7 0 l5 -l6 -l3 l4 l1",
     "0 -l7 l6 l5 -l4 -l3 l2"),
    "l1 -l2 -l3 -l4 -l5 -l6 -l7",
)
N3_VALISE = ("l1 l2 l3 0", "l2 -l1 0 -l3", "l3 0 -l1 l2", "0 l3 -l2 -l1")


def from_rows(sig, levels, name, figure, **kw):
    return ad.adinkra_from_matrices(sig, levels, name=name, paper_figure=figure, **kw)


def corpus() -> dict[str, ad.Adinkra]:
    out: dict[str, ad.Adinkra] = {}
    s1 = E(1)
    out["n1_boson"] = from_rows(s1, [M(s1, "l1")], "N=1 bosonic", "n1_koszul")
    out["n1_fermion"] = from_rows(s1, [M(s1, "l1")], "N=1 fermionic", "n1_koszul",
                                  bottom_parity=ad.Parity.FERMION)
    s2 = E(2)
    out["n2_valise"] = from_rows(s2, [M(s2, "l1 l2", "-l2 l1")], "N=2 valise", "n2_hd")
    out["n2_koszul"] = ad.koszul_adinkra(2).renamed("N=2 Koszul")
    out["n2_koszul"] = ad.Adinkra(out["n2_koszul"].vertices, out["n2_koszul"].edges, s2,
                                  name="N=2 Koszul", paper_figure="n2_valise")
    k3 = ad.koszul_adinkra(3)
    out["n3_koszul"] = ad.Adinkra(k3.vertices, k3.edges, E(3), name="N=3 Koszul",
                                  paper_figure="n3_1_3_3_1")
    s4 = E(4)
    out["n4_valise"] = from_rows(s4, [M(s4, *N4_IRR)], "N=4 irreducible valise", "adk_n4_4_4")
    out["n4_raising_valise"] = from_rows(s4, [M(s4, *N4_RAISING)], "N=4 valise (raising example)",
                                         "n4_3_4_1")
    out["n4_3_4_1"] = from_rows(s4, [M(s4, *N4_RAISING[:3]), col(s4, N4_RAISING[3])],
                                "N=4 (3,4,1)", "n4_3_4_1",
                                level_ids=[["v0_1", "v0_2", "v0_3"], ["v1_1", "v1_2", "v1_3", "v1_4"],
                                           ["v0_4"]])
    plus = from_rows(s4, [M(s4, *N4_IRR)], "", "",
                     level_ids=[[f"a0_{i}" for i in range(1, 5)], [f"a1_{i}" for i in range(1, 5)]])
    minus = from_rows(s4, [M(s4, *N4_OTHER)], "", "",
                      level_ids=[[f"b0_{i}" for i in range(1, 5)], [f"b1_{i}" for i in range(1, 5)]])
    out["n4_disjoint_left"] = plus.renamed("N=4 disconnected valise, first component")
    out["n4_disjoint_right"] = minus.renamed("N=4 disconnected valise, second component")
    out["n4_disjoint"] = ad.disjoint_union(plus, minus, "N=4 disconnected valise pair")
    for key in ("n4_disjoint_left", "n4_disjoint_right", "n4_disjoint"):
        a = out[key]
        out[key] = ad.Adinkra(a.vertices, a.edges, s4, name=a.name, paper_figure="n4_disjoint")
    out["n4_koszul_valise"] = from_rows(s4, [M(s4, *N4_KOSZUL_VALISE)], "N=4 Koszul valise",
                                        "n4_koszul_folded")
    s6 = E(6)
    out["n6_a1"] = from_rows(s6, [M(s6, *N6_A1[0]), M(s6, *N6_A1[1])], "N=6 A1", "n6_6_8_2_S")
    out["n6_a2"] = from_rows(s6, [M(s6, *N6_A2[0]), M(s6, *N6_A2[1])], "N=6 A2", "n6_6_8_2_T")
    s7 = E(7)
    out["n7_1771"] = from_rows(s7, [M(s7, *N7_1771[0]), M(s7, *N7_1771[1]), col(s7, N7_1771[2])],
                               "N=7 (1,7,7,1)", "n7_1_7_7_1")
    s8 = E(8)
    out["n8_valise"] = from_rows(s8, [M(s8, *N8)], "N=8 valise", "n8_8_8")
    n7 = ad.restrict_colors(out["n8_valise"], range(1, 8))
    out["n7_valise"] = ad.Adinkra(n7.vertices, n7.edges, s7, name="N=7 valise (N=8 without color 8)",
                                  paper_figure="n8_8_8")

    # extension classes
    y = from_rows(s4, [M(s4, "l1 l2 l3 l4", "-l4 -l3 l2 l1"),
                       M(s4, "-l2 -l3", "l1 l4", "-l4 l1", "l3 -l2")], "N=4 (2,4,2) target", "n4_ext1",
                  level_ids=[["y0_1", "y0_2"], [f"y1_{i}" for i in range(1, 5)], ["y2_1", "y2_2"]])
    x = from_rows(s4, [M(s4, "-l2 l1 l4 -l3", "-l3 l4 -l1 l2"),
                       M(s4, "l1 l4", "l2 l3", "-l3 l2", "-l4 l1")], "N=4 (2,4,2) source", "n4_ext1",
                  level_ids=[["x0_1", "x0_2"], [f"x1_{i}" for i in range(1, 5)], ["x2_1", "x2_2"]])
    out["n4_ext_target"], out["n4_ext_source"] = y, x
    s3 = E(3)
    val3 = M(s3, *N3_VALISE)
    out["n3_valise"] = from_rows(s3, [val3], "N=3 valise", "n3_ext2")
    y3 = from_rows(s3, [val3.select([0, 1, 2], range(4)), val3.select([3], range(4)).T],
                   "N=3 (3,4,1) target", "n3_ext2",
                   level_ids=[["y0_1", "y0_2", "y0_3"], [f"y1_{i}" for i in range(1, 5)], ["y2_1"]])
    # reorder the columns as (1,4,2,3) and negate the first two
    moved = val3.select(range(4), [0, 3, 1, 2])
    signs = PolyMatrix(s3.n_vars, [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    moved = moved @ signs
    x3 = from_rows(s3, [moved.select([0, 1], range(4)), moved.select([2, 3], range(4)).T],
                   "N=3 (2,4,2) source", "n3_ext2",
                   level_ids=[["x0_1", "x0_2"], [f"x1_{i}" for i in range(1, 5)], ["x2_1", "x2_2"]])
    out["n3_ext_target"], out["n3_ext_source"] = y3, x3

    # q-Adinkras
    mu = VariableSet(0, 1, 0)
    out["q_n1_mu"] = from_rows(mu, [M(mu, "m1")], "N=1, q = -mu^2", "n2_2_2_gen")
    pq = VariableSet(1, 1, 0)
    out["q_pq_1_1"] = from_rows(pq, [M(pq, "l1 m1", "m1 l1")], "(2,2) for q = l^2 - m^2", "n2_2_2_gen")
    out["q_pq_1_1_raised"] = from_rows(pq, [M(pq, "l1 m1"), col(pq, "-m1 l1")],
                                       "(1,2,1) for q = l^2 - m^2", "n2_2_2_gen",
                                       level_ids=[["v0_1"], ["v1_1", "v1_2"], ["v0_2"]])
    r1 = VariableSet(0, 0, 1)
    for key, entry in (("q_waved_r", "r1"), ("q_waved_rstar", "r1*"), ("q_waved_minus_r", "-r1"),
                       ("q_waved_minus_rstar", "-r1*")):
        out[key] = from_rows(r1, [M(r1, entry)], f"N=1 waved ({entry})", "n1_waved")
    r2 = VariableSet(0, 0, 2)
    out["q_rho_pair"] = from_rows(r2, [M(r2, "r1 r2", "-r2* r1*")], "minimal rho-pair valise",
                                  "n2_2_2_gen")
    for key, top, bottom, label, fig in (
            ("q_chiral", "r1 r2", "-r2 r1", "4d N=1 chiral", "4d_chiral_antichiral"),
            ("q_antichiral", "r1* r2*", "-r2* r1*", "4d N=1 anti-chiral", "4d_chiral_antichiral"),
            ("q_twisted_chiral", "r1 r2*", "-r2* r1", "2d (2,2) twisted chiral", "2d_twisted_chiral"),
            ("q_twisted_antichiral", "r1* r2", "-r2 r1*", "2d (2,2) twisted anti-chiral",
             "2d_twisted_chiral")):
        out[key] = from_rows(r2, [M(r2, top), col(r2, bottom)], label, fig)

    # code topologies
    for name in ("d4", "d6", "e7"):
        a = codes.code_to_adinkra(codes.builtin(name))
        out[f"code_{name}"] = ad.Adinkra(a.vertices, a.edges, a.signature, name=a.name,
                                         paper_figure="tab:rank_seq")
    return out


def chain_maps(docs: dict[str, ad.Adinkra]) -> dict[str, dict]:
    s4, s3 = E(4), E(3)
    n4 = {
        "kind": "chain_map", "schema_version": formats.SCHEMA_VERSION,
        "name": "extension of (2,4,2) by (2,4,2)", "paper_figure": "n4_ext1",
        "source": {"adinkra": formats.adinkra_to_json(docs["n4_ext_source"])},
        "target": {"adinkra": formats.adinkra_to_json(docs["n4_ext_target"])},
        "shift": 1,
        "maps": [
            {"degree": -2, "matrix": formats.matrix_to_json(s4, M(s4, "-l4 0", "-l3 0", "l2 0", "l1 0"))},
            {"degree": -1, "matrix": formats.matrix_to_json(s4, M(s4, "0 0 0 0", "l1 l2 -l3 -l4"))},
        ],
    }
    n3 = {
        "kind": "chain_map", "schema_version": formats.SCHEMA_VERSION,
        "name": "extension of (2,4,2) by (3,4,1)", "paper_figure": "n3_ext2",
        "source": {"adinkra": formats.adinkra_to_json(docs["n3_ext_source"])},
        "target": {"adinkra": formats.adinkra_to_json(docs["n3_ext_target"])},
        "shift": 1,
        "maps": [
            {"degree": -2, "matrix": formats.matrix_to_json(s3, M(s3, "0 0", "l3 0", "-l2 0", "-l1 0"))},
            {"degree": -1, "matrix": formats.matrix_to_json(s3, M(s3, "0 0 0 0", "0 0 0 0",
                                                                  "-l2 l3 -l1 0"))},
        ],
    }
    return {"ext_n4": n4, "ext_n3": n3}


CODE_ROWS = {
    "d4": ["1111"],
    "d6": ["111100", "001111"],
    "d10": ["1111000000", "0011110000", "0000111100", "0000001111"],
    "e7": ["1111000", "1100110", "1010101"],
    "e8": ["11110000", "11001100", "10101010", "11111111"],
    "e16": ["1111000000000000", "0011110000000000", "0000111100000000", "0000001111000000",
            "0000000011110000", "0000000000111100", "0000000000001111", "0101010101010101"],
}


def main() -> int:
    DATA.mkdir(exist_ok=True)
    for name, rows in CODE_ROWS.items():
        code = codes.parse_code("\n".join(rows), name)
        assert codes.is_doubly_even(code)
        (DATA / f"{name}.code").write_text(codes.format_code(code))
    docs = corpus()
    for key, A in docs.items():
        report = ad.validate_any(A)
        if not report.ok:
            print(f"{key}: {report.summary()}")
            return 1
        C = complexes.complex_of(A)
        lap = complexes.check_laplacian(C)
        if not C.is_complex() or not lap.ok:
            print(f"{key}: identity check failed: {lap.summary()}")
            return 1
        text = formats.dump_adinkra(A)
        assert formats.dump_adinkra(formats.load_adinkra(text)) == text
        (DATA / f"{key}.json").write_text(text)
        print(f"{key:24s} {ad.rank_sequence(A)}")
    for key, raw in chain_maps(docs).items():
        f = formats.chain_map_from_json(raw)
        report = complexes.check_chain_map(f)
        if not report.ok:
            print(f"{key}: chain map fails: {report.problems}")
            return 1
        (DATA / f"{key}.json").write_text(formats.dumps(raw))
        print(f"{key:24s} chain map ok")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Regenerate the shipped JSON fixtures.

Fig. 3 and Fig. 6 are transcribed by hand below; the remaining fixtures are
emitted from the library builders.
"""

from __future__ import annotations

from pathlib import Path

from floercert import bordered, cfk
from floercert.io import complex_to_json, dumps, typea_to_json, typed_to_json

OUT = Path(__file__).resolve().parents[1] / "src" / "floercert" / "golden"

FIG3 = {
    "generators": [
        {"name": "w1", "idem": "i0", "deg": [-2, -2]},
        {"name": "w2", "idem": "i0", "deg": [1, -3]},
        {"name": "w3", "idem": "i0", "deg": [0, 0]},
        {"name": "w4", "idem": "i0", "deg": [-3, 1]},
        {"name": "z", "idem": "i0", "deg": [0, 0]},
    ] + [{"name": n, "idem": "i1"} for n in ("t1", "t2", "v1", "v2", "u1", "u2", "s1", "s2")],
    "arrows": [
        {"from": s, "to": t, "label": l}
        for s, t, l in [
            ("w1", "t1", "r3"), ("t1", "t2", "r23"), ("t2", "w2", "r2"),
            ("w4", "v1", "r3"), ("v1", "v2", "r23"), ("v2", "w3", "r2"),
            ("w1", "u2", "r1"), ("u1", "u2", "r23"), ("w4", "u1", "r123"),
            ("w2", "s2", "r1"), ("s1", "s2", "r23"), ("w3", "s1", "r123"),
            ("z", "z", "r12"),
        ]
    ],
}

# (target, target deg, source, source deg, U-length)
FIG6_ARROWS = [
    ("c1_a", (5, -5), "c1_b", (2, -4), 2),
    ("c1_c", (4, -4), "c1_d", (3, -3), 1),
    ("c1_e", (1, -3), "c1_f", (-2, -2), 2),
    ("alpha", (2, 0), "zeta", (1, 1), 1),
    ("c1_g", (-3, 1), "c1_h", (-4, 2), 1),
    ("c1_i", (0, 2), "c1_j", (-3, 3), 2),
    ("c1_k", (-4, 4), "c1_l", (-5, 5), 1),
    ("c2_a", (1, -7), "c2_b", (0, -6), 1),
    ("c2_c", (-1, -3), "c2_d", (-2, -2), 1),
    ("c2_e", (0, 4), "c2_f", (-1, 5), 1),
    ("c2_g", (-2, 8), "c2_h", (-3, 9), 1),
    ("c3_a", (9, -3), "c3_b", (-2, -2), 6),
    ("c3_c", (8, -2), "c3_d", (5, -1), 2),
    ("c3_e", (-3, -1), "c3_f", (-6, 0), 2),
    ("c3_g", (4, 0), "c3_h", (-7, 1), 6),
]


def fig6() -> dict:
    gens, arrows = [], []
    for tgt, td, src, sd, ell in FIG6_ARROWS:
        gens.append({"name": src, "deg": list(sd)})
        gens.append({"name": tgt, "deg": list(td)})
        arrows.append({"from": src, "to": tgt, "coeff": "U^%d" % ell})
    gens.append({"name": "omega", "deg": [0, 0]})
    return {"ring": "F2U", "generators": gens, "arrows": sorted(arrows, key=lambda a: (a["from"], a["to"]))}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    files = {
        "fig3-M.json": FIG3,
        "fig6.json": fig6(),
        "complex-C.json": complex_to_json(cfk.complex_c()),
        "lot-of-C.json": typed_to_json(bordered.lot(cfk.complex_c())),
        "cfd-unknot.json": typed_to_json(bordered.cfd_unknot()),
        "fig4-cable.json": typea_to_json(bordered.cfa_cable31_drawn()),
    }
    for name, obj in files.items():
        (OUT / name).write_text(dumps(obj), encoding="utf-8")
        print("wrote", name)


if __name__ == "__main__":
    main()

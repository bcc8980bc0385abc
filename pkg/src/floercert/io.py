"""JSON interchange for complexes, type-D/type-A structures, hat basis data
and certificates.  Emission is canonical (sorted keys, fixed ordering) so
that files are byte-stable across runs."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .bordered import ELEMENTS, REEB, Action, DArrow, DGen, TypeA, TypeD
from .cfk import Arrow, Bidegree, GradedComplex, _xor_arrows
from .errors import FloerError
from .ring import Monomial, RingParseError, parse_monomial

GOLDEN_PREFIX = "golden/"


def _fail(msg: str) -> FloerError:
    return FloerError("PARSE", msg)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def golden_path(name: str) -> Path:
    return Path(str(resources.files("floercert") / "golden" / name))


def resolve(path: str) -> Path:
    """Paths starting with ``golden/`` fall back to the shipped fixtures."""
    p = Path(path)
    if p.exists() or not path.startswith(GOLDEN_PREFIX):
        return p
    return golden_path(path[len(GOLDEN_PREFIX):])


def load_json(path: str) -> Any:
    p = resolve(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise FloerError("IO", "cannot read %s: %s" % (path, e.strerror or e)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise _fail("%s is not valid JSON (%s)" % (path, e)) from None


def _need(obj: Any, key: str, kind, where: str):
    if not isinstance(obj, dict):
        raise _fail("%s must be an object" % where)
    if key not in obj:
        raise _fail("%s is missing %r" % (where, key))
    val = obj[key]
    if kind is not None and not isinstance(val, kind) or isinstance(val, bool) and kind is not bool:
        raise _fail("%s.%s has the wrong type" % (where, key))
    return val


def _deg(val, where: str) -> Optional[Bidegree]:
    if val is None:
        return None
    if (not isinstance(val, list) or len(val) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in val)):
        raise _fail("%s must be a pair of integers" % where)
    return Bidegree(*val)


def _mono(text, where: str) -> Monomial:
    if not isinstance(text, str):
        raise _fail("%s must be a string" % where)
    try:
        return parse_monomial(text)
    except (RingParseError, ValueError) as e:
        raise _fail("%s: %s" % (where, e)) from None


# -- complexes ------------------------------------------------------------


def complex_to_json(C: GradedComplex) -> dict:
    return {
        "ring": C.ring,
        "generators": [
            {"name": n} if d is None else {"name": n, "deg": [d.gz, d.gw]}
            for n, d in zip(C.generators, C.degrees)
        ],
        "arrows": [{"from": a.src, "to": a.dst, "coeff": a.coeff.render()} for a in C.arrows],
    }


def complex_from_json(obj: Any) -> tuple[GradedComplex, dict[str, Bidegree]]:
    ring = _need(obj, "ring", str, "complex")
    if ring not in ("R", "F2U", "F2"):
        raise _fail("unknown ring %r" % ring)
    gens = _need(obj, "generators", list, "complex")
    names, degs = [], []
    for k, g in enumerate(gens):
        names.append(_need(g, "name", str, "generators[%d]" % k))
        degs.append(_deg(g.get("deg"), "generators[%d].deg" % k))
    arrows = []
    for k, a in enumerate(obj.get("arrows", [])):
        where = "arrows[%d]" % k
        m = _mono(_need(a, "coeff", str, where), where + ".coeff")
        arrows.append(Arrow(_need(a, "from", str, where), _need(a, "to", str, where), m))
    anchors = {}
    raw = obj.get("anchors", {})
    if not isinstance(raw, dict):
        raise _fail("anchors must be an object")
    for k, v in raw.items():
        anchors[k] = _deg(v, "anchors.%s" % k)
    return GradedComplex(ring, tuple(names), tuple(degs), _xor_arrows(arrows)), anchors


# -- bordered structures ---------------------------------------------------


def _gen_json(g: DGen) -> dict:
    out = {"name": g.name, "idem": "i%d" % g.idem}
    if g.deg is not None:
        out["deg"] = [g.deg.gz, g.deg.gw]
    return out


def _gen_from(g: Any, where: str) -> DGen:
    name = _need(g, "name", str, where)
    idem = _need(g, "idem", str, where)
    if idem not in ("i0", "i1"):
        raise _fail("%s.idem must be i0 or i1" % where)
    return DGen(name, int(idem[1]), _deg(g.get("deg"), where + ".deg"))


def typed_to_json(M: TypeD) -> dict:
    return {
        "generators": [_gen_json(g) for g in M.generators],
        "arrows": [{"from": a.src, "to": a.dst, "label": a.label} for a in sorted(M.arrows)],
    }


def typed_from_json(obj: Any) -> TypeD:
    gens = [_gen_from(g, "generators[%d]" % k) for k, g in enumerate(_need(obj, "generators", list, "type-D"))]
    arrows = []
    for k, a in enumerate(_need(obj, "arrows", list, "type-D")):
        where = "arrows[%d]" % k
        lab = _need(a, "label", str, where)
        if lab not in ELEMENTS:
            raise _fail("%s.label %r is not a torus-algebra element" % (where, lab))
        arrows.append((_need(a, "from", str, where), _need(a, "to", str, where), lab))
    acc: set = set()
    for a in arrows:
        acc ^= {DArrow(*a)}
    return TypeD(tuple(gens), tuple(sorted(acc)))


def typea_to_json(A: TypeA) -> dict:
    return {
        "generators": [_gen_json(g) for g in A.generators],
        "actions": [
            {"in": a.inp, "rhos": list(a.rhos), "out": a.out, "coeff": "1" if a.upow == 0 else "U^%d" % a.upow}
            for a in A.actions
        ],
    }


def typea_from_json(obj: Any) -> TypeA:
    gens = [_gen_from(g, "generators[%d]" % k) for k, g in enumerate(_need(obj, "generators", list, "type-A"))]
    acts = []
    for k, a in enumerate(_need(obj, "actions", list, "type-A")):
        where = "actions[%d]" % k
        rhos = _need(a, "rhos", list, where)
        for r in rhos:
            if r not in REEB:
                raise _fail("%s.rhos contains %r" % (where, r))
        m = _mono(_need(a, "coeff", str, where), where + ".coeff")
        if m.v:
            raise _fail("%s.coeff must be a power of U" % where)
        acts.append(Action(_need(a, "in", str, where), tuple(rhos), _need(a, "out", str, where), m.u))
    acc: set = set()
    for a in acts:
        acc ^= {a}
    return TypeA(tuple(gens), tuple(sorted(acc)))


# -- detection -------------------------------------------------------------


def detect_kind(obj: Any) -> str:
    if not isinstance(obj, dict):
        raise _fail("top-level JSON value must be an object")
    if "ring" in obj:
        return "complex"
    if "actions" in obj:
        return "type-a"
    if "basis" in obj:
        return "hat-basis"
    if "steps" in obj:
        return "certificate"
    if "generators" in obj and "arrows" in obj:
        return "type-d"
    raise _fail("unrecognised document (no ring/actions/basis/arrows key)")


def load_complex(path: str) -> tuple[GradedComplex, dict]:
    return complex_from_json(load_json(path))


def load_type_d(path: str) -> TypeD:
    return typed_from_json(load_json(path))


def load_type_a(path: str) -> TypeA:
    return typea_from_json(load_json(path))


def fig3_m() -> TypeD:
    return typed_from_json(load_json(GOLDEN_PREFIX + "fig3-M.json"))


def fig6_table() -> GradedComplex:
    C, _ = complex_from_json(load_json(GOLDEN_PREFIX + "fig6.json"))
    return C


def matrix_to_json(m: np.ndarray) -> list:
    return [[int(v) for v in row] for row in np.asarray(m)]


def matrix_from_json(rows: Any, n: int, where: str) -> np.ndarray:
    if (not isinstance(rows, list) or len(rows) != n
            or not all(isinstance(r, list) and len(r) == n for r in rows)):
        raise _fail("%s must be a %dx%d 0/1 matrix" % (where, n, n))
    if not all(v in (0, 1) and not isinstance(v, bool) for r in rows for v in r):
        raise _fail("%s entries must be 0 or 1" % where)
    return np.array(rows, dtype=np.uint8).reshape(n, n)


def write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise FloerError("IO", "cannot write %s: %s" % (path, e.strerror or e)) from None

"""Command-line entry point.

Exit codes: 0 success / PASS, 1 well-formed input whose certification
failed, 2 invalid input (unreadable, unparsable or structurally invalid).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__, bordered, cfk, io
from .bordered import BUILTIN_TYPE_A, BUILTIN_TYPE_D, LABEL_TEXT, TypeA, TypeD
from .errors import FloerError
from .involutive import Certificate, HatBasisData
from .weird import MUTATIONS, STAGES, PipelineOptions, check_weird_simple, run_k0_pipeline, verify_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
TEST_HOOKS_ENV = "FLOERCERT_TEST_HOOKS"


class InputError(Exception):
    """Structurally invalid input; carries the violation lines."""

    def __init__(self, lines: Sequence[str]):
        super().__init__("\n".join(lines))
        self.lines = list(lines)


# -- rendering -------------------------------------------------------------


def _deg_text(d) -> str:
    return "" if d is None else " (%d,%d)" % (d[0], d[1])


def render_complex(C: cfk.GradedComplex) -> str:
    lines = ["complex over %s: %d generators, %d arrows" % (C.ring, len(C.generators), len(C.arrows))]
    lines += ["  %s%s" % (n, _deg_text(d)) for n, d in zip(C.generators, C.degrees)]
    lines += ["  %s -%s-> %s" % (a.src, a.coeff.render(), a.dst) for a in C.arrows]
    return "\n".join(lines)


def render_type_d(M: TypeD) -> str:
    lines = ["type-D structure: %d generators, %d arrows" % (len(M.generators), len(M.arrows))]
    lines += ["  %s [ι%d]%s" % (g.name, g.idem, _deg_text(g.deg)) for g in M.generators]
    lines += ["  %s -%s-> %s" % (a.src, LABEL_TEXT[a.label], a.dst) for a in M.arrows]
    return "\n".join(lines)


def render_type_a(A: TypeA) -> str:
    lines = ["type-A structure: %d generators, %d actions" % (len(A.generators), len(A.actions))]
    lines += ["  %s [ι%d]" % (g.name, g.idem) for g in A.generators]
    lines += ["  " + a.render() for a in A.actions]
    return "\n".join(lines)


def render_table(table: dict) -> str:
    if not table:
        return "hat homology: 0"
    lines = ["hat homology: total %d" % cfk.total_dim(table)]
    lines += ["  (%d,%d): %d" % (g[0], g[1], k) for g, k in table.items()]
    return "\n".join(lines)


def render_decomposition(dec: cfk.Decomposition) -> str:
    lines = ["multirectangular: %s" % ("yes" if dec.is_multirectangular else "no")]
    lines += ["  free %s" % g for g in dec.free_pieces]
    lines += ["  rectangle (%d,%d) %s" % (r.i, r.j, " ".join(r.gens)) for r in dec.rect_pieces]
    lines += ["  other %s" % " ".join(o) for o in dec.other_pieces]
    return "\n".join(lines)


def table_to_json(table: dict) -> dict:
    return {"hat_homology": [{"deg": [g[0], g[1]], "dim": k} for g, k in table.items()],
            "total": cfk.total_dim(table)}


def decomposition_to_json(dec: cfk.Decomposition) -> dict:
    return {
        "multirectangular": dec.is_multirectangular,
        "free": list(dec.free_pieces),
        "rectangles": [{"i": r.i, "j": r.j, "generators": list(r.gens)} for r in dec.rect_pieces],
        "other": [list(o) for o in dec.other_pieces],
    }


# -- input helpers -----------------------------------------------------------


def _violations(vs) -> None:
    if vs:
        raise InputError([str(v) for v in vs])


def _graded(C: cfk.GradedComplex) -> bool:
    # fully ungraded input (e.g. raw pairing output) is fine; partial grading is not
    return any(d is not None for d in C.degrees)


def _complex(path: str) -> cfk.GradedComplex:
    C, _ = io.load_complex(path)
    _violations(cfk.validate(C, graded=_graded(C)))
    return C


def _type_d(path: str) -> TypeD:
    if path in BUILTIN_TYPE_D:
        return BUILTIN_TYPE_D[path]()
    M = io.load_type_d(path)
    _violations(bordered.validate_type_d(M))
    return M


def _type_a(source: str) -> TypeA:
    if source in BUILTIN_TYPE_A:
        return BUILTIN_TYPE_A[source]()
    A = io.load_type_a(source)
    _violations(bordered.validate_type_a(A))
    return A


class Emitter:
    def __init__(self, args):
        self.out: Optional[str] = args.out
        self.fmt: str = args.format

    def emit(self, obj: dict, text: str) -> None:
        body = io.dumps(obj) if self.fmt == "json" else text + "\n"
        if self.out:
            io.write_text(self.out, body)
        else:
            sys.stdout.write(body)


# -- subcommands -------------------------------------------------------------


def cmd_validate(args, em: Emitter) -> int:
    obj = io.load_json(args.path)
    kind = io.detect_kind(obj)
    if kind == "complex":
        C, _ = io.complex_from_json(obj)
        _violations(cfk.validate(C, graded=_graded(C)))
    elif kind == "type-d":
        _violations(bordered.validate_type_d(io.typed_from_json(obj)))
    elif kind == "type-a":
        _violations(bordered.validate_type_a(io.typea_from_json(obj)))
    elif kind == "hat-basis":
        HatBasisData.from_json(obj)
    else:
        if not isinstance(obj.get("steps"), list):
            raise FloerError("PARSE", "certificate steps must be a list")
    return EXIT_OK


def cmd_lot(args, em: Emitter) -> int:
    C, _ = cfk.reduce(_complex(args.path))
    M = bordered.lot(C)
    em.emit(io.typed_to_json(M), render_type_d(M))
    return EXIT_OK


def cmd_pair(args, em: Emitter) -> int:
    A = _type_a(args.cfa)
    D = _type_d(args.cfd)
    P = bordered.box_tensor(A, D, args.flavor)
    if args.reduce:
        P, _ = cfk.reduce(P)
    em.emit(io.complex_to_json(P), render_complex(P))
    return EXIT_OK


def cmd_reduce(args, em: Emitter) -> int:
    C, _ = cfk.reduce(_complex(args.path))
    em.emit(io.complex_to_json(C), render_complex(C))
    return EXIT_OK


def cmd_homology(args, em: Emitter) -> int:
    C = _complex(args.path)
    table = cfk.hat_homology(cfk.hat_truncate(C) if C.ring != "F2" else C)
    em.emit(table_to_json(table), render_table(table))
    return EXIT_OK


def cmd_decompose(args, em: Emitter) -> int:
    C, _ = cfk.reduce(_complex(args.path))
    dec = cfk.decompose(C)
    em.emit(decomposition_to_json(dec), render_decomposition(dec))
    return EXIT_OK if dec.is_multirectangular else EXIT_FAIL


def cmd_weird(args, em: Emitter) -> int:
    B = HatBasisData.from_json(io.load_json(args.path))
    ok = check_weird_simple(B)
    verdict = "PASS" if ok else "FAIL"
    em.emit({"check": "weird-simple", "v1": B.v1, "v2": B.v2, "verdict": verdict},
            "weird (v1=%s, v2=%s): %s" % (B.v1, B.v2, verdict))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_k0_certify(args, em: Emitter) -> int:
    mutations = list(getattr(args, "mutate_fig4", None) or []) + list(getattr(args, "mutate_fig3", None) or [])
    opts = PipelineOptions(stop_after=args.stop_after, grading_mode=args.grading_mode, mutations=mutations)
    rep = run_k0_pipeline(opts)
    text = rep.render()
    if args.out:
        io.write_text(args.out, io.dumps(rep.to_json()))
        sys.stdout.write(text + "\n")
    else:
        sys.stdout.write(io.dumps(rep.to_json()) if args.format == "json" else text + "\n")
    return EXIT_FAIL if rep.verdict == "FAIL" else EXIT_OK


def cmd_verify(args, em: Emitter) -> int:
    obj = io.load_json(args.path)
    if not isinstance(obj, dict) or "stages" not in obj:
        raise FloerError("PARSE", "%s is not a k0-certify report" % args.path)
    cert: Certificate = verify_report(obj)
    em.emit(cert.to_json(), cert.render())
    return EXIT_OK if cert.overall == "PASS" else EXIT_FAIL


# -- parser --------------------------------------------------------------------


def _mutation(family: str):
    def parse(text: str) -> str:
        from .weird import normalize_mutation

        try:
            key = normalize_mutation(text, family)
        except FloerError:
            key = None
        if key not in MUTATIONS or not key.startswith(family + ":"):
            raise argparse.ArgumentTypeError("unknown %s mutation %r; known: %s" % (
                family, text, ", ".join(k for k in MUTATIONS if k.startswith(family + ":"))))
        return key

    return parse


def build_parser(test_hooks: Optional[bool] = None) -> argparse.ArgumentParser:
    if test_hooks is None:
        test_hooks = os.environ.get(TEST_HOOKS_ENV, "") == "1"
    def globals_(parser, default):
        parser.add_argument("--out", metavar="PATH", default=default,
                            help="write the result here instead of standard output")
        parser.add_argument("--format", choices=("json", "text"), default=default)

    # global flags are accepted before or after the subcommand; the copy on
    # each subcommand only overrides when actually given
    common = argparse.ArgumentParser(add_help=False)
    globals_(common, argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="floercert", description="Knot Floer, bordered and involutive certification tools.")
    globals_(p, None)
    p.set_defaults(format="json")
    p.add_argument("--version", action="version", version="floercert " + __version__)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "validate a complex, type-D, type-A or hat-basis file").add_argument("path")
    add("lot", cmd_lot, "type-D structure of the complement of a multirectangular complex").add_argument("path")
    sp = add("pair", cmd_pair, "box tensor product of a type-A and a type-D structure")
    sp.add_argument("cfa", help="builtin (%s) or a type-A file" % ", ".join(BUILTIN_TYPE_A))
    sp.add_argument("cfd", help="type-D file or builtin (%s)" % ", ".join(BUILTIN_TYPE_D))
    sp.add_argument("--flavor", choices=("hat", "minus"), default="minus")
    sp.add_argument("--reduce", action="store_true", help="cancel unit arrows in the result")
    add("reduce", cmd_reduce, "cancel unit arrows").add_argument("path")
    add("homology", cmd_homology, "graded hat homology").add_argument("path")
    add("decompose", cmd_decompose, "split a reduced complex into free and rectangular pieces").add_argument("path")
    add("weird", cmd_weird, "coordinate weirdness check on full hat-basis matrices").add_argument("path")
    sp = add("k0-certify", cmd_k0_certify, "run the K0 certification pipeline")
    sp.add_argument("--grading-mode", choices=("fit", "fig6"), default="fit")
    sp.add_argument("--stop-after", choices=STAGES)
    if test_hooks:
        sp.add_argument("--mutate-fig4", action="append", type=_mutation("fig4"), help=argparse.SUPPRESS)
        sp.add_argument("--mutate-fig3", action="append", type=_mutation("fig3"), help=argparse.SUPPRESS)
    add("verify", cmd_verify, "replay the computed evidence of a k0-certify report").add_argument("path")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, Emitter(args))
    except InputError as e:
        sys.stderr.write("invalid input:\n" + "".join("  %s\n" % line for line in e.lines))
    except FloerError as e:
        sys.stderr.write("error: %s\n" % e)
    except (ValueError, TypeError, KeyError, AttributeError, RecursionError, json.JSONDecodeError) as e:
        sys.stderr.write("error: malformed input (%s: %s)\n" % (type(e).__name__, e))
    return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

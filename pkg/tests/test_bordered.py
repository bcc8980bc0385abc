from __future__ import annotations

import itertools
from collections import Counter

import pytest
from hypothesis import given, settings

from floercert import bordered, cfk
from floercert.bordered import (
    ELEMENTS,
    Action,
    TypeA,
    TypeD,
    alg_mul,
    box_tensor,
    cfa_cable31,
    cfa_cable31_drawn,
    cfa_nu,
    cfd_unknot,
    complete_type_a,
    dsum,
    lot,
    reduce_type_d,
    typed_isomorphism,
    validate_type_a,
    validate_type_d,
)
from floercert.errors import FloerError
from floercert.io import fig3_m

from oracles import brute_hat_homology, multirect_complexes

# -- algebra -------------------------------------------------------------------------


def test_alg_mul_examples():
    assert alg_mul("r1", "r2") == "r12"
    assert alg_mul("r2", "r1") is None
    assert alg_mul("r12", "r12") is None
    assert alg_mul("r12", "r3") == "r123"
    assert alg_mul("i0", "r1") == "r1"
    assert alg_mul("i1", "r1") is None


def test_alg_mul_associative_exhaustive():
    vals = list(ELEMENTS) + [None]
    for a, b, c in itertools.product(vals, repeat=3):
        assert alg_mul(alg_mul(a, b), c) == alg_mul(a, alg_mul(b, c)), (a, b, c)


def test_nonzero_products_are_exactly_the_table():
    reeb = [e for e in ELEMENTS if e.startswith("r")]
    nonzero = {(a, b): alg_mul(a, b) for a in reeb for b in reeb if alg_mul(a, b) is not None}
    assert nonzero == {("r1", "r2"): "r12", ("r2", "r3"): "r23", ("r1", "r23"): "r123", ("r12", "r3"): "r123"}


# -- type D ------------------------------------------------------------------------------


def test_validate_type_d_examples():
    M = fig3_m()
    assert len(M.generators) == 13 and len(M.arrows) == 13
    assert validate_type_d(M) == []
    assert validate_type_d(cfd_unknot()) == []
    bad = TypeD.build([("w1", 0), ("t1", 1)], [("w1", "t1", "r2")])
    assert [v.kind for v in validate_type_d(bad)] == ["IDEMPOTENT"]


def test_structure_equation_violation():
    M = TypeD.build([("x", 0), ("y", 1), ("z", 0)], [("x", "y", "r1"), ("y", "z", "r2")])
    assert [v.kind for v in validate_type_d(M)] == ["STRUCTURE_EQUATION"]


def test_lot_matches_fig3():
    M = lot(cfk.complex_c())
    iso = typed_isomorphism(M, fig3_m())
    assert iso is not None
    # the arrow set forces c -> w4 and d -> w3 (w3 sits at (0,0) like d)
    assert {k: iso[k] for k in "abcdx"} == {"a": "w1", "b": "w2", "c": "w4", "d": "w3", "x": "z"}


def test_lot_free_and_rectangle():
    M = lot(cfk.free("g"))
    assert [(g.name, g.idem) for g in M.generators] == [("g", 0)]
    assert list(M.arrows) == [("g", "g", "r12")]
    # a lone rectangle is not multirectangular, so pair it with a free generator and drop that
    M = _lot_rects(cfk.rectangle(1, 1))
    assert len(M.generators) == 8 and len(M.arrows) == 8
    assert Counter(g.idem for g in M.generators) == {0: 4, 1: 4}
    assert validate_type_d(M) == []


def test_lot_errors():
    with pytest.raises(FloerError) as e:
        lot(cfk.rectangle(1, 1))
    assert e.value.code == "NOT_MULTIRECT"
    pair = cfk.GradedComplex.build("R", [("x", (0, 0)), ("y", (-1, -1))], [("x", "y", "1")])
    with pytest.raises(FloerError) as e:
        lot(cfk.direct_sum(cfk.free(), pair))
    assert e.value.code == "NOT_REDUCED"


@settings(max_examples=60, deadline=None)
@given(multirect_complexes(), multirect_complexes())
def test_lot_additive(C1, C2):
    C2 = C2.rename({g: "s_" + g for g in C2.generators})
    # lot needs exactly one free summand, so drop the second free generator
    D = C2.subcomplex([g for g in C2.generators if g != "s_x"])
    whole = lot(cfk.direct_sum(C1, D))
    parts = dsum(lot(C1), _lot_rects(D))
    assert set(whole.generators) == set(parts.generators)
    assert set(whole.arrows) == set(parts.arrows)


def _lot_rects(D: cfk.GradedComplex) -> TypeD:
    # lot of rectangles alone: add a throwaway free generator and remove it again
    M = lot(cfk.direct_sum(D, cfk.free("__free")))
    return M.sub([n for n in M.names() if n != "__free"])


def test_reduce_type_d_examples():
    M = fig3_m()
    assert reduce_type_d(M) == M
    pair = TypeD.build([("p", 0), ("q", 0)], [("p", "q", "i0")])
    assert reduce_type_d(pair).generators == ()
    # Fig. 3 plus an acyclic pair attached by a zigzag reduces back to Fig. 3
    extra = TypeD.build(list(M.generators) + [("p", 0), ("q", 0)],
                        list(M.arrows) + [("p", "q", "i0")])
    assert typed_isomorphism(reduce_type_d(extra), M) is not None


def test_reduce_type_d_zigzag():
    # x -ρ1-> q <-ι- p -ρ3-> y: cancelling p -> q leaves the zigzag arrow x -ρ1·ρ3-> y = 0
    M = TypeD.build([("x", 0), ("p", 1), ("q", 1), ("y", 0), ("w", 1)],
                    [("x", "q", "r1"), ("p", "q", "i1"), ("p", "y", "r2"), ("w", "q", "r23")])
    assert validate_type_d(M) == []
    out = reduce_type_d(M)
    assert out.names() == ["x", "y", "w"]
    # zigzags: x -ρ1-> q, p -ρ2-> y gives x -ρ12-> y; w -ρ23-> q, p -ρ2-> y gives ρ23·ρ2 = 0
    assert set(out.arrows) == {("x", "y", "r12")}
    assert validate_type_d(out) == []


# -- type A ----------------------------------------------------------------------------


def test_cfa_nu():
    A = cfa_nu()
    assert len(A.generators) == 1 and A.actions == ()
    assert validate_type_a(A) == []


def test_cable_drawn_table():
    A = cfa_cable31_drawn()
    assert len(A.actions) == 9
    assert Counter(len(a.rhos) + 1 for a in A.actions) == {1: 3, 2: 2, 3: 4}
    # the drawn table alone does not satisfy the A∞ relations
    assert len([v for v in validate_type_a(A) if v.kind == "A_INFINITY"]) == 4


def test_cable_completion():
    done, rep = complete_type_a(cfa_cable31_drawn())
    assert not rep.ambiguous and not rep.stuck
    assert len(done.completion) == 7
    expected = {
        Action("a1", ("r2", "r12", "r1"), "a3", 0),
        Action("a1", ("r2", "r12", "r12"), "c", 0),
        Action("a1", ("r2", "r12", "r123"), "b3", 0),
        Action("a2", ("r2", "r12"), "c", 0),
        Action("a2", ("r2", "r123"), "b3", 0),
        Action("a3", ("r23",), "b3", 0),
        Action("b1", ("r2", "r12", "r1"), "b3", 2),
    }
    assert set(done.completion) == expected
    assert validate_type_a(done) == []
    assert validate_type_a(cfa_cable31()) == []
    assert set(cfa_cable31_drawn().actions) <= set(cfa_cable31().actions)


def test_cable_hat_truncation():
    # U-free actions of the drawn table: m2(a3,ρ2), m2(c,ρ3), m3(a1,ρ2,ρ1), m3(a2,ρ2,ρ1)
    assert len(cfa_cable31_drawn().hat().actions) == 4
    assert all(a.upow == 0 for a in cfa_cable31().hat().actions)


def test_type_a_idempotent_violation():
    A = TypeA.build([("x", 0), ("y", 0)], [("x", ("r2",), "y", 0)])
    assert [v.kind for v in validate_type_a(A)] == ["IDEMPOTENT"]


# -- pairing ------------------------------------------------------------------------------


def test_nu_pairing_recovers_hat():
    P = box_tensor(cfa_nu(), lot(cfk.complex_c()), "hat")
    assert len(P) == 5 and not P.arrows
    assert cfk.hat_homology(P) == cfk.hat_homology(cfk.hat_truncate(cfk.complex_c()))


@settings(max_examples=100, deadline=None)
@given(multirect_complexes())
def test_nu_pairing_property(C):
    P = box_tensor(cfa_nu(), lot(C), "hat")
    assert brute_hat_homology(P) == brute_hat_homology(cfk.hat_truncate(C))


def test_unknot_cable():
    P = box_tensor(cfa_cable31(), cfd_unknot(), "minus")
    assert P.generators == ("c|z",) and not P.arrows


def test_cable_pairing_counts():
    P = box_tensor(cfa_cable31(), fig3_m(), "minus")
    assert len(P) == 53
    assert Counter(g.split("|")[0] == "c" for g in P.generators) == {True: 5, False: 48}
    R, _ = cfk.reduce(P)
    assert len(R) == 31
    assert sorted(Counter(a.coeff.u for a in R.arrows).items()) == [(1, 8), (2, 5), (6, 2)]
    assert all(a.coeff.v == 0 for a in R.arrows)
    touched = {a.src for a in R.arrows} | {a.dst for a in R.arrows}
    assert [g for g in R.generators if g not in touched] == ["c|z"]


def test_drawn_table_pairing_is_not_a_chain_complex_or_differs():
    # the literal nine-action table either breaks d² = 0 or gives a different reduced size
    try:
        P = box_tensor(cfa_cable31_drawn(), fig3_m(), "minus")
    except FloerError as e:
        assert e.code == "D_SQUARED"
    else:
        assert len(cfk.reduce(P)[0]) != 31


def test_box_tensor_nontermination_guard():
    A = TypeA.build([("x", 0)], [("x", ("r12",), "x", 1)])
    with pytest.raises(FloerError) as e:
        box_tensor(A, cfd_unknot(), "minus")
    assert e.value.code == "NONTERMINATION"


def test_box_tensor_bad_flavor():
    with pytest.raises(FloerError):
        box_tensor(cfa_nu(), cfd_unknot(), "plus")

from __future__ import annotations

import json
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from floercert import bordered, cfk, io
from floercert.cfk import Bidegree, GradedComplex
from floercert.errors import FloerError
from floercert.involutive import HatBasisData
from floercert.weird import (
    MUTATIONS,
    STAGES,
    PipelineOptions,
    check_weird_k0,
    check_weird_simple,
    fig6_consistency,
    run_k0_pipeline,
    verify_report,
)

from oracles import brute_invariant


def basis(n: int):
    return tuple(("e%d" % k, (0, 0)) for k in range(n))


def data(phi, psi, iota, v1="e0", v2="e1") -> HatBasisData:
    n = len(phi)
    return HatBasisData(basis(n), v1, v2, np.array(phi), np.array(psi), np.array(iota))


# -- simple predicate ----------------------------------------------------------------------


def test_simple_examples():
    z, eye = np.zeros((4, 4), dtype=np.uint8), np.eye(4, dtype=np.uint8)
    assert check_weird_simple(data(z, z, eye))
    assert check_weird_simple(data(z, z, eye, "e2", "e3"))
    swap = eye[[2, 1, 0, 3]]  # e0 <-> e2
    assert not check_weird_simple(data(z, z, swap))
    phi = z.copy()
    phi[1, 3] = 1  # Φ(e3) = v2
    assert not check_weird_simple(data(phi, z, eye))
    with pytest.raises(FloerError):
        check_weird_simple(HatBasisData(basis(3), "e0", "e1", np.zeros((3, 3))))


@st.composite
def small_data(draw):
    n = draw(st.integers(2, 5))
    mat = arrays(np.uint8, (n, n), elements=st.sampled_from([0, 0, 0, 1]))
    v1, v2 = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    return data(draw(mat), draw(mat), draw(mat), "e%d" % v1, "e%d" % v2)


@settings(max_examples=200, deadline=None)
@given(small_data())
def test_simple_vs_invariance_oracle(B):
    i1, i2 = B.index(B.v1), B.index(B.v2)
    rest = [k for k in range(B.n) if k not in (i1, i2)]
    expect = all(
        brute_invariant(m, [i1]) and brute_invariant(m, [i2]) and brute_invariant(m, rest)
        for m in (B.phi, B.psi, B.iota)
    )
    assert check_weird_simple(B) == expect


# -- the K0 predicate ------------------------------------------------------------------------


def test_k0_weird_pass(k0_report):
    R, M = k0_report.reduced, io.fig3_m()
    wc = check_weird_k0(R, M, io.fig6_table())
    assert wc.overall == "PASS" and len(wc.bullets) == 4
    assert wc.splitting["V1"] == "c|z" and wc.splitting["V2"] == "a1|v2"
    assert (wc.splitting["zeta"], wc.splitting["alpha"]) == ("a1|v2", "b1|v2")
    kinds = {f.kind: f for f in wc.facts}
    assert kinds["IOTA_FIXES_V1"].tag == "UNIQUE_BIDEGREE"
    assert kinds["PSI_KILLS_V1"].tag == kinds["V1_NOT_IN_IM_PSI"].tag == "FREE_SUMMAND"
    assert {"PHI_KILLS_V1", "V1_NOT_IN_IM_PHI", "V2_NOT_IN_IM_PHI"} <= set(kinds)
    for b in wc.bullets:
        assert b.evidence


def test_k0_forged_generator_fails_bullet_1(k0_report):
    R = k0_report.reduced
    forged = cfk.direct_sum(R, GradedComplex.build("F2U", [("forged", (1, 1))]))
    wc = check_weird_k0(forged, io.fig3_m(), io.fig6_table())
    assert wc.overall == "FAIL" and wc.first_failure == 1


def test_unknot_artifacts_fail():
    M = bordered.cfd_unknot()
    R, _ = cfk.reduce(bordered.box_tensor(bordered.cfa_cable31(), M, "minus"))
    R = R.with_degrees({"c|z": Bidegree(0, 0)})
    wc = check_weird_k0(R, M)
    assert wc.overall == "FAIL"
    verdicts = [b.verdict for b in wc.bullets]
    # no generator at (1,1) already breaks bullet 1; the missing (ζ -U-> α) summand breaks bullet 4
    assert verdicts[0] == "FAIL" and verdicts[3] == "FAIL"


# -- pipeline -----------------------------------------------------------------------------------


def test_pipeline_default(k0_report):
    rep = k0_report
    assert [s.name for s in rep.stages] == list(STAGES)
    assert rep.verdict == "PASS" and rep.failing_stage is None
    assert rep.render().splitlines()[-3:-1] == ["obstruction: PASS", "verdict: PASS"]
    assert rep.grading_mode in ("fit", "fig6", "fig6 (fit underdetermined)")
    R = rep.reduced
    phi = cfk.basepoint_phi(R)
    i = {n: k for k, n in enumerate(R.generators)}
    assert phi[i["b1|v2"], i["a1|v2"]] == 1 and phi[:, i["a1|v2"]].sum() == 1
    assert R.deg("a1|v2") == (1, 1) and R.deg("b1|v2") == (2, 0)


def test_pipeline_fig6_mode():
    rep = run_k0_pipeline(PipelineOptions(grading_mode="fig6"))
    assert rep.verdict == "PASS" and rep.grading_mode == "fig6"
    R = rep.reduced
    assert Counter(R.degrees) == Counter(io.fig6_table().degrees)
    assert [n for n, d in zip(R.generators, R.degrees) if d == (0, 0)] == ["c|z"]
    assert [n for n, d in zip(R.generators, R.degrees) if d == (1, 1)] == ["a1|v2"]


def test_pipeline_stop_after():
    rep = run_k0_pipeline(PipelineOptions(stop_after="lot"))
    assert [s.name for s in rep.stages] == ["build-C", "lot"]
    assert rep.stages[1].verdict == "PASS" and rep.verdict == "INCOMPLETE"
    with pytest.raises(FloerError):
        PipelineOptions(stop_after="nope")


@pytest.mark.parametrize("key", sorted(MUTATIONS))
def test_mutations_fail(key):
    rep = run_k0_pipeline(PipelineOptions(mutations=[key]))
    assert rep.verdict == "FAIL"
    assert rep.failing_stage in STAGES
    assert rep.failing_stage != "build-C"


def test_mutation_names_normalise():
    rep = run_k0_pipeline(PipelineOptions(mutations=["fig4:drop-m2(c,ρ3)"], stop_after="pair"))
    assert rep.options.mutations == ("fig4:drop-m2(c,r3)",)


def test_pipeline_deterministic(k0_report):
    again = run_k0_pipeline()
    assert io.dumps(again.to_json()) == io.dumps(k0_report.to_json())


def test_verify_report(k0_report):
    obj = json.loads(io.dumps(k0_report.to_json()))
    assert verify_report(obj).overall == "PASS"
    tampered = json.loads(io.dumps(k0_report.to_json()))
    tampered["hat_basis"]["phi"][0][1] ^= 1
    assert verify_report(tampered).overall == "FAIL"
    assert verify_report({"stages": []}).overall == "FAIL"


def test_fig6_consistency():
    ok, notes = fig6_consistency(io.fig6_table())
    assert ok and notes == []
    F = io.fig6_table()
    degs = F.degree_map()
    degs["omega"] = Bidegree(0, 1)
    ok, notes = fig6_consistency(F.with_degrees(degs))
    assert not ok

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from floercert import _kernels
from floercert.errors import FloerError
from floercert.involutive import (
    CURLY_T,
    CURLY_T_TEXT,
    UNKNOWN,
    Fact,
    HatBasisData,
    TensorWord,
    build_curly_t,
    canonical_s,
    commute_phi_psi,
    curly_t_coefficient,
    curly_t_mismatch,
    im_membership,
    obstruction_certificate,
    parse_term,
    render_term,
    sweep_term,
    t_sum_coefficient,
)

from oracles import brute_column_space

BASIS4 = (("v1", (0, 0)), ("v2", (1, 1)), ("w", (2, 0)), ("z", (0, 2)))
ALL_FACTS = (
    Fact("IOTA_FIXES_V1", "STRUCTURAL", "UNIQUE_BIDEGREE"),
    Fact("IOTA_FIXES_V2", "STRUCTURAL", "UNIQUE_BIDEGREE"),
    Fact("PSI_KILLS_V1", "STRUCTURAL", "FREE_SUMMAND"),
    Fact("V1_NOT_IN_IM_PSI", "STRUCTURAL", "FREE_SUMMAND"),
    Fact("PHI_KILLS_V1", "COMPUTED", "phi"),
    Fact("V1_NOT_IN_IM_PHI", "COMPUTED", "phi"),
)


def synthetic(phi_w_to_v2: bool, facts=ALL_FACTS, psi=None, iota=None) -> HatBasisData:
    phi = np.zeros((4, 4), dtype=np.uint8)
    if phi_w_to_v2:
        phi[1, 2] = 1
    else:
        phi[3, 2] = 1  # Φ(w) = z, harmless
    fs = list(facts)
    if not phi_w_to_v2:
        fs.append(Fact("V2_NOT_IN_IM_PHI", "COMPUTED", "phi"))
    return HatBasisData(BASIS4, "v1", "v2", phi, psi, iota, tuple(fs))


def words(B: HatBasisData):
    names = B.names
    for p in names:
        for q in names:
            for r in names:
                for t in names:
                    yield TensorWord(p, q, r, t)


# -- data model ----------------------------------------------------------------------------


def test_hat_basis_validation():
    with pytest.raises(FloerError) as e:
        HatBasisData((("a", None),), "a", "a", np.zeros((1, 1)))
    assert e.value.code == "PRECONDITION"
    with pytest.raises(FloerError) as e:
        HatBasisData(BASIS4, "v1", "v2", np.zeros((3, 3)))
    assert e.value.code == "DIMENSION_MISMATCH"
    with pytest.raises(FloerError) as e:
        synthetic(True, ALL_FACTS + (Fact("V2_NOT_IN_IM_PHI", "COMPUTED", "phi"),))
    assert e.value.code == "FACT_MISMATCH"
    with pytest.raises(FloerError) as e:
        Fact("NOT_A_FACT", "COMPUTED")
    assert e.value.code == "BAD_FACT"


def test_structural_fact_checked_against_full_psi():
    psi = np.zeros((4, 4), dtype=np.uint8)
    psi[0, 2] = 1  # v1 in Im Ψ
    with pytest.raises(FloerError) as e:
        synthetic(False, psi=psi)
    assert e.value.code == "FACT_MISMATCH"


def test_hat_basis_json_roundtrip(k0_basis):
    for B in (synthetic(False), k0_basis):
        again = HatBasisData.from_json(B.to_json())
        assert again.to_json() == B.to_json()


def test_three_valued_psi():
    B = synthetic(False)
    psi = B.tri("psi")
    assert (psi[:, 0] == 0).all() and (psi[0, :] == 0).all()
    assert (psi[1:, 1:] == UNKNOWN).all()


# -- 𝒯 --------------------------------------------------------------------------------------


def test_curly_t_shape():
    assert len(CURLY_T) == 12 == len(set(CURLY_T))
    for text, term in zip(CURLY_T_TEXT, CURLY_T):
        flat = [f for slot in term for f in slot]
        assert "phi" in flat and "psi" in flat
        assert render_term(term) == text
        assert parse_term(text) == term
    with pytest.raises(FloerError):
        parse_term("Φ⊗1⊗1")
    with pytest.raises(FloerError):
        parse_term("Φ⊗1⊗1⊗1")  # slot 1 must be dual


def test_build_curly_t():
    assert build_curly_t(2) == {(("psi",), ("phi",))}
    assert build_curly_t(4) == frozenset(CURLY_T)
    assert curly_t_mismatch(4) == (frozenset(), frozenset())
    for n in (3, 4):
        left, right = build_curly_t(n, "left"), build_curly_t(n, "right")
        assert commute_phi_psi(left) == commute_phi_psi(right)
    assert build_curly_t(3, "left") != build_curly_t(3, "right")
    with pytest.raises(FloerError):
        build_curly_t(1)


# -- t-class coefficient -----------------------------------------------------------------------


def test_t_sum_k0(k0_basis):
    value, cert = t_sum_coefficient(k0_basis)
    assert value == 1 and cert.overall == "PASS" and len(cert.steps) == 2
    assert any("V1_NOT_IN_IM_PSI" in e for e in cert.steps[1].evidence)


def test_t_sum_with_zero_psi():
    B = synthetic(False, psi=np.zeros((4, 4), dtype=np.uint8))
    s = TensorWord("w", "z", "w", "v2")  # slot 3 is neither v1 nor in Im Ψ
    value, cert = t_sum_coefficient(B, s)
    assert value == 0 and cert.steps[1].verdict == "PASS"
    value, _ = t_sum_coefficient(B, TensorWord("w", "z", "z", "w"))
    assert value == 1


def test_t_sum_unknown_without_facts():
    B = synthetic(False, facts=ALL_FACTS[:2])
    # <Φ(w), z> = 1, so the second summand hinges on the undetermined <Ψ(v2), w>
    value, cert = t_sum_coefficient(B, TensorWord("w", "v2", "w", "z"))
    assert value == UNKNOWN and cert.overall == "FAIL"
    assert cert.steps[1].verdict == "UNKNOWN"
    # at the canonical s the Φ-factor <Φ(v2), v2> is already 0
    assert t_sum_coefficient(B)[0] == 1


# -- curly-t coefficients ---------------------------------------------------------------------


def test_curly_t_zero_on_k0(k0_basis):
    for term in CURLY_T:
        assert sweep_term(k0_basis, term) == (0, 0)
    x = TensorWord(k0_basis.v2, k0_basis.v1, k0_basis.v1, k0_basis.v2)
    value, verdicts = curly_t_coefficient(k0_basis, x)
    assert value == 0 and all(v.value == 0 for v in verdicts)


def test_curly_t_synthetic_slot4_failure():
    B = synthetic(True)
    term = parse_term("Ψ*⊗1⊗1⊗Φ")
    ones, unknown = sweep_term(B, term)
    assert ones + unknown > 0
    value, verdicts = curly_t_coefficient(B, TensorWord("v2", "v1", "v1", "w"))
    flagged = {v.term: v.value for v in verdicts if v.value != 0}
    assert flagged == {"Ψ*⊗1⊗1⊗Φ": UNKNOWN}
    assert value == UNKNOWN


def test_curly_t_slot2_kill_reason():
    B = synthetic(False)
    _, verdicts = curly_t_coefficient(B, TensorWord("v2", "v1", "v1", "w"))
    v = next(v for v in verdicts if v.term == "1⊗Ψ*⊗1⊗Φ")
    assert v.value == 0 and v.slot == 2 and "PSI_KILLS_V1" in v.reason


def _direct(B: HatBasisData, x: TensorWord, s: TensorWord) -> int:
    mats = {"phi": B.phi.astype(int), "psi": B.psi.astype(int)}
    total = 0
    xs = [B.index(n) for n in (x.p, x.q, x.r, x.t)]
    ss = [B.index(n) for n in (s.p, s.q, s.r, s.t)]
    for term in CURLY_T:
        prod = 1
        for k, factors in enumerate(term):
            vec = np.zeros(B.n, dtype=int)
            vec[xs[k]] = 1
            for f in factors:
                # duals act on row vectors from the right, primals on columns from the left
                vec = (vec @ mats[f]) % 2 if k < 2 else (mats[f] @ vec) % 2
            prod *= int(vec[ss[k]])
        total ^= prod
    return total


@st.composite
def full_bases(draw):
    n = draw(st.integers(2, 6))
    basis = tuple(("e%d" % k, (0, 0)) for k in range(n))
    mat = arrays(np.uint8, (n, n), elements=st.integers(0, 1))
    phi, psi = draw(mat), draw(mat)
    v1, v2 = draw(st.lists(st.sampled_from([b[0] for b in basis]), min_size=2, max_size=2, unique=True))
    return HatBasisData(basis, v1, v2, phi, psi, np.eye(n, dtype=np.uint8))


@settings(max_examples=60, deadline=None)
@given(full_bases(), st.data())
def test_curly_t_matches_direct_evaluation(B, data):
    s = canonical_s(B)
    names = st.sampled_from(B.names)
    for _ in range(5):
        x = TensorWord(data.draw(names), data.draw(names), data.draw(names), data.draw(names))
        value, _ = curly_t_coefficient(B, x, s)
        assert value == _direct(B, x, s)


@settings(max_examples=25, deadline=None)
@given(full_bases())
def test_sweep_matches_word_by_word(B):
    if B.n > 4:
        return
    s = canonical_s(B)
    for term in CURLY_T:
        ones, unknown = sweep_term(B, term, s)
        assert unknown == 0
        count = 0
        for x in words(B):
            vals = []
            for k, factors in enumerate(term):
                vec = np.zeros(B.n, dtype=int)
                vec[B.index((x.p, x.q, x.r, x.t)[k])] = 1
                for f in factors:
                    m = getattr(B, f).astype(int)
                    vec = (vec @ m) % 2 if k < 2 else (m @ vec) % 2
                vals.append(int(vec[B.index((s.p, s.q, s.r, s.t)[k])]))
            count += all(vals)
        assert ones == count


# -- obstruction certificate ------------------------------------------------------------------


def test_obstruction_k0(k0_basis):
    cert = obstruction_certificate(k0_basis)
    assert cert.overall == "PASS"
    assert len(cert.steps) == 3 + 12


def test_obstruction_synthetic_failures():
    bad = obstruction_certificate(synthetic(True))
    assert bad.overall == "FAIL"
    failing = [s.claim for s in bad.steps if s.verdict != "PASS"]
    assert failing == ["term Ψ*⊗1⊗1⊗Φ contributes 0 to the s-coefficient of 𝒯(x) for all x"]
    B = synthetic(False)
    assert obstruction_certificate(B).overall == "PASS"
    missing = B.without(B.facts_of("IOTA_FIXES_V2")[0])
    cert = obstruction_certificate(missing)
    assert cert.overall == "FAIL" and cert.first_failure is cert.steps[0]


@pytest.mark.parametrize("start", ["k0", "synthetic-bad", "synthetic-good"])
def test_obstruction_monotone_in_facts(start, k0_basis):
    B = {"k0": k0_basis, "synthetic-bad": synthetic(True), "synthetic-good": synthetic(False)}[start]
    before = obstruction_certificate(B).overall
    for f in B.facts:
        after = obstruction_certificate(B.without(f)).overall
        assert not (before == "FAIL" and after == "PASS")
        if f.kind in ("IOTA_FIXES_V1", "IOTA_FIXES_V2"):
            assert after == "FAIL"
    # with Φ̂ known, every Ψ-dependent product also has a vanishing Φ-factor at s,
    # so the Ψ facts are redundant for the verdict (they still appear as evidence)
    psi_facts = [f for f in B.facts if f.kind in ("PSI_KILLS_V1", "V1_NOT_IN_IM_PSI")]
    if psi_facts and before == "PASS":
        C = B
        for f in psi_facts:
            C = C.without(f)
        assert obstruction_certificate(C).overall == "PASS"


# -- image membership -----------------------------------------------------------------------------


def test_im_membership_examples():
    eye = np.eye(3, dtype=np.uint8)
    assert im_membership(np.zeros(3), eye)
    assert not im_membership(np.array([1, 0, 0]), eye)
    swap = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    assert im_membership(np.array([1, 1]), swap)
    assert not im_membership(np.array([1, 0]), swap)
    with pytest.raises(FloerError):
        im_membership(np.zeros(2), eye)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    arrays(np.uint8, (n, n), elements=st.integers(0, 1)), arrays(np.uint8, (n,), elements=st.integers(0, 1)))))
def test_im_membership_vs_enumeration(pair):
    iota, v = pair
    image = brute_column_space((iota ^ np.eye(len(v), dtype=np.uint8)) & 1)
    assert im_membership(v, iota) == (tuple(int(x) for x in v) in image)


def test_backend_recorded():
    assert _kernels.BACKEND in ("numba", "numpy")

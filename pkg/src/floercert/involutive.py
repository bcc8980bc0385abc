"""Hat-level involutive calculus: t-class coefficients, the 12-term operator
𝒯 and the obstruction certificate.

Matrices act on column vectors: column ``j`` of Φ̂ holds Φ̂(basis[j]).  The
dual of a map F acts by F*(a*) = Σ_c <F(c), a> c*.

Ψ̂ is usually only partially known.  Evaluation is three-valued (0, 1,
UNKNOWN): entries of Ψ̂ are UNKNOWN unless a fact pins them to 0, and
UNKNOWN is never silently read as 0.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from ._kernels import UNKNOWN, tri_matmul
from .cfk import Bidegree
from .errors import FloerError

FACT_KINDS = (
    "PHI_KILLS_V1",
    "PSI_KILLS_V1",
    "V1_NOT_IN_IM_PHI",
    "V1_NOT_IN_IM_PSI",
    "V2_NOT_IN_IM_PHI",
    "IOTA_FIXES_V1",
    "IOTA_FIXES_V2",
)

# Each fact is a coordinate statement about one matrix:
#   *_KILLS_V1       column v1 vanishes            (F(v1) = 0)
#   V*_NOT_IN_IM_*   row v vanishes                (no image has a v-coefficient)
#   IOTA_FIXES_V     row and column v equal e_v    (ι(v) = v and v occurs only in ι(v))
_FACT_SHAPE = {
    "PHI_KILLS_V1": ("phi", "col", "v1"),
    "PSI_KILLS_V1": ("psi", "col", "v1"),
    "V1_NOT_IN_IM_PHI": ("phi", "row", "v1"),
    "V1_NOT_IN_IM_PSI": ("psi", "row", "v1"),
    "V2_NOT_IN_IM_PHI": ("phi", "row", "v2"),
    "IOTA_FIXES_V1": ("iota", "fix", "v1"),
    "IOTA_FIXES_V2": ("iota", "fix", "v2"),
}


@dataclass(frozen=True)
class Fact:
    kind: str
    evidence: str  # COMPUTED or STRUCTURAL
    tag: str = ""  # lemma tag for STRUCTURAL facts, matrix name for COMPUTED ones
    inputs: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in FACT_KINDS:
            raise FloerError("BAD_FACT", "unknown fact kind %r" % self.kind)
        if self.evidence not in ("COMPUTED", "STRUCTURAL"):
            raise FloerError("BAD_FACT", "unknown evidence kind %r" % self.evidence)

    @property
    def ref(self) -> str:
        return "%s[%s:%s]" % (self.kind, self.evidence, self.tag)

    def to_json(self) -> dict:
        return {"kind": self.kind, "evidence": {"kind": self.evidence, "tag": self.tag, "inputs": list(self.inputs)}}

    @classmethod
    def from_json(cls, obj) -> Fact:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FloerError("PARSE", "fact must be an object with a kind")
        ev = obj.get("evidence", {})
        if not isinstance(ev, dict):
            raise FloerError("PARSE", "fact evidence must be an object")
        inputs = ev.get("inputs", [])
        if not isinstance(inputs, list) or not all(isinstance(i, str) for i in inputs):
            raise FloerError("PARSE", "fact evidence inputs must be strings")
        return cls(obj["kind"], ev.get("kind", "STRUCTURAL"), str(ev.get("tag", "")), tuple(inputs))


def fact_holds(kind: str, mat: np.ndarray, where: dict[str, int]) -> bool:
    """``where`` maps "v1"/"v2" to basis positions."""
    _, shape, which = _FACT_SHAPE[kind]
    k = where[which]
    if shape == "col":
        return not mat[:, k].any()
    if shape == "row":
        return not mat[k, :].any()
    e = np.zeros(mat.shape[0], dtype=mat.dtype)
    e[k] = 1
    return bool((mat[:, k] == e).all() and (mat[k, :] == e).all())


@dataclass(frozen=True)
class HatBasisData:
    basis: tuple[tuple[str, Optional[Bidegree]], ...]
    v1: str
    v2: str
    phi: np.ndarray
    psi: Optional[np.ndarray] = None
    iota: Optional[np.ndarray] = None
    facts: tuple[Fact, ...] = ()
    _idx: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        names = [b[0] for b in self.basis]
        if len(set(names)) != len(names):
            raise FloerError("PRECONDITION", "basis names must be unique")
        if self.v1 == self.v2:
            raise FloerError("PRECONDITION", "v1 and v2 must differ")
        if self.v1 not in names or self.v2 not in names:
            raise FloerError("PRECONDITION", "v1 and v2 must be basis elements")
        n = len(names)
        for label in ("phi", "psi", "iota"):
            m = getattr(self, label)
            if m is None:
                continue
            m = np.asarray(m, dtype=np.uint8)
            if m.shape != (n, n):
                raise FloerError("DIMENSION_MISMATCH", "%s is %s, basis has %d elements" % (label, m.shape, n))
            object.__setattr__(self, label, m)
        object.__setattr__(self, "_idx", {nm: i for i, nm in enumerate(names)})
        for f in self.facts:
            mat = getattr(self, _FACT_SHAPE[f.kind][0])
            if f.evidence == "COMPUTED" and mat is None:
                raise FloerError("FACT_MISMATCH", "%s claims COMPUTED evidence but the matrix is absent" % f.ref)
            if mat is not None and not fact_holds(f.kind, mat, self.positions()):
                raise FloerError("FACT_MISMATCH", "%s does not hold for the stored matrix" % f.ref)

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> list[str]:
        return [b[0] for b in self.basis]

    def index(self, name: str) -> int:
        return self._idx[name]

    def positions(self) -> dict[str, int]:
        return {"v1": self._idx[self.v1], "v2": self._idx[self.v2]}

    def has(self, kind: str) -> bool:
        return any(f.kind == kind for f in self.facts)

    def facts_of(self, kind: str) -> list[Fact]:
        return [f for f in self.facts if f.kind == kind]

    def without(self, fact: Fact) -> HatBasisData:
        fs = list(self.facts)
        fs.remove(fact)
        return HatBasisData(self.basis, self.v1, self.v2, self.phi, self.psi, self.iota, tuple(fs))

    # three-valued views ---------------------------------------------------

    def tri(self, which: str) -> np.ndarray:
        """Matrix with UNKNOWN where neither data nor facts determine the entry."""
        mat = getattr(self, which)
        if mat is not None:
            return mat.astype(np.int8)
        out = np.full((self.n, self.n), UNKNOWN, dtype=np.int8)
        for f in self.facts:
            m, shape, which_v = _FACT_SHAPE[f.kind]
            if m != which:
                continue
            k = self._idx[self.v1 if which_v == "v1" else self.v2]
            if shape == "col":
                out[:, k] = 0
            elif shape == "row":
                out[k, :] = 0
        return out

    def to_json(self) -> dict:
        out = {
            "basis": [{"name": nm, "deg": None if d is None else [d[0], d[1]]} for nm, d in self.basis],
            "v1": self.v1,
            "v2": self.v2,
            "phi": [[int(v) for v in r] for r in self.phi],
            "facts": [f.to_json() for f in self.facts],
        }
        if self.psi is not None:
            out["psi"] = [[int(v) for v in r] for r in self.psi]
        if self.iota is not None:
            out["iota"] = [[int(v) for v in r] for r in self.iota]
        return out

    @classmethod
    def from_json(cls, obj) -> HatBasisData:
        from .io import _deg, _need, matrix_from_json

        basis = []
        for k, b in enumerate(_need(obj, "basis", list, "hat basis")):
            basis.append((_need(b, "name", str, "basis[%d]" % k), _deg(b.get("deg"), "basis[%d].deg" % k)))
        n = len(basis)
        phi = matrix_from_json(_need(obj, "phi", list, "hat basis"), n, "phi")
        psi = matrix_from_json(obj["psi"], n, "psi") if obj.get("psi") is not None else None
        iota = matrix_from_json(obj["iota"], n, "iota") if obj.get("iota") is not None else None
        facts = tuple(Fact.from_json(f) for f in obj.get("facts", []))
        return cls(tuple(basis), _need(obj, "v1", str, "hat basis"), _need(obj, "v2", str, "hat basis"),
                   phi, psi, iota, facts)


def digest(*arrays: np.ndarray) -> str:
    h = hashlib.sha256()
    for a in arrays:
        a = np.ascontiguousarray(np.asarray(a, dtype=np.uint8))
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    return "sha256:" + h.hexdigest()[:16]


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass
class Step:
    claim: str
    evidence: list[str]
    verdict: str  # PASS | FAIL | UNKNOWN
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"claim": self.claim, "evidence": list(self.evidence), "verdict": self.verdict, "data": self.data}


@dataclass
class Certificate:
    title: str
    steps: list[Step] = field(default_factory=list)

    @property
    def overall(self) -> str:
        return "PASS" if self.steps and all(s.verdict == "PASS" for s in self.steps) else "FAIL"

    @property
    def first_failure(self) -> Optional[Step]:
        return next((s for s in self.steps if s.verdict != "PASS"), None)

    def add(self, claim: str, evidence: Iterable[str], ok, data: Optional[dict] = None) -> Step:
        verdict = ok if isinstance(ok, str) else ("PASS" if ok else "FAIL")
        s = Step(claim, list(evidence), verdict, data or {})
        self.steps.append(s)
        return s

    def to_json(self) -> dict:
        return {"title": self.title, "steps": [s.to_json() for s in self.steps], "overall": self.overall}

    def render(self) -> str:
        lines = ["%s: %s" % (self.title, self.overall)]
        for k, s in enumerate(self.steps, 1):
            lines.append("  [%d] %s: %s" % (k, s.verdict, s.claim))
            for e in s.evidence:
                lines.append("        - %s" % e)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# the operator 𝒯
# ---------------------------------------------------------------------------

CURLY_T_TEXT = (
    "Ψ*⊗Φ*⊗1⊗1",
    "Ψ*⊗1⊗Φ⊗1",
    "Ψ*⊗1⊗1⊗Φ",
    "1⊗Ψ*⊗Φ⊗1",
    "1⊗Ψ*⊗1⊗Φ",
    "1⊗1⊗Ψ⊗Φ",
    "Ψ*⊗Φ*⊗Ψ⊗Φ",
    "1⊗Ψ*⊗ΨΦ⊗Φ",
    "Ψ*⊗1⊗ΨΦ⊗Φ",
    "Ψ*⊗Ψ*Φ*⊗Φ⊗1",
    "Ψ*⊗Ψ*Φ*⊗1⊗Φ",
    "Ψ*⊗Ψ*Φ*⊗ΨΦ⊗Φ",
)

Term = tuple[tuple[str, ...], ...]  # per slot, factor names in application order


def parse_slot(text: str) -> tuple[str, ...]:
    """``ΨΦ`` -> ("psi", "phi"): factors listed left to right are applied in that order."""
    t = text.replace("*", "")
    if t == "1":
        return ()
    out = []
    for ch in t:
        if ch == "Φ":
            out.append("phi")
        elif ch == "Ψ":
            out.append("psi")
        else:
            raise FloerError("PARSE", "bad 𝒯 factor %r" % text)
    return tuple(out)


def parse_term(text: str) -> Term:
    slots = text.split("⊗")
    if len(slots) != 4:
        raise FloerError("PARSE", "𝒯 terms have four slots: %r" % text)
    for k, s in enumerate(slots):
        starred = "*" in s
        if s != "1" and starred != (k < 2):
            raise FloerError("PARSE", "slot %d of %r has the wrong variance" % (k + 1, text))
    return tuple(parse_slot(s) for s in slots)


CURLY_T: tuple[Term, ...] = tuple(parse_term(t) for t in CURLY_T_TEXT)


def render_term(term: Term, dual_slots: Sequence[int] = (0, 1)) -> str:
    sym = {"phi": "Φ", "psi": "Ψ"}
    parts = []
    for k, slot in enumerate(term):
        if not slot:
            parts.append("1")
        else:
            star = "*" if k in dual_slots else ""
            parts.append("".join(sym[f] + star for f in slot))
    return "⊗".join(parts)


@dataclass(frozen=True)
class TensorWord:
    p: str  # slot 1, dual
    q: str  # slot 2, dual
    r: str  # slot 3
    t: str  # slot 4

    def render(self) -> str:
        return "%s*⊗%s*⊗%s⊗%s" % (self.p, self.q, self.r, self.t)


def canonical_s(B: HatBasisData) -> TensorWord:
    return TensorWord(B.v2, B.v1, B.v1, B.v2)


def _identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int8)


def _slot_matrix(B: HatBasisData, factors: tuple[str, ...], dual: bool) -> np.ndarray:
    mats = [B.tri(f) for f in factors]
    out = _identity(B.n)
    for m in mats:
        # dual slots: P = L1·…·Lk ; primal slots: P = Lk·…·L1
        out = tri_matmul(out, m) if dual else tri_matmul(m, out)
    return out


def slot_vectors(B: HatBasisData, term: Term, s: TensorWord) -> list[np.ndarray]:
    """Per slot, the three-valued coefficient of the s-entry as a function of the input basis element."""
    i = B.index
    P = [_slot_matrix(B, term[k], k < 2) for k in range(4)]
    return [P[0][:, i(s.p)], P[1][:, i(s.q)], P[2][i(s.r), :], P[3][i(s.t), :]]


def _tri_prod(vals: Iterable[int]) -> int:
    vals = list(vals)
    if any(v == 0 for v in vals):
        return 0
    if any(v == UNKNOWN for v in vals):
        return UNKNOWN
    return 1


def _tri_add(a: int, b: int) -> int:
    if UNKNOWN in (a, b):
        return UNKNOWN
    return a ^ b


_SLOT_FACTS = {
    # (slot, last-applied factor) -> fact that annihilates the slot
    (1, "phi"): "PHI_KILLS_V1",
    (1, "psi"): "PSI_KILLS_V1",
    (2, "phi"): "V1_NOT_IN_IM_PHI",
    (2, "psi"): "V1_NOT_IN_IM_PSI",
    (3, "phi"): "V2_NOT_IN_IM_PHI",
}


def _slot_reason(B: HatBasisData, term: Term, slot: int) -> str:
    factors = term[slot]
    kind = _SLOT_FACTS.get((slot, factors[-1])) if factors else None
    if kind and B.has(kind):
        return " + ".join(f.ref for f in B.facts_of(kind))
    mat = factors[-1] if factors else "identity"
    return "computed from %ŝ" % {"phi": "Φ", "psi": "Ψ"}.get(mat, mat)


@dataclass
class TermVerdict:
    term: str
    value: int  # 0, 1 or UNKNOWN
    slot: Optional[int]  # 1-based slot that vanished, if any
    reason: str


def curly_t_coefficient(B: HatBasisData, x: TensorWord, s: Optional[TensorWord] = None) -> tuple[int, list[TermVerdict]]:
    """Coefficient of s in 𝒯(x): 0, 1 or UNKNOWN, with a verdict per term."""
    s = s or canonical_s(B)
    idx = [B.index(x.p), B.index(x.q), B.index(x.r), B.index(x.t)]
    total = 0
    verdicts = []
    for text, term in zip(CURLY_T_TEXT, CURLY_T):
        vecs = slot_vectors(B, term, s)
        vals = [int(v[i]) for v, i in zip(vecs, idx)]
        val = _tri_prod(vals)
        zero_slot = next((k for k in range(4) if vals[k] == 0), None)
        reason = _slot_reason(B, term, zero_slot) if zero_slot is not None else (
            "UNKNOWN: no fact discharges this term" if val == UNKNOWN else "nonzero")
        verdicts.append(TermVerdict(text, val, None if zero_slot is None else zero_slot + 1, reason))
        total = _tri_add(total, val)
    return total, verdicts


def t_sum_coefficient(B: HatBasisData, s: Optional[TensorWord] = None) -> tuple[int, Certificate]:
    """Coefficient of s in Σ_{x,y} x*⊗y*⊗(y⊗x + Ψ(y)⊗Φ(x))."""
    if B.n < 2:
        raise FloerError("PRECONDITION", "basis needs at least two elements")
    s = s or canonical_s(B)
    i = B.index
    cert = Certificate("t-class coefficient of %s" % s.render())
    first = int(s.r == s.q and s.t == s.p)
    cert.add("first summand: only (x,y) = (%s,%s) contributes, coefficient %d" % (s.p, s.q, first),
             ["direct evaluation of y⊗x"], True, {"value": first})
    psi = B.tri("psi")[i(s.r), i(s.q)]
    phi = B.tri("phi")[i(s.t), i(s.p)]
    second = _tri_prod([int(psi), int(phi)])
    evidence = []
    if psi == 0:
        evidence.append("<Ψ(%s),%s> = 0: %s" % (s.q, s.r, _psi_entry_reason(B, s.r, s.q)))
    if phi == 0:
        evidence.append("<Φ(%s),%s> = 0 computed from Φ̂ %s" % (s.p, s.t, digest(B.phi)))
    if second == UNKNOWN:
        evidence.append("UNKNOWN: <Ψ(%s),%s> is not determined by the facts" % (s.q, s.r))
    cert.add("second summand <Ψ(y),%s><Φ(x),%s> vanishes at (x,y) = (%s,%s)" % (s.r, s.t, s.p, s.q),
             evidence, "PASS" if second == 0 else ("UNKNOWN" if second == UNKNOWN else "FAIL"), {"value": second})
    return _tri_add(first, second), cert


def _psi_entry_reason(B: HatBasisData, row: str, col: str) -> str:
    if B.psi is not None:
        return "computed from Ψ̂ %s" % digest(B.psi)
    refs = []
    if row == B.v1:
        refs += [f.ref for f in B.facts_of("V1_NOT_IN_IM_PSI")]
    if col == B.v1:
        refs += [f.ref for f in B.facts_of("PSI_KILLS_V1")]
    return " or ".join(refs) or "no fact"


def sweep_term(B: HatBasisData, term: Term, s: Optional[TensorWord] = None, kernel=None) -> tuple[int, int]:
    """(#words with coefficient 1, #words with UNKNOWN coefficient) over all n⁴ basis words."""
    s = s or canonical_s(B)
    kernel = kernel or _kernels.tensor_sweep
    return kernel(*slot_vectors(B, term, s))


def obstruction_certificate(B: HatBasisData) -> Certificate:
    """Certify that the s-coefficient separates t_id + t_f from Im(1 + ι)."""
    cert = Certificate("obstruction: t_id + t_f not in Im(1+ι)")
    s = canonical_s(B)
    missing = [k for k in ("IOTA_FIXES_V1", "IOTA_FIXES_V2") if not B.has(k)]
    cert.add("ι fixes v1 and v2 (IOTA_FIXES_V1, IOTA_FIXES_V2 present)",
             [f.ref for k in ("IOTA_FIXES_V1", "IOTA_FIXES_V2") for f in B.facts_of(k)]
             + ["missing: %s" % m for m in missing], not missing)
    value, tcert = t_sum_coefficient(B, s)
    cert.add("coefficient of s = %s in t_id + t_f is 1" % s.render(),
             ["%s: %s (%s)" % (st.verdict, st.claim, "; ".join(st.evidence)) for st in tcert.steps],
             value == 1, {"value": value})
    cert.add("ι*⊗ι*⊗ι⊗ι preserves the s-coefficient",
             ["slot k of s is v1 or v2; ι has row and column e_v there by %s"
              % ", ".join(f.ref for k in ("IOTA_FIXES_V1", "IOTA_FIXES_V2") for f in B.facts_of(k))]
             if not missing else ["missing ι facts"], not missing)
    n = B.n
    for text, term in zip(CURLY_T_TEXT, CURLY_T):
        vecs = slot_vectors(B, term, s)
        ones, unk = _kernels.tensor_sweep(*vecs)
        zero_slots = [k + 1 for k, v in enumerate(vecs) if not v.any()]
        if zero_slots:
            k = zero_slots[0]
            evidence = ["slot %d coefficient vanishes for every basis element: %s" % (k, _slot_reason(B, term, k - 1))]
        else:
            evidence = ["no slot vanishes identically"]
        evidence.append("exhaustive sweep over %d words (%s kernel): %d with coefficient 1, %d UNKNOWN"
                        % (n ** 4, _kernels.BACKEND, ones, unk))
        verdict = "PASS" if ones == 0 and unk == 0 else ("UNKNOWN" if ones == 0 else "FAIL")
        cert.add("term %s contributes 0 to the s-coefficient of 𝒯(x) for all x" % text, evidence, verdict,
                 {"words": n ** 4, "ones": ones, "unknown": unk, "zero_slots": zero_slots})
    return cert


def im_membership(v: np.ndarray, iota: np.ndarray) -> bool:
    """True iff v lies in the image of 1 + ι over F2."""
    iota = np.asarray(iota, dtype=np.uint8)
    v = np.asarray(v, dtype=np.uint8).reshape(-1)
    if iota.ndim != 2 or iota.shape[0] != iota.shape[1] or iota.shape[0] != v.shape[0]:
        raise FloerError("DIMENSION_MISMATCH", "matrix %s vs vector of length %d" % (iota.shape, v.shape[0]))
    if iota.shape[0] > 1 << 16:
        raise FloerError("DIMENSION_MISMATCH", "dimension above the 2^16 sanity bound")
    m = (iota ^ np.eye(iota.shape[0], dtype=np.uint8)) & 1
    return _kernels.in_column_space(m, v & 1)


# ---------------------------------------------------------------------------
# exploratory: expanding iterated connected sums
# ---------------------------------------------------------------------------


def _compose(second: Term, first: Term) -> Optional[Term]:
    """second ∘ first, slotwise; None when some slot contains Φ² or Ψ²."""
    out = []
    for a, b in zip(first, second):
        w = a + b
        if any(w[k] == w[k + 1] for k in range(len(w) - 1)):
            return None
        out.append(w)
    return tuple(out)


def _xor(acc: set, t: Optional[Term]) -> None:
    if t is not None:
        acc ^= {t}


def _slot_unit(n: int, k: int, f: str) -> Term:
    return tuple((f,) if j == k else () for j in range(n))


def build_curly_t(n: int, split: str = "right") -> frozenset:
    """Formal expansion of 𝒯 with ι_{1..n} = (1+𝒯)∘ι^{⊗n}.

    One connected-sum step contributes (1 + Ψ_A⊗Φ_B), with Φ and Ψ of a
    tensor product acting by the Leibniz rule.  ``split="right"`` peels
    off the first factor, ``"left"`` the last one.  Terms are per-slot
    factor words in application order.
    """
    if n < 2:
        raise FloerError("PRECONDITION", "need at least two factors")
    if split not in ("right", "left"):
        raise FloerError("PRECONDITION", "split must be 'right' or 'left'")
    one = tuple(() for _ in range(n))

    def expand(lo: int, hi: int) -> set:
        # terms of 1 + 𝒯 for slots lo..hi-1 (other slots identity)
        if hi - lo == 1:
            return {one}
        cut = lo + 1 if split == "right" else hi - 1
        inner = expand(cut, hi) if split == "right" else expand(lo, cut)
        step: set = {one}
        for a in range(lo, cut):
            for b in range(cut, hi):
                t = tuple(("psi",) if j == a else ("phi",) if j == b else () for j in range(n))
                _xor(step, t)
        out: set = set()
        for first in inner:
            for second in step:
                _xor(out, _compose(second, first))
        return out

    full = expand(0, n)
    full ^= {one}
    return frozenset(full)


def curly_t_mismatch(n: int = 4) -> tuple[frozenset, frozenset]:
    """(expansion − printed, printed − expansion) for the hard-coded 𝒯."""
    built = build_curly_t(n)
    printed = frozenset(CURLY_T)
    return built - printed, printed - built


def commute_phi_psi(terms: Iterable[Term]) -> frozenset:
    """Normal form modulo ΦΨ = ΨΦ (sort each slot word)."""
    acc: set = set()
    for t in terms:
        acc ^= {tuple(tuple(sorted(w)) for w in t)}
    return frozenset(acc)


__all__ = [
    "CURLY_T",
    "CURLY_T_TEXT",
    "Certificate",
    "FACT_KINDS",
    "Fact",
    "HatBasisData",
    "Step",
    "TensorWord",
    "build_curly_t",
    "canonical_s",
    "commute_phi_psi",
    "curly_t_mismatch",
    "curly_t_coefficient",
    "im_membership",
    "obstruction_certificate",
    "parse_term",
    "render_term",
    "sweep_term",
    "t_sum_coefficient",
]

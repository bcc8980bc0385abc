"""Bigraded free chain complexes over F2[U,V]/(UV), F2[U] and F2.

Differentials are stored as sets of single-monomial arrows; a coefficient
with several terms is a bundle of parallel arrows.  Grading rule: an arrow
with coefficient ``U^a V^b`` drops the bidegree by ``(1-2a, 1-2b)``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional

import networkx as nx
import numpy as np

from . import _kernels
from .errors import FloerError
from .ring import ONE, ZERO, Monomial, RingElement, clmul, is_unit, mul


class Bidegree(NamedTuple):
    gz: int
    gw: int

    def __add__(self, other) -> Bidegree:
        return Bidegree(self.gz + other[0], self.gw + other[1])

    def __sub__(self, other) -> Bidegree:
        return Bidegree(self.gz - other[0], self.gw - other[1])

    def __neg__(self) -> Bidegree:
        return Bidegree(-self.gz, -self.gw)

    def swap(self) -> Bidegree:
        return Bidegree(self.gw, self.gz)


def arrow_drop(m: Monomial) -> Bidegree:
    return Bidegree(1 - 2 * m.u, 1 - 2 * m.v)


class Arrow(NamedTuple):
    src: str
    dst: str
    coeff: Monomial

    def key(self) -> tuple:
        return (self.src, self.dst, self.coeff.sort_key())


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    where: tuple = ()

    def __str__(self) -> str:
        return "%s: %s" % (self.kind, self.detail)


def _xor_arrows(arrows: Iterable[Arrow]) -> tuple[Arrow, ...]:
    acc: set[Arrow] = set()
    for a in arrows:
        acc ^= {a}
    return tuple(sorted(acc, key=Arrow.key))


@dataclass(frozen=True)
class GradedComplex:
    ring: str
    generators: tuple[str, ...]
    degrees: tuple[Optional[Bidegree], ...]
    arrows: tuple[Arrow, ...]
    # duplicate names are kept so that validate can report them
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.ring not in ("R", "F2U", "F2"):
            raise FloerError("BAD_RING", repr(self.ring))
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.generators)})

    @classmethod
    def build(cls, ring: str, gens: Iterable, arrows: Iterable = ()) -> GradedComplex:
        """``gens``: names or (name, deg) pairs; ``arrows``: (src, dst, coeff)."""
        names, degs = [], []
        for g in gens:
            if isinstance(g, str):
                names.append(g)
                degs.append(None)
            else:
                n, d = g
                names.append(n)
                degs.append(None if d is None else Bidegree(*d))
        arr = []
        for a in arrows:
            s, t, c = a
            if isinstance(c, RingElement):
                arr.extend(Arrow(s, t, m) for m in c.monomials)
            elif isinstance(c, Monomial):
                arr.append(Arrow(s, t, c))
            else:
                from .ring import parse

                arr.extend(Arrow(s, t, m) for m in parse(str(c)).monomials)
        return cls(ring, tuple(names), tuple(degs), _xor_arrows(arr))

    # -- accessors ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.generators)

    def deg(self, name: str) -> Optional[Bidegree]:
        return self.degrees[self._index[name]]

    def degree_map(self) -> dict[str, Optional[Bidegree]]:
        return dict(zip(self.generators, self.degrees))

    @property
    def graded(self) -> bool:
        return all(d is not None for d in self.degrees)

    def diff(self) -> dict[str, dict[str, RingElement]]:
        out: dict[str, dict[str, RingElement]] = {n: {} for n in self.generators}
        for a in self.arrows:
            row = out.setdefault(a.src, {})
            row[a.dst] = row.get(a.dst, ZERO) + RingElement((a.coeff,))
            if not row[a.dst]:
                del row[a.dst]
        return out

    def with_degrees(self, degs: Mapping[str, Bidegree]) -> GradedComplex:
        return GradedComplex(
            self.ring,
            self.generators,
            tuple(Bidegree(*degs[n]) if degs.get(n) is not None else None for n in self.generators),
            self.arrows,
        )

    def rename(self, mapping: Mapping[str, str]) -> GradedComplex:
        f = lambda n: mapping.get(n, n)  # noqa: E731
        return GradedComplex(
            self.ring,
            tuple(f(n) for n in self.generators),
            self.degrees,
            _xor_arrows(Arrow(f(a.src), f(a.dst), a.coeff) for a in self.arrows),
        )

    def subcomplex(self, names: Iterable[str]) -> GradedComplex:
        keep = set(names)
        idx = [i for i, n in enumerate(self.generators) if n in keep]
        return GradedComplex(
            self.ring,
            tuple(self.generators[i] for i in idx),
            tuple(self.degrees[i] for i in idx),
            tuple(a for a in self.arrows if a.src in keep and a.dst in keep),
        )

    def u_arrows(self) -> list[Arrow]:
        return [a for a in self.arrows if a.coeff.v == 0 and a.coeff.u > 0]


def from_diff(ring: str, gens: list[str], degs: Mapping[str, Optional[Bidegree]],
              d: Mapping[str, Mapping[str, RingElement]]) -> GradedComplex:
    arrows = []
    for s, row in d.items():
        for t, c in row.items():
            arrows.extend(Arrow(s, t, m) for m in c.monomials)
    return GradedComplex(ring, tuple(gens), tuple(degs.get(g) for g in gens), _xor_arrows(arrows))


# ---------------------------------------------------------------------------
# validation and gradings
# ---------------------------------------------------------------------------


def validate(C: GradedComplex, graded: bool = True) -> list[Violation]:
    out: list[Violation] = []
    seen: set[str] = set()
    for n in C.generators:
        if n in seen:
            out.append(Violation("DUPLICATE_NAME", "generator %r appears more than once" % n, (n,)))
        seen.add(n)
    for a in C.arrows:
        if a.src not in seen or a.dst not in seen:
            out.append(Violation("UNKNOWN_GENERATOR", "arrow %s->%s names an unknown generator"
                                 % (a.src, a.dst), (a.src, a.dst)))
        if not a.coeff.fits(C.ring):
            out.append(Violation("RING", "coefficient %s not in ring %s on %s->%s"
                                 % (a.coeff, C.ring, a.src, a.dst), (a.src, a.dst)))
    if out:
        return out
    d = C.diff()
    for x in C.generators:
        acc: dict[str, RingElement] = {}
        for y, c1 in d[x].items():
            for z, c2 in d[y].items():
                acc[z] = acc.get(z, ZERO) + mul(c1, c2)
        for z in sorted(acc):
            if acc[z]:
                out.append(Violation("D_SQUARED", "d^2(%s) has coefficient %s on %s" % (x, acc[z], z), (x, z)))
    if graded:
        for n, g in zip(C.generators, C.degrees):
            if g is None:
                out.append(Violation("MISSING_DEGREE", "generator %r has no bidegree" % n, (n,)))
        for a in C.arrows:
            ds, dt = C.deg(a.src), C.deg(a.dst)
            if ds is None or dt is None:
                continue
            want = arrow_drop(a.coeff)
            if ds - dt != want:
                out.append(Violation(
                    "GRADING",
                    "arrow %s -%s-> %s drops degree by %s, rule requires %s"
                    % (a.src, a.coeff, a.dst, tuple(ds - dt), tuple(want)),
                    (a.src, a.dst),
                ))
    return out


def _arrow_graph(C: GradedComplex) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(C.generators)
    G.add_edges_from((a.src, a.dst) for a in C.arrows)
    return G


def components(C: GradedComplex) -> list[list[str]]:
    order = {n: i for i, n in enumerate(C.generators)}
    comps = [sorted(c, key=order.__getitem__) for c in nx.connected_components(_arrow_graph(C))]
    return sorted(comps, key=lambda c: order[c[0]])


def propagate_gradings(C: GradedComplex, anchors: Mapping[str, Iterable[int]]) -> GradedComplex:
    """Solve the arrow grading rule from anchored generators."""
    anchors = {k: Bidegree(*v) for k, v in anchors.items()}
    for k in anchors:
        if k not in C._index:
            raise FloerError("UNKNOWN_GENERATOR", "anchor %r is not a generator" % k)
    adj: dict[str, list[tuple[str, Bidegree]]] = defaultdict(list)
    for a in C.arrows:
        drop = arrow_drop(a.coeff)
        adj[a.src].append((a.dst, -drop))
        adj[a.dst].append((a.src, drop))
    degs: dict[str, Bidegree] = {}
    for comp in components(C):
        roots = [n for n in comp if n in anchors]
        if not roots:
            raise FloerError("UNANCHORED_COMPONENT", "component containing %s has no anchor" % comp[0])
        degs[roots[0]] = anchors[roots[0]]
        stack = [roots[0]]
        while stack:
            n = stack.pop()
            for m, delta in adj[n]:
                want = degs[n] + delta
                if m not in degs:
                    degs[m] = want
                    stack.append(m)
                elif degs[m] != want:
                    raise FloerError("INCONSISTENT", "cycle through %s and %s violates the grading rule" % (n, m))
        for r in roots:
            if degs[r] != anchors[r]:
                raise FloerError("INCONSISTENT", "anchor %s=%s conflicts with propagated %s"
                                 % (r, tuple(anchors[r]), tuple(degs[r])))
    return C.with_degrees(degs)


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

Vec = dict  # name -> RingElement


def _vadd(acc: Vec, v: Vec, c: RingElement = ONE) -> None:
    for k, x in v.items():
        y = acc.get(k, ZERO) + mul(c, x)
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


@dataclass
class Correspondence:
    """Chain maps between a complex and its reduction.

    ``pi``: original -> reduced, ``iota``: reduced -> original and ``h``: a
    homotopy on the original with ``dh + hd = 1 + iota∘pi``.  Maps are
    stored as name -> {name: coefficient}.
    """

    pi: dict[str, Vec]
    iota: dict[str, Vec]
    h: dict[str, Vec]
    cancelled: list[tuple[str, str]]


def _least_unit(d: dict[str, Vec]) -> Optional[tuple[str, str]]:
    best = None
    for s, row in d.items():
        for t, c in row.items():
            if is_unit(c) and (best is None or (s, t) < best):
                best = (s, t)
    return best


def reduce(C: GradedComplex) -> tuple[GradedComplex, Correspondence]:
    """Cancel unit arrows (lexicographically least first) until none remain."""
    d = {n: dict(row) for n, row in C.diff().items()}
    gens = list(C.generators)
    pi: dict[str, Vec] = {n: {n: ONE} for n in gens}
    iota: dict[str, Vec] = {n: {n: ONE} for n in gens}
    h: dict[str, Vec] = {n: {} for n in gens}
    cancelled = []
    while True:
        pair = _least_unit(d)
        if pair is None:
            break
        a, b = pair
        alpha = {k: v for k, v in d[a].items() if k != b}
        beta = {z: row[b] for z, row in d.items() if b in row and z not in (a, b)}
        # new differential on the survivors
        for z, c in beta.items():
            _vadd(d[z], alpha, c)
        for z in list(d):
            d[z].pop(a, None)
            d[z].pop(b, None)
        del d[a], d[b]
        gens = [g for g in gens if g not in (a, b)]

        def pi_step(v: Vec) -> Vec:
            out: Vec = {}
            for k, c in v.items():
                if k == a:
                    continue
                if k == b:
                    _vadd(out, alpha, c)
                else:
                    _vadd(out, {k: c})
            return out

        ia = iota[a]
        # h_total += iota_old ∘ h_step ∘ pi_old, with h_step(b) = a
        for n in h:
            cb = pi[n].get(b)
            if cb:
                _vadd(h[n], ia, cb)
        pi = {n: pi_step(v) for n, v in pi.items()}
        for z, c in beta.items():
            _vadd(iota[z], ia, c)
        del iota[a], iota[b]
        cancelled.append((a, b))
    degs = C.degree_map()
    out = from_diff(C.ring, gens, degs, {g: d[g] for g in gens})
    assert not any(is_unit(RingElement((x.coeff,))) for x in out.arrows)
    return out, Correspondence(pi, iota, h, cancelled)


# ---------------------------------------------------------------------------
# truncations and homology
# ---------------------------------------------------------------------------


def hat_truncate(C: GradedComplex) -> GradedComplex:
    return GradedComplex("F2", C.generators, C.degrees, tuple(a for a in C.arrows if a.coeff.is_one))


def v_zero_truncate(C: GradedComplex) -> GradedComplex:
    return GradedComplex("F2U", C.generators, C.degrees, tuple(a for a in C.arrows if a.coeff.v == 0))


def to_f2_matrix(C: GradedComplex, rows: list[str], cols: list[str]) -> np.ndarray:
    """Matrix of the unit part of d from ``cols`` to ``rows`` (column = image)."""
    ri = {n: i for i, n in enumerate(rows)}
    ci = {n: i for i, n in enumerate(cols)}
    m = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for a in C.arrows:
        if a.coeff.is_one and a.src in ci and a.dst in ri:
            m[ri[a.dst], ci[a.src]] ^= 1
    return m


def hat_homology(C: GradedComplex) -> dict[Bidegree, int]:
    """Graded dimensions of H_*(C) for a complex over F2 (zero entries omitted)."""
    if C.ring != "F2" and any(not a.coeff.is_one for a in C.arrows):
        raise FloerError("NOT_HAT", "hat_homology expects a complex over F2; call hat_truncate first")
    if not C.graded:
        raise FloerError("MISSING_DEGREE", "hat_homology needs bidegrees")
    by_deg: dict[Bidegree, list[str]] = defaultdict(list)
    for n, g in zip(C.generators, C.degrees):
        by_deg[g].append(n)
    rank_out: dict[Bidegree, int] = {}
    for g, names in by_deg.items():
        tgt = by_deg.get(g - (1, 1), [])
        rank_out[g] = _kernels.f2_rank(to_f2_matrix(C, tgt, names)) if tgt else 0
    out = {}
    for g, names in by_deg.items():
        dim = len(names) - rank_out[g] - rank_out.get(g + (1, 1), 0)
        if dim:
            out[g] = dim
    return dict(sorted(out.items()))


def total_dim(table: Mapping) -> int:
    return sum(table.values())


# F2(U) arithmetic on (numerator, denominator) bit masks, used by localized_rank


def _pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError
    q = 0
    db = b.bit_length()
    while a and a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return a


def _fnorm(n: int, d: int) -> tuple[int, int]:
    if n == 0:
        return 0, 1
    g = _pgcd(n, d)
    return _pdivmod(n, g)[0], _pdivmod(d, g)[0]


def _fsub(x, y):
    return _fnorm(clmul(x[0], y[1]) ^ clmul(y[0], x[1]), clmul(x[1], y[1]))


def _fmul(x, y):
    return _fnorm(clmul(x[0], y[0]), clmul(x[1], y[1]))


def _fdiv(x, y):
    return _fnorm(clmul(x[0], y[1]), clmul(x[1], y[0]))


def rank_over_fraction_field(mat: list[list[int]]) -> int:
    """Rank over F2(U) of a matrix with F2[U] entries given as bit masks."""
    rows = [[(e, 1) for e in r] for r in mat if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col][0]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            e = rows[i][col]
            if e[0]:
                f = _fdiv(e, p)
                rows[i] = [_fsub(rows[i][j], _fmul(f, rows[rank][j])) for j in range(ncols)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def localized_rank(C: GradedComplex) -> int:
    """Rank of the homology of C ⊗ F2[U,U^-1] after setting V = 0."""
    T = v_zero_truncate(C)
    idx = {n: i for i, n in enumerate(T.generators)}
    n = len(idx)
    mat = [[0] * n for _ in range(n)]
    for a in T.arrows:
        mat[idx[a.dst]][idx[a.src]] ^= 1 << a.coeff.u
    return n - 2 * rank_over_fraction_field(mat)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def free(name: str = "x", deg=(0, 0), ring: str = "R") -> GradedComplex:
    return GradedComplex.build(ring, [(name, deg)])


def rectangle(i: int, j: int, deg=(0, 0), names=("c1", "c2", "c3", "c4"), ring: str = "R") -> GradedComplex:
    """The box ∂c1 = U^i c2 + V^j c3, ∂c2 = V^j c4, ∂c3 = U^i c4 with c1 at ``deg``."""
    if i < 1 or j < 1:
        raise ValueError("rectangle side lengths must be positive")
    d1 = Bidegree(*deg)
    h = arrow_drop(Monomial(i, 0))
    v = arrow_drop(Monomial(0, j))
    c1, c2, c3, c4 = names
    return GradedComplex.build(
        ring,
        [(c1, d1), (c2, d1 - h), (c3, d1 - v), (c4, d1 - h - v)],
        [(c1, c2, Monomial(i, 0)), (c1, c3, Monomial(0, j)), (c2, c4, Monomial(0, j)), (c3, c4, Monomial(i, 0))],
    )


def complex_c() -> GradedComplex:
    """∂a = U²b + V²c, ∂b = V²d, ∂c = U²d, plus a free generator x; x, d at (0,0)."""
    return direct_sum(rectangle(2, 2, (-2, -2), names=("a", "b", "c", "d")), free("x"))


def direct_sum(*cs: GradedComplex) -> GradedComplex:
    if not cs:
        return GradedComplex("R", (), (), ())
    ring = cs[0].ring
    if any(c.ring != ring for c in cs):
        raise FloerError("RING", "direct sum of complexes over different rings")
    return GradedComplex(
        ring,
        tuple(itertools.chain.from_iterable(c.generators for c in cs)),
        tuple(itertools.chain.from_iterable(c.degrees for c in cs)),
        _xor_arrows(itertools.chain.from_iterable(c.arrows for c in cs)),
    )


def change_basis(C: GradedComplex, target: str, source: str, coeff: RingElement) -> GradedComplex:
    """Handleslide: replace basis element ``target`` by ``target + coeff·source``."""
    if target == source:
        raise ValueError("handleslide onto itself")
    d = C.diff()
    # columns (images) in old basis; substitute target = target' + coeff·source
    new: dict[str, Vec] = {}
    for x in C.generators:
        img: Vec = {}
        _vadd(img, d[x])
        if x == target:
            _vadd(img, d[source], coeff)
        t = img.get(target)
        if t:
            _vadd(img, {source: mul(t, coeff)})
        new[x] = img
    return from_diff(C.ring, list(C.generators), C.degree_map(), new)


def mirror(C: GradedComplex) -> GradedComplex:
    return GradedComplex(
        C.ring,
        C.generators,
        tuple(None if g is None else -g for g in C.degrees),
        _xor_arrows(Arrow(a.dst, a.src, a.coeff) for a in C.arrows),
    )


def tensor(C1: GradedComplex, C2: GradedComplex, sep: str = "|") -> GradedComplex:
    ring = C1.ring if C1.ring == C2.ring else "R"
    gens, degs = [], {}
    for x, dx in zip(C1.generators, C1.degrees):
        for y, dy in zip(C2.generators, C2.degrees):
            n = x + sep + y
            gens.append(n)
            degs[n] = None if dx is None or dy is None else dx + dy
    arrows = []
    for a in C1.arrows:
        for y in C2.generators:
            arrows.append(Arrow(a.src + sep + y, a.dst + sep + y, a.coeff))
    for b in C2.arrows:
        for x in C1.generators:
            arrows.append(Arrow(x + sep + b.src, x + sep + b.dst, b.coeff))
    return GradedComplex(ring, tuple(gens), tuple(degs[g] for g in gens), _xor_arrows(arrows))


def connected_sum(C1: GradedComplex, C2: GradedComplex) -> GradedComplex:
    for label, C in (("first", C1), ("second", C2)):
        if not decompose(reduce(C)[0]).is_multirectangular:
            raise FloerError("NOT_MULTIRECT", "%s summand is not multirectangular" % label)
    out = tensor(C1, C2)
    assert not validate(out, graded=out.graded)
    return out


# ---------------------------------------------------------------------------
# basepoint actions, decomposition
# ---------------------------------------------------------------------------


def _linear_matrix(C: GradedComplex, pick) -> np.ndarray:
    idx = {n: i for i, n in enumerate(C.generators)}
    m = np.zeros((len(idx), len(idx)), dtype=np.uint8)
    for a in C.arrows:
        if pick(a.coeff):
            m[idx[a.dst], idx[a.src]] ^= 1
    return m


def basepoint_phi(C: GradedComplex) -> np.ndarray:
    """Φ̂ on the generator basis; column x holds Φ̂(x) (exactly-U arrows)."""
    return _linear_matrix(C, lambda m: m.u == 1 and m.v == 0)


def basepoint_psi(C: GradedComplex) -> np.ndarray:
    if C.ring != "R":
        raise FloerError("NO_V", "Ψ̂ needs V-arrows, available only over R")
    return _linear_matrix(C, lambda m: m.v == 1 and m.u == 0)


@dataclass(frozen=True)
class RectPiece:
    i: int
    j: int
    gens: tuple[str, str, str, str]


@dataclass(frozen=True)
class Decomposition:
    free_pieces: tuple[str, ...]
    rect_pieces: tuple[RectPiece, ...]
    other_pieces: tuple[tuple[str, ...], ...]

    @property
    def is_multirectangular(self) -> bool:
        return len(self.free_pieces) == 1 and not self.other_pieces

    def names(self) -> list[str]:
        out = list(self.free_pieces)
        for r in self.rect_pieces:
            out.extend(r.gens)
        for o in self.other_pieces:
            out.extend(o)
        return out


def _match_rect(names: list[str], arrows: list[Arrow]) -> Optional[RectPiece]:
    if len(names) != 4 or len(arrows) != 4:
        return None
    out = defaultdict(list)
    for a in arrows:
        out[a.src].append(a)
    for c1 in names:
        us = [a for a in out[c1] if a.coeff.v == 0 and a.coeff.u > 0]
        vs = [a for a in out[c1] if a.coeff.u == 0 and a.coeff.v > 0]
        if len(out[c1]) != 2 or len(us) != 1 or len(vs) != 1:
            continue
        i, j = us[0].coeff.u, vs[0].coeff.v
        c2, c3 = us[0].dst, vs[0].dst
        if c2 == c3:
            continue
        c4s = [n for n in names if n not in (c1, c2, c3)]
        if len(c4s) != 1:
            continue
        c4 = c4s[0]
        want = {Arrow(c1, c2, Monomial(i, 0)), Arrow(c1, c3, Monomial(0, j)),
                Arrow(c2, c4, Monomial(0, j)), Arrow(c3, c4, Monomial(i, 0))}
        if set(arrows) == want:
            return RectPiece(i, j, (c1, c2, c3, c4))
    return None


def decompose(C: GradedComplex) -> Decomposition:
    frees, rects, others = [], [], []
    by_comp = defaultdict(list)
    comps = components(C)
    where = {n: k for k, comp in enumerate(comps) for n in comp}
    for a in C.arrows:
        by_comp[where[a.src]].append(a)
    for k, comp in enumerate(comps):
        arrows = by_comp[k]
        if len(comp) == 1 and not arrows:
            frees.append(comp[0])
            continue
        r = _match_rect(comp, arrows)
        if r is not None:
            rects.append(r)
        else:
            others.append(tuple(comp))
    return Decomposition(tuple(frees), tuple(rects), tuple(others))


def find_u_step_summand(C: GradedComplex, source_deg) -> Optional[tuple[str, str]]:
    """The component {p, q} with ∂p = U·q and deg p = source_deg, if any."""
    source_deg = Bidegree(*source_deg)
    hits = []
    for comp in components(C):
        if len(comp) != 2:
            continue
        arr = [a for a in C.arrows if a.src in comp]
        if len(arr) == 1 and arr[0].coeff == Monomial(1, 0) and C.deg(arr[0].src) == source_deg:
            hits.append((arr[0].src, arr[0].dst))
    if len(hits) > 1:
        raise FloerError("AMBIGUOUS", "%d (a -U-> b) summands start at %s" % (len(hits), tuple(source_deg)))
    return hits[0] if hits else None

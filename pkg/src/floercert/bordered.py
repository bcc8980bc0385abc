"""Torus algebra, type-D / type-A structures, LOT and the box tensor product.

Algebra elements are named ``i0, i1, r1, r2, r3, r12, r23, r123``.
Idempotent conventions: r1, r3, r123 go ι0 -> ι1, r2 goes ι1 -> ι0,
r12 is ι0 -> ι0 and r23 is ι1 -> ι1.  A type-D arrow ``x -a-> y`` means
``a ⊗ y`` is a term of δ¹(x); products along a path are taken left to
right.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import networkx as nx
from networkx.algorithms import isomorphism as nx_iso

from .cfk import Arrow, Bidegree, GradedComplex, Violation, _xor_arrows, decompose, validate
from .errors import FloerError
from .ring import Monomial, is_unit

IDEMPOTENTS = ("i0", "i1")
REEB = ("r1", "r2", "r3", "r12", "r23", "r123")
ELEMENTS = IDEMPOTENTS + REEB
SIDES = {
    "i0": (0, 0),
    "i1": (1, 1),
    "r1": (0, 1),
    "r2": (1, 0),
    "r3": (0, 1),
    "r12": (0, 0),
    "r23": (1, 1),
    "r123": (0, 1),
}
_REEB_PRODUCTS = {
    ("r1", "r2"): "r12",
    ("r2", "r3"): "r23",
    ("r1", "r23"): "r123",
    ("r12", "r3"): "r123",
}
LABEL_TEXT = {"r1": "ρ1", "r2": "ρ2", "r3": "ρ3", "r12": "ρ12", "r23": "ρ23", "r123": "ρ123",
              "i0": "ι0", "i1": "ι1"}


def left(a: str) -> int:
    return SIDES[a][0]


def right(a: str) -> int:
    return SIDES[a][1]


def alg_mul(a: Optional[str], b: Optional[str]) -> Optional[str]:
    """Product of two basis elements; None stands for 0."""
    if a is None or b is None:
        return None
    if right(a) != left(b):
        return None
    if a in IDEMPOTENTS:
        return b
    if b in IDEMPOTENTS:
        return a
    return _REEB_PRODUCTS.get((a, b))


def _check_label(a: str) -> None:
    if a not in ELEMENTS:
        raise FloerError("BAD_LABEL", "unknown algebra element %r" % a)


# ---------------------------------------------------------------------------
# type D
# ---------------------------------------------------------------------------


class DArrow(tuple):
    __slots__ = ()

    def __new__(cls, src: str, dst: str, label: str):
        return tuple.__new__(cls, (src, dst, label))

    src = property(lambda s: s[0])
    dst = property(lambda s: s[1])
    label = property(lambda s: s[2])


@dataclass(frozen=True)
class DGen:
    name: str
    idem: int
    deg: Optional[Bidegree] = None


@dataclass(frozen=True)
class TypeD:
    generators: tuple[DGen, ...]
    arrows: tuple[DArrow, ...]

    @classmethod
    def build(cls, gens: Iterable, arrows: Iterable) -> TypeD:
        gs = []
        for g in gens:
            if isinstance(g, DGen):
                gs.append(g)
            else:
                name, idem, *rest = g
                deg = rest[0] if rest else None
                gs.append(DGen(name, int(idem), None if deg is None else Bidegree(*deg)))
        acc: set = set()
        for a in arrows:
            _check_label(a[2])
            acc ^= {DArrow(*a)}
        return cls(tuple(gs), tuple(sorted(acc)))

    def idem(self, name: str) -> int:
        return self._idems()[name]

    def _idems(self) -> dict[str, int]:
        return {g.name: g.idem for g in self.generators}

    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def out_arrows(self) -> dict[str, list[DArrow]]:
        out = defaultdict(list)
        for a in self.arrows:
            out[a.src].append(a)
        return out

    def sub(self, names: Iterable[str]) -> TypeD:
        keep = set(names)
        return TypeD(tuple(g for g in self.generators if g.name in keep),
                     tuple(a for a in self.arrows if a.src in keep and a.dst in keep))

    def components(self) -> list[list[str]]:
        G = nx.Graph()
        G.add_nodes_from(self.names())
        G.add_edges_from((a.src, a.dst) for a in self.arrows)
        order = {n: i for i, n in enumerate(self.names())}
        comps = [sorted(c, key=order.__getitem__) for c in nx.connected_components(G)]
        return sorted(comps, key=lambda c: order[c[0]])


def dsum(*ms: TypeD) -> TypeD:
    return TypeD(tuple(itertools.chain.from_iterable(m.generators for m in ms)),
                 tuple(sorted(itertools.chain.from_iterable(m.arrows for m in ms))))


def validate_type_d(M: TypeD) -> list[Violation]:
    out: list[Violation] = []
    idem = {}
    for g in M.generators:
        if g.name in idem:
            out.append(Violation("DUPLICATE_NAME", "generator %r repeated" % g.name, (g.name,)))
        if g.idem not in (0, 1):
            out.append(Violation("BAD_IDEMPOTENT", "generator %r has idempotent %r" % (g.name, g.idem)))
        idem[g.name] = g.idem
    for a in M.arrows:
        if a.src not in idem or a.dst not in idem:
            out.append(Violation("UNKNOWN_GENERATOR", "arrow %s->%s" % (a.src, a.dst), (a.src, a.dst)))
            continue
        if left(a.label) != idem[a.src] or right(a.label) != idem[a.dst]:
            out.append(Violation(
                "IDEMPOTENT",
                "arrow %s -%s-> %s: label needs (ι%d, ι%d), generators are (ι%d, ι%d)"
                % (a.src, a.label, a.dst, left(a.label), right(a.label), idem[a.src], idem[a.dst]),
                (a.src, a.dst, a.label),
            ))
    if out:
        return out
    outs = M.out_arrows()
    for x in M.names():
        acc: Counter = Counter()
        for a in outs[x]:
            for b in outs[a.dst]:
                p = alg_mul(a.label, b.label)
                if p is not None:
                    acc[(b.dst, p)] += 1
        for (z, p), k in sorted(acc.items()):
            if k % 2:
                out.append(Violation("STRUCTURE_EQUATION", "δ² of %s has term %s⊗%s" % (x, p, z), (x, z, p)))
    return out


def typed_isomorphism(M1: TypeD, M2: TypeD) -> Optional[dict[str, str]]:
    """A label- and idempotent-preserving isomorphism M1 -> M2, if any."""

    def graph(M: TypeD) -> nx.MultiDiGraph:
        G = nx.MultiDiGraph()
        for g in M.generators:
            G.add_node(g.name, idem=g.idem)
        for a in M.arrows:
            G.add_edge(a.src, a.dst, label=a.label)
        return G

    G1, G2 = graph(M1), graph(M2)
    gm = nx_iso.MultiDiGraphMatcher(
        G1, G2,
        node_match=nx_iso.categorical_node_match("idem", None),
        edge_match=nx_iso.categorical_multiedge_match("label", None),
    )
    if gm.is_isomorphic():
        return dict(sorted(gm.mapping.items()))
    return None


def reduce_type_d(M: TypeD) -> TypeD:
    """Cancel idempotent-labelled arrows, lexicographically least first."""
    gens = {g.name: g for g in M.generators}
    arrows: set = set(M.arrows)
    while True:
        units = sorted(a for a in arrows if a.label in IDEMPOTENTS and a.src != a.dst)
        if not units:
            break
        x, y, _ = units[0]
        into_y = [a for a in arrows if a.dst == y and a.src not in (x, y)]
        from_x = [a for a in arrows if a.src == x and a.dst not in (x, y)]
        new: set = set()
        for a in into_y:
            for b in from_x:
                p = alg_mul(a.label, b.label)
                if p is not None:
                    new ^= {DArrow(a.src, b.dst, p)}
        arrows = {a for a in arrows if x not in (a.src, a.dst) and y not in (a.src, a.dst)}
        arrows ^= new
        del gens[x], gens[y]
    keep = [g for g in M.generators if g.name in gens]
    return TypeD(tuple(keep), tuple(sorted(arrows)))


# ---------------------------------------------------------------------------
# type A
# ---------------------------------------------------------------------------


class Action(tuple):
    """m(inp, rhos) contains U^upow · out."""

    __slots__ = ()

    def __new__(cls, inp: str, rhos: tuple, out: str, upow: int = 0):
        return tuple.__new__(cls, (inp, tuple(rhos), out, int(upow)))

    inp = property(lambda s: s[0])
    rhos = property(lambda s: s[1])
    out = property(lambda s: s[2])
    upow = property(lambda s: s[3])

    def render(self) -> str:
        args = ",".join([self.inp] + [LABEL_TEXT[r] for r in self.rhos])
        coeff = "" if self.upow == 0 else "U^%d·" % self.upow
        return "m%d(%s) = %s%s" % (len(self.rhos) + 1, args, coeff, self.out)


@dataclass(frozen=True)
class TypeA:
    generators: tuple[DGen, ...]
    actions: tuple[Action, ...]
    name: str = ""
    # relation length up to which the table was closed by complete_type_a
    arity_bound: Optional[int] = None
    completion: tuple[Action, ...] = field(default=())

    @classmethod
    def build(cls, gens: Iterable, actions: Iterable, name: str = "") -> TypeA:
        gs = []
        for g in gens:
            if isinstance(g, DGen):
                gs.append(g)
            else:
                n, idem, *rest = g
                deg = rest[0] if rest else None
                gs.append(DGen(n, int(idem), None if deg is None else Bidegree(*deg)))
        acc: set = set()
        for a in actions:
            a = Action(*a)
            for r in a.rhos:
                if r not in REEB:
                    raise FloerError("BAD_LABEL", "action input %r is not a Reeb element" % r)
            acc ^= {a}
        return cls(tuple(gs), tuple(sorted(acc)), name)

    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def idem(self, name: str) -> int:
        return {g.name: g.idem for g in self.generators}[name]

    def table(self) -> dict[tuple[str, tuple], list[tuple[str, int]]]:
        t = defaultdict(list)
        for a in self.actions:
            t[(a.inp, a.rhos)].append((a.out, a.upow))
        return t

    def max_arity(self) -> int:
        return max((len(a.rhos) for a in self.actions), default=0)

    def hat(self) -> TypeA:
        """Truncation U = 0: drop every action with a positive U-power."""
        return TypeA(self.generators, tuple(a for a in self.actions if a.upow == 0),
                     self.name + "-hat", self.arity_bound, ())

    def without(self, action: Action) -> TypeA:
        if action not in self.actions:
            raise FloerError("NO_SUCH_ACTION", action.render())
        return TypeA(self.generators, tuple(a for a in self.actions if a != action), self.name, None, ())

    def with_actions(self, extra: Iterable[Action]) -> TypeA:
        acc = set(self.actions)
        for a in extra:
            acc ^= {Action(*a)}
        return TypeA(self.generators, tuple(sorted(acc)), self.name, None, ())


def composable_sequences(start: int, max_len: int) -> Iterable[tuple[str, ...]]:
    """Reeb sequences of length 0..max_len whose idempotents chain from ``start``."""
    yield ()
    frontier = [((), start)]
    for _ in range(max_len):
        nxt = []
        for seq, idem in frontier:
            for r in REEB:
                if left(r) == idem:
                    s = seq + (r,)
                    nxt.append((s, right(r)))
                    yield s
        frontier = nxt


def relation(A: TypeA, x: str, seq: tuple[str, ...], table=None) -> Counter:
    """The A∞ relation at (x, seq) as a Counter over (output, U-power) mod 2."""
    t = A.table() if table is None else table
    acc: Counter = Counter()
    n = len(seq)
    for i in range(n + 1):
        for y, p in t.get((x, seq[:i]), ()):
            for z, q in t.get((y, seq[i:]), ()):
                acc[(z, p + q)] += 1
    for j in range(n - 1):
        prod = alg_mul(seq[j], seq[j + 1])
        if prod is None:
            continue
        merged = seq[:j] + (prod,) + seq[j + 2:]
        for z, q in t.get((x, merged), ()):
            acc[(z, q)] += 1
    return Counter({k: 1 for k, v in acc.items() if v % 2})


def validate_type_a(A: TypeA, max_len: int = 4) -> list[Violation]:
    out: list[Violation] = []
    idem = {}
    for g in A.generators:
        if g.name in idem:
            out.append(Violation("DUPLICATE_NAME", "generator %r repeated" % g.name))
        idem[g.name] = g.idem
    for a in A.actions:
        if a.inp not in idem or a.out not in idem:
            out.append(Violation("UNKNOWN_GENERATOR", a.render()))
            continue
        cur = idem[a.inp]
        ok = True
        for r in a.rhos:
            if left(r) != cur:
                ok = False
            cur = right(r)
        if not ok or cur != idem[a.out]:
            out.append(Violation("IDEMPOTENT", "action %s is not idempotent-composable" % a.render()))
    if out:
        return out
    t = A.table()
    for g in A.generators:
        for seq in composable_sequences(g.idem, max_len):
            bad = relation(A, g.name, seq, t)
            if bad:
                terms = " + ".join("U^%d·%s" % (p, z) for z, p in sorted(bad))
                out.append(Violation(
                    "A_INFINITY",
                    "relation at (%s; %s) leaves %s" % (g.name, ",".join(seq) or "-", terms),
                    (g.name, seq),
                ))
    return out


@dataclass
class CompletionReport:
    added: list[Action]
    ambiguous: list[tuple[str, tuple]]
    stuck: list[tuple[str, tuple]]
    relation_bound: int


def complete_type_a(A: TypeA, relation_bound: int = 5, max_rounds: int = 50) -> tuple[TypeA, CompletionReport]:
    """Close the action table under the A∞ relations by forced merges.

    A failing relation at (x; a1..an) is repaired only when exactly one
    adjacent product a_j·a_{j+1} is nonzero: the residual is then forced
    onto m(x; a1..a_j a_{j+1}..an).  Other failures are reported.
    """
    actions = set(A.actions)
    added: list[Action] = []
    ambiguous, stuck = set(), set()
    # shortest relations first, so that lower-arity repairs land before
    # the longer relations that depend on them are examined
    todo = sorted(
        ((g.name, seq) for g in A.generators for seq in composable_sequences(g.idem, relation_bound)),
        key=lambda p: (len(p[1]), A.names().index(p[0]), p[1]),
    )
    for _ in range(max_rounds):
        cur = TypeA(A.generators, tuple(sorted(actions)), A.name)
        t = cur.table()
        changed = False
        ambiguous, stuck = set(), set()
        for name, seq in todo:
            bad = relation(cur, name, seq, t)
            if not bad:
                continue
            merges = [j for j in range(len(seq) - 1) if alg_mul(seq[j], seq[j + 1]) is not None]
            if len(merges) != 1:
                (stuck if not merges else ambiguous).add((name, seq))
                continue
            j = merges[0]
            merged = seq[:j] + (alg_mul(seq[j], seq[j + 1]),) + seq[j + 2:]
            for z, p in sorted(bad):
                act = Action(name, merged, z, p)
                actions ^= {act}
                added.append(act)
            changed = True
            break
        if not changed:
            break
    else:  # pragma: no cover
        raise FloerError("NONTERMINATION", "completion did not stabilise")
    done = TypeA(A.generators, tuple(sorted(actions)), A.name, relation_bound,
                 tuple(sorted(set(actions) - set(A.actions))))
    return done, CompletionReport(sorted(set(added) & set(actions)), sorted(ambiguous), sorted(stuck), relation_bound)


# ---------------------------------------------------------------------------
# LOT and pairing
# ---------------------------------------------------------------------------


def lot(C: GradedComplex) -> TypeD:
    """Type-D structure of the complement from a reduced multirectangular complex."""
    if any(is_unit_mono(a.coeff) for a in C.arrows):
        raise FloerError("NOT_REDUCED", "lot needs a reduced complex")
    dec = decompose(C)
    if not dec.is_multirectangular:
        raise FloerError("NOT_MULTIRECT", "complex is not one free summand plus rectangles")
    gens = [DGen(n, 0, d) for n, d in zip(C.generators, C.degrees)]
    arrows = []
    for g in dec.free_pieces:
        arrows.append(DArrow(g, g, "r12"))
    for a in C.arrows:
        if a.coeff.v == 0:
            ell = a.coeff.u
            chain = ["%s>%s:h%d" % (a.src, a.dst, k) for k in range(1, ell + 1)]
            gens.extend(DGen(n, 1) for n in chain)
            arrows.append(DArrow(a.src, chain[0], "r3"))
            arrows.extend(DArrow(chain[k], chain[k + 1], "r23") for k in range(ell - 1))
            arrows.append(DArrow(chain[-1], a.dst, "r2"))
        else:
            ell = a.coeff.v
            chain = ["%s>%s:v%d" % (a.src, a.dst, k) for k in range(1, ell + 1)]
            gens.extend(DGen(n, 1) for n in chain)
            arrows.append(DArrow(a.src, chain[0], "r1"))
            arrows.extend(DArrow(chain[k + 1], chain[k], "r23") for k in range(ell - 1))
            arrows.append(DArrow(a.dst, chain[-1], "r123"))
    M = TypeD(tuple(gens), tuple(sorted(arrows)))
    assert not validate_type_d(M), validate_type_d(M)
    return M


def is_unit_mono(m: Monomial) -> bool:
    return m.is_one


def _on_cycle(M: TypeD) -> set[str]:
    G = nx.DiGraph()
    G.add_nodes_from(M.names())
    G.add_edges_from((a.src, a.dst) for a in M.arrows)
    hot = set()
    for comp in nx.strongly_connected_components(G):
        if len(comp) > 1 or any(G.has_edge(n, n) for n in comp):
            hot |= comp
    return hot


def box_tensor(A: TypeA, D: TypeD, flavor: str = "minus", sep: str = "|") -> GradedComplex:
    if flavor not in ("hat", "minus"):
        raise FloerError("BAD_FLAVOR", flavor)
    if flavor == "hat":
        A = A.hat()
    t = A.table()
    prefixes: dict[str, set] = defaultdict(set)
    for a in A.actions:
        for k in range(len(a.rhos) + 1):
            prefixes[a.inp].add(a.rhos[:k])
    outs = D.out_arrows()
    hot = _on_cycle(D)
    gens, degs = [], {}
    for x in A.generators:
        for y in D.generators:
            if x.idem == y.idem:
                n = x.name + sep + y.name
                gens.append(n)
                degs[n] = x.deg + y.deg if x.deg is not None and y.deg is not None else None
    arrows = []
    for x in A.generators:
        for y in D.generators:
            if x.idem != y.idem:
                continue
            src = x.name + sep + y.name
            for a in outs[y.name]:
                # unital action of an idempotent-labelled D arrow
                if a.label in IDEMPOTENTS:
                    arrows.append(Arrow(src, x.name + sep + a.dst, Monomial(0, 0)))
            stack = [((), y.name, (y.name,))]
            while stack:
                seq, end, path = stack.pop()
                for z, p in t.get((x.name, seq), ()):
                    if seq and "r12" in seq and any(n in hot for n in path):
                        raise FloerError("NONTERMINATION", "action %s consumes ρ12 along a cycle of D"
                                         % Action(x.name, seq, z, p).render())
                    if A.arity_bound is not None and len(seq) >= A.arity_bound - 1:
                        raise FloerError("NONTERMINATION", "maximal-arity action %s fires; truncated table "
                                         "may be incomplete" % Action(x.name, seq, z, p).render())
                    arrows.append(Arrow(src, z + sep + end, Monomial(p, 0)))
                for a in outs[end]:
                    if a.label in IDEMPOTENTS:
                        continue
                    nseq = seq + (a.label,)
                    if nseq in prefixes[x.name]:
                        stack.append((nseq, a.dst, path + (a.dst,)))
    ring = "F2" if flavor == "hat" else "F2U"
    C = GradedComplex(ring, tuple(gens), tuple(degs[g] for g in gens), _xor_arrows(arrows))
    bad = [v for v in validate(C, graded=False)]
    if bad:
        raise FloerError("D_SQUARED", "pairing is not a chain complex: %s" % bad[0])
    return C


# ---------------------------------------------------------------------------
# built-ins
# ---------------------------------------------------------------------------


def cfa_nu() -> TypeA:
    """Single ι0 generator with no actions (see notes on the idempotent convention)."""
    return TypeA.build([("n", 0, (0, 0))], [], name="cfa-nu")


def cfd_unknot() -> TypeD:
    return TypeD.build([("z", 0, (0, 0))], [("z", "z", "r12")])


CABLE_GENS = [("c", 0), ("a1", 1), ("a2", 1), ("a3", 1), ("b1", 1), ("b2", 1), ("b3", 1)]
CABLE_DRAWN = [
    ("a1", (), "b1", 1),
    ("a2", (), "b2", 2),
    ("a3", (), "b3", 3),
    ("a3", ("r2",), "c", 0),
    ("c", ("r3",), "b3", 0),
    ("a1", ("r2", "r1"), "a2", 0),
    ("a2", ("r2", "r1"), "a3", 0),
    ("b1", ("r2", "r1"), "b2", 1),
    ("b2", ("r2", "r1"), "b3", 1),
]


def cfa_cable31_drawn() -> TypeA:
    """The nine actions exactly as drawn for the (3,-1) cable pattern."""
    return TypeA.build(CABLE_GENS, CABLE_DRAWN, name="cfa-cable-3-1-drawn")


@lru_cache(maxsize=None)
def _completed_cable() -> TypeA:
    A, _ = complete_type_a(cfa_cable31_drawn())
    return TypeA(A.generators, A.actions, "cfa-cable-3-1", A.arity_bound, A.completion)


def cfa_cable31() -> TypeA:
    """Drawn table plus its forced A∞ completion."""
    return _completed_cable()


BUILTIN_TYPE_A = {"cfa-nu": cfa_nu, "cfa-cable-3-1": cfa_cable31, "cfa-cable-3-1-drawn": cfa_cable31_drawn}
BUILTIN_TYPE_D = {"cfd-unknot": cfd_unknot}

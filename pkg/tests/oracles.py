"""Independent brute-force oracles and random generators for the test suite.

Nothing here calls the library's linear algebra: homology, images and
invariance are decided by enumerating vectors over F2.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

import numpy as np
from hypothesis import strategies as st

from floercert import cfk
from floercert.cfk import Bidegree, GradedComplex
from floercert.ring import ONE, ZERO, Monomial, RingElement, mul

# -- homology by enumeration -------------------------------------------------


def _span_size(vectors: list[int]) -> int:
    """Number of distinct F2 combinations of bitmask vectors."""
    seen = {0}
    for v in vectors:
        seen |= {s ^ v for s in seen}
    return len(seen)


def brute_hat_homology(C: GradedComplex) -> dict[Bidegree, int]:
    """Graded hat homology by counting kernel and image vectors directly."""
    hat = [a for a in C.arrows if a.coeff.is_one]
    by_deg = defaultdict(list)
    for n, d in zip(C.generators, C.degrees):
        by_deg[d].append(n)
    pos = {}
    for d, names in by_deg.items():
        for k, n in enumerate(names):
            pos[n] = k
    image_of = defaultdict(int)  # generator -> bitmask of d(generator) in the target degree
    for a in hat:
        image_of[a.src] ^= 1 << pos[a.dst]
    out = {}
    for d, names in by_deg.items():
        k = len(names)
        kernel = 0
        for mask in range(1 << k):
            img = 0
            for i in range(k):
                if mask >> i & 1:
                    img ^= image_of[names[i]]
            kernel += img == 0
        src = by_deg.get(Bidegree(d[0] + 1, d[1] + 1), [])
        image = _span_size([image_of[n] for n in src])
        dim = kernel.bit_length() - 1 - (image.bit_length() - 1)
        if dim:
            out[d] = dim
    return dict(sorted(out.items()))


def brute_column_space(mat: np.ndarray) -> set[tuple[int, ...]]:
    n = mat.shape[1]
    out = set()
    for bits in itertools.product((0, 1), repeat=n):
        out.add(tuple(int(x) for x in (mat.astype(int) @ np.array(bits, dtype=int)) % 2))
    return out


def brute_invariant(mat: np.ndarray, coords: list[int]) -> bool:
    """Is the coordinate subspace spanned by ``coords`` mapped into itself?"""
    n = mat.shape[0]
    for bits in itertools.product((0, 1), repeat=len(coords)):
        v = np.zeros(n, dtype=int)
        for b, c in zip(bits, coords):
            v[c] = b
        w = (mat.astype(int) @ v) % 2
        if any(w[k] for k in range(n) if k not in coords):
            return False
    return True


# -- linear maps over R ------------------------------------------------------

Vec = dict  # name -> RingElement


def vadd(acc: Vec, v: Vec, c: RingElement = ONE) -> Vec:
    out = dict(acc)
    for k, x in v.items():
        y = out.get(k, ZERO) + mul(c, x)
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def apply(f: dict[str, Vec], v: Vec) -> Vec:
    out: Vec = {}
    for k, c in v.items():
        out = vadd(out, f.get(k, {}), c)
    return out


def diff_map(C: GradedComplex) -> dict[str, Vec]:
    return C.diff()


# -- random complexes ----------------------------------------------------------

U_SHIFT = (-2, 0)
V_SHIFT = (0, -2)


def _piece(kind: str, k: int, i: int, j: int, deg) -> GradedComplex:
    p = "p%d" % k
    if kind == "rect":
        return cfk.rectangle(i, j, deg, names=tuple(p + s for s in ("a", "b", "c", "d")))
    if kind == "free":
        return cfk.free(p + "x", deg)
    if kind == "pair":
        return GradedComplex.build("R", [(p + "x", deg), (p + "y", Bidegree(*deg) - (1, 1))],
                                   [(p + "x", p + "y", Monomial(0, 0))])
    if kind == "ustep":
        m = Monomial(i, 0)
        return GradedComplex.build("R", [(p + "x", deg), (p + "y", Bidegree(*deg) - cfk.arrow_drop(m))],
                                   [(p + "x", p + "y", m)])
    m = Monomial(0, j)
    return GradedComplex.build("R", [(p + "x", deg), (p + "y", Bidegree(*deg) - cfk.arrow_drop(m))],
                               [(p + "x", p + "y", m)])


def handleslides(C: GradedComplex, moves: list[tuple[int, int, int]]) -> GradedComplex:
    """Apply degree-compatible basis changes target += coeff·source."""
    for t_i, s_i, kind in moves:
        n = len(C.generators)
        if n < 2:
            break
        t, s = C.generators[t_i % n], C.generators[s_i % n]
        if t == s:
            continue
        dt, ds = C.deg(t), C.deg(s)
        diff = (dt[0] - ds[0], dt[1] - ds[1])
        coeff = None
        if diff == (0, 0) and kind == 0:
            coeff = ONE
        elif diff[1] == 0 and diff[0] < 0 and diff[0] % 2 == 0:
            coeff = RingElement.U(-diff[0] // 2)
        elif diff[0] == 0 and diff[1] < 0 and diff[1] % 2 == 0:
            coeff = RingElement.V(-diff[1] // 2)
        if coeff is not None:
            C = cfk.change_basis(C, t, s, coeff)
    return C


@st.composite
def complexes(draw, kinds=("rect", "free", "pair", "ustep", "vstep"), max_pieces=4, slides=True,
              min_pieces=1):
    pieces = []
    count = draw(st.integers(min_pieces, max_pieces))
    for k in range(count):
        kind = draw(st.sampled_from(kinds))
        i, j = draw(st.integers(1, 3)), draw(st.integers(1, 3))
        deg = (draw(st.integers(-2, 2)), draw(st.integers(-2, 2)))
        pieces.append(_piece(kind, k, i, j, deg))
    C = cfk.direct_sum(*pieces)
    if slides:
        moves = draw(st.lists(st.tuples(st.integers(0, 40), st.integers(0, 40), st.integers(0, 1)), max_size=8))
        C = handleslides(C, moves)
    return C


@st.composite
def multirect_complexes(draw, max_rects=3):
    pieces = [cfk.free("x", (draw(st.integers(-2, 2)),) * 2)]
    for k in range(draw(st.integers(0, max_rects))):
        i, j = draw(st.integers(1, 3)), draw(st.integers(1, 3))
        deg = (draw(st.integers(-3, 3)), draw(st.integers(-3, 3)))
        pieces.append(cfk.rectangle(i, j, deg, names=tuple("r%d%s" % (k, s) for s in "abcd")))
    return cfk.direct_sum(*pieces)

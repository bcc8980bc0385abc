"""Coefficient rings F2[U,V]/(UV), F2[U] and F2.

A ring element is a finite set of monomials; addition is symmetric
difference.  A monomial is ``U^a`` (``a >= 0``, ``U^0`` = 1) or ``V^b``
(``b >= 1``); mixed monomials do not exist because ``UV = 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

RING_NAMES = ("R", "F2U", "F2")


class RingParseError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Monomial:
    u: int = 0
    v: int = 0

    def __post_init__(self) -> None:
        if self.u < 0 or self.v < 0:
            raise ValueError("negative exponent in monomial")
        if self.u > 0 and self.v > 0:
            raise ValueError("mixed monomial U^%dV^%d is zero in F2[U,V]/(UV)" % (self.u, self.v))

    @property
    def is_one(self) -> bool:
        return self.u == 0 and self.v == 0

    def times(self, other: Monomial) -> Monomial | None:
        """Product, or None when it vanishes."""
        u, v = self.u + other.u, self.v + other.v
        if u > 0 and v > 0:
            return None
        return Monomial(u, v)

    def sort_key(self) -> tuple[int, int]:
        # U-terms (including 1) first, exponents ascending, then V-terms
        return (0, self.u) if self.v == 0 else (1, self.v)

    def render(self) -> str:
        if self.is_one:
            return "1"
        if self.v:
            return "V^%d" % self.v
        return "U^%d" % self.u

    def fits(self, ring: str) -> bool:
        if ring == "R":
            return True
        if ring == "F2U":
            return self.v == 0
        if ring == "F2":
            return self.is_one
        raise ValueError("unknown ring %r" % ring)

    def __str__(self) -> str:
        return self.render()


ONE_MONO = Monomial(0, 0)


class RingElement:
    """Element of F2[U,V]/(UV) as a frozenset of monomials."""

    __slots__ = ("monomials",)

    def __init__(self, monomials: Iterable[Monomial] = ()):
        acc: set[Monomial] = set()
        for m in monomials:
            acc ^= {m}
        object.__setattr__(self, "monomials", frozenset(acc))

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    @classmethod
    def one(cls) -> RingElement:
        return cls((ONE_MONO,))

    @classmethod
    def zero(cls) -> RingElement:
        return cls()

    @classmethod
    def U(cls, a: int = 1) -> RingElement:
        return cls((Monomial(a, 0),))

    @classmethod
    def V(cls, b: int = 1) -> RingElement:
        return cls((Monomial(0, b),))

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other in (0, 1):
            other = RingElement.one() if other else RingElement.zero()
        return isinstance(other, RingElement) and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash(self.monomials)

    def __add__(self, other: RingElement) -> RingElement:
        return add(self, other)

    def __mul__(self, other: RingElement) -> RingElement:
        return mul(self, other)

    def __iter__(self):
        return iter(self.sorted_monomials())

    def __len__(self) -> int:
        return len(self.monomials)

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self.monomials, key=Monomial.sort_key)

    def fits(self, ring: str) -> bool:
        return all(m.fits(ring) for m in self.monomials)

    def render(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return "RingElement(%s)" % self.render()

    __str__ = render


def add(x: RingElement, y: RingElement) -> RingElement:
    return RingElement(list(x.monomials) + list(y.monomials))


def mul(x: RingElement, y: RingElement) -> RingElement:
    terms = []
    for a in x.monomials:
        for b in y.monomials:
            p = a.times(b)
            if p is not None:
                terms.append(p)
    out = RingElement(terms)
    assert not any(m.u and m.v for m in out.monomials)
    return out


def is_unit(x: RingElement) -> bool:
    """True only for the element 1 itself (see module notes on 1+U)."""
    return x.monomials == frozenset((ONE_MONO,))


def render(x: RingElement) -> str:
    if not x.monomials:
        return "0"
    return "+".join(m.render() for m in x.sorted_monomials())


_TERM = re.compile(r"^(?:1|U(?:\^(\d+))?|V(?:\^(\d+))?)$")


def parse_monomial(text: str) -> Monomial:
    t = text.strip().replace(" ", "")
    m = _TERM.match(t)
    if not m:
        raise RingParseError("cannot parse monomial %r (mixed UV terms are not allowed)" % text)
    if t == "1":
        return ONE_MONO
    if t.startswith("U"):
        return Monomial(int(m.group(1)) if m.group(1) is not None else 1, 0)
    b = int(m.group(2)) if m.group(2) is not None else 1
    if b == 0:
        return ONE_MONO
    return Monomial(0, b)


def parse(text: str) -> RingElement:
    t = text.strip().replace(" ", "")
    if t == "0":
        return RingElement()
    if not t:
        raise RingParseError("empty ring element")
    return RingElement(parse_monomial(p) for p in t.split("+"))


class UPolynomial:
    """Element of F2[U]; stored as a frozenset of exponents."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Iterable[int] = ()):
        acc: set[int] = set()
        for e in exponents:
            if e < 0:
                raise ValueError("negative exponent")
            acc ^= {int(e)}
        object.__setattr__(self, "exponents", frozenset(acc))

    def __setattr__(self, name, value):
        raise AttributeError("UPolynomial is immutable")

    @classmethod
    def monomial(cls, a: int) -> UPolynomial:
        return cls((a,))

    def __eq__(self, other) -> bool:
        return isinstance(other, UPolynomial) and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(("U", self.exponents))

    def __bool__(self) -> bool:
        return bool(self.exponents)

    def __add__(self, other: UPolynomial) -> UPolynomial:
        return UPolynomial(list(self.exponents) + list(other.exponents))

    def __mul__(self, other: UPolynomial) -> UPolynomial:
        return UPolynomial(a + b for a in self.exponents for b in other.exponents)

    def to_bits(self) -> int:
        out = 0
        for e in self.exponents:
            out |= 1 << e
        return out

    @classmethod
    def from_bits(cls, bits: int) -> UPolynomial:
        return cls(i for i in range(bits.bit_length()) if bits >> i & 1)

    def to_ring(self) -> RingElement:
        return RingElement(Monomial(e, 0) for e in self.exponents)

    def render(self) -> str:
        return render(self.to_ring())

    def __repr__(self) -> str:
        return "UPolynomial(%s)" % self.render()


def clmul(a: int, b: int) -> int:
    """Carry-less product of two F2[U] polynomials held as bit masks."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


ZERO = RingElement()
ONE = RingElement.one()

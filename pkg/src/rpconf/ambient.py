"""Arithmetic in the ambient ring ``Z2[x, y][u] / (u^2 + x u)``, no relations of degree n.

Every element is uniquely ``A + u B`` with ``A, B`` in ``Z2[x, y]``. A
homogeneous element of degree ``D`` stores ``A`` (degree D) and ``B`` (degree
D-1) in the bit encoding of :mod:`rpconf.grassmann`: bit ``j`` is the
coefficient of ``x^(D-2j) y^j``, resp. ``x^(D-1-2j) u y^j``.

:class:`Series` holds a truncated inhomogeneous element, one such pair per
degree; total Stiefel-Whitney classes and total Steenrod squares live there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .f2core import binom_parity, clmul, iter_bits
from .grassmann import format_monomial


@dataclass(frozen=True, order=True)
class WMonomial:
    """``x^x u^u y^y``; canonical when ``u`` is 0 or 1."""

    x: int
    u: int
    y: int

    @property
    def degree(self) -> int:
        return self.x + self.u + 2 * self.y

    def normalize(self) -> "WMonomial":
        # x^i u^j = x^(i+j-1) u for j > 0
        if self.u <= 1:
            return self
        return WMonomial(self.x + self.u - 1, 1, self.y)

    def __str__(self) -> str:
        return format_monomial(self.x, self.u, self.y)


_FACTOR = re.compile(r"^([xuy])(?:\^(\d+))?$")


def parse_monomial(text: str) -> WMonomial:
    """Parse ``"x^a u^e y^b"``: caret exponents, factors separated by spaces or ``*``."""
    exps = {"x": 0, "u": 0, "y": 0}
    tokens = text.replace("*", " ").split()
    if tokens == ["1"]:
        return WMonomial(0, 0, 0)
    if not tokens:
        raise ValueError("empty monomial")
    for tok in tokens:
        m = _FACTOR.match(tok)
        if not m:
            raise ValueError(f"cannot parse factor {tok!r} in {text!r}")
        exps[m.group(1)] += int(m.group(2) or 1)
    return WMonomial(exps["x"], exps["u"], exps["y"])


def _mul_pair(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    # (a + u b)(c + u d) = ac + u(ad + bc + x bd); x leaves bit indices alone
    return clmul(a, c), clmul(a, d) ^ clmul(b, c) ^ clmul(b, d)


@dataclass(frozen=True)
class WClass:
    """Homogeneous element of the ambient ring (no degree-n relations applied)."""

    degree: int
    free: int = 0
    udiv: int = 0

    @classmethod
    def monomial(cls, m: WMonomial) -> "WClass":
        m = m.normalize()
        if m.u:
            return cls(m.degree, 0, 1 << m.y)
        return cls(m.degree, 1 << m.y, 0)

    @classmethod
    def of(cls, text: str) -> "WClass":
        """Sum of monomials, e.g. ``"y + u^2"``; all terms must share a degree."""
        terms = [parse_monomial(t) for t in text.split("+")]
        out = cls.monomial(terms[0])
        for t in terms[1:]:
            out = out + cls.monomial(t)
        return out

    @classmethod
    def one(cls) -> "WClass":
        return cls(0, 1, 0)

    def __bool__(self) -> bool:
        return bool(self.free or self.udiv)

    def __add__(self, other: "WClass") -> "WClass":
        if not other:
            return self
        if not self:
            return other
        if self.degree != other.degree:
            raise ValueError(f"adding classes of degrees {self.degree} and {other.degree}")
        return WClass(self.degree, self.free ^ other.free, self.udiv ^ other.udiv)

    def __mul__(self, other: "WClass") -> "WClass":
        f, u = _mul_pair(self.free, self.udiv, other.free, other.udiv)
        return WClass(self.degree + other.degree, f, u)

    def __pow__(self, k: int) -> "WClass":
        out = WClass.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monomials(self) -> Iterator[WMonomial]:
        D = self.degree
        for j in iter_bits(self.free):
            yield WMonomial(D - 2 * j, 0, j)
        for j in iter_bits(self.udiv):
            yield WMonomial(D - 1 - 2 * j, 1, j)

    def __str__(self) -> str:
        terms = [str(m) for m in self.monomials()]
        return " + ".join(terms) if terms else "0"


X = WClass(1, 1, 0)
U = WClass(1, 0, 1)
Y = WClass(2, 0b10, 0)


class Series:
    """Truncated element ``sum_D c_D`` with ``c_D`` homogeneous, degrees ``0..cutoff``."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(terms)

    @property
    def cutoff(self) -> int:
        return len(self.terms) - 1

    @classmethod
    def zero(cls, cutoff: int) -> "Series":
        return cls([(0, 0)] * (cutoff + 1))

    @classmethod
    def one(cls, cutoff: int) -> "Series":
        return cls([(1, 0)] + [(0, 0)] * cutoff)

    @classmethod
    def from_classes(cls, cutoff: int, *classes: WClass) -> "Series":
        terms = [[0, 0] for _ in range(cutoff + 1)]
        for c in classes:
            if 0 <= c.degree <= cutoff:
                terms[c.degree][0] ^= c.free
                terms[c.degree][1] ^= c.udiv
        return cls(tuple(t) for t in terms)

    def component(self, D: int) -> WClass:
        if D < 0 or D > self.cutoff:
            return WClass(D)
        f, u = self.terms[D]
        return WClass(D, f, u)

    def components(self) -> list[WClass]:
        return [self.component(D) for D in range(len(self.terms))]

    def __eq__(self, other) -> bool:
        return isinstance(other, Series) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __add__(self, other: "Series") -> "Series":
        K = min(self.cutoff, other.cutoff)
        return Series(
            (a[0] ^ b[0], a[1] ^ b[1]) for a, b in zip(self.terms[: K + 1], other.terms[: K + 1])
        )

    def __mul__(self, other: "Series") -> "Series":
        K = min(self.cutoff, other.cutoff)
        lhs = [(i, t) for i, t in enumerate(self.terms[: K + 1]) if t != (0, 0)]
        rhs = [(i, t) for i, t in enumerate(other.terms[: K + 1]) if t != (0, 0)]
        out = [[0, 0] for _ in range(K + 1)]
        for i, (a, b) in lhs:
            for k, (c, d) in rhs:
                if i + k > K:
                    break
                f, u = _mul_pair(a, b, c, d)
                slot = out[i + k]
                slot[0] ^= f
                slot[1] ^= u
        return Series(tuple(t) for t in out)

    def inverse(self) -> "Series":
        """Truncated inverse; needs constant term 1. ``g_D = sum_{i>=1} f_i g_{D-i}``."""
        if self.terms[0] != (1, 0):
            raise ZeroDivisionError("series constant term is not 1")
        K = self.cutoff
        f = [(i, t) for i, t in enumerate(self.terms) if i and t != (0, 0)]
        g = [(1, 0)]
        for D in range(1, K + 1):
            acc_f = acc_u = 0
            for i, (a, b) in f:
                if i > D:
                    break
                c, d = g[D - i]
                if c or d:
                    pf, pu = _mul_pair(a, b, c, d)
                    acc_f ^= pf
                    acc_u ^= pu
            g.append((acc_f, acc_u))
        return Series(g)

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            return (self ** (-k)).inverse()
        out = Series.one(self.cutoff)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __repr__(self) -> str:
        shown = [f"[{D}] {c}" for D, c in enumerate(self.components()) if c]
        return "Series(" + ", ".join(shown) + ")"


def linear(cutoff: int, *classes: WClass) -> Series:
    """``1 + sum(classes)``."""
    return Series.from_classes(cutoff, WClass.one(), *classes)


def one_plus_x_y_power(cutoff: int, m: int) -> Series:
    """``(1+x+y)^m`` for ``m >= 0`` by binomial expansion; a check on :class:`Series` powers.

    The degree-D part has coefficient ``C(m, D-j) C(D-j, j)`` on ``x^(D-2j) y^j``.
    """
    terms = []
    for D in range(cutoff + 1):
        bits = 0
        for j in range(D // 2 + 1):
            if binom_parity(m, D - j) and binom_parity(D - j, j):
                bits |= 1 << j
        terms.append((bits, 0))
    return Series(terms)

"""``H^*(W_n) = H^*(G_n)[u]/(u^2 = xu)``, which is also ``H^*(C(RP^n, 2))``.

A class in degree D splits as ``A + u B`` with ``A`` in ``H^D(G_n)`` and ``B``
in ``H^(D-1)(G_n)``; every reduction here is two Grassmannian reductions.
Reduced coordinates pack the ``A`` coordinates in the low bits and the ``B``
coordinates above them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .ambient import U, X, Y, Series, WClass, WMonomial
from .grassmann import GrassmannRing


class WRing:
    """Reduction, products and bases in ``H^*(W_n)`` for fixed ``n >= 2``.

    ``space`` only labels reports: ``"W"`` or ``"C"``, the two spaces share
    their cohomology.
    """

    def __init__(self, n: int, space: str = "W", grassmann: GrassmannRing | None = None):
        if space not in ("W", "C"):
            raise ValueError(f"unknown space {space!r}")
        self.g = grassmann if grassmann is not None else GrassmannRing(n)
        self.n = self.g.n
        self.top = 2 * self.n - 1
        self.space = space
        self._mono: dict[WMonomial, int] = {}

    def __repr__(self) -> str:
        return f"WRing(n={self.n}, space={self.space!r})"

    def dim(self, D: int) -> int:
        if D < 0 or D > self.top:
            return 0
        return self.g.dim(D) + self.g.dim(D - 1)

    def reduce(self, c: WClass, fast: bool = False) -> int:
        """Reduced coordinates of ``c``; ``fast`` uses the 2-power rule instead of the oracle."""
        D = c.degree
        if D < 0 or D > self.top:
            return 0
        if fast:
            lo = self.g.reduce_fast(D, c.free)
            hi = self.g.reduce_fast(D - 1, c.udiv) if c.udiv else 0
        else:
            lo = self.g.reduce(D, c.free)
            hi = self.g.reduce(D - 1, c.udiv) if c.udiv else 0
        return lo | (hi << self.g.dim(D))

    def reduce_monomial(self, m: WMonomial) -> int:
        v = self._mono.get(m)
        if v is None:
            v = self._mono[m] = self.reduce(WClass.monomial(m))
        return v

    def is_zero(self, c: WClass, fast: bool = False) -> bool:
        return self.reduce(c, fast) == 0

    def equal(self, a: WClass, b: WClass) -> bool:
        return self.is_zero(a + b)

    def from_coords(self, D: int, coords: int) -> WClass:
        """Sum of basis monomials with the given reduced coordinates."""
        gd = self.g.dim(D)
        lo = coords & ((1 << gd) - 1)
        hi = coords >> gd
        return WClass(D, self.g.lift(D, lo), self.g.lift(D - 1, hi) if hi else 0)

    def canonical(self, c: WClass) -> WClass:
        if c.degree > self.top:
            return WClass(c.degree)
        return self.from_coords(c.degree, self.reduce(c))

    def multiply(self, a: WClass, b: WClass) -> WClass:
        return self.canonical(a * b)

    def basis(self, D: int) -> list[WMonomial]:
        if D < 0 or D > self.top:
            return []
        free = [WMonomial(m.x, 0, m.y) for m in self.g.basis(D)]
        udiv = [WMonomial(m.x, 1, m.y) for m in self.g.basis(D - 1)] if D >= 1 else []
        return free + udiv

    def basis_classes(self, D: int) -> list[WClass]:
        return [WClass.monomial(m) for m in self.basis(D)]

    def dims(self) -> list[int]:
        return [self.dim(D) for D in range(self.top + 1)]


def normalize_wc(m: WMonomial) -> WMonomial:
    return m.normalize()


def multiply_wc(ring: WRing, a: WClass, b: WClass) -> WClass:
    return ring.multiply(a, b)


# -- top class ----------------------------------------------------------------


def top_monomials(n: int) -> list[WMonomial]:
    """The normalized monomials ``x^(2^t-2) u y^(n-2^(t-1))``, ``t >= 1``, ``2^(t-1) <= n``."""
    out = []
    t = 1
    while 2 ** (t - 1) <= n:
        out.append(WMonomial(2**t - 2, 1, n - 2 ** (t - 1)))
        t += 1
    return out


def top_class_wc(ring: WRing) -> tuple[WClass, Callable[[WMonomial], bool]]:
    """Generator of ``H^(2n-1)`` and the predicate picking its nonzero monomials."""
    gen = ring.basis_classes(ring.top)
    if len(gen) != 1:
        raise ArithmeticError(f"dim H^{ring.top} = {len(gen)}, expected 1")
    nonzero = set(top_monomials(ring.n))

    def is_nonzero(m: WMonomial) -> bool:
        return m.normalize() in nonzero

    return gen[0], is_nonzero


def top_class_check(ring: WRing) -> list[str]:
    """Every degree-(2n-1) monomial is nonzero iff the predicate says so, and all nonzero ones coincide."""
    gen, pred = top_class_wc(ring)
    gvec = ring.reduce(gen)
    problems = []
    D = ring.top
    for j in range(D // 2 + 1):
        for m in (WMonomial(D - 2 * j, 0, j), WMonomial(D - 1 - 2 * j, 1, j)):
            if m.x < 0:
                continue
            v = ring.reduce(WClass.monomial(m))
            if pred(m) and v != gvec:
                problems.append(f"{m} should equal the top generator")
            if not pred(m) and v:
                problems.append(f"{m} should vanish in the top degree")
    return problems


# -- Steenrod squares ---------------------------------------------------------


@lru_cache(maxsize=None)
def _generator_images(cutoff: int) -> tuple[Series, Series, Series]:
    # degree-1 classes square to themselves under Sq^1; Sq y = y + xy + y^2
    sqx = Series.from_classes(cutoff, X, X * X)
    squ = Series.from_classes(cutoff, U, U * U)
    sqy = Series.from_classes(cutoff, Y, X * Y, Y * Y)
    return sqx, squ, sqy


@lru_cache(maxsize=4096)
def _power(which: int, k: int, cutoff: int) -> Series:
    return _generator_images(cutoff)[which] ** k


@lru_cache(maxsize=65536)
def _sq_monomial(m: WMonomial, cutoff: int) -> Series:
    return _power(0, m.x, cutoff) * _power(1, m.u, cutoff) * _power(2, m.y, cutoff)


def steenrod_total(c: WClass, cutoff: int | None = None) -> Series:
    """Total square ``Sq(c) = sum_k Sq^k c`` as a series truncated at ``cutoff``.

    ``Sq`` is the ring map with ``Sq x = x + x^2``, ``Sq u = u + u^2`` and
    ``Sq y = y + xy + y^2``. The default cutoff ``2 deg c`` keeps every component.
    """
    if cutoff is None:
        cutoff = 2 * c.degree
    total = Series.zero(cutoff)
    for m in c.monomials():
        total = total + _sq_monomial(m, cutoff)
    return total


def sq(k: int, c: WClass, ring: WRing | None = None) -> WClass:
    """``Sq^k c``; with a ring the result is put in canonical form."""
    if k < 0 or k > c.degree:
        return WClass(c.degree + k)
    cutoff = c.degree + k
    out = steenrod_total(c, cutoff).component(cutoff)
    return ring.canonical(out) if ring is not None else out


@dataclass
class WuReport:
    n: int
    checked: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def wu_w1_check(ring: WRing) -> WuReport:
    """``Sq^1 = (n mod 2) x`` on ``H^(2n-2)(W_n)``, basis element by basis element."""
    D = ring.top - 1
    factor = X if ring.n % 2 else WClass(1)
    failures = []
    basis = ring.basis_classes(D)
    for z in basis:
        lhs = sq(1, z)
        rhs = factor * z if factor else WClass(D + 1)
        if ring.reduce(lhs) != ring.reduce(rhs):
            failures.append(f"Sq^1({z}) = {ring.canonical(lhs)} but {'x' if factor else '0'}*z differs")
    return WuReport(ring.n, len(basis), failures)


def sq1_formula_class(n: int, j: int) -> tuple[WClass, WClass]:
    """``x^(2^(j+1)-3) y^(n-2^j) u`` and ``n x^(2^(j+1)-2) y^(n-2^j) u`` for ``j >= 1``."""
    z = WClass.monomial(WMonomial(2 ** (j + 1) - 3, 1, n - 2**j))
    img = WClass.monomial(WMonomial(2 ** (j + 1) - 2, 1, n - 2**j))
    return z, (img if n % 2 else WClass(img.degree))


def iter_coords(ring: WRing, D: int):
    """All classes of ``H^D`` as canonical representatives (small degrees only)."""
    for coords in range(1 << ring.dim(D)):
        yield ring.from_coords(D, coords)


__all__ = [
    "WRing",
    "normalize_wc",
    "multiply_wc",
    "top_monomials",
    "top_class_wc",
    "top_class_check",
    "steenrod_total",
    "sq",
    "wu_w1_check",
    "sq1_formula_class",
]

"""Zero-divisor cup length of ``C(RP^n, 2)`` and the resulting TC bounds.

Products ``xb^a ub^b yb^c`` of the zero divisors ``zb = z(x)1 + 1(x)z`` are
expanded one generator power at a time on pairs of ambient monomials
(``zb^m = sum_i C(m,i) z^i (x) z^(m-i)``), cancelling mod 2 as they go.
Only the surviving pairs are reduced, side by side, into bidegree blocks of
``H^*(C_n) (x) H^*(C_n)``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .ambient import WClass, WMonomial
from .f2core import binom_parity, iter_bits
from .wcalg import WRing

EXHAUSTIVE_BUDGET = 8

_GENS = {"x": WMonomial(1, 0, 0), "u": WMonomial(0, 1, 0), "y": WMonomial(0, 0, 1)}


class BudgetExceeded(RuntimeError):
    """Exhaustive search requested beyond the allowed n."""


def decompose(n: int) -> tuple[int, int, int]:
    """``(e, d, r)`` with ``n = 2^e + d``, ``0 <= d < 2^e`` and ``r = max{s : 2^s <= d + 1/2}``."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    e = n.bit_length() - 1
    d = n - (1 << e)
    r = d.bit_length() - 1  # -1 when d == 0
    return e, d, r


def zcl_formula(n: int) -> int:
    e, _, r = decompose(n)
    # 2^(r+1) with r = -1 is 1
    return 2 ** (e + 2) + 2 ** (r + 1) - 4


def tc_bounds(n: int) -> tuple[int, int, int]:
    e, d, _ = decompose(n)
    lower = zcl_formula(n)
    upper = 2 ** (e + 2) + 4 * d - 2
    return lower, upper, upper - lower


def witness_exponents(n: int) -> tuple[int, int, int]:
    e, _, r = decompose(n)
    return 2 ** (e + 1) - 1, 2 ** (e + 1) - 2, 2 ** (r + 1) - 1


def _mono_mul(p: WMonomial, q: WMonomial) -> WMonomial:
    return WMonomial(p.x + q.x, p.u + q.u, p.y + q.y).normalize()


def _mono_pow(g: WMonomial, k: int) -> WMonomial:
    return WMonomial(g.x * k, g.u * k, g.y * k).normalize()


Pair = tuple[WMonomial, WMonomial]


def expand_zero_divisors(a: int, b: int, c: int, top: int | None = None) -> set[Pair]:
    """Monomial pairs with odd coefficient in ``xb^a ub^b yb^c`` over the ambient ring.

    With ``top`` given, pairs with a side above degree ``top`` are dropped as
    soon as they appear; later factors only raise degrees.
    """
    one = WMonomial(0, 0, 0)
    pairs: set[Pair] = {(one, one)}
    for name, m in (("x", a), ("u", b), ("y", c)):
        g = _GENS[name]
        new: set[Pair] = set()
        for i in range(m + 1):
            if not binom_parity(m, i):
                continue
            left, right = _mono_pow(g, i), _mono_pow(g, m - i)
            for p, q in pairs:
                lp, rq = _mono_mul(p, left), _mono_mul(q, right)
                if top is not None and (lp.degree > top or rq.degree > top):
                    continue
                new ^= {(lp, rq)}
        pairs = new
    return pairs


def multiply_out(pairs: set[Pair]) -> dict[int, WClass]:
    """Image under ``p (x) q -> p q`` (the diagonal), by degree, ambient level."""
    out: dict[int, WClass] = {}
    for p, q in pairs:
        m = WClass.monomial(_mono_mul(p, q))
        out[m.degree] = out.get(m.degree, WClass(m.degree)) + m
    return {D: v for D, v in out.items() if v}


@dataclass
class TensorClass:
    """Element of ``H^*(C_n) (x) H^*(C_n)``: per bidegree, rows over left coordinates.

    ``blocks[(D1, D2)][i]`` is an int over the reduced coordinates of
    ``H^D2``, the coefficient row of left basis vector ``i`` of ``H^D1``.
    """

    n: int
    blocks: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return any(any(rows) for rows in self.blocks.values())

    def bidegrees(self) -> list[tuple[int, int]]:
        return sorted(k for k, rows in self.blocks.items() if any(rows))

    def block(self, D1: int, D2: int) -> list[int]:
        return self.blocks.get((D1, D2), [])


def to_tensor(ring: WRing, pairs: set[Pair]) -> TensorClass:
    red = ring.reduce_monomial
    t = TensorClass(ring.n)
    for p, q in pairs:
        lv = red(p)
        if not lv:
            continue
        rv = red(q)
        if not rv:
            continue
        key = (p.degree, q.degree)
        rows = t.blocks.get(key)
        if rows is None:
            rows = t.blocks[key] = [0] * ring.dim(p.degree)
        for i in iter_bits(lv):
            rows[i] ^= rv
    return t


def zero_divisor_power(ring: WRing, a: int, b: int, c: int) -> TensorClass:
    """``xb^a ub^b yb^c`` in ``H^*(C_n) (x) H^*(C_n)``; truthiness says nonzero."""
    if min(a, b, c) < 0:
        raise ValueError("exponents must be nonnegative")
    if a + b + 2 * c > 2 * ring.top:
        return TensorClass(ring.n)
    return to_tensor(ring, expand_zero_divisors(a, b, c, ring.top))


@dataclass
class WitnessRecord:
    n: int
    exponents: tuple[int, int, int]
    nonzero: bool
    block_matches: bool
    increments_vanish: dict[str, bool]

    @property
    def ok(self) -> bool:
        return self.nonzero and self.block_matches and all(self.increments_vanish.values())


def zcl_witness(ring: WRing) -> WitnessRecord:
    """Check the witness product, its distinguished block, and that no exponent can grow.

    In bidegree ``(2^(e+1)+2d-1, 2^(e+1)+2^(r+2)-2d-4)`` the part whose right
    factor is free of u must be exactly
    ``x^(2^(e+1)-2) u y^d (x) x^(2^(e+1)-2) y^(2^(r+1)-1-d)``.
    """
    n = ring.n
    e, d, r = decompose(n)
    a, b, c = witness_exponents(n)
    prod = zero_divisor_power(ring, a, b, c)
    D1 = 2 ** (e + 1) + 2 * d - 1
    D2 = 2 ** (e + 1) + 2 ** (r + 2) - 2 * d - 4
    left = WMonomial(2 ** (e + 1) - 2, 1, d)
    right = WMonomial(2 ** (e + 1) - 2, 0, 2 ** (r + 1) - 1 - d)
    assert left.degree == D1 and right.degree == D2
    red = ring.reduce_monomial
    lv, rv = red(left), red(right)
    free_mask = (1 << ring.g.dim(D2)) - 1
    got = [row & free_mask for row in prod.block(D1, D2)] or [0] * ring.dim(D1)
    want = [rv & free_mask if lv >> i & 1 else 0 for i in range(ring.dim(D1))]
    block_ok = bool(lv and rv) and got == want
    increments = {
        "x": not zero_divisor_power(ring, a + 1, b, c),
        "u": not zero_divisor_power(ring, a, b + 1, c),
        "y": not zero_divisor_power(ring, a, b, c + 1),
    }
    return WitnessRecord(n, (a, b, c), bool(prod), block_ok, increments)


def zcl_exhaustive(ring: WRing, budget: int = EXHAUSTIVE_BUDGET) -> tuple[int, tuple[int, int, int]]:
    """Largest ``a + b + c`` with ``xb^a ub^b yb^c != 0``, and one maximizing triple.

    The nonzero triples form a down-set, so for each ``c`` the maximal ``a``
    is non-increasing in ``b``; a staircase walk visits each boundary once.
    """
    if ring.n > budget:
        raise BudgetExceeded(f"exhaustive zcl limited to n <= {budget}, got n={ring.n}")
    cap = 2 * ring.top
    best, arg = 0, (0, 0, 0)
    a_prev = cap
    for c in range(cap // 2 + 1):
        a = a_prev
        for b in range(cap - 2 * c + 1):
            a = min(a, cap - 2 * c - b)
            while a >= 0 and not zero_divisor_power(ring, a, b, c):
                a -= 1
            if a < 0:
                break
            if b == 0:
                a_prev = a
            if a + b + c > best:
                best, arg = a + b + c, (a, b, c)
        if a < 0 and b == 0:
            break
    return best, arg


@dataclass
class ZclResult:
    n: int
    e: int
    d: int
    r: int
    formula: int
    witness_ok: bool
    exhaustive: int | None
    tc_lower: int
    tc_upper: int

    @property
    def gap(self) -> int:
        return self.tc_upper - self.tc_lower

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "d": self.d,
            "r": self.r,
            "zcl_formula": self.formula,
            "zcl_exhaustive": self.exhaustive,
            "witness_ok": self.witness_ok,
            "tc_lower": self.tc_lower,
            "tc_upper": self.tc_upper,
            "gap": self.gap,
        }


def zcl_result(n: int, exhaustive: bool = False, witness: bool = True) -> ZclResult:
    ring = WRing(n, space="C")
    e, d, r = decompose(n)
    lower, upper, _ = tc_bounds(n)
    wit = zcl_witness(ring).ok if witness else False
    exh = zcl_exhaustive(ring)[0] if exhaustive else None
    return ZclResult(n, e, d, r, zcl_formula(n), wit, exh, lower, upper)


def _row(args: tuple[int, bool]) -> ZclResult:
    return zcl_result(args[0], exhaustive=args[1])


def tc_report(n_min: int, n_max: int, exhaustive: bool = False, jobs: int = 1) -> list[ZclResult]:
    args = [(n, exhaustive) for n in range(max(2, n_min), n_max + 1)]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_row, args))
    return [_row(a) for a in args]

"""Mod-2 cohomology of the Grassmannian of 2-planes in R^(n+1).

The ring is ``Z2[x, y] / (q_n, q_{n+1})`` with ``|x| = 1``, ``|y| = 2`` and
``q_k`` the degree-k part of ``(1 + x + y)^-1``.

A homogeneous polynomial of degree ``D`` is an int whose bit ``j`` is the
coefficient of ``x^(D-2j) y^j`` (monomials listed by decreasing x-exponent).
In this encoding multiplying by ``x`` leaves the bits unchanged and multiplying
by ``y`` is a left shift.

Two reductions to ``H^D`` are kept:

* the *oracle*: row reduction of the ideal in degree ``D``; its quotient basis
  is the greedy choice of monomials in decreasing-x order;
* the *fast path* for ``D >= n``: the closed 2-power rule expressing each
  monomial in a basis ``b_1..b_k`` (see :func:`hg_normal_form`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .f2core import binom_parity, clmul, echelon, int_rank, is_two_power, iter_bits, solve


class InductionFailure(RuntimeError):
    """A step of the inductive basis construction did not go through."""


@dataclass(frozen=True, order=True)
class GMonomial:
    x: int
    y: int

    @property
    def degree(self) -> int:
        return self.x + 2 * self.y

    @property
    def bit(self) -> int:
        return self.y

    def __str__(self) -> str:
        return format_monomial(self.x, 0, self.y)


def format_monomial(a: int, e: int, b: int) -> str:
    parts = []
    for var, k in (("x", a), ("u", e), ("y", b)):
        if k == 1:
            parts.append(var)
        elif k > 1:
            parts.append(f"{var}^{k}")
    return " ".join(parts) or "1"


def ambient_dim(D: int) -> int:
    return D // 2 + 1 if D >= 0 else 0


def monomials(D: int) -> list[GMonomial]:
    return [GMonomial(D - 2 * j, j) for j in range(ambient_dim(D))]


def dual_class(k: int) -> int:
    """Degree-k part of ``(1+x+y)^-1``, via ``q_k = x q_{k-1} + y q_{k-2}``."""
    if k < 0:
        return 0
    prev, cur = 0, 1
    for _ in range(k):
        prev, cur = cur, cur ^ (prev << 1)
    return cur


def dual_class_binomial(k: int) -> int:
    """Same as :func:`dual_class`, from ``q_k = sum_j C(k-j, j) x^(k-2j) y^j``."""
    return sum(1 << j for j in range(ambient_dim(k)) if binom_parity(k - j, j))


def theorem_regime(n: int, D: int) -> tuple[int, int] | None:
    """``(k, eps)`` with ``D = 2n - 2k - eps`` when ``n <= D <= 2n-2``."""
    if D < n or D > 2 * n - 2:
        return None
    eps = D % 2
    return (2 * n - eps - D) // 2, eps


def hg_normal_form(n: int, m: GMonomial) -> int:
    """Expand ``x^(2i-eps) y^(n-k-i)`` in the basis ``b_1..b_k`` of ``H^(2n-2k-eps)``.

    Returns a bit mask with bit ``j-1`` set iff ``i + j`` is a power of 2.
    Raises ValueError outside ``n <= degree <= 2n-2``; below degree ``n`` there
    are no relations and monomials are already independent.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if m.x < 0 or m.y < 0:
        raise ValueError(f"negative exponent in {m}")
    regime = theorem_regime(n, m.degree)
    if regime is None:
        raise ValueError(f"degree {m.degree} of {m} is outside [n, 2n-2] for n={n}")
    k, eps = regime
    i = (m.x + eps) // 2
    return sum(1 << (j - 1) for j in range(1, k + 1) if is_two_power(i + j))


@dataclass(frozen=True)
class DegreeTable:
    """Reduction data for one degree: ``images[j]`` is the reduced vector of monomial bit j."""

    degree: int
    basis: tuple[int, ...]
    images: tuple[int, ...]
    ideal_rank: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, bits: int) -> int:
        out = 0
        for j in iter_bits(bits):
            if j >= len(self.images):
                raise ValueError(f"bit {j} outside degree {self.degree}")
            out ^= self.images[j]
        return out


class GrassmannRing:
    """``H^*(G_{n+1,2}; Z2)`` for fixed ``n >= 2``."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")
        self.n = n
        self.top = 2 * n - 2
        self.relations = (dual_class(n), dual_class(n + 1))
        self._tables: dict[int, DegreeTable] = {}
        self._fast: dict[int, DegreeTable] = {}
        for D in range(0, 2 * n + 1):
            self._tables[D] = self._oracle_table(D)

    def __repr__(self) -> str:
        return f"GrassmannRing(n={self.n})"

    def _ideal_rows(self, D: int) -> list[int]:
        rows = []
        for q, qdeg in zip(self.relations, (self.n, self.n + 1)):
            rest = D - qdeg
            if rest < 0:
                continue
            rows.extend(q << b for b in range(rest // 2 + 1))
        return rows

    def _oracle_table(self, D: int) -> DegreeTable:
        width = ambient_dim(D)
        piv = echelon(self._ideal_rows(D))
        basis = tuple(j for j in range(width) if j not in piv)
        pos = {j: t for t, j in enumerate(basis)}
        images = []
        for j in range(width):
            if j in pos:
                images.append(1 << pos[j])
            else:
                rest = piv[j] ^ (1 << j)
                images.append(sum(1 << pos[b] for b in iter_bits(rest)))
        return DegreeTable(D, basis, tuple(images), len(piv))

    def table(self, D: int) -> DegreeTable:
        if D < 0:
            return DegreeTable(D, (), (), 0)
        t = self._tables.get(D)
        if t is None:
            # beyond 2n every monomial is a multiple of one in degree 2n-1 or 2n
            t = DegreeTable(D, (), (0,) * ambient_dim(D), ambient_dim(D))
        return t

    def fast_table(self, D: int) -> DegreeTable:
        """Reduction by the 2-power rule for ``n <= D <= 2n-2``; identity below n."""
        t = self._fast.get(D)
        if t is not None:
            return t
        width = ambient_dim(D)
        regime = theorem_regime(self.n, D)
        if D < 0:
            t = DegreeTable(D, (), (), 0)
        elif D < self.n:
            t = DegreeTable(D, tuple(range(width)), tuple(1 << j for j in range(width)), 0)
        elif regime is None:
            t = DegreeTable(D, (), (0,) * width, width)
        else:
            k, _ = regime
            images = tuple(hg_normal_form(self.n, GMonomial(D - 2 * j, j)) for j in range(width))
            t = DegreeTable(D, tuple(range(k)), images, width - k)
        self._fast[D] = t
        return t

    def dim(self, D: int) -> int:
        return self.table(D).dim

    def dims(self) -> list[int]:
        return [self.dim(D) for D in range(self.top + 1)]

    def basis(self, D: int) -> list[GMonomial]:
        return [GMonomial(D - 2 * j, j) for j in self.table(D).basis]

    def reduce(self, D: int, bits: int) -> int:
        return self.table(D).reduce(bits)

    def reduce_fast(self, D: int, bits: int) -> int:
        return self.fast_table(D).reduce(bits)

    def lift(self, D: int, coords: int) -> int:
        """Ambient polynomial (sum of basis monomials) with the given coordinates."""
        basis = self.table(D).basis
        return sum(1 << basis[t] for t in iter_bits(coords))

    def canonical(self, D: int, bits: int) -> int:
        return self.lift(D, self.reduce(D, bits))

    def multiply(self, D1: int, p: int, D2: int, q: int) -> int:
        """Product of two ambient polynomials, reduced (oracle coordinates in degree D1+D2)."""
        return self.reduce(D1 + D2, clmul(p, q))

    def mul_matrix(self, D: int, factor_degree: int, factor: int) -> list[int]:
        """Columns of multiplication by ``factor`` from H^D to H^(D+factor_degree), oracle coords."""
        return [
            self.reduce(D + factor_degree, clmul(1 << j, factor)) for j in self.table(D).basis
        ]


def reduce_class_g(ring: GrassmannRing, D: int, bits: int) -> int:
    return ring.reduce(D, bits)


def oracle_basis(ring: GrassmannRing, D: int) -> tuple[list[GMonomial], tuple[int, ...]]:
    if D < 0 or D > ring.top:
        return [], ()
    t = ring.table(D)
    return ring.basis(D), t.images


@dataclass
class HgReport:
    n: int
    degrees_checked: int = 0
    monomials_checked: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_hg_vs_oracle(ring: GrassmannRing) -> HgReport:
    """Compare the kernel/coincidence pattern of the 2-power rule with the oracle.

    In each degree the two labelings of monomials must differ by an invertible
    linear map: both have rank k and stacking them does not raise the rank.
    """
    n = ring.n
    rep = HgReport(n)
    for D in range(n, 2 * n - 1):
        k, _ = theorem_regime(n, D)
        width = ambient_dim(D)
        dim = ring.dim(D)
        fast = [hg_normal_form(n, GMonomial(D - 2 * j, j)) for j in range(width)]
        orac = [ring.reduce(D, 1 << j) for j in range(width)]
        r_fast, r_orac = int_rank(fast), int_rank(orac)
        r_both = int_rank(f | (o << k) for f, o in zip(fast, orac))
        rep.degrees_checked += 1
        rep.monomials_checked += width
        if not (dim == k == r_fast == r_orac == r_both):
            rep.mismatches.append(
                f"n={n} D={D}: dim={dim} k={k} rank(rule)={r_fast} "
                f"rank(oracle)={r_orac} rank(both)={r_both}"
            )
    return rep


@dataclass
class PoincareReport:
    n: int
    dims: list[int]
    total: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def poincare_check(ring: GrassmannRing) -> PoincareReport:
    n = ring.n
    dims = ring.dims()
    failures = []
    top = ring.top
    for D in range(top + 1):
        if dims[D] != dims[top - D]:
            failures.append(f"dim H^{D}={dims[D]} but dim H^{top - D}={dims[top - D]}")
        regime = theorem_regime(n, D)
        if regime and dims[D] != regime[0]:
            failures.append(f"dim H^{D}={dims[D]}, expected k={regime[0]}")
    for D in (top + 1, top + 2):
        if ring.table(D).dim:
            failures.append(f"H^{D} is nonzero above the top degree")
    total = sum(dims)
    if total != (n + 1) * n // 2:
        failures.append(f"total dimension {total} != C({n + 1},2)")
    return PoincareReport(n, dims, total, failures)


def hg_inductive_construct(ring: GrassmannRing) -> dict[int, list[int]]:
    """Build the bases ``b_1..b_k`` downward from the top two degrees.

    Each step inverts ``z -> (y z, x^2 z)`` on the span of
    ``g_j = (b_j, b_{j-1})`` and checks that the 2-power rule holds for the new
    basis. Vectors are in oracle coordinates. Raises InductionFailure with the
    offending degree if injectivity, surjectivity or the rule breaks.
    """
    n = ring.n
    out: dict[int, list[int]] = {}
    for eps in (0, 1):
        D = 2 * n - 2 - eps
        if D < n:
            continue
        if ring.dim(D) != 1:
            raise InductionFailure(f"dim H^{D} = {ring.dim(D)}, expected 1")
        betas = [1]
        _check_rule(ring, D, betas)
        out[D] = betas
        while D - 2 >= n:
            Dn = D - 2
            k = len(betas)
            dim_k = ring.dim(D)
            ys = ring.mul_matrix(Dn, 2, 0b10)
            x2 = ring.mul_matrix(Dn, 2, 0b1)
            phi = [a | (b << dim_k) for a, b in zip(ys, x2)]
            if int_rank(phi) != len(phi) or len(phi) != k + 1:
                raise InductionFailure(f"n={n}: phi on H^{Dn} is not injective")
            padded = [0] + betas + [0]
            new = []
            for j in range(1, k + 2):
                gamma = padded[j] | (padded[j - 1] << dim_k)
                z = solve(phi, gamma)
                if z is None:
                    raise InductionFailure(f"n={n}: gamma_{j} not in the image of phi on H^{Dn}")
                new.append(z)
            betas = new
            D = Dn
            _check_rule(ring, D, betas)
            out[D] = betas
    return dict(sorted(out.items()))


def _check_rule(ring: GrassmannRing, D: int, betas: list[int]) -> None:
    for m in monomials(D):
        want = 0
        for j in iter_bits(hg_normal_form(ring.n, m)):
            want ^= betas[j]
        if ring.reduce(D, 1 << m.bit) != want:
            raise InductionFailure(f"n={ring.n}: rule fails for {m} in H^{D}")


def beta_monomials(ring: GrassmannRing, D: int) -> list[list[GMonomial]]:
    """For each ``b_j`` in degree D, the monomials equal to it (may be empty)."""
    k, _ = theorem_regime(ring.n, D)
    hits: list[list[GMonomial]] = [[] for _ in range(k)]
    for m in monomials(D):
        v = hg_normal_form(ring.n, m)
        if v and v & (v - 1) == 0:
            hits[v.bit_length() - 1].append(m)
    return hits

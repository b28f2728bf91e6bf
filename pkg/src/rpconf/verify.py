"""Verification suites: each runs one family of checks over a parameter range."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import charclasses, f2core, grassmann, tcomplexity, wcalg
from .context import ring_for


@dataclass
class VerifyReport:
    suite: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        d = asdict(self)
        d["wall_time"] = round(self.wall_time, 3)
        return d


def suite_hg(rep: VerifyReport, n_max: int = 40, **_) -> None:
    for n in range(2, n_max + 1):
        g = ring_for(n).g
        rep.instances += 1
        hg = grassmann.verify_hg_vs_oracle(g)
        rep.failures.extend(hg.mismatches)
        rep.failures.extend(grassmann.poincare_check(g).failures)
        try:
            grassmann.hg_inductive_construct(g)
        except grassmann.InductionFailure as exc:
            rep.failures.append(str(exc))


def suite_matlem(rep: VerifyReport, m_max: int = 4096, **_) -> None:
    minors = f2core.leading_minors(f2core.power_sum_matrix(m_max))
    rep.instances += m_max
    rep.failures.extend(f"det(A_{m + 1}) = 0" for m in range(m_max) if not minors[m])


def suite_duality(rep: VerifyReport, n_max: int = 40, **_) -> None:
    for n in range(2, n_max + 1):
        ring = ring_for(n)
        rep.instances += 1
        dims = ring.dims()
        if dims != dims[::-1]:
            rep.failures.append(f"n={n}: H^*(W_n) dims not palindromic: {dims}")
        rep.failures.extend(f"n={n}: {f}" for f in grassmann.poincare_check(ring.g).failures)


def suite_wu(rep: VerifyReport, n_max: int = 40, **_) -> None:
    for n in range(2, n_max + 1):
        ring = ring_for(n)
        rep.instances += 1
        rep.failures.extend(wcalg.wu_w1_check(ring).failures)
        j = 1
        while 2**j <= n:
            z, img = wcalg.sq1_formula_class(n, j)
            if not ring.equal(wcalg.sq(1, z), img):
                rep.failures.append(f"n={n} j={j}: Sq^1 of {z} is not n x^(2^(j+1)-2) ...")
            j += 1


def suite_whitney(rep: VerifyReport, n_max: int = 64, **_) -> None:
    for n in range(2, n_max + 1):
        rep.instances += 1
        if not charclasses.whitney_duality_check(ring_for(n)):
            rep.failures.append(f"n={n}: w(tau) w(eta) != 1")


def suite_top_class(rep: VerifyReport, n_max: int = 512, series_max: int = 64, **_) -> None:
    for n in range(2, n_max + 1):
        rep.instances += 1
        parity = charclasses.top_sw_parity(n)
        if parity != f2core.is_two_power(n):
            rep.failures.append(f"n={n}: top normal class parity {parity}")
        if n > series_max:
            continue
        ring = ring_for(n)
        for k in range(ring.top + 1):
            # raises RouteMismatch on disagreement
            charclasses.w_eta_c_coeff(ring, k)
        if charclasses.w_eta_c_coeff(ring, ring.top).nonzero != bool(parity):
            rep.failures.append(f"n={n}: reduced top normal class disagrees with the 2-power sum")
        rep.failures.extend(f"n={n}: {p}" for p in wcalg.top_class_check(ring))


def suite_zcl(rep: VerifyReport, n_max: int = 64, exhaustive_max: int = 8, **_) -> None:
    for n in range(2, n_max + 1):
        rep.instances += 1
        w = tcomplexity.zcl_witness(ring_for(n))
        if not w.ok:
            rep.failures.append(f"n={n}: witness check failed: {w}")
        if n <= exhaustive_max:
            got, _ = tcomplexity.zcl_exhaustive(ring_for(n))
            if got != tcomplexity.zcl_formula(n):
                rep.failures.append(f"n={n}: exhaustive zcl {got} != {tcomplexity.zcl_formula(n)}")
    bad = f2core.comblem_sweep(8192)
    rep.failures.extend(f"C(d+j, d) odd at d={d} j={j}" for d, j in bad[:20])


SUITES: dict[str, Callable[..., None]] = {
    "hg": suite_hg,
    "matlem": suite_matlem,
    "duality": suite_duality,
    "wu": suite_wu,
    "whitney": suite_whitney,
    "zcl": suite_zcl,
    "top-class": suite_top_class,
}


def run_suite(name: str, **params) -> VerifyReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    rep = VerifyReport(name)
    start = time.perf_counter()
    SUITES[name](rep, **{k: v for k, v in params.items() if v is not None})
    rep.wall_time = time.perf_counter() - start
    return rep

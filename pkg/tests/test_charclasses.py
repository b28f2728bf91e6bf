import pytest

from rpconf import charclasses
from rpconf.ambient import Series, WClass, one_plus_x_y_power
from rpconf.charclasses import (
    BUNDLES,
    RouteMismatch,
    eta_c_closed,
    families_of,
    immersion_report,
    search_one,
    sq2_indeterminacy_witness,
    sw_search,
    sw_series,
    thm_dimension,
    top_class_parity_by_monomials,
    top_sw_parity,
    top_sw_parity_negative,
    w2_formula,
    w_eta_c_coeff,
    whitney_duality_check,
)
from rpconf.context import ring_for
from rpconf.f2core import is_two_power

C = WClass.of


def test_degree_zero_terms_are_one():
    for b in BUNDLES:
        assert sw_series(7, b).w(0) == WClass.one()
    for n in (2, 9, 30):
        assert w_eta_c_coeff(ring_for(n), 0).ambient == WClass.one()


def test_w2_of_normal_bundle_n6():
    ring = ring_for(6)
    assert ring.equal(sw_series(6, "eta-c").w(2), C("y + u^2"))


def test_small_normal_classes():
    assert w_eta_c_coeff(ring_for(2), 3).nonzero
    assert not w_eta_c_coeff(ring_for(3), 5).nonzero
    assert ring_for(3).is_zero(sw_series(3, "eta-c").w(5))


def test_top_parity_examples():
    assert top_sw_parity(2) == 1
    assert top_sw_parity(3) == 0
    assert top_sw_parity(64) == 1
    with pytest.raises(ValueError):
        top_sw_parity(1)


def test_top_parity_sweep():
    for n in range(2, 513):
        assert top_sw_parity(n) == top_sw_parity_negative(n) == int(is_two_power(n)), n


@pytest.mark.parametrize("n", range(2, 65))
def test_routes_agree_every_degree(n):
    ring = ring_for(n)
    series = sw_series(n, "eta-c")
    for k in range(ring.top + 1):
        coeff = w_eta_c_coeff(ring, k)
        assert series.w(k) == coeff.ambient == eta_c_closed(n, k)
    assert coeff.nonzero == bool(top_sw_parity(n))
    assert top_class_parity_by_monomials(n) == top_sw_parity(n)


def test_route_mismatch_is_reported(monkeypatch):
    real = charclasses.eta_c_closed
    monkeypatch.setattr(
        charclasses, "eta_c_closed", lambda n, k: real(n, k) + C("x^4") if k == 4 else real(n, k)
    )
    with pytest.raises(RouteMismatch, match="x\\^4"):
        w_eta_c_coeff(ring_for(5), 4)


def test_binomial_power_oracle():
    base = Series.from_classes(20, WClass.one(), C("x"), C("y"))
    for m in range(0, 12):
        assert base ** m == one_plus_x_y_power(20, m)


def test_sw_series_bad_args():
    with pytest.raises(ValueError):
        sw_series(4, "nu")
    with pytest.raises(ValueError):
        sw_series(4, "eta-c", cutoff=8)
    with pytest.raises(ValueError):
        w_eta_c_coeff(ring_for(4), 8)


def test_whitney_examples():
    assert whitney_duality_check(ring_for(4))
    assert whitney_duality_check(ring_for(5))


@pytest.mark.parametrize("n", range(2, 65))
def test_whitney_sweep(n):
    assert whitney_duality_check(ring_for(n))


def test_whitney_detects_a_wrong_tangent(monkeypatch):
    real = charclasses.sw_series

    def skewed(n, bundle, cutoff=None):
        s = real(n, bundle, cutoff)
        if bundle == "tau-c":
            s = charclasses.SwSeries(n, bundle, s.series + Series.from_classes(s.cutoff, C("x")))
        return s

    monkeypatch.setattr(charclasses, "sw_series", skewed)
    assert not whitney_duality_check(ring_for(6))


def test_search_examples():
    five = {h.family: h for h in search_one(5)}
    assert five["2^r+1"].k == 5 and five["2^r+1"].nonzero
    six = {h.family: h for h in search_one(6)}
    assert six["2^r+2"].k == 3 and six["2^r+2"].nonzero
    eight = search_one(8)
    assert eight[0].family == "max" and eight[0].k == 15


def test_families_need_offset_below_two_power():
    assert families_of(3) == [("2^r+1", 1)]
    assert families_of(4) == []
    assert families_of(6) == [("2^r+2", 3)]
    assert families_of(12) == [("2^r+4", 7)]
    assert families_of(20) == [("2^r+4", 23)]


def test_search_empty_range():
    assert sw_search(1) == []
    assert sw_search(10, n_min=11) == []


def test_search_parallel_matches_serial():
    assert sw_search(24, n_min=15, jobs=2) == sw_search(24, n_min=15)


def test_w2_formula_sweep():
    for n in range(2, 65, 2):
        ring = ring_for(n)
        assert ring.equal(w_eta_c_coeff(ring, 2).ambient, w2_formula(n)), n


def test_top_minus_one_vanishes_off_two_powers():
    for n in range(2, 65):
        ring = ring_for(n)
        assert w_eta_c_coeff(ring, 2 * n - 2).nonzero == is_two_power(n), n


@pytest.mark.parametrize("n", [6, 10, 12])
def test_sq2_witness_examples(n):
    w = sq2_indeterminacy_witness(ring_for(n))
    assert w.ok and all(w.checks.values())
    if n == 6:
        assert (w.t, w.monomial) == (2, "x y^4")


def test_sq2_witness_sweep():
    for n in range(6, 65, 2):
        if not is_two_power(n):
            assert sq2_indeterminacy_witness(ring_for(n)).ok, n


def test_sq2_witness_rejects_bad_n():
    for n in (4, 7, 8):
        with pytest.raises(ValueError):
            sq2_indeterminacy_witness(ring_for(n))


def test_immersion_reports():
    four = immersion_report(4)
    assert four["nonimmersion"] == 14 and four["non_closed_embedding"] == 15
    assert four["computed"][0]["nonzero"]
    six = immersion_report(6)
    assert six["immersion"] == 21
    assert six["computed"][0] == {"class": "w_10(eta)", "zero": True}
    assert "certificate failed" not in six["status"]
    five = immersion_report(5)
    assert five["immersion"] == 17
    assert len(five["computed"]) == 1 and five["computed"][0]["zero"]


def test_thm_dimension():
    assert thm_dimension(5) == 14
    assert thm_dimension(8) == 30

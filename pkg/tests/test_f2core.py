import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpconf.ambient import Series, WClass
from rpconf.f2core import (
    BitMatrix,
    Outcome,
    binom_parity,
    clmul,
    comblem_holds,
    comblem_sweep,
    det,
    echelon,
    int_rank,
    is_two_power,
    leading_minors,
    matlem_det,
    power_sum_matrix,
    rank,
    row_reduce,
    solve,
)

PASCAL_N = 1 << 9


@pytest.fixture(scope="module")
def pascal():
    rows = np.zeros((PASCAL_N + 1, PASCAL_N + 1), dtype=np.uint8)
    rows[0, 0] = 1
    for a in range(1, PASCAL_N + 1):
        rows[a, 0] = 1
        rows[a, 1:] = rows[a - 1, 1:] ^ rows[a - 1, :-1]
    return rows


def test_binom_examples():
    assert binom_parity(7, 3) == 1
    assert binom_parity(5, 2) == 0
    assert binom_parity(-6, 2) == 1
    n, t = 4, 1
    assert binom_parity(2 * n - 2 ** (t - 1), n - 2 ** (t - 1)) == 1


def test_binom_edges():
    assert binom_parity(3, 5) == 0
    assert binom_parity(3, -1) == 0
    assert binom_parity(0, 0) == 1
    assert binom_parity(-1, 9) == 1


def test_binom_matches_pascal_table(pascal):
    for a in range(PASCAL_N + 1):
        got = [binom_parity(a, b) for b in range(a + 1)]
        assert got == pascal[a, : a + 1].tolist()


@given(st.integers(0, 1 << 16), st.integers(0, 1 << 16))
def test_binom_lucas_digits(a, b):
    # digitwise Lucas, written out: every binary digit of b at most that of a
    want = all((b >> i & 1) <= (a >> i & 1) for i in range(18))
    assert binom_parity(a, b) == int(want and b <= a)


@pytest.mark.parametrize("m", [1, 2, 3, 6, 7, 13])
def test_negative_binom_matches_series_inverse(m):
    cutoff = 64
    # (1+t)^m in one variable: put t = x, then invert
    pos = Series.one(cutoff)
    base = Series.from_classes(cutoff, WClass.one(), WClass(1, 1, 0))
    for _ in range(m):
        pos = pos * base
    inv = pos.inverse()
    for b in range(cutoff + 1):
        assert inv.component(b).free & 1 == binom_parity(-m, b)


def test_clmul():
    assert clmul(0b11, 0b11) == 0b101
    assert clmul(0, 0b1011) == 0
    assert clmul(0b110, 0b1) == 0b110


def test_two_powers():
    assert [k for k in range(20) if is_two_power(k)] == [1, 2, 4, 8, 16]


def test_row_reduce_examples():
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix(3, 3)) == 0
    a3 = power_sum_matrix(3)
    assert a3.to_dense().tolist() == [[1, 0, 1], [0, 1, 0], [1, 0, 0]]
    r, pivots, red = row_reduce(a3)
    assert (r, pivots) == (3, [0, 1, 2])
    assert red == BitMatrix.identity(3)


def test_power_sum_small():
    assert power_sum_matrix(1).to_dense().tolist() == [[1]]
    assert power_sum_matrix(2).to_dense().tolist() == [[1, 0], [0, 1]]


def test_matlem_small():
    assert matlem_det(2) == 1
    assert matlem_det(3) == 1
    assert all(matlem_det(m) for m in range(1, 70))


def test_leading_minors_agree_with_direct_det():
    big = power_sum_matrix(300)
    minors = leading_minors(big)
    for m in (1, 2, 5, 64, 65, 127, 128, 129, 300):
        assert minors[m - 1] == det(power_sum_matrix(m))


def test_leading_minors_after_a_zero_pivot():
    m = BitMatrix.from_dense([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert leading_minors(m).tolist() == [0, 1, 1]


def test_det_rejects_rectangular():
    with pytest.raises(ValueError):
        det(BitMatrix(2, 3))


def test_int_row_helpers():
    rows = [0b1100, 0b0110, 0b1010]
    assert int_rank(rows) == 2
    piv = echelon(rows)
    assert sorted(piv) == [2, 3]
    assert solve([0b01, 0b10, 0b11], 0b11) is not None
    assert solve([0b01], 0b10) is None


def test_comblem_examples():
    assert comblem_holds(5, 4) is Outcome.HOLDS
    assert comblem_holds(4, 3) is Outcome.VACUOUS
    assert comblem_holds(6, 3) is Outcome.HOLDS
    assert comblem_holds(6, 0) is Outcome.VACUOUS
    assert all(comblem_holds(6, j) for j in range(10))


def test_comblem_sweep_is_clean():
    assert comblem_sweep(2048) == []


dense = st.integers(1, 70).flatmap(
    lambda r: st.integers(1, 70).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(dense)
def test_rank_of_transpose(rows):
    m = BitMatrix.from_dense(rows)
    assert rank(m) == rank(m.transpose())


@settings(max_examples=60, deadline=None)
@given(dense)
def test_row_reduce_idempotent_and_row_space(rows):
    m = BitMatrix.from_dense(rows)
    r, pivots, red = row_reduce(m)
    assert row_reduce(red)[2] == red
    assert r == len(pivots)
    dense_red = red.to_dense()
    for i, j in enumerate(pivots):
        assert dense_red[:, j].tolist() == [int(k == i) for k in range(m.rows)]
    assert not dense_red[r:].any()
    # same row space: stacking adds no rank
    both = BitMatrix.from_dense(np.vstack([m.to_dense(), dense_red]))
    assert rank(both) == r
    assert int_rank(m.to_int_rows()) == r


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, (1 << 130) - 1), min_size=1, max_size=8))
def test_int_rows_round_trip(rows):
    m = BitMatrix.from_int_rows(rows, 130)
    assert m.to_int_rows() == rows

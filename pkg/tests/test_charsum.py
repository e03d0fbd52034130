import math

import pytest
from hypothesis import given, settings, strategies as st

from modcubic import charsum
from modcubic.charsum import (
    SpacedFamily,
    curve_value_family,
    greedy_spaced_family,
    holder_chain_check,
    inner_sums,
    interval_sum,
    max_partial,
    moment,
    polya_vinogradov_max,
    random_spaced_points,
    shao_bound,
)
from modcubic.cubic import ReducedCubic
from modcubic.modarith import UsageError, legendre

from .test_modarith import SMALL_PRIMES


def naive_sum(p, N, h):
    return sum(legendre(n, p) for n in range(N + 1, N + h + 1))


def naive_pv(p):
    best = 0
    for N in range(p):
        run = 0
        for n in range(N + 1, N + p + 1):
            run += legendre(n, p)
            best = max(best, abs(run))
    return best


def test_interval_sum_examples():
    assert interval_sum(101, 17, 0) == 0
    assert interval_sum(101, 0, 100) == 0
    assert interval_sum(5, 0, 2) == 0


@given(st.sampled_from(SMALL_PRIMES), st.integers(-500, 5000), st.integers(0, 3000))
def test_interval_sum_matches_naive(p, N, h):
    assert interval_sum(p, N, h) == naive_sum(p, N, h)


@given(st.sampled_from(SMALL_PRIMES), st.integers(0, 10**6))
def test_full_period_vanishes(p, N):
    assert interval_sum(p, N, p) == 0


@given(st.sampled_from(SMALL_PRIMES), st.integers(0, 10**4), st.integers(0, 500), st.integers(0, 500))
def test_interval_sum_additive(p, N, h1, h2):
    assert interval_sum(p, N, h1 + h2) == interval_sum(p, N, h1) + interval_sum(p, N + h1, h2)


def test_interval_sum_large_prime_path():
    p = 10**9 + 7
    assert interval_sum(p, 12345, 50) == naive_sum(p, 12345, 50)


def test_max_partial_examples():
    assert max_partial(5, 0, 4) == 1
    for N in range(11):
        assert max_partial(11, N, 1) == abs(legendre(N + 1, 11))


@given(st.sampled_from(SMALL_PRIMES), st.integers(0, 2000), st.integers(1, 300))
def test_max_partial_dominates(p, N, H):
    m = max_partial(p, N, H)
    assert m == max(abs(naive_sum(p, N, h)) for h in range(1, H + 1))


def test_moment_examples():
    # chi mod 13 starts 1, -1, 1, 1: partials from N = 1 are -1, 0, 1
    fam = SpacedFamily(13, 3, (1,))
    assert max_partial(13, 1, 3) == 1
    assert moment(SpacedFamily(5, 4, (0,)), 1) == 1.0
    zero = next(N for N in range(5) if max_partial(5, N, 1) == 0)
    assert moment(SpacedFamily(5, 1, (zero,)), 2) == 0.0
    assert moment(fam, 3) == 1.0


@settings(deadline=None)
@given(st.sampled_from([q for q in SMALL_PRIMES if q > 200]), st.integers(1, 20), st.integers(1, 3), st.randoms())
def test_moment_bounds_and_monotone(p, H, r, rnd):
    J = max(1, p // (3 * H))
    pts = random_spaced_points(p, H, J, rnd.randint)
    fam = SpacedFamily(p, H, tuple(pts))
    parts = [max_partial(p, n, H) for n in pts]
    m = moment(fam, r)
    assert max(parts) ** (2 * r) <= m <= J * max(parts) ** (2 * r)
    if len(pts) > 1:
        assert moment(SpacedFamily(p, H, tuple(pts[:-1])), r) <= m


def test_shao_bound_examples():
    assert shao_bound(10**4, 10, 1, 0) == pytest.approx(1e4, rel=1e-12)
    assert shao_bound(10**4, 10, 2, 0) == pytest.approx(1e5, rel=1e-12)
    assert shao_bound(10**4, 10, 2, 0.1) > shao_bound(10**4, 10, 2, 0.05) > shao_bound(10**4, 10, 2, 0)


def test_spaced_family_invariants():
    with pytest.raises(UsageError):
        SpacedFamily(101, 5, ())
    with pytest.raises(UsageError):
        SpacedFamily(101, 5, (0, 4))
    with pytest.raises(UsageError):
        SpacedFamily(101, 5, (0, 101))
    assert SpacedFamily(101, 5, (0, 5, 50)).J == 3


def test_greedy_examples():
    assert greedy_spaced_family(101, [0, 10, 20, 40], 10).points == (0, 10, 20, 40)
    assert greedy_spaced_family(101, range(10), 5).points == (0, 5)
    with pytest.raises(UsageError):
        greedy_spaced_family(101, [], 3)


def test_greedy_curve_values():
    values = [(u**3) % 101 for u in range(1, 11)]
    fam = greedy_spaced_family(101, values, 10)
    # 125 - 101 = 24, 216 - 202 = 14, 343 - 303 = 40, 512 - 505 = 7, 729 - 707 = 22, 1000 - 909 = 91
    assert values == [1, 8, 27, 64, 24, 14, 40, 7, 22, 91]
    assert fam.points == (1, 14, 24, 40, 64, 91)
    assert all(b - a >= 10 for a, b in zip(fam.points, fam.points[1:]))
    assert curve_value_family(ReducedCubic(101, 1, 0), 10, 10) == fam


@given(st.lists(st.integers(0, 10**5), min_size=1), st.integers(1, 50))
def test_greedy_is_spaced(values, H):
    fam = greedy_spaced_family(100003, values, H)
    assert fam.points[0] == min(values)
    assert set(fam.points) <= set(values)


@given(st.integers(1, 60), st.integers(1, 30), st.randoms())
def test_random_spaced_points(J, H, rnd):
    p = 2003
    if (J - 1) * (H - 1) + J > p:
        return
    pts = random_spaced_points(p, H, J, rnd.randint)
    assert len(pts) == J and pts[0] >= 0 and pts[-1] < p
    assert all(b - a >= H for a, b in zip(pts, pts[1:]))


def test_holder_examples():
    cur = ReducedCubic(101, 1, 0)
    chk = holder_chain_check(cur, 10, 2)
    T = [sum(legendre(u**3 - v, 101) for v in range(1, 6)) for u in range(1, 6)]
    assert inner_sums(cur, 10) == T
    assert chk.lhs == sum(abs(t) for t in T)
    assert chk.rhs == pytest.approx(5 ** 0.75 * sum(abs(t) ** 4 for t in T) ** 0.25)
    assert chk.holds and chk.lhs <= chk.rhs
    # single term: equality
    one = holder_chain_check(ReducedCubic(1009, 5, 6), 3, 3)
    assert one.terms == 1 and one.lhs_power == one.rhs_power
    assert one.rhs == pytest.approx(one.lhs)


@settings(deadline=None)
@given(st.sampled_from(SMALL_PRIMES + [10007]), st.integers(2, 200), st.integers(1, 4), st.data())
def test_holder_always_holds(p, H, r, data):
    cur = ReducedCubic(p, data.draw(st.integers(1, p - 1)), data.draw(st.integers(0, p - 1)))
    chk = holder_chain_check(cur, H, r)
    assert chk.holds
    assert chk.lhs <= chk.rhs * (1 + 1e-12)
    if r == 1:
        cs = math.sqrt(chk.terms) * math.sqrt(sum(t * t for t in inner_sums(cur, H)))
        assert chk.rhs == pytest.approx(cs)


def test_pv_examples():
    # chi mod 5 = 1, -1, -1, 1: S(1; 2) = chi(2) + chi(3) = -2
    assert naive_sum(5, 1, 2) == -2
    assert polya_vinogradov_max(5) == 2 == naive_pv(5)
    for p in (7, 11, 101, 103):
        assert polya_vinogradov_max(p) >= 1


@pytest.mark.parametrize("p", [q for q in SMALL_PRIMES if q < 160])
def test_pv_matches_naive(p):
    assert polya_vinogradov_max(p) == naive_pv(p)
    assert polya_vinogradov_max(p) <= math.sqrt(p) * math.log(p)


def test_trend():
    reps = charsum.moment_report(SpacedFamily(5, 4, (0,)), 1, 0.1)
    assert charsum.trend([reps]) == {"r=1 given": reps.ratio}
    assert reps.ratio == reps.lhs_moment / reps.rhs_bound

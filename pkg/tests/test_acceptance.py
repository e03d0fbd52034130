"""Exit criteria. Each test is tagged with its criterion number; the terminal
summary prints one PASS/FAIL line per criterion with the measured values.
"""

import math
import random
import time

import numpy as np
import pytest

from modcubic.charsum import holder_chain_check, polya_vinogradov_budget, polya_vinogradov_max, trend
from modcubic.cli import run
from modcubic.cubic import (
    GeneralCubic,
    ReducedCubic,
    brute_count_grid,
    brute_detect_in_box,
    brute_min_box_side,
    brute_min_box_side_values,
    count_x_solutions,
    detect_in_box,
    difference_rhs,
    difference_rhs_grid,
    min_box_side,
    normalize,
    pair_condition,
    pair_condition_grid,
    reduced_parity_condition,
    reduced_parity_grid,
)
from modcubic.modarith import is_prime, legendre, legendre_table
from modcubic.scan import ScanConfig, fit_exponent, fit_summary, run_minbox_scan, run_moment_scan, sample_primes

criterion = pytest.mark.criterion


def primes_between(lo, hi):
    return [p for p in range(lo, hi + 1) if is_prime(p)]


@criterion(1, "pair criterion = symbol of difference_rhs; solution count = brute count")
def test_criterion_identity(report):
    t0 = time.perf_counter()
    rng = random.Random(1)
    curves = scalar = 0
    for p in primes_between(5, 200):
        chi = legendre_table(p)
        As = [rng.randrange(1, p) for _ in range(10)]
        Cs = [rng.randrange(p) for _ in range(10)]
        for i, a in enumerate(As):
            for j, c in enumerate(Cs):
                cur = ReducedCubic(p, a, c)
                cond = pair_condition_grid(cur)
                assert np.array_equal(cond, chi[difference_rhs_grid(cur)])
                assert np.array_equal(1 + cond, brute_count_grid(cur))
                curves += 1
                if i == j < 2:
                    # scalar operations, exhaustively, against the grids
                    counts = brute_count_grid(cur)
                    for u in range(1, p):
                        for v in range(p):
                            got = pair_condition(cur, u, v)
                            assert got == legendre(difference_rhs(cur, u, v), p) == cond[u - 1, v]
                            assert count_x_solutions(cur, u, v) == counts[u - 1, v]
                            scalar += 1
    elapsed = time.perf_counter() - t0
    report(f"{curves} curves exhaustive over (u, v); {scalar} scalar pairs; {elapsed:.1f}s (target < 120s)")
    assert elapsed < 120


@criterion(2, "parity identity: condition(u', v') = condition(2u', 2v')")
def test_parity_identity(report):
    rng = random.Random(2)
    checked = 0
    for p in primes_between(5, 100):
        for k in range(5):
            cur = ReducedCubic(p, rng.randrange(1, p), rng.randrange(p))
            par = reduced_parity_grid(cur)
            cond = pair_condition_grid(cur)
            for uh in range(1, p):
                for vh in range(1, p):
                    got = reduced_parity_condition(cur, uh, vh)
                    assert got == pair_condition(cur, 2 * uh, 2 * vh)
                    assert got == par[uh - 1, vh] == cond[2 * uh % p - 1, 2 * vh % p]
                    checked += 1
    report(f"{checked} (u', v') pairs on 5 curves per prime p <= 100")


@criterion(3, "fast detector = brute detector; min_box_side = brute minimal side")
def test_detector_exactness(report):
    t0 = time.perf_counter()
    rng = random.Random(3)
    calls = 0
    for p in primes_between(5, 100):
        for _ in range(5):
            cur = ReducedCubic(p, rng.randrange(1, p), rng.randrange(p))
            for H in range(1, p + 1):
                fast = detect_in_box(cur, H)
                assert (fast is not None) == (brute_detect_in_box(cur, H) is not None), (cur, H)
                if fast is not None:
                    fast.check(cur)
                calls += 1
    hist = {}
    for p in primes_between(5, 500):
        for _ in range(20):
            cur = ReducedCubic(p, rng.randrange(1, p), rng.randrange(p))
            h, wit = min_box_side(cur)
            wit.check(cur)
            assert h == brute_min_box_side(cur), cur
            hist[h] = hist.get(h, 0) + 1
    elapsed = time.perf_counter() - t0
    report(f"{calls} detector comparisons; h_min histogram (p <= 500) {dict(sorted(hist.items()))}; "
           f"{elapsed:.1f}s (target < 300s)")
    assert elapsed < 300


@criterion(4, "translation invariance of the minimal side")
def test_translation_invariance(report):
    rng = random.Random(4)
    primes = primes_between(5, 100)
    for _ in range(50):
        p = rng.choice(primes)
        g = GeneralCubic(p, rng.randrange(1, p), rng.randrange(p), rng.randrange(p), rng.randrange(p))
        red, _ = normalize(g)
        ys = [g.eval(x) for x in range(p)]
        assert brute_min_box_side_values(p, ys) == min_box_side(red)[0], g
    report("50 general cubics, p <= 100")


@criterion(5, "desk-scale budget h_min <= 10 p^(1/6 + 0.1); worst-case exponent <= 1/6 + 0.02")
def test_theorem_budget(report):
    t0 = time.perf_counter()
    cfg = ScanConfig(prime_lo=1000, prime_hi=10**6, primes_per_decade=14, curves_per_prime=50, seed=20240501)
    records, summary = run_minbox_scan(cfg)
    elapsed = time.perf_counter() - t0
    assert len(summary) >= 40 and all(s.curves == 50 for s in summary)
    worst_ratio = max(r.h_min / (10 * r.p ** (1 / 6 + 0.1)) for r in records)
    fit = fit_summary(summary)
    report(f"{len(summary)} primes x 50 curves; max h_min = {max(r.h_min for r in records)}; "
           f"max h_min / budget = {worst_ratio:.4f}")
    report(f"worst-case fit: slope = {fit.slope:.4f}, intercept = {fit.intercept:.4f}, "
           f"r^2 = {fit.r_squared:.4f}; {elapsed:.1f}s (target < 600s)")
    assert worst_ratio <= 1
    assert fit.slope <= 1 / 6 + 0.02
    assert elapsed < 600


@criterion(6, "Polya-Vinogradov: max interval sum <= sqrt(p) ln p")
def test_polya_vinogradov(report):
    worst = 0.0
    primes = primes_between(5, 10**4)
    for p in primes:
        m = polya_vinogradov_max(p)
        assert m <= polya_vinogradov_budget(p), p
        worst = max(worst, m / polya_vinogradov_budget(p))
    report(f"{len(primes)} primes; largest max/budget = {worst:.4f}")


@criterion(7, "Hoelder chain lhs <= rhs")
def test_holder_chain(report):
    rng = random.Random(7)
    primes = primes_between(5, 10**4)
    tight = 0.0
    for _ in range(100):
        p = rng.choice(primes)
        cur = ReducedCubic(p, rng.randrange(1, p), rng.randrange(p))
        H = rng.randint(4, 200)
        r = rng.choice([1, 2, 3])
        chk = holder_chain_check(cur, H, r)
        assert chk.holds, (cur, H, r)
        if chk.rhs > 0:
            tight = max(tight, chk.lhs / chk.rhs)
    report(f"100 configurations; largest lhs/rhs = {tight:.4f}")


@criterion(8, "moment / bound(eps = 0.1) <= 50")
def test_moment_ratio(report):
    primes = sample_primes(1000, 10**5, 10)
    assert len(primes) == 20
    reps = run_moment_scan(ScanConfig(primes=primes, r_values=[1, 2, 3], epsilon=0.1, seed=8))
    assert len(reps) == 20 * 3 * 2
    for m in reps:
        assert m.H == math.ceil(m.p ** (1 / 3))
        assert m.ratio <= 50, m
    for key, ratio in sorted(trend(reps).items()):
        report(f"{key}: max ratio {ratio:.4f}")
    for r in (1, 2, 3):
        rs = [m for m in reps if m.r == r and m.family == "random"]
        report(f"r={r} random: ratio {rs[0].ratio:.4f} at p={rs[0].p} -> {rs[-1].ratio:.4f} at p={rs[-1].p}")


@criterion(9, "scan output byte-identical across runs and thread counts")
def test_scan_determinism(tmp_path, report):
    outputs = []
    for i, threads in enumerate(["1", "3", "1"]):
        path = tmp_path / f"run{i}.csv"
        with open(tmp_path / f"stdout{i}", "w") as sink:
            code = run(["scan", "--pmin", "1000", "--pmax", "100000", "--per-decade", "4", "--curves", "10",
                        "--seed", "99", "--threads", threads, "--out", str(path), "--format", "json"],
                       stdout=sink)
        assert code == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    report(f"3 runs (threads 1, 3, 1); {len(outputs[0])} bytes each")


@criterion(10, "fit_exponent recovers planted exponents within 0.02")
def test_synthetic_fit(report):
    primes = sorted({_next_prime_at(10 ** (3 + 3 * k / 19)) for k in range(20)})
    assert len(primes) == 20
    for beta in (0, 1 / 6, 1 / 3):
        fit = fit_exponent([(p, round(p**beta)) for p in primes])
        report(f"beta = {beta:.4f}: slope = {fit.slope:.4f}")
        assert abs(fit.slope - beta) <= 0.02


def _next_prime_at(x):
    n = math.ceil(x)
    while not is_prime(n):
        n += 1
    return n

# %% [markdown]
# # How does the worst minimal box side grow with p?
#
# Sweep log-spaced primes, sample curves with the seeded counter-based
# generator, keep the worst h_min per prime and fit a line in log-log space.
# The guaranteed growth is at most p^(1/6 + eps); observed values stay tiny.

# %%
from modcubic.scan import ScanConfig, fit_summary, run_minbox_scan

cfg = ScanConfig(prime_lo=1000, prime_hi=10**6, primes_per_decade=6, curves_per_prime=30, seed=1)
records, summary = run_minbox_scan(cfg)
for s in summary:
    print(s.p, s.h_worst, round(s.p ** (1 / 6), 2))

fit = fit_summary(summary)
print(f"slope {fit.slope:.4f} (vs 1/6 = {1 / 6:.4f}), r^2 {fit.r_squared:.3f}")

# %% [markdown]
# The same sweep from the command line writes a CSV that `modcubic fit` reads:
#
#     modcubic scan --pmin 1000 --pmax 1000000 --per-decade 6 --curves 30 --seed 1 --out scan.csv
#     modcubic fit --in scan.csv

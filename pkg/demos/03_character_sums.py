# %% [markdown]
# # Character sums of the Legendre symbol
#
# Interval sums S(N; h), their 2r-th moments over spaced families, and the
# bound H^(2r-2) p^(1/2 + 1/(2r) + eps) with implied constant 1.

# %%
import math

from modcubic import ReducedCubic
from modcubic import charsum
from modcubic.rng import FAMILY_STREAM, Stream

p = 10007
H = math.ceil(p ** (1 / 3))
stream = Stream(0, p, FAMILY_STREAM)
pts = charsum.random_spaced_points(p, H, charsum.default_family_size(p, H), stream.randint)
fam = charsum.SpacedFamily(p, H, tuple(pts))

for r in (1, 2, 3):
    rep = charsum.moment_report(fam, r, epsilon=0.1)
    print(f"r={r}: J={rep.J} moment={rep.lhs_moment:.0f} bound={rep.rhs_bound:.3g} ratio={rep.ratio:.3f}")

# %% [markdown]
# The curve values a u^3 + c u, greedily thinned to spacing H, form another family.

# %%
cur = ReducedCubic(p, 3, 5)
cfam = charsum.curve_value_family(cur, H, count=200)
print(cfam.J, charsum.moment_report(cfam, 2, 0.1).ratio)

# %% [markdown]
# The double sum over u', v' <= H/2 obeys Hoelder's inequality, checked exactly
# in integers; and the largest interval sum sits well under sqrt(p) ln p.

# %%
for r in (1, 2, 3):
    chk = charsum.holder_chain_check(cur, 60, r)
    print(f"r={r}: lhs={chk.lhs:.0f} rhs={chk.rhs:.2f} holds={chk.holds}")

print(charsum.polya_vinogradov_max(p), charsum.polya_vinogradov_budget(p))

# %% [markdown]
# # Smallest box holding two curve points
#
# `detect_in_box` walks offsets (u, w) in increasing order and stops at the
# first one passing the criterion; `min_box_side` bisects over the box side.
# The brute-force oracle compares coordinates of all pairs directly.

# %%
import time

from modcubic import ReducedCubic, detect_in_box, min_box_side, brute_min_box_side

cur = ReducedCubic(p=7, a=1, c=0)
print(detect_in_box(cur, 2))
print(min_box_side(cur))

# %% [markdown]
# Fast and brute agree, but the brute scan costs O(p * H) array work while the
# criterion needs only a handful of symbol evaluations.

# %%
for p in (1009, 10007, 100003):
    cur = ReducedCubic(p, 5, 11)
    t0 = time.perf_counter()
    h, wit = min_box_side(cur)
    t1 = time.perf_counter()
    hb = brute_min_box_side(cur)
    t2 = time.perf_counter()
    print(f"p={p}: h_min={h} (brute {hb}); criterion {1e3 * (t1 - t0):.2f} ms, brute {1e3 * (t2 - t1):.2f} ms")

# %% [markdown]
# Even at p near 2^62 the criterion path works, where enumeration is hopeless.

# %%
big = ReducedCubic(4611686018427387847, 123456789, 42)
print(min_box_side(big))

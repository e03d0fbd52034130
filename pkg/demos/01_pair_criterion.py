# %% [markdown]
# # When do two points of a cubic sit close together?
#
# Points (x, f(x)) and (x + u, f(x + u)) on y = a x^3 + c x (mod p) differ in
# height by v exactly when (2x + u)^2 = R(u, v) has a solution. Its Legendre
# symbol splits into four factors, and the number of such x is 1 + symbol.

# %%
from modcubic import ReducedCubic, difference_rhs, pair_condition, solve_pair, count_x_solutions
from modcubic.cubic import symbol_factors, eval_at

cur = ReducedCubic(p=101, a=3, c=17)

for u, v in [(1, 0), (1, 5), (2, 2), (7, 100)]:
    print(f"u={u} v={v}: symbols {symbol_factors(cur, u, v)} -> condition {pair_condition(cur, u, v)}, "
          f"R={difference_rhs(cur, u, v)}, x in {solve_pair(cur, u, v)}")

# %% [markdown]
# Every recovered x really produces the requested height difference, and the
# count matches a direct scan over all x.

# %%
u, v = 4, 9
xs = solve_pair(cur, u, v)
scan = [x for x in range(cur.p) if (eval_at(cur, x + u) - eval_at(cur, x) - v) % cur.p == 0]
print(xs, scan, count_x_solutions(cur, u, v))

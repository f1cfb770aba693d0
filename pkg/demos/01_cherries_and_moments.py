# %% [markdown]
# # Cherries in random labeled trees
#
# A cherry is a vertex of degree 3 carrying two leaves. This walk-through
# counts them exhaustively on small trees, compares the totals with the
# exact moments, then looks at what happens for very large trees.
#
# Run with `python demos/01_cherries_and_moments.py` (about ten seconds).

# %%
from collections import Counter

from treesym import enumerate_all_trees, exact_moments, find_cherries, star_graph
from treesym.cherries import asymptotic_moments, monte_carlo_cherries, variance_ratios

print(find_cherries(star_graph(3)))  # three cherries share the center

# %% [markdown]
# ## Exhaustive counts
#
# All `n**(n-2)` labeled trees are enumerated through Prüfer sequences.
# The histogram of cherry counts gives the first two moments exactly.

# %%
for n in range(4, 9):
    hist = Counter(len(find_cherries(t)) for t in enumerate_all_trees(n, cap=8))
    total = n ** (n - 2)
    s1 = sum(c * k for c, k in hist.items())
    s2 = sum(c * c * k for c, k in hist.items())
    rep = exact_moments(n)
    sq = "-" if rep.e_cn_sq is None else rep.e_cn_sq * total
    print(f"n={n}  trees={total:>6}  hist={dict(sorted(hist.items()))}  "
          f"sumC={s1} (formula {rep.e_cn * total})  sumC2={s2} (formula {sq})")

# %% [markdown]
# ## Growth
#
# The mean grows linearly. The slope is `e**-3 / 2`, not `1/2`, because
# `((n-3)/n)**(n-4)` tends to `e**-3`.

# %%
import math

for n in (10, 100, 10**4, 10**6):
    e1, _ = asymptotic_moments(n)
    r, r1 = variance_ratios(n)
    print(f"n={n:>8}  E[C]={e1:12.3f}  E[C]/n={e1 / n:.5f}  Var/E^2={r:.3e}  Var/(E-1)^2={r1:.3e}")
print(f"e^-3 / 2 = {math.exp(-3) / 2:.5f}")

# %% [markdown]
# ## Sampling
#
# Monte Carlo agrees with the exact mean, and the lower bound on
# `P[C >= 2]` from Chebyshev's inequality holds comfortably.

# %%
for n in (50, 200):
    s = monte_carlo_cherries(n, 2000, master_seed=1)
    rep = exact_moments(n)
    print(f"n={n}  mean={s.mean:.3f} exact={float(rep.e_cn):.3f}  "
          f"P[C>=2]={s.p_geq_2:.3f} bound={float(rep.chebyshev_lower_bound_two_cherries):.3f}")

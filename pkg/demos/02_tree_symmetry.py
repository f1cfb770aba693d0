# %% [markdown]
# # Symmetry and quantum symmetry of trees
#
# Every cherry gives an automorphism: swap its two leaves. Two cherries on
# disjoint vertex sets give two automorphisms with disjoint supports, which
# is enough to certify quantum symmetry.

# %%
from treesym import Graph, classify, disjoint_cherry_pair, tree_automorphism_order
from treesym.graph6 import graph6_encode
from treesym.symmetry import brute_force_automorphisms
from treesym.trees import SampleStream

double_star = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
print("graph6:", graph6_encode(double_star).decode())
print("cherries:", disjoint_cherry_pair(double_star))
v = classify(double_star)
print(v.status.value, [p.image for p in v.pair], "re-verified:", v.verify(double_star))

# %% [markdown]
# ## Two engines for |Aut(T)|
#
# The AHU route roots the tree at its center and multiplies factorials of
# repeated child shapes. Backtracking is exponential but independent.

# %%
for t in list(SampleStream(master_seed=3, n=9, count=5)):
    print(sorted(t.edges), tree_automorphism_order(t).group_order,
          brute_force_automorphisms(t).group_order)

# %% [markdown]
# ## Larger trees
#
# With hundreds of vertices nearly every tree has two disjoint cherries,
# so classification ends with a certificate almost every time.

# %%
from collections import Counter

for n in (20, 100, 400):
    tally = Counter(classify(t).status.value for t in SampleStream(master_seed=7, n=n, count=300))
    print(n, dict(tally))

# %% [markdown]
# # Random graphs and the 2-dimensional Weisfeiler-Leman partition
#
# WL-2 refines ordered vertex pairs until the coloring is stable. The
# stable classes form a coherent configuration. If every pair ends up alone
# (`n**2` classes), no nontrivial permutation, classical or quantum,
# commutes with the adjacency matrix.

# %%
import numpy as np

from treesym import complete_graph, path_graph, wl2_stabilize
from treesym.coherent import is_full, orbital_configuration, verify_coherence_axioms
from treesym.trees import sample_gnp, sample_rng

for name, g in [("K4", complete_graph(4)), ("P3", path_graph(3)), ("P4", path_graph(4))]:
    c = wl2_stabilize(g)
    print(name, "classes:", c.num_classes, "orbitals:", orbital_configuration(g).num_classes,
          "axioms:", bool(verify_coherence_axioms(c)))

print(wl2_stabilize(path_graph(3)).class_of)

# %% [markdown]
# ## How often is G(n, 1/2) full?

# %%
for n in (6, 10, 15, 20, 30):
    full = [is_full(wl2_stabilize(sample_gnp(n, 0.5, sample_rng(11, n, i)))) for i in range(100)]
    print(f"n={n:>2}  full fraction {np.mean(full):.2f}")

# %% [markdown]
# ## Refinement history
#
# The class count climbs quickly and stabilises after a couple of rounds.

# %%
g = sample_gnp(25, 0.5, sample_rng(11, 25, 0))
c = wl2_stabilize(g)
print("history:", c.history, "rounds:", c.rounds)

# %% [markdown]
# # Building spaces
#
# A partial n-metric on a finite set is a table indexed by multisets of
# size n.  Here we load the bundled two-point 5-metric and lift a partial
# metric to arity 3.

# %%
import numpy as np

import pnmetric as pn

G = pn.two_point_five_metric()
G.points, G.n

# %%
for multiset, value in G.entries():
    print(multiset, value)

# %% [markdown]
# Any ordering of a tuple gives the same value.

# %%
G.value(["a", "b", "a", "a", "a"]), G.value(["b", "a", "a", "a", "a"])

# %%
p = pn.PartialMetricSpace.from_matrix(["x", "y", "z"], [[1, 3, 4], [3, 2, 4], [4, 4, 0]])
H = pn.from_partial_metric(p, 3)
H.value(["x", "y", "z"]), H.self_distance("x")

# %% [markdown]
# The associated metric adds the two one-sided gaps.

# %%
d = pn.associated_metric(H)
np.array([[d.distance(u, v) for v in H.points] for u in H.points])

# %% [markdown]
# # Balls and the induced topology
#
# Balls are strict: y is in B(x, eps) when G(x,...,x,y) - G(x,...,x) < eps.

# %%
import pnmetric as pn

G = pn.two_point_five_metric()
for eps in (1, 3, 3.5, 4, 5):
    print(eps, sorted(pn.open_ball(G, "a", eps).members), sorted(pn.open_ball(G, "b", eps).members))

# %%
pn.separation_class(G).to_dict()

# %%
check = pn.basis_check(G, trials=500, seed=0)
check.passed, check.trials

# %% [markdown]
# The ball topology agrees with the topology of the associated metric.

# %%
cmp = pn.compare_topologies(G)
cmp.passed, cmp.checked

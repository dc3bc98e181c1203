# %% [markdown]
# # Fixed points by orbit iteration
#
# Orbits of self-maps on finite sets are eventually periodic, so the
# solver sees the whole orbit.  When the orbit is Cauchy it reports the
# special limit and the hypothesis set that makes it a fixed point.

# %%
import pnmetric as pn

G = pn.two_point_five_metric()
f = pn.SelfMap(G, {"a": "b", "b": "b"})
trace = pn.orbit(f, "a")
trace.terms

# %%
res = pn.solve_fixed_point(G, f, "a")
res.fixed_point, res.theorem_case, res.iterations

# %%
res.to_dict()["cases"]["hypothesis_sets"]

# %% [markdown]
# Count fixed points found over every self-map of the space and every start.

# %%
from collections import Counter

tally = Counter()
for g in pn.all_self_maps(G):
    for x0 in G.points:
        try:
            tally[pn.solve_fixed_point(G, g, x0).theorem_case] += 1
        except pn.PNMetricError as exc:
            tally[type(exc).__name__] += 1
tally

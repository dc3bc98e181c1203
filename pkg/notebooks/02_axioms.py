# %% [markdown]
# # Checking the axioms
#
# Validation is exhaustive over all multisets; each violation carries the
# tuple and both sides of the inequality.

# %%
import pnmetric as pn

G = pn.two_point_five_metric()
report = pn.validate(G)
report.verdict, report.counts

# %%
pn.validate(G, "strong").verdict, pn.validate(G, "n_metric").verdict

# %% [markdown]
# Lowering one entry breaks the triangle inequality.

# %%
bad = G.replace({("a", "a", "b", "b", "b"): -10})
r = pn.validate(bad)
r.verdict, len(r.violations)

# %%
for v in r.violations[:3]:
    print(v.to_dict())

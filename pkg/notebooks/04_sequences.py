# %% [markdown]
# # Sequences, limits and special limits
#
# On a finite space a sequence is judged on a finite prefix; the verdicts
# use a trailing window of the prefix.

# %%
import pnmetric as pn

G = pn.two_point_five_metric()
seq = pn.SequencePrefix(G, ["a", "b"] * 3 + ["b"] * 12)
v = pn.estimate_cauchy(seq)
v.holds_on_prefix, v.r_estimate

# %%
pn.check_limit(seq, "b"), pn.check_special_limit(seq, "b")

# %%
pn.special_limit_search(seq)

# %% [markdown]
# An alternating sequence is not Cauchy.

# %%
alt = pn.SequencePrefix(G, ["a", "b"] * 10)
pn.estimate_cauchy(alt).holds_on_prefix

# %% [markdown]
# # Probabilistic simulation through max flow
#
# The dominance condition p(X) <= q(R(X)) for every set X can be checked by
# enumerating subsets or by one max-flow computation.  When it fails, the
# left side of a minimum cut is a violating set.

# %%
from fractions import Fraction as F
from pathlib import Path

from gradedsim import Relation, check_mdp_simulation, flow_dominance, mdp_similarity, parse, subset_dominance

p = [F(1, 2), F(1, 2), F(0)]
q = [F(1, 4), F(1, 4), F(1, 2)]
r = Relation([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
print("subset route:", subset_dominance(p, q, r))
cert = flow_dominance(p, q, r)
print("flow route:", cert)
image = {j for i in cert.subset for j in range(3) if r.bits[i, j]}
assert sum(p[i] for i in cert.subset) > sum(q[j] for j in image)

# %% [markdown]
# On a whole process: a fair coin that stops half the time is simulated by a
# biased coin that stops a quarter of the time, but not the other way round.

# %%
data = Path(__file__).resolve().parent / "data" if "__file__" in globals() else Path("demos/data")
m = parse((data / "coin_mdp.json").read_text())
sim = mdp_similarity(m)
print(sim.bits.astype(int))
swapped = Relation(sim.bits | [[False, False, False], [True, False, False], [False, False, False]])
print(check_mdp_simulation(m, swapped))

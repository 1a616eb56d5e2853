# %% [markdown]
# # Behavioural distances on labelled Markov processes
#
# x loops with probability 1, y with 3/4, z is stuck.  The distances follow
# the missing mass: 1/4 between x and y, 1 between x and z, 3/4 between y and z.

# %%
from pathlib import Path

from gradedsim import (
    check_eps_bisimulation,
    check_metric_bisimulation,
    galois_L,
    galois_R,
    graded_bisimilarity,
    metric_bisimilarity,
    parse,
)

data = Path(__file__).resolve().parent / "data" if "__file__" in globals() else Path("demos/data")
l = parse((data / "xy_lmp.json").read_text())
d = metric_bisimilarity(l)
for row in d.d:
    print([str(v) for v in row])

# %% [markdown]
# The same information as a graded relation: pairs enter at their distance.
# Going back and forth between the two views loses nothing here.

# %%
g = graded_bisimilarity(l)
print([[str(v) for v in row] for row in g.entries])
assert galois_R(d) == g
assert galois_L(g) == d
assert check_metric_bisimulation(l, d) is None
assert check_eps_bisimulation(l, g) is None

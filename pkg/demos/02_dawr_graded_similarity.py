# %% [markdown]
# # Graded simulation on automata with rewards
#
# In state p every letter earns 2, in q it earns 1.  Both loop and accept, so
# q is simulated by p at grade 0, but p can only be simulated by q if the
# budget absorbs a deficit that grows with every letter.  No finite budget
# does, so the grade is infinite.

# %%
from pathlib import Path

from gradedsim import (
    INF,
    MinGradeMatrix,
    accumulated_reward,
    check_dawr_graded_simulation,
    collapse,
    dawr_graded_similarity,
    parse,
)

data = Path(__file__).resolve().parent / "data" if "__file__" in globals() else Path("demos/data")
a = parse((data / "pq_dawr.json").read_text())
g = dawr_graded_similarity(a)
print(g.entries)
assert g[0, 1] is INF and g[1, 0] == 0

# %% [markdown]
# The deficit after k letters is k, which any finite grade eventually misses.

# %%
for k in range(5):
    word = ["a"] * k
    print(k, accumulated_reward(a, 0, word) - accumulated_reward(a, 1, word))

# %% [markdown]
# The checker returns None for a graded simulation and a witness otherwise.
# Claiming p below q at grade 3 fails on the first successor step.

# %%
print(check_dawr_graded_simulation(a, g))
bad = MinGradeMatrix([[0, 3], [0, 0]])
print(check_dawr_graded_simulation(a, bad))

# %% [markdown]
# Forgetting the grades yields an ordinary simulation of the underlying automaton.

# %%
print(collapse(g).bits.astype(int))

# %% [markdown]
# # Glued simulations and the language check
#
# A glued simulation pairs a graded simulation with an ungraded one that
# contains its collapse.  glued_from_graded builds the pair directly and
# raises if the collapse is not itself a simulation.

# %%
from pathlib import Path

from gradedsim import dawr_graded_similarity, final_language_check, glued_from_graded, parse

data = Path(__file__).resolve().parent / "data" if "__file__" in globals() else Path("demos/data")
a = parse((data / "pq_dawr.json").read_text())
glued = glued_from_graded(dawr_graded_similarity(a), a)
print(glued.ungraded.bits.astype(int))

# %% [markdown]
# On a plain automaton, mutual similarity agrees with language equality.
# The check also reports the shortest separating word for each unequal pair.

# %%
da = parse((data / "parity_da.json").read_text())
check = final_language_check(da)
print("agrees:", check.ok)
for (s, t), word in sorted(check.separating.items()):
    print(da.states[s], da.states[t], "".join(word) or "(empty word)")

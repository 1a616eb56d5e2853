# %% [markdown]
# # Graded relations as min-grade matrices
#
# A monotone family of relations indexed by grades is stored as one matrix:
# entry (i, j) is the least grade at which i is related to j.  Smaller entries
# mean the pair enters the family earlier.

# %%
from fractions import Fraction

from gradedsim import INF, GradeDomain, MinGradeMatrix, collapse, compose, lax_monoidal_closure, slice

m = MinGradeMatrix([[0, 1, INF], [INF, 0, 2], [INF, INF, 0]])
for n in range(4):
    print(f"slice at grade {n}:")
    print(slice(m, n).bits.astype(int))

# %% [markdown]
# Collapsing forgets the grades and keeps every pair with a finite entry.

# %%
print(collapse(m).bits.astype(int))

# %% [markdown]
# The closure adds composites: if 0 reaches 1 at grade 1 and 1 reaches 2 at
# grade 2, then 0 reaches 2 at grade 3.  The closed family is the smallest
# one containing m whose slices compose along added grades.

# %%
closed = lax_monoidal_closure(m)
print(closed.entries)
assert closed[0, 2] == 3
assert compose(slice(closed, 1), slice(closed, 2)) <= slice(closed, 3)

# %% [markdown]
# On the unit interval addition is truncated at 1, so a chain of grades
# 3/4 and 1/2 costs 1 rather than 5/4.

# %%
u = MinGradeMatrix([[0, Fraction(3, 4), INF], [INF, 0, Fraction(1, 2)], [INF, INF, 0]], GradeDomain.UNIT)
print(lax_monoidal_closure(u)[0, 2])

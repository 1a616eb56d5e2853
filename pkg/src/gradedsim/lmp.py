"""Approximate bisimulations on labelled Markov processes.

Two views of the same notion.  A pseudometric ``d`` is a bisimulation when
the closed-ball Levy-Prokhorov lifting of ``d`` is pointwise at most ``d``.
A lax monoidal ``[0, 1]``-graded relation ``A`` is a bisimulation when every
pair related at grade ``r`` satisfies, for all labels and subsets ``X``::

    f_i(X) <= f_{1-i}(A_r(X)) + r      for i = 0, 1

``galois_R`` (closed balls) and ``galois_L`` (infimum radius) translate
between the two; ``galois_L(galois_R(d)) == d``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Optional

from .dawr import Witness, _carrier
from .errors import PreconditionError, ShapeError, SizeError
from .fixpoint import FixpointConfig, least_grade_fixpoint, pseudometric_fixpoint
from .grades import INF, GradeDomain, MinGradeMatrix, Pseudometric, lax_monoidal_closure
from .mdp import canonical_subsets
from .systems import Lmp

SUBSET_LIMIT = 16
UNIT = GradeDomain.UNIT


def galois_R(d: Pseudometric) -> MinGradeMatrix:
    """Closed balls indexed by radius: ``R(d)_r = {(x, y) | d(x, y) <= r}``."""
    return MinGradeMatrix._trusted(d.d, UNIT)


def lax_monoidal_violation(m: MinGradeMatrix) -> Optional[str]:
    for i in range(m.size):
        if m[i, i] != 0:
            return f"reflexivity: entry ({i},{i}) is {m[i, i]}, not 0"
    closed = lax_monoidal_closure(m)
    for i, j in product(range(m.size), repeat=2):
        if closed[i, j] != m[i, j]:
            return f"transitivity: entry ({i},{j}) is {m[i, j]} but composition gives {closed[i, j]}"
    return None


def galois_L(m: MinGradeMatrix) -> Pseudometric:
    """Least radius at which each pair is related (INF becomes 1)."""
    if m.domain is not UNIT:
        raise ShapeError("galois_L expects a [0, 1]-graded relation")
    problem = lax_monoidal_violation(m)
    if problem is None:
        for i, j in product(range(m.size), repeat=2):
            if m[i, j] != m[j, i]:
                problem = f"symmetry: entries ({i},{j}) and ({j},{i}) differ"
                break
    if problem:
        raise PreconditionError(f"graded relation is not a symmetric lax monoidal family; {problem}")
    return Pseudometric([[1 if g is INF else g for g in row] for row in m.entries])


class _Tables:
    """Integer subset masses for one LMP, scaled by a common denominator."""

    def __init__(self, l: Lmp):
        n, k = l.size, len(l.alphabet)
        if n > SUBSET_LIMIT:
            raise SizeError(f"subset enumeration is limited to {SUBSET_LIMIT} states, got {n}")
        den = 1
        for row in l.delta:
            for dist in row:
                for _, w in dist:
                    den = den * w.denominator // math.gcd(den, w.denominator)
        self.n, self.k, self.den = n, k, den
        self.mass = [[None] * k for _ in range(n)]
        self.supp = [[0] * k for _ in range(n)]
        for s, a in product(range(n), range(k)):
            vec = [int(w * den) for w in l.masses(s, a)]
            table = [0] * (1 << n)
            for mask in range(1, 1 << n):
                low = mask & -mask
                table[mask] = table[mask ^ low] + vec[low.bit_length() - 1]
            self.mass[s][a] = table
            self.supp[s][a] = sum(1 << t for t in range(n) if vec[t])

    def neighbourhoods(self, rows, radius):
        """``N[X]`` for every subset mask, ``y in N[X]`` iff some ``rows[x][y] <= radius``."""
        n = self.n
        ball = [sum(1 << y for y in range(n) if rows[x][y] is not INF and rows[x][y] <= radius) for x in range(n)]
        nb = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            nb[mask] = nb[mask ^ low] | ball[low.bit_length() - 1]
        return nb

    def gap(self, x, y, nb) -> int:
        """Scaled ``max_{a, i, X} f_i(a)(X) - f_{1-i}(a)(N(X))`` (at least 0)."""
        best = 0
        for a in range(self.k):
            for s, t in ((x, y), (y, x)):
                ms, mt, supp = self.mass[s][a], self.mass[t][a], self.supp[s][a]
                sub = supp
                while sub:
                    v = ms[sub] - mt[nb[sub]]
                    if v > best:
                        best = v
                    sub = (sub - 1) & supp
        return best


def _breakpoints(rows):
    return sorted({Fraction(0)} | {Fraction(g) for row in rows for g in row if g is not INF and g <= 1})


def _lift_rows(tables: _Tables, rows, pairs=None):
    """Least feasible radius for each requested pair.

    On ``[v_j, v_{j+1})`` the neighbourhoods are those at ``v_j``, so the
    constraint reduces to ``r >= gap_j``; the answer is the first
    ``max(v_j, gap_j)`` that stays inside its interval.
    """
    n = tables.n
    if pairs is None:
        pairs = [(x, y) for x in range(n) for y in range(x, n)]
    points = _breakpoints(rows)
    nbs = {}
    out = {}
    for x, y in pairs:
        value = Fraction(1)
        for j, v in enumerate(points):
            if v not in nbs:
                nbs[v] = tables.neighbourhoods(rows, v)
            c = max(v, Fraction(tables.gap(x, y, nbs[v]), tables.den))
            upper = points[j + 1] if j + 1 < len(points) else None
            if upper is None:
                value = min(c, Fraction(1))
                break
            if c < upper:
                value = c
                break
        out[x, y] = value
    return out


def lp_lifting(l: Lmp, d: Pseudometric, x: int, y: int) -> Fraction:
    """Closed-ball Levy-Prokhorov distance between ``delta(x)`` and ``delta(y)``."""
    _carrier(l, d.size)
    return _lift_rows(_Tables(l), d.d, [(x, y)])[x, y]


def lifting_matrix(l: Lmp, rows, tables: Optional[_Tables] = None) -> list:
    tables = tables or _Tables(l)
    lifted = _lift_rows(tables, rows)
    n = l.size
    return [[lifted[min(x, y), max(x, y)] for y in range(n)] for x in range(n)]


def check_eps_bisimulation(l: Lmp, m: MinGradeMatrix) -> Optional[Witness]:
    """Check the graded clause at each pair's minimal grade by subset enumeration."""
    _carrier(l, m.size)
    if m.domain is not UNIT:
        raise ShapeError("LMP graded bisimulations are graded by [0, 1]")
    if l.size > SUBSET_LIMIT:
        raise SizeError(f"subset enumeration is limited to {SUBSET_LIMIT} states, got {l.size}")
    problem = lax_monoidal_violation(m)
    if problem:
        raise PreconditionError(f"graded relation is not lax monoidal; {problem}")
    n = l.size
    for x, y in product(range(n), repeat=2):
        r = m[x, y]
        if r is INF:
            continue
        image = [frozenset(z for z in range(n) if m[w, z] is not INF and m[w, z] <= r) for w in range(n)]
        for a, sym in enumerate(l.alphabet):
            f = (l.masses(x, a), l.masses(y, a))
            for i in (0, 1):
                for xs in canonical_subsets(n):
                    nb = frozenset().union(*(image[w] for w in xs))
                    lhs = sum((f[i][w] for w in xs), Fraction(0))
                    rhs = sum((f[1 - i][z] for z in nb), Fraction(0)) + r
                    if lhs > rhs:
                        names = [l.states[w] for w in xs]
                        return Witness(
                            (x, y), "successor", sym,
                            f"side {i} puts {lhs} on {names}, more than {rhs} (image mass plus grade {r})",
                        )
    return None


def check_metric_bisimulation(l: Lmp, d: Pseudometric) -> Optional[Witness]:
    """None iff the lifting of ``d`` is pointwise below ``d``."""
    _carrier(l, d.size)
    lifted = lifting_matrix(l, d.d)
    for x, y in product(range(l.size), repeat=2):
        if lifted[x][y] > d[x, y]:
            return Witness(
                (x, y), "successor", None,
                f"lifted distance {lifted[x][y]} exceeds d = {d[x, y]}",
            )
    return None


def metric_bisimilarity(l: Lmp, cfg: FixpointConfig = FixpointConfig()) -> Pseudometric:
    """Least pseudometric fixpoint of the lifting, iterated from zero."""
    tables = _Tables(l)

    def step(d: Pseudometric) -> Pseudometric:
        return Pseudometric(lifting_matrix(l, d.d, tables))

    return pseudometric_fixpoint(step, l.size, cfg)


def graded_bisimilarity(l: Lmp, cfg: FixpointConfig = FixpointConfig()) -> MinGradeMatrix:
    """Largest graded bisimulation, by least-grade iteration on graded relations.

    Each round replaces every entry by the least grade at which the pair is
    in the graded lifting of the current family; neighbourhoods come from
    slices of the family, not from a metric.
    """
    tables = _Tables(l)

    def step(m: MinGradeMatrix) -> MinGradeMatrix:
        return MinGradeMatrix._trusted(lifting_matrix(l, m.entries, tables), UNIT)

    result = least_grade_fixpoint(step, MinGradeMatrix.zeros(l.size, UNIT), cfg)
    if cfg.on_cap == "error":
        w = check_eps_bisimulation(l, result)
        if w is not None:
            raise RuntimeError(f"graded fixpoint failed its own check: {w}")
    return result

"""Probabilistic simulations on MDPs, ungraded and reward-graded.

The dominance condition ``p(X) <= q(R(X))`` for every subset ``X`` is checked
either by enumerating subsets or, equivalently, by asking whether the
network source -> x (cap p(x)) -> y for (x, y) in R -> sink (cap q(y))
carries the whole mass of ``p``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from .dawr import Witness, _carrier
from .errors import ShapeError, SizeError
from .grades import INF, GradeDomain, MinGradeMatrix, Relation, slice
from .fixpoint import greatest_relation_fixpoint
from .systems import Mdp

SUBSET_LIMIT = 20


@dataclass(frozen=True)
class FlowInstance:
    left_masses: tuple
    right_masses: tuple
    edges: Relation

    def __post_init__(self):
        for side in (self.left_masses, self.right_masses):
            if len(side) != self.edges.size:
                raise ShapeError("mass vectors must match the relation carrier")
            if any(w < 0 for w in side) or sum(side) > 1:
                raise ValueError("masses must be non-negative and sum to at most 1")


@dataclass(frozen=True)
class CutCertificate:
    """A violated instance: ``p(subset) > q(R(subset))``."""

    subset: frozenset
    flow_value: Fraction
    required: Fraction

    def names(self, states) -> list:
        return [states[i] for i in sorted(self.subset)]


def _vec(dist, n) -> tuple:
    """Accept dense vectors or sparse ``(target, weight)`` pairs."""
    if len(dist) == n and all(not isinstance(w, tuple) for w in dist):
        return tuple(Fraction(w) for w in dist)
    vec = [Fraction(0)] * n
    for t, w in dist:
        vec[t] = Fraction(w)
    return tuple(vec)


def canonical_subsets(n: int):
    """All subsets of ``range(n)`` by increasing size, then lexicographically."""
    for k in range(n + 1):
        for c in combinations(range(n), k):
            yield c


def subset_dominance(p: Sequence, q: Sequence, r: Relation) -> Optional[frozenset]:
    """First ``X`` (canonical order) with ``p(X) > q(R(X))``, or None."""
    n = r.size
    if n > SUBSET_LIMIT:
        raise SizeError(f"subset enumeration is limited to {SUBSET_LIMIT} states, got {n}")
    p, q = _vec(p, n), _vec(q, n)
    # If X violates, so does X & supp(p), which comes no later in the
    # canonical order; so the first violator lies inside the support.
    support = [x for x in range(n) if p[x]]
    img = [frozenset(int(j) for j in r.bits[x].nonzero()[0]) for x in range(n)]
    for k in range(1, len(support) + 1):
        for xs in combinations(support, k):
            lhs = sum((p[x] for x in xs), Fraction(0))
            image = frozenset().union(*(img[x] for x in xs))
            if lhs > sum((q[y] for y in image), Fraction(0)):
                return frozenset(xs)
    return None


def _max_flow(cap, source, sink):
    """Edmonds-Karp on a dense capacity matrix; returns (value, residual)."""
    size = len(cap)
    res = [row[:] for row in cap]
    adj = [[j for j in range(size) if cap[i][j] or cap[j][i]] for i in range(size)]
    total = Fraction(0)
    while True:
        parent = [-1] * size
        parent[source] = source
        queue = deque([source])
        while queue and parent[sink] < 0:
            u = queue.popleft()
            for v in adj[u]:
                if parent[v] < 0 and res[u][v] > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[sink] < 0:
            return total, res, parent
        bottleneck = None
        v = sink
        while v != source:
            u = parent[v]
            c = res[u][v]
            if bottleneck is None or c < bottleneck:
                bottleneck = c
            v = u
        v = sink
        while v != source:
            u = parent[v]
            res[u][v] -= bottleneck
            res[v][u] += bottleneck
            v = u
        total += bottleneck


def flow_dominance(p: Sequence, q: Sequence, r: Relation) -> Optional[CutCertificate]:
    """Max-flow decision of the dominance condition.

    Returns None if a flow of value ``sum(p)`` exists, else a certificate whose
    subset is the set of left nodes on the source side of a minimum cut.
    """
    n = r.size
    p, q = _vec(p, n), _vec(q, n)
    required = sum(p, Fraction(0))
    # nodes: 0 source, 1..n left, n+1..2n right, 2n+1 sink
    source, sink = 0, 2 * n + 1
    big = required + 1  # stands in for an unbounded middle capacity
    cap = [[Fraction(0)] * (2 * n + 2) for _ in range(2 * n + 2)]
    for x in range(n):
        cap[source][1 + x] = p[x]
        cap[1 + n + x][sink] = q[x]
        for y in range(n):
            if r.bits[x, y]:
                cap[1 + x][1 + n + y] = big
    value, _, parent = _max_flow(cap, source, sink)
    if value == required:
        return None
    subset = frozenset(x for x in range(n) if parent[1 + x] >= 0)
    return CutCertificate(subset, value, required)


def check_mdp_simulation(m: Mdp, r: Relation) -> Optional[Witness]:
    """Reward-erased probabilistic simulation check."""
    _carrier(m, r.size)
    for s, t in r.pairs():
        for a, sym in enumerate(m.alphabet):
            cert = flow_dominance(m.masses(s, a), m.masses(t, a), r)
            if cert is not None:
                return Witness(
                    (s, t), "successor", sym,
                    f"mass on {cert.names(m.states)} is not covered by its image",
                )
    return None


def mdp_step(m: Mdp):
    n, k = m.size, len(m.alphabet)
    masses = [[m.masses(s, a) for a in range(k)] for s in range(n)]

    def step(r: Relation) -> Relation:
        return Relation([
            [all(flow_dominance(masses[s][a], masses[t][a], r) is None for a in range(k)) for t in range(n)]
            for s in range(n)
        ])

    return step


def mdp_similarity(m: Mdp) -> Relation:
    return greatest_relation_fixpoint(mdp_step(m), m.size)


def check_mdp_graded_simulation(m: Mdp, grades: MinGradeMatrix) -> Optional[Witness]:
    """Check the reward-graded clauses at each pair's minimal grade."""
    _carrier(m, grades.size)
    if grades.domain is not GradeDomain.RATIONAL:
        raise ShapeError("MDP graded simulations are graded by non-negative rationals")
    if m.size > SUBSET_LIMIT:
        raise SizeError(f"graded MDP checks enumerate subsets; limit is {SUBSET_LIMIT} states")
    slices = {}
    for s, t in product(range(m.size), repeat=2):
        r = grades[s, t]
        if r is INF:
            continue
        for a, sym in enumerate(m.alphabet):
            r0, r1 = m.rewards[s][a], m.rewards[t][a]
            if r0 > r + r1:
                return Witness(
                    (s, t), "reward_bound", sym,
                    f"reward {r0} exceeds grade {r} + {r1}",
                )
            need = r - r0 + r1
            if need not in slices:
                slices[need] = slice(grades, need)
            bad = subset_dominance(m.masses(s, a), m.masses(t, a), slices[need])
            if bad is not None:
                names = [m.states[i] for i in sorted(bad)]
                return Witness(
                    (s, t), "successor", sym,
                    f"mass on {names} exceeds the mass of its grade-{need} image",
                )
    return None


def shrink_to_graded_simulation(m: Mdp, grades: MinGradeMatrix) -> MinGradeMatrix:
    """Largest graded simulation obtainable by deleting pairs from ``grades``.

    Repeatedly sends a failing pair's entry to INF; terminates because each
    round removes one pair.
    """
    rows = [list(row) for row in grades.entries]
    while True:
        cur = MinGradeMatrix._trusted(rows, grades.domain)
        w = check_mdp_graded_simulation(m, cur)
        if w is None:
            return cur
        s, t = w.pair
        rows[s][t] = INF

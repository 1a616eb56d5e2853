"""Bisimulations and amortised bisimulations on LTSs with per-transition rewards."""

from __future__ import annotations

from itertools import product
from typing import Optional

from .dawr import Witness, _carrier
from .errors import ShapeError
from .fixpoint import FixpointConfig, greatest_relation_fixpoint, least_grade_fixpoint, nat_widening_bound
from .grades import INF, GradeDomain, MinGradeMatrix, Relation
from .systems import Ltsr


def _oriented(i, challenge, response):
    """Index-ordered ``((y0, r0), (y1, r1))`` for a challenge by side ``i``."""
    return (challenge, response) if i == 0 else (response, challenge)


def _unmatched(l: Ltsr, x0: int, x1: int, related) -> Optional[Witness]:
    pair = (x0, x1)
    for i in (0, 1):
        for a, sym in enumerate(l.alphabet):
            for ch in sorted(l.trans[pair[i]][a]):
                if not any(related(*_oriented(i, ch, rs)) for rs in l.trans[pair[1 - i]][a]):
                    side = "left" if i == 0 else "right"
                    return Witness(
                        pair, "successor", sym,
                        f"{side} move to {l.states[ch[0]]} (reward {ch[1]}) has no matching response",
                    )
    return None


def check_lts_bisimulation(l: Ltsr, r: Relation) -> Optional[Witness]:
    """Reward-erased bisimulation check."""
    _carrier(l, r.size)
    bits = r.bits

    def related(c0, c1):
        return bool(bits[c0[0], c1[0]])

    for x0, x1 in r.pairs():
        w = _unmatched(l, x0, x1, related)
        if w:
            return w
    return None


def lts_step(l: Ltsr):
    n = l.size

    def step(r: Relation) -> Relation:
        bits = r.bits

        def related(c0, c1):
            return bool(bits[c0[0], c1[0]])

        return Relation([[_unmatched(l, x0, x1, related) is None for x1 in range(n)] for x0 in range(n)])

    return step


def lts_bisimilarity(l: Ltsr) -> Relation:
    return greatest_relation_fixpoint(lts_step(l), l.size)


def check_amortised_bisimulation(l: Ltsr, m: MinGradeMatrix) -> Optional[Witness]:
    """Check the graded clauses at each pair's minimal grade ``n``.

    Every challenge ``(x_i, r_i)`` needs a response with ``r0 <= n + r1`` and
    ``M(y0, y1) <= n - r0 + r1``, indices taken in pair order for both
    challenging sides.
    """
    _carrier(l, m.size)
    if m.domain is not GradeDomain.NAT:
        raise ShapeError("amortised bisimulations are graded by naturals")
    for x0, x1 in product(range(l.size), repeat=2):
        n = m[x0, x1]
        if n is INF:
            continue

        def related(c0, c1, n=n):
            r0, r1 = c0[1], c1[1]
            return r0 <= n + r1 and m[c0[0], c1[0]] <= n - r0 + r1

        w = _unmatched(l, x0, x1, related)
        if w:
            return Witness(w.pair, w.kind, w.symbol, f"{w.detail} within grade {n}")
    return None


def max_reward_gap(l: Ltsr) -> int:
    rewards = [r for row in l.trans for moves in row for _, r in moves]
    return max(rewards) - min(rewards) if rewards else 0


def amortised_step(l: Ltsr):
    n = l.size
    moves = l.trans

    def step(g: MinGradeMatrix) -> MinGradeMatrix:
        e = g.entries
        rows = []
        for x0 in range(n):
            row = []
            for x1 in range(n):
                worst = 0
                for a in range(len(l.alphabet)):
                    m0, m1 = moves[x0][a], moves[x1][a]
                    for y0, r0 in m0:
                        best = INF
                        for y1, r1 in m1:
                            v = e[y0][y1]
                            if v is not INF:
                                v = max(0, v + r0 - r1)
                                if v < best:
                                    best = v
                        if best > worst:
                            worst = best
                    for y1, r1 in m1:
                        best = INF
                        for y0, r0 in m0:
                            v = e[y0][y1]
                            if v is not INF:
                                v = max(0, v + r0 - r1)
                                if v < best:
                                    best = v
                        if best > worst:
                            worst = best
                    if worst is INF:
                        break
                row.append(worst)
            rows.append(row)
        return MinGradeMatrix._trusted(rows, GradeDomain.NAT)

    return step


def amortised_bisimilarity(l: Ltsr, cfg: Optional[FixpointConfig] = None) -> MinGradeMatrix:
    """Minimal-grade matrix of the largest amortised bisimulation."""
    if cfg is None:
        cfg = FixpointConfig(widening_bound=nat_widening_bound(l.size, max_reward_gap(l)))
    return least_grade_fixpoint(amortised_step(l), MinGradeMatrix.zeros(l.size), cfg)

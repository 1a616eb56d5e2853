"""Simulations on deterministic automata and graded simulations with rewards."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from .errors import ShapeError
from .fixpoint import FixpointConfig, greatest_relation_fixpoint, least_grade_fixpoint, nat_widening_bound
from .grades import INF, GradeDomain, MinGradeMatrix, Relation
from .systems import Da, Dawr

WITNESS_KINDS = ("acceptance", "reward_bound", "successor")


@dataclass(frozen=True)
class Witness:
    """Counterexample to a simulation check: the offending pair and clause."""

    pair: tuple
    kind: str
    symbol: Optional[str] = None
    detail: str = ""

    def to_dict(self, states=None) -> dict:
        pair = list(self.pair) if states is None else [states[i] for i in self.pair]
        return {"pair": pair, "kind": self.kind, "symbol": self.symbol, "detail": self.detail}


def _carrier(system, size):
    if size != len(system.states):
        raise ShapeError(f"relation carrier {size} does not match {len(system.states)} states")


def check_da_simulation(a: Da, r: Relation) -> Optional[Witness]:
    """None if ``r`` is a simulation on ``a``, else the first violated clause."""
    _carrier(a, r.size)
    for s, t in r.pairs():
        if s in a.accepting and t not in a.accepting:
            return Witness((s, t), "acceptance", None, f"{a.states[s]} accepts but {a.states[t]} does not")
        for x, sym in enumerate(a.alphabet):
            succ = (a.delta[s][x], a.delta[t][x])
            if succ not in r:
                return Witness(
                    (s, t), "successor", sym,
                    f"successors ({a.states[succ[0]]}, {a.states[succ[1]]}) are not related",
                )
    return None


def _da_arrays(a: Da):
    acc = np.zeros(a.size, dtype=bool)
    acc[list(a.accepting)] = True
    delta = np.array(a.delta, dtype=np.int64).reshape(a.size, len(a.alphabet))
    return acc, delta


def da_step(a: Da):
    """The simulation operator ``R -> {(s, t) | clauses hold w.r.t. R}``."""
    acc, delta = _da_arrays(a)
    base = ~(acc[:, None] & ~acc[None, :])

    def step(r: Relation) -> Relation:
        out = base.copy()
        for x in range(delta.shape[1]):
            col = delta[:, x]
            out &= r.bits[col[:, None], col[None, :]]
        return Relation(out)

    return step


def da_similarity(a: Da) -> Relation:
    return greatest_relation_fixpoint(da_step(a), a.size)


def accumulated_reward(a: Dawr, s: int, word) -> Optional[int]:
    """Reward summed along the run on ``word``; None if the word is rejected.

    ``word`` is a sequence of symbol names (a string works for one-letter
    alphabets).
    """
    total = 0
    for sym in word:
        try:
            x = a.alphabet.index(sym)
        except ValueError:
            raise ValueError(f"unknown symbol {sym!r}") from None
        total += a.rewards[s][x]
        s = a.delta[s][x]
    return total if s in a.accepting else None


def check_dawr_graded_simulation(a: Dawr, m: MinGradeMatrix) -> Optional[Witness]:
    """Check the three graded clauses at each pair's minimal grade."""
    _carrier(a, m.size)
    if m.domain is not GradeDomain.NAT:
        raise ShapeError("DAwR graded simulations are graded by naturals")
    st = a.states
    for s, t in product(range(a.size), repeat=2):
        n = m[s, t]
        if n is INF:
            continue
        if s in a.accepting and t not in a.accepting:
            return Witness((s, t), "acceptance", None, f"{st[s]} accepts but {st[t]} does not")
        for x, sym in enumerate(a.alphabet):
            r0, r1 = a.rewards[s][x], a.rewards[t][x]
            need = n - r0 + r1
            if need < 0:
                # the reward clause fails exactly when the successor grade is negative;
                # it is reported against the successor clause
                return Witness(
                    (s, t), "successor", sym,
                    f"reward {r0} exceeds grade {n} + {r1}; successors would need grade {need}",
                )
            u, v = a.delta[s][x], a.delta[t][x]
            if m[u, v] > need:
                return Witness(
                    (s, t), "successor", sym,
                    f"successors ({st[u]}, {st[v]}) have grade {m[u, v]} > {need}",
                )
    return None


def max_reward_gap(a: Dawr) -> int:
    """Largest ``|rew(s, a) - rew(t, a)|`` over state pairs and symbols."""
    gaps = [max(col) - min(col) for col in zip(*a.rewards)] if a.alphabet else []
    return max(gaps, default=0)


def dawr_step(a: Dawr):
    n = a.size
    acc = a.accepting
    syms = range(len(a.alphabet))

    def step(g: MinGradeMatrix) -> MinGradeMatrix:
        e = g.entries
        rows = []
        for s in range(n):
            row = []
            ds, rs = a.delta[s], a.rewards[s]
            for t in range(n):
                if s in acc and t not in acc:
                    row.append(INF)
                    continue
                dt, rt = a.delta[t], a.rewards[t]
                best = 0
                for x in syms:
                    v = e[ds[x]][dt[x]]
                    if v is INF:
                        best = INF
                        break
                    v += rs[x] - rt[x]
                    if v > best:
                        best = v
                row.append(best)
            rows.append(row)
        return MinGradeMatrix._trusted(rows, GradeDomain.NAT)

    return step


def dawr_graded_similarity(a: Dawr, cfg: Optional[FixpointConfig] = None) -> MinGradeMatrix:
    """Minimal-grade matrix of the largest graded simulation."""
    if cfg is None:
        cfg = FixpointConfig(widening_bound=nat_widening_bound(a.size, max_reward_gap(a)))
    return least_grade_fixpoint(dawr_step(a), MinGradeMatrix.zeros(a.size), cfg)


def _words(alphabet_size, length):
    return product(range(alphabet_size), repeat=length)


def star_condition_probe(a: Dawr, s: int, t: int, n, max_len: int) -> Optional[tuple]:
    """Search words of length <= ``max_len`` violating the reward condition.

    A word ``w`` violates it if ``w`` is accepted from ``s`` and either is
    rejected from ``t`` or some prefix ``u`` of ``w`` has
    ``rew(s, u) > n + rew(t, u)``.  Returns the first violating word in
    length-lexicographic order as a tuple of symbol names, else None.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if s == t or not _star_violated(a, s, t, n, max_len):
        return None
    k = len(a.alphabet)
    for length in range(max_len + 1):
        for word in _words(k, length):
            if _word_violates(a, s, t, n, word):
                return tuple(a.alphabet[x] for x in word)
    raise AssertionError("bounded search disagrees with the reachability pre-check")


def _word_violates(a, s, t, n, word) -> bool:
    deficit = 0
    over = False
    for x in word:
        deficit += a.rewards[s][x] - a.rewards[t][x]
        if deficit > n:
            over = True
        s, t = a.delta[s][x], a.delta[t][x]
    return s in a.accepting and (over or t not in a.accepting)


def _star_violated(a, s0, t0, n, max_len) -> bool:
    # Layered search over (pair, step) keeping the largest deficit seen on
    # any path; a violation needs an accepting continuation from the
    # left state within the remaining budget.
    size, k = a.size, len(a.alphabet)
    to_accept = [INF] * size
    frontier = set(a.accepting)
    for d in range(max_len + 1):
        for q in frontier:
            to_accept[q] = d
        nxt = {q for q in range(size) if to_accept[q] is INF
               and any(a.delta[q][x] in frontier for x in range(k))}
        frontier = nxt
        if not frontier:
            break
    layer = {(s0, t0): (0, False)}
    for depth in range(max_len + 1):
        budget = max_len - depth
        for (s, t), (_, over) in layer.items():
            if s in a.accepting and t not in a.accepting:
                return True
            if over and to_accept[s] is not INF and to_accept[s] <= budget:
                return True
        if depth == max_len:
            break
        nxt = {}
        for (s, t), (deficit, over) in layer.items():
            for x in range(k):
                d2 = deficit + a.rewards[s][x] - a.rewards[t][x]
                o2 = over or d2 > n
                key = (a.delta[s][x], a.delta[t][x])
                old = nxt.get(key)
                # "already over" dominates; otherwise keep the larger deficit
                if old is None or (o2 and not old[1]) or (o2 == old[1] and d2 > old[0]):
                    nxt[key] = (d2, o2)
        layer = nxt
    return False

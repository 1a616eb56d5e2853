"""Property sweep over generated systems (used by ``gradedsim corpus``)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import dawr, lmp, ltsr, mdp
from .glue import final_language_check, glued_from_graded
from .errors import GradedSimError
from .grades import INF, GradeDomain, MinGradeMatrix, collapse
from .systems import KINDS, SizeParams, random_system


def corpus_params(kind: str, seed: int) -> SizeParams:
    """Small, seed-dependent sizes that keep every property cheap to decide."""
    rng = random.Random(f"params:{kind}:{seed}")
    states = rng.randint(1, 6 if kind == "da" else 5 if kind in ("dawr", "ltsr") else 4)
    return SizeParams(
        states=states,
        alphabet=rng.randint(1, 2),
        max_reward=3,
        max_denominator=8,
        max_branching=3 if kind == "ltsr" else 2,
    )


@dataclass
class PropertyReport:
    kind: str
    seed: int
    summary: str
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _soundness(graded, system) -> bool:
    try:
        glued_from_graded(graded, system)
    except GradedSimError:
        return False
    return True


def mdp_seed_grades(m, seed: int) -> MinGradeMatrix:
    """Random rational grades on the pairs of the ungraded similarity, zero diagonal."""
    rng = random.Random(f"grades:{seed}")
    sim = mdp.mdp_similarity(m)
    n = m.size
    rows = [[Fraction(0) if s == t else Fraction(rng.randint(0, 8), rng.randint(1, 4)) if (s, t) in sim else INF
             for t in range(n)] for s in range(n)]
    return MinGradeMatrix(rows, GradeDomain.RATIONAL)


def run_properties(kind: str, seed: int) -> PropertyReport:
    system = random_system(kind, corpus_params(kind, seed), seed)
    rep = PropertyReport(kind, seed, f"{len(system.states)} states, {len(system.alphabet)} symbols")
    c = rep.checks
    if kind == "da":
        sim = dawr.da_similarity(system)
        c["similarity is a simulation"] = dawr.check_da_simulation(system, sim) is None
        c["mutual similarity = language equality"] = final_language_check(system).ok
    elif kind == "dawr":
        g = dawr.dawr_graded_similarity(system)
        c["graded similarity passes its checker"] = dawr.check_dawr_graded_simulation(system, g) is None
        c["collapse is a DA simulation"] = _soundness(g, system)
        c["finite grades satisfy the bounded reward condition"] = all(
            dawr.star_condition_probe(system, s, t, g[s, t], 12) is None
            for s, t in product(range(system.size), repeat=2) if g[s, t] is not INF
        )
    elif kind == "ltsr":
        g = ltsr.amortised_bisimilarity(system)
        b = ltsr.lts_bisimilarity(system)
        c["amortised bisimilarity passes its checker"] = ltsr.check_amortised_bisimulation(system, g) is None
        c["bisimilarity passes its checker"] = ltsr.check_lts_bisimulation(system, b) is None
        c["collapse is a bisimulation"] = _soundness(g, system)
        c["mutual zero grade implies bisimilar"] = all(
            (x, y) in b for x, y in product(range(system.size), repeat=2) if g[x, y] == 0 and g[y, x] == 0
        )
    elif kind == "mdp":
        sim = mdp.mdp_similarity(system)
        c["similarity passes its checker"] = mdp.check_mdp_simulation(system, sim) is None
        g = mdp.shrink_to_graded_simulation(system, mdp_seed_grades(system, seed))
        c["shrunk grades pass the graded checker"] = mdp.check_mdp_graded_simulation(system, g) is None
        c["collapse is a simulation"] = _soundness(g, system)
        c["collapse is inside the similarity"] = collapse(g) <= sim
    elif kind == "lmp":
        d = lmp.metric_bisimilarity(system)
        g = lmp.graded_bisimilarity(system)
        c["metric bisimilarity passes its checker"] = lmp.check_metric_bisimulation(system, d) is None
        c["R(metric bisimilarity) = graded bisimilarity"] = lmp.galois_R(d) == g
        c["R maps the metric bisimulation to a graded one"] = lmp.check_eps_bisimulation(system, lmp.galois_R(d)) is None
        c["L of the graded bisimilarity is a metric bisimulation"] = _soundness(g, system)
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return rep

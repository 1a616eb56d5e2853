"""Glued simulations: a graded simulation, an ungraded one, and containment.

For relational system kinds the ungraded component is a :class:`Relation`
and containment means ``collapse(graded) <= ungraded``.  For LMPs the
ungraded side is a pseudometric and the graded-to-ungraded map is
``galois_L``; containment reads ``d <= galois_L(graded)`` pointwise
(smaller distances are larger in the metric order).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Union

import numpy as np

from . import dawr, lmp, ltsr, mdp
from .errors import CheckFailed, ContainmentError, ShapeError, SizeError
from .grades import MinGradeMatrix, Pseudometric, Relation, collapse
from .systems import Da, Dawr, Lmp, Ltsr, Mdp, SystemDescription, system_hash, to_document

LANGUAGE_STATE_LIMIT = 8


def checkers(system):
    """``(graded checker, ungraded checker, graded-to-ungraded map)`` for a system."""
    if isinstance(system, Dawr):
        return dawr.check_dawr_graded_simulation, dawr.check_da_simulation, collapse
    if isinstance(system, Ltsr):
        return ltsr.check_amortised_bisimulation, ltsr.check_lts_bisimulation, collapse
    if isinstance(system, Mdp):
        return mdp.check_mdp_graded_simulation, mdp.check_mdp_simulation, collapse
    if isinstance(system, Lmp):
        return lmp.check_eps_bisimulation, lmp.check_metric_bisimulation, lmp.galois_L
    raise ShapeError(f"no graded simulation notion for kind {system.kind!r}")


@dataclass(frozen=True)
class GluedSimulation:
    graded: MinGradeMatrix
    ungraded: Union[Relation, Pseudometric]
    system: SystemDescription

    def to_dict(self) -> dict:
        from .jsonio import matrix_to_doc, metric_to_doc, relation_to_doc

        st = list(self.system.states)
        ung = (metric_to_doc(self.ungraded, st) if isinstance(self.ungraded, Pseudometric)
               else relation_to_doc(self.ungraded, st))
        return {
            "kind": "glued",
            "graded": matrix_to_doc(self.graded, st),
            "ungraded": ung,
            "system_hash": system_hash(self.system),
        }


def _containment_violation(graded, ungraded, push):
    image = push(graded)
    if isinstance(ungraded, Pseudometric):
        for i, j in product(range(ungraded.size), repeat=2):
            if ungraded[i, j] > image[i, j]:
                return (i, j), f"distance {ungraded[i, j]} exceeds {image[i, j]}"
        return None
    missing = image.bits & ~ungraded.bits
    if missing.any():
        i, j = (int(v) for v in np.argwhere(missing)[0])
        return (i, j), ""
    return None


def glue(graded: MinGradeMatrix, ungraded, system: SystemDescription) -> GluedSimulation:
    """Validate and assemble a glued simulation."""
    g_check, u_check, push = checkers(system)
    n = len(system.states)
    if graded.size != n or ungraded.size != n:
        raise ShapeError("both components must live on the system's state space")
    if isinstance(system, Lmp) and not isinstance(system, Mdp):
        if not isinstance(ungraded, Pseudometric):
            raise ShapeError("the ungraded component for an LMP is a pseudometric")
    elif not isinstance(ungraded, Relation):
        raise ShapeError("the ungraded component must be a relation")
    bad = _containment_violation(graded, ungraded, push)
    if bad:
        raise ContainmentError(*bad)
    w = g_check(system, graded)
    if w is not None:
        raise CheckFailed("graded", w)
    w = u_check(system, ungraded)
    if w is not None:
        raise CheckFailed("ungraded", w)
    return GluedSimulation(graded, ungraded, system)


def glued_from_graded(graded: MinGradeMatrix, system: SystemDescription) -> GluedSimulation:
    """Push a graded simulation forward to the glued object it induces.

    The ungraded component is the collapse (``galois_L`` for LMPs); that it
    passes the ungraded checker is exactly the soundness property.
    """
    g_check, u_check, push = checkers(system)
    w = g_check(system, graded)
    if w is not None:
        raise CheckFailed("graded", w)
    ungraded = push(graded)
    w = u_check(system, ungraded)
    if w is not None:
        raise CheckFailed("ungraded", w)
    return GluedSimulation(graded, ungraded, system)


def meet(g: GluedSimulation, h: GluedSimulation) -> GluedSimulation:
    """Componentwise meet: pointwise max of grades, intersection of relations.

    Raises :class:`CheckFailed` when the meet is not a simulation, which can
    happen for nondeterministic systems.
    """
    if to_document(g.system) != to_document(h.system):
        raise ShapeError("glued simulations live over different systems")
    graded = MinGradeMatrix._trusted(
        [[max(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(g.graded.entries, h.graded.entries)],
        g.graded.domain,
    )
    if isinstance(g.ungraded, Pseudometric):
        ungraded = Pseudometric(
            [[max(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(g.ungraded.d, h.ungraded.d)]
        )
    else:
        ungraded = g.ungraded & h.ungraded
    return glue(graded, ungraded, g.system)


@dataclass(frozen=True)
class LanguageCheck:
    """Outcome of comparing mutual similarity with bounded language equality.

    ``ok`` is True when the two coincide on every pair; ``mismatch`` names the
    first pair where they do not.  ``separating`` maps each pair of
    language-inequivalent states to its shortest separating word.
    """

    ok: bool
    mismatch: Optional[tuple]
    separating: dict


def _separating_word(a: Da, s: int, t: int, max_len: int) -> Optional[tuple]:
    # BFS over the product automaton yields the length-lex least word.
    k = len(a.alphabet)
    seen = {(s, t)}
    layer = [((s, t), ())]
    for _ in range(max_len + 1):
        nxt = []
        for (u, v), word in layer:
            if (u in a.accepting) != (v in a.accepting):
                return word
            for x in range(k):
                key = (a.delta[u][x], a.delta[v][x])
                if key not in seen:
                    seen.add(key)
                    nxt.append((key, word + (a.alphabet[x],)))
        layer = nxt
    return None


def final_language_check(a: Da) -> LanguageCheck:
    """Mutual similarity must coincide with language equality up to length ``|S|^2``."""
    if a.size > LANGUAGE_STATE_LIMIT:
        raise SizeError(f"language check is limited to {LANGUAGE_STATE_LIMIT} states")
    sim = dawr.da_similarity(a)
    bound = a.size * a.size
    separating = {}
    mismatch = None
    for s, t in product(range(a.size), repeat=2):
        word = _separating_word(a, s, t, bound)
        if word is not None:
            separating[s, t] = word
        mutual = (s, t) in sim and (t, s) in sim
        if mismatch is None and mutual != (word is None):
            mismatch = (s, t)
    return LanguageCheck(mismatch is None, mismatch, separating)

"""Kleene iteration engines for the three lattice shapes.

Relations are iterated downward from the full relation (greatest fixpoint).
Grade matrices and pseudometrics are iterated upward from zero: a smaller
minimal grade means a larger family, so the greatest graded simulation is
the least fixpoint of the grade operator.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import FixpointNotConverged, ParameterError
from .grades import INF, MinGradeMatrix, Pseudometric, Relation

log = logging.getLogger(__name__)

ON_CAP = ("error", "report_partial")


class FixpointCapWarning(RuntimeWarning):
    """Issued when ``on_cap="report_partial"`` returns an unconverged iterate."""


@dataclass(frozen=True)
class FixpointConfig:
    """Termination control.

    ``widening_bound``: finite Nat entries above it are promoted to INF.
    ``iteration_cap``: ``None`` lets each engine pick its default.
    """

    widening_bound: object = INF
    iteration_cap: Optional[int] = None
    on_cap: str = "error"

    def __post_init__(self):
        if self.on_cap not in ON_CAP:
            raise ParameterError(f"on_cap must be one of {ON_CAP}, got {self.on_cap!r}")
        if self.iteration_cap is not None and self.iteration_cap < 1:
            raise ParameterError("iteration_cap must be positive")


PSEUDOMETRIC_CAP = 64


def nat_widening_bound(carrier_size: int, max_increment: int) -> int:
    """``|S|^2 * W + 1``: any finite least-fixpoint value is at most this."""
    return carrier_size * carrier_size * max_increment + 1


def _cap_hit(cfg, what, last, cap):
    msg = f"{what} did not stabilise within {cap} iterations"
    if cfg.on_cap == "error":
        raise FixpointNotConverged(msg, last)
    warnings.warn(msg, FixpointCapWarning, stacklevel=3)
    return last


def greatest_relation_fixpoint(step: Callable[[Relation], Relation], carrier_size: int) -> Relation:
    """Greatest fixpoint of a monotone relation operator, iterating from the top."""
    current = Relation.full(carrier_size)
    for _ in range(carrier_size * carrier_size + 1):
        nxt = step(current)
        if nxt == current:
            return current
        current = nxt
    # A monotone operator on a lattice of height n^2 cannot get here.
    raise AssertionError("relation iteration exceeded lattice height; step is not monotone")


def _widen(m: MinGradeMatrix, bound) -> MinGradeMatrix:
    if bound is INF:
        return m
    rows = [[INF if g is not INF and g > bound else g for g in row] for row in m.entries]
    return MinGradeMatrix._trusted(rows, m.domain)


def least_grade_fixpoint(
    step: Callable[[MinGradeMatrix], MinGradeMatrix],
    init: MinGradeMatrix,
    cfg: FixpointConfig = FixpointConfig(),
) -> MinGradeMatrix:
    """Least fixpoint above ``init`` of a monotone grade operator, with widening."""
    bound = cfg.widening_bound
    cap = cfg.iteration_cap
    if cap is None:
        if bound is INF:
            cap = PSEUDOMETRIC_CAP
        else:
            # every non-final round raises some entry by >= 1 or sends it to INF
            cap = init.size * init.size * (int(bound) + 2) + 1
    current = _widen(init, bound)
    for it in range(cap):
        nxt = _widen(step(current), bound)
        if nxt == current:
            log.debug("grade fixpoint stable after %d rounds", it)
            return current
        current = nxt
    return _cap_hit(cfg, "grade fixpoint", current, cap)


def pseudometric_fixpoint(
    step: Callable[[Pseudometric], Pseudometric],
    carrier_size: int,
    cfg: FixpointConfig = FixpointConfig(),
) -> Pseudometric:
    """Least fixpoint of a monotone pseudometric operator, from the zero metric."""
    cap = cfg.iteration_cap or PSEUDOMETRIC_CAP
    current = Pseudometric.zero(carrier_size)
    for it in range(cap):
        nxt = step(current)
        if nxt == current:
            log.debug("pseudometric fixpoint stable after %d rounds", it)
            return current
        current = nxt
    return _cap_hit(cfg, "pseudometric fixpoint", current, cap)

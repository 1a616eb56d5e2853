"""Graded and ungraded (bi)simulations on finite transition systems.

Checkers, fixpoint computations and cross-validation oracles for
deterministic automata with rewards, labelled transition systems with
rewards, Markov decision processes and labelled Markov processes.
"""

from .errors import (
    CheckFailed,
    ContainmentError,
    DomainError,
    FixpointNotConverged,
    GradedSimError,
    ParameterError,
    ParseError,
    PreconditionError,
    ShapeError,
    SizeError,
    ValidationError,
)
from .fixpoint import FixpointConfig, greatest_relation_fixpoint, least_grade_fixpoint, pseudometric_fixpoint
from .grades import (
    INF,
    GradeDomain,
    MinGradeMatrix,
    Pseudometric,
    Relation,
    collapse,
    compose,
    from_family,
    lax_monoidal_closure,
    slice,
)
from .systems import Da, Dawr, Lmp, Ltsr, Mdp, SizeParams, parse, random_system, serialize
from .dawr import (
    Witness,
    accumulated_reward,
    check_da_simulation,
    check_dawr_graded_simulation,
    da_similarity,
    dawr_graded_similarity,
    star_condition_probe,
)
from .ltsr import amortised_bisimilarity, check_amortised_bisimulation, check_lts_bisimulation, lts_bisimilarity
from .mdp import (
    check_mdp_graded_simulation,
    check_mdp_simulation,
    flow_dominance,
    mdp_similarity,
    subset_dominance,
)
from .lmp import (
    check_eps_bisimulation,
    check_metric_bisimulation,
    galois_L,
    galois_R,
    graded_bisimilarity,
    lp_lifting,
    metric_bisimilarity,
)
from .glue import GluedSimulation, final_language_check, glue, glued_from_graded

__version__ = "0.1.0"

__all__ = [
    "CheckFailed",
    "ContainmentError",
    "DomainError",
    "FixpointNotConverged",
    "GradedSimError",
    "ParameterError",
    "ParseError",
    "PreconditionError",
    "ShapeError",
    "SizeError",
    "ValidationError",
    "INF",
    "GradeDomain",
    "MinGradeMatrix",
    "Pseudometric",
    "Relation",
    "collapse",
    "compose",
    "from_family",
    "lax_monoidal_closure",
    "slice",
    "Witness",
    "accumulated_reward",
    "check_da_simulation",
    "check_dawr_graded_simulation",
    "da_similarity",
    "dawr_graded_similarity",
    "star_condition_probe",
    "check_mdp_graded_simulation",
    "check_mdp_simulation",
    "flow_dominance",
    "mdp_similarity",
    "subset_dominance",
    "check_eps_bisimulation",
    "check_metric_bisimulation",
    "galois_L",
    "galois_R",
    "graded_bisimilarity",
    "lp_lifting",
    "metric_bisimilarity",
    "FixpointConfig",
    "greatest_relation_fixpoint",
    "least_grade_fixpoint",
    "pseudometric_fixpoint",
    "Da",
    "Dawr",
    "Lmp",
    "Ltsr",
    "Mdp",
    "SizeParams",
    "parse",
    "random_system",
    "serialize",
    "amortised_bisimilarity",
    "check_amortised_bisimulation",
    "check_lts_bisimulation",
    "lts_bisimilarity",
    "GluedSimulation",
    "final_language_check",
    "glue",
    "glued_from_graded",
]

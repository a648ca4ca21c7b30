"""Randomness, nonlocality and entropy of entangled EPR (spin-s) and GHZ correlations."""

from .epr import (
    BinaryMarginal,
    CondMatrix2,
    JointDist2,
    SpinMagnitude,
    canonical_angle,
    classical_limit_conditional,
    epr_conditional,
    epr_joint,
    epr_marginals,
    epr_transmission,
)
from .ghz import (
    AngleTriple,
    GhzCondMatrix,
    GhzJointDist,
    ghz_conditionals,
    ghz_full_distribution,
    ghz_pair_marginals,
    ghz_transmission,
    markov_violation,
)
from .infotheory import (
    binary_entropy,
    conditional_entropy,
    epr_entropies,
    ghz_entropies,
    shannon_entropy,
)
from .inequalities import InequalityReport, ScanResult, scan_max_violation
from .oracle import Direction
from .tables import ProbTable

__version__ = "0.1.0"

"""Shamir threshold schemes that collaborate through shared crossover points."""

from .collab import (
    CollaborationPlan,
    CollaborationResult,
    CrossoverSet,
    LedgerEntry,
    PlanWarning,
    build_collaboration,
    choose_modulus,
    conflict_probability,
    construct_first,
    construct_followup,
    distribute,
    subsets_identical,
    validate_plan,
)
from .errors import (
    CollabError,
    ConstructionError,
    DuplicateXError,
    EnumerationBoundError,
    InconsistentSharesError,
    InsufficientSharesError,
    ModulusMismatchError,
    ParameterError,
    SameThresholdError,
)
from .field import FieldElement, PrimeModulus, add, inv, is_prime, mul, neg
from .poly import (
    Point,
    Polynomial,
    degree,
    evaluate,
    interpolate,
    reconstruct_secret,
    top_coefficient,
)
from .scheme import SchemeParams, Share, make_rng, reconstruct, secrecy_oracle, split

__version__ = "0.1.0"

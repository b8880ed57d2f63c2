"""Finite ring arithmetic and decision procedures for nil-clean style ring classes."""

from .elements import jacobson_radical, nilpotency, special_elements, unit_inverse
from .errors import (
    ClassificationContradiction,
    DegenerateRing,
    ForeignElementError,
    MalformedExpr,
    NotAnIdeal,
    NotIdempotent,
    OrderOverflow,
    PreconditionFailed,
    RingError,
    RingSyntaxError,
    SizeGuard,
    WitnessNotFound,
)
from .expr import parse_ring_expr
from .ideals import all_ideals, corner, generated_subring, ideal_generated, quotient
from .predicates import PREDICATE_IDS, evaluate
from .rings import FiniteRing, build
from .structure import classify_theorem_3_1, classify_theorem_3_6, extract_tripotent
from .theorems import THEOREM_IDS, verify_theorem
from .verdict import Verdict

__version__ = "0.1.0"

"""Exact structure-constant workbench for triassociative, Leibniz and ternary Leibniz algebras."""

from .algebra import Algebra, check_morphism, check_structure
from .crossed import Action, CrossedModule, check_action, check_crossed_module
from .errors import DimensionError, KindError, PreconditionError, SchemaError, TrialabError
from .linalg import Matrix, Subspace
from .operators import OperatorKind, check_operator, derive_from_operator
from .report import Violation, ViolationReport

__version__ = "0.1.0"

__all__ = [
    "Action", "Algebra", "CrossedModule", "DimensionError", "KindError", "Matrix", "OperatorKind",
    "PreconditionError", "SchemaError", "Subspace", "TrialabError", "Violation", "ViolationReport",
    "check_action", "check_crossed_module", "check_morphism", "check_operator", "check_structure",
    "derive_from_operator",
]

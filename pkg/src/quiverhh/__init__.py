"""Exact relation extensions and Hochschild cohomology of bound quiver algebras."""

from .algebra import QuotientAlgebra, ideal_dims
from .bimodule import BimoduleHomSpace, bimodule_hom, brick_report, endomorphisms
from .dsl import format_presentation, parse_presentation, parse_path_vector
from .errors import (
    CertificateShapeError,
    DegreeOverflow,
    FieldMismatchError,
    InvariantViolation,
    NotACycle,
    NotFiniteDimensional,
    NotTriangular,
    OracleMismatch,
    PresentationError,
    QuiverHHError,
)
from .extension import ExtensionResult, Potential, build_extension, cyclic_derivative, extension_for, extension_from_B
from .field import QQ, Field
from .groebner import GroebnerBasis, complete
from .hochschild import CochainComplex, CoefficientBimodule, ExtensionComplexes, cohomology
from .presentation import BoundQuiverPresentation
from .quiver import Arrow, Path, PathVector, Quiver
from .relations import minimal_relation_system, relation_report, select_relation_system, strongly_minimal_check
from .ses import Derivation, extend_derivation, verify_ses

__version__ = "0.1.0"

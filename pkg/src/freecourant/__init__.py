"""Free Leibniz, symmetric Leibniz and Courant pseudoalgebras over Q[x1..xd], computed exactly."""

from .anchored import AnchoredMap, AnchoredModule, ModuleElement, validate_anchored_map
from .checks import (
    CheckReport,
    check_courant,
    check_leibniz,
    check_loday,
    check_module,
    check_precourant,
    check_square,
    check_symmetric,
    check_well_defined,
    format_reports,
)
from .courant import (
    GenCourantData,
    Residue,
    SymSquare,
    build_associated_courant,
    natural_courant,
    representation_module,
    square_module,
)
from .errors import (
    AnchorIncompatible,
    BoundsMismatch,
    NonVanishingOnIdeal,
    NonVanishingOnInv,
    SaturationFailure,
    SymmetryViolation,
    TruncationOverflow,
)
from .free import FreeElement, FreeLeibniz
from .instances import Dorfman, DorfmanElement, Pseudoalgebra, StructureConstants
from .linquot import FilteredPiece, QuotientSpace, Subspace, echelonize, project, saturate
from .poly import Derivation, Poly, commutator, parse_derivation, parse_poly
from .symmetric import SymLeibnizQuotient, build_quotient, j1_generator, j2_generator
from .universal import (
    courant_morphism,
    descend_to_symmetric,
    extend_to_free,
    universal_pipeline,
)

__version__ = "0.1.0"

"""
Cartan factor and tripotent engine.

This package provides the numerical core: factors and their triple
product, tripotent calculus, spin geometry, grids, and the reconstruction
of triple isomorphisms from tripotent oracles.

Public API:
    - Factors: FactorDescriptor, Element, rect, skew, herm, spin, direct_sum,
               triple_product, quadratic_map, norm, random_element
    - Coordinates: basis, to_coords, from_coords, inner, triple_operator
    - Tripotents: is_tripotent, peirce, is_orthogonal, leq, classify,
                  is_collinear, governs, is_quadrangle, is_trangle,
                  scalar_multiple_below, orthogonal_sum,
                  tripotent_join, tripotent_meet
    - Spin geometry: classify_spin_tripotent, minimal_below, decompose_below,
                     matrix_rep, inverse_rep, spin_model, spin_determinant, minkowski_embed,
                     spin_state, lorentz_boost, spatial_rotation, polar_tripotent_part
    - Grids: rectangular_grid, verify_rectangular_grid, grid_linear_extension, grid_closure
    - Oracles and phases: TripotentOracle, OracleRecipe, make_oracle,
                          extract_phase, phase_map_report, detect_branch
    - Reconstruction: reconstruct_spin, reconstruct_rectangular, reconstruct_atomic,
                      reconstruction_queries, oracle_table,
                      verify_extension, classify_square_automorphism, check_preservation
"""

# Errors
from .errors import (
    BranchError,
    ClassificationError,
    DegeneracyError,
    NotATripotentError,
    OracleLookupError,
    PreconditionError,
    RoutingError,
    ShapeError,
    StructureError,
    TripleKitError,
)

# Factors and coordinates
from .factors import (
    Element,
    FactorDescriptor,
    FactorKind,
    basis,
    direct_sum,
    embed,
    from_coords,
    herm,
    inner,
    norm,
    quadratic_map,
    random_element,
    rect,
    skew,
    spin,
    to_coords,
    triple_operator,
    triple_product,
    zeros,
)

# Grids
from .grids import (
    GridReport,
    GridViolation,
    RectGrid,
    grid_closure,
    grid_linear_extension,
    rectangular_grid,
    verify_rectangular_grid,
)

# Maps
from .maps import AtomicMap, Branch, RealLinearMap

# Oracles and phase maps
from .oracles import OracleRecipe, Provenance, ProvenanceKind, TripotentOracle, make_oracle, recipe_map
from .phases import PhaseMapReport, detect_branch, extract_phase, phase_map_report

# Reconstruction
from .reconstruction import (
    ReconstructionReport,
    oracle_table,
    reconstruct,
    reconstruct_atomic,
    reconstruct_rectangular,
    reconstruct_spin,
    reconstruction_queries,
    route_components,
)

# Spin geometry
from .spin_geometry import (
    E_HAT,
    PAULI,
    SpacetimeVector,
    SpinClassification,
    SpinKind,
    classify_spin_tripotent,
    decompose_below,
    inverse_rep,
    lorentz_boost,
    matrix_rep,
    minimal_below,
    minkowski_embed,
    polar_tripotent_part,
    sl2_action,
    spatial_rotation,
    spin_determinant,
    spin_model,
    spin_partner,
    spin_state,
)
from .tolerance import DEFAULT_TOLERANCE, Tolerance

# Tripotent calculus
from .tripotents import (
    PeirceData,
    TripotentClass,
    TripotentClassification,
    classify,
    governs,
    is_collinear,
    is_orthogonal,
    is_quadrangle,
    is_trangle,
    is_tripotent,
    leq,
    orthogonal_sum,
    peirce,
    scalar_multiple_below,
    tripotent_join,
    tripotent_meet,
)

# Verification
from .verification import (
    ExtensionReport,
    PreservationReport,
    SquareForm,
    check_preservation,
    classify_square_automorphism,
    verify_extension,
)

__all__ = [
    # Errors
    "TripleKitError",
    "ShapeError",
    "NotATripotentError",
    "DegeneracyError",
    "PreconditionError",
    "StructureError",
    "RoutingError",
    "BranchError",
    "ClassificationError",
    "OracleLookupError",
    # Factors
    "FactorKind",
    "FactorDescriptor",
    "Element",
    "rect",
    "skew",
    "herm",
    "spin",
    "direct_sum",
    "zeros",
    "embed",
    "triple_product",
    "quadratic_map",
    "norm",
    "random_element",
    "basis",
    "to_coords",
    "from_coords",
    "inner",
    "triple_operator",
    # Tolerance
    "Tolerance",
    "DEFAULT_TOLERANCE",
    # Tripotents
    "PeirceData",
    "TripotentClass",
    "TripotentClassification",
    "is_tripotent",
    "peirce",
    "is_orthogonal",
    "leq",
    "classify",
    "is_collinear",
    "governs",
    "is_quadrangle",
    "is_trangle",
    "scalar_multiple_below",
    "orthogonal_sum",
    "tripotent_join",
    "tripotent_meet",
    # Spin geometry
    "PAULI",
    "E_HAT",
    "SpinKind",
    "SpinClassification",
    "SpacetimeVector",
    "classify_spin_tripotent",
    "minimal_below",
    "decompose_below",
    "spin_partner",
    "matrix_rep",
    "inverse_rep",
    "spin_model",
    "spin_determinant",
    "minkowski_embed",
    "spin_state",
    "sl2_action",
    "lorentz_boost",
    "spatial_rotation",
    "polar_tripotent_part",
    # Grids
    "RectGrid",
    "GridReport",
    "GridViolation",
    "rectangular_grid",
    "verify_rectangular_grid",
    "grid_linear_extension",
    "grid_closure",
    # Maps
    "Branch",
    "RealLinearMap",
    "AtomicMap",
    # Oracles and phases
    "OracleRecipe",
    "Provenance",
    "ProvenanceKind",
    "TripotentOracle",
    "make_oracle",
    "recipe_map",
    "PhaseMapReport",
    "extract_phase",
    "phase_map_report",
    "detect_branch",
    # Reconstruction
    "ReconstructionReport",
    "reconstruct",
    "reconstruct_spin",
    "reconstruct_rectangular",
    "reconstruct_atomic",
    "route_components",
    "reconstruction_queries",
    "oracle_table",
    # Verification
    "ExtensionReport",
    "PreservationReport",
    "SquareForm",
    "verify_extension",
    "classify_square_automorphism",
    "check_preservation",
]

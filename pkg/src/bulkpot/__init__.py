"""Bulk-deformed disk potentials of toric fibers and their critical points."""
from .novikov import NotAUnit, NovikovSeries, invert_unit, unit_power, valuation
from .laurent import ArityMismatch, LaurentPoly, ZeroBulkValue, ZeroCoordinate
from .toric import (
    ChainRelationViolated,
    Facet,
    InteriorPoint,
    MalformedDocument,
    NonInteriorPoint,
    NonPrimitiveNormal,
    PolytopeSpec,
    boundary_exponents,
    facet_energy,
    load_spec,
    parse_spec,
)
from .chains import (
    AdmissibleTuple,
    DiskClass,
    end_coefficient_polynomial,
    end_intersections,
    enumerate_admissible,
    intersection_vector,
    quadratic_coefficient_polys,
    quadratic_coefficients,
)
from .potential import (
    AssembledPotential,
    BulkSpec,
    assemble_resolution,
    assemble_smoothing,
    chain_leading_potential,
    ks_images,
    milnor_potential,
    parse_bulk,
)
from .catalog import CatalogEntry, UnknownSurface, an_spec, catalog_lookup, surface_names
from .solver import (
    CriticalPoint,
    DegenerateSystem,
    gradient,
    hessian_log_det,
    is_nondegenerate,
    log_hessian,
    solve_complex_system,
)
from .lifting import (
    NoUnitRoot,
    OrderNotReached,
    SingularJacobian,
    certify_degenerate,
    lift_pinned,
    newton_lift,
    residual_valuation,
    unit_root_univariate,
)
from .chainsolve import ChainSolution, GenericityFailure, chain_bulk_solve
from .report import AppendixRow, CriticalReport, classify, verify_appendix

__version__ = "0.1.0"

"""Fusion rings: axioms, Frobenius-Perron dimensions, gradings, central
series, based modules and modular data."""
from .errors import (ConvergenceError, FusionKitError, InvariantViolation, NotModularError,
                     PreconditionError, SchemaError, StructuralError)
from .grading import (Grading, adjoint_subring, dimension_parity_grading, factor_grading,
                      trivial_grading, universal_grading)
from .groups import GroupTable, abelianization, invariant_factors, named_group
from .io import emit_modular, emit_report, emit_ring, parse_modular, parse_ring
from .modular import (ModularData, central_series_centralizer_check, centralizer,
                      double_centralizer_check, enumerate_subcats, schneider_iso_check,
                      validate_modular, verlinde_fusion)
from .modules import (BasedModule, decompose_over_subring, divisibility_report,
                      module_fp_data, regular_module, uset_action, validate_module)
from .report import analyze
from .ring import (FPData, FusionRing, ValidationReport, enumerate_subrings, fp_dimensions,
                   induced_ring, pointed_subring, subring_closure, validate_ring)
from .series import (commutator_subring, lower_central_series, nilpotency_class,
                     upper_central_series, verify_series_duality)

__version__ = "0.1.0"

__all__ = [
    "abelianization",
    "adjoint_subring",
    "analyze",
    "BasedModule",
    "central_series_centralizer_check",
    "centralizer",
    "commutator_subring",
    "ConvergenceError",
    "decompose_over_subring",
    "dimension_parity_grading",
    "divisibility_report",
    "double_centralizer_check",
    "emit_modular",
    "emit_report",
    "emit_ring",
    "enumerate_subcats",
    "enumerate_subrings",
    "factor_grading",
    "fp_dimensions",
    "FPData",
    "FusionKitError",
    "FusionRing",
    "Grading",
    "GroupTable",
    "induced_ring",
    "invariant_factors",
    "InvariantViolation",
    "lower_central_series",
    "ModularData",
    "module_fp_data",
    "named_group",
    "nilpotency_class",
    "NotModularError",
    "parse_modular",
    "parse_ring",
    "pointed_subring",
    "PreconditionError",
    "regular_module",
    "SchemaError",
    "schneider_iso_check",
    "StructuralError",
    "subring_closure",
    "trivial_grading",
    "universal_grading",
    "upper_central_series",
    "uset_action",
    "validate_modular",
    "validate_module",
    "validate_ring",
    "ValidationReport",
    "verify_series_duality",
    "verlinde_fusion",
]

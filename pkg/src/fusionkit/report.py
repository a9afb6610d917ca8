"""Assemble machine-readable analysis reports."""
from __future__ import annotations

from .errors import PreconditionError
from .grading import adjoint_subring, dimension_parity_grading, universal_grading
from .groups import abelianization, invariant_factors
from .modular import ModularData, modular_suite
from .modules import divisibility_report, regular_module
from .ring import (DEFAULT_MAX_ITER, DEFAULT_TOL, FusionRing, fp_dimensions, fp_residual,
                   is_commutative, pointed_subring, validate_ring)
from .series import lower_central_series, upper_central_series, verify_series_duality


def series_report(ring: FusionRing) -> dict:
    out = {"upper": upper_central_series(ring).to_dict(), "lower": None, "duality": None}
    if is_commutative(ring):
        out["lower"] = lower_central_series(ring).to_dict()
        out["duality"] = verify_series_duality(ring).to_dict()
    out["nilpotency_class"] = out["upper"]["nilpotency_class"]
    return out


def analyze(ring: FusionRing, modular: ModularData | None = None, *,
            tolerance: float = DEFAULT_TOL, max_iterations: int = DEFAULT_MAX_ITER) -> dict:
    """Full analysis. Stops after validation when the ring is not a based
    ring, so callers can inspect ``report["validation"]["ok"]``."""
    report = {
        "rank": ring.rank,
        "labels": list(ring.labels),
        "tolerance": tolerance,
        "max_iterations": max_iterations,
        "validation": validate_ring(ring).to_dict(),
    }
    if not report["validation"]["ok"]:
        return report

    fp = fp_dimensions(ring, tolerance, max_iterations)
    fp_dict = fp.to_dict()
    fp_dict["homomorphism_residual"] = fp_residual(ring, fp)
    report["fp"] = fp_dict
    report["commutative"] = is_commutative(ring)
    report["pointed"] = sorted(pointed_subring(ring))
    report["adjoint"] = sorted(adjoint_subring(ring))

    ug = universal_grading(ring)
    grading = ug.to_dict()
    grading["abelianization_invariant_factors"] = invariant_factors(abelianization(ug.group)[0])
    grading["block_masses"] = [sum(fp.dims[i] ** 2 for i in c) for c in ug.components]
    grading["tolerance"] = tolerance
    report["universal_grading"] = grading

    report.update(series_report(ring))
    report["divisibility"] = divisibility_report(ring, regular_module(ring), fp).to_dict()
    try:
        report["dimension_grading"] = {"applicable": True,
                                       **dimension_parity_grading(ring, fp).to_dict()}
    except PreconditionError as exc:
        report["dimension_grading"] = {"applicable": False, "reason": str(exc)}
    if modular is not None:
        report["modular"] = modular_suite(modular)
    return report


def report_ok(report: dict) -> bool:
    """True when every theorem-level check recorded in ``report`` held."""
    if report.get("duality") is not None and not report["duality"]["ok"]:
        return False
    mod = report.get("modular")
    return mod is None or bool(mod.get("ok"))

"""Based modules over fusion rings."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InvariantViolation, PreconditionError, StructuralError
from .grading import _components, universal_grading
from .ring import (DEFAULT_MAX_ITER, DEFAULT_TOL, FPData, FusionRing, ValidationReport,
                   Violation, _first, fp_dimensions, perron_vector)
from .series import nilpotency_class

RATIO_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class BasedModule:
    """``action[(i, j, k)]`` is the multiplicity of V_k in X_i V_j."""

    ring_rank: int
    module_rank: int
    action: Mapping[tuple[int, int, int], int]

    def __post_init__(self):
        if self.module_rank < 1:
            raise StructuralError("module rank must be positive")
        clean = {}
        for key, v in self.action.items():
            i, j, k = (int(x) for x in key)
            if not (0 <= i < self.ring_rank and 0 <= j < self.module_rank
                    and 0 <= k < self.module_rank):
                raise StructuralError(f"action index {key!r} out of range")
            if int(v) != v or v < 0:
                raise StructuralError(f"d{key!r} = {v!r} is not a nonnegative integer")
            if v:
                clean[(i, j, k)] = int(v)
        object.__setattr__(self, "action", dict(sorted(clean.items())))

    @classmethod
    def from_tensor(cls, tensor) -> BasedModule:
        t = np.asarray(tensor)
        action = {tuple(int(x) for x in idx): int(t[idx]) for idx in zip(*np.nonzero(t))}
        return cls(t.shape[0], t.shape[1], action)

    @cached_property
    def tensor(self) -> np.ndarray:
        t = np.zeros((self.ring_rank, self.module_rank, self.module_rank), dtype=np.int64)
        for (i, j, k), v in self.action.items():
            t[i, j, k] = v
        t.flags.writeable = False
        return t


def regular_module(ring: FusionRing) -> BasedModule:
    return BasedModule(ring.rank, ring.rank, dict(ring.N))


def trivial_module(ring: FusionRing, dims=None) -> BasedModule:
    """Rank-one module where X_i acts by the integer ``dims[i]`` (default 1
    for every basic element, which is a module only over pointed rings with
    trivial action, e.g. Z[Z2])."""
    dims = dims or [1] * ring.rank
    return BasedModule(ring.rank, 1, {(i, 0, 0): int(d) for i, d in enumerate(dims)})


def validate_module(ring: FusionRing, m: BasedModule) -> ValidationReport:
    if m.ring_rank != ring.rank:
        raise StructuralError(f"module over rank {m.ring_rank}, ring has rank {ring.rank}")
    N, d = ring.tensor, m.tensor
    out = []
    w = _first(d[0] != np.eye(m.module_rank, dtype=np.int64))
    if w is not None:
        out.append(Violation("unit_action", w, f"d_0{w[0]}^{w[1]} = {d[0][w]}"))
    # (X_i X_l) V_j  vs  X_i (X_l V_j), coefficient of V_k
    lhs = np.einsum("ilm,mjk->iljk", N, d)
    rhs = np.einsum("ljm,imk->iljk", d, d)
    w = _first(lhs != rhs)
    if w is not None:
        out.append(Violation("module_law", w, f"{lhs[w]} != {rhs[w]}"))
    adj = d[list(ring.dual)].transpose(0, 2, 1)  # adj[i,j,k] = d[i*, k, j]
    w = _first(d != adj)
    if w is not None:
        out.append(Violation("adjointness", w, f"d={d[w]}, transposed={adj[w]}"))
    return ValidationReport(out)


def decompose_over_subring(ring: FusionRing, s, m: BasedModule) -> list[tuple[int, ...]]:
    """Indecomposable based s-submodules of ``m`` as sorted index blocks."""
    d = m.tensor
    sub = d[sorted(s)].sum(axis=0)
    blocks = _components(m.module_rank, zip(*np.nonzero(sub)))
    return [tuple(b) for b in blocks]


@dataclass(frozen=True)
class ModuleFPData:
    dims: tuple[float, ...]
    components: tuple[tuple[int, ...], ...]
    component_dims: tuple[float, ...]
    tolerance: float

    @property
    def total(self) -> float:
        return float(sum(x * x for x in self.dims))

    def mass(self, block) -> float:
        return float(sum(self.dims[j] ** 2 for j in block))

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "components": [list(c) for c in self.components],
            "component_dims": list(self.component_dims),
            "tolerance": self.tolerance,
        }


def module_fp_data(ring: FusionRing, m: BasedModule, fp: FPData | None = None,
                   tolerance: float = DEFAULT_TOL,
                   max_iterations: int = DEFAULT_MAX_ITER) -> ModuleFPData:
    """Positive common eigenvector of the action matrices, per indecomposable
    component, scaled so each component's smallest entry is 1."""
    fp = fp or fp_dimensions(ring, tolerance, max_iterations)
    d = m.tensor.astype(float)
    total = d.sum(axis=0).T  # total[k, j] = sum_i d_ij^k
    comps = decompose_over_subring(ring, range(ring.rank), m)
    mu = np.zeros(m.module_rank)
    for comp in comps:
        idx = list(comp)
        v, _, _, _ = perron_vector(total[np.ix_(idx, idx)], tolerance, max_iterations)
        mu[idx] = v / v.min()
    dims = np.array(fp.dims)
    for i in range(ring.rank):
        res = np.abs(d[i].T @ mu - dims[i] * mu).max()
        if res > tolerance * max(1.0, dims[i] * mu.max()):
            raise InvariantViolation(
                f"module dimensions are not an eigenvector of X_{i} (residual {res:.3e})")
    masses = tuple(float(np.sum(mu[list(c)] ** 2)) for c in comps)
    return ModuleFPData(tuple(float(x) for x in mu), tuple(comps), masses, tolerance)


def _require_indecomposable(ring, m):
    comps = decompose_over_subring(ring, range(ring.rank), m)
    if len(comps) != 1:
        raise PreconditionError(f"module is decomposable into {len(comps)} components")


@dataclass(frozen=True)
class USetAction:
    components: tuple[tuple[int, ...], ...]
    # action[(block, component)] = component
    action: dict
    masses: tuple[float, ...]
    group_order: int

    def to_dict(self) -> dict:
        return {
            "components": [list(c) for c in self.components],
            "action": [[self.action[(a, x)] for x in range(len(self.components))]
                       for a in range(self.group_order)],
            "masses": list(self.masses),
        }


def uset_action(ring: FusionRing, m: BasedModule, fp: FPData | None = None,
                tolerance: float = DEFAULT_TOL) -> USetAction:
    """Transitive action of U(R) on the adjoint-subring components of an
    indecomposable module."""
    _require_indecomposable(ring, m)
    ug = universal_grading(ring)
    comps = decompose_over_subring(ring, ug.components[0], m)
    where = {j: x for x, c in enumerate(comps) for j in c}
    d = m.tensor
    action = {}
    for a, block in enumerate(ug.components):
        for x, comp in enumerate(comps):
            hits = {where[int(k)] for i in block for j in comp for k in np.nonzero(d[i, j])[0]}
            if len(hits) != 1:
                raise InvariantViolation(
                    f"block {a} sends component {x} to several components {sorted(hits)}")
            action[(a, x)] = hits.pop()
    n = len(comps)
    g = ug.group
    for x in range(n):
        if action[(g.identity, x)] != x:
            raise InvariantViolation("identity block acts nontrivially")
        for a in range(g.order):
            for b in range(g.order):
                if action[(g.mul(a, b), x)] != action[(a, action[(b, x)])]:
                    raise InvariantViolation("action is not compatible with U(R)")
    orbit = {action[(a, 0)] for a in range(g.order)}
    if len(orbit) != n:
        raise InvariantViolation("U(R) does not act transitively")
    mfp = module_fp_data(ring, m, fp, tolerance)
    masses = tuple(mfp.mass(c) for c in comps)
    ref = masses[0]
    if any(abs(x - ref) > tolerance * max(1.0, ref) for x in masses):
        raise InvariantViolation(f"component masses differ: {masses}")
    return USetAction(tuple(comps), action, masses, g.order)


def is_positive_integer(x: float, rel_tol: float = RATIO_TOL) -> bool:
    n = round(x)
    return n >= 1 and abs(x - n) <= rel_tol * max(1.0, abs(x))


@dataclass
class DivisibilityReport:
    module_rows: list[dict]
    ring_rows: list[dict]
    adjoint_dim: float
    advisory: bool
    tolerance: float

    @property
    def all_integral(self) -> bool:
        return all(r["module_integral"] and r["component_integral"] for r in self.module_rows) \
            and all(r["integral"] for r in self.ring_rows)

    def to_dict(self) -> dict:
        return {
            "advisory": self.advisory,
            "all_integral": self.all_integral,
            "adjoint_dim": self.adjoint_dim,
            "tolerance": self.tolerance,
            "module_rows": self.module_rows,
            "ring_rows": self.ring_rows,
        }


def divisibility_report(ring: FusionRing, m: BasedModule, fp: FPData | None = None,
                        mfp: ModuleFPData | None = None,
                        rel_tol: float = RATIO_TOL) -> DivisibilityReport:
    """Ratios FPdim(M)/FPdim(V)^2, FPdim(M_x)/FPdim(V)^2 and
    FPdim(R_ad)/FPdim(X)^2. The ratios are integers for nilpotent rings; for
    other rings the report is marked advisory."""
    _require_indecomposable(ring, m)
    fp = fp or fp_dimensions(ring)
    mfp = mfp or module_fp_data(ring, m, fp)
    ug = universal_grading(ring)
    comps = decompose_over_subring(ring, ug.components[0], m)
    total = mfp.total
    rows = []
    for comp in comps:
        mass = mfp.mass(comp)
        for j in comp:
            sq = mfp.dims[j] ** 2
            rows.append({
                "index": j,
                "fpdim": mfp.dims[j],
                "module_ratio": total / sq,
                "module_integral": is_positive_integer(total / sq, rel_tol),
                "component_ratio": mass / sq,
                "component_integral": is_positive_integer(mass / sq, rel_tol),
            })
    rows.sort(key=lambda r: r["index"])
    ad_dim = float(sum(fp.dims[i] ** 2 for i in ug.components[0]))
    ring_rows = [
        {"index": i, "ratio": ad_dim / fp.dims[i] ** 2,
         "integral": is_positive_integer(ad_dim / fp.dims[i] ** 2, rel_tol)}
        for i in range(ring.rank)
    ]
    return DivisibilityReport(rows, ring_rows, ad_dim,
                              nilpotency_class(ring) is None, rel_tol)

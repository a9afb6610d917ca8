"""Modular data (S, T): validation, Verlinde fusion rules, Mueger centralizers
and the central-series checks for pseudounitary modular categories."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantViolation, NotModularError, StructuralError
from .grading import adjoint_of, universal_grading
from .groups import GroupTable, invariant_factors
from .ring import (FusionRing, invertible_basics, is_subring,
                   pointed_subring, subring_closure)
from .series import commutator_subring, lower_central_series, upper_central_series

DEFAULT_MODULAR_TOL = 1e-8

Subcat = frozenset  # frozenset[int]; contains 0, dual- and fusion-closed


@dataclass(frozen=True, eq=False)
class ModularData:
    """Unnormalized S-matrix (s_00 = 1, d_i = s_0i) and twists theta_i."""

    S: np.ndarray
    T: np.ndarray
    dual: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    tolerance: float = DEFAULT_MODULAR_TOL

    def __post_init__(self):
        S = np.array(self.S, dtype=complex)
        T = np.array(self.T, dtype=complex).reshape(-1)
        if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] < 1:
            raise StructuralError(f"S must be a nonempty square matrix, got shape {S.shape}")
        r = S.shape[0]
        if T.shape != (r,):
            raise StructuralError(f"T has {T.shape[0]} entries, expected {r}")
        dual = tuple(int(x) for x in self.dual)
        if len(dual) != r or any(not 0 <= x < r for x in dual):
            raise StructuralError("dual must list an index in range for every simple")
        labels = self.labels or tuple(f"X{i}" for i in range(r))
        if len(labels) != r:
            raise StructuralError(f"{len(labels)} labels given for rank {r}")
        S.flags.writeable = False
        T.flags.writeable = False
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "labels", tuple(str(s) for s in labels))

    @property
    def rank(self) -> int:
        return self.S.shape[0]

    @property
    def d(self) -> np.ndarray:
        return self.S[0].real.copy()

    @property
    def D(self) -> float:
        return float(np.sum(self.d ** 2))

    @property
    def atol(self) -> float:
        return self.tolerance * max(1.0, self.D)


@dataclass
class CheckReport:
    """Named boolean checks plus the worst violation magnitude for each."""

    checks: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def record(self, name, ok, worst=None, **details):
        self.checks[name] = bool(ok)
        if worst is not None:
            self.worst[name] = float(worst)
        if details:
            self.details[name] = details

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "worst": self.worst,
                "details": self.details}


def _verlinde_raw(md: ModularData) -> np.ndarray:
    S, d = md.S, md.d
    # raw[i, l, j] = (1/D) sum_k s_ik s_lk conj(s_jk) / d_k
    return np.einsum("ik,lk,jk,k->ilj", S, S, S.conj(), 1.0 / d) / md.D


def verlinde_fusion(md: ModularData) -> FusionRing:
    if np.any(md.d <= 0):
        raise NotModularError("non-pseudounitary data: some s_0i is not positive")
    raw = _verlinde_raw(md)
    rounded = np.rint(raw.real)
    err = np.abs(raw - rounded)
    bad = np.argwhere((err > md.tolerance) | (rounded < 0))
    if len(bad):
        w = tuple(int(x) for x in bad[0])
        raise NotModularError(f"Verlinde coefficient {w} = {raw[w]:.6g} is not a "
                              "nonnegative integer", witness=w)
    return FusionRing.from_tensor(rounded.astype(np.int64), md.dual, md.labels)


def verlinde_residual(md: ModularData) -> float:
    raw = _verlinde_raw(md)
    return float(np.abs(raw - np.rint(raw.real)).max())


def ring_characters(md: ModularData) -> np.ndarray:
    """h[i, j] = s_ij / s_0j; column j is a ring homomorphism."""
    return md.S / md.S[0][None, :]


def balancing_check(md: ModularData, ring: FusionRing) -> CheckReport:
    theta, d, S = md.T, md.d, md.S
    t = ring.tensor
    dual = list(ring.dual)
    # pred[i, j] = theta_i^-1 theta_j^-1 sum_k N_{i* j}^k theta_k d_k
    pred = np.einsum("ijk,k->ij", t[dual].astype(complex), theta * d)
    pred = pred / theta[:, None] / theta[None, :]
    diff = np.abs(pred - S)
    rep = CheckReport()
    bad = np.argwhere(diff > md.atol)
    rep.record("balancing", len(bad) == 0, diff.max(),
               **({"witness": [int(x) for x in bad[0]]} if len(bad) else {}))
    return rep


def validate_modular(md: ModularData) -> CheckReport:
    S, T, d, D = md.S, md.T, md.d, md.D
    tol = md.atol
    r = md.rank
    dual = np.array(md.dual)
    rep = CheckReport()
    rep.record("dual_involution", dual[0] == 0 and np.array_equal(dual[dual], np.arange(r)))
    rep.record("symmetry", np.abs(S - S.T).max() <= tol, np.abs(S - S.T).max())
    dd = max(np.abs(S - S[dual][:, dual]).max(), np.abs(S[:, dual] - S.conj()).max())
    rep.record("duality", dd <= tol, dd)
    ortho = S @ S
    target = np.zeros((r, r))
    target[dual, np.arange(r)] = D  # sum_j s_ij s_jl = delta_{i* l} D
    o = np.abs(ortho - target).max()
    rep.record("orthogonality", o <= tol, o)
    rn = np.abs((np.abs(S) ** 2).sum(axis=0) - D).max()
    rep.record("row_norm", rn <= tol, rn)
    tw = max(np.abs(np.abs(T) - 1).max(), abs(T[0] - 1))
    rep.record("twists", tw <= md.tolerance, tw)
    dim = max(abs(S[0, 0] - 1), np.abs(S[0].imag).max())
    rep.record("dimensions", dim <= md.tolerance and bool(np.all(d > 0)), dim)
    try:
        ring = verlinde_fusion(md)
    except NotModularError as exc:
        rep.record("verlinde_integrality", False, verlinde_residual(md), witness=list(exc.witness or ()))
        return rep
    rep.record("verlinde_integrality", True, verlinde_residual(md))
    b = balancing_check(md, ring)
    rep.checks.update(b.checks)
    rep.worst.update(b.worst)
    rep.details.update(b.details)
    return rep


def _group_on(ring: FusionRing, elems) -> GroupTable:
    elems = sorted(elems)
    pos = {e: n for n, e in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            (k,) = ring.support(a, b)
            row.append(pos[k])
        table.append(tuple(row))
    return GroupTable(len(elems), tuple(table), 0)


def invertibles_from_smatrix(md: ModularData, ring: FusionRing | None = None):
    """Indices j with |s_ij| = d_i d_j for all i, and their group table. The
    answer is cross-checked against the invertibles of the fusion ring."""
    ring = ring or verlinde_fusion(md)
    d = md.d
    diff = np.abs(np.abs(md.S) - np.outer(d, d))
    found = frozenset(int(j) for j in range(md.rank) if diff[:, j].max() <= md.atol)
    combinatorial = invertible_basics(ring)
    if found != combinatorial:
        raise InvariantViolation(
            f"S-matrix invertibles {sorted(found)} != fusion invertibles {sorted(combinatorial)}")
    return found, _group_on(ring, found)


def centralizes(md: ModularData, i: int, j: int) -> bool:
    return abs(md.S[i, j] - md.d[i] * md.d[j]) <= md.atol


def centralizer(md: ModularData, k) -> Subcat:
    return Subcat(i for i in range(md.rank) if all(centralizes(md, i, j) for j in k))


def subcat_dim(md: ModularData, k) -> float:
    d = md.d
    return float(sum(d[i] ** 2 for i in k))


def enumerate_subcats(md: ModularData, ring: FusionRing | None = None) -> list[Subcat]:
    from .ring import enumerate_subrings
    return [Subcat(s) for s in enumerate_subrings(ring or verlinde_fusion(md))]


def double_centralizer_check(md: ModularData, k, ring: FusionRing | None = None) -> CheckReport:
    ring = ring or verlinde_fusion(md)
    k = Subcat(k)
    if not is_subring(ring, k):
        raise StructuralError(f"{sorted(k)} is not a fusion subcategory")
    kp = centralizer(md, k)
    kpp = centralizer(md, kp)
    rep = CheckReport()
    rep.record("centralizer_closed", is_subring(ring, kp))
    rep.record("double_centralizer", kpp == k)
    prod = subcat_dim(md, k) * subcat_dim(md, kp)
    rep.record("dimension_product", abs(prod - md.D) <= md.atol, abs(prod - md.D))
    rep.details["centralizer"] = sorted(kp)
    rep.details["symmetric"] = k <= kp
    rep.details["modular"] = (k & kp) == {0}
    return rep


def schneider_iso_check(md: ModularData, ring: FusionRing | None = None) -> CheckReport:
    """U(C) is isomorphic to the character group of the invertibles G(C), and
    each invertible j gives a character i -> s_ij / (d_i d_j) of U(C)."""
    ring = ring or verlinde_fusion(md)
    ug = universal_grading(ring)
    inv, G = invertibles_from_smatrix(md, ring)
    rep = CheckReport()
    u_abelian, g_abelian = ug.group.is_abelian(), G.is_abelian()
    rep.record("abelian", u_abelian and g_abelian)
    fu = invariant_factors(ug.group) if u_abelian else None
    fg = invariant_factors(G) if g_abelian else None
    rep.record("invariant_factors", fu is not None and fu == fg)
    rep.details["U_invariant_factors"] = fu
    rep.details["G_invariant_factors"] = fg

    d, S = md.d, md.S
    worst = 0.0
    values = {}
    for j in sorted(inv):
        phi = S[:, j] / (d * d[j])
        per_block = []
        for comp in ug.components:
            v = phi[list(comp)]
            worst = max(worst, float(np.abs(v - v[0]).max()))
            per_block.append(v[0])
        for a in range(ug.order):
            for b in range(ug.order):
                c = ug.group.mul(a, b)
                worst = max(worst, abs(per_block[c] - per_block[a] * per_block[b]))
        values[j] = per_block
    rep.record("character_map", worst <= md.atol, worst)
    # distinct invertibles give distinct characters (the map is injective)
    distinct = len({tuple(np.round(np.array(v), 6)) for v in values.values()}) == len(values)
    rep.record("character_map_injective", distinct)
    return rep


def central_series_centralizer_check(md: ModularData, ring: FusionRing | None = None) -> CheckReport:
    """Centralizer of the n-th upper-series term is the n-th lower-series
    term; C_ad = (C_pt)'; upper terms from c/2 on are symmetric when the
    category is nilpotent of class c."""
    ring = ring or verlinde_fusion(md)
    up = upper_central_series(ring)
    lo = lower_central_series(ring)
    rep = CheckReport()
    horizon = max(len(up.chain), len(lo.chain)) + 1
    mismatches = [n for n in range(horizon) if centralizer(md, up.at(n)) != lo.at(n)]
    rep.record("centralizer_series", not mismatches, **({"first_mismatch": mismatches[0]} if mismatches else {}))
    ad = adjoint_of(ring, range(ring.rank))
    rep.record("adjoint_is_pointed_centralizer", ad == centralizer(md, pointed_subring(ring)))
    c = up.nilpotency_class
    if c is not None:
        sym = [n for n in range(c + 1) if 2 * n >= c]
        rep.record("upper_terms_symmetric",
                   all(up.at(n) <= centralizer(md, up.at(n)) for n in sym), symmetric_from=sym[0])
    rep.details["upper"] = [sorted(s) for s in up.chain]
    rep.details["lower"] = [sorted(s) for s in lo.chain]
    return rep


def adjoint_commutator_identity(md: ModularData, k, ring: FusionRing | None = None) -> bool:
    """(K_ad)' == (K')^co"""
    ring = ring or verlinde_fusion(md)
    return centralizer(md, adjoint_of(ring, k)) == commutator_subring(ring, centralizer(md, k))


def lemma_absolute_entries(md: ModularData, ring: FusionRing | None = None) -> bool:
    """For all i, k: |s_ik| = d_i d_k iff s_kj = d_k d_j for every j in
    supp(X_i X_i^*)."""
    ring = ring or verlinde_fusion(md)
    d = md.d
    for i in range(md.rank):
        supp = ring.support(i, ring.dual[i])
        for k in range(md.rank):
            left = abs(abs(md.S[i, k]) - d[i] * d[k]) <= md.atol
            right = all(centralizes(md, k, j) for j in supp)
            if left != right:
                return False
    return True


def subcat_closure(md: ModularData, seed, ring: FusionRing | None = None) -> Subcat:
    return Subcat(subring_closure(ring or verlinde_fusion(md), seed))


def modular_suite(md: ModularData) -> dict:
    """Every modular check, keyed by name; used by the CLI."""
    out = {"validation": validate_modular(md).to_dict()}
    if not out["validation"]["checks"].get("verlinde_integrality"):
        return out
    ring = verlinde_fusion(md)
    inv, G = invertibles_from_smatrix(md, ring)
    out["invertibles"] = sorted(inv)
    out["schneider"] = schneider_iso_check(md, ring).to_dict()
    out["central_series"] = central_series_centralizer_check(md, ring).to_dict()
    subs = enumerate_subcats(md, ring)
    rows = []
    for k in subs:
        rep = double_centralizer_check(md, k, ring)
        rows.append({
            "subcat": sorted(k),
            "ok": rep.ok,
            "centralizer": rep.details["centralizer"],
            "symmetric": rep.details["symmetric"],
            "modular": rep.details["modular"],
            "adjoint_commutator_identity": adjoint_commutator_identity(md, k, ring),
        })
    out["subcategories"] = rows
    out["ok"] = (
        out["validation"]["ok"] and out["schneider"]["ok"] and out["central_series"]["ok"]
        and all(r["ok"] and r["adjoint_commutator_identity"] for r in rows)
    )
    return out

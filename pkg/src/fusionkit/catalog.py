"""Built-in fusion rings and modular data."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import chartables
from .errors import InvariantViolation, PreconditionError
from .groups import GroupTable, named_group
from .modular import ModularData, validate_modular, verlinde_fusion
from .ring import FusionRing, validate_ring

GROUPS = ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "A4"]
CHAR_GROUPS = ["Z5", "Z2xZ2", "S3", "D4", "Q8", "A4", "S4", "Z7xZ3"]
TY_GROUPS = ["Z2", "Z3", "Z4", "Z2xZ2"]
SU2_LEVELS = range(1, 9)


@dataclass
class CatalogEntry:
    name: str
    ring: FusionRing
    modular: ModularData | None = None
    # property -> (expected value, provenance)
    expected: dict = field(default_factory=dict)


def group_ring(g: GroupTable, labels=None) -> FusionRing:
    n = g.order
    N = {(i, j, g.mul(i, j)): 1 for i in range(n) for j in range(n)}
    dual = tuple(g.inverse(i) for i in range(n))
    labels = labels or ["e"] + [f"g{i}" for i in range(1, n)]
    return FusionRing(n, dual, N, labels)


def character_ring(group_name: str) -> FusionRing:
    """Representation ring from an embedded character table, with
    N_ij^k = (1/|G|) sum_c |c| chi_i(c) chi_j(c) conj(chi_k(c))."""
    try:
        tab = chartables.lookup(group_name)
    except KeyError as exc:
        raise PreconditionError(str(exc)) from None
    sizes = np.array(tab["class_sizes"], dtype=float)
    chi = np.array([[chartables.value(x) for x in row] for row in tab["chars"]])
    order = sizes.sum()
    raw = np.einsum("c,ic,jc,kc->ijk", sizes, chi, chi, chi.conj()) / order
    rounded = np.rint(raw.real)
    if np.abs(raw - rounded).max() > 1e-9 or rounded.min() < 0:
        raise InvariantViolation(f"character table of {group_name} gives non-integral fusion")
    r = len(chi)
    dual = []
    for i in range(r):
        match = [k for k in range(r) if np.allclose(chi[k], chi[i].conj(), atol=1e-9)]
        if len(match) != 1:
            raise InvariantViolation(f"no unique dual for {tab['labels'][i]}")
        dual.append(match[0])
    return FusionRing.from_tensor(rounded.astype(np.int64), dual, tab["labels"])


def tambara_yamagami(a: GroupTable) -> FusionRing:
    """Group part A plus one self-dual m with a m = m a = m, m m = sum A."""
    if not a.is_abelian():
        raise PreconditionError("Tambara-Yamagami rings need an abelian group")
    n = a.order
    m = n
    N = {(x, y, a.mul(x, y)): 1 for x in range(n) for y in range(n)}
    for x in range(n):
        N[(x, m, m)] = 1
        N[(m, x, m)] = 1
        N[(m, m, x)] = 1
    dual = tuple(a.inverse(x) for x in range(n)) + (m,)
    labels = ["1"] + [f"a{x}" for x in range(1, n)] + ["m"]
    return FusionRing(n + 1, dual, N, labels)


def su2_fusion(k: int) -> FusionRing:
    r = k + 1
    N = {}
    for i in range(r):
        for l in range(r):
            for j in range(r):
                if abs(i - l) <= j <= min(i + l, 2 * k - i - l) and (i + l + j) % 2 == 0:
                    N[(i, l, j)] = 1
    return FusionRing(r, tuple(range(r)), N, [str(a) for a in range(r)])


def su2_modular(k: int) -> ModularData:
    r = k + 1
    a = np.arange(r)
    S = np.sin(np.pi * np.outer(a + 1, a + 1) / (k + 2)) / np.sin(np.pi / (k + 2))
    T = np.exp(1j * np.pi * a * (a + 2) / (2 * (k + 2)))
    return ModularData(S, T, tuple(range(r)), tuple(str(x) for x in a))


def _pointed_expect(order, invariants, provenance):
    return {
        "nilpotency_class": (1 if order > 1 else 0, provenance),
        "u_order": (order, provenance),
        "u_invariant_factors": (invariants, provenance),
        "pointed_size": (order, provenance),
        "adjoint_size": (1, provenance),
    }


def su2_level_k(k: int) -> CatalogEntry:
    if not 1 <= k <= 8:
        raise PreconditionError(f"SU(2) level {k} outside 1..8")
    why = "derived: spin parity grades the ring, invertibles are 0 and k"
    cls = {1: 1, 2: 2}.get(k)
    return _checked(CatalogEntry(f"su2_{k}", su2_fusion(k), su2_modular(k), {
        "nilpotency_class": (cls, "derived: even part is pointed only for k <= 2"),
        "u_order": (2, why),
        "u_invariant_factors": ([2], why),
        "pointed_size": (2, why),
        "adjoint_size": (k // 2 + 1, why),
    }))


PHI = (1 + math.sqrt(5)) / 2


def _ising() -> CatalogEntry:
    r2 = math.sqrt(2)
    S = [[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]]
    T = [1, -1, np.exp(1j * np.pi / 8)]
    ring = tambara_yamagami(named_group("Z2"))
    ring = FusionRing(ring.rank, ring.dual, ring.N, ["1", "eps", "sigma"])
    return CatalogEntry("ising", ring, ModularData(S, T, (0, 1, 2), ring.labels), {
        "nilpotency_class": (2, "literature: Tambara-Yamagami rings have class 2"),
        "u_order": (2, "derived: sigma lies outside {1, eps}"),
        "u_invariant_factors": ([2], "derived"),
        "pointed_size": (2, "derived: sigma sigma = 1 + eps"),
        "adjoint_size": (2, "derived: sigma sigma = 1 + eps"),
    })


def _fibonacci() -> CatalogEntry:
    ring = FusionRing(2, (0, 1), {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
                                  (1, 1, 0): 1, (1, 1, 1): 1}, ["1", "tau"])
    S = [[1, PHI], [PHI, -1]]
    T = [1, np.exp(4j * np.pi / 5)]
    why = "derived: tau tau = 1 + tau regenerates tau"
    return CatalogEntry("fibonacci", ring, ModularData(S, T, (0, 1), ring.labels), {
        "nilpotency_class": (None, why),
        "u_order": (1, why),
        "u_invariant_factors": ([], why),
        "pointed_size": (1, why),
        "adjoint_size": (2, why),
    })


def _toric_code() -> CatalogEntry:
    ring = group_ring(named_group("Z2xZ2"), ["1", "e", "m", "f"])
    S = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
    T = [1, 1, 1, -1]
    return CatalogEntry("toric_code", ring, ModularData(S, T, (0, 1, 2, 3), ring.labels),
                        _pointed_expect(4, [2, 2], "derived: pointed, Z2 x Z2 fusion"))


def named_modular(name: str) -> CatalogEntry:
    builders = {"ising": _ising, "fibonacci": _fibonacci, "toric_code": _toric_code}
    if name not in builders:
        raise KeyError(f"unknown modular entry {name!r}")
    return _checked(builders[name]())


def _checked(entry: CatalogEntry) -> CatalogEntry:
    rep = validate_ring(entry.ring)
    if not rep.ok:
        raise InvariantViolation(f"{entry.name}: ring fails {rep.axioms()}")
    if entry.modular is not None:
        mrep = validate_modular(entry.modular)
        if not mrep.ok:
            raise InvariantViolation(f"{entry.name}: modular data fails {mrep.failures()}")
        if verlinde_fusion(entry.modular) != entry.ring:
            raise InvariantViolation(f"{entry.name}: Verlinde rules differ from stored ring")
    return entry


# Derived expectations for character rings: U(Rep G) is dual to Z(G), the
# adjoint part is Rep(G/Z(G)), the pointed part has |G/[G,G]| elements.
_REP_EXPECT = {
    "Z5": (1, 5, [5], 5, 1),
    "Z2xZ2": (1, 4, [2, 2], 4, 1),
    "S3": (None, 1, [], 2, 3),
    "D4": (2, 2, [2], 4, 4),
    "Q8": (2, 2, [2], 4, 4),
    "A4": (None, 1, [], 3, 4),
    "S4": (None, 1, [], 2, 5),
    "Z7xZ3": (None, 1, [], 3, 5),
}

_GROUP_AB = {"Z2": [2], "Z3": [3], "Z4": [4], "Z2xZ2": [2, 2], "S3": [2],
             "D4": [2, 2], "Q8": [2, 2], "A4": [3]}


def _builders() -> dict:
    out = {"trivial": lambda: CatalogEntry(
        "trivial", FusionRing(1, (0,), {(0, 0, 0): 1}, ["1"]),
        expected=_pointed_expect(1, [], "trivial: rank one"))}
    for g in GROUPS:
        out[f"zg_{g}"] = (lambda g=g: CatalogEntry(
            f"zg_{g}", group_ring(named_group(g)),
            expected={
                **_pointed_expect(named_group(g).order, None, "trivial: group ring"),
                "u_invariant_factors": (_GROUP_AB[g], "derived: U(ZG) = G, abelianized"),
            }))
    for g in CHAR_GROUPS:
        cls, uo, inv, pt, ad = _REP_EXPECT[g]
        why = "derived: character theory of " + g
        out[f"rep_{g}"] = (lambda g=g, cls=cls, uo=uo, inv=inv, pt=pt, ad=ad, why=why: CatalogEntry(
            f"rep_{g}", character_ring(g), expected={
                "nilpotency_class": (cls, why), "u_order": (uo, why),
                "u_invariant_factors": (inv, why), "pointed_size": (pt, why),
                "adjoint_size": (ad, why)}))
    for g in TY_GROUPS:
        n = named_group(g).order
        out[f"ty_{g}"] = (lambda g=g, n=n: CatalogEntry(
            f"ty_{g}", tambara_yamagami(named_group(g)), expected={
                "nilpotency_class": (2, "literature: Tambara-Yamagami rings have class 2"),
                "u_order": (2, "derived: m m = sum of A"),
                "u_invariant_factors": ([2], "derived"),
                "pointed_size": (n, "derived"),
                "adjoint_size": (n, "derived: m m = sum of A")}))
    for name in ("ising", "fibonacci", "toric_code"):
        out[name] = (lambda name=name: named_modular(name))
    for k in SU2_LEVELS:
        out[f"su2_{k}"] = (lambda k=k: su2_level_k(k))
    return out


_BUILDERS = _builders()


def names() -> list[str]:
    return list(_BUILDERS)


def modular_names() -> list[str]:
    return ["ising", "fibonacci", "toric_code"] + [f"su2_{k}" for k in SU2_LEVELS]


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}; try one of {', '.join(names())}")
    return _checked(_BUILDERS[name]())


def all_entries() -> list[CatalogEntry]:
    return [get(n) for n in names()]

"""Upper and lower central series, commutators and nilpotency class."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantViolation, PreconditionError, StructuralError
from .grading import adjoint_subring
from .ring import (FusionRing, SubringBasis, induced_ring, is_commutative,
                   is_subring, pointed_subring)


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    chain: tuple[SubringBasis, ...]
    stabilized_at: int
    # first step at which the chain hits its terminal value ({0} for the
    # upper series, the whole basis for the lower one); None if never
    nilpotency_class: int | None

    def at(self, n: int) -> SubringBasis:
        """Entry n, repeating the fixpoint past stabilization."""
        return self.chain[min(n, len(self.chain) - 1)]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "chain": [sorted(s) for s in self.chain],
            "stabilized_at": self.stabilized_at,
            "nilpotency_class": self.nilpotency_class,
        }


def _require_commutative(ring):
    if not is_commutative(ring):
        raise PreconditionError("lower central series and commutators need a commutative ring")


def upper_central_series(ring: FusionRing) -> SeriesReport:
    chain = [ring.basis()]
    for _ in range(ring.rank + 1):
        sub, idx = induced_ring(ring, chain[-1])
        nxt = SubringBasis(idx[a] for a in adjoint_subring(sub))
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    trivial = SubringBasis({0})
    cls = chain.index(trivial) if trivial in chain else None
    return SeriesReport("upper", tuple(chain), len(chain) - 1, cls)


def nilpotency_class(ring: FusionRing) -> int | None:
    return upper_central_series(ring).nilpotency_class


def commutator_subring(ring: FusionRing, s) -> SubringBasis:
    """Basic Y with supp(Y Y^*) inside ``s`` (computed in the ambient ring)."""
    _require_commutative(ring)
    s = SubringBasis(s)
    if not is_subring(ring, s):
        raise StructuralError(f"{sorted(s)} is not a based subring")
    out = SubringBasis(
        i for i in range(ring.rank) if ring.support(i, ring.dual[i]) <= s
    )
    if not is_subring(ring, out):
        raise InvariantViolation(f"commutator {sorted(out)} is not closed")
    return out


def lower_central_series(ring: FusionRing) -> SeriesReport:
    _require_commutative(ring)
    chain = [SubringBasis({0})]
    nxt = pointed_subring(ring)
    for _ in range(ring.rank + 1):
        if nxt == chain[-1]:
            break
        chain.append(nxt)
        nxt = commutator_subring(ring, nxt)
    whole = ring.basis()
    cls = chain.index(whole) if whole in chain else None
    return SeriesReport("lower", tuple(chain), len(chain) - 1, cls)


@dataclass
class DualityReport:
    upper: SeriesReport
    lower: SeriesReport
    equivalence: bool
    # (k, R^(k) subset of R_(n-k)) for k = 0..n when nilpotent of class n
    inclusions: list[tuple[int, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.equivalence and all(ok for _, ok in self.inclusions)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "upper_terminal_step": self.upper.nilpotency_class,
            "lower_terminal_step": self.lower.nilpotency_class,
            "equivalence": self.equivalence,
            "inclusions": [{"k": k, "holds": ok} for k, ok in self.inclusions],
        }


def verify_series_duality(ring: FusionRing) -> DualityReport:
    """Upper series reaches {0} at step n exactly when the lower series
    reaches the whole ring at step n; when nilpotent of class n, also
    R^(k) is contained in R_(n-k) for every k."""
    _require_commutative(ring)
    up = upper_central_series(ring)
    lo = lower_central_series(ring)
    trivial, whole = SubringBasis({0}), ring.basis()
    horizon = max(len(up.chain), len(lo.chain)) + 1
    equivalence = all(
        (up.at(n) == trivial) == (lo.at(n) == whole) for n in range(horizon)
    )
    inclusions = []
    n = up.nilpotency_class
    if n is not None:
        inclusions = [(k, up.at(k) <= lo.at(n - k)) for k in range(n + 1)]
    return DualityReport(up, lo, equivalence, inclusions)

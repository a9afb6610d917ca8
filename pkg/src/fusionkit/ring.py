"""Fusion rings (unital based rings): data, axiom validation, FP dimensions."""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConvergenceError, StructuralError

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 100_000

SubringBasis = frozenset  # frozenset[int] of basis indices


@dataclass(frozen=True, eq=False)
class FusionRing:
    """A unital based ring with basis X_0 (the unit), ..., X_{r-1}.

    ``N`` maps ``(i, j, k)`` to the multiplicity of X_k in X_i X_j. Zero
    entries may be omitted and are dropped on construction.
    """

    rank: int
    dual: tuple[int, ...]
    N: Mapping[tuple[int, int, int], int]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        r = self.rank
        if not isinstance(r, (int, np.integer)) or r < 1:
            raise StructuralError(f"rank must be a positive integer, got {r!r}")
        object.__setattr__(self, "rank", int(r))
        dual = tuple(int(x) for x in self.dual)
        if len(dual) != r:
            raise StructuralError(f"dual has length {len(dual)}, expected {r}")
        for i, x in enumerate(dual):
            if not 0 <= x < r:
                raise StructuralError(f"dual[{i}] = {x} out of range")
        object.__setattr__(self, "dual", dual)

        clean = {}
        for key, value in self.N.items():
            if len(key) != 3:
                raise StructuralError(f"structure constant key {key!r} is not a triple")
            i, j, k = (int(x) for x in key)
            if not (0 <= i < r and 0 <= j < r and 0 <= k < r):
                raise StructuralError(f"structure constant index {key!r} out of range")
            if int(value) != value or value < 0:
                raise StructuralError(f"N{key!r} = {value!r} is not a nonnegative integer")
            if value:
                if (i, j, k) in clean:
                    raise StructuralError(f"duplicate structure constant {key!r}")
                clean[(i, j, k)] = int(value)
        object.__setattr__(self, "N", dict(sorted(clean.items())))

        labels = self.labels
        if labels is None:
            labels = tuple(f"X{i}" for i in range(r))
        labels = tuple(str(s) for s in labels)
        if len(labels) != r:
            raise StructuralError(f"{len(labels)} labels given for rank {r}")
        if len(set(labels)) != r:
            raise StructuralError("labels must be distinct")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_tensor(cls, tensor, dual, labels=None) -> FusionRing:
        t = np.asarray(tensor)
        N = {tuple(int(x) for x in idx): int(t[idx]) for idx in zip(*np.nonzero(t))}
        return cls(t.shape[0], tuple(dual), N, labels)

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense array ``t[i, j, k] = N_{ij}^k``."""
        t = np.zeros((self.rank,) * 3, dtype=np.int64)
        for (i, j, k), v in self.N.items():
            t[i, j, k] = v
        t.flags.writeable = False
        return t

    def left_matrix(self, i: int) -> np.ndarray:
        # column j holds the coefficients of X_i X_j
        return self.tensor[i].T

    def support(self, i: int, j: int) -> frozenset[int]:
        return frozenset(int(k) for k in np.nonzero(self.tensor[i, j])[0])

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis(self) -> frozenset[int]:
        return frozenset(range(self.rank))

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (self.rank, self.dual, self.N) == (other.rank, other.dual, other.N)

    def __hash__(self):
        return hash((self.rank, self.dual, tuple(self.N.items())))

    def __repr__(self):
        return f"FusionRing(rank={self.rank}, labels={list(self.labels)})"


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]
    detail: str = ""


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> list[str]:
        return [v.axiom for v in self.violations]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
                for v in self.violations
            ],
        }


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(x) for x in hits[0])


def validate_ring(ring: FusionRing) -> ValidationReport:
    """Check the based-ring axioms; each violated axiom is reported once,
    with its lexicographically smallest witness."""
    r = ring.rank
    t = ring.tensor
    d = np.array(ring.dual)
    out = []

    bad = [i for i in range(r) if d[d[i]] != i]
    if d[0] != 0 or bad:
        w = (0,) if d[0] != 0 else (bad[0],)
        out.append(Violation("duality", w, "dual must be an involution fixing the unit"))

    eye = np.eye(r, dtype=np.int64)
    w = _first((t[0] != eye) | (t[:, 0, :] != eye))
    if w is not None:
        j, k = w
        out.append(Violation("unit_law", w, f"N(0,{j},{k})={t[0, j, k]}, N({j},0,{k})={t[j, 0, k]}"))

    # (X_i X_j) X_k  vs  X_i (X_j X_k), coefficient of X_l
    lhs = np.einsum("ijm,mkl->ijkl", t, t)
    rhs = np.einsum("jkm,iml->ijkl", t, t)
    w = _first(lhs != rhs)
    if w is not None:
        out.append(Violation("associativity", w, f"{lhs[w]} != {rhs[w]}"))

    # N_ij^k = N_{i* k}^j = N_{k j*}^i
    a = t
    b = t[d].transpose(0, 2, 1)  # b[i,j,k] = t[i*, k, j]
    c = t[:, d, :].transpose(2, 1, 0)  # c[i,j,k] = t[k, j*, i]
    w = _first((a != b) | (a != c))
    if w is not None:
        out.append(Violation("frobenius_reciprocity", w,
                             f"N(i,j,k)={a[w]}, N(i*,k,j)={b[w]}, N(k,j*,i)={c[w]}"))

    expected = np.zeros((r, r), dtype=np.int64)
    expected[np.arange(r), d] = 1
    w = _first(t[:, :, 0] != expected)
    if w is not None:
        out.append(Violation("unit_multiplicity", w, f"N({w[0]},{w[1]},0)={t[w[0], w[1], 0]}"))
    return ValidationReport(out)


def element(ring: FusionRing, *indices: int) -> np.ndarray:
    """Sum of the given basic elements as a coefficient vector."""
    v = np.zeros(ring.rank, dtype=np.int64)
    for i in indices:
        v[i] += 1
    return v


def _check_len(ring, *vecs):
    for v in vecs:
        if len(v) != ring.rank:
            raise StructuralError(f"element of length {len(v)} for ring of rank {ring.rank}")


def multiply(ring: FusionRing, x, y) -> np.ndarray:
    x = np.asarray(x)
    y = np.asarray(y)
    _check_len(ring, x, y)
    return np.einsum("i,j,ijk->k", x, y, ring.tensor)


def dual_element(ring: FusionRing, x) -> np.ndarray:
    x = np.asarray(x)
    _check_len(ring, x)
    out = np.zeros_like(x)
    out[list(ring.dual)] = x
    return out


def pairing(x, y):
    return np.dot(np.asarray(x), np.asarray(y))


@dataclass(frozen=True)
class FPData:
    dims: tuple[float, ...]
    ring_dim: float
    tolerance: float
    integer_flags: tuple[bool, ...]
    sq_integer_flags: tuple[bool, ...]
    iterations: int = 0
    residual: float = 0.0

    @property
    def ring_dim_integer(self) -> bool:
        return abs(self.ring_dim - round(self.ring_dim)) < self.tolerance

    def exact_sum_consistent(self) -> bool | None:
        """Cross-check sum(round(d_i^2)) == round(FPdim R); None when some
        squared dimension is not flagged integral."""
        if not all(self.sq_integer_flags):
            return None
        return sum(round(d * d) for d in self.dims) == round(self.ring_dim)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "ring_dim": self.ring_dim,
            "tolerance": self.tolerance,
            "integer_flags": list(self.integer_flags),
            "sq_integer_flags": list(self.sq_integer_flags),
            "ring_dim_integer": self.ring_dim_integer,
            "exact_sum_consistent": self.exact_sum_consistent(),
        }


def perron_vector(matrix: np.ndarray, tolerance: float, max_iterations: int):
    """Power iteration for the positive eigenvector of a strictly positive
    matrix. Returns ``(vector, eigenvalue, iterations, residual)`` with the
    vector scaled to unit max-norm."""
    A = np.asarray(matrix, dtype=float)
    v = np.ones(A.shape[0])
    target = max(tolerance * 1e-3, 1e-15)
    lam = 0.0
    for it in range(1, max_iterations + 1):
        w = A @ v
        lam = w.max()
        w = w / lam
        delta = np.abs(w - v).max()
        v = w
        if delta <= target:
            break
    residual = float(np.abs(A @ v - lam * v).max() / max(lam, 1.0))
    if residual >= tolerance:
        raise ConvergenceError(f"power iteration did not converge in {it} iterations", residual)
    return v, float(lam), it, residual


def fp_dimensions(ring: FusionRing, tolerance: float = DEFAULT_TOL,
                  max_iterations: int = DEFAULT_MAX_ITER) -> FPData:
    t = ring.tensor.astype(float)
    total = t.sum(axis=0).T  # sum of all left-multiplication matrices
    v, _, its, residual = perron_vector(total, tolerance, max_iterations)
    v = v / v[0]
    j = int(np.argmax(v))  # ties -> lowest index
    dims = np.array([(ring.left_matrix(i) @ v)[j] / v[j] for i in range(ring.rank)])
    dims[0] = 1.0
    ring_dim = float(np.sum(dims ** 2))
    return FPData(
        dims=tuple(float(x) for x in dims),
        ring_dim=ring_dim,
        tolerance=tolerance,
        integer_flags=tuple(bool(abs(x - round(x)) < tolerance) for x in dims),
        sq_integer_flags=tuple(bool(abs(x * x - round(x * x)) < tolerance) for x in dims),
        iterations=its,
        residual=residual,
    )


def fp_residual(ring: FusionRing, fp: FPData) -> float:
    """max |d_i d_j - sum_k N_ij^k d_k|"""
    d = np.array(fp.dims)
    lhs = np.outer(d, d)
    rhs = ring.tensor @ d
    return float(np.abs(lhs - rhs).max())


def invertible_basics(ring: FusionRing) -> frozenset[int]:
    t = ring.tensor
    out = set()
    for i in range(ring.rank):
        row = t[i, ring.dual[i]]
        if row[0] == 1 and row.sum() == 1:
            out.add(i)
    return frozenset(out)


def pointed_subring(ring: FusionRing) -> SubringBasis:
    return SubringBasis(invertible_basics(ring))


def subring_closure(ring: FusionRing, seed: Iterable[int]) -> SubringBasis:
    """Smallest index set containing ``seed`` and 0 closed under duality and
    product support."""
    current = set(seed) | {0}
    for i in current:
        if not 0 <= i < ring.rank:
            raise StructuralError(f"seed index {i} out of range")
    t = ring.tensor
    while True:
        idx = sorted(current)
        grown = set(current)
        grown.update(ring.dual[i] for i in idx)
        sub = t[np.ix_(idx, idx)].sum(axis=(0, 1))
        grown.update(int(k) for k in np.nonzero(sub)[0])
        if grown == current:
            return SubringBasis(current)
        current = grown


def is_subring(ring: FusionRing, s: Iterable[int]) -> bool:
    s = set(s)
    return 0 in s and subring_closure(ring, s) == s


def enumerate_subrings(ring: FusionRing) -> list[SubringBasis]:
    """Every based subring, sorted by (size, indices)."""
    found = {subring_closure(ring, ())}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for i in range(ring.rank):
                if i not in s:
                    c = subring_closure(ring, s | {i})
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def induced_ring(ring: FusionRing, s: Iterable[int]) -> tuple[FusionRing, tuple[int, ...]]:
    """Restrict ``ring`` to a based subring; returns the reindexed ring and
    the ambient index of each new basis element."""
    idx = tuple(sorted(s))
    if not is_subring(ring, idx):
        raise StructuralError(f"{list(idx)} is not a based subring")
    pos = {a: n for n, a in enumerate(idx)}
    sub = ring.tensor[np.ix_(idx, idx, idx)]
    dual = tuple(pos[ring.dual[a]] for a in idx)
    labels = tuple(ring.labels[a] for a in idx)
    return FusionRing.from_tensor(sub, dual, labels), idx


def is_commutative(ring: FusionRing) -> bool:
    t = ring.tensor
    return bool(np.array_equal(t, t.transpose(1, 0, 2)))

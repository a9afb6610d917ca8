"""Adjoint subring, universal grading, and the square-free dimension grading."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, PreconditionError, StructuralError
from .groups import GroupTable, group_problem
from .ring import FPData, FusionRing, SubringBasis, multiply, subring_closure


def casimir(ring: FusionRing) -> np.ndarray:
    """I(1) = sum_i X_i X_i^*"""
    t = ring.tensor
    return sum(t[i, ring.dual[i]] for i in range(ring.rank))


def adjoint_of(ring: FusionRing, s) -> SubringBasis:
    """Adjoint subring of the based subring ``s``, in ambient indices."""
    seed = set()
    for i in s:
        seed |= ring.support(i, ring.dual[i])
    return subring_closure(ring, seed)


def adjoint_subring(ring: FusionRing) -> SubringBasis:
    return adjoint_of(ring, range(ring.rank))


@dataclass(frozen=True)
class Grading:
    """Faithful grading: ``components[a]`` is the sorted basis of block a,
    and ``group`` multiplies block ids."""

    components: tuple[tuple[int, ...], ...]
    group: GroupTable
    identity_block: int = 0

    def block_of(self) -> dict[int, int]:
        return {i: a for a, comp in enumerate(self.components) for i in comp}

    @property
    def order(self) -> int:
        return self.group.order

    def to_dict(self) -> dict:
        out = {
            "blocks": [list(c) for c in self.components],
            "order": self.group.order,
            "abelian": self.group.is_abelian(),
            "table": [list(row) for row in self.group.table],
        }
        if out["abelian"]:
            out["invariant_factors"] = self.group.invariant_factors()
        return out


def grading_problem(ring: FusionRing, g: Grading) -> str | None:
    """Check every Grading invariant against ``ring``; None when valid."""
    if len(g.components) != g.group.order:
        return "number of blocks differs from group order"
    seen = sorted(i for c in g.components for i in c)
    if seen != list(range(ring.rank)):
        return "components do not partition the basis"
    if any(not c for c in g.components):
        return "empty block (grading not faithful)"
    block = g.block_of()
    t = ring.tensor
    for a, ca in enumerate(g.components):
        for b, cb in enumerate(g.components):
            target = g.group.mul(a, b)
            for i in ca:
                for j in cb:
                    stray = [k for k in np.nonzero(t[i, j])[0] if block[int(k)] != target]
                    if stray:
                        return f"X_{i} X_{j} meets block {block[int(stray[0])]}, expected {target}"
    for i in range(ring.rank):
        if block[ring.dual[i]] != g.group.inverse(block[i]):
            return f"dual of X_{i} not in the inverse block"
    if block[0] != g.group.identity:
        return "unit not in the identity block"
    return None


def make_grading(ring: FusionRing, components, group: GroupTable) -> Grading:
    g = Grading(tuple(tuple(sorted(c)) for c in components), group, group.identity)
    problem = grading_problem(ring, g)
    if problem:
        raise StructuralError(f"invalid grading: {problem}")
    return g


def trivial_grading(ring: FusionRing) -> Grading:
    return Grading((tuple(range(ring.rank)),), GroupTable(1, ((0,),), 0), 0)


def _components(rank: int, edges) -> list[list[int]]:
    parent = list(range(rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for x in range(rank):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=lambda c: c[0])


def universal_grading(ring: FusionRing) -> Grading:
    """Grading by the universal grading group U(R).

    Blocks are the connected components of i ~ k whenever X_k occurs in
    I(1) X_i; block 0 holds the unit and equals the adjoint subring.
    """
    r = ring.rank
    I1 = casimir(ring)
    # coefficient of X_k in I(1) X_i
    action = np.einsum("m,mik->ik", I1, ring.tensor)
    comps = _components(r, zip(*np.nonzero(action)))
    block = {i: a for a, c in enumerate(comps) for i in c}
    n = len(comps)
    table = [[block[min(ring.support(ca[0], cb[0]))] for cb in comps] for ca in comps]
    # a bad table here means corrupted input, not a caller error
    problem = group_problem(n, table, 0)
    g = None
    if problem is None:
        g = Grading(tuple(map(tuple, comps)), GroupTable(n, tuple(map(tuple, table)), 0), 0)
        problem = grading_problem(ring, g)
    if problem is None and set(comps[0]) != adjoint_subring(ring):
        problem = "identity block differs from the adjoint subring"
    if problem:
        raise InvariantViolation(f"universal grading inconsistent: {problem}")
    return g


def factor_grading(ring: FusionRing, given: Grading,
                   universal: Grading | None = None) -> dict[int, int]:
    """The surjective homomorphism U(R) -> G through which ``given`` factors,
    as a map from universal block ids to given block ids."""
    problem = grading_problem(ring, given)
    if problem:
        raise StructuralError(f"not a grading: {problem}")
    u = universal or universal_grading(ring)
    where = given.block_of()
    pi = {}
    for a, comp in enumerate(u.components):
        targets = {where[i] for i in comp}
        if len(targets) != 1:
            raise StructuralError(f"universal block {a} straddles given blocks {sorted(targets)}")
        pi[a] = targets.pop()
    for a in range(u.order):
        for b in range(u.order):
            if pi[u.group.mul(a, b)] != given.group.mul(pi[a], pi[b]):
                raise InvariantViolation("induced map is not a homomorphism")
    if set(pi.values()) != set(range(given.order)):
        raise InvariantViolation("induced map is not surjective")
    return pi


def square_free_part(n: int) -> int:
    if n < 1:
        raise ValueError(f"square-free part of {n}")
    out, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return out * n


@dataclass(frozen=True)
class SquareFreeGrading:
    keys: tuple[int, ...]                    # square-free n_x, keys[0] == 1
    components: tuple[tuple[int, ...], ...]  # components[x] has dims in Z sqrt(keys[x])
    group: GroupTable

    def to_dict(self) -> dict:
        return {
            "keys": list(self.keys),
            "components": [list(c) for c in self.components],
            "order": self.group.order,
        }


def dimension_parity_grading(ring: FusionRing, fp: FPData) -> SquareFreeGrading:
    """Grade basic elements by the square-free part of FPdim^2 (rings of
    integer FP dimension); the grading group is elementary abelian 2."""
    if not fp.ring_dim_integer:
        raise PreconditionError(f"FPdim(R) = {fp.ring_dim!r} is not an integer")
    for i, ok in enumerate(fp.sq_integer_flags):
        if not ok:
            raise PreconditionError(f"FPdim(X_{i})^2 = {fp.dims[i] ** 2!r} is not an integer")
    sq = [round(d * d) for d in fp.dims]
    key_of = [square_free_part(n) for n in sq]
    keys = sorted(set(key_of))
    comps = tuple(tuple(i for i in range(ring.rank) if key_of[i] == k) for k in keys)
    pos = {k: n for n, k in enumerate(keys)}
    table = []
    for a in keys:
        row = []
        for b in keys:
            c = square_free_part(a * b)
            if c not in pos:
                raise InvariantViolation(f"square-free keys not closed: {a} * {b} -> {c}")
            row.append(pos[c])
        table.append(tuple(row))
    problem = group_problem(len(keys), table, 0)
    if problem:
        raise InvariantViolation(f"square-free keys do not form a group: {problem}")
    group = GroupTable(len(keys), tuple(table), 0)
    if any(group.mul(a, a) != 0 for a in range(group.order)):
        raise InvariantViolation("grading group is not elementary abelian 2")
    problem = grading_problem(ring, Grading(comps, group, 0))
    if problem:
        raise InvariantViolation(f"dimension grading incompatible with fusion: {problem}")
    return SquareFreeGrading(tuple(keys), comps, group)


def is_central(ring: FusionRing, x) -> bool:
    return all(
        np.array_equal(multiply(ring, x, e), multiply(ring, e, x))
        for e in np.eye(ring.rank, dtype=np.int64)
    )

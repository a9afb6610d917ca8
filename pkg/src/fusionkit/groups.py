"""Finite groups as Cayley tables: validation, abelianization, invariant factors."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, StructuralError


@dataclass(frozen=True)
class GroupTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int = 0

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        problem = group_problem(self.order, table, self.identity)
        if problem:
            raise StructuralError(f"not a group: {problem}")

    @classmethod
    def from_elements(cls, elements, op) -> GroupTable:
        """Cayley table of a finite set closed under ``op``. The first
        element must be the identity."""
        elements = list(elements)
        pos = {e: n for n, e in enumerate(elements)}
        table = [[pos[op(a, b)] for b in elements] for a in elements]
        return cls(len(elements), tuple(map(tuple, table)), 0)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def is_abelian(self) -> bool:
        t = np.array(self.table)
        return bool(np.array_equal(t, t.T))

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            n += 1
        return n

    def order_statistics(self) -> dict[int, int]:
        """Number of elements of each order; an isomorphism invariant."""
        return dict(sorted(Counter(self.element_order(a) for a in range(self.order)).items()))

    def invariant_factors(self) -> list[int]:
        if not self.is_abelian():
            raise PreconditionError("invariant factors need an abelian group")
        return invariant_factors(self)


def group_problem(order, table, identity) -> str | None:
    """Exhaustive group-axiom check; returns a description of the first
    failure or None."""
    n = order
    if len(table) != n or any(len(row) != n for row in table):
        return "table is not order x order"
    if not 0 <= identity < n:
        return "identity out of range"
    for a in range(n):
        for b in range(n):
            if not 0 <= table[a][b] < n:
                return f"closure fails at ({a}, {b})"
    for a in range(n):
        if table[identity][a] != a or table[a][identity] != a:
            return f"identity law fails at {a}"
    for a in range(n):
        if identity not in table[a]:
            return f"{a} has no right inverse"
        b = table[a].index(identity)
        if table[b][a] != identity:
            return f"{a} has no two-sided inverse"
    t = np.array(table)
    assoc = t[t, :]          # assoc[a,b,c] = (ab)c
    other = t[:, t]          # other[a,b,c] = a(bc)
    bad = np.argwhere(assoc != other)
    if len(bad):
        return f"associativity fails at {tuple(int(x) for x in bad[0])}"
    return None


def subgroup_closure(group: GroupTable, gens) -> frozenset[int]:
    current = {group.identity} | set(gens)
    while True:
        grown = current | {group.mul(a, b) for a in current for b in current}
        if grown == current:
            return frozenset(current)
        current = grown


def abelianization(group: GroupTable) -> tuple[GroupTable, tuple[int, ...]]:
    """Quotient by the commutator subgroup; returns the quotient table and the
    projection as a tuple ``proj[element] = coset``."""
    inv = group.inverse
    comms = {
        group.mul(group.mul(a, b), group.mul(inv(a), inv(b)))
        for a in range(group.order) for b in range(group.order)
    }
    derived = subgroup_closure(group, comms)
    proj = [-1] * group.order
    cosets = []
    for g in range(group.order):
        if proj[g] >= 0:
            continue
        coset = sorted(group.mul(g, h) for h in derived)
        for x in coset:
            proj[x] = len(cosets)
        cosets.append(coset)
    table = tuple(
        tuple(proj[group.mul(ca[0], cb[0])] for cb in cosets) for ca in cosets
    )
    return GroupTable(len(cosets), table, proj[group.identity]), tuple(proj)


def is_homomorphism(src: GroupTable, dst: GroupTable, f) -> bool:
    return all(
        f[src.mul(a, b)] == dst.mul(f[a], f[b])
        for a in range(src.order) for b in range(src.order)
    )


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors(group: GroupTable) -> list[int]:
    """Invariant factors n_1 | n_2 | ... of a finite abelian group, read off
    from element orders. The trivial group gives ``[]``."""
    orders = [group.element_order(a) for a in range(group.order)]
    # exponents of the cyclic p-parts, per prime
    parts = []
    for p in _prime_factors(group.order):
        counts = [1]
        k = 1
        while True:
            c = sum(1 for o in orders if (p ** k) % o == 0)
            counts.append(c)
            if c == counts[-2]:
                break
            k += 1
        # |G[p^k]| / |G[p^{k-1}]| = p^(number of cyclic factors of exponent >= k)
        at_least = [round(math.log(counts[k] // counts[k - 1], p)) for k in range(1, len(counts))]
        exps = []
        for k, m in enumerate(at_least, start=1):
            nxt = at_least[k] if k < len(at_least) else 0
            exps += [k] * (m - nxt)
        parts.append((p, sorted(exps, reverse=True)))
    width = max((len(e) for _, e in parts), default=0)
    factors = [1] * width
    for p, exps in parts:
        for n, e in enumerate(exps):
            factors[n] *= p ** e
    return sorted(f for f in factors if f > 1)


def cyclic(n: int) -> GroupTable:
    return GroupTable(n, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0)


def direct_product(*factors: GroupTable) -> GroupTable:
    if not factors:
        return cyclic(1)
    elems = list(itertools.product(*(range(g.order) for g in factors)))
    ident = tuple(g.identity for g in factors)
    elems.remove(ident)
    elems.insert(0, ident)
    return GroupTable.from_elements(
        elems, lambda a, b: tuple(g.mul(x, y) for g, x, y in zip(factors, a, b))
    )


def abelian_group(invariants) -> GroupTable:
    return direct_product(*(cyclic(n) for n in invariants))


def character_group(group: GroupTable) -> GroupTable:
    """The dual group, realized as the product of cyclic groups on the input's
    invariant factors (a finite abelian group is isomorphic to its dual)."""
    if not group.is_abelian():
        raise PreconditionError("character group requires an abelian group")
    return abelian_group(invariant_factors(group))


def permutation_group(gens) -> GroupTable:
    """Closure of permutations given as tuples; identity first."""
    n = len(gens[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    i = 0
    while i < len(elems):
        for g in gens:
            h = tuple(g[x] for x in elems[i])
            if h not in seen:
                seen.add(h)
                elems.append(h)
        i += 1
    ordered = [ident] + sorted(e for e in elems if e != ident)
    return GroupTable.from_elements(ordered, lambda a, b: tuple(a[x] for x in b))


def _quaternion_units():
    # (a, b, c, d) = a + b i + c j + d k with one nonzero entry of +-1
    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    units = []
    for pos in range(4):
        for sign in (1, -1):
            v = [0, 0, 0, 0]
            v[pos] = sign
            units.append(tuple(v))
    return units, qmul


def named_group(name: str) -> GroupTable:
    """Cayley tables for the small groups used by the catalog."""
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    if name == "Z2xZ2":
        return abelian_group([2, 2])
    if name == "S3":
        return permutation_group([(1, 0, 2), (1, 2, 0)])
    if name == "D4":
        return permutation_group([(1, 2, 3, 0), (3, 2, 1, 0)])
    if name == "Q8":
        units, qmul = _quaternion_units()
        return GroupTable.from_elements(units, qmul)
    if name == "A4":
        return permutation_group([(1, 2, 0, 3), (1, 0, 3, 2)])
    if name == "S4":
        return permutation_group([(1, 0, 2, 3), (1, 2, 3, 0)])
    if name == "Z7xZ3":
        # affine maps x -> a x + b over Z/7 with a in {1, 2, 4}
        elems = [(a, b) for a in (1, 2, 4) for b in range(7)]
        return GroupTable.from_elements(
            elems, lambda p, q: ((p[0] * q[0]) % 7, (p[0] * q[1] + p[1]) % 7)
        )
    raise KeyError(f"unknown group {name!r}")


def same_group(g: GroupTable, h: GroupTable) -> bool:
    """Isomorphism test by brute-force search over generator images; fine for
    the small orders used here."""
    if g.order != h.order or g.order_statistics() != h.order_statistics():
        return False
    if g.is_abelian() != h.is_abelian():
        return False
    if g.is_abelian():
        return invariant_factors(g) == invariant_factors(h)
    gens = _generators(g)
    h_by_order = {}
    for b in range(h.order):
        h_by_order.setdefault(h.element_order(b), []).append(b)
    choices = [h_by_order.get(g.element_order(a), []) for a in gens]
    for images in itertools.product(*choices):
        f = _extend(g, h, gens, images)
        if f is not None and len(set(f)) == g.order:
            return True
    return False


def _generators(g: GroupTable) -> list[int]:
    gens, span = [], frozenset({g.identity})
    for a in range(g.order):
        if a not in span:
            gens.append(a)
            span = subgroup_closure(g, gens)
    return gens


def _extend(g, h, gens, images):
    f = {g.identity: h.identity}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop()
        for a, b in zip(gens, images):
            y = g.mul(x, a)
            fy = h.mul(f[x], b)
            if y in f:
                if f[y] != fy:
                    return None
            else:
                f[y] = fy
                frontier.append(y)
    out = [f[a] for a in range(g.order)]
    return out if is_homomorphism(g, h, out) else None

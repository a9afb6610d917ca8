import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import ALL_NAMES, brute_force_associative
from fusionkit import catalog
from fusionkit.errors import ConvergenceError, StructuralError
from fusionkit.ring import (FusionRing, dual_element, element, enumerate_subrings,
                            fp_dimensions, fp_residual, induced_ring, invertible_basics,
                            is_subring, multiply, pairing, perron_vector, pointed_subring,
                            subring_closure, validate_ring)

FIB = FusionRing(2, (0, 1), {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1})


def test_catalog_rings_validate(entry):
    rep = validate_ring(entry.ring)
    assert rep.ok, rep.to_dict()


@pytest.mark.parametrize("name", ["zg_S3", "rep_S3", "ty_Z3", "fibonacci", "su2_3", "rep_D4"])
def test_associativity_agrees_with_loops(name):
    assert brute_force_associative(catalog.get(name).ring.tensor)


def test_structural_errors():
    with pytest.raises(StructuralError):
        FusionRing(2, (0, 1), {(0, 0, 2): 1})
    with pytest.raises(StructuralError):
        FusionRing(2, (0, 1), {(0, 0, 0): -1})
    with pytest.raises(StructuralError):
        FusionRing(2, (0,), {})
    with pytest.raises(StructuralError):
        FusionRing(2, (0, 1), {(0, 0, 0): 1}, labels=["a", "a"])


def test_unit_law_witness():
    ring = FusionRing(2, (0, 1), {(0, 0, 0): 1, (0, 0, 1): 1, (0, 1, 1): 1,
                                  (1, 0, 1): 1, (1, 1, 0): 1})
    rep = validate_ring(ring)
    assert "unit_law" in rep.axioms()
    assert rep.violations[0].witness == (0, 1)


def test_duality_must_be_involution():
    ring = FusionRing(3, (0, 2, 2), {(0, 0, 0): 1})
    assert "duality" in validate_ring(ring).axioms()


def test_unit_multiplicity_violation():
    # X1 X1 contains 1 twice: Frobenius holds, unit multiplicity does not
    t = np.zeros((2, 2, 2), dtype=int)
    t[0] = np.eye(2, dtype=int)
    t[1, 0, 1] = 1
    t[1, 1, 0] = 2
    rep = validate_ring(FusionRing.from_tensor(t, (0, 1)))
    assert "unit_multiplicity" in rep.axioms()


def test_equality_ignores_labels():
    a = catalog.get("ising").ring
    b = catalog.get("ty_Z2").ring
    assert a == b and hash(a) == hash(b)
    assert a.labels != b.labels


def test_tensor_is_read_only():
    with pytest.raises(ValueError):
        FIB.tensor[0, 0, 0] = 5


def test_fibonacci_golden_ratio():
    fp = fp_dimensions(FIB)
    assert fp.dims[1] == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-12)
    assert fp.ring_dim == pytest.approx(1 + fp.dims[1] ** 2)
    assert fp.integer_flags == (True, False)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_fp_dims_match_eigen_solver(name):
    # independent oracle: largest eigenvalue of each left multiplication matrix
    ring = catalog.get(name).ring
    fp = fp_dimensions(ring)
    for i in range(ring.rank):
        lam = max(np.linalg.eigvals(ring.left_matrix(i).astype(float)).real)
        assert fp.dims[i] == pytest.approx(lam, rel=1e-9, abs=1e-9)
    assert fp_residual(ring, fp) < 1e-8


def test_perron_vector_reports_nonconvergence():
    # eigenvalues +-sqrt(2): the iterates oscillate instead of settling
    m = np.array([[0.0, 2.0], [1.0, 0.0]])
    with pytest.raises(ConvergenceError) as info:
        perron_vector(m, 1e-12, 50)
    assert "residual" in str(info.value)


@pytest.mark.parametrize("name,expected", [
    ("ising", (1.0, 1.0, math.sqrt(2))),
    ("rep_S4", (1.0, 1.0, 2.0, 3.0, 3.0)),
    ("ty_Z3", (1.0, 1.0, 1.0, math.sqrt(3))),
])
def test_known_dimensions(name, expected):
    np.testing.assert_allclose(fp_dimensions(catalog.get(name).ring).dims, expected, atol=1e-9)


def vectors(rank):
    return st.lists(st.integers(0, 3), min_size=rank, max_size=rank).map(np.array)


@st.composite
def ring_and_vectors(draw, n=3):
    ring = catalog.get(draw(st.sampled_from(ALL_NAMES))).ring
    return ring, [draw(vectors(ring.rank)) for _ in range(n)]


@given(ring_and_vectors())
def test_bilinear_and_associative(data):
    ring, (x, y, z) = data
    assert np.array_equal(multiply(ring, x + y, z), multiply(ring, x, z) + multiply(ring, y, z))
    assert np.array_equal(multiply(ring, multiply(ring, x, y), z),
                          multiply(ring, x, multiply(ring, y, z)))


@given(ring_and_vectors())
def test_duality_is_anti_homomorphism(data):
    ring, (x, y, _) = data
    lhs = dual_element(ring, multiply(ring, x, y))
    rhs = multiply(ring, dual_element(ring, y), dual_element(ring, x))
    assert np.array_equal(lhs, rhs)


@given(ring_and_vectors())
def test_pairing_adjunction(data):
    ring, (x, y, z) = data
    xy_z = pairing(multiply(ring, x, y), z)
    assert xy_z == pairing(x, multiply(ring, z, dual_element(ring, y)))
    assert xy_z == pairing(y, multiply(ring, dual_element(ring, x), z))


@given(ring_and_vectors(n=2))
def test_fp_is_multiplicative(data):
    ring, (x, y) = data
    d = np.array(fp_dimensions(ring).dims)
    assert d @ multiply(ring, x, y) == pytest.approx((d @ x) * (d @ y), rel=1e-9)


def test_length_mismatch():
    with pytest.raises(StructuralError):
        multiply(FIB, [1, 0, 0], [1, 0])


@given(st.sampled_from(ALL_NAMES), st.data())
def test_closure_is_idempotent_and_monotone(name, data):
    ring = catalog.get(name).ring
    seed = data.draw(st.sets(st.integers(0, ring.rank - 1)))
    more = seed | data.draw(st.sets(st.integers(0, ring.rank - 1)))
    c = subring_closure(ring, seed)
    assert seed <= c and 0 in c
    assert subring_closure(ring, c) == c
    assert c <= subring_closure(ring, more)
    assert is_subring(ring, c)


@pytest.mark.parametrize("name", ["zg_S3", "rep_S4", "ty_Z2xZ2", "su2_6"])
def test_enumerated_subrings_are_all_closed_subsets(name):
    ring = catalog.get(name).ring
    subs = set(enumerate_subrings(ring))
    assert all(is_subring(ring, s) for s in subs)
    if ring.rank <= 8:
        import itertools
        rest = range(1, ring.rank)
        brute = {frozenset((0,) + c) for n in range(ring.rank) for c in itertools.combinations(rest, n)
                 if is_subring(ring, (0,) + c)}
        assert subs == brute


def test_pointed_part_and_induced_ring():
    ring = catalog.get("ty_Z3").ring
    assert invertible_basics(ring) == {0, 1, 2}
    sub, idx = induced_ring(ring, pointed_subring(ring))
    assert idx == (0, 1, 2)
    assert sub == catalog.get("zg_Z3").ring
    with pytest.raises(StructuralError):
        induced_ring(ring, {0, 3})


def test_element_helper():
    assert list(element(FIB, 1, 1)) == [0, 2]


@pytest.mark.parametrize("name,entry,delta,becomes", [
    ("zg_Z2", (1, 1, 1), 1, "fibonacci"),
    ("su2_1", (1, 1, 1), 1, "fibonacci"),
    ("fibonacci", (1, 1, 1), -1, "zg_Z2"),
    ("ising", (2, 2, 2), 1, "rep_S3"),
    ("rep_S3", (2, 2, 2), -1, "ising"),
])
def test_some_single_entry_changes_give_valid_rings(name, entry, delta, becomes):
    # N_ii^i for self-dual X_i occurs once in each reciprocity orbit, so
    # changing it can land on another based ring; loops confirm the axioms
    t = catalog.get(name).ring.tensor.copy()
    t[entry] += delta
    mutant = FusionRing.from_tensor(t, catalog.get(name).ring.dual)
    assert validate_ring(mutant).ok
    assert brute_force_associative(mutant.tensor)
    d = mutant.dual
    r = mutant.rank
    for i, j, k in itertools.product(range(r), repeat=3):
        assert t[i, j, k] == t[d[i], k, j] == t[k, d[j], i]
    assert mutant == catalog.get(becomes).ring

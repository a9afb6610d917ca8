import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import ALL_NAMES
from helpers import group_center, relabel
from fusionkit import catalog
from fusionkit.errors import PreconditionError, StructuralError
from fusionkit.grading import (Grading, adjoint_subring, dimension_parity_grading, factor_grading,
                               grading_problem, make_grading, square_free_part, trivial_grading,
                               universal_grading)
from fusionkit.groups import cyclic, invariant_factors, named_group, same_group
from fusionkit.ring import fp_dimensions, is_subring, multiply, element


def test_universal_grading_is_a_grading(entry):
    ug = universal_grading(entry.ring)
    assert grading_problem(entry.ring, ug) is None
    assert set(ug.components[0]) == adjoint_subring(entry.ring)
    assert 0 in ug.components[0]


def test_block_masses_equal(entry):
    fp = fp_dimensions(entry.ring)
    ug = universal_grading(entry.ring)
    masses = [sum(fp.dims[i] ** 2 for i in c) for c in ug.components]
    np.testing.assert_allclose(masses, fp.ring_dim / ug.order, rtol=1e-8)


def test_catalog_expectations(entry):
    ug = universal_grading(entry.ring)
    exp = entry.expected
    assert ug.order == exp["u_order"][0]
    assert len(adjoint_subring(entry.ring)) == exp["adjoint_size"][0]


@pytest.mark.parametrize("g", ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "A4"])
def test_group_ring_grading_recovers_group(g):
    ug = universal_grading(catalog.get(f"zg_{g}").ring)
    assert ug.order == named_group(g).order
    assert all(len(c) == 1 for c in ug.components)
    assert same_group(ug.group, named_group(g))


@pytest.mark.parametrize("g", ["S3", "D4", "Q8", "A4", "S4", "Z7xZ3", "Z2xZ2", "Z5"])
def test_rep_ring_grading_is_dual_of_center(g):
    # oracle: centre of the group computed from its Cayley table
    center = group_center(named_group(g))
    ug = universal_grading(catalog.get(f"rep_{g}").ring)
    assert ug.order == len(center)


def test_factor_through_trivial(entry):
    ring = entry.ring
    f = factor_grading(ring, trivial_grading(ring))
    assert set(f.values()) == {0}


def test_z2_grading_of_z4_factors():
    ring = catalog.get("zg_Z4").ring
    g = make_grading(ring, [(0, 2), (1, 3)], cyclic(2))
    f = factor_grading(ring, g)
    ug = universal_grading(ring)
    for a, block in enumerate(ug.components):
        assert f[a] == (0 if block[0] in (0, 2) else 1)


def test_spin_parity_factors_for_su2():
    ring = catalog.get("su2_5").ring
    even, odd = tuple(range(0, 6, 2)), tuple(range(1, 6, 2))
    f = factor_grading(ring, make_grading(ring, [even, odd], cyclic(2)))
    assert sorted(f.values()) == [0, 1]


def test_invalid_gradings_rejected():
    ring = catalog.get("zg_Z4").ring
    with pytest.raises(StructuralError):
        make_grading(ring, [(0, 1), (2, 3)], cyclic(2))
    with pytest.raises(StructuralError):
        make_grading(ring, [(0, 2), (1,)], cyclic(2))
    ising = catalog.get("ising").ring
    assert grading_problem(ising, Grading(((0,), (1, 2)), cyclic(2))) is not None


@given(st.sampled_from([n for n in ALL_NAMES if catalog.get(n).ring.rank <= 9]), st.randoms())
def test_grading_invariant_under_relabeling(name, rnd):
    ring = catalog.get(name).ring
    rest = list(range(1, ring.rank))
    rnd.shuffle(rest)
    other = relabel(ring, [0] + rest)
    a, b = universal_grading(ring), universal_grading(other)
    assert a.order == b.order
    assert sorted(len(c) for c in a.components) == sorted(len(c) for c in b.components)
    if a.group.is_abelian():
        assert invariant_factors(a.group) == invariant_factors(b.group)


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (12, 3), (50, 2), (36, 1), (30, 30)])
def test_square_free_part(n, expected):
    assert square_free_part(n) == expected


@pytest.mark.parametrize("name,keys", [
    ("ising", [1, 2]), ("ty_Z3", [1, 3]), ("ty_Z2xZ2", [1]), ("su2_2", [1, 2]), ("su2_4", [1, 3]),
    ("rep_Z7xZ3", [1]), ("rep_S4", [1]), ("zg_S3", [1]),
])
def test_dimension_grading(name, keys):
    ring = catalog.get(name).ring
    g = dimension_parity_grading(ring, fp_dimensions(ring))
    assert list(g.keys) == keys
    assert g.group.order == len(keys)
    assert grading_problem(ring, Grading(g.components, g.group)) is None


@pytest.mark.parametrize("name", ["fibonacci", "su2_3", "su2_5"])
def test_dimension_grading_needs_integer_dimension(name):
    ring = catalog.get(name).ring
    with pytest.raises(PreconditionError):
        dimension_parity_grading(ring, fp_dimensions(ring))


def test_adjoint_of_ising():
    ring = catalog.get("ising").ring
    assert adjoint_subring(ring) == {0, 1}
    assert is_subring(ring, adjoint_subring(ring))
    sigma2 = multiply(ring, element(ring, 2), element(ring, 2))
    assert list(sigma2) == [1, 1, 0]

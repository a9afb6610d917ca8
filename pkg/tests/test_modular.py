import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import MODULAR_NAMES
from fusionkit import catalog
from fusionkit.errors import NotModularError, StructuralError
from fusionkit.grading import adjoint_of
from fusionkit.modular import (ModularData, adjoint_commutator_identity, centralizer,
                               central_series_centralizer_check, double_centralizer_check,
                               enumerate_subcats, invertibles_from_smatrix, lemma_absolute_entries,
                               modular_suite, schneider_iso_check, subcat_dim, validate_modular,
                               verlinde_fusion, verlinde_residual)
from fusionkit.series import commutator_subring


def test_validates(modular_entry):
    rep = validate_modular(modular_entry.modular)
    assert rep.ok, rep.failures()


def test_verlinde_reproduces_ring(modular_entry):
    md = modular_entry.modular
    assert verlinde_fusion(md) == modular_entry.ring
    assert verlinde_residual(md) < 1e-8


@pytest.mark.parametrize("name", MODULAR_NAMES)
def test_modular_group_relation(name):
    # oracle: with s = S/sqrt(D), (s T)^3 = (p+/sqrt(D)) s^2, p+ = sum theta_i d_i^2
    md = catalog.get(name).modular
    s = md.S / math.sqrt(md.D)
    T = np.diag(md.T)
    gauss = np.sum(md.T * md.d ** 2) / math.sqrt(md.D)
    lhs = np.linalg.matrix_power(s @ T, 3)
    np.testing.assert_allclose(lhs, gauss * (s @ s), atol=1e-9)
    assert abs(gauss) == pytest.approx(1.0)


@pytest.mark.parametrize("k", range(1, 9))
def test_su2_truncated_clebsch_gordan(k):
    # oracle: j1 x j2 = |j1-j2| + ... up to min(j1+j2, k - j1 - j2), in steps of one
    ring = verlinde_fusion(catalog.get(f"su2_{k}").modular)
    for a in range(k + 1):
        for b in range(k + 1):
            expected = set(range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2))
            assert ring.support(a, b) == expected


def test_ising_wrong_twist_fails_balancing():
    md = catalog.get("ising").modular
    bad = ModularData(md.S, [1, 1, md.T[2]], md.dual)
    rep = validate_modular(bad)
    assert not rep.checks["balancing"]
    assert rep.checks["verlinde_integrality"]


def test_non_integral_verlinde_raises():
    md = ModularData([[1, 1.5], [1.5, -1]], [1, cmath.exp(0.8j * math.pi)], (0, 1))
    with pytest.raises(NotModularError) as info:
        verlinde_fusion(md)
    assert info.value.witness is not None
    assert not validate_modular(md).ok


def test_shape_errors():
    with pytest.raises(StructuralError):
        ModularData([[1, 1]], [1, 1], (0, 1))
    with pytest.raises(StructuralError):
        ModularData([[1, 1], [1, -1]], [1], (0, 1))


def test_entries_bounded_by_dimensions(modular_entry):
    md = modular_entry.modular
    assert np.all(np.abs(md.S) <= np.outer(md.d, md.d) + md.atol)


def test_absolute_entry_lemma(modular_entry):
    assert lemma_absolute_entries(modular_entry.modular)


def test_invertibles(modular_entry):
    inv, G = invertibles_from_smatrix(modular_entry.modular)
    assert len(inv) == modular_entry.expected["pointed_size"][0]
    assert G.order == len(inv)


def test_schneider(modular_entry):
    rep = schneider_iso_check(modular_entry.modular)
    assert rep.ok, rep.to_dict()
    assert rep.details["U_invariant_factors"] == modular_entry.expected["u_invariant_factors"][0]


def test_central_series_centralizers(modular_entry):
    rep = central_series_centralizer_check(modular_entry.modular)
    assert rep.ok, rep.to_dict()


def test_every_subcategory(modular_entry):
    md = modular_entry.modular
    ring = modular_entry.ring
    for k in enumerate_subcats(md, ring):
        rep = double_centralizer_check(md, k, ring)
        assert rep.ok, (sorted(k), rep.to_dict())
        assert subcat_dim(md, k) * subcat_dim(md, centralizer(md, k)) == pytest.approx(md.D, rel=1e-7)
        assert centralizer(md, adjoint_of(ring, k)) == commutator_subring(ring, centralizer(md, k))
        assert adjoint_commutator_identity(md, k, ring)


@given(st.sampled_from(MODULAR_NAMES), st.data())
def test_centralizer_is_antitone(name, data):
    entry = catalog.get(name)
    subs = enumerate_subcats(entry.modular, entry.ring)
    a = data.draw(st.sampled_from(subs))
    b = data.draw(st.sampled_from([s for s in subs if a <= s]))
    assert centralizer(entry.modular, b) <= centralizer(entry.modular, a)


def test_ising_specifics():
    md = catalog.get("ising").modular
    rep = central_series_centralizer_check(md)
    assert rep.details["upper"][1] == [0, 1]
    assert centralizer(md, {0, 1}) == {0, 1}
    # C^(1) = {1, eps} is symmetric, and the whole category is modular
    assert centralizer(md, range(3)) == {0}


def test_toric_code_suite():
    suite = modular_suite(catalog.get("toric_code").modular)
    assert suite["ok"]
    assert suite["schneider"]["details"]["U_invariant_factors"] == [2, 2]

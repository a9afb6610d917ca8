import pytest
from hypothesis import given, strategies as st

from conftest import ALL_NAMES
from fusionkit import catalog
from fusionkit.errors import PreconditionError, StructuralError
from fusionkit.grading import adjoint_subring
from fusionkit.ring import enumerate_subrings, induced_ring, is_commutative, pointed_subring
from fusionkit.series import (commutator_subring, lower_central_series, nilpotency_class,
                              upper_central_series, verify_series_duality)

COMMUTATIVE = [n for n in ALL_NAMES if is_commutative(catalog.get(n).ring)]


def test_class_matches_catalog(entry):
    assert nilpotency_class(entry.ring) == entry.expected["nilpotency_class"][0]


def test_upper_series_is_decreasing(entry):
    chain = upper_central_series(entry.ring).chain
    assert all(b < a for a, b in zip(chain, chain[1:]))
    assert chain[0] == entry.ring.basis()


@pytest.mark.parametrize("name", COMMUTATIVE)
def test_lower_series_is_increasing(name):
    chain = lower_central_series(catalog.get(name).ring).chain
    assert chain[0] == {0}
    assert all(a < b for a, b in zip(chain, chain[1:]))


@pytest.mark.parametrize("name", COMMUTATIVE)
def test_duality(name):
    rep = verify_series_duality(catalog.get(name).ring)
    assert rep.ok, rep.to_dict()


def test_class_drops_by_one_on_adjoint(entry):
    ring = entry.ring
    c = nilpotency_class(ring)
    if c is None or c == 0:
        return
    sub, _ = induced_ring(ring, adjoint_subring(ring))
    assert nilpotency_class(sub) == c - 1


@given(st.sampled_from([n for n in ALL_NAMES if catalog.get(n).ring.rank <= 10]), st.data())
def test_nilpotency_is_hereditary(name, data):
    ring = catalog.get(name).ring
    c = nilpotency_class(ring)
    subs = enumerate_subrings(ring)
    s = data.draw(st.sampled_from(subs))
    sub, _ = induced_ring(ring, s)
    cs = nilpotency_class(sub)
    if c is not None:
        assert cs is not None and cs <= c


def test_commutator_examples():
    ring = catalog.get("ising").ring
    assert commutator_subring(ring, {0}) == {0, 1}
    assert commutator_subring(ring, {0, 1}) == {0, 1, 2}
    with pytest.raises(StructuralError):
        commutator_subring(ring, {0, 2})


def test_commutator_contains_pointed_part(entry):
    ring = entry.ring
    if not is_commutative(ring):
        with pytest.raises(PreconditionError):
            lower_central_series(ring)
        return
    assert commutator_subring(ring, {0}) == pointed_subring(ring)


def test_noncommutative_group_ring_upper_series_only():
    ring = catalog.get("zg_S3").ring
    assert upper_central_series(ring).nilpotency_class == 1
    with pytest.raises(PreconditionError):
        verify_series_duality(ring)


def test_series_report_at_repeats_fixpoint():
    rep = upper_central_series(catalog.get("fibonacci").ring)
    assert rep.nilpotency_class is None
    assert rep.at(10) == rep.chain[-1] == {0, 1}

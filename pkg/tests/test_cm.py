import pytest

from qplab.cm import (
    CMType,
    certificate_json,
    cm_type,
    differential_weight,
    orbit_row,
    simplicity_certificate,
    stabilizer,
)
from qplab.errors import NotAUnit
from qplab.exactmath import ResidueClass, units_mod


def test_differential_weights():
    assert differential_weight(0, 1).signed() == -2
    assert differential_weight(0, 2).signed() == -7
    assert differential_weight(2, 2).signed() == -1
    assert differential_weight(1, 2).signed() == -4


def test_cm_type():
    t = cm_type()
    assert t.signed() == (-1, -2, -4, -7)
    assert {e.value for e in t.entries} == {14, 13, 11, 8}
    assert all(e.is_unit() for e in t.entries)


def test_orbit_rows():
    assert orbit_row(2) == (-2, -4, 7, 1)
    assert orbit_row(4) == (-4, 7, -1, 2)
    assert orbit_row(7) == (-7, 1, 2, -4)
    with pytest.raises(NotAUnit):
        orbit_row(5)


def test_every_nontrivial_unit_moves_the_type():
    t = cm_type()
    for r in units_mod(15):
        moved = frozenset(r * e for e in t.entries)
        assert (moved == t.as_set()) == (r.value == 1)


def test_stabilizers():
    assert stabilizer(cm_type()) == {ResidueClass(1, 15)}
    fake = CMType.from_ints([1, 2, 4, 8])
    assert ResidueClass(2, 15) in stabilizer(fake)


@pytest.mark.parametrize("values", [(1, 2, 4, 8), (1, 2, 4, 7), (1, 14, 2, 13), (11, 13, 7, 4)])
def test_stabilizer_is_a_subgroup(values):
    s = stabilizer(CMType.from_ints(values))
    assert ResidueClass(1, 15) in s
    for r in s:
        assert r.inverse() in s
        for q in s:
            assert r * q in s


def test_invalid_types_rejected():
    with pytest.raises(ValueError):
        CMType.from_ints([1, 1, 2, 4])
    with pytest.raises(ValueError):
        CMType.from_ints([1, 3, 2, 4])


def test_certificates():
    cert = simplicity_certificate()
    assert cert["stabilizer"] == [1]
    assert cert["verdict"] == "enumeration confirms trivial stabilizer"
    fake = simplicity_certificate(CMType.from_ints([1, 2, 4, 8]))
    assert fake["verdict"] == "enumeration does not support simplicity"
    assert certificate_json(simplicity_certificate()) == certificate_json(simplicity_certificate())

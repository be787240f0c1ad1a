import pytest

from qplab.errors import CapExceeded, SingularMobius
from qplab.exactmath import I
from qplab.moduli_group import (
    G_THREE_CYCLE,
    G_TRANSPOSITION,
    IDENTITY,
    OMEGA1,
    OMEGA2,
    OMEGA3,
    MobiusMap,
    conjugation_permutation,
    generate_group,
    mobius_compose,
    verify_normalizer_relations,
)

GENERATORS = [OMEGA1, OMEGA2, G_TRANSPOSITION, G_THREE_CYCLE]


def test_composition():
    assert mobius_compose(OMEGA1, OMEGA1) == IDENTITY
    assert mobius_compose(OMEGA1, OMEGA2) == OMEGA3 == MobiusMap(0, -1, 1, 0)
    assert mobius_compose(G_TRANSPOSITION, IDENTITY) == G_TRANSPOSITION


def test_projective_scaling():
    assert MobiusMap(2, 2, 2, -2) == G_TRANSPOSITION
    assert MobiusMap(I, 1, I, -1) == MobiusMap(1, -I, 1, I)


def test_action_on_points():
    assert OMEGA3(2) == MobiusMap(0, -1, 1, 0)(2)
    assert OMEGA2(0) is None
    assert OMEGA2(None) == 0


def test_singular_rejected():
    with pytest.raises(SingularMobius):
        MobiusMap(1, 1, 1, 1)


def test_group_orders():
    assert len(generate_group([OMEGA1, OMEGA2])) == 4
    assert len(generate_group(GENERATORS)) == 24
    assert generate_group([IDENTITY]) == {IDENTITY}
    with pytest.raises(CapExceeded):
        generate_group(GENERATORS, cap=10)


def test_closure_normalizes_w_and_is_nonabelian():
    group = generate_group(GENERATORS)
    perms = [conjugation_permutation(h) for h in group]
    assert None not in perms
    assert len(set(perms)) == 6
    assert sum(p == (0, 1, 2) for p in perms) == 4
    assert any(g @ h != h @ g for g in group for h in group)


def test_group_axioms():
    group = generate_group(GENERATORS)
    for g in group:
        assert g @ g.inverse() == IDENTITY
        for h in group:
            assert g @ h in group


def test_normalizer_certificate():
    rep = verify_normalizer_relations()
    assert rep.passed
    assert rep.details["order"] == 24
    assert rep.details["kernel_order"] == 4
    assert rep.details["image_is_S3"]
    assert rep.details["center_order"] == 1

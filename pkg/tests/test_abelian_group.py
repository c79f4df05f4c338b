import pytest

from abelat import (
    AbelianGroup,
    DomainError,
    GroupSpecError,
    Subgroup,
    abelian_group_types,
    enumerate_elements,
    groups_up_to,
    parse_group_spec,
    presentations,
    squares_subgroup,
    torsion2_subgroup,
)
from abelat.abelian_group import inverse, mul, primary_factors
from .configs import N_RANDOM_TESTS_PER_CASE


@pytest.mark.parametrize(
    "spec, factors, order",
    [
        ("C4xC2", (4, 2), 8),
        (" c4 X c2 ", (4, 2), 8),
        ("C2xC4", (2, 4), 8),
        ("C7", (7,), 7),
        ("C2xC2xC2", (2, 2, 2), 8),
        ("C1", (), 1),
    ]
)
def test_parse_group_spec(spec, factors, order):
    group = parse_group_spec(spec)
    assert group.invariant_factors == factors
    assert group.order == order


@pytest.mark.parametrize(
    "spec, token",
    [
        ("C4xD2", "d2"),
        ("C4x", ""),
        ("C0", "c0"),
        ("C1xC2", "c1"),
        ("", ""),
    ]
)
def test_parse_group_spec_errors(spec, token):
    with pytest.raises(GroupSpecError) as err:
        parse_group_spec(spec)
    assert err.value.token == token


def test_spec_round_trip():
    for spec in ["C4xC2", "C2xC4", "C12", "C1", "C3xC3"]:
        assert parse_group_spec(spec).spec == spec


def test_enumeration_order():
    group = parse_group_spec("C4xC2")
    elements = enumerate_elements(group)
    assert len(elements) == 8
    assert elements[0].is_identity
    assert [g.coords for g in elements[:4]] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [g.index for g in elements] == list(range(8))


def test_mul_and_inverse():
    group = parse_group_spec("C4xC2")
    a = group.element((1, 0))
    b = group.element((0, 1))
    assert mul(a, b).coords == (1, 1)
    assert inverse(a) == a ** 3
    assert (a ** 4).is_identity
    assert a ** -1 == inverse(a)
    assert mul(a, b).order == 4
    assert b.order == 2


def test_group_axioms_random(rng):
    group = parse_group_spec("C6xC2")
    for _ in range(N_RANDOM_TESTS_PER_CASE):
        x, y, z = (group.elements[int(i)] for i in rng.integers(0, group.order, size=3))
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert (x * inverse(x)).is_identity


@pytest.mark.parametrize(
    "spec, squares, torsion",
    [
        ("C4xC2", 2, 4),
        ("C6", 3, 2),
        ("C5", 5, 1),
        ("C2xC2", 1, 4),
        ("C8", 4, 2),
    ]
)
def test_squares_and_torsion(spec, squares, torsion):
    group = parse_group_spec(spec)
    s = squares_subgroup(group)
    t = torsion2_subgroup(group)
    assert s.order == squares
    assert t.order == torsion
    # the squaring map has image S and kernel T
    assert s.order * t.order == group.order


@pytest.mark.parametrize("group", groups_up_to(32, min_order=2), ids=str)
def test_squares_and_torsion_sweep(group):
    s = squares_subgroup(group)
    t = torsion2_subgroup(group)
    assert s.order * t.order == group.order
    assert (s.order == group.order) == group.has_odd_order
    assert (t.order == group.order) == all(f == 2 for f in group.invariant_factors)


def test_squares_subgroup_elements():
    group = parse_group_spec("C4xC2")
    assert set(g.coords for g in squares_subgroup(group)) == {(0, 0), (2, 0)}
    assert set(g.coords for g in torsion2_subgroup(group)) == {(0, 0), (2, 0), (0, 1), (2, 1)}


def test_subgroup_validation():
    group = parse_group_spec("C4")
    a = group.element((1,))
    with pytest.raises(DomainError):
        Subgroup(group, [group.identity, a])
    with pytest.raises(DomainError):
        Subgroup(group, [a])
    sub = group.generated_subgroup([a ** 2])
    assert sub.order == 2
    assert sub.index == 2
    assert not sub.is_trivial and not sub.is_whole


@pytest.mark.parametrize(
    "factors, canonical, cyclic",
    [
        ((2, 3), (6,), True),
        ((2, 4), (4, 2), False),
        ((3, 3), (3, 3), False),
        ((4, 3), (12,), True),
        ((2, 2, 3), (6, 2), False),
    ]
)
def test_canonical_invariant_factors(factors, canonical, cyclic):
    group = AbelianGroup(factors)
    assert group.canonical_invariant_factors == canonical
    assert group.is_cyclic == cyclic


def test_invalid_factors():
    with pytest.raises(DomainError):
        AbelianGroup([4, 1])


def test_cyclic_generator():
    group = AbelianGroup([2, 3])
    assert group.cyclic_generator().order == 6
    with pytest.raises(DomainError):
        AbelianGroup([2, 2]).cyclic_generator()


@pytest.mark.parametrize(
    "order, types",
    [
        (1, [()]),
        (7, [(7,)]),
        (8, [(8,), (4, 2), (2, 2, 2)]),
        (12, [(12,), (6, 2)]),
        (16, [(16,), (8, 2), (4, 4), (4, 2, 2), (2, 2, 2, 2)]),
    ]
)
def test_abelian_group_types(order, types):
    assert abelian_group_types(order) == types


def test_presentations():
    assert primary_factors((4, 2)) == (2, 4)
    assert presentations((4, 2), all_orderings=False) == [(4, 2)]
    assert set(presentations((4, 2))) == {(4, 2), (2, 4)}
    assert presentations((6,)) == [(6,), (2, 3), (3, 2)]


def test_groups_up_to():
    groups = groups_up_to(8)
    assert len(groups) == 11
    assert [g.order for g in groups] == sorted(g.order for g in groups)
    assert len(groups_up_to(8, min_order=2)) == 10
    assert len(groups_up_to(8, min_order=8, all_presentations=True)) > 3

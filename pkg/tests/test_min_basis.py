import pytest

from abelat import (
    DomainError,
    GroupRingElement,
    MinimalBasis,
    NoMinimalBasisError,
    canonical_basis,
    difference_product,
    general_min_basis,
    groups_up_to,
    min_basis,
    parse_group_spec,
    sha_basis,
    single_orbit_basis,
    small_group_basis,
    verify_unimodular,
)
from abelat.min_basis import change_of_basis_matrix, replacement_inverse, replacement_square
from .configs import FAST_MAX_ORDER, N_RANDOM_TESTS_PER_CASE, SLOW_MAX_ORDER


def _groups_with_minimal_basis(max_order, all_presentations=False):
    return [parse_group_spec("C2xC2")] + groups_up_to(max_order, min_order=5, all_presentations=all_presentations)


def _check_general(group, strategy):
    basis = general_min_basis(group, strategy=strategy)
    assert basis.construction == MinimalBasis.GENERAL
    assert len(basis) == group.order - 1
    assert basis.norms == [4] * (group.order - 1)
    assert basis.unimodular
    assert verify_unimodular(basis.vectors, canonical_basis(group))


@pytest.mark.parametrize("strategy", ["difference", "inverse"])
@pytest.mark.parametrize("group", _groups_with_minimal_basis(FAST_MAX_ORDER, all_presentations=True), ids=str)
def test_general_min_basis(group, strategy):
    _check_general(group, strategy)


@pytest.mark.slow
@pytest.mark.parametrize("strategy", ["difference", "inverse"])
@pytest.mark.parametrize("group", groups_up_to(SLOW_MAX_ORDER, min_order=FAST_MAX_ORDER + 1), ids=str)
def test_general_min_basis_slow(group, strategy):
    _check_general(group, strategy)


def test_c2xc2_needs_replacements():
    group = parse_group_spec("C2xC2")
    assert sorted(canonical_basis(group).gram.diagonal().tolist()) == [4, 8, 8]
    basis = general_min_basis(group)
    assert basis.norms == [4, 4, 4]
    assert basis.vectors != canonical_basis(group).basis


def test_c4_has_no_minimal_basis():
    with pytest.raises(NoMinimalBasisError):
        general_min_basis(parse_group_spec("C4"))


@pytest.mark.parametrize("spec, norms", [("C2", [8]), ("C3", [6, 6])])
def test_small_groups(spec, norms):
    group = parse_group_spec(spec)
    basis = general_min_basis(group)
    assert basis.construction == MinimalBasis.SMALL_GROUP
    assert basis.norms == norms
    assert basis.is_minimal
    assert small_group_basis(group).vectors == basis.vectors
    with pytest.raises(DomainError):
        small_group_basis(parse_group_spec("C5"))


def test_sha_basis_c5():
    group = parse_group_spec("C5")
    a = group.cyclic_generator()
    basis = sha_basis(group)
    assert list(basis.vectors) == [
        difference_product(a, a ** 2),
        difference_product(a, a ** 3),
        difference_product(a.inverse(), a ** 2),
        difference_product(a.inverse(), a ** 3),
    ]
    assert basis.norms == [4] * 4


@pytest.mark.parametrize("n", range(5, 17))
def test_sha_basis(n):
    group = parse_group_spec(f"C{n}")
    basis = sha_basis(group)
    assert len(basis) == n - 1
    assert basis.is_minimal
    assert abs(basis.determinant) == 1


@pytest.mark.parametrize("n", range(5, 10))
def test_inverse_strategy_gives_sha_basis(n):
    group = parse_group_spec(f"C{n}")
    assert set(general_min_basis(group, strategy="inverse").vectors) == set(sha_basis(group).vectors)


@pytest.mark.parametrize("spec", ["C4", "C2xC4", "C3"])
def test_sha_basis_errors(spec):
    with pytest.raises(DomainError):
        sha_basis(parse_group_spec(spec))


@pytest.mark.parametrize("n", range(5, 17))
def test_single_orbit_basis(n):
    group = parse_group_spec(f"C{n}")
    basis = single_orbit_basis(group)
    assert len(basis) == n - 1
    assert basis.unimodular
    assert basis.orbit_count == 1
    assert basis.is_minimal == (n != 6)


def test_single_orbit_basis_explicit():
    group = parse_group_spec("C7")
    a = group.cyclic_generator()
    basis = single_orbit_basis(group, a, a ** 3)
    assert basis.norms == [4] * 6
    assert basis.vectors[0] == difference_product(a, a ** 3)
    assert basis.vectors[1] == difference_product(a, a ** 3).translate(a)
    assert verify_unimodular(basis.vectors, canonical_basis(group))


def test_single_orbit_basis_c5_default():
    group = parse_group_spec("C5")
    a = group.cyclic_generator()
    basis = single_orbit_basis(group)
    assert basis.vectors[0] == difference_product(a, a ** 2)
    assert basis.norms == [4] * 4


def test_single_orbit_basis_c6_not_minimal():
    group = parse_group_spec("C6")
    a = group.cyclic_generator()
    basis = single_orbit_basis(group, a, a)
    assert not basis.is_minimal
    assert 6 in basis.norms
    assert basis.unimodular
    assert basis.to_json()["is_minimal"] is False


def test_single_orbit_basis_errors():
    group = parse_group_spec("C6")
    a = group.cyclic_generator()
    with pytest.raises(DomainError):
        single_orbit_basis(group, a, a ** 2)
    with pytest.raises(DomainError):
        single_orbit_basis(parse_group_spec("C2xC2"))


def test_verify_unimodular():
    group = parse_group_spec("C5")
    reference = canonical_basis(group)
    assert verify_unimodular(reference.basis, reference)
    doubled = [reference.basis[0].scale(2)] + list(reference.basis[1:])
    assert not verify_unimodular(doubled, reference)
    assert change_of_basis_matrix(doubled, reference)[0].tolist() == [2, 0, 0, 0]
    a = group.cyclic_generator()
    with pytest.raises(DomainError):
        verify_unimodular([GroupRingElement.delta(a)] + list(reference.basis[1:]), reference)
    with pytest.raises(DomainError):
        verify_unimodular(reference.basis[1:], reference)


def test_sha_basis_unimodular_c7():
    group = parse_group_spec("C7")
    assert verify_unimodular(sha_basis(group).vectors, canonical_basis(group))


def test_replacement_identities_random(rng):
    group = parse_group_spec("C6xC2")
    delta = GroupRingElement.delta
    for _ in range(N_RANDOM_TESTS_PER_CASE):
        a, b = (group.elements[int(i)] for i in rng.integers(0, group.order, size=2))
        x = GroupRingElement.from_element(a) - GroupRingElement.from_element(b)
        assert delta(a) * delta(a) == delta(a) * x + difference_product(a, b)
        assert replacement_square(a, b) == difference_product(a, b) - delta(a) * delta(a)
        assert replacement_inverse(a, b) == difference_product(a, a.inverse()) - difference_product(a, b)


def test_direct_product_identity_random(rng):
    group = parse_group_spec("C4xC3")
    for _ in range(N_RANDOM_TESTS_PER_CASE):
        b1, c1, b2, c2 = (group.elements[int(i)] for i in rng.integers(0, group.order, size=4))
        lhs = difference_product(b1 * c1, b2 * c2)
        rhs = (
            difference_product(b1 * b2, c1 * c2)
            - difference_product(b1, c1)
            - difference_product(b2, c2)
            + difference_product(b1, b2)
            + difference_product(c1, c2)
        )
        assert lhs == rhs


@pytest.mark.parametrize(
    "spec, construction, size",
    [
        ("C5", "sha", 4),
        ("C9", "orbit", 8),
        ("C4xC2", "general", 7),
        ("C3", "small_group", 2),
    ]
)
def test_min_basis_dispatch(spec, construction, size):
    basis = min_basis(parse_group_spec(spec), construction=construction)
    data = basis.to_json()
    assert len(data["basis"]) == size
    assert data["unimodular"] is True
    assert data["group"] == spec


def test_unknown_construction():
    with pytest.raises(ValueError):
        min_basis(parse_group_spec("C5"), construction="greedy")
    with pytest.raises(ValueError):
        general_min_basis(parse_group_spec("C5"), strategy="greedy")

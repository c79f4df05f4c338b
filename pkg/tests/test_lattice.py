from fractions import Fraction

import pytest

from abelat import (
    DomainError,
    GroupRingElement,
    OmegaPair,
    augmentation_quotient_invariants,
    canonical_basis,
    check_rewriting_identities,
    congruence_representative,
    difference_product,
    groups_up_to,
    kissing_count,
    membership,
    min_distance,
    min_vectors_any,
    minimal_vectors,
    omega_pairs,
    orbits,
    parametrizing_triples,
    parse_group_spec,
    quadruple_oracle,
    sha_basis,
    short_vector_oracle,
    single_orbit_basis,
)
from abelat.lattice import augmentation_index, canonical_pairs, oracle_min_distance, product_norm_sq
from .configs import FAST_MAX_ORDER, N_RANDOM_TESTS_PER_CASE, SLOW_MAX_ORDER


def test_canonical_basis_c4():
    group = parse_group_spec("C4")
    a = group.element((1,))
    lattice = canonical_basis(group)
    assert list(lattice.basis) == [difference_product(a, a ** k) for k in (1, 2, 3)]
    assert lattice.gram.tolist() == [[6, 2, 4], [2, 4, 2], [4, 2, 6]]
    assert lattice.determinant == 64
    assert lattice.gram_text() == "6 2 4\n2 4 2\n4 2 6\n"


def test_canonical_pairs_order():
    group = parse_group_spec("C3xC2")
    a, b = group.factor_generators
    assert canonical_pairs(group) == [(a, a), (a, a ** 2), (b, b), (a, b), (a ** 2, b)]


def _check_canonical_basis(group):
    n = group.order
    lattice = canonical_basis(group)
    assert lattice.rank == n - 1
    assert all(membership(v, group) for v in lattice.basis)
    assert lattice.determinant == n ** 3
    assert augmentation_quotient_invariants(group) == group.canonical_invariant_factors
    assert augmentation_index(group) == n
    delta = canonical_basis(group, 1)
    assert delta.rank == n - 1
    assert delta.determinant == n


@pytest.mark.parametrize("group", groups_up_to(FAST_MAX_ORDER, min_order=2, all_presentations=True), ids=str)
def test_canonical_basis(group):
    _check_canonical_basis(group)


@pytest.mark.slow
@pytest.mark.parametrize("group", groups_up_to(SLOW_MAX_ORDER, min_order=FAST_MAX_ORDER + 1), ids=str)
def test_canonical_basis_slow(group):
    _check_canonical_basis(group)


def test_trivial_group():
    with pytest.raises(DomainError):
        canonical_basis(parse_group_spec("C1"))


def test_higher_power_needs_cyclic():
    with pytest.raises(DomainError):
        canonical_basis(parse_group_spec("C2xC2"), 3)
    assert canonical_basis(parse_group_spec("C7"), 3).rank == 6


def test_membership():
    group = parse_group_spec("C5")
    a = group.element((1,))
    assert membership(difference_product(a, a ** 2))
    assert not membership(GroupRingElement.delta(a))
    assert not membership(GroupRingElement.one(group))
    assert not membership(difference_product(a, a ** 2).scale(Fraction(1, 2)))


def test_congruence_representative(rng):
    group = parse_group_spec("C4xC2")
    for _ in range(N_RANDOM_TESTS_PER_CASE):
        coeffs = [int(c) for c in rng.integers(-3, 4, size=group.order)]
        coeffs[0] -= sum(coeffs)
        d = GroupRingElement(group, coeffs)
        assert membership(congruence_representative(d))
    with pytest.raises(DomainError):
        congruence_representative(GroupRingElement.one(group))


def test_rewriting_identities(rng):
    group = parse_group_spec("C6xC2")
    delta = GroupRingElement.delta
    for _ in range(N_RANDOM_TESTS_PER_CASE):
        a, b = (group.elements[int(i)] for i in rng.integers(0, group.order, size=2))
        assert delta(a) + delta(b) == delta(a * b) - difference_product(a, b)
        x = GroupRingElement.from_element(a) - GroupRingElement.from_element(b)
        assert delta(a) - delta(b) == delta(a * b.inverse()) - x * delta(b.inverse())


@pytest.mark.parametrize("spec", ["C5", "C4xC2", "C3xC3"])
def test_check_rewriting_identities(spec):
    group = parse_group_spec(spec)
    for a in group.elements:
        for b in group.elements:
            assert check_rewriting_identities(a, b)


def test_omega_pairs():
    group = parse_group_spec("C5")
    assert len(omega_pairs(group)) == 8
    a = group.element((1,))
    with pytest.raises(DomainError):
        OmegaPair(a, a.inverse())
    with pytest.raises(DomainError):
        OmegaPair(group.identity, a)


def test_product_norm_sq_matches_direct():
    for spec in ["C4", "C4xC2", "C6", "C2xC2"]:
        group = parse_group_spec(spec)
        for a in group.elements[1:]:
            for b in group.elements[1:]:
                assert product_norm_sq(a, b) == difference_product(a, b).norm_sq()


@pytest.mark.parametrize(
    "spec, count",
    [
        ("C4", 4),
        ("C2xC2", 6),
        ("C5", 10),
        ("C6", 24),
        ("C7", 42),
        ("C8", 72),
        ("C4xC2", 76),
        ("C3xC3", 108),
    ]
)
def test_kissing_count(spec, count):
    group = parse_group_spec(spec)
    assert kissing_count(group) == count
    assert len(minimal_vectors(group)) == count
    assert len(min_vectors_any(group)) == count


def _check_minimal_vectors(group):
    vectors = minimal_vectors(group)
    assert [mv.key for mv in vectors] == quadruple_oracle(group)
    assert len(vectors) == kissing_count(group)
    for mv in vectors:
        assert mv.vector.norm_sq() == 4
        assert membership(mv.vector)
        assert len(mv.triples) == 4
        assert sorted(parametrizing_triples(mv.vector), key=_triple_key) == sorted(mv.triples, key=_triple_key)


def _triple_key(t):
    return tuple(g.index for g in t)


@pytest.mark.parametrize("group", groups_up_to(FAST_MAX_ORDER, min_order=4), ids=str)
def test_minimal_vectors(group):
    _check_minimal_vectors(group)


@pytest.mark.slow
@pytest.mark.parametrize("group", groups_up_to(SLOW_MAX_ORDER, min_order=FAST_MAX_ORDER + 1), ids=str)
def test_minimal_vectors_slow(group):
    _check_minimal_vectors(group)


@pytest.mark.parametrize("group", groups_up_to(12, min_order=4, all_presentations=True), ids=str)
def test_minimal_vectors_closed_under_negation(group):
    keys = {mv.key for mv in minimal_vectors(group)}
    assert keys
    assert {(-mv.vector).to_integers() for mv in minimal_vectors(group)} == keys


def test_parametrizing_triples_rejects_non_minimal():
    group = parse_group_spec("C5")
    a = group.element((1,))
    with pytest.raises(DomainError):
        parametrizing_triples(difference_product(a, a))


@pytest.mark.parametrize(
    "spec, minimum",
    [
        ("C2", 8),
        ("C3", 6),
        ("C4", 4),
        ("C2xC2", 4),
        ("C5", 4),
        ("C6", 4),
        ("C4xC2", 4),
    ]
)
def test_min_distance(spec, minimum):
    group = parse_group_spec(spec)
    assert min_distance(group) == minimum
    assert oracle_min_distance(canonical_basis(group)) == minimum


@pytest.mark.parametrize(
    "spec, r, minimum",
    [
        ("C6", 3, 4),
        ("C7", 2, 4),
        ("C7", 3, 6),
    ]
)
def test_min_distance_higher_powers(spec, r, minimum):
    assert min_distance(parse_group_spec(spec), r) == minimum


def test_short_vector_oracle():
    group = parse_group_spec("C3")
    lattice = canonical_basis(group)
    vectors = short_vector_oracle(lattice, 6)
    assert len(vectors) == 6
    assert all(v.norm_sq() == 6 for v in vectors)
    norms = [v.norm_sq() for v in short_vector_oracle(lattice, 24)]
    assert norms == sorted(norms)
    with pytest.raises(DomainError):
        short_vector_oracle(lattice, 0)


def test_short_vector_oracle_matches_enumeration():
    group = parse_group_spec("C6")
    found = {v.to_integers() for v in short_vector_oracle(canonical_basis(group), 4)}
    assert found == set(quadruple_oracle(group))


def test_small_group_min_vectors():
    group = parse_group_spec("C2")
    assert [v.to_integers() for v in min_vectors_any(group)] == [(-2, 2), (2, -2)]
    assert len(min_vectors_any(parse_group_spec("C3"))) == 6


def test_orbits():
    group = parse_group_spec("C7")
    assert len(orbits(sha_basis(group).vectors)) == group.order - 3
    assert len(orbits(single_orbit_basis(group).vectors)) == 1
    vectors = [mv.vector for mv in minimal_vectors(group)]
    assert sum(len(o) for o in orbits(vectors)) == len(vectors)
    assert all(len(o) == group.order for o in orbits(vectors))


def test_lattice_json():
    lattice = canonical_basis(parse_group_spec("C3"))
    data = lattice.to_json()
    assert data["group"] == "C3"
    assert data["power"] == 2
    assert data["basis"] == [[1, -2, 1], [2, -1, -1]]
    assert data["gram"] == [[6, 3], [3, 6]]
    assert lattice.determinant == 27

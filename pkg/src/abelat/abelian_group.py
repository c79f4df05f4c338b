import math
import re
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import multiset_permutations, partitions

from .errors import DomainError, GroupMismatchError, GroupSpecError
from .linalg import smith_invariants


class AbelianGroup:
    r"""
    Finite abelian group given by a chosen list of invariant factors :math:`C_{n_1} \times \dots \times C_{n_k}`.

    The group is identified with its presentation: ``AbelianGroup([4, 2])`` and ``AbelianGroup([2, 4])`` are distinct
    objects with different element orderings. Elements are mixed-radix tuples enumerated in lexicographic order, and
    the position of an element in :attr:`elements` is its canonical index. Every coefficient vector of the package is
    indexed by this order.

    :param invariant_factors: The cyclic factors, each at least 2. The empty list is the trivial group.
    """
    TRIVIAL_SPEC = "C1"
    SPEC_SEPARATOR = "x"

    def __init__(self, invariant_factors: Sequence[int] = ()):
        factors = tuple(int(f) for f in invariant_factors)
        for f in factors:
            if f < 2:
                raise DomainError(f"Invariant factors must be at least 2, got {factors}.")
        self._factors = factors

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        return self._factors

    @property
    def order(self) -> int:
        return math.prod(self._factors)

    @property
    def spec(self) -> str:
        if not self._factors:
            return self.TRIVIAL_SPEC
        return self.SPEC_SEPARATOR.join(f"C{n}" for n in self._factors)

    @cached_property
    def _coords(self) -> np.ndarray:
        return np.array(list(np.ndindex(*self._factors)), dtype=np.int64).reshape(self.order, len(self._factors))

    @cached_property
    def _strides(self) -> np.ndarray:
        strides = [math.prod(self._factors[i + 1:]) for i in range(len(self._factors))]
        return np.array(strides, dtype=np.int64)

    @cached_property
    def _moduli(self) -> np.ndarray:
        return np.array(self._factors, dtype=np.int64)

    def _index_of_coords(self, coords: np.ndarray) -> np.ndarray:
        if not self._factors:
            return np.zeros(coords.shape[:-1], dtype=np.int64)
        return (coords % self._moduli) @ self._strides

    @cached_property
    def mul_table(self) -> np.ndarray:
        r"""
        ``mul_table[i, j]`` is the canonical index of the product of the elements of indices ``i`` and ``j``.
        """
        c = self._coords
        return self._index_of_coords(c[:, None, :] + c[None, :, :])

    @cached_property
    def inverse_table(self) -> np.ndarray:
        return self._index_of_coords(-self._coords)

    @cached_property
    def elements(self) -> Tuple["GroupElement", ...]:
        return tuple(GroupElement(self, i) for i in range(self.order))

    @property
    def identity(self) -> "GroupElement":
        return self.elements[0]

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @cached_property
    def canonical_invariant_factors(self) -> Tuple[int, ...]:
        r"""
        Invariant factors of the isomorphism class, largest first, each one divisible by the next.
        Computed from the Smith normal form of the diagonal relation matrix.
        """
        if not self._factors:
            return ()
        diag = np.diag(np.array(self._factors, dtype=object))
        return tuple(sorted((d for d in smith_invariants(diag) if d > 1), reverse=True))

    @property
    def is_cyclic(self) -> bool:
        return len(self.canonical_invariant_factors) <= 1

    @property
    def is_elementary_abelian_2(self) -> bool:
        return all(f == 2 for f in self._factors)

    @property
    def has_odd_order(self) -> bool:
        return self.order % 2 == 1

    @property
    def factor_generators(self) -> Tuple["GroupElement", ...]:
        r"""
        The generators :math:`a_i` of the cyclic factors, in presentation order.
        """
        gens = []
        for i in range(len(self._factors)):
            coords = [0] * len(self._factors)
            coords[i] = 1
            gens.append(self.element(coords))
        return tuple(gens)

    def factor_subgroup(self, i: int) -> "Subgroup":
        return self.generated_subgroup([self.factor_generators[i]])

    def element(self, coords: Sequence[int]) -> "GroupElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self._factors):
            raise DomainError(f"Expected {len(self._factors)} coordinates for {self.spec}, got {coords}.")
        for c, n in zip(coords, self._factors):
            if not 0 <= c < n:
                raise DomainError(f"Coordinates {coords} out of range for {self.spec}.")
        index = int(self._index_of_coords(np.array(coords, dtype=np.int64)))
        return self.elements[index]

    def coords_of(self, index: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self._coords[index])

    def cyclic_generator(self) -> "GroupElement":
        r"""
        First element of full order in canonical order.

        :raises DomainError: if the group is not cyclic.
        """
        for g in self.elements:
            if g.order == self.order:
                return g
        raise DomainError(f"The group {self.spec} is not cyclic.")

    def generated_subgroup(self, generators: Iterable["GroupElement"]) -> "Subgroup":
        generators = list(generators)
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = x * g
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return Subgroup(self, members)

    def squares_subgroup(self) -> "Subgroup":
        r"""
        The subgroup :math:`S = \{a^2 : a \in A\}`, image of the squaring map.
        """
        return Subgroup(self, {g * g for g in self.elements})

    def torsion2_subgroup(self) -> "Subgroup":
        r"""
        The subgroup :math:`T = \{a : a^2 = 1\}`, kernel of the squaring map.
        """
        return Subgroup(self, {g for g in self.elements if (g * g).is_identity})

    def check_same(self, other: "AbelianGroup"):
        if self != other:
            raise GroupMismatchError(self.spec, getattr(other, "spec", other))

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self._factors == other._factors

    def __hash__(self):
        return hash(("AbelianGroup", self._factors))

    def __len__(self):
        return self.order

    def __iter__(self) -> Iterator["GroupElement"]:
        return iter(self.elements)

    def __repr__(self):
        return f"{self.__class__.__name__}({self.spec})"

    def __str__(self):
        return self.spec


class GroupElement:
    r"""
    Element of an :class:`AbelianGroup`, written multiplicatively. Stored by canonical index.
    """

    __slots__ = ("_group", "_index")

    def __init__(self, group: AbelianGroup, index: int):
        self._group = group
        self._index = int(index)

    @property
    def group(self) -> AbelianGroup:
        return self._group

    @property
    def index(self) -> int:
        return self._index

    @property
    def coords(self) -> Tuple[int, ...]:
        return self._group.coords_of(self._index)

    @property
    def is_identity(self) -> bool:
        return self._index == 0

    @property
    def order(self) -> int:
        return math.lcm(1, *(n // math.gcd(c, n) for c, n in zip(self.coords, self._group.invariant_factors)))

    def inverse(self) -> "GroupElement":
        return self._group.elements[int(self._group.inverse_table[self._index])]

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._group.check_same(other.group)
        return self._group.elements[int(self._group.mul_table[self._index, other.index])]

    def __pow__(self, k: int) -> "GroupElement":
        coords = np.array(self.coords, dtype=np.int64) * int(k)
        return self._group.elements[int(self._group._index_of_coords(coords))]

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self._index == other._index and self._group == other._group

    def __hash__(self):
        return hash((self._group, self._index))

    def __lt__(self, other: "GroupElement"):
        self._group.check_same(other.group)
        return self._index < other._index

    def __repr__(self):
        return f"{self.coords}"


class Subgroup:
    r"""
    Subgroup of an :class:`AbelianGroup`, stored as a set of elements. Closure, identity and Lagrange are checked on
    construction.
    """

    def __init__(self, parent: AbelianGroup, elements: Iterable[GroupElement]):
        self.parent = parent
        self._elements = frozenset(elements)
        self._check()

    def _check(self):
        for g in self._elements:
            self.parent.check_same(g.group)
        if self.parent.identity not in self._elements:
            raise DomainError(f"Subgroup of {self.parent.spec} must contain the identity.")
        for g in self._elements:
            if g.inverse() not in self._elements:
                raise DomainError(f"Subset of {self.parent.spec} is not closed under inverses ({g}).")
            for h in self._elements:
                if g * h not in self._elements:
                    raise DomainError(f"Subset of {self.parent.spec} is not closed under products ({g}, {h}).")
        if self.parent.order % len(self._elements) != 0:
            raise DomainError(f"Subgroup order {len(self._elements)} does not divide {self.parent.order}.")

    @property
    def elements(self) -> Tuple[GroupElement, ...]:
        return tuple(sorted(self._elements))

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def __contains__(self, item: GroupElement):
        return item in self._elements

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self._elements == other._elements

    def __hash__(self):
        return hash((self.parent, self._elements))

    def __repr__(self):
        return f"{self.__class__.__name__}(parent={self.parent.spec}, elements={list(self.elements)})"


_TERM_PATTERN = re.compile(r"^c(\d+)$")


def parse_group_spec(spec: str) -> AbelianGroup:
    r"""
    Parse ``C<n>`` terms joined by ``x`` (case-insensitive, whitespace tolerant).

    The literal ``C1`` denotes the trivial group and must appear alone. The factor list is kept as given.

    :param spec: Text such as ``"C4xC2"``.
    :return: The group with the listed factors in order.
    :rtype: AbelianGroup
    :raises GroupSpecError: naming the offending token.
    """
    if not isinstance(spec, str):
        raise GroupSpecError(str(spec), str(spec), "expected text")
    text = re.sub(r"\s+", "", spec).lower()
    if not text:
        raise GroupSpecError(spec, "", "empty spec")
    tokens = text.split(AbelianGroup.SPEC_SEPARATOR)
    factors = []
    for token in tokens:
        match = _TERM_PATTERN.match(token)
        if match is None:
            raise GroupSpecError(spec, token)
        n = int(match.group(1))
        if n < 1:
            raise GroupSpecError(spec, token, "factor must be at least 1")
        if n == 1:
            if len(tokens) > 1:
                raise GroupSpecError(spec, token, "C1 must appear alone")
            return AbelianGroup(())
        factors.append(n)
    return AbelianGroup(factors)


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def squares_subgroup(group: AbelianGroup) -> Subgroup:
    return group.squares_subgroup()


def torsion2_subgroup(group: AbelianGroup) -> Subgroup:
    return group.torsion2_subgroup()


def enumerate_elements(group: AbelianGroup) -> List[GroupElement]:
    r"""
    All elements in lexicographic mixed-radix order. The position in this list is the canonical index.
    """
    return list(group.elements)


def abelian_group_types(order: int) -> List[Tuple[int, ...]]:
    r"""
    Isomorphism types of abelian groups of a given order, one per choice of partitions of the prime exponents.

    :param order: Positive integer.
    :return: Invariant factor lists, largest factor first, each divisible by the next. Order 1 gives ``[()]``.
    """
    if order < 1:
        raise DomainError(f"Group order must be positive, got {order}.")
    per_prime = []
    for p, e in sorted(factorint(order).items()):
        choices = []
        for part in partitions(e):
            exponents = sorted((k for k, mult in part.items() for _ in range(mult)), reverse=True)
            choices.append([p ** k for k in exponents])
        per_prime.append(choices)
    types = set()
    for combo in product(*per_prime):
        length = max((len(powers) for powers in combo), default=0)
        factors = tuple(
            math.prod(powers[i] for powers in combo if i < len(powers))
            for i in range(length)
        )
        types.add(factors)
    return sorted(types, key=lambda t: (len(t), [-f for f in t]))


def primary_factors(invariant_factors: Sequence[int]) -> Tuple[int, ...]:
    r"""
    Prime power decomposition of a list of cyclic factors, sorted increasingly.
    """
    powers = []
    for n in invariant_factors:
        powers.extend(p ** e for p, e in factorint(n).items())
    return tuple(sorted(powers))


def presentations(invariant_factors: Sequence[int], all_orderings: bool = True) -> List[Tuple[int, ...]]:
    r"""
    Presentations of one isomorphism type: the given list first, then every distinct ordering of the invariant and
    of the primary decomposition when ``all_orderings`` is set.
    """
    base = tuple(invariant_factors)
    out = [base]
    if not all_orderings:
        return out
    for factors in (base, primary_factors(base)):
        for perm in multiset_permutations(list(factors)):
            perm = tuple(perm)
            if perm not in out:
                out.append(perm)
    return out


def groups_up_to(max_order: int, min_order: int = 1, all_presentations: bool = False) -> List[AbelianGroup]:
    groups = []
    for n in range(min_order, max_order + 1):
        for factors in abelian_group_types(n):
            for pres in presentations(factors, all_orderings=all_presentations):
                groups.append(AbelianGroup(pres))
    return groups

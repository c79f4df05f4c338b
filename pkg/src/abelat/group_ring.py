r"""
Exact arithmetic in the group rings :math:`\mathbb{Z}A \subset \mathbb{Q}A` of a finite abelian group.

Elements are dense coefficient vectors of :class:`fractions.Fraction` indexed by the canonical element order of the
group.
"""
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

import numpy as np

from .abelian_group import AbelianGroup, GroupElement, Subgroup, parse_group_spec
from .errors import DomainError, GroupMismatchError
from .utils import format_fraction, parse_fraction

Scalar = Union[int, Fraction]


class GroupRingElement:
    r"""
    Element :math:`\sum_a r_a a` of :math:`\mathbb{Q}A`.

    :param group: The group :math:`A`.
    :param coeffs: The :math:`|A|` coefficients in canonical element order.
    """

    __slots__ = ("_group", "_coeffs")

    def __init__(self, group: AbelianGroup, coeffs: Iterable[Scalar]):
        self._group = group
        self._coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self._coeffs) != group.order:
            raise DomainError(f"Expected {group.order} coefficients for {group.spec}, got {len(self._coeffs)}.")

    @classmethod
    def zero(cls, group: AbelianGroup) -> "GroupRingElement":
        return cls(group, [0] * group.order)

    @classmethod
    def one(cls, group: AbelianGroup) -> "GroupRingElement":
        return cls.from_element(group.identity)

    @classmethod
    def from_element(cls, g: GroupElement, coeff: Scalar = 1) -> "GroupRingElement":
        coeffs = [0] * g.group.order
        coeffs[g.index] = coeff
        return cls(g.group, coeffs)

    @classmethod
    def from_terms(cls, group: AbelianGroup, terms: Mapping[GroupElement, Scalar]) -> "GroupRingElement":
        coeffs = [Fraction(0)] * group.order
        for g, c in terms.items():
            group.check_same(g.group)
            coeffs[g.index] += Fraction(c)
        return cls(group, coeffs)

    @classmethod
    def delta(cls, g: GroupElement) -> "GroupRingElement":
        r"""
        The element :math:`g - 1` of the augmentation ideal.
        """
        return cls.from_element(g) - cls.one(g.group)

    @property
    def group(self) -> AbelianGroup:
        return self._group

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def coeff(self, g: GroupElement) -> Fraction:
        return self._coeffs[g.index]

    def support(self) -> Dict[GroupElement, Fraction]:
        return {self._group.elements[i]: c for i, c in enumerate(self._coeffs) if c}

    def to_integers(self) -> Tuple[int, ...]:
        if not self.is_integral:
            raise DomainError(f"{self!r} is not integral.")
        return tuple(int(c) for c in self._coeffs)

    def to_column(self) -> np.ndarray:
        return np.array(self._coeffs, dtype=object)

    def _check_group(self, other: "GroupRingElement"):
        if self._group != other.group:
            raise GroupMismatchError(self._group.spec, other.group.spec)

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_group(other)
        return GroupRingElement(self._group, [x + y for x, y in zip(self._coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_group(other)
        return GroupRingElement(self._group, [x - y for x, y in zip(self._coeffs, other.coeffs)])

    def __neg__(self):
        return GroupRingElement(self._group, [-x for x in self._coeffs])

    def scale(self, q: Scalar) -> "GroupRingElement":
        q = Fraction(q)
        return GroupRingElement(self._group, [q * x for x in self._coeffs])

    def translate(self, g: GroupElement) -> "GroupRingElement":
        r"""
        The product :math:`x \cdot g`, a permutation of coefficients.
        """
        self._group.check_same(g.group)
        table = self._group.mul_table[:, g.index]
        coeffs = [Fraction(0)] * self._group.order
        for i, c in enumerate(self._coeffs):
            coeffs[int(table[i])] = c
        return GroupRingElement(self._group, coeffs)

    def __mul__(self, other):
        if isinstance(other, GroupRingElement):
            self._check_group(other)
            table = self._group.mul_table
            coeffs = [Fraction(0)] * self._group.order
            other_support = [(j, y) for j, y in enumerate(other.coeffs) if y]
            for i, x in enumerate(self._coeffs):
                if not x:
                    continue
                row = table[i]
                for j, y in other_support:
                    coeffs[int(row[j])] += x * y
            return GroupRingElement(self._group, coeffs)
        if isinstance(other, GroupElement):
            return self.translate(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (GroupElement, int, Fraction)):
            # the group is abelian
            return self.__mul__(other)
        return NotImplemented

    def involution(self) -> "GroupRingElement":
        r"""
        :math:`(\sum r_g g)^* = \sum r_g g^{-1}`.
        """
        inv = self._group.inverse_table
        coeffs = [Fraction(0)] * self._group.order
        for i, c in enumerate(self._coeffs):
            coeffs[int(inv[i])] = c
        return GroupRingElement(self._group, coeffs)

    def augmentation(self) -> Fraction:
        return sum(self._coeffs, Fraction(0))

    def psi(self) -> GroupElement:
        r"""
        Evaluate :math:`\psi_A(\sum k_a a) = \prod a^{k_a}` in :math:`A`.

        :raises DomainError: if some coefficient is not an integer.
        """
        if not self.is_integral:
            raise DomainError(f"psi is only defined on integral elements, got {self!r}.")
        result = self._group.identity
        for g, k in self.support().items():
            result = result * g ** int(k)
        return result

    def inner(self, other: "GroupRingElement") -> Fraction:
        self._check_group(other)
        return sum((x * y for x, y in zip(self._coeffs, other.coeffs)), Fraction(0))

    def norm_sq(self) -> Fraction:
        return self.inner(self)

    def left_multiplication_matrix(self) -> np.ndarray:
        r"""
        Matrix of :math:`r \mapsto x r` on coefficient columns in canonical order: column ``k`` is the element
        :math:`x \cdot k`.
        """
        n = self._group.order
        mat = np.full((n, n), Fraction(0), dtype=object)
        table = self._group.mul_table
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            for k in range(n):
                mat[int(table[i, k]), k] = c
        return mat

    def to_json(self) -> dict:
        return {"group": self._group.spec, "coeffs": [format_fraction(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "GroupRingElement":
        group = parse_group_spec(data["group"])
        return cls(group, [parse_fraction(c) for c in data["coeffs"]])

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._group == other.group and self._coeffs == other.coeffs

    def __hash__(self):
        return hash((self._group, self._coeffs))

    def __repr__(self):
        terms = []
        for g, c in self.support().items():
            terms.append(f"{c}*{g}")
        body = " + ".join(terms) if terms else "0"
        return f"{self.__class__.__name__}({self._group.spec}: {body})"


class Idempotent(GroupRingElement):
    r"""
    The idempotent :math:`e_B = \frac{1}{|B|}\sum_{b \in B} b` of a subgroup :math:`B`, embedded in :math:`\mathbb{Q}A`.
    """

    __slots__ = ("subgroup",)

    def __init__(self, subgroup: Subgroup):
        coeffs = [Fraction(0)] * subgroup.parent.order
        for b in subgroup:
            coeffs[b.index] = Fraction(1, subgroup.order)
        super().__init__(subgroup.parent, coeffs)
        self.subgroup = subgroup


def idempotent(subgroup: Subgroup) -> Idempotent:
    return Idempotent(subgroup)


def whole_group_idempotent(group: AbelianGroup) -> Idempotent:
    return Idempotent(Subgroup(group, group.elements))


def complement_projection(subgroup: Subgroup) -> GroupRingElement:
    r"""
    The element :math:`1 - e_B`.
    """
    return GroupRingElement.one(subgroup.parent) - idempotent(subgroup)


def difference_product(a: GroupElement, b: GroupElement) -> GroupRingElement:
    r"""
    The product :math:`m(a, b) = (a-1)(b-1) = ab - a - b + 1`.
    """
    a.group.check_same(b.group)
    group = a.group
    coeffs = [0] * group.order
    coeffs[(a * b).index] += 1
    coeffs[a.index] -= 1
    coeffs[b.index] -= 1
    coeffs[group.identity.index] += 1
    return GroupRingElement(group, coeffs)


def add(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x + y


def sub(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x - y


def scale(x: GroupRingElement, q: Scalar) -> GroupRingElement:
    return x.scale(q)


def mul(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x * y


def involution(x: GroupRingElement) -> GroupRingElement:
    return x.involution()


def augmentation(x: GroupRingElement) -> Fraction:
    return x.augmentation()


def psi(x: GroupRingElement) -> GroupElement:
    return x.psi()


def inner(x: GroupRingElement, y: GroupRingElement) -> Fraction:
    return x.inner(y)


def norm_sq(x: GroupRingElement) -> Fraction:
    return x.norm_sq()

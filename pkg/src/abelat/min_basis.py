r"""
Bases of :math:`L(A)` made of minimal vectors.

Every construction checks its own output: squared norms against the minimum of the lattice and unimodularity
against :func:`abelat.lattice.canonical_basis`.
"""
from typing import List, Optional, Sequence, Set

import numpy as np
from sympy import totient

from .abelian_group import AbelianGroup, GroupElement
from .errors import ConsistencyError, DomainError, NoMinimalBasisError
from .group_ring import GroupRingElement, difference_product
from .lattice import LatticeDescription, canonical_basis, canonical_pairs, membership, min_distance, orbits
from . import linalg


class MinimalBasis:
    r"""
    A verified basis of :math:`L(A)`.

    :param group: The group :math:`A`.
    :param vectors: The :math:`|A|-1` basis vectors.
    :param construction: One of :attr:`CONSTRUCTIONS`.
    :param strategy: Replacement strategy for the ``general`` construction.
    """
    GENERAL = "general"
    SHA = "sha"
    SINGLE_ORBIT = "single_orbit"
    SMALL_GROUP = "small_group"
    CONSTRUCTIONS = (GENERAL, SHA, SINGLE_ORBIT, SMALL_GROUP)

    def __init__(
            self,
            group: AbelianGroup,
            vectors: Sequence[GroupRingElement],
            construction: str,
            strategy: Optional[str] = None,
    ):
        if construction not in self.CONSTRUCTIONS:
            raise ValueError(f"Unknown construction {construction!r}, expected one of {self.CONSTRUCTIONS}.")
        self.group = group
        self.vectors = tuple(vectors)
        self.construction = construction
        self.strategy = strategy
        self.lattice = LatticeDescription(group, self.vectors, power=2)
        self.reference = canonical_basis(group, 2)
        self.change_matrix = change_of_basis_matrix(self.vectors, self.reference)
        self.determinant = int(linalg.determinant(self.change_matrix))

    @property
    def norms(self) -> List[int]:
        return [int(v.norm_sq()) for v in self.vectors]

    @property
    def unimodular(self) -> bool:
        return abs(self.determinant) == 1

    @property
    def is_minimal(self) -> bool:
        minimum = min_distance(self.group, 2)
        return all(n == minimum for n in self.norms)

    @property
    def orbit_count(self) -> int:
        return len(orbits(self.vectors))

    def check(self, require_minimal: bool = True) -> "MinimalBasis":
        if not self.unimodular:
            raise ConsistencyError(
                f"The {self.construction} basis of {self.group.spec} has change of basis determinant "
                f"{self.determinant}."
            )
        if require_minimal and not self.is_minimal:
            raise ConsistencyError(f"The {self.construction} basis of {self.group.spec} has norms {self.norms}.")
        return self

    def to_json(self) -> dict:
        data = self.lattice.to_json()
        data.update({
            "construction": self.construction,
            "norms": self.norms,
            "unimodular": self.unimodular,
            "is_minimal": self.is_minimal,
        })
        if self.strategy is not None:
            data["strategy"] = self.strategy
        return data

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __repr__(self):
        return f"{self.__class__.__name__}(group={self.group.spec}, construction={self.construction})"


def change_of_basis_matrix(candidate: Sequence[GroupRingElement], reference: LatticeDescription) -> np.ndarray:
    r"""
    The integer matrix ``X`` with ``X @ B = C``, ``B`` and ``C`` holding the reference and candidate vectors as rows.

    Solved exactly from the normal equations :math:`G X^T = B C^T` with the Gram matrix ``G`` of the reference.

    :raises DomainError: if the counts differ, a candidate is not in the lattice, or the solution is not integral.
    """
    candidate = list(candidate)
    if len(candidate) != reference.rank:
        raise DomainError(f"Expected {reference.rank} vectors, got {len(candidate)}.")
    for v in candidate:
        reference.group.check_same(v.group)
        if reference.power == 2 and not membership(v):
            raise DomainError(f"{v!r} is not in the lattice of {reference.group.spec}.")
    basis = reference.basis_matrix
    cand = np.array([v.to_integers() for v in candidate], dtype=object).reshape(len(candidate), reference.group.order)
    x = linalg.solve(reference.gram, basis @ cand.T).T
    if not np.array_equal(x @ basis, cand):
        raise DomainError(f"The candidate vectors are not in the span of the lattice of {reference.group.spec}.")
    if not linalg.is_integral(x):
        raise DomainError(f"The candidate vectors are not in the lattice of {reference.group.spec}.")
    return np.array([[int(c) for c in row] for row in x], dtype=object).reshape(x.shape)


def verify_unimodular(candidate: Sequence[GroupRingElement], reference: LatticeDescription) -> bool:
    r"""
    Whether ``candidate`` is a basis of the lattice spanned by ``reference``.

    :return: True iff the change of basis matrix has determinant :math:`\pm 1`.
    """
    return abs(linalg.determinant(change_of_basis_matrix(candidate, reference))) == 1


def small_group_basis(group: AbelianGroup) -> MinimalBasis:
    r"""
    For :math:`|A| \in \{2, 3\}` the canonical basis already consists of vectors of squared norm 8, resp. 6.
    """
    if group.order not in (2, 3):
        raise DomainError(f"The small group construction needs |A| in (2, 3), got {group.spec}.")
    return MinimalBasis(group, canonical_basis(group, 2).basis, MinimalBasis.SMALL_GROUP).check()


class _Replacer:
    r"""
    Canonical basis of :math:`(\Delta A)^2` labelled by its pairs, with the replacements of the general construction.
    Replacements only ever use unmodified vectors, so every step is an elementary unimodular operation.
    """

    def __init__(self, group: AbelianGroup):
        self.group = group
        self.pairs = canonical_pairs(group)
        self.vectors = [difference_product(x, y) for x, y in self.pairs]
        self.modified: Set[int] = set()

    def position(self, x: GroupElement, y: GroupElement) -> int:
        target = difference_product(x, y)
        for i, v in enumerate(self.vectors):
            if i not in self.modified and v == target:
                return i
        return -1

    def is_available(self, a: GroupElement, b: GroupElement, forbidden: Sequence[GroupElement]) -> bool:
        return b not in forbidden and self.position(a, b) >= 0

    def pick(
            self, a: GroupElement, factor: int, forbidden: Sequence[GroupElement], preferred: Sequence[int]
    ) -> GroupElement:
        r"""
        Element :math:`b` for the replacement at factor ``factor`` with generator ``a``: the listed powers of ``a``
        first, then the smallest valid element of the next factor, cyclically.
        """
        for k in preferred:
            b = a ** k
            if self.is_available(a, b, forbidden):
                return b
        n_factors = len(self.group.invariant_factors)
        for step in range(1, n_factors + 1):
            j = (factor + step) % n_factors
            if j == factor:
                continue
            for b in sorted(self.group.factor_subgroup(j).elements[1:]):
                if self.is_available(a, b, forbidden):
                    return b
        raise ConsistencyError(f"No replacement element for {a} in {self.group.spec}.")

    def replace(self, old: GroupRingElement, new: GroupRingElement, w: GroupRingElement, sign: int):
        r"""
        Replace ``old`` by ``new`` after checking ``new == sign * old + w`` exactly, or ``new == old - w`` when
        ``sign`` is 0.
        """
        expected = old - w if sign == 0 else old.scale(sign) + w
        if new != expected:
            raise ConsistencyError(f"Replacement identity failed: {new!r} != {expected!r}.")
        i = next((i for i, v in enumerate(self.vectors) if i not in self.modified and v == old), -1)
        if i < 0:
            raise ConsistencyError(f"{old!r} is not an unmodified basis vector.")
        self.vectors[i] = new
        self.modified.add(i)


def replacement_square(a: GroupElement, b: GroupElement) -> GroupRingElement:
    r"""
    The element :math:`(a-1)(b-a) = (a-1)(b-1) - (a-1)^2`.
    """
    return GroupRingElement.delta(a) * (GroupRingElement.from_element(b) - GroupRingElement.from_element(a))


def replacement_inverse_square(a: GroupElement) -> GroupRingElement:
    r"""
    The element :math:`(a^{-1}-1)(a^2-1) = (a-1)(a^{-1}-1) - (a-1)^2`.
    """
    return difference_product(a.inverse(), a ** 2)


def replacement_inverse(a: GroupElement, b: GroupElement) -> GroupRingElement:
    r"""
    The element :math:`(a^{-1}-1)(ab-1) = (a-1)(a^{-1}-1) - (a-1)(b-1)`.
    """
    return difference_product(a.inverse(), a * b)


def general_min_basis(group: AbelianGroup, strategy: str = "difference") -> MinimalBasis:
    r"""
    Basis of :math:`L(A)` of vectors of squared norm 4 for :math:`|A| > 4` and :math:`C_2 \times C_2`.

    Starting from the canonical basis, for each factor generator :math:`a` of order :math:`n_a`:

    - :math:`(a-1)^2` is replaced by :math:`(a-1)(b-a)` with :math:`b \notin \{1, a^{\pm 1}, a^2\}` (``difference``),
      or by :math:`(a^{-1}-1)(a^2-1)` when :math:`n_a \ge 4` (``inverse``);
    - when :math:`n_a \ge 3`, :math:`(a-1)(a^{-1}-1)` is replaced by :math:`(a^{-1}-1)(ab-1)` with
      :math:`b \notin \{1, a^{\pm 1}, a^{-2}\}`;

    where :math:`(a-1)(b-1)` is always an unmodified basis vector. Groups of order 2 and 3 get
    :func:`small_group_basis`.

    :param group: The group.
    :param strategy: "difference" or "inverse".
    :raises NoMinimalBasisError: for :math:`C_4`.
    """
    if strategy not in ("difference", "inverse"):
        raise ValueError(f"Unknown strategy {strategy!r}, expected 'difference' or 'inverse'.")
    if group.is_trivial:
        raise DomainError(f"The lattice of the trivial group {group.spec} is empty.")
    if group.order <= 3:
        return small_group_basis(group)
    if group.order == 4 and group.is_cyclic:
        raise NoMinimalBasisError(f"L({group.spec}) has only four vectors of minimal length 2 and no basis of them.")
    basis = _Replacer(group)
    for i, (a, n) in enumerate(zip(group.factor_generators, group.invariant_factors)):
        square = difference_product(a, a)
        if strategy == "inverse" and n >= 4:
            basis.replace(square, replacement_inverse_square(a), difference_product(a, a.inverse()), -1)
        else:
            b = basis.pick(a, i, [group.identity, a, a.inverse(), a ** 2], [3] if n >= 5 else [])
            basis.replace(square, replacement_square(a, b), difference_product(a, b), -1)
        if n >= 3:
            preferred = ([2, 3] if strategy == "inverse" else [3, 2]) if n >= 5 else []
            b = basis.pick(a, i, [group.identity, a, a.inverse(), a.inverse() ** 2], preferred)
            basis.replace(difference_product(a, a.inverse()), replacement_inverse(a, b), difference_product(a, b), 0)
    return MinimalBasis(group, basis.vectors, MinimalBasis.GENERAL, strategy=strategy).check()


def sha_basis(group: AbelianGroup) -> MinimalBasis:
    r"""
    :math:`\{(a-1)(a^k-1) : 2 \le k \le n-2\} \cup \{(a^{-1}-1)(a^2-1), (a^{-1}-1)(a^3-1)\}` for a cyclic group of order
    :math:`n \ge 5` generated by :math:`a`.
    """
    if not group.is_cyclic or group.order < 5:
        raise DomainError(f"This basis needs a cyclic group of order at least 5, got {group.spec}.")
    a = group.cyclic_generator()
    vectors = [difference_product(a, a ** k) for k in range(2, group.order - 1)]
    vectors += [difference_product(a.inverse(), a ** 2), difference_product(a.inverse(), a ** 3)]
    return MinimalBasis(group, vectors, MinimalBasis.SHA).check()


def _is_generator(g: GroupElement) -> bool:
    return g.order == g.group.order


def default_orbit_elements(group: AbelianGroup):
    r"""
    Default ``(a, b)`` for :func:`single_orbit_basis`: ``a`` is the first generator, ``b = a^2`` for odd orders,
    otherwise the first generator other than :math:`a^{\pm 1}`, which exists iff :math:`\varphi(n) > 2`, and ``a``
    as a last resort.
    """
    a = group.cyclic_generator()
    if group.order % 2 == 1:
        return a, a ** 2
    if int(totient(group.order)) > 2:
        for b in group.elements:
            if _is_generator(b) and b != a and b != a.inverse():
                return a, b
    return a, a


def single_orbit_basis(
        group: AbelianGroup,
        a: Optional[GroupElement] = None,
        b: Optional[GroupElement] = None,
) -> MinimalBasis:
    r"""
    The translates :math:`(a-1)(b-1)a^k`, :math:`0 \le k \le n-2`, for generators :math:`a, b` of a cyclic group.
    All of them have squared norm 4 iff :math:`b \ne a^{\pm 1}`; the basis is returned in any case and flagged by
    :attr:`MinimalBasis.is_minimal`.

    :raises DomainError: if the group is not cyclic or ``a``, ``b`` are not generators.
    """
    if not group.is_cyclic or group.is_trivial:
        raise DomainError(f"This basis needs a nontrivial cyclic group, got {group.spec}.")
    default_a, default_b = default_orbit_elements(group)
    if a is None:
        a = default_a
        b = default_b if b is None else b
    elif b is None:
        b = a ** 2 if group.order % 2 == 1 else a
    for g in (a, b):
        group.check_same(g.group)
        if not _is_generator(g):
            raise DomainError(f"{g} does not generate {group.spec}.")
    m = difference_product(a, b)
    vectors = [m.translate(a ** k) for k in range(group.order - 1)]
    return MinimalBasis(group, vectors, MinimalBasis.SINGLE_ORBIT).check(require_minimal=False)


def min_basis(group: AbelianGroup, construction: str = "general", strategy: str = "difference") -> MinimalBasis:
    r"""
    Dispatch on the construction name: "general", "sha", "orbit" (or "single_orbit") and "small_group".
    """
    if construction == MinimalBasis.GENERAL:
        return general_min_basis(group, strategy=strategy)
    if construction == MinimalBasis.SHA:
        return sha_basis(group)
    if construction in ("orbit", MinimalBasis.SINGLE_ORBIT):
        return single_orbit_basis(group)
    if construction == MinimalBasis.SMALL_GROUP:
        return small_group_basis(group)
    raise ValueError(f"Unknown construction {construction!r}.")

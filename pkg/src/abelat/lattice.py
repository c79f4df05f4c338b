r"""
The lattices :math:`\Delta A` and :math:`L(A) = (\Delta A)^2 = \operatorname{Ker}\psi_A \cap \Delta A`
with explicit bases, their minimal vectors and independent brute-force oracles.
"""
import math
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .abelian_group import AbelianGroup, GroupElement
from .errors import ConsistencyError, DomainError
from .group_ring import GroupRingElement, difference_product
from . import linalg

Triple = Tuple[GroupElement, GroupElement, GroupElement]


class LatticeDescription:
    r"""
    A lattice inside :math:`\mathbb{Z}A` given by an ordered basis, with its Gram matrix.

    :param group: The group :math:`A`.
    :param basis: Integral basis vectors.
    :param power: ``r`` for :math:`(\Delta A)^r`.
    :param check: Verify that the Gram matrix is positive definite.
    """

    def __init__(self, group: AbelianGroup, basis: Sequence[GroupRingElement], power: int = 2, check: bool = True):
        self.group = group
        self.basis = tuple(basis)
        self.power = int(power)
        for v in self.basis:
            group.check_same(v.group)
            if not v.is_integral:
                raise DomainError(f"Lattice basis vectors must be integral, got {v!r}.")
        self.gram = np.array(
            [[int(u.inner(v)) for v in self.basis] for u in self.basis], dtype=object
        ).reshape(len(self.basis), len(self.basis))
        if check and not linalg.is_positive_definite(self.gram):
            raise DomainError(f"Basis of the lattice of {group.spec} is not linearly independent.")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def basis_matrix(self) -> np.ndarray:
        r"""
        Basis vectors as rows of an integer matrix of shape ``(rank, |A|)``.
        """
        return np.array([v.to_integers() for v in self.basis], dtype=object).reshape(self.rank, self.group.order)

    @property
    def determinant(self) -> int:
        return int(linalg.determinant(self.gram))

    def combination(self, coords: Sequence[int]) -> GroupRingElement:
        coeffs = np.array([int(c) for c in coords], dtype=object) @ self.basis_matrix
        return GroupRingElement(self.group, list(coeffs))

    def gram_text(self) -> str:
        r"""
        Whitespace separated Gram matrix, one row per line.
        """
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self.gram) + "\n"

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "power": self.power,
            "basis": [list(v.to_integers()) for v in self.basis],
            "gram": [[int(x) for x in row] for row in self.gram],
        }

    def __repr__(self):
        return f"{self.__class__.__name__}(group={self.group.spec}, power={self.power}, rank={self.rank})"


class OmegaPair:
    r"""
    Pair :math:`(a, b)` with :math:`a \neq 1 \neq b \neq a^{\pm 1}`.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: GroupElement, b: GroupElement):
        a.group.check_same(b.group)
        if a.is_identity or b.is_identity or b == a or b == a.inverse():
            raise DomainError(f"({a}, {b}) is not an Omega pair.")
        self.a = a
        self.b = b

    @property
    def key(self) -> Tuple[int, int]:
        return self.a.index, self.b.index

    @property
    def m(self) -> GroupRingElement:
        return difference_product(self.a, self.b)

    def __iter__(self):
        return iter((self.a, self.b))

    def __eq__(self, other):
        return isinstance(other, OmegaPair) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other: "OmegaPair"):
        return self.key < other.key

    def __repr__(self):
        return f"{self.__class__.__name__}({self.a}, {self.b})"


class MinimalVector:
    r"""
    A vector of squared norm 4 in :math:`L(A)` together with its four parametrizing triples :math:`(a, b, g)`,
    :math:`v = (a-1)(b-1)g`, sorted so that the first one is the canonical representative.
    """

    def __init__(self, vector: GroupRingElement, triples: Sequence[Triple]):
        self.vector = vector
        self.triples = tuple(sorted(triples, key=lambda t: (t[0].index, t[1].index, t[2].index)))
        if len(self.triples) != 4:
            raise ConsistencyError(f"{vector!r} has {len(self.triples)} parametrizing triples instead of 4.")

    @property
    def key(self) -> Tuple[int, ...]:
        return self.vector.to_integers()

    @property
    def representative(self) -> Triple:
        return self.triples[0]

    def __eq__(self, other):
        return isinstance(other, MinimalVector) and self.vector == other.vector

    def __hash__(self):
        return hash(self.vector)

    def __repr__(self):
        a, b, g = self.representative
        return f"{self.__class__.__name__}(({a}-1)({b}-1){g})"


def canonical_pairs(group: AbelianGroup) -> List[Tuple[GroupElement, GroupElement]]:
    r"""
    Pairs :math:`(x, y)` whose products :math:`(x-1)(y-1)` form the canonical basis of :math:`(\Delta A)^2`.

    Each cyclic factor :math:`\langle a_i \rangle` contributes :math:`(a_i, a_i^k)`, k = 1..n_i-1, and each step of the
    direct product recursion appends the cross terms :math:`(x, c)` with :math:`x \ne 1` in the group built so far
    and :math:`1 \ne c` in the next factor, in lexicographic order.
    """
    pairs = []
    built: List[GroupElement] = [group.identity]
    for a, n in zip(group.factor_generators, group.invariant_factors):
        factor = [a ** k for k in range(1, n)]
        pairs.extend((a, c) for c in factor)
        if len(built) > 1:
            pairs.extend((x, c) for x in sorted(built[1:]) for c in sorted(factor))
        built = [x * c for x in built for c in [group.identity] + factor]
    return pairs


def canonical_basis(group: AbelianGroup, r: int = 2) -> LatticeDescription:
    r"""
    Canonical basis of :math:`(\Delta A)^r`.

    - r = 1: :math:`\{a - 1 : a \ne 1\}`.
    - r = 2: cyclic bases :math:`(a_i-1)(a_i^k-1)` assembled with the direct product recursion, see
      :func:`canonical_pairs`.
    - r > 2: cyclic groups only, :math:`(a-1)^{r-1}(a^k - 1)`, k = 1..n-1.

    :raises DomainError: for the trivial group, r < 1, or r > 2 on a non-cyclic group.
    """
    if group.is_trivial:
        raise DomainError(f"The lattice of the trivial group {group.spec} is empty.")
    if r < 1:
        raise DomainError(f"Power must be at least 1, got {r}.")
    if r == 1:
        basis = [GroupRingElement.delta(g) for g in group.elements[1:]]
    elif r == 2:
        basis = [difference_product(x, y) for x, y in canonical_pairs(group)]
    else:
        if not group.is_cyclic:
            raise DomainError(f"Powers r > 2 are only constructed for cyclic groups, got {group.spec} and r={r}.")
        a = group.cyclic_generator()
        da = GroupRingElement.delta(a)
        head = GroupRingElement.one(group)
        for _ in range(r - 1):
            head = head * da
        basis = [head * GroupRingElement.delta(a ** k) for k in range(1, group.order)]
    return LatticeDescription(group, basis, power=r)


def membership(x: GroupRingElement, group: Optional[AbelianGroup] = None) -> bool:
    r"""
    Whether ``x`` lies in :math:`L(A) = \operatorname{Ker}\psi_A \cap \Delta A`.
    """
    if group is not None:
        group.check_same(x.group)
    if not x.is_integral:
        return False
    return x.augmentation() == 0 and x.psi().is_identity


def congruence_representative(d: GroupRingElement) -> GroupRingElement:
    r"""
    The element :math:`d - (\psi_A(d) - 1)`, which lies in :math:`(\Delta A)^2` for every integral
    :math:`d \in \Delta A`.
    """
    if not d.is_integral or d.augmentation() != 0:
        raise DomainError(f"Expected an integral element of augmentation 0, got {d!r}.")
    return d - GroupRingElement.delta(d.psi())


def check_rewriting_identities(a: GroupElement, b: GroupElement) -> bool:
    r"""
    Check :math:`(a-1)+(b-1) = (ab-1) - (a-1)(b-1)` and
    :math:`(a-1)-(b-1) = (ab^{-1}-1) - (a-b)(b^{-1}-1)` exactly.

    :raises ConsistencyError: if either side differs.
    """
    delta = GroupRingElement.delta
    if delta(a) + delta(b) != delta(a * b) - difference_product(a, b):
        raise ConsistencyError(f"(a-1)+(b-1) rewriting fails for a={a}, b={b}.")
    diff = GroupRingElement.from_element(a) - GroupRingElement.from_element(b)
    if delta(a) - delta(b) != delta(a * b.inverse()) - diff * delta(b.inverse()):
        raise ConsistencyError(f"(a-1)-(b-1) rewriting fails for a={a}, b={b}.")
    return True


def augmentation_coordinates(lattice: LatticeDescription) -> np.ndarray:
    r"""
    Coordinates of the basis of ``lattice`` in the basis :math:`\{g - 1 : g \ne 1\}` of :math:`\Delta A`. For an element
    of augmentation zero these are its coefficients at the non-identity elements.
    """
    for v in lattice.basis:
        if v.augmentation() != 0:
            raise DomainError(f"{v!r} is not in the augmentation ideal.")
    return lattice.basis_matrix[:, 1:]


def augmentation_quotient_invariants(group: AbelianGroup) -> Tuple[int, ...]:
    r"""
    Nontrivial Smith invariants, largest first, of :math:`\Delta A / (\Delta A)^2`. Their product is the index
    :math:`[\Delta A : (\Delta A)^2]`.
    """
    coords = augmentation_coordinates(canonical_basis(group, 2))
    return tuple(sorted((d for d in linalg.smith_invariants(coords) if d != 1), reverse=True))


def augmentation_index(group: AbelianGroup) -> int:
    return math.prod(augmentation_quotient_invariants(group))


def product_norm_sq(a: GroupElement, b: GroupElement) -> int:
    r"""
    Closed form of :math:`\|(a-1)(b-1)\|^2` for :math:`a \ne 1 \ne b`: 8 when :math:`a = b = a^{-1}`, 6 when
    :math:`a = b^{\pm 1}` but :math:`a^2 \ne 1`, and 4 otherwise.
    """
    if a.is_identity or b.is_identity:
        raise DomainError(f"Expected a != 1 != b, got ({a}, {b}).")
    if b == a and (a * a).is_identity:
        return 8
    if b == a or b == a.inverse():
        return 6
    return 4


def omega_pairs(group: AbelianGroup) -> List[OmegaPair]:
    pairs = []
    for a in group.elements[1:]:
        a_inv = a.inverse()
        for b in group.elements[1:]:
            if b != a and b != a_inv:
                pairs.append(OmegaPair(a, b))
    return pairs


def parametrizing_triples(v: GroupRingElement) -> List[Triple]:
    r"""
    The four triples :math:`(a, b, g)` with :math:`v = (a-1)(b-1)g`, read off from :math:`v = x + y - r - s`:
    :math:`g \in \{x, y\}` and :math:`\{ag, bg\} = \{r, s\}`.

    :raises DomainError: if ``v`` is not of the form :math:`x + y - r - s` with distinct elements and :math:`xy = rs`.
    """
    support = v.support()
    positives = [g for g, c in support.items() if c == 1]
    negatives = [g for g, c in support.items() if c == -1]
    if len(positives) != 2 or len(negatives) != 2 or len(support) != 4:
        raise DomainError(f"{v!r} is not a vector of squared norm 4 in the lattice.")
    x, y = positives
    r, s = negatives
    if x * y != r * s:
        raise DomainError(f"{v!r} is not in the lattice: {x}{y} != {r}{s}.")
    triples = []
    for g in (x, y):
        g_inv = g.inverse()
        for p, q in ((r, s), (s, r)):
            triples.append((p * g_inv, q * g_inv, g))
    for a, b, g in triples:
        if difference_product(a, b).translate(g) != v:
            raise ConsistencyError(f"Triple ({a}, {b}, {g}) does not reproduce {v!r}.")
    return triples


def minimal_vectors(group: AbelianGroup) -> List[MinimalVector]:
    r"""
    The vectors of squared norm 4 of :math:`L(A)`, as the deduplicated image of :math:`f(a, b, g) = (a-1)(b-1)g` over
    :math:`\Omega(A) \times A`, sorted by coefficient vector. Empty when :math:`|A| < 4`.
    """
    if group.order < 4:
        return []
    preimages: Dict[Tuple[int, ...], List[Triple]] = defaultdict(list)
    vectors: Dict[Tuple[int, ...], GroupRingElement] = {}
    for pair in omega_pairs(group):
        m = pair.m
        for g in group.elements:
            v = m.translate(g)
            key = v.to_integers()
            preimages[key].append((pair.a, pair.b, g))
            vectors.setdefault(key, v)
    return [MinimalVector(vectors[key], preimages[key]) for key in sorted(vectors)]


def quadruple_oracle(group: AbelianGroup) -> List[Tuple[int, ...]]:
    r"""
    Independent enumeration of :math:`\{x + y - r - s : x, y, r, s \text{ distinct}, xy = rs\}` as sorted coefficient
    tuples.
    """
    by_product: Dict[int, List[Tuple[GroupElement, GroupElement]]] = defaultdict(list)
    elements = group.elements
    for i, x in enumerate(elements):
        for y in elements[i + 1:]:
            by_product[(x * y).index].append((x, y))
    found = set()
    for pairs in by_product.values():
        for x, y in pairs:
            for r, s in pairs:
                if (r, s) == (x, y):
                    continue
                coeffs = [0] * group.order
                coeffs[x.index] += 1
                coeffs[y.index] += 1
                coeffs[r.index] -= 1
                coeffs[s.index] -= 1
                found.add(tuple(coeffs))
    return sorted(found)


def kissing_count(group: AbelianGroup) -> int:
    r"""
    Closed form :math:`\frac{1}{4}|A|\,[(|A|-1)(|A|-3) + t - 1]` with :math:`t = |T|`.
    """
    n = group.order
    t = group.torsion2_subgroup().order
    return n * ((n - 1) * (n - 3) + t - 1) // 4


def short_vector_oracle(lattice: LatticeDescription, bound: Fraction) -> List[GroupRingElement]:
    r"""
    All nonzero lattice vectors of squared norm at most ``bound``, by exhaustive branch and bound over basis
    coefficients with exact bounds from the :math:`LDL^T` factorisation of the Gram matrix.

    :return: Vectors sorted by squared norm, then by coefficient vector.
    :raises DomainError: if ``bound <= 0`` or the Gram matrix is not positive definite.
    """
    bound = Fraction(bound)
    if bound <= 0:
        raise DomainError(f"The bound must be positive, got {bound}.")
    lower, diag = linalg.ldl_decomposition(lattice.gram)
    n = lattice.rank
    x = [0] * n
    found: List[Tuple[int, ...]] = []

    def _descend(i: int, remaining: Fraction):
        center = -sum((lower[j, i] * x[j] for j in range(i + 1, n)), Fraction(0))
        radius_sq = remaining / diag[i]
        radius = math.isqrt(math.floor(radius_sq)) + 1
        for xi in range(math.floor(center - radius), math.ceil(center + radius) + 1):
            offset = (xi - center) ** 2
            if offset > radius_sq:
                continue
            x[i] = xi
            rest = remaining - diag[i] * offset
            if i == 0:
                if any(x):
                    found.append(tuple(x))
            else:
                _descend(i - 1, rest)
        x[i] = 0

    if n > 0:
        _descend(n - 1, bound)
    vectors = [lattice.combination(coords) for coords in found]
    return sorted(vectors, key=lambda v: (v.norm_sq(), v.to_integers()))


def oracle_min_distance(lattice: LatticeDescription) -> int:
    r"""
    Squared minimum of ``lattice`` by the short vector oracle, bounded by the shortest basis vector.
    """
    bound = min(int(lattice.gram[i, i]) for i in range(lattice.rank))
    return int(min(v.norm_sq() for v in short_vector_oracle(lattice, bound)))


def min_distance(group: AbelianGroup, r: int = 2) -> int:
    r"""
    Squared minimum distance of :math:`(\Delta A)^r`: 8, 6 and 4 for :math:`|A| = 2`, 3 and :math:`\ge 4` when r = 2,
    the short vector oracle otherwise.
    """
    if group.is_trivial:
        raise DomainError(f"The lattice of the trivial group {group.spec} has no minimum.")
    if r == 2:
        return {2: 8, 3: 6}.get(group.order, 4)
    return oracle_min_distance(canonical_basis(group, r))


def min_vectors_any(group: AbelianGroup, r: int = 2) -> List[GroupRingElement]:
    r"""
    The vectors achieving the squared minimum of :math:`(\Delta A)^r`, sorted by coefficient vector.
    """
    if r == 2 and group.order >= 4:
        return [mv.vector for mv in minimal_vectors(group)]
    minimum = min_distance(group, r)
    vectors = short_vector_oracle(canonical_basis(group, r), minimum)
    return sorted((v for v in vectors if v.norm_sq() == minimum), key=lambda v: v.to_integers())


def orbits(vectors: Sequence[GroupRingElement]) -> List[List[GroupRingElement]]:
    r"""
    Split ``vectors`` into orbits under right multiplication by the group, in order of first appearance.
    """
    groups: Dict[Tuple, List[GroupRingElement]] = {}
    for v in vectors:
        key = min(tuple(v.translate(g).coeffs) for g in v.group.elements)
        groups.setdefault(key, []).append(v)
    return list(groups.values())

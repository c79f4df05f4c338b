r"""
Eutaxy certificates, strong eutaxy, perfection and extremality of :math:`L(A)`.

A certificate lists coefficients :math:`\gamma_{a,b} > 0` with :math:`\sum \gamma_{a,b}\, m(a,b) m(a,b)^* = 1 - e_A`
and the lifted coefficients :math:`\lambda_s > 0` with :math:`\sum_s \lambda_s\, s s^T = I - J/|A|`. It is checked
with exact rational arithmetic only.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .abelian_group import AbelianGroup, GroupElement, Subgroup, parse_group_spec
from .errors import ConsistencyError, DomainError, NotEutacticError, VerificationError
from .group_ring import GroupRingElement, complement_projection, difference_product, whole_group_idempotent
from .lattice import (
    OmegaPair,
    kissing_count,
    membership,
    min_distance,
    min_vectors_any,
    minimal_vectors,
    omega_pairs,
    parametrizing_triples,
)
from .utils import format_fraction, parse_fraction
from . import linalg

PairKey = Tuple[GroupElement, GroupElement]


def mm_star(a: GroupElement, b: GroupElement) -> GroupRingElement:
    m = difference_product(a, b)
    return m * m.involution()


def sum_mm_star_direct(group: AbelianGroup) -> GroupRingElement:
    total = GroupRingElement.zero(group)
    for a, b in omega_pairs(group):
        total = total + mm_star(a, b)
    return total


def sum_mm_star_closed_form(group: AbelianGroup) -> GroupRingElement:
    r"""
    :math:`4|A|(|A|-4)(1-e_A) + 4|A|(1-e_S) + 8|T|(1-e_T)` with :math:`S = A^2` and :math:`T = \{a : a^2 = 1\}`.
    """
    n = group.order
    whole = complement_projection(Subgroup(group, group.elements))
    squares = group.squares_subgroup()
    torsion = group.torsion2_subgroup()
    return (
        whole.scale(4 * n * (n - 4))
        + complement_projection(squares).scale(4 * n)
        + complement_projection(torsion).scale(8 * torsion.order)
    )


def sum_mm_star(group: AbelianGroup) -> GroupRingElement:
    r"""
    :math:`\sum_{(a,b) \in \Omega(A)} m(a,b) m(a,b)^*`, computed term by term and checked against the closed form.

    :raises ConsistencyError: if the two disagree.
    """
    direct = sum_mm_star_direct(group)
    closed = sum_mm_star_closed_form(group)
    if direct != closed:
        raise ConsistencyError(f"Sum of m m* over Omega({group.spec}) disagrees with its closed form.")
    return direct


def _check_proper(subgroup: Subgroup):
    if subgroup.is_trivial or subgroup.is_whole:
        raise DomainError(f"Expected a proper nontrivial subgroup, got {subgroup!r}.")


def coset_sum(subgroup: Subgroup, g: GroupElement) -> GroupRingElement:
    r"""
    :math:`\sum_{a, b \in B} m(a, bg) m(a, bg)^*`, equal to :math:`4|B|^2(1 - e_B)` for :math:`g \notin B`.
    """
    group = subgroup.parent
    if g in subgroup:
        raise DomainError(f"{g} must lie outside of the subgroup.")
    total = GroupRingElement.zero(group)
    for a in subgroup:
        for b in subgroup:
            total = total + mm_star(a, b * g)
    expected = complement_projection(subgroup).scale(4 * subgroup.order ** 2)
    if total != expected:
        raise ConsistencyError(f"Coset sum over {subgroup!r} and {g} disagrees with 4|B|^2(1-e_B).")
    return total


def cross_sum(subgroup: Subgroup) -> GroupRingElement:
    r"""
    Sum of :math:`m(a,b) m(a,b)^*` over the pairs with exactly one entry in :math:`B`, in both orders. Equal to
    :math:`8|B|^2(|A:B|-1)(1-e_B)`.

    :raises DomainError: if :math:`B` is trivial or the whole group.
    """
    _check_proper(subgroup)
    group = subgroup.parent
    total = GroupRingElement.zero(group)
    for a in subgroup:
        for b in group.elements:
            if b in subgroup:
                continue
            total = total + mm_star(a, b) + mm_star(b, a)
    expected = complement_projection(subgroup).scale(8 * subgroup.order ** 2 * (subgroup.index - 1))
    if total != expected:
        raise ConsistencyError(f"Cross sum over {subgroup!r} disagrees with 8|B|^2(|A:B|-1)(1-e_B).")
    return total


def scalar_multiple(x: GroupRingElement, y: GroupRingElement) -> Optional[Fraction]:
    r"""
    The rational :math:`q` with :math:`x = q y`, or None.
    """
    x.group.check_same(y.group)
    if y.is_zero:
        return Fraction(0) if x.is_zero else None
    i = next(i for i, c in enumerate(y.coeffs) if c)
    q = x.coeffs[i] / y.coeffs[i]
    return q if x == y.scale(q) else None


def is_strongly_eutactic_by_definition(group: AbelianGroup) -> bool:
    q = scalar_multiple(sum_mm_star(group), complement_projection(Subgroup(group, group.elements)))
    return q is not None and q > 0


def classify_strong(group: AbelianGroup) -> bool:
    r"""
    Strong eutaxy of :math:`L(A)`: true iff :math:`|A|` is odd or :math:`A` is elementary abelian of exponent 2.
    Cross checked against the definition, i.e. whether :func:`sum_mm_star` is a positive multiple of :math:`1 - e_A`.
    """
    if group.order < 4:
        raise DomainError(f"Strong eutaxy is classified for |A| >= 4, got {group.spec}.")
    verdict = group.has_odd_order or group.is_elementary_abelian_2
    if verdict != is_strongly_eutactic_by_definition(group):
        raise ConsistencyError(f"Strong eutaxy classification of {group.spec} disagrees with its definition.")
    return verdict


def orbit_projection_matrix(s: GroupRingElement) -> np.ndarray:
    r"""
    :math:`\sum_{g \in A} (sg)(sg)^T`, equal to the matrix of left multiplication by :math:`s s^*`.
    """
    n = s.group.order
    total = np.full((n, n), Fraction(0), dtype=object)
    for g in s.group.elements:
        total = total + linalg.outer(s.translate(g).coeffs)
    return total


class EutaxyCertificate:
    r"""
    Coefficients witnessing the eutaxy of :math:`L(A)`.

    :param group: The group.
    :param branch: One of :attr:`BRANCHES`.
    :param gamma: Map from pairs :math:`(a, b) \in \Omega(A)` to :math:`\gamma_{a,b}`.
    :param lambdas: Pairs (vector, :math:`\lambda`) over the minimal vectors.
    :param verified: Set once the exact checks passed.
    """
    ODD_STRONG = "odd_strong"
    ELEMENTARY2_STRONG = "elementary2_strong"
    MIXED = "mixed"
    SMALL_GROUP = "small_group"
    BRANCHES = (ODD_STRONG, ELEMENTARY2_STRONG, MIXED, SMALL_GROUP)

    def __init__(
            self,
            group: AbelianGroup,
            branch: str,
            gamma: Dict[PairKey, Fraction],
            lambdas: Sequence[Tuple[GroupRingElement, Fraction]],
            verified: bool = False,
    ):
        if branch not in self.BRANCHES:
            raise ValueError(f"Unknown branch {branch!r}, expected one of {self.BRANCHES}.")
        self.group = group
        self.branch = branch
        self.gamma = {(a, b): Fraction(v) for (a, b), v in gamma.items()}
        self.lambdas = [(v, Fraction(q)) for v, q in lambdas]
        self.verified = verified

    @property
    def vectors(self) -> List[GroupRingElement]:
        return [v for v, _ in self.lambdas]

    @property
    def gamma_range(self) -> Tuple[Fraction, Fraction]:
        values = list(self.gamma.values())
        return min(values), max(values)

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "branch": self.branch,
            "gamma": [
                {"a": list(a.coords), "b": list(b.coords), "value": format_fraction(value)}
                for (a, b), value in sorted(self.gamma.items(), key=lambda item: (item[0][0].index, item[0][1].index))
            ],
            "lambda": [
                {"vector_index": i, "vector": list(v.to_integers()), "value": format_fraction(value)}
                for i, (v, value) in enumerate(self.lambdas)
            ],
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, data: dict) -> "EutaxyCertificate":
        group = parse_group_spec(data["group"])
        gamma = {
            (group.element(item["a"]), group.element(item["b"])): parse_fraction(item["value"])
            for item in data.get("gamma", [])
        }
        entries = sorted(data.get("lambda", []), key=lambda item: int(item["vector_index"]))
        lambdas = [(GroupRingElement(group, item["vector"]), parse_fraction(item["value"])) for item in entries]
        return cls(group, data["branch"], gamma, lambdas, verified=bool(data.get("verified", False)))

    def __repr__(self):
        return (
            f"{self.__class__.__name__}(group={self.group.spec}, branch={self.branch}, "
            f"n_gamma={len(self.gamma)}, n_lambda={len(self.lambdas)}, verified={self.verified})"
        )


def _mixed_gamma(group: AbelianGroup) -> Dict[PairKey, Fraction]:
    n = group.order
    squares = group.squares_subgroup()
    torsion = group.torsion2_subgroup()
    c_s = Fraction(4 * n, 8 * squares.order ** 2 * (squares.index - 1))
    c_t = Fraction(8 * torsion.order, 8 * torsion.order ** 2 * (torsion.index - 1))
    if c_s + c_t >= 1:
        raise ConsistencyError(f"Cross coefficients of {group.spec} sum to {c_s + c_t} >= 1.")
    scale = Fraction(1, 4 * n * (n - 4))
    gamma = {}
    for a, b in omega_pairs(group):
        value = Fraction(1)
        if (a in squares) != (b in squares):
            value -= c_s
        if (a in torsion) != (b in torsion):
            value -= c_t
        gamma[(a, b)] = value * scale
    return gamma


def lift_gamma(gamma: Dict[PairKey, Fraction], triples: Sequence[Tuple[GroupElement, GroupElement, GroupElement]]):
    r"""
    :math:`\lambda_s = \sum \gamma_{a,b}` over the triples :math:`(a, b, g)` of :math:`s`.
    """
    return sum((gamma.get((a, b), Fraction(0)) for a, b, _ in triples), Fraction(0))


def _small_group_certificate(group: AbelianGroup) -> EutaxyCertificate:
    vectors = min_vectors_any(group, 2)
    total = sum((v.norm_sq() for v in vectors), Fraction(0))
    value = Fraction(group.order - 1) / total
    return EutaxyCertificate(group, EutaxyCertificate.SMALL_GROUP, {}, [(v, value) for v in vectors])


def build_certificate(group: AbelianGroup) -> EutaxyCertificate:
    r"""
    Build and verify a eutaxy certificate of :math:`L(A)`.

    - odd order: :math:`\gamma \equiv 1/(4|A|(|A|-3))`;
    - elementary abelian 2-group: :math:`\gamma \equiv 1/(4|A|(|A|-2))`;
    - otherwise (:math:`|A| > 4`): :math:`\gamma_{a,b} = (1 - c_S [S\text{-cross}] - c_T [T\text{-cross}])
      / (4|A|(|A|-4))`;
    - :math:`|A| \in \{2, 3\}`: equal :math:`\lambda` on all minimal vectors, no :math:`\gamma`.

    :raises NotEutacticError: for :math:`C_4`.
    :raises DomainError: for the trivial group.
    """
    n = group.order
    if group.is_trivial:
        raise DomainError(f"The lattice of the trivial group {group.spec} is empty.")
    if n in (2, 3):
        cert = _small_group_certificate(group)
    else:
        if n == 4 and group.is_cyclic:
            raise NotEutacticError(
                f"L({group.spec}) is not eutactic: its minimal vectors span a sublattice of rank "
                f"{minimal_span_rank(group)} < {n - 1}."
            )
        if group.has_odd_order:
            branch = EutaxyCertificate.ODD_STRONG
            gamma = {(a, b): Fraction(1, 4 * n * (n - 3)) for a, b in omega_pairs(group)}
        elif group.is_elementary_abelian_2:
            branch = EutaxyCertificate.ELEMENTARY2_STRONG
            gamma = {(a, b): Fraction(1, 4 * n * (n - 2)) for a, b in omega_pairs(group)}
        else:
            branch = EutaxyCertificate.MIXED
            gamma = _mixed_gamma(group)
        lambdas = [(mv.vector, lift_gamma(gamma, mv.triples)) for mv in minimal_vectors(group)]
        cert = EutaxyCertificate(group, branch, gamma, lambdas)
    check_certificate(cert)
    cert.verified = True
    return cert


def projection_matrix(cert: EutaxyCertificate) -> np.ndarray:
    r"""
    :math:`\sum_s \lambda_s\, s s^T` as an exact :math:`|A| \times |A|` matrix.
    """
    n = cert.group.order
    total = np.full((n, n), Fraction(0), dtype=object)
    for v, value in cert.lambdas:
        total = total + linalg.outer(v.coeffs) * value
    return total


def expected_vector_count(group: AbelianGroup) -> int:
    if group.order >= 4:
        return kissing_count(group)
    return {2: 2, 3: 6}.get(group.order, 0)


def check_certificate(cert: EutaxyCertificate):
    r"""
    Run the exact checks of a certificate in order and raise on the first failure:

    1. ``expansion``: :math:`\sum \gamma_{a,b}\, m(a,b) m(a,b)^* = 1 - e_A` (vacuous when no :math:`\gamma` is given
       for a small group);
    2. ``positivity``: every :math:`\gamma` and :math:`\lambda` is positive;
    3. ``projection``: :math:`\sum \lambda_s s s^T = I - J/|A|`;
    4. ``lifting``: each :math:`\lambda_s` is the sum of :math:`\gamma` over the triples of :math:`s`;
    5. ``minimal_vectors``: the vectors are distinct members of :math:`L(A)` of minimal norm, and all of them.

    :raises VerificationError: naming the violated check.
    """
    group = cert.group
    n = group.order
    if cert.gamma or cert.branch != EutaxyCertificate.SMALL_GROUP:
        total = GroupRingElement.zero(group)
        for (a, b), value in cert.gamma.items():
            try:
                OmegaPair(a, b)
            except DomainError as err:
                raise VerificationError("expansion", str(err)) from err
            total = total + mm_star(a, b).scale(value)
        target = GroupRingElement.one(group) - whole_group_idempotent(group)
        if total != target:
            raise VerificationError("expansion", f"sum of gamma m m* is not 1 - e_A for {group.spec}")

    for (a, b), value in cert.gamma.items():
        if value <= 0:
            raise VerificationError("positivity", f"gamma({a}, {b}) = {value}")
    for i, (_, value) in enumerate(cert.lambdas):
        if value <= 0:
            raise VerificationError("positivity", f"lambda of vector {i} = {value}")

    if not np.array_equal(projection_matrix(cert), linalg.projection_onto_augmentation_zero(n)):
        raise VerificationError("projection", f"sum of lambda s s^T is not I - J/{n}")

    if cert.gamma:
        for i, (v, value) in enumerate(cert.lambdas):
            try:
                lifted = lift_gamma(cert.gamma, parametrizing_triples(v))
            except DomainError as err:
                raise VerificationError("lifting", str(err)) from err
            if lifted != value:
                raise VerificationError("lifting", f"lambda of vector {i} is {value}, expected {lifted}")

    minimum = min_distance(group, 2)
    seen = set()
    for i, (v, _) in enumerate(cert.lambdas):
        if not membership(v) or v.norm_sq() != minimum or v in seen:
            raise VerificationError("minimal_vectors", f"vector {i} is not a new minimal vector of L({group.spec})")
        seen.add(v)
    if len(seen) != expected_vector_count(group):
        raise VerificationError("minimal_vectors", f"{len(seen)} vectors, expected {expected_vector_count(group)}")


def failed_check(cert: EutaxyCertificate) -> Optional[str]:
    try:
        check_certificate(cert)
    except VerificationError as err:
        return err.check
    return None


def verify_certificate(cert: EutaxyCertificate) -> bool:
    return failed_check(cert) is None


def minimal_span_rank(group: AbelianGroup) -> int:
    r"""
    Rank of the span of the minimal vectors of :math:`L(A)`. Smaller than :math:`|A| - 1` only for :math:`C_4`.
    """
    vectors = min_vectors_any(group, 2)
    rows = np.array([v.to_integers() for v in vectors], dtype=object).reshape(len(vectors), group.order)
    return linalg.rank(rows)


class PerfectionReport:
    r"""
    Rank of the span of :math:`\{s s^T\}` over the minimal vectors against the dimension :math:`|A|(|A|-1)/2` of the
    symmetric operators on the hyperplane of augmentation zero.
    """

    def __init__(self, group: AbelianGroup, rank: int, target: int):
        if rank > target:
            raise ConsistencyError(f"Perfection rank {rank} of {group.spec} exceeds its target {target}.")
        self.group = group
        self.rank = rank
        self.target = target

    @property
    def is_perfect(self) -> bool:
        return self.rank == self.target

    def to_json(self) -> dict:
        return {"group": self.group.spec, "rank": self.rank, "target": self.target, "is_perfect": self.is_perfect}

    def __repr__(self):
        return f"{self.__class__.__name__}(group={self.group.spec}, rank={self.rank}, target={self.target})"


DEFAULT_RANK_PRIME = 32003


def perfection_rows(group: AbelianGroup) -> np.ndarray:
    r"""
    Upper triangles of :math:`s s^T`, one row per pair :math:`\pm s` of minimal vectors.
    """
    n = group.order
    iu = np.triu_indices(n)
    rows = []
    for v in min_vectors_any(group, 2):
        coeffs = v.to_integers()
        if next(c for c in coeffs if c) < 0:
            continue
        col = np.array(coeffs, dtype=object)
        rows.append(np.outer(col, col)[iu])
    return np.array(rows, dtype=object).reshape(len(rows), len(iu[0]))


def perfection_rank(group: AbelianGroup, prime: int = DEFAULT_RANK_PRIME) -> PerfectionReport:
    r"""
    Perfection test by rank. The rank modulo ``prime`` is a lower bound of the rank over :math:`\mathbb{Q}`; when it
    already reaches the target it is the answer, otherwise the exact rank is computed by fraction-free elimination.
    """
    if group.is_trivial:
        raise DomainError(f"The lattice of the trivial group {group.spec} is empty.")
    target = group.order * (group.order - 1) // 2
    rows = perfection_rows(group)
    rank = linalg.modular_rank(rows, prime)
    if rank != target:
        rank = linalg.rank(rows)
    return PerfectionReport(group, rank, target)


class ExtremalityReport:
    def __init__(
            self,
            group: AbelianGroup,
            eutactic: bool,
            perfection: PerfectionReport,
            certificate: Optional[EutaxyCertificate] = None,
    ):
        self.group = group
        self.eutactic = eutactic
        self.perfection = perfection
        self.certificate = certificate

    @property
    def is_perfect(self) -> bool:
        return self.perfection.is_perfect

    @property
    def is_extreme(self) -> bool:
        return self.eutactic and self.is_perfect

    @property
    def verdict(self) -> str:
        if self.is_extreme:
            return "extreme"
        if not self.eutactic:
            return "not eutactic"
        return "not perfect"

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "eutactic": self.eutactic,
            "branch": self.certificate.branch if self.certificate is not None else None,
            "perfection": self.perfection.to_json(),
            "extreme": self.is_extreme,
            "verdict": self.verdict,
        }

    def __repr__(self):
        return f"{self.__class__.__name__}(group={self.group.spec}, verdict={self.verdict!r})"


def extremality(group: AbelianGroup) -> ExtremalityReport:
    r"""
    Voronoi's criterion: :math:`L(A)` is extreme iff it is eutactic and perfect.
    """
    try:
        cert = build_certificate(group)
    except NotEutacticError:
        cert = None
    return ExtremalityReport(group, cert is not None, perfection_rank(group), certificate=cert)

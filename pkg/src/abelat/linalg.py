"""
Exact linear algebra helpers.

Matrices are assembled as numpy object arrays holding :class:`fractions.Fraction` (or python ints) and handed to
:class:`sympy.polys.matrices.DomainMatrix` whenever a rank, determinant, solve or normal form is needed. There is no
floating point path in this module.
"""
import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from sympy import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .errors import DomainError


def fraction_array(rows: Iterable[Iterable], shape: Tuple[int, ...] = None) -> np.ndarray:
    r"""
    Build an object array of exact rationals.

    :param rows: Nested iterables of ints, Fractions or "p/q" compatible numbers.
    :param shape: Shape to use when ``rows`` is empty.
    :return: An object array of :class:`Fraction`.
    :rtype: np.ndarray
    """
    rows = [[Fraction(x) for x in row] for row in rows]
    if not rows and shape is not None:
        return np.empty(shape, dtype=object)
    arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        arr[i, :] = row
    return arr


def identity_matrix(n: int) -> np.ndarray:
    return np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object).reshape(n, n)


def projection_onto_augmentation_zero(n: int) -> np.ndarray:
    r"""
    Matrix of the orthogonal projection onto the hyperplane of coefficient vectors summing to zero,
    i.e. :math:`I - J/n`.
    """
    return identity_matrix(n) - np.full((n, n), Fraction(1, n), dtype=object)


def outer(column: Sequence) -> np.ndarray:
    col = np.array([Fraction(x) for x in column], dtype=object)
    return np.outer(col, col)


def is_integral(arr: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in np.asarray(arr).flat)


def _common_denominator(arr: np.ndarray) -> int:
    return math.lcm(1, *(Fraction(x).denominator for x in np.asarray(arr).flat))


def to_domain_matrix(arr: np.ndarray) -> DomainMatrix:
    r"""
    Convert an exact numpy array to a :class:`DomainMatrix` over ZZ when every entry is integral and over QQ otherwise.
    """
    arr = np.asarray(arr, dtype=object)
    if arr.ndim != 2:
        raise DomainError(f"Expected a 2d array, got shape {arr.shape}.")
    if is_integral(arr):
        rows = [[int(Fraction(x)) for x in row] for row in arr]
        return DomainMatrix.from_list(rows, ZZ) if rows else DomainMatrix.zeros(arr.shape, ZZ)
    rows = [[(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in arr]
    return DomainMatrix.from_list(rows, QQ)


def to_integer_domain_matrix(arr: np.ndarray) -> Tuple[DomainMatrix, int]:
    r"""
    Clear denominators of ``arr``.

    :return: ``(M, d)`` with ``M`` over ZZ and ``arr == M / d``.
    """
    arr = np.asarray(arr, dtype=object)
    den = _common_denominator(arr)
    scaled = np.array([[int(Fraction(x) * den) for x in row] for row in arr], dtype=object).reshape(arr.shape)
    return to_domain_matrix(scaled), den


def domain_element_to_fraction(x) -> Fraction:
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(int(x))


def from_domain_matrix(dm: DomainMatrix) -> np.ndarray:
    rows = dm.to_list()
    arr = np.empty(dm.shape, dtype=object)
    for i, row in enumerate(rows):
        arr[i, :] = [domain_element_to_fraction(x) for x in row]
    return arr


def rank(arr: np.ndarray) -> int:
    r"""
    Exact rank by fraction-free row reduction over the integers.
    """
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return 0
    dm, _ = to_integer_domain_matrix(arr)
    _, _, pivots = dm.rref_den()
    return len(pivots)


def modular_rank(arr: np.ndarray, prime: int) -> int:
    r"""
    Rank of an integer matrix reduced modulo ``prime``. It never exceeds the rank over the rationals.
    """
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return 0
    if not is_integral(arr):
        raise DomainError("Modular rank is only defined for integer matrices.")
    dm, _ = to_integer_domain_matrix(arr)
    return dm.convert_to(GF(prime)).rank()


def determinant(arr: np.ndarray) -> Fraction:
    arr = np.asarray(arr, dtype=object)
    if arr.shape[0] != arr.shape[1]:
        raise DomainError(f"Determinant of a non-square matrix of shape {arr.shape}.")
    if arr.shape[0] == 0:
        return Fraction(1)
    dm, den = to_integer_domain_matrix(arr)
    return Fraction(int(dm.det()), den ** arr.shape[0])


def solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    r"""
    Solve ``matrix @ X = rhs`` exactly for a square non-singular ``matrix``.

    :param matrix: Square exact matrix.
    :param rhs: Exact matrix with as many rows as ``matrix``.
    :return: The exact solution ``X``.
    :rtype: np.ndarray
    """
    a, a_den = to_integer_domain_matrix(matrix)
    b, b_den = to_integer_domain_matrix(rhs)
    x_num, x_den = a.solve_den(b)
    # a_den * matrix = a and b_den * rhs = b, so X = a_den * x_num / (x_den * b_den)
    x = from_domain_matrix(x_num)
    scale = Fraction(a_den, domain_element_to_fraction(x_den) * b_den)
    return x * scale


def ldl_decomposition(gram: np.ndarray) -> Tuple[np.ndarray, List[Fraction]]:
    r"""
    Exact :math:`G = L D L^T` factorisation of a symmetric matrix with ``L`` unit lower triangular.

    :raises DomainError: if ``gram`` is not positive definite.
    :return: ``(L, d)`` where ``d`` is the diagonal of ``D``.
    """
    gram = np.asarray(gram, dtype=object)
    n = gram.shape[0]
    lower = identity_matrix(n)
    diag: List[Fraction] = []
    for j in range(n):
        d_j = Fraction(gram[j, j]) - sum((lower[j, k] ** 2 * diag[k] for k in range(j)), Fraction(0))
        if d_j <= 0:
            raise DomainError(f"Gram matrix is not positive definite (pivot {j} is {d_j}).")
        diag.append(d_j)
        for i in range(j + 1, n):
            s = Fraction(gram[i, j]) - sum((lower[i, k] * lower[j, k] * diag[k] for k in range(j)), Fraction(0))
            lower[i, j] = s / d_j
    return lower, diag


def is_positive_definite(gram: np.ndarray) -> bool:
    try:
        ldl_decomposition(gram)
    except DomainError:
        return False
    return True


def smith_invariants(arr: np.ndarray) -> Tuple[int, ...]:
    r"""
    Invariant factors (Smith normal form diagonal) of an integer matrix, in divisibility order.
    """
    dm, den = to_integer_domain_matrix(arr)
    if den != 1:
        raise DomainError("Smith normal form is only defined here for integer matrices.")
    return tuple(abs(int(d)) for d in invariant_factors(dm))

from typing import Optional, Sequence

from loguru import logger
from sympy import Matrix, Rational, igcd
from sympy.core.intfunc import igcdex
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from toric4.core.exceptions import DependentBasis, NotPrimitive
from toric4.models.pair import IntVec2, UnimodularMatrix2


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """
    Extended Euclid on two integers.

    Args:
        a (int): First integer.
        b (int): Second integer.

    Returns:
        tuple[int, int, int]: ``(g, x, y)`` with ``a*x + b*y == g`` and
        ``g == gcd(|a|, |b|) >= 0``. ``(0, 0)`` maps to ``(0, 0, 0)``.
    """
    if a == 0 and b == 0:
        return 0, 0, 0
    x, y, g = igcdex(int(a), int(b))
    if g < 0:
        g, x, y = -g, -x, -y
    return int(g), int(x), int(y)


def gcd_all(values: Sequence[int]) -> int:
    # the two leading zeros satisfy igcd's arity and keep gcd([]) == 0
    return int(igcd(0, 0, *[int(v) for v in values]))


def det2(v: IntVec2, w: IntVec2) -> int:
    return v.a * w.b - w.a * v.b


def complete_to_unimodular(v: IntVec2) -> UnimodularMatrix2:
    """
    Build U with ``U @ v == (1, 0)`` from the Bezout coefficients of v.

    Args:
        v (IntVec2): A primitive vector.

    Returns:
        UnimodularMatrix2: ``[[x, y], [-b, a]]`` where ``a*x + b*y == 1``.

    Raises:
        NotPrimitive: If gcd(|a|, |b|) != 1.
    """
    g, x, y = ext_gcd(v.a, v.b)
    if g != 1:
        raise NotPrimitive(f"vector {tuple(v)} is not primitive (gcd {g})", vector=v.to_list())
    return UnimodularMatrix2(entries=((x, y), (-v.b, v.a)))


def characteristic_matrix(vectors: Sequence[IntVec2]) -> Matrix:
    """The 2 x m matrix whose columns are the edge vectors."""
    return Matrix([[v.a for v in vectors], [v.b for v in vectors]])


def rref_rational(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Exact reduced row echelon form over QQ with deterministic pivoting.

    Returns the reduced matrix, its rank and the 0-based pivot columns.
    """
    if M.rows == 0 or M.cols == 0:
        return Matrix.zeros(M.rows, M.cols), 0, []
    dM = DomainMatrix.from_Matrix(M).convert_to(QQ)
    reduced, pivots = dM.rref()
    return reduced.to_Matrix(), len(pivots), list(pivots)


def _check_basis(basis: Sequence[IntVec2]) -> None:
    if len(basis) not in (1, 2):
        raise DependentBasis(f"expected 1 or 2 basis vectors, got {len(basis)}")
    if len(basis) == 1 and basis[0] == (0, 0):
        raise DependentBasis("basis vector is zero")
    if len(basis) == 2 and det2(basis[0], basis[1]) == 0:
        raise DependentBasis(
            f"basis vectors {tuple(basis[0])} and {tuple(basis[1])} are linearly dependent"
        )


def solve_rational_combination(target: IntVec2, basis: Sequence[IntVec2]) -> Optional[list[Rational]]:
    """
    Solve ``sum(c_l * basis_l) == target`` over the rationals.

    Args:
        target (IntVec2): Vector to express.
        basis (Sequence[IntVec2]): One or two linearly independent vectors.

    Returns:
        Optional[list[Rational]]: The unique coefficients, or None when a single
        basis vector does not span a line through ``target``.

    Raises:
        DependentBasis: If the basis is linearly dependent.
    """
    _check_basis(basis)
    if len(basis) == 1:
        v = basis[0]
        if det2(v, target) != 0:
            return None
        c = Rational(target.a, v.a) if v.a != 0 else Rational(target.b, v.b)
        return [c]
    v, w = basis
    d = det2(v, w)
    return [Rational(det2(target, w), d), Rational(det2(v, target), d)]


def solve_int_combination(target: IntVec2, basis: Sequence[IntVec2]) -> Optional[list[int]]:
    coefficients = solve_rational_combination(target, basis)
    if coefficients is None:
        return None
    if any(not c.is_integer for c in coefficients):
        logger.debug(f"{tuple(target)} has non-integral coefficients {coefficients}")
        return None
    return [int(c) for c in coefficients]

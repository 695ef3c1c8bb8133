from sympy import igcd

from loguru import logger

from toric4.core.exceptions import IntegralityViolation, NotInvertible, NotNormalized
from toric4.models.cohomology import CohomologyGroups, CupMatrix, DegreeGroup, TriangleCup
from toric4.models.pair import CharacteristicPair, IntVec2, NormalizedPair, UnimodularMatrix2
from toric4.models.ring import RingSpec
from toric4.services.charpair import torsion_order
from toric4.services.intlinalg import det2

INTEGERS = RingSpec(kind="Z")
RATIONALS = RingSpec(kind="Q")


def groups_over_Z(pair: CharacteristicPair) -> CohomologyGroups:
    return groups_over_R(pair, INTEGERS)


def groups_over_R(pair: CharacteristicPair, ring: RingSpec) -> CohomologyGroups:
    """
    Cohomology groups of the orbifold with coefficients in ``ring``.

    Degree 3 is R/kR: Z/k over Z, zero over Q and Z/gcd(k, m) over Z/m.
    """
    k = torsion_order(pair)
    if ring.kind == "Z":
        order = k
    elif ring.kind == "Q":
        order = 1
    else:
        order = int(igcd(k, ring.modulus))
    torsion = (order,) if order >= 2 else ()
    degrees = (
        DegreeGroup(degree=0, rank=1),
        DegreeGroup(degree=1, rank=0),
        DegreeGroup(degree=2, rank=pair.n),
        DegreeGroup(degree=3, rank=0, torsion=torsion),
        DegreeGroup(degree=4, rank=1),
    )
    return CohomologyGroups(ring=ring, degrees=degrees)


def _symmetric(n: int, upper, ring: RingSpec, tag: str, sign_freedom: bool) -> CupMatrix:
    rows = []
    for i in range(1, n + 1):
        rows.append(tuple(ring.element(upper(min(i, j), max(i, j))) for j in range(1, n + 1)))
    return CupMatrix(entries=tuple(rows), ring=ring, basis_tag=tag, sign_freedom=sign_freedom)


def cup_matrix_smooth(np: NormalizedPair, ring: RingSpec = INTEGERS) -> CupMatrix:
    """
    Cup products u_i u_j = a_i b_j v (i <= j) in the cellular basis of a smooth-form pair.

    Args:
        np (NormalizedPair): Pair with lambda(E_{n+1}) = (1,0), lambda(E_{n+2}) = (0,1).
        ring (RingSpec): Ring the integer entries are mapped into.

    Returns:
        CupMatrix: Symmetric n x n matrix, basis fixed (no sign freedom).

    Raises:
        NotNormalized: If ``np`` is not smooth-flavored.
    """
    if np.flavor != "smooth":
        raise NotNormalized("cup_matrix_smooth needs a smooth-form pair")
    p = np.pair
    return _symmetric(p.n, lambda i, j: p.vector(i).a * p.vector(j).b, ring, "smooth", False)


def cup_triangle(np: NormalizedPair) -> TriangleCup:
    """
    Self cup product u u = c v of a triangle with lambda(E_2) = (1,0).

    Raises:
        NotNormalized: If the pair is not a half-form triangle.
        IntegralityViolation: If k^2 does not divide b1 b3 (a1 b3 - a3 b1).
    """
    p = np.pair
    if p.m != 3 or p.vector(2) != (1, 0):
        raise NotNormalized("cup_triangle needs a triangle with lambda(E_2) = (1,0)")
    (a1, b1), (a3, b3) = p.vector(1), p.vector(3)
    k = int(igcd(b1, b3))
    numerator = b1 * b3 * (a1 * b3 - a3 * b1)
    if numerator % (k * k) != 0:
        raise IntegralityViolation(
            f"k^2 = {k * k} does not divide {numerator}", pair=p.edges(), k=k, numerator=numerator
        )
    return TriangleCup(c=numerator // (k * k), k=k)


def cup_matrix_pid(np: NormalizedPair, ring: RingSpec) -> CupMatrix:
    """
    Cup products over a PID R in which b_{n+2}/k is a unit:
    u_i u_j = b_j * ((a_i b_{n+2} - a_{n+2} b_i) / k) * (b_{n+2}/k)^-1 * v for i <= j.

    Args:
        np (NormalizedPair): Half-form pair.
        ring (RingSpec): Q, Z/m, or Z when |b_{n+2}/k| = 1.

    Returns:
        CupMatrix: Symmetric matrix, defined up to one global sign.

    Raises:
        NotNormalized: If ``np`` is not half-flavored.
        NotInvertible: If b_{n+2}/k is not a unit in ``ring``.
    """
    if np.flavor != "half":
        raise NotNormalized("cup_matrix_pid needs a half-form pair")
    p = np.pair
    n = p.n
    k = torsion_order(p)
    last = p.vector(n + 2)
    unit = last.b // k
    if not ring.is_unit(unit):
        raise NotInvertible(
            f"b_(n+2)/k = {unit} is not invertible in {ring.label}", value=unit, ring=ring.label
        )
    inverse = ring.element(unit).inverse()
    logger.debug(f"cup_matrix_pid over {ring.label}: k={k}, b_(n+2)/k={unit}")

    def upper(i: int, j: int):
        minor = det2(p.vector(i), last)
        return ring.element(p.vector(j).b * (minor // k)) * inverse

    rows = tuple(tuple(upper(min(i, j), max(i, j)) for j in range(1, n + 1)) for i in range(1, n + 1))
    return CupMatrix(entries=rows, ring=ring, basis_tag="pid", sign_freedom=True)


def smooth_companion(np: NormalizedPair) -> tuple[NormalizedPair, list[int]]:
    """
    The smooth companion of a half-form pair and its scaling factors g_i.

    ``lambda_bar(E_i) = tau(lambda(E_i)) / g_i`` with
    ``tau = [[b_{n+2}, -a_{n+2}], [0, a_{n+2}]]``. For i <= n,
    g_i = gcd(|a_i b_{n+2}|, |a_{n+2} b_i|); g_{n+1} = b_{n+2} and
    g_{n+2} = a_{n+2} b_{n+2} carry signs so the last two vectors are (1,0), (0,1).
    """
    if np.flavor != "half":
        raise NotNormalized("smooth_companion needs a half-form pair")
    p = np.pair
    n = p.n
    a, b = p.vector(n + 2)
    vectors, g = [], []
    for i in range(1, p.m + 1):
        ai, bi = p.vector(i)
        x, y = ai * b, a * bi
        if i == n + 1:
            gi = b
        elif i == n + 2:
            gi = a * b
        else:
            gi = int(igcd(x, y))
        g.append(gi)
        vectors.append(IntVec2((x - y) // gi, y // gi))
    companion = CharacteristicPair(vectors=tuple(vectors))
    return NormalizedPair(pair=companion, basis_change=UnimodularMatrix2.identity(), rotation=0, flavor="smooth"), g


def companion_matrix(np: NormalizedPair) -> tuple[tuple[int, int], tuple[int, int]]:
    a, b = np.pair.vector(np.pair.n + 2)
    return (b, -a), (0, a)

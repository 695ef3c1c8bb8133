"""Rational Stanley-Reisner quotient in degrees 2 and 4.

Everything here is computed from SR[P] and the two linear forms alone, so it
serves as an independent check on the closed-form cup products.
"""
from typing import Sequence

from loguru import logger
from sympy import Matrix, Rational
from sympy.ntheory.factor_ import core

from toric4.core.exceptions import (
    DegenerateQuotient,
    IndexOutOfRange,
    NotNormalized,
    ZeroProduct,
)
from toric4.models.cohomology import CongruenceInvariants
from toric4.models.pair import CharacteristicPair, DegenerateCharacteristicPair, NormalizedPair
from toric4.models.sr import Deg2Class, Deg4Class, Deg4Quotient, allowed_monomials, is_allowed
from toric4.services.intlinalg import det2, rref_rational


def linear_relations(pair: DegenerateCharacteristicPair) -> tuple[Deg2Class, Deg2Class]:
    return (
        Deg2Class.of([v.a for v in pair.vectors]),
        Deg2Class.of([v.b for v in pair.vectors]),
    )


def multiply(c1: Deg2Class, c2: Deg2Class) -> Deg4Class:
    """Product in SR[P]; monomials y_i y_j of non-adjacent edges vanish."""
    m = c1.m
    terms: dict = {}
    for i, x in enumerate(c1.coefficients, start=1):
        if x == 0:
            continue
        for j, y in enumerate(c2.coefficients, start=1):
            if y == 0 or not is_allowed(m, i, j):
                continue
            key = (min(i, j), max(i, j))
            terms[key] = terms.get(key, Rational(0)) + x * y
    return Deg4Class(m, {k: v for k, v in terms.items() if v != 0})


def build_deg4_quotient(pair: CharacteristicPair) -> Deg4Quotient:
    """
    Reduce the degree-4 part of SR[P] modulo the relations l_s * y_t.

    Args:
        pair (CharacteristicPair): A valid pair.

    Returns:
        Deg4Quotient: One-dimensional quotient with coordinates against y_{n+1} y_{n+2}.

    Raises:
        DegenerateQuotient: If the quotient is not one-dimensional or the generator vanishes.
    """
    m, n = pair.m, pair.n
    monomials = allowed_monomials(m)
    column = {mono: c for c, mono in enumerate(monomials)}

    rows = []
    for relation in linear_relations(pair):
        for t in range(1, m + 1):
            product = multiply(relation, Deg2Class.generator(m, t))
            row = [Rational(0)] * len(monomials)
            for key, value in product.terms.items():
                row[column[key]] = value
            rows.append(row)

    reduced, rank, pivots = rref_rational(Matrix(rows))
    free = [c for c in range(len(monomials)) if c not in pivots]
    if len(free) != 1:
        raise DegenerateQuotient(
            f"degree-4 quotient has dimension {len(free)}, expected 1", pair=pair.edges(), rank=rank
        )
    f = free[0]
    functional = [Rational(0)] * len(monomials)
    functional[f] = Rational(1)
    for r, p in enumerate(pivots):
        functional[p] = -reduced[r, f]

    generator = (n + 1, n + 2)
    scale = functional[column[generator]]
    if scale == 0:
        raise DegenerateQuotient(f"[y{n + 1}y{n + 2}] vanishes in the quotient", pair=pair.edges())
    logger.debug(f"deg-4 quotient: {len(monomials)} monomials, rank {rank}")
    return Deg4Quotient(
        m=m,
        monomials=tuple(monomials),
        rank=rank,
        functional=tuple(x / scale for x in functional),
        generator=generator,
    )


def reduce_to_generator(q: Deg4Quotient, c: Deg4Class) -> Rational:
    column = {mono: i for i, mono in enumerate(q.monomials)}
    total = Rational(0)
    for key, value in c.terms.items():
        total += q.functional[column[key]] * value
    return total


def reduce_deg2(pair: DegenerateCharacteristicPair, c: Deg2Class) -> Deg2Class:
    """
    Normal form of a degree-2 class: y_{n+1}, y_{n+2} rewritten through l_1, l_2.

    Two classes agree in H^2(X; Q) exactly when their normal forms agree.
    """
    n = pair.n
    v, w = pair.vector(n + 1), pair.vector(n + 2)
    if det2(v, w) == 0:
        raise DegenerateQuotient(f"edges {n + 1} and {n + 2} are dependent", pair=pair.edges())
    B_inv = Matrix([[v.a, w.a], [v.b, w.b]]).inv()
    tail = Matrix([[c.coefficient(n + 1), c.coefficient(n + 2)]])
    values = []
    for i in range(1, n + 1):
        lam = pair.vector(i)
        correction = (tail * B_inv * Matrix([lam.a, lam.b]))[0, 0]
        values.append(c.coefficient(i) - correction)
    return Deg2Class.of(values + [0, 0])


def representative_z(np: NormalizedPair, i: int) -> Deg2Class:
    """The polynomial a_i b_i y_i + sum_{k<i} a_k b_i y_k + sum_{i<k<=n} a_i b_k y_k."""
    if np.flavor != "smooth":
        raise NotNormalized("representative_z needs a smooth-form pair")
    p = np.pair
    n, m = p.n, p.m
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"index {i} outside 1..{n}")
    ai, bi = p.vector(i)
    if ai * bi == 0:
        raise ZeroProduct(f"a_{i} * b_{i} = 0", index=i)
    values = [0] * m
    for k in range(1, n + 1):
        if k < i:
            values[k - 1] = p.vector(k).a * bi
        elif k == i:
            values[k - 1] = ai * bi
        else:
            values[k - 1] = ai * p.vector(k).b
    return Deg2Class.of(values)


def oracle_cup_matrix_smooth(np: NormalizedPair) -> Matrix:
    p = np.pair
    q = build_deg4_quotient(p)
    z = [representative_z(np, i) for i in range(1, p.n + 1)]
    return Matrix(p.n, p.n, lambda i, j: reduce_to_generator(q, multiply(z[i], z[j])))


def gram_matrix_natural(pair: CharacteristicPair) -> tuple[Matrix, list[str]]:
    """Pairing of y_1..y_n against [y_{n+1} y_{n+2}] in the rational quotient."""
    q = build_deg4_quotient(pair)
    m, n = pair.m, pair.n
    y = [Deg2Class.generator(m, i) for i in range(1, n + 1)]
    G = Matrix(n, n, lambda i, j: reduce_to_generator(q, multiply(y[i], y[j])))
    return G, [f"y{i}" for i in range(1, n + 1)]


def fundamental_scale(pair: CharacteristicPair) -> int:
    """|det(lambda(E_{n+1}), lambda(E_{n+2}))|: the integral generator is this multiple of [y_{n+1} y_{n+2}]."""
    n = pair.n
    return abs(det2(pair.vector(n + 1), pair.vector(n + 2)))


def square_class(value: Rational) -> Rational:
    """Squarefree representative of ``value`` modulo nonzero rational squares; 0 stays 0."""
    value = Rational(value)
    if value == 0:
        return Rational(0)
    sign = 1 if value > 0 else -1
    return Rational(sign * core(abs(int(value.p) * int(value.q)), 2))


def is_rational_square(value: Rational) -> bool:
    return value != 0 and square_class(value) == 1


def is_square_up_to_sign(value: Rational) -> bool:
    """True when value or -value is a nonzero rational square; the generators carry a free sign."""
    return is_rational_square(abs(Rational(value)))


def congruence_invariants(M: Matrix) -> CongruenceInvariants:
    """
    Rank, signature and determinant square class of a symmetric rational matrix.

    Uses symmetric Gaussian elimination: diagonal pivots when one exists,
    otherwise row/column j is added to row/column i to create one.
    """
    A = [[Rational(x) for x in M.row(r)] for r in range(M.rows)]
    if any(A[i][j] != A[j][i] for i in range(len(A)) for j in range(len(A))):
        raise ValueError("congruence invariants need a symmetric matrix")
    pivots: list[Rational] = []
    size = len(A)
    while A:
        p = next((i for i in range(len(A)) if A[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in range(len(A)) for j in range(len(A)) if A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for c in range(len(A)):
                A[i][c] += A[j][c]
            for r in range(len(A)):
                A[r][i] += A[r][j]
            continue
        d = A[p][p]
        pivots.append(d)
        rest = [r for r in range(len(A)) if r != p]
        A = [[A[r][c] - A[r][p] * A[p][c] / d for c in rest] for r in rest]

    rank = len(pivots)
    signature = sum(1 for d in pivots if d > 0) - sum(1 for d in pivots if d < 0)
    det = Rational(1)
    for d in pivots:
        det *= d
    det_class = square_class(det) if rank == size else Rational(0)
    return CongruenceInvariants(rank=rank, signature=signature, det_square_class=det_class)


def congruent_up_to_sign(M1: Matrix, M2: Matrix) -> bool:
    """Necessary conditions for M1 being rationally congruent to M2 or to -M2."""
    first = congruence_invariants(M1)
    return any(first == congruence_invariants(sign * M2) for sign in (1, -1))


def square_law_ratio(c: int, pair: CharacteristicPair) -> Rational:
    """c over the natural self-pairing of y_1 measured in the integral generator."""
    if pair.m != 3:
        raise IndexOutOfRange("square law applies to triangles only")
    G, _ = gram_matrix_natural(pair)
    natural = G[0, 0] / fundamental_scale(pair)
    if natural == 0:
        raise DegenerateQuotient("y1 squares to zero", pair=pair.edges())
    return Rational(c) / natural


def classes_equal(pair: CharacteristicPair, c1: Deg2Class, c2: Deg2Class) -> bool:
    return reduce_deg2(pair, c1) == reduce_deg2(pair, c2)


def deg4_equal(q: Deg4Quotient, c1: Deg4Class, c2: Deg4Class) -> bool:
    return reduce_to_generator(q, c1) == reduce_to_generator(q, c2)


def to_rows(M: Matrix) -> list[list[str]]:
    return [[str(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return Matrix([[Rational(x) for x in row] for row in rows])

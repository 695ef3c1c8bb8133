from typing import Optional, Sequence, Union

from loguru import logger

from toric4.core.exceptions import (
    BadIndex,
    InvalidPair,
    NoSmoothVertex,
    NotNormalized,
    ShearRejected,
    TooFewEdges,
)
from toric4.models.pair import (
    CharacteristicPair,
    DegenerateCharacteristicPair,
    IntVec2,
    NormalizedPair,
    UnimodularMatrix2,
    Violation,
)
from toric4.services.intlinalg import complete_to_unimodular, det2, gcd_all

AnyPair = Union[CharacteristicPair, DegenerateCharacteristicPair]


def _as_vectors(vectors: Sequence) -> list[IntVec2]:
    return [IntVec2(int(v[0]), int(v[1])) for v in vectors]


def _primitive_violations(vectors: list[IntVec2]) -> list[Violation]:
    return [
        Violation(kind="NonPrimitive", edges=(i,))
        for i, v in enumerate(vectors, start=1)
        if not v.is_primitive()
    ]


def _adjacent_violations(vectors: list[IntVec2]) -> list[Violation]:
    m = len(vectors)
    found = []
    for i in range(m):
        if det2(vectors[i], vectors[(i + 1) % m]) == 0:
            found.append(Violation(kind="AdjacentDependent", edges=(i + 1, (i + 1) % m + 1)))
    return found


def validate(vectors: Sequence) -> Union[CharacteristicPair, list[Violation]]:
    """
    Validate a cyclic list of edge vectors as a characteristic pair.

    Args:
        vectors (Sequence): Edge vectors ``(a_i, b_i)`` in cyclic order.

    Returns:
        Union[CharacteristicPair, list[Violation]]: The pair, or every violation
        found (non-primitive vectors and dependent adjacent pairs).

    Raises:
        TooFewEdges: If fewer than 3 vectors are given.
    """
    vecs = _as_vectors(vectors)
    if len(vecs) < 3:
        raise TooFewEdges(f"a polygon needs at least 3 edges, got {len(vecs)}")
    violations = _primitive_violations(vecs) + _adjacent_violations(vecs)
    if violations:
        return violations
    return CharacteristicPair(vectors=tuple(vecs))


def validate_degenerate(vectors: Sequence) -> Union[DegenerateCharacteristicPair, list[Violation]]:
    vecs = _as_vectors(vectors)
    if len(vecs) < 3:
        raise TooFewEdges(f"a polygon needs at least 3 edges, got {len(vecs)}")
    violations = _primitive_violations(vecs)
    if violations:
        return violations
    return DegenerateCharacteristicPair(vectors=tuple(vecs))


def parse_pair(vectors: Sequence) -> CharacteristicPair:
    """Like ``validate`` but raises ``InvalidPair`` instead of returning violations."""
    result = validate(vectors)
    if isinstance(result, list):
        raise InvalidPair("not a characteristic pair", result)
    return result


def parse_degenerate(vectors: Sequence) -> DegenerateCharacteristicPair:
    result = validate_degenerate(vectors)
    if isinstance(result, list):
        raise InvalidPair("not a degenerate characteristic pair", result)
    return result


def is_characteristic(pair: AnyPair) -> bool:
    return not _adjacent_violations(list(pair.vectors))


def promote(pair: AnyPair) -> AnyPair:
    """Return the strongest pair type the vectors satisfy."""
    if isinstance(pair, CharacteristicPair) or not is_characteristic(pair):
        return pair
    return CharacteristicPair(vectors=pair.vectors)


def smooth_edge_pairs(pair: CharacteristicPair) -> list[int]:
    return [i for i in range(1, pair.m + 1) if abs(det2(pair.vector(i), pair.vector(i + 1))) == 1]


def torsion_order(pair: CharacteristicPair) -> int:
    vecs = pair.vectors
    minors = [det2(vecs[i], vecs[j]) for i in range(len(vecs)) for j in range(i + 1, len(vecs))]
    return gcd_all(minors)


def rotate(vectors: Sequence[IntVec2], shift: int) -> list[IntVec2]:
    m = len(vectors)
    return [vectors[(k + shift) % m] for k in range(m)]


def rotation_for(m: int, index: int) -> int:
    """Shift that moves edge ``index`` (1-based) to position n+1 = m-1."""
    return (index + 1) % m


def apply_basis_change(pair: AnyPair, U: UnimodularMatrix2) -> AnyPair:
    return type(pair)(vectors=tuple(U.apply(v) for v in pair.vectors))


def negate_edges(pair: AnyPair, signs: Sequence[int]) -> AnyPair:
    if len(signs) != pair.m or any(s not in (1, -1) for s in signs):
        raise BadIndex(f"expected {pair.m} signs in {{1, -1}}, got {list(signs)}")
    return type(pair)(vectors=tuple(v.scaled(s) for v, s in zip(pair.vectors, signs)))


def denormalize(np: NormalizedPair) -> CharacteristicPair:
    U_inv = np.basis_change.inverse()
    m = np.pair.m
    back = rotate([U_inv.apply(v) for v in np.pair.vectors], (m - np.rotation) % m)
    return CharacteristicPair(vectors=tuple(back))


def normalize_smooth(pair: CharacteristicPair, chosen_index: Optional[int] = None) -> NormalizedPair:
    """
    Move a smooth adjacent edge pair to positions (n+1, n+2) and send it to (1,0), (0,1).

    Args:
        pair (CharacteristicPair): Input pair.
        chosen_index (Optional[int]): Edge index i of the smooth pair (E_i, E_{i+1}).
            Defaults to n+1 when that pair is smooth, otherwise the smallest smooth index.

    Returns:
        NormalizedPair: Smooth-flavored normalization.

    Raises:
        NoSmoothVertex: If no adjacent pair is unimodular.
        BadIndex: If ``chosen_index`` is not a smooth index.
    """
    smooth = smooth_edge_pairs(pair)
    if not smooth:
        raise NoSmoothVertex("no adjacent edge pair has determinant +1 or -1")
    if chosen_index is None:
        chosen_index = pair.n + 1 if pair.n + 1 in smooth else smooth[0]
    elif chosen_index not in smooth:
        raise BadIndex(f"edge pair {chosen_index} is not smooth; smooth pairs are {smooth}")

    rotation = rotation_for(pair.m, chosen_index)
    rotated = rotate(list(pair.vectors), rotation)
    v, w = rotated[-2], rotated[-1]
    # inverse of the column matrix [v | w]
    d = det2(v, w)
    U = UnimodularMatrix2(entries=((w.b * d, -w.a * d), (-v.b * d, v.a * d)))
    normalized = CharacteristicPair(vectors=tuple(U.apply(x) for x in rotated))
    logger.debug(f"smooth normalization at edge pair {chosen_index}: rotation {rotation}, U={U.to_list()}")
    return NormalizedPair(pair=normalized, basis_change=U, rotation=rotation, flavor="smooth")


def _half_at(pair: CharacteristicPair, index: int, shear: Optional[int]) -> NormalizedPair:
    rotation = rotation_for(pair.m, index)
    rotated = rotate(list(pair.vectors), rotation)
    U = complete_to_unimodular(rotated[-2])
    last = U.apply(rotated[-1])
    if shear is None:
        s = 0 if last.a != 0 else 1
    else:
        s = shear
        if last.a + s * last.b == 0:
            raise ShearRejected(f"shear {s} leaves a_(n+2) = 0", shear=s, index=index)
    S = UnimodularMatrix2(entries=((1, s), (0, 1)))
    B = S @ U
    normalized = CharacteristicPair(vectors=tuple(B.apply(x) for x in rotated))
    return NormalizedPair(pair=normalized, basis_change=B, rotation=rotation, flavor="half", shear=s)


def normalize_half(
    pair: CharacteristicPair, chosen_index: Optional[int] = None, shear: Optional[int] = None
) -> NormalizedPair:
    """
    Move an edge to position n+1, send it to (1,0) and shear until a_{n+2} b_{n+2} != 0.

    Without ``chosen_index`` every edge is tried and the one minimizing
    |b_{n+2}| / k wins, ties going to the smallest rotation.

    Raises:
        BadIndex: If ``chosen_index`` is outside 1..m.
        ShearRejected: If a supplied ``shear`` leaves a_{n+2} = 0.
    """
    if chosen_index is not None:
        if not 1 <= chosen_index <= pair.m:
            raise BadIndex(f"edge index {chosen_index} outside 1..{pair.m}")
        return _half_at(pair, chosen_index, shear)

    k = torsion_order(pair)
    best = None
    for index in range(1, pair.m + 1):
        try:
            candidate = _half_at(pair, index, shear)
        except ShearRejected:
            continue
        key = (abs(candidate.pair.vector(pair.n + 2).b) // k, candidate.rotation)
        if best is None or key < best[0]:
            best = (key, candidate)
    if best is None:
        raise ShearRejected(f"shear {shear} is rejected at every edge", shear=shear)
    logger.debug(f"half normalization: rotation {best[1].rotation}, |b_(n+2)|/k = {best[0][0]}")
    return best[1]


def as_half(pair: CharacteristicPair) -> NormalizedPair:
    """Wrap a pair that is already in half form, with identity basis change and rotation."""
    n = pair.n
    last = pair.vector(n + 2)
    if pair.vector(n + 1) != (1, 0) or last.a * last.b == 0:
        raise NotNormalized("pair is not in half form: need lambda(E_{n+1}) = (1,0) and a_{n+2} b_{n+2} != 0")
    return NormalizedPair(pair=pair, basis_change=UnimodularMatrix2.identity(), rotation=0, flavor="half")


def as_smooth(pair: CharacteristicPair) -> NormalizedPair:
    n = pair.n
    if pair.vector(n + 1) != (1, 0) or pair.vector(n + 2) != (0, 1):
        raise NotNormalized("pair is not in smooth form: need lambda(E_{n+1}) = (1,0), lambda(E_{n+2}) = (0,1)")
    return NormalizedPair(pair=pair, basis_change=UnimodularMatrix2.identity(), rotation=0, flavor="smooth")

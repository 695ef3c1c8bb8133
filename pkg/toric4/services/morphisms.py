from typing import Optional, Sequence, Union

from loguru import logger
from sympy import Matrix, igcd

from toric4.core.exceptions import (
    BadMorphism,
    IncompatiblePair,
    IndexOutOfRange,
    LabelingMismatch,
    UnsupportedLifting,
    ZeroProduct,
)
from toric4.models.morphism import (
    BendMap,
    CellularIndexMap,
    CompatibilityReport,
    CompatiblePair,
    EdgeMap,
    IdentityMap,
    Lifting,
    NoLifting,
    OrderSurjection,
    SubstitutionMap,
    TorusHom2,
)
from toric4.models.pair import CharacteristicPair, DegenerateCharacteristicPair, IntVec2, NormalizedPair
from toric4.models.sr import Deg2Class, Deg4Class
from toric4.schemas.morphism import MorphismDocument
from toric4.services.charpair import is_characteristic, promote
from toric4.services.cohomology import companion_matrix, smooth_companion
from toric4.services.intlinalg import (
    characteristic_matrix,
    det2,
    solve_int_combination,
    solve_rational_combination,
)
from toric4.services.srengine import multiply

AnyPair = Union[CharacteristicPair, DegenerateCharacteristicPair]


# edge maps

def compose_surjections(g: OrderSurjection, f: OrderSurjection) -> OrderSurjection:
    if f.target_size != g.source_size:
        raise BadMorphism(f"cannot compose: {f.target_size} target edges vs {g.source_size} source edges")
    return OrderSurjection(values=tuple(g(f(j)) for j in range(1, f.source_size + 1)))


def hat_contraction(size: int, i: int) -> OrderSurjection:
    """rho(i-hat): an (m+1)-gon onto an m-gon, j -> j for j <= i and j -> j-1 otherwise."""
    if not 1 <= i < size:
        raise IndexOutOfRange(f"index {i} outside 1..{size - 1}")
    return OrderSurjection(values=tuple(j if j <= i else j - 1 for j in range(1, size + 1)))


def pushforward(rho: OrderSurjection, pair: AnyPair) -> tuple[AnyPair, bool]:
    """
    The characteristic function rho_* lambda(E'_k) = lambda(E_{s_k}) on the target polygon.

    Returns:
        tuple[AnyPair, bool]: Target pair and whether it is a characteristic pair.
    """
    if rho.source_size != pair.m:
        raise BadMorphism(f"rho has {rho.source_size} values for a {pair.m}-gon")
    vectors = tuple(pair.vector(rho.survivor(k)) for k in range(1, rho.target_size + 1))
    target = promote(DegenerateCharacteristicPair(vectors=vectors))
    return target, isinstance(target, CharacteristicPair)


def _contraction(pair: AnyPair, values: Sequence[int], kind: str) -> CompatiblePair:
    rho = OrderSurjection(values=tuple(values))
    target, _ = pushforward(rho, pair)
    return CompatiblePair(kind=kind, edge_map=rho, psi=TorusHom2.identity(), source=pair, target=target)


def contract_keep(pair: AnyPair, i: int) -> tuple[OrderSurjection, AnyPair]:
    """rho_i: keep E_i, E_{n+1}, E_{n+2} and contract every other edge."""
    cp = contraction_keep(pair, i)
    return cp.edge_map, cp.target


def contraction_keep(pair: AnyPair, i: int) -> CompatiblePair:
    n = pair.n
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"index {i} outside 1..{n}")
    values = [1 if j <= i else 2 if j <= n + 1 else 3 for j in range(1, n + 3)]
    return _contraction(pair, values, "contract")


def contract_keep2(pair: AnyPair, i: int, j: int) -> tuple[OrderSurjection, AnyPair]:
    cp = contraction_keep2(pair, i, j)
    return cp.edge_map, cp.target


def contraction_keep2(pair: AnyPair, i: int, j: int) -> CompatiblePair:
    """rho_ij: keep E_i, E_j, E_{n+1}, E_{n+2}."""
    n = pair.n
    if not 1 <= i < j <= n:
        raise IndexOutOfRange(f"need 1 <= i < j <= {n}, got i={i}, j={j}")
    values = [1 if t <= i else 2 if t <= j else 3 if t <= n + 1 else 4 for t in range(1, n + 3)]
    return _contraction(pair, values, "contract")


def bend(pair: AnyPair, i: int) -> tuple[BendMap, DegenerateCharacteristicPair]:
    """Split E_i in two; both halves carry lambda(E_i)."""
    if not 1 <= i <= pair.m:
        raise IndexOutOfRange(f"index {i} outside 1..{pair.m}")
    vectors = pair.vectors[:i] + (pair.vector(i),) + pair.vectors[i:]
    return BendMap(source_size=pair.m, index=i), DegenerateCharacteristicPair(vectors=vectors)


def bending(pair: AnyPair, i: int) -> CompatiblePair:
    delta, target = bend(pair, i)
    return CompatiblePair(kind="bend", edge_map=delta, psi=TorusHom2.identity(), source=pair, target=target)


# compatibility and liftings

def _target_basis(cp: CompatiblePair, j: int) -> tuple[str, list[int]]:
    kind, ks = cp.edge_map.image(j)
    return kind, sorted(ks)


def validate_compatible(cp: CompatiblePair) -> CompatibilityReport:
    """
    Check that Psi lambda(E_j) lies in the rational span of the target vectors at the image of E_j.

    Returns:
        CompatibilityReport: Itemized violations plus vertices whose two target vectors are parallel.
    """
    if cp.edge_map.source_size != cp.source.m or cp.edge_map.target_size != cp.target.m:
        raise BadMorphism(
            f"edge map {cp.edge_map.source_size} -> {cp.edge_map.target_size} does not fit "
            f"a {cp.source.m}-gon -> {cp.target.m}-gon"
        )
    violations, degenerate = [], []
    for j in range(1, cp.source.m + 1):
        image = cp.psi.apply(cp.source.vector(j))
        kind, ks = _target_basis(cp, j)
        basis = [cp.target.vector(k) for k in ks]
        if kind == "vertex":
            if det2(basis[0], basis[1]) != 0:
                continue
            degenerate.append(j)
            basis = basis[:1]
        # a split edge lies on both halves; a surviving edge on one line
        for k, v in zip(ks, basis):
            if det2(image, v) != 0:
                violations.append({"edge": j, "target_edge": k, "image": image.to_list(), "expected_line": v.to_list()})
    return CompatibilityReport(violations=tuple(violations), degenerate_vertices=tuple(degenerate))


def _solve_columns(cp: CompatiblePair, column_order: Optional[Sequence[int]] = None):
    if not isinstance(cp.edge_map, (OrderSurjection, IdentityMap)):
        raise UnsupportedLifting(f"{cp.kind} morphisms have no lifting solver")
    if not (is_characteristic(cp.source) and is_characteristic(cp.target)):
        raise UnsupportedLifting("liftings are only solved between characteristic pairs")
    report = validate_compatible(cp)
    if not report.compatible:
        raise IncompatiblePair(f"{cp.kind} morphism is not a compatible pair", violations=list(report.violations))
    order = list(column_order) if column_order is not None else list(range(1, cp.source.m + 1))
    for j in order:
        _, ks = _target_basis(cp, j)
        target = cp.psi.apply(cp.source.vector(j))
        yield j, ks, target, [cp.target.vector(k) for k in ks]


def solve_rational_lifting(cp: CompatiblePair) -> Lifting:
    """The unique rational matrix with Lambda' L = Psi Lambda and the face support of the edge map."""
    M = Matrix.zeros(cp.target.m, cp.source.m)
    for j, ks, target, basis in _solve_columns(cp):
        coefficients = solve_rational_combination(target, basis)
        for k, c in zip(ks, coefficients):
            M[k - 1, j - 1] = c
    return Lifting(matrix=M, integral=all(x.is_integer for x in M))


def solve_lifting(cp: CompatiblePair, column_order: Optional[Sequence[int]] = None) -> Union[Lifting, NoLifting]:
    """
    Integral lifting of a compatible pair, column by column.

    Args:
        cp (CompatiblePair): Morphism between characteristic pairs.
        column_order (Optional[Sequence[int]]): Order in which source edges are solved.

    Returns:
        Union[Lifting, NoLifting]: The lifting, or the first source edge whose
        coefficients are not integral.

    Raises:
        UnsupportedLifting: For bendings or non-characteristic pairs.
        IncompatiblePair: If ``cp`` fails validate_compatible.
    """
    M = Matrix.zeros(cp.target.m, cp.source.m)
    for j, ks, target, basis in _solve_columns(cp, column_order):
        coefficients = solve_int_combination(target, basis)
        if coefficients is None:
            rational = solve_rational_combination(target, basis)
            logger.warning(f"{cp.kind}: column {j} has non-integral coefficients {rational}")
            return NoLifting(column=j, rational_solution=tuple(rational), reason=f"non-integral column {j}")
        for k, c in zip(ks, coefficients):
            M[k - 1, j - 1] = c
    lifting = Lifting(matrix=M, integral=True)
    if not verify_lifting(cp, lifting):
        raise IncompatiblePair(f"{cp.kind}: lifting fails Lambda' L = Psi Lambda")
    return lifting


def verify_lifting(cp: CompatiblePair, lifting: Lifting) -> bool:
    source = characteristic_matrix(cp.source.vectors)
    target = characteristic_matrix(cp.target.vectors)
    if target * lifting.matrix != cp.psi.as_matrix() * source:
        return False
    for j in range(1, cp.source.m + 1):
        _, ks = _target_basis(cp, j)
        support = {r + 1 for r in range(cp.target.m) if lifting.matrix[r, j - 1] != 0}
        if not support <= set(ks):
            return False
    return True


# substitutions

def induced_substitution(lifting: Lifting) -> SubstitutionMap:
    return SubstitutionMap(matrix=lifting.matrix)


def substitute_generator(sub: SubstitutionMap, k: int) -> Deg2Class:
    return Deg2Class.of(list(sub.matrix.row(k - 1)))


def substitute_deg2(sub: SubstitutionMap, c: Deg2Class) -> Deg2Class:
    result = Deg2Class.of([0] * sub.source_size)
    for k, coefficient in enumerate(c.coefficients, start=1):
        if coefficient != 0:
            result = result + substitute_generator(sub, k).scaled(coefficient)
    return result


def substitute_deg4(sub: SubstitutionMap, c: Deg4Class) -> Deg4Class:
    result = Deg4Class(sub.source_size, {})
    for (k, l), coefficient in c.terms.items():
        product = multiply(substitute_generator(sub, k), substitute_generator(sub, l))
        result = result + product.scaled(coefficient)
    return result


def compose_substitutions(outer: SubstitutionMap, inner: SubstitutionMap) -> SubstitutionMap:
    """Substitution of g o f, where ``inner`` comes from f and ``outer`` from g."""
    if outer.source_size != inner.target_size:
        raise BadMorphism(f"cannot compose substitutions {inner.target_size} vs {outer.source_size}")
    return SubstitutionMap(matrix=outer.matrix * inner.matrix)


# constructors

def _primitive(v: IntVec2) -> IntVec2:
    g = int(igcd(v.a, v.b))
    if g == 0:
        raise BadMorphism("torus map sends an edge vector to zero")
    return IntVec2(v.a // g, v.b // g)


def rescale(pair: CharacteristicPair, i: int) -> tuple[CharacteristicPair, TorusHom2, Lifting]:
    """
    Rescaling at E_i by sigma_i = diag(b_i, a_i).

    lambda'(E_j) = (a_j b_i / g_ij, a_i b_j / g_ij) with g_ij = gcd(|a_j b_i|, |a_i b_j|)
    for j != i and g_ii = a_i b_i, so that lambda'(E_i) = (1, 1). The lifting is diag(g_ij).

    Raises:
        IndexOutOfRange: If i is outside 1..m.
        ZeroProduct: If a_i b_i = 0.
    """
    if not 1 <= i <= pair.m:
        raise IndexOutOfRange(f"index {i} outside 1..{pair.m}")
    ai, bi = pair.vector(i)
    if ai * bi == 0:
        raise ZeroProduct(f"a_{i} * b_{i} = 0", index=i)
    vectors, g = [], []
    for j in range(1, pair.m + 1):
        aj, bj = pair.vector(j)
        x, y = aj * bi, ai * bj
        gj = ai * bi if j == i else int(igcd(x, y))
        g.append(gj)
        vectors.append(IntVec2(x // gj, y // gj))
    target = CharacteristicPair(vectors=tuple(vectors))
    return target, TorusHom2(entries=((bi, 0), (0, ai))), Lifting(matrix=Matrix.diag(*g), integral=True)


def rescaling(pair: CharacteristicPair, i: int) -> CompatiblePair:
    target, sigma, _ = rescale(pair, i)
    return CompatiblePair(kind="rescale", edge_map=IdentityMap(size=pair.m), psi=sigma, source=pair, target=target)


def identity_with_signs(pair: CharacteristicPair, signs: Sequence[int]) -> tuple[CompatiblePair, Lifting]:
    """Identity morphism onto the pair with lambda(E_j) replaced by signs[j] * lambda(E_j)."""
    if len(signs) != pair.m or any(s not in (1, -1) for s in signs):
        raise BadMorphism(f"expected {pair.m} signs in {{1, -1}}, got {list(signs)}")
    target = CharacteristicPair(vectors=tuple(v.scaled(s) for v, s in zip(pair.vectors, signs)))
    cp = CompatiblePair(kind="signs", edge_map=IdentityMap(size=pair.m), psi=TorusHom2.identity(), source=pair, target=target)
    return cp, Lifting(matrix=Matrix.diag(*signs), integral=True)


def companion_morphism(np: NormalizedPair) -> tuple[CompatiblePair, Lifting]:
    """(id, tau) from a half-form pair to its smooth companion; the lifting is diag(g)."""
    companion, g = smooth_companion(np)
    tau = TorusHom2(entries=companion_matrix(np))
    cp = CompatiblePair(
        kind="companion", edge_map=IdentityMap(size=np.pair.m), psi=tau, source=np.pair, target=companion.pair
    )
    return cp, Lifting(matrix=Matrix.diag(*g), integral=True)


def basis_change_morphism(pair: AnyPair, U) -> CompatiblePair:
    psi = TorusHom2(entries=U.entries)
    target = type(pair)(vectors=tuple(U.apply(v) for v in pair.vectors))
    return CompatiblePair(kind="basis_change", edge_map=IdentityMap(size=pair.m), psi=psi, source=pair, target=target)


def custom_morphism(pair: AnyPair, rho: OrderSurjection, psi: TorusHom2) -> CompatiblePair:
    """Contraction with an arbitrary torus map; lambda'(E'_k) is the primitive part of Psi lambda(E_{s_k})."""
    if rho.source_size != pair.m:
        raise BadMorphism(f"rho has {rho.source_size} values for a {pair.m}-gon")
    vectors = tuple(_primitive(psi.apply(pair.vector(rho.survivor(k)))) for k in range(1, rho.target_size + 1))
    target = promote(DegenerateCharacteristicPair(vectors=vectors))
    return CompatiblePair(kind="custom", edge_map=rho, psi=psi, source=pair, target=target)


def morphism_from_document(pair: AnyPair, doc: MorphismDocument) -> CompatiblePair:
    if doc.type == "contract":
        return _contraction(pair, doc.rho, "contract")
    if doc.type == "bend":
        return bending(pair, doc.i)
    if doc.type == "rescale":
        if not isinstance(pair, CharacteristicPair):
            raise UnsupportedLifting("rescaling needs a characteristic pair")
        return rescaling(pair, doc.i)
    if doc.type == "basis_change":
        return basis_change_morphism(pair, doc.unimodular())
    return custom_morphism(pair, OrderSurjection(values=tuple(doc.rho)), TorusHom2.from_rows(doc.psi))


# cellular bases

def cellular_index_map(edge_map: EdgeMap) -> CellularIndexMap:
    """
    Index-level pullback of the cellular basis {u'_1..u'_n'; v'}.

    Contractions send u'_k to u_{s_k} and need rho(n+1) = n'+1; bending at i
    sends u'_j to u_j for j <= i and to u_{j-1} otherwise and needs i <= n.

    Raises:
        LabelingMismatch: If the edge map moves the positions n+1, n+2.
    """
    n = edge_map.source_size - 2
    n_target = edge_map.target_size - 2
    if isinstance(edge_map, OrderSurjection):
        if edge_map(n + 1) != n_target + 1:
            raise LabelingMismatch(f"rho(n+1) = {edge_map(n + 1)}, expected {n_target + 1}")
        return CellularIndexMap(pulls=tuple(edge_map.survivor(k) for k in range(1, n_target + 1)))
    if isinstance(edge_map, BendMap):
        if edge_map.index > n:
            raise LabelingMismatch(f"bending at {edge_map.index} moves edge n+1 = {n + 1}")
        i = edge_map.index
        return CellularIndexMap(pulls=tuple(j if j <= i else j - 1 for j in range(1, n_target + 1)))
    return CellularIndexMap(pulls=tuple(range(1, n + 1)))


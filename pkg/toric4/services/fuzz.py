"""Deterministic property sweeps over pseudo-random characteristic pairs."""
import random
from typing import Callable, Optional, Sequence

from loguru import logger
from sympy import igcd

from toric4.core.config import settings
from toric4.core.exceptions import IntegralityViolation
from toric4.models.pair import CharacteristicPair, IntVec2, NormalizedPair, UnimodularMatrix2
from toric4.models.ring import RingSpec
from toric4.models.sr import Deg4Class
from toric4.services import charpair, cohomology, morphisms, srengine
from toric4.services.intlinalg import det2


# generators

def random_primitive(rng: random.Random, bound: int, nonzero_product: bool = False) -> IntVec2:
    while True:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if igcd(a, b) == 1 and (not nonzero_product or a * b != 0):
            return IntVec2(a, b)


def random_pair(rng: random.Random, m: int, bound: int) -> CharacteristicPair:
    while True:
        vectors = [random_primitive(rng, bound) for _ in range(m)]
        if all(det2(vectors[i], vectors[(i + 1) % m]) != 0 for i in range(m)):
            return CharacteristicPair(vectors=tuple(vectors))


def random_smooth_pair(rng: random.Random, n: int, bound: int, nonzero_products: bool = True) -> CharacteristicPair:
    """A pair already in smooth form: lambda_1..lambda_n followed by (1,0), (0,1)."""
    tail = [IntVec2(1, 0), IntVec2(0, 1)]
    while True:
        head = [random_primitive(rng, bound, nonzero_products) for _ in range(n)]
        vectors = head + tail
        m = len(vectors)
        if all(det2(vectors[i], vectors[(i + 1) % m]) != 0 for i in range(m)):
            return CharacteristicPair(vectors=tuple(vectors))


def random_half_pair(rng: random.Random, n: int, bound: int) -> NormalizedPair:
    return charpair.normalize_half(random_pair(rng, n + 2, bound))


# checks; each returns (cases run, first counterexample or None)

Check = Callable[[random.Random, int, int, int], tuple[int, Optional[dict]]]


def check_oracle_smooth(rng, count, bound, max_n):
    for case in range(1, count + 1):
        np = charpair.as_smooth(random_smooth_pair(rng, rng.randint(1, max_n), bound))
        formula = cohomology.cup_matrix_smooth(np, cohomology.RATIONALS).as_matrix()
        oracle = srengine.oracle_cup_matrix_smooth(np)
        if formula != oracle:
            return case, {"edges": np.pair.edges(), "formula": formula, "oracle": oracle}
    return count, None


def check_triangle_integrality(rng, count, bound, max_n):
    for case in range(1, count + 1):
        np = random_half_pair(rng, 1, bound)
        try:
            triangle = cohomology.cup_triangle(np)
        except IntegralityViolation as exc:
            return case, exc.to_dict()
        if triangle.k != charpair.torsion_order(np.pair):
            return case, {"edges": np.pair.edges(), "k_formula": triangle.k, "k_minors": charpair.torsion_order(np.pair)}
    return count, None


def check_congruence(rng, count, bound, max_n):
    for case in range(1, count + 1):
        np = random_half_pair(rng, rng.randint(1, max_n), bound)
        M = cohomology.cup_matrix_pid(np, cohomology.RATIONALS).as_matrix()
        G, _ = srengine.gram_matrix_natural(np.pair)
        scaled = G / srengine.fundamental_scale(np.pair)
        if not srengine.congruent_up_to_sign(M, scaled):
            return case, {"edges": np.pair.edges(), "cup_pid": M, "gram": scaled}
    return count, None


def check_equivariance(rng, count, bound, max_n):
    case = 0
    while case < count:
        np = random_half_pair(rng, rng.randint(1, max_n), bound)
        s, eps = rng.randint(-5, 5), rng.choice((1, -1))
        moved = charpair.apply_basis_change(np.pair, UnimodularMatrix2(entries=((1, s), (0, eps))))
        if moved.vector(moved.n + 2).a == 0:
            continue
        case += 1
        before = cohomology.cup_matrix_pid(np, cohomology.RATIONALS).as_matrix()
        after = cohomology.cup_matrix_pid(charpair.as_half(moved), cohomology.RATIONALS).as_matrix()
        if after != eps * before:
            return case, {"edges": np.pair.edges(), "shear": s, "eps": eps, "before": before, "after": after}
    return count, None


def check_ring_torsion(rng, count, bound, max_n):
    for case in range(1, count + 1):
        pair = random_pair(rng, rng.randint(3, max_n + 2), bound)
        modulus = rng.randint(2, 30)
        groups = cohomology.groups_over_R(pair, RingSpec(kind="ZMOD", modulus=modulus))
        k = charpair.torsion_order(pair)
        if groups.torsion_order(3) != igcd(k, modulus):
            return case, {"edges": pair.edges(), "modulus": modulus, "k": k, "order": groups.torsion_order(3)}
    return count, None


def composition_counterexample(pair: CharacteristicPair, i: int, j: int) -> Optional[dict]:
    """Compare the rho_i pullback with the pullback of rho_{ij,i} o rho_ij on [a_i b_i x_1] and [x_2 x_3]."""
    direct_cp = morphisms.contraction_keep(pair, i)
    direct = morphisms.induced_substitution(morphisms.solve_rational_lifting(direct_cp))
    first = morphisms.contraction_keep2(pair, i, j)
    second = morphisms.contraction_keep(first.target, 1)
    composite = morphisms.compose_substitutions(
        morphisms.induced_substitution(morphisms.solve_rational_lifting(second)),
        morphisms.induced_substitution(morphisms.solve_rational_lifting(first)),
    )
    ai, bi = pair.vector(i)
    x1 = morphisms.substitute_generator(direct, 1).scaled(ai * bi)
    x1_composite = morphisms.substitute_generator(composite, 1).scaled(ai * bi)
    x2x3 = Deg4Class.monomial(3, 2, 3)
    q = srengine.build_deg4_quotient(pair)
    expected_x1 = srengine.representative_z(charpair.as_smooth(pair), i)
    problems = {}
    if not srengine.classes_equal(pair, x1, x1_composite):
        problems["x1"] = [x1.to_list(), x1_composite.to_list()]
    if x1 != expected_x1:
        problems["x1_representative"] = [x1.to_list(), expected_x1.to_list()]
    direct_x2x3 = morphisms.substitute_deg4(direct, x2x3)
    if not srengine.deg4_equal(q, direct_x2x3, morphisms.substitute_deg4(composite, x2x3)):
        problems["x2x3"] = True
    if direct_x2x3 != Deg4Class.monomial(pair.m, pair.n + 1, pair.n + 2):
        problems["x2x3_monomial"] = direct_x2x3.to_dict()
    if problems:
        return {"edges": pair.edges(), "i": i, "j": j, **problems}
    return None


def check_composition(rng, count, bound, max_n):
    case = 0
    while case < count:
        pair = random_smooth_pair(rng, rng.randint(2, max(2, max_n)), bound)
        i, j = sorted(rng.sample(range(1, pair.n + 1), 2))
        if det2(pair.vector(i), pair.vector(j)) == 0:
            continue
        case += 1
        problem = composition_counterexample(pair, i, j)
        if problem is not None:
            return case, problem
    return count, None


CHECKS: dict[str, Check] = {
    "oracle_smooth": check_oracle_smooth,
    "triangle_integrality": check_triangle_integrality,
    "congruence": check_congruence,
    "equivariance": check_equivariance,
    "ring_torsion": check_ring_torsion,
    "composition": check_composition,
}


def run_fuzz(
    seed: Optional[int] = None,
    count: Optional[int] = None,
    checks: Optional[Sequence[str]] = None,
    bound: Optional[int] = None,
    max_n: Optional[int] = None,
) -> dict:
    """
    Run the property suite with one seeded generator.

    Args:
        seed (Optional[int]): Generator seed; defaults to ``settings.FUZZ_SEED``.
        count (Optional[int]): Cases per check; defaults to ``settings.FUZZ_COUNT``.
        checks (Optional[Sequence[str]]): Subset of ``CHECKS`` to run, in that order.
        bound (Optional[int]): Largest absolute vector entry.
        max_n (Optional[int]): Largest n = m - 2.

    Returns:
        dict: Per-check case counts, and the first counterexample verbatim if any.
    """
    seed = settings.FUZZ_SEED if seed is None else seed
    count = settings.FUZZ_COUNT if count is None else count
    bound = settings.FUZZ_MAX_ENTRY if bound is None else bound
    max_n = settings.FUZZ_MAX_N if max_n is None else max_n
    names = list(checks) if checks else list(CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {list(CHECKS)}")

    rng = random.Random(seed)
    results, counterexample = {}, None
    for name in names:
        logger.info(f"fuzz: {name} x {count} (seed {seed})")
        cases, problem = CHECKS[name](rng, count, bound, max_n)
        results[name] = {"cases": cases, "passed": problem is None}
        if problem is not None:
            logger.warning(f"fuzz: {name} failed at case {cases}")
            counterexample = {"check": name, "case": cases, **problem}
            break
    return {
        "seed": seed,
        "count": count,
        "checks": results,
        "status": "all passed" if counterexample is None else "counterexample found",
        "counterexample": counterexample,
    }

import pytest
from hypothesis import given, settings
from sympy import Matrix, Rational

from tests.conftest import make_pair
from tests.strategies import characteristic_pairs, half_pairs, smooth_form_pairs
from toric4.core.exceptions import IndexOutOfRange, ZeroProduct
from toric4.models.cohomology import CongruenceInvariants
from toric4.models.sr import Deg2Class, Deg4Class, allowed_monomials, is_allowed
from toric4.services import charpair, cohomology, srengine


@pytest.fixture
def square():
    return make_pair((1, 1), (2, 1), (1, 0), (0, 1))


def y(m: int, i: int) -> Deg2Class:
    return Deg2Class.generator(m, i)


def test_allowed_monomials():
    assert len(allowed_monomials(3)) == 6
    four = allowed_monomials(4)
    assert (1, 3) not in four and (2, 4) not in four
    assert len(four) == 8
    assert len(allowed_monomials(5)) == 10
    assert is_allowed(5, 5, 1)
    assert not is_allowed(5, 2, 4)


def test_linear_relations_cp2(cp2):
    l1, l2 = srengine.linear_relations(cp2)
    assert l1 == Deg2Class.of([1, 1, 0])
    assert l2 == Deg2Class.of([1, 0, 1])


def test_multiply():
    assert srengine.multiply(y(4, 1), y(4, 3)).terms == {}
    assert srengine.multiply(y(5, 1), y(5, 2)).terms == {(1, 2): 1}
    product = srengine.multiply(y(3, 1) + y(3, 2), y(3, 1) + y(3, 3))
    assert product.terms == {(1, 1): 1, (1, 2): 1, (1, 3): 1, (2, 3): 1}


@given(characteristic_pairs(max_edges=6))
def test_multiply_is_commutative(pair):
    l1, l2 = srengine.linear_relations(pair)
    assert srengine.multiply(l1, l2) == srengine.multiply(l2, l1)


def test_quotient_cp2(cp2):
    q = srengine.build_deg4_quotient(cp2)
    assert len(q.monomials) == 6
    assert q.rank == 5
    assert q.dimension == 1
    assert srengine.reduce_to_generator(q, Deg4Class.monomial(3, 2, 3)) == 1
    assert srengine.reduce_to_generator(q, Deg4Class.monomial(3, 1, 1)) == 1


def test_quotient_s2_times_s2():
    q = srengine.build_deg4_quotient(make_pair((1, 0), (0, 1), (1, 0), (0, 1)))
    assert (1, 3) not in q.monomials
    assert q.dimension == 1


def test_reduce_kills_relations(square):
    q = srengine.build_deg4_quotient(square)
    for relation in srengine.linear_relations(square):
        for t in range(1, square.m + 1):
            assert srengine.reduce_to_generator(q, srengine.multiply(relation, y(square.m, t))) == 0


@settings(max_examples=100)
@given(characteristic_pairs(max_edges=10))
def test_quotient_is_one_dimensional(pair):
    q = srengine.build_deg4_quotient(pair)
    assert q.dimension == 1
    assert srengine.reduce_to_generator(q, Deg4Class.monomial(pair.m, pair.n + 1, pair.n + 2)) == 1


def test_reduce_to_generator_is_linear(square):
    q = srengine.build_deg4_quotient(square)
    a = Deg4Class.monomial(4, 1, 1, 3)
    b = Deg4Class.monomial(4, 1, 2, -2)
    total = srengine.reduce_to_generator(q, a + b)
    assert total == srengine.reduce_to_generator(q, a) + srengine.reduce_to_generator(q, b)
    assert srengine.reduce_to_generator(q, a.scaled(Rational(1, 3))) == srengine.reduce_to_generator(q, a) / 3


def test_reduce_deg2_eliminates_relations(square):
    l1, l2 = srengine.linear_relations(square)
    zero = Deg2Class.of([0, 0, 0, 0])
    assert srengine.reduce_deg2(square, l1) == zero
    assert srengine.reduce_deg2(square, l2) == zero
    assert srengine.classes_equal(square, y(4, 3), y(4, 3) + l1.scaled(5))


def test_representative_z(square):
    triangle = charpair.as_smooth(make_pair((2, 3), (1, 0), (0, 1)))
    assert srengine.representative_z(triangle, 1) == Deg2Class.of([6, 0, 0])
    np = charpair.as_smooth(square)
    assert srengine.representative_z(np, 1) == Deg2Class.of([1, 1, 0, 0])
    assert srengine.representative_z(np, 2) == Deg2Class.of([1, 2, 0, 0])
    with pytest.raises(IndexOutOfRange):
        srengine.representative_z(np, 3)


def test_representative_z_needs_nonzero_product():
    np = charpair.as_smooth(make_pair((1, 0), (0, 1), (1, 0), (0, 1)))
    with pytest.raises(ZeroProduct):
        srengine.representative_z(np, 1)


def test_oracle_examples(cp2, square):
    assert srengine.oracle_cup_matrix_smooth(charpair.as_smooth(cp2)) == Matrix([[1]])
    weighted = charpair.as_smooth(make_pair((2, 3), (1, 0), (0, 1)))
    assert srengine.oracle_cup_matrix_smooth(weighted) == Matrix([[6]])
    assert srengine.oracle_cup_matrix_smooth(charpair.as_smooth(square)) == Matrix([[1, 1], [1, 2]])


@settings(max_examples=200)
@given(smooth_form_pairs(min_n=1, max_n=6, bound=9))
def test_oracle_agrees_with_smooth_formula(pair):
    np = charpair.as_smooth(pair)
    formula = cohomology.cup_matrix_smooth(np, cohomology.RATIONALS).as_matrix()
    assert srengine.oracle_cup_matrix_smooth(np) == formula


def test_gram_matrix_cp2(cp2):
    G, basis = srengine.gram_matrix_natural(cp2)
    assert G == Matrix([[1]])
    assert basis == ["y1"]


@given(characteristic_pairs(max_edges=7))
def test_gram_matrix_is_symmetric_and_nondegenerate(pair):
    G, _ = srengine.gram_matrix_natural(pair)
    assert G == G.T
    assert G.rank() == pair.n


def test_congruence_invariants():
    assert srengine.congruence_invariants(Matrix.eye(2)) == CongruenceInvariants(2, 2, Rational(1))
    assert srengine.congruence_invariants(Matrix([[0, 1], [1, 0]])) == CongruenceInvariants(2, 0, Rational(-1))
    assert srengine.congruence_invariants(Matrix.diag(4, 9)) == srengine.congruence_invariants(Matrix.eye(2))
    assert srengine.congruence_invariants(Matrix.zeros(2, 2)) == CongruenceInvariants(0, 0, Rational(0))
    with pytest.raises(ValueError):
        srengine.congruence_invariants(Matrix([[0, 1], [2, 0]]))


def test_square_class():
    assert srengine.square_class(Rational(-8, 3)) == -6
    assert srengine.square_class(Rational(9, 4)) == 1
    assert srengine.square_class(0) == 0
    assert srengine.is_rational_square(Rational(16))
    assert not srengine.is_rational_square(Rational(8))
    assert srengine.is_square_up_to_sign(Rational(-9, 4))
    assert not srengine.is_square_up_to_sign(Rational(-8))
    assert not srengine.is_square_up_to_sign(0)


def test_torsion_triangle_square_law(torsion_triangle):
    G, _ = srengine.gram_matrix_natural(torsion_triangle)
    assert G == Matrix([[Rational(1, 2)]])
    assert srengine.fundamental_scale(torsion_triangle) == 2
    ratio = srengine.square_law_ratio(4, torsion_triangle)
    assert ratio == 16
    assert srengine.is_rational_square(ratio)


def test_square_law_holds_up_to_sign():
    triangle = charpair.as_half(make_pair((0, -1), (1, 0), (1, -1)))
    c = cohomology.cup_triangle(triangle).c
    assert c == 1
    assert srengine.gram_matrix_natural(triangle.pair)[0] == Matrix([[-1]])
    ratio = srengine.square_law_ratio(c, triangle.pair)
    assert ratio == -1
    assert not srengine.is_rational_square(ratio)
    assert srengine.is_square_up_to_sign(ratio)


def test_square_law_needs_triangle(square):
    with pytest.raises(IndexOutOfRange):
        srengine.square_law_ratio(1, square)


@settings(max_examples=100)
@given(half_pairs())
def test_pid_matrix_congruent_to_gram(np):
    M = cohomology.cup_matrix_pid(np, cohomology.RATIONALS).as_matrix()
    G, _ = srengine.gram_matrix_natural(np.pair)
    assert srengine.congruent_up_to_sign(M, G / srengine.fundamental_scale(np.pair))


@given(half_pairs(max_edges=3))
def test_triangle_square_law(np):
    triangle = cohomology.cup_triangle(np)
    assert srengine.is_square_up_to_sign(srengine.square_law_ratio(triangle.c, np.pair))


def test_helpers_round_trip_rows():
    M = Matrix([[Rational(1, 2), 0], [0, -3]])
    assert srengine.to_rows(M) == [["1/2", "0"], ["0", "-3"]]
    assert srengine.as_matrix(srengine.to_rows(M)) == M

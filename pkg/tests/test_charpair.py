import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from pydantic import ValidationError
from sympy import igcd

from tests.conftest import make_pair
from tests.strategies import characteristic_pairs, half_pairs, unimodular_matrices
from toric4.core.exceptions import (
    BadIndex,
    InvalidPair,
    NoSmoothVertex,
    NotNormalized,
    ShearRejected,
    TooFewEdges,
)
from toric4.models.pair import CharacteristicPair, IntVec2, NormalizedPair, UnimodularMatrix2, Violation
from toric4.services import charpair
from toric4.services.intlinalg import det2


def test_validate_accepts_cp2(cp2):
    result = charpair.validate([(1, 1), (1, 0), (0, 1)])
    assert result == cp2


def test_validate_reports_non_primitive():
    assert charpair.validate([(2, 4), (1, 0), (0, 1)]) == [Violation(kind="NonPrimitive", edges=(1,))]


def test_validate_reports_adjacent_dependence():
    assert charpair.validate([(1, 0), (1, 0), (0, 1)]) == [Violation(kind="AdjacentDependent", edges=(1, 2))]


def test_validate_reports_every_violation():
    violations = charpair.validate([(2, 0), (1, 0), (0, 1), (0, -1)])
    kinds = [(v.kind, v.edges) for v in violations]
    assert ("NonPrimitive", (1,)) in kinds
    assert ("AdjacentDependent", (1, 2)) in kinds
    assert ("AdjacentDependent", (3, 4)) in kinds


def test_validate_needs_three_edges():
    with pytest.raises(TooFewEdges):
        charpair.validate([(1, 0), (0, 1)])
    with pytest.raises(TooFewEdges):
        charpair.validate_degenerate([(1, 0)])


def test_parse_pair_raises_with_violations():
    with pytest.raises(InvalidPair) as excinfo:
        charpair.parse_pair([(2, 4), (1, 0), (0, 1)])
    assert excinfo.value.to_dict()["details"]["violations"] == [{"kind": "NonPrimitive", "edges": [1]}]


def test_models_reject_invalid_vectors():
    with pytest.raises(ValidationError):
        CharacteristicPair(vectors=(IntVec2(1, 0), IntVec2(1, 0), IntVec2(0, 1)))
    with pytest.raises(ValidationError):
        UnimodularMatrix2(entries=((2, 0), (0, 1)))


def test_validate_degenerate():
    square = charpair.validate_degenerate([(1, 0), (1, 0), (0, 1), (0, 1)])
    assert square.m == 4
    assert not charpair.is_characteristic(square)
    assert charpair.validate_degenerate([(2, 4), (1, 0), (0, 1)]) == [Violation(kind="NonPrimitive", edges=(1,))]
    assert charpair.promote(charpair.validate_degenerate([(1, 1), (1, 0), (0, 1)])) == make_pair((1, 1), (1, 0), (0, 1))


@given(characteristic_pairs())
def test_degenerate_validation_accepts_characteristic_pairs(pair):
    assert not isinstance(charpair.validate_degenerate(list(pair.vectors)), list)


@settings(max_examples=300)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=3, max_size=7))
def test_validate_matches_direct_conditions(vectors):
    m = len(vectors)
    primitive = all(igcd(a, b) == 1 for a, b in vectors)
    independent = all(
        det2(IntVec2(*vectors[i]), IntVec2(*vectors[(i + 1) % m])) != 0 for i in range(m)
    )
    result = charpair.validate(vectors)
    assert isinstance(result, CharacteristicPair) == (primitive and independent)


def test_smooth_edge_pairs(cp2, torsion_triangle):
    assert charpair.smooth_edge_pairs(cp2) == [1, 2, 3]
    assert charpair.smooth_edge_pairs(torsion_triangle) == []


def test_torsion_order(cp2, torsion_triangle):
    assert charpair.torsion_order(torsion_triangle) == 2
    assert charpair.torsion_order(cp2) == 1


@given(characteristic_pairs(), st.integers(0, 7), unimodular_matrices())
def test_torsion_order_invariance(pair, shift, U):
    k = charpair.torsion_order(pair)
    assert k >= 1
    rotated = CharacteristicPair(vectors=tuple(charpair.rotate(list(pair.vectors), shift)))
    assert charpair.torsion_order(rotated) == k
    assert charpair.torsion_order(charpair.apply_basis_change(pair, U)) == k
    signs = [-1] + [1] * (pair.m - 1)
    assert charpair.torsion_order(charpair.negate_edges(pair, signs)) == k


def test_negate_edges_rejects_bad_signs(cp2):
    with pytest.raises(BadIndex):
        charpair.negate_edges(cp2, [1, 2, 1])
    with pytest.raises(BadIndex):
        charpair.negate_edges(cp2, [1, 1])


def test_apply_basis_change(cp2):
    assert charpair.apply_basis_change(cp2, UnimodularMatrix2.identity()) == cp2
    minus = UnimodularMatrix2(entries=((-1, 0), (0, -1)))
    assert charpair.apply_basis_change(cp2, minus).edges() == [[-1, -1], [-1, 0], [0, -1]]


def test_normalize_smooth_already_normalized(cp2):
    np = charpair.normalize_smooth(cp2, 2)
    assert np.pair == cp2
    assert np.basis_change == UnimodularMatrix2.identity()
    assert np.rotation == 0
    assert np.flavor == "smooth"


def test_normalize_smooth_rotates():
    np = charpair.normalize_smooth(make_pair((1, 0), (0, 1), (1, 1)), 1)
    assert np.pair.edges() == [[1, 1], [1, 0], [0, 1]]
    assert np.basis_change == UnimodularMatrix2.identity()
    assert np.rotation == 2


def test_normalize_smooth_default_prefers_last_pair():
    np = charpair.normalize_smooth(make_pair((1, 0), (0, 1), (-1, -1)))
    assert np.rotation == 0
    assert np.pair.edges() == [[-1, -1], [1, 0], [0, 1]]


def test_normalize_smooth_errors(torsion_triangle):
    with pytest.raises(NoSmoothVertex):
        charpair.normalize_smooth(torsion_triangle)
    with pytest.raises(BadIndex):
        charpair.normalize_smooth(make_pair((1, 0), (0, 1), (-1, -2)), 3)


@given(characteristic_pairs(), st.data())
def test_normalize_smooth_round_trip(pair, data):
    smooth = charpair.smooth_edge_pairs(pair)
    assume(smooth)
    index = data.draw(st.sampled_from(smooth))
    np = charpair.normalize_smooth(pair, index)
    n = pair.n
    assert np.pair.vector(n + 1) == (1, 0)
    assert np.pair.vector(n + 2) == (0, 1)
    assert charpair.torsion_order(np.pair) == 1
    assert n + 1 in charpair.smooth_edge_pairs(np.pair)
    assert charpair.denormalize(np) == pair


def test_normalize_half_keeps_half_form(torsion_triangle):
    np = charpair.normalize_half(torsion_triangle, 2)
    assert np.pair == torsion_triangle
    assert np.basis_change == UnimodularMatrix2.identity()
    assert np.shear == 0
    assert np.flavor == "half"


def test_normalize_half_shears_smooth_form():
    np = charpair.normalize_half(make_pair((2, 3), (1, 0), (0, 1)), 2)
    assert np.shear == 1
    assert np.pair.vector(3) == (1, 1)
    assert np.pair.vector(1) == (5, 3)


def test_normalize_half_manual_shear():
    pair = make_pair((2, 3), (1, 0), (0, 1))
    assert charpair.normalize_half(pair, 2, shear=-1).pair.vector(3) == (-1, 1)
    with pytest.raises(ShearRejected):
        charpair.normalize_half(pair, 2, shear=0)


def test_normalize_half_rejects_bad_index(cp2):
    with pytest.raises(BadIndex):
        charpair.normalize_half(cp2, 0)
    with pytest.raises(BadIndex):
        charpair.normalize_half(cp2, 4)


def test_normalize_half_auto_minimizes_unit(torsion_triangle):
    np = charpair.normalize_half(torsion_triangle)
    assert np.rotation == 0
    assert abs(np.pair.vector(3).b) // charpair.torsion_order(np.pair) == 1


@given(characteristic_pairs())
def test_normalize_half_invariants(pair):
    np = charpair.normalize_half(pair)
    n, m = pair.n, pair.m
    last = np.pair.vector(n + 2)
    assert np.pair.vector(n + 1) == (1, 0)
    assert last.a * last.b != 0
    assert last.b % charpair.torsion_order(pair) == 0
    for k in range(m):
        assert np.pair.vectors[k] == np.basis_change.apply(pair.vectors[(k + np.rotation) % m])
    assert charpair.denormalize(np) == pair


@given(half_pairs(max_edges=3))
def test_half_triangle_torsion_is_gcd_of_b(np):
    b1, b3 = np.pair.vector(1).b, np.pair.vector(3).b
    assert charpair.torsion_order(np.pair) == igcd(b1, b3)


def test_as_half_and_as_smooth(cp2, torsion_triangle):
    assert charpair.as_smooth(cp2).flavor == "smooth"
    assert charpair.as_half(torsion_triangle).flavor == "half"
    with pytest.raises(NotNormalized):
        charpair.as_half(cp2)
    with pytest.raises(NotNormalized):
        charpair.as_smooth(torsion_triangle)


def test_normalized_pair_checks_flavor(cp2):
    with pytest.raises(ValidationError):
        NormalizedPair(pair=cp2, basis_change=UnimodularMatrix2.identity(), rotation=0, flavor="half")
    with pytest.raises(ValidationError):
        NormalizedPair(pair=cp2, basis_change=UnimodularMatrix2.identity(), rotation=3, flavor="smooth")

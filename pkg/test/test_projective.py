from fractions import Fraction

import pytest

from pentagram.errors import DegenerateInput, DegenerateIntersection, DegenerateSpan
from pentagram.projective import (
    ProjectiveTransform,
    det,
    equivalent_sequences,
    general_frame,
    hyperplane_through,
    intersect_hyperplanes,
    inverse,
    matmul,
    matvec,
    nullspace,
    parse_rational,
    primitive,
    projective_equivalence,
    proportional,
    rank,
    solve,
    span_intersection,
    to_fraction,
    vector,
)

F = Fraction


def test_to_fraction_refuses_floats():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert to_fraction(3) == F(3)
    assert parse_rational("-1/2") == F(-1, 2)


def test_det_matches_cofactor_expansion():
    m = [[F(2), F(-1), F(0)], [F(1, 2), F(3), F(1)], [F(4), F(0), F(-2)]]
    # 2*(3*-2 - 1*0) - (-1)*(1/2*-2 - 1*4) + 0
    assert det(m) == F(-12) + F(-5)
    assert det([[F(1), F(2)], [F(2), F(4)]]) == 0
    assert det([[F(0), F(1)], [F(1), F(0)]]) == -1


def test_rank_and_nullspace():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    assert rank(rows) == 2
    kernel = nullspace(rows)
    assert len(kernel) == 1
    assert all(sum(a * b for a, b in zip(row, kernel[0])) == 0 for row in rows)
    assert kernel[0] == primitive(kernel[0])


def test_solve_unique_and_singular():
    m = [[F(1), F(1)], [F(1), F(-1)]]
    assert solve(m, [F(3), F(1)]) == (F(2), F(1))
    assert solve([[F(1), F(1)], [F(2), F(2)]], [F(1), F(2)]) is None


def test_inverse_is_inverse():
    m = [[F(2), F(1), F(0)], [F(0), F(1), F(-1)], [F(1), F(0), F(3)]]
    product = matmul(m, inverse(m))
    assert product == [[F(int(i == j)) for j in range(3)] for i in range(3)]


def test_primitive_and_proportional():
    assert primitive((F(-2, 3), F(4, 3), F(0))) == (F(1), F(-2), F(0))
    assert proportional((F(1), F(2)), (F(-3), F(-6)))
    assert not proportional((F(1), F(2)), (F(2), F(1)))
    assert not proportional((F(0), F(0)), (F(0), F(0)))


def test_hyperplane_and_intersection_in_the_plane():
    p, q = vector((1, 0, 1)), vector((0, 1, 1))
    line = hyperplane_through([p, q], 2)
    assert sum(a * b for a, b in zip(line, p)) == 0
    assert sum(a * b for a, b in zip(line, q)) == 0
    other = hyperplane_through([vector((1, 1, 1)), vector((2, 0, 1))], 2)
    point = intersect_hyperplanes([line, other], 2)
    assert sum(a * b for a, b in zip(line, point)) == 0
    assert sum(a * b for a, b in zip(other, point)) == 0


def test_degenerate_span_and_intersection():
    p = vector((1, 2, 3))
    with pytest.raises(DegenerateSpan):
        hyperplane_through([p, vector((2, 4, 6))], 2)
    line = hyperplane_through([vector((1, 0, 0)), vector((0, 1, 0))], 2)
    with pytest.raises(DegenerateIntersection):
        intersect_hyperplanes([line, tuple(2 * x for x in line)], 2)


def test_span_intersection_of_two_planes_in_space():
    a = [vector((1, 0, 0, 0)), vector((0, 1, 0, 0)), vector((0, 0, 1, 0))]
    b = [vector((1, 1, 0, 0)), vector((0, 0, 0, 1)), vector((0, 0, 1, 1))]
    basis = span_intersection(a, b)
    assert len(basis) == 2
    assert all(x[3] == 0 for x in basis)


def test_transform_equality_up_to_scale():
    g = ProjectiveTransform.from_rows([[1, 2], [0, 1]])
    h = ProjectiveTransform.from_rows([[-3, -6], [0, -3]])
    assert g == h
    assert hash(g) == hash(h)
    assert g.compose(g.inverse()).is_scalar()
    assert not g.is_scalar()


def test_projective_equivalence_recovers_transform():
    g = ProjectiveTransform.from_rows([[1, 1, 0], [0, 2, 1], [1, 0, 1]])
    a = [vector(v) for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (2, -1, 5)]]
    b = [tuple(F(k + 2) * x for x in g.apply(v)) for k, v in enumerate(a)]
    assert projective_equivalence(a, b, 2) == g
    b[-1] = vector((1, 1, 2))
    assert projective_equivalence(a, b, 2) is None


def test_projective_equivalence_needs_a_frame():
    a = [vector(v) for v in [(1, 0, 0), (2, 0, 0), (0, 0, 1), (1, 1, 1)]]
    with pytest.raises(DegenerateInput):
        projective_equivalence(a, a, 2)


def test_equivalent_sequences_searches_for_a_frame():
    # the first two points coincide projectively, a frame exists further on
    a = [vector(v) for v in [(1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)]]
    assert general_frame(a, 2) == [0, 2, 3, 4]
    g = ProjectiveTransform.from_rows([[2, 0, 1], [0, 1, 0], [1, 1, 1]])
    b = [matvec(g.matrix, v) for v in a]
    assert equivalent_sequences(a, b, 2) == g
    assert equivalent_sequences(a, b[:-1], 2) is None

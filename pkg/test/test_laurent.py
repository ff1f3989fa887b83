from fractions import Fraction

from sympy import Rational, Symbol

from pentagram.laurent import (
    LAMBDA,
    LaurentBivariate,
    LaurentPoly,
    characteristic_function,
    fraction_charpoly,
    identity_matrix,
    matrix_multiply,
    ordered_product,
    trace,
)

F = Fraction


def test_arithmetic_drops_zero_terms():
    p = (LAMBDA + 1) * (LAMBDA.inverse() - 1)
    assert p == LaurentPoly({-1: 1, 1: -1})
    assert (p - p).is_zero()
    assert (LAMBDA - LAMBDA).terms == {}
    assert 2 * LAMBDA == LaurentPoly.monomial(1, 2)
    assert 3 - LAMBDA == LaurentPoly({0: 3, 1: -1})


def test_monomial_inverse():
    m = LaurentPoly.monomial(3, F(2))
    assert m.inverse() == LaurentPoly.monomial(-3, F(1, 2))
    assert (m * m.inverse()) == LaurentPoly.one()
    assert LaurentPoly({-2: 1, 4: 1}).min_exp == -2
    assert LaurentPoly({-2: 1, 4: 1}).max_exp == 4


def test_characteristic_function_of_a_diagonal_matrix():
    a = [[LaurentPoly.one(), LaurentPoly.zero()], [LaurentPoly.zero(), LAMBDA]]
    R = characteristic_function(a)
    # (1 - k)(λ - k)
    assert R == LaurentBivariate({(0, 1): 1, (1, 0): -1, (1, 1): -1, (2, 0): 1})
    assert R.k_degree == 2
    assert R.window(1) == (0, 1)
    assert R.window(3) is None


def test_characteristic_function_sign_in_odd_size():
    R = characteristic_function(identity_matrix(3))
    # det(Id - k) = (1 - k)^3
    assert R == LaurentBivariate.from_k_polynomial([1, -3, 3, -1])


def test_fraction_charpoly():
    a = [[F(2), F(1), F(0)], [F(0), F(3), F(1)], [F(1), F(0), F(1)]]
    assert fraction_charpoly(a) == [1, -6, 11, -7]


def test_balanced_product_equals_left_fold():
    mats = [
        [[LAMBDA * j, LaurentPoly.one()], [LaurentPoly.constant(F(1, j + 1)), LAMBDA.inverse()]]
        for j in range(1, 6)
    ]
    folded = ordered_product(mats)
    assert ordered_product(mats, balanced=True) == folded
    assert folded == matrix_multiply(ordered_product(mats[:2]), ordered_product(mats[2:]))
    assert trace(identity_matrix(4)) == LaurentPoly.constant(4)


def test_bivariate_to_sympy_clears_negative_powers():
    k, lam = Symbol("k"), Symbol("lam")
    R = LaurentBivariate({(2, 0): 1, (0, -1): F(1, 2)})
    poly, shift = R.to_sympy(k, lam)
    assert shift == 1
    assert poly.as_expr() == k**2 * lam + Rational(1, 2)
    assert R.k_coefficient(0) == LaurentPoly.monomial(-1, F(1, 2))


def test_map_terms_merges_collisions():
    R = LaurentBivariate({(1, 0): 1, (1, 1): 2})
    merged = R.map_terms(lambda i, j, c: (i, 0, c))
    assert merged == LaurentBivariate({(1, 0): 3})
    assert R.todict() == [
        {"k": 1, "lambda": 0, "coeff": "1"},
        {"k": 1, "lambda": 1, "coeff": "2"},
    ]

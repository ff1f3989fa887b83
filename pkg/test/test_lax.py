from fractions import Fraction

import pytest

from pentagram.errors import BadArguments, VariantMismatch
from pentagram.laurent import LaurentPoly, identity_matrix, matrix_multiply
from pentagram.lax import (
    corrugated_3d,
    create_lax,
    dented,
    display_matrix,
    gauge_gstv,
    gauge_spectral_function,
    lax_for_map,
    lax_matrix,
    list_lax_variants,
    monodromy_determinant,
    monodromy_product,
    partial,
    short_diagonal_3d,
    spectral_function,
    tilde,
    tilde_lax_relation,
)
from pentagram.maps import MapSpec, apply_map, corrugated_map, flip_lift_sign, random_corrugated_polygon
from pentagram.polygon import CoefficientArray, TwistedPolygon
from pentagram.spectral import reciprocal_k, rescale_k


def _product_of_last(coeffs):
    total = Fraction(1)
    for j in range(coeffs.n):
        total *= coeffs.coeff(j, coeffs.d)
    return total


def test_registry():
    names = list_lax_variants()
    for name in ("corrugated_3d", "dented", "partial", "short_diagonal_3d", "tilde"):
        assert name in names
    assert list_lax_variants("*_3d") == ["corrugated_3d", "short_diagonal_3d"]
    assert create_lax("dented", 3, m=2) == dented(3, 2)
    assert create_lax("partial", 4, m=None, l=None) == partial(4, 1, 2)
    with pytest.raises(BadArguments):
        create_lax("spiral", 3)
    with pytest.raises(BadArguments):
        dented(3, 3)
    with pytest.raises(VariantMismatch):
        corrugated_3d(4)


def test_lax_for_map():
    assert lax_for_map(MapSpec.dented(1), 3) == dented(3, 1)
    assert lax_for_map(MapSpec.generalized((1, 2), (1, 1)), 3) == dented(3, 2)
    assert lax_for_map(MapSpec.generalized((2, 3), (1, 1)), 3) is None
    assert lax_for_map(MapSpec("short_diagonal"), 3) == short_diagonal_3d()
    assert lax_for_map(MapSpec("corrugated"), 3) == corrugated_3d()
    assert lax_for_map(MapSpec("corrugated"), 4) == partial(4, 1, 2)
    assert lax_for_map(MapSpec.dented(0), 3) is None


@pytest.mark.parametrize("m", [1, 2])
def test_lax_matrix_inverts_display(coeffs_3_7, m):
    variant = dented(3, m)
    for j in range(coeffs_3_7.n):
        product = matrix_multiply(display_matrix(coeffs_3_7, j, variant), lax_matrix(coeffs_3_7, j, variant))
        assert product == identity_matrix(4)


def test_variant_mismatch(coeffs_3_7):
    with pytest.raises(VariantMismatch):
        spectral_function(coeffs_3_7, corrugated_3d())
    with pytest.raises(VariantMismatch):
        spectral_function(coeffs_3_7, dented(4, 1))


def test_monodromy_determinant_is_monomial(coeffs_3_7):
    assert monodromy_determinant(coeffs_3_7, dented(3, 1)) == LaurentPoly.monomial(-7)
    assert monodromy_determinant(coeffs_3_7, short_diagonal_3d()) == LaurentPoly.monomial(-14)


def test_balanced_product(coeffs_3_7):
    variant = dented(3, 1)
    assert monodromy_product(coeffs_3_7, variant, balanced=True) == monodromy_product(coeffs_3_7, variant)


@pytest.mark.parametrize("m", [1, 2])
def test_tilde_gauge(coeffs_3_7, m):
    assert all(tilde_lax_relation(coeffs_3_7, j, m) for j in range(coeffs_3_7.n))
    scaled = rescale_k(spectral_function(coeffs_3_7, dented(3, m)), _product_of_last(coeffs_3_7))
    assert spectral_function(coeffs_3_7, tilde(3, m)) == scaled


def test_gauge_gstv_ones():
    coeffs = CoefficientArray.from_rows([[1, 0, 1]] * 5)
    gauge = gauge_gstv(coeffs)
    assert gauge.x == (1,) * 5
    assert gauge.y == (1,) * 5
    assert gauge.scale == 1
    assert len(gauge.matrices) == 5


def test_gauge_gstv_spectral_function(corrugated_3_7):
    gauge = gauge_gstv(corrugated_3_7)
    variant = partial(3, 1, 2)
    R = spectral_function(corrugated_3_7, variant)
    expected = reciprocal_k(R, gauge.scale, monodromy_determinant(corrugated_3_7, variant))
    assert gauge_spectral_function(gauge) == expected


def test_gauge_gstv_needs_d3():
    with pytest.raises(BadArguments):
        gauge_gstv(CoefficientArray.from_rows([[1, 1]] * 4))


def _conserved(before, image, variant):
    # odd d: the image lift is fixed only up to (-1)^j
    return before in (spectral_function(image, variant), spectral_function(flip_lift_sign(image), variant))


@pytest.mark.parametrize("m", [1, 2])
def test_dented_map_conserves_spectral_function(poly_3_7, m):
    variant = dented(3, m)
    before = spectral_function(poly_3_7.require_coefficients(), variant)
    image = apply_map(poly_3_7, MapSpec.dented(m)).require_coefficients()
    assert _conserved(before, image, variant)


def test_corrugated_map_conserves_spectral_function(corrugated_3_7):
    variant = corrugated_3d()
    before = spectral_function(corrugated_3_7, variant)
    image = corrugated_map(TwistedPolygon.from_coefficients(corrugated_3_7)).require_coefficients()
    assert _conserved(before, image, variant)


@pytest.mark.parametrize("q,r,l", [(2, 2, 2), (3, 2, 3)])
def test_partially_corrugated_map_conserves_spectral_function(q, r, l):
    spec = MapSpec("partially_corrugated", q=q, r=r, l=l)
    variant = lax_for_map(spec, 4)
    assert variant == partial(4, q - 1, l)
    coeffs = random_corrugated_polygon(4, 7, 0, spec=spec.corrugation)
    before = spectral_function(coeffs, variant)
    image = apply_map(coeffs, spec).require_coefficients()
    assert _conserved(before, image, variant)

from fractions import Fraction

import pytest

from pentagram.errors import NonSimpleBranching, StructureMismatch, ZeroDiscriminant
from pentagram.laurent import LaurentBivariate
from pentagram.lax import corrugated_3d, dented, short_diagonal_3d, spectral_function
from pentagram.polygon import CORRUGATED, random_generic_polygon
from pentagram.spectral import (
    casimir_mismatches,
    casimirs,
    discriminant_data,
    expected_windows,
    extract_invariants,
    finite_branch_count,
    genus,
    lower_convex_hull,
    newton_branches,
    rescale_k,
    spectral_report,
)


def _R(d, n, variant, seed=1, zero_slots=()):
    return spectral_function(random_generic_polygon(d, n, seed=seed, zero_slots=zero_slots), variant)


def test_dented_windows(coeffs_3_5):
    variant = dented(3, 1)
    R = spectral_function(coeffs_3_5, variant)
    invariants = extract_invariants(R, variant, 5)
    assert invariants.tabulated
    assert invariants.windows[3] == (-2, 0)
    assert invariants.windows[2] == (-5, -2)
    assert invariants.windows[1] == (-5, -4)
    assert R.window(0) == (-5, -5)
    assert R.coeff(0, -5) == 1
    assert R.coeff(4, 0) == 1
    assert set(invariants.families) == {"G", "J", "I"}


def test_untabulated_windows_are_read_off(coeffs_3_7):
    assert expected_windows(dented(3, 1), 6) is None
    variant = dented(3, 1)
    invariants = extract_invariants(spectral_function(coeffs_3_7, variant), variant, 7)
    assert invariants.tabulated
    assert expected_windows(dented(4, 1), 7) is None


def test_stray_monomial(coeffs_3_5):
    variant = dented(3, 1)
    R = spectral_function(coeffs_3_5, variant)
    stray = LaurentBivariate({**R.terms, (3, 5): Fraction(1)})
    with pytest.raises(StructureMismatch) as info:
        extract_invariants(stray, variant, 5)
    assert info.value.detail == {"k": 3, "lambda": 5, "coeff": "1"}


def test_dented_casimirs(coeffs_3_5):
    variant = dented(3, 1)
    invariants = extract_invariants(spectral_function(coeffs_3_5, variant), variant, 5)
    values = casimirs(coeffs_3_5, variant)
    assert sorted(values) == ["G_2", "I_0", "J_0"]
    assert casimir_mismatches(invariants, values) == []


def test_corrugated_casimirs(corrugated_3_5):
    variant = corrugated_3d()
    invariants = extract_invariants(spectral_function(corrugated_3_5, variant), variant, 5)
    values = casimirs(corrugated_3_5, variant)
    assert sorted(values) == ["G_1", "I_0"]
    assert casimir_mismatches(invariants, values) == []


def test_lower_convex_hull():
    assert lower_convex_hull([(0, 2), (1, 1), (2, 0), (1, 3)]) == [(0, 2), (2, 0)]
    assert lower_convex_hull([(0, 0), (1, -1), (2, 0)]) == [(0, 0), (1, -1), (2, 0)]


def test_newton_branches_of_repeated_root():
    R = LaurentBivariate.from_k_polynomial([1, -4, 6, -4, 1])
    branches = newton_branches(R, 0)
    assert branches.sheets == 4
    assert branches.ramification == 0
    (segment,) = branches.segments
    assert segment.multiplicity == 4
    assert not segment.squarefree
    with pytest.raises(ZeroDiscriminant):
        discriminant_data(R)


def test_elliptic_curve_genus():
    # k^2 = λ^3 - λ
    R = LaurentBivariate({(2, 0): 1, (0, 3): -1, (0, 1): 1})
    data = discriminant_data(R)
    assert (data.count, data.order_at_zero, data.squarefree) == (2, 1, True)
    assert newton_branches(R, 0).ramification == 1
    assert newton_branches(R, "inf").ramification == 1
    assert genus(R) == 1


def test_repeated_discriminant_root():
    # k^2 = (λ - 1)^2
    R = LaurentBivariate({(2, 0): 1, (0, 2): -1, (0, 1): 2, (0, 0): -1})
    assert not discriminant_data(R).squarefree
    with pytest.raises(NonSimpleBranching):
        genus(R)


def test_rescale_k():
    R = LaurentBivariate({(2, 0): 1, (1, 1): 3, (0, -1): 1})
    assert rescale_k(R, 2) == LaurentBivariate({(2, 0): 1, (1, 1): 6, (0, -1): 4})


def test_finite_branch_count():
    for n in (5, 7):
        assert finite_branch_count(_R(3, n, dented(3, 1))) == 3 * n


def test_small_genera(coeffs_3_5, corrugated_3_5):
    assert genus(spectral_function(coeffs_3_5, dented(3, 1)), 3) == 6
    assert genus(spectral_function(corrugated_3_5, corrugated_3d()), 3) == 4


def test_corrugated_invariants_and_genus_fill_phase_space(corrugated_3_5):
    variant = corrugated_3d()
    R = spectral_function(corrugated_3_5, variant)
    assert extract_invariants(R, variant, 5).count + genus(R, 3) == 10


@pytest.mark.slow
@pytest.mark.parametrize("n,seed,expected", [(7, 1, 9), (9, 0, 11)])
def test_dented_genus(n, seed, expected):
    assert genus(_R(3, n, dented(3, 1), seed=seed), 3) == expected


@pytest.mark.slow
def test_repeated_edge_root_is_not_simple_branching():
    # seed 1 at n = 9 has a double root in the edge polynomial at λ = ∞
    R = _R(3, 9, dented(3, 1), seed=1)
    assert not newton_branches(R, "inf").segments[0].squarefree
    with pytest.raises(NonSimpleBranching):
        genus(R, 3)


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 9])
def test_corrugated_genus(n):
    variant = corrugated_3d()
    R = _R(3, n, variant, zero_slots=CORRUGATED.zero_slots(3))
    assert genus(R, 3) == 6
    assert extract_invariants(R, variant, n).count + 6 == 2 * n


def test_spectral_report(coeffs_3_5):
    report = spectral_report(coeffs_3_5, dented(3, 1), with_genus=True)
    assert report["genus"] == 6
    assert report["finite_branch_count"] == 15
    assert report["variant"] == {"name": "dented", "d": 3, "m": 1}
    assert len(report["branches"]) == 2
    assert "genus_note" not in report


def test_dented_m2_casimirs(coeffs_3_7):
    variant = dented(3, 2)
    invariants = extract_invariants(spectral_function(coeffs_3_7, variant), variant, 7)
    values = casimirs(coeffs_3_7, variant)
    assert sorted(values) == ["I_0", "J_4"]
    product = Fraction(1)
    for j in range(7):
        product *= coeffs_3_7.coeff(j, 2)
    assert values["J_4"] == -product
    assert casimir_mismatches(invariants, values) == []


def test_tabulated_windows_n7(coeffs_3_7):
    assert expected_windows(dented(3, 2), 7) == {
        3: (-2, 0), 2: (-4, 0), 1: (-7, -4), 0: (-7, -7), 4: (0, 0),
    }
    assert expected_windows(short_diagonal_3d(), 7) == {
        3: (-7, -4), 2: (-10, -7), 1: (-14, -11), 0: (-14, -14), 4: (0, 0),
    }
    for variant in (dented(3, 2), short_diagonal_3d()):
        assert extract_invariants(spectral_function(coeffs_3_7, variant), variant, 7).tabulated


def test_branches_at_infinity_n7(coeffs_3_7):
    variant = dented(3, 1)
    branches = newton_branches(spectral_function(coeffs_3_7, variant), "inf")
    cycle, tail = branches.segments
    assert (cycle.cycle_length, cycle.multiplicity, cycle.slope) == (3, 1, Fraction(7, 3))
    assert (tail.cycle_length, tail.multiplicity, tail.slope) == (1, 1, 0)
    # the unramified sheet is k = G_3
    assert tail.edge_polynomial == [-casimirs(coeffs_3_7, variant)["G_3"], 1]
    assert branches.ramification == 2


def test_branches_at_infinity_n9():
    coeffs = random_generic_polygon(3, 9, seed=0)
    variant = dented(3, 1)
    sheets, tail = newton_branches(spectral_function(coeffs, variant), "inf").segments
    assert (sheets.cycle_length, sheets.multiplicity, sheets.slope) == (1, 3, 3)
    assert len(sheets.edge_polynomial) == 4
    assert tail.edge_polynomial == [-casimirs(coeffs, variant)["G_4"], 1]

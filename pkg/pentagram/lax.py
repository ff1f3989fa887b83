"""Lax matrices with a spectral parameter for the integrable map variants.

Each variant is the inverse of a companion-type display

    ( 0 ... 0 | (-1)^d )
    (  D(λ)   | last   )

where D(λ) is diagonal with monomial entries and `last` holds a_{j,1..d} (or ones in the ã gauge).
The display has determinant det D(λ), a monomial, so its inverse is written down in closed form.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from utils.registry import entrypoint, is_entry, list_entries, register_lax

from .errors import BadArguments, DivisionByZero, VariantMismatch
from .laurent import (
    LAMBDA,
    LaurentBivariate,
    LaurentPoly,
    characteristic_function,
    identity_matrix,
    matrix_multiply,
    ordered_product,
)
from .maps import dented_jumps, unit_jumps
from .polygon import CORRUGATED, CoefficientArray, CorrugationSpec, tilde_coordinates

LaurentMatrix = List[List[LaurentPoly]]

ONE = LaurentPoly.one()
ZERO = LaurentPoly.zero()


@dataclass(frozen=True)
class LaxVariant:
    name: str
    d: int
    diagonal: Tuple[LaurentPoly, ...]
    zero_slots: Tuple[int, ...] = ()
    tilde: bool = False  # coefficients are ã_{j,k} and multiply D; the last column is all ones
    m: Optional[int] = None
    l: Optional[int] = None

    def __post_init__(self):
        assert len(self.diagonal) == self.d
        assert all(x.is_monomial() for x in self.diagonal)

    @property
    def corrugation(self) -> Optional[CorrugationSpec]:
        """The polygon class the variant lives on, None for generic polygons."""
        if self.name == "corrugated_3d":
            return CORRUGATED
        if self.name == "partial":
            return CorrugationSpec(self.m + 1, self.l - self.m + 1, self.l)
        return None

    def todict(self):
        doc = {"name": self.name, "d": self.d}
        if self.m is not None:
            doc["m"] = self.m
        if self.l is not None:
            doc["l"] = self.l
        return doc

    def __str__(self):
        params = ", ".join(f"{k}={v}" for k, v in self.todict().items() if k != "name")
        return f"{self.name}({params})"


def _spectral_diagonal(d: int, slots: Sequence[int]) -> Tuple[LaurentPoly, ...]:
    return tuple(LAMBDA if r in slots else ONE for r in range(d))


def _check_dent(d: int, m: int):
    if d < 2:
        raise BadArguments(f"dimension must be at least 2, got d={d}")
    if not 1 <= m <= d - 1:
        raise BadArguments(f"λ slot must satisfy 1 <= m <= d-1, got m={m}, d={d}")


@register_lax
def dented(d: int, m: int = 1, **kwargs) -> LaxVariant:
    """D(λ) = diag(1,...,λ,...,1) with λ at the (m+1)-th place."""
    _check_dent(d, m)
    return LaxVariant("dented", d, _spectral_diagonal(d, [m]), m=m)


@register_lax
def tilde(d: int, m: int = 1, **kwargs) -> LaxVariant:
    """Dented Lax matrix in the ã coordinates, defined for every n."""
    _check_dent(d, m)
    return LaxVariant("tilde", d, _spectral_diagonal(d, [m]), tilde=True, m=m)


@register_lax
def partial(d: int, m: int = 1, l: int = 2, **kwargs) -> LaxVariant:
    """Restriction of the dented Lax matrix to (m+1, ℓ-m+1; ℓ)-corrugated polygons."""
    _check_dent(d, m)
    spec = CorrugationSpec(m + 1, l - m + 1, l).validate(d)
    return LaxVariant("partial", d, _spectral_diagonal(d, [m]), spec.zero_slots(d), m=m, l=l)


@register_lax
def short_diagonal_3d(d: int = 3, **kwargs) -> LaxVariant:
    if d != 3:
        raise VariantMismatch(f"short_diagonal_3d needs d=3, got d={d}")
    return LaxVariant("short_diagonal_3d", 3, _spectral_diagonal(3, [0, 2]))


@register_lax
def corrugated_3d(d: int = 3, **kwargs) -> LaxVariant:
    if d != 3:
        raise VariantMismatch(f"corrugated_3d needs d=3, got d={d}")
    return LaxVariant("corrugated_3d", 3, _spectral_diagonal(3, [2]), zero_slots=(2,))


def list_lax_variants(filter="") -> List[str]:
    return list_entries("lax", filter)


def lax_entrypoint(name: str):
    if not is_entry("lax", name):
        raise BadArguments(f"unknown Lax variant {name!r}, choose from {list_lax_variants()}")
    return entrypoint("lax", name)


def create_lax(name: str, d: int, **kwargs) -> LaxVariant:
    """Instantiate a registered variant; parameters that are None fall back to the defaults."""
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    return lax_entrypoint(name)(d=d, **kwargs)


def lax_for_map(spec, d: int) -> Optional[LaxVariant]:
    """The Lax variant whose spectral function a map conserves, None when none is registered."""
    if spec.variant == "dented" and 1 <= spec.m <= d - 1:
        return dented(d, spec.m)
    if spec.variant == "short_diagonal" and d == 3:
        return short_diagonal_3d(d)
    if spec.variant == "corrugated":
        return corrugated_3d(d) if d == 3 else partial(d, 1, 2)
    if spec.variant == "partially_corrugated":
        corrugation = spec.corrugation.validate(d)
        if corrugation.is_minimal:
            return partial(d, corrugation.m, corrugation.l)
        return None
    if spec.variant == "generalized" and len(spec.J) == d - 1 and spec.J == unit_jumps(d):
        for m in range(1, d):
            if spec.I == dented_jumps(d, m):
                return dented(d, m)
    return None


def _check_compatible(coeffs: CoefficientArray, variant: LaxVariant):
    if coeffs.d != variant.d:
        raise VariantMismatch(f"{variant} does not apply to coefficients with d={coeffs.d}")
    for j in range(coeffs.n):
        for k in variant.zero_slots:
            if coeffs.coeff(j, k) != 0:
                raise VariantMismatch(
                    f"{variant} needs a_{{j,{k}}} = 0, but a_{{{j},{k}}} = {coeffs.coeff(j, k)}",
                    index=j,
                )


def _entries(coeffs: CoefficientArray, j: int, variant: LaxVariant):
    """The diagonal D(λ) and the last column below the corner for vertex j."""
    row = coeffs.row(j)
    if variant.tilde:
        diagonal = [variant.diagonal[r] * row[r] for r in range(variant.d)]
        last = [Fraction(1)] * variant.d
    else:
        diagonal = list(variant.diagonal)
        last = list(row)
    return diagonal, last


def display_matrix(coeffs: CoefficientArray, j: int, variant: LaxVariant) -> LaurentMatrix:
    """The companion-type matrix N'_j(λ) whose inverse is the Lax matrix."""
    _check_compatible(coeffs, variant)
    d = variant.d
    diagonal, last = _entries(coeffs, j, variant)
    n_j = [[ZERO] * (d + 1) for _ in range(d + 1)]
    n_j[0][d] = LaurentPoly.constant((-1) ** d)
    for r in range(d):
        n_j[r + 1][r] = diagonal[r]
        n_j[r + 1][d] = n_j[r + 1][d] + last[r]
    return n_j


def lax_matrix(coeffs: CoefficientArray, j: int, variant: LaxVariant) -> LaurentMatrix:
    """L_j(λ) = N'_j(λ)^{-1}, in closed form."""
    _check_compatible(coeffs, variant)
    d = variant.d
    diagonal, last = _entries(coeffs, j, variant)
    if any(x.is_zero() for x in diagonal):
        raise DivisionByZero(f"display matrix at vertex {j} is singular", index=j)
    sign = (-1) ** (d + 1)
    lax = [[ZERO] * (d + 1) for _ in range(d + 1)]
    lax[d][0] = LaurentPoly.constant((-1) ** d)
    for r in range(d):
        inv = diagonal[r].inverse()
        lax[r][r + 1] = inv
        lax[r][0] = inv * (sign * last[r])
    assert matrix_multiply(display_matrix(coeffs, j, variant), lax) == identity_matrix(
        d + 1
    ), f"display and Lax matrices at vertex {j} are not inverse"
    return lax


def monodromy_product(
    coeffs: CoefficientArray, variant: LaxVariant, balanced: bool = False
) -> LaurentMatrix:
    """T_0(λ) = L_{n-1}(λ) ... L_0(λ)."""
    matrices = [lax_matrix(coeffs, j, variant) for j in reversed(range(coeffs.n))]
    return ordered_product(matrices, balanced=balanced)


def spectral_function(
    coeffs: CoefficientArray, variant: LaxVariant, balanced: bool = False
) -> LaurentBivariate:
    """R(k, λ) = det(T_0(λ) - k·Id)."""
    if variant.tilde:
        coeffs = CoefficientArray(coeffs.d, coeffs.n, tilde_coordinates(coeffs))
    return characteristic_function(monodromy_product(coeffs, variant, balanced))


def monodromy_determinant(coeffs: CoefficientArray, variant: LaxVariant) -> LaurentPoly:
    """det T_0(λ) = Π_j 1/det D_j(λ), a monomial."""
    result = ONE
    for j in range(coeffs.n):
        diagonal, _ = _entries(coeffs, j, variant)
        for x in diagonal:
            result = result * x.inverse()
    return result


def tilde_lax_relation(coeffs: CoefficientArray, j: int, m: int) -> bool:
    """L̃_j(λ) = a_{j+1,d} h_{j+1}^{-1} L_j(λ) h_j with h_j = diag(1, a_{j,1}, ..., a_{j,d})."""
    d = coeffs.d
    tilde_coeffs = CoefficientArray(d, coeffs.n, tilde_coordinates(coeffs))
    lax_tilde = lax_matrix(tilde_coeffs, j, tilde(d, m))
    lax = lax_matrix(coeffs, j, dented(d, m))
    h_j = (Fraction(1),) + coeffs.row(j)
    h_next = (Fraction(1),) + coeffs.row(j + 1)
    scale = coeffs.coeff(j + 1, d)
    gauged = [
        [lax[r][c] * (scale * h_j[c] / h_next[r]) for c in range(d + 1)] for r in range(d + 1)
    ]
    return gauged == lax_tilde


@dataclass
class GaugeData:
    """Corrugated Lax matrices in the cluster-coordinate gauge."""

    x: Tuple[Fraction, ...]
    y: Tuple[Fraction, ...]
    matrices: List[LaurentMatrix]
    scale: Fraction  # Π_j a_{j,d}

    def todict(self):
        return {
            "x": [str(v) for v in self.x],
            "y": [str(v) for v in self.y],
            "scale": str(self.scale),
        }


def _gauge_matrix(coeffs: CoefficientArray, j: int) -> List[List[Fraction]]:
    d = coeffs.d
    g = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    g[0][d] = Fraction((-1) ** d)
    for l in range(1, d + 1):
        g[l][l - 1] = math.prod((coeffs.coeff(j - k, d) for k in range(d - l + 1)), start=Fraction(1))
    g[d][d] = coeffs.coeff(j, d)
    return g


def _gauge_inverse(coeffs: CoefficientArray, j: int) -> List[List[Fraction]]:
    """Inverse of the gauge matrix g_j, solved row by row from its shape."""
    d = coeffs.d
    g = _gauge_matrix(coeffs, j)
    inv = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    # g x = y:  x_d = (-1)^d y_0,  x_{l-1} = y_l / C_l for l < d,  x_{d-1} = (y_d - a_{j,d} x_d) / C_d
    inv[d][0] = Fraction((-1) ** d)
    for l in range(1, d):
        inv[l - 1][l] = 1 / g[l][l - 1]
    inv[d - 1][d] = 1 / g[d][d - 1]
    inv[d - 1][0] = -g[d][d] * inv[d][0] / g[d][d - 1]
    return inv


def gauge_gstv(coeffs: CoefficientArray) -> GaugeData:
    """Gauge the corrugated Lax matrices (λ at the second place) into the cluster form.

    Ñ_j = g_j^{-1} N'_j g_{j+1} / a_{j+1,d} has λ at (1,0), ones on the rest of the subdiagonal,
    a one in the corner (d,d), and x_j, x_j + (-1)^d y_j at the end of the top row.
    """
    d, n = coeffs.d, coeffs.n
    if d < 3:
        raise BadArguments(f"the corrugated gauge needs d >= 3, got d={d}")
    variant = partial(d, 1, 2)
    _check_compatible(coeffs, variant)
    for j in range(n):
        if coeffs.coeff(j, d) == 0:
            raise DivisionByZero(f"a_{{{j},{d}}} vanishes", index=j)

    x, y, matrices = [], [], []
    for j in range(n):
        denominators = math.prod((coeffs.coeff(j - l, d) for l in range(d)), start=Fraction(1))
        x_j = coeffs.coeff(j, 1) / denominators
        y_j = 1 / (denominators * coeffs.coeff(j + 1, d))
        x.append(x_j)
        y.append(y_j)

        g_inv = [[LaurentPoly.constant(v) for v in row] for row in _gauge_inverse(coeffs, j)]
        g_next = [[LaurentPoly.constant(v) for v in row] for row in _gauge_matrix(coeffs, j + 1)]
        scale = 1 / coeffs.coeff(j + 1, d)
        gauged = matrix_multiply(matrix_multiply(g_inv, display_matrix(coeffs, j, variant)), g_next)
        gauged = [[entry * scale for entry in row] for row in gauged]

        expected = [[ZERO] * (d + 1) for _ in range(d + 1)]
        expected[0][d - 1] = LaurentPoly.constant(x_j)
        expected[0][d] = LaurentPoly.constant(x_j + (-1) ** d * y_j)
        expected[1][0] = LAMBDA
        for r in range(2, d):
            expected[r][r - 1] = ONE
        expected[d][d - 1] = ONE
        expected[d][d] = ONE
        assert gauged == expected, f"gauged corrugated matrix at vertex {j} has the wrong shape"
        matrices.append(gauged)

    total = math.prod((coeffs.coeff(j, d) for j in range(n)), start=Fraction(1))
    return GaugeData(tuple(x), tuple(y), matrices, total)


def gauge_spectral_function(gauge: GaugeData) -> LaurentBivariate:
    """det(Ñ_0 ... Ñ_{n-1} - k·Id)."""
    return characteristic_function(ordered_product(gauge.matrices))

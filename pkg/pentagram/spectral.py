"""Spectral functions R(k, λ) = det(T_0(λ) - k·Id): first integrals, Casimirs, branching and genus."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from sympy import Poly, Rational, Symbol, discriminant

from .errors import NonSimpleBranching, StructureMismatch, ZeroDiscriminant
from .laurent import LaurentBivariate, ordered_product, trace
from .lax import (
    LaxVariant,
    display_matrix,
    monodromy_determinant,
    spectral_function,
)
from .polygon import CoefficientArray, TwistedPolygon, as_polygon

Window = Tuple[int, int]

# names of the k^{d}, k^{d-1}, k^{d-2} coefficient families in dimension 3
FAMILY_NAMES_3D = {3: "G", 2: "J", 1: "I"}


def family_name(d: int, power: int) -> str:
    if d == 3 and power in FAMILY_NAMES_3D:
        return FAMILY_NAMES_3D[power]
    return f"e{d + 1 - power}"


def expected_windows(variant: LaxVariant, n: int) -> Optional[Dict[int, Window]]:
    """Tabulated λ-exponent windows of each k^p coefficient, for d = 3 and odd n only."""
    if variant.d != 3 or n % 2 == 0 or variant.tilde:
        return None
    q = n // 2
    third, two_thirds = n // 3, (2 * n) // 3
    if variant.name == "dented" and variant.m == 1:
        windows = {3: (-q, 0), 2: (-n, -n + two_thirds), 1: (-n, -n + third), 0: (-n, -n)}
    elif variant.name == "dented" and variant.m == 2:
        windows = {3: (-third, 0), 2: (-two_thirds, 0), 1: (-n, -n + q), 0: (-n, -n)}
    elif variant.name == "short_diagonal_3d":
        windows = {3: (-n, -n + q), 2: (-q - n, -n), 1: (-2 * n, -2 * n + q), 0: (-2 * n, -2 * n)}
    elif variant.name == "corrugated_3d":
        n_0 = third - math.gcd(n - 1, 3) // 3
        windows = {
            3: (-third, 0),
            2: (-two_thirds, -two_thirds + n_0),
            1: (-n, -n + third),
            0: (-n, -n),
        }
    else:
        return None
    windows[4] = (0, 0)
    return windows


@dataclass
class InvariantSet:
    """Coefficient families of R indexed from the low end of their λ-window."""

    variant: str
    d: int
    n: int
    windows: Dict[int, Window]
    families: Dict[str, Dict[int, Fraction]] = field(default_factory=dict)
    tabulated: bool = False

    @property
    def count(self) -> int:
        """Number of coefficient slots of k^1..k^d, the first integrals."""
        return sum(
            hi - lo + 1 for p, (lo, hi) in self.windows.items() if 1 <= p <= self.d
        )

    def value(self, family: str, index: int) -> Fraction:
        return self.families[family].get(index, Fraction(0))

    def todict(self):
        return {
            "windows": {str(p): list(w) for p, w in sorted(self.windows.items())},
            "families": {
                name: {str(i): str(v) for i, v in sorted(values.items())}
                for name, values in self.families.items()
            },
            "count": self.count,
            "tabulated": self.tabulated,
        }


def extract_invariants(R: LaurentBivariate, variant: LaxVariant, n: int) -> InvariantSet:
    """Split R into the families e_i = (-1)^{d+1+i} · [k^{d+1-i}] R.

    Tabulated variants have their windows checked; a monomial outside raises StructureMismatch.
    """
    d = variant.d
    expected = expected_windows(variant, n)
    if expected is not None:
        for (i, j), c in R.items():
            lo, hi = expected.get(i, (1, 0))
            if not lo <= j <= hi:
                raise StructureMismatch(
                    f"{variant}: monomial k^{i} λ^{j} lies outside the window {expected.get(i)}",
                    detail={"k": i, "lambda": j, "coeff": str(c)},
                )
        if R.coeff(d + 1, 0) != (-1) ** (d + 1):
            raise StructureMismatch(f"{variant}: leading k^{d + 1} coefficient is not (-1)^(d+1)")
        windows = expected
    else:
        windows = {}
        for p in range(d + 2):
            w = R.window(p)
            if w is not None:
                windows[p] = w

    invariants = InvariantSet(variant.name, d, n, dict(windows), tabulated=expected is not None)
    for power in range(1, d + 1):
        if power not in windows:
            continue
        lo, hi = windows[power]
        sign = (-1) ** (2 * d + 2 - power)  # i = d+1-power
        invariants.families[family_name(d, power)] = {
            j - lo: sign * R.coeff(power, j) for j in range(lo, hi + 1)
        }
    return invariants


def _product(coeffs: CoefficientArray, k: int) -> Fraction:
    return math.prod((coeffs.coeff(j, k) for j in range(coeffs.n)), start=Fraction(1))


def casimirs(coeffs: CoefficientArray, variant: LaxVariant) -> Dict[str, Fraction]:
    """Closed product forms of the tabulated Casimirs, straight from the coefficients.

    Keys are family name and index in `InvariantSet.families`, e.g. "G_2".
    """
    n = coeffs.n
    if variant.d != 3 or n % 2 == 0:
        return {}
    if variant.name == "dented" and variant.m == 1:
        # I_0 is the trace of the displayed monodromy at λ = 0
        at_zero = [
            [[entry.coeff(0) for entry in row] for row in display_matrix(coeffs, j, variant)]
            for j in range(n)
        ]
        zero = Fraction(0)
        return {
            f"G_{n // 2}": _product(coeffs, 1),
            "J_0": (-1) ** n * _product(coeffs, 2),
            "I_0": trace(ordered_product(at_zero, zero=zero, one=Fraction(1)), zero=zero),
        }
    if variant.name == "dented" and variant.m == 2:
        return {
            f"J_{(2 * n) // 3}": (-1) ** n * _product(coeffs, 2),
            "I_0": _product(coeffs, 3),
        }
    if variant.name == "short_diagonal_3d":
        return {"I_0": _product(coeffs, 3), "G_0": _product(coeffs, 1)}
    if variant.name == "corrugated_3d":
        return {f"G_{n // 3}": _product(coeffs, 1), "I_0": _product(coeffs, 3)}
    return {}


def casimir_mismatches(invariants: InvariantSet, values: Dict[str, Fraction]) -> List[str]:
    """Casimir keys whose product form disagrees with the extracted family coefficient."""
    wrong = []
    for key, value in values.items():
        name, index = key.split("_")
        if invariants.value(name, int(index)) != value:
            wrong.append(key)
    return wrong


@dataclass
class BranchSegment:
    """One edge of the Newton polygon: `multiplicity` cycles of `cycle_length` sheets each."""

    slope: Fraction  # branches behave like k ~ c·λ^{-slope}
    cycle_length: int
    multiplicity: int
    edge_polynomial: List[Fraction]  # ascending coefficients in y = k^cycle_length
    squarefree: bool

    def todict(self):
        return {
            "slope": str(self.slope),
            "cycle_length": self.cycle_length,
            "multiplicity": self.multiplicity,
            "edge_polynomial": [str(c) for c in self.edge_polynomial],
            "squarefree": self.squarefree,
        }


@dataclass
class BranchData:
    location: str  # "0" or "inf"
    segments: List[BranchSegment]

    @property
    def sheets(self) -> int:
        return sum(s.cycle_length * s.multiplicity for s in self.segments)

    @property
    def ramification(self) -> int:
        return sum(s.multiplicity * (s.cycle_length - 1) for s in self.segments)

    def todict(self):
        return {"location": self.location, "segments": [s.todict() for s in self.segments]}


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_convex_hull(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Lower hull of lattice points, left to right, without collinear interior points."""
    lowest: Dict[int, int] = {}
    for i, j in points:
        lowest[i] = min(j, lowest.get(i, j))
    hull: List[Tuple[int, int]] = []
    for p in sorted(lowest.items()):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def _is_squarefree(coefficients: List[Fraction]) -> bool:
    y = Symbol("y")
    poly = Poly(
        [Rational(c.numerator, c.denominator) for c in reversed(coefficients)], y, domain="QQ"
    )
    return poly.degree() <= 0 or poly.is_sqf


def newton_branches(R: LaurentBivariate, at: Union[int, str] = 0) -> BranchData:
    """Puiseux cycle structure of the roots k(λ) near λ = 0 or λ = ∞."""
    assert not R.is_zero(), "spectral function is zero"
    location = "0" if at in (0, "0") else "inf"
    sign = 1 if location == "0" else -1
    terms = {(i, sign * j): c for (i, j), c in R.terms.items()}
    hull = lower_convex_hull(list(terms))

    segments = []
    for (i1, j1), (i2, j2) in zip(hull, hull[1:]):
        length, rise = i2 - i1, j2 - j1
        cycle = length // math.gcd(length, abs(rise)) if rise else 1
        edge = [Fraction(0)] * (length // cycle + 1)
        for (i, j), c in terms.items():
            if i1 <= i <= i2 and (j - j1) * length == rise * (i - i1):
                edge[(i - i1) // cycle] += c
        segments.append(
            BranchSegment(
                slope=Fraction(rise, length) * sign,
                cycle_length=cycle,
                multiplicity=length // cycle,
                edge_polynomial=edge,
                squarefree=_is_squarefree(edge),
            )
        )
    return BranchData(location, segments)


@dataclass
class DiscriminantData:
    count: int
    squarefree: bool
    order_at_zero: int
    degree: int


def discriminant_data(R: LaurentBivariate) -> DiscriminantData:
    """Zeros of Disc_k(λ^s R) away from λ = 0, counted with multiplicity."""
    k, lam = Symbol("k"), Symbol("lam")
    poly, _ = R.to_sympy(k, lam)
    disc = Poly(discriminant(poly.as_expr(), k), lam)
    if disc.is_zero:
        raise ZeroDiscriminant("discriminant of R in k vanishes identically")
    order = min(m[0] for m in disc.monoms())
    reduced = disc.exquo(Poly(lam**order, lam))
    return DiscriminantData(
        count=disc.degree() - order,
        squarefree=reduced.degree() <= 0 or reduced.is_sqf,
        order_at_zero=order,
        degree=disc.degree(),
    )


def finite_branch_count(R: LaurentBivariate) -> int:
    return discriminant_data(R).count


def genus(R: LaurentBivariate, d: Optional[int] = None) -> int:
    """Riemann–Hurwitz for the (d+1)-sheeted cover λ: 2 - 2g = 2(d+1) - ν."""
    d = R.k_degree - 1 if d is None else d
    disc = discriminant_data(R)
    if not disc.squarefree:
        raise NonSimpleBranching("discriminant has repeated roots away from λ = 0")
    nu = disc.count
    for at in (0, "inf"):
        branches = newton_branches(R, at)
        if not all(s.squarefree for s in branches.segments):
            raise NonSimpleBranching(
                f"Newton polygon at λ = {branches.location} has a repeated leading coefficient",
                detail=branches.todict(),
            )
        nu += branches.ramification
    if nu % 2:
        raise NonSimpleBranching(f"total ramification {nu} is odd")
    return (nu - 2 * d) // 2


def rescale_k(R: LaurentBivariate, c) -> LaurentBivariate:
    """c^{d+1} R(k/c, λ), relating the ã-gauge spectral function to the dented one (c = Π a_{j,d})."""
    c = Fraction(c)
    top = R.k_degree
    return R.map_terms(lambda i, j, coeff: (i, j, coeff * c ** (top - i)))


def reciprocal_k(R: LaurentBivariate, c, det_t0) -> LaurentBivariate:
    """(-k)^{d+1} R(1/(c·k), λ) / det T_0(λ), the spectral function of c^{-1} T_0^{-1}."""
    c = Fraction(c)
    top = R.k_degree
    (shift, scale), = det_t0.terms.items()
    sign = (-1) ** top
    return R.map_terms(
        lambda i, j, coeff: (top - i, j - shift, sign * coeff * c ** (-i) / scale)
    )


def spectral_report(
    poly: Union[TwistedPolygon, CoefficientArray], variant: LaxVariant, with_genus: bool = False
) -> dict:
    coeffs = as_polygon(poly).require_coefficients()
    R = spectral_function(coeffs, variant)
    invariants = extract_invariants(R, variant, coeffs.n)
    disc = discriminant_data(R)
    genus_value, note = None, None
    if with_genus:
        try:
            genus_value = genus(R, coeffs.d)
        except NonSimpleBranching as exc:
            note = exc.message
    report = {
        "variant": variant.todict(),
        "n": coeffs.n,
        "d": coeffs.d,
        "R": R.todict(),
        "invariants": invariants.todict(),
        "casimirs": {k: str(v) for k, v in casimirs(coeffs, variant).items()},
        "genus": genus_value,
        "finite_branch_count": disc.count,
        "squarefree": disc.squarefree,
        "branches": [newton_branches(R, at).todict() for at in (0, "inf")],
    }
    if note is not None:
        report["genus_note"] = note
    return report


__all__ = [
    "BranchData",
    "BranchSegment",
    "InvariantSet",
    "casimirs",
    "casimir_mismatches",
    "discriminant_data",
    "expected_windows",
    "extract_invariants",
    "finite_branch_count",
    "genus",
    "lower_convex_hull",
    "monodromy_determinant",
    "newton_branches",
    "reciprocal_k",
    "rescale_k",
    "spectral_function",
    "spectral_report",
]

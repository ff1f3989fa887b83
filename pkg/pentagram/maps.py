"""Pentagram-type maps on twisted polygons.

Every map is computed geometrically (hyperplanes through vertices, then intersections) and the
image is re-encoded through `coefficients_from_vertices`. Images reuse the source monodromy matrix,
which is exact: diagonal hyperplanes of v_{k+n} = M v_k are the M-images of those of v_k.
"""
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from .errors import (
    BadArguments,
    DegenerateInput,
    DegenerateIntersection,
    DegenerateSpan,
    GenericityFailure,
    NonPeriodic,
    NotCorrugated,
    NotPartiallyCorrugated,
    PentagramError,
    VariantMismatch,
)
from .polygon import (
    CORRUGATED,
    CoefficientArray,
    CorrugationSpec,
    TwistedPolygon,
    as_polygon,
    is_corrugated,
    is_partially_corrugated,
    polygon_from_points,
    random_generic_polygon,
)
from .projective import (
    Hyperplane,
    LiftedVertex,
    columns,
    det,
    equivalent_sequences,
    hyperplane_through,
    intersect_hyperplanes,
    inverse,
    nullspace,
    rank,
    span_intersection,
    transpose,
)

JumpTuple = Tuple[int, ...]

VARIANTS = (
    "generalized",
    "dented",
    "deep_dented",
    "short_diagonal",
    "corrugated",
    "partially_corrugated",
)


def jump_offsets(jumps: Sequence[int]) -> List[int]:
    """Cumulative sums (0, i_1, i_1+i_2, ...)."""
    offsets = [0]
    for i in jumps:
        offsets.append(offsets[-1] + i)
    return offsets


def reverse_jumps(jumps: Sequence[int]) -> JumpTuple:
    """I* = (i_{d-1}, ..., i_1)."""
    return tuple(reversed(jumps))


def unit_jumps(d: int) -> JumpTuple:
    return (1,) * (d - 1)


def dented_jumps(d: int, m: int, p: int = 2) -> JumpTuple:
    """(1,..,1,p,1,..,1) with p at position m (1-based); m = 0 or d gives all ones."""
    if not 0 <= m <= d:
        raise BadArguments(f"dent position must satisfy 0 <= m <= d, got m={m}, d={d}")
    if m in (0, d):
        return unit_jumps(d)
    return tuple(p if i == m else 1 for i in range(1, d))


def parse_jumps(text: Union[str, Sequence[int]]) -> JumpTuple:
    if isinstance(text, str):
        try:
            jumps = tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
        except ValueError:
            raise BadArguments(f"bad jump tuple {text!r}, expected e.g. '1,2'")
    else:
        jumps = tuple(int(x) for x in text)
    if not jumps or any(i < 1 for i in jumps):
        raise BadArguments(f"jump tuples need positive entries, got {jumps}")
    return jumps


@dataclass(frozen=True)
class MapSpec:
    variant: str
    I: Optional[JumpTuple] = None
    J: Optional[JumpTuple] = None
    m: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    r: Optional[int] = None
    l: Optional[int] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise BadArguments(f"unknown map variant {self.variant!r}, choose from {VARIANTS}")
        required = {
            "generalized": ("I", "J"),
            "dented": ("m",),
            "deep_dented": ("m", "p"),
            "partially_corrugated": ("q", "r", "l"),
        }.get(self.variant, ())
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise BadArguments(f"variant {self.variant} needs {', '.join(missing)}")

    @classmethod
    def generalized(cls, I: Sequence[int], J: Sequence[int]) -> "MapSpec":
        return cls("generalized", I=tuple(I), J=tuple(J))

    @classmethod
    def dented(cls, m: int) -> "MapSpec":
        return cls("dented", m=m)

    @classmethod
    def deep_dented(cls, m: int, p: int) -> "MapSpec":
        return cls("deep_dented", m=m, p=p)

    @classmethod
    def from_flags(
        cls,
        variant: Optional[str] = None,
        m: Optional[int] = None,
        p: Optional[int] = None,
        I: Optional[str] = None,
        J: Optional[str] = None,
        q: Optional[int] = None,
        r: Optional[int] = None,
        l: Optional[int] = None,
    ) -> "MapSpec":
        if variant is None:
            raise BadArguments("a map needs --map or --variant")
        return cls(
            variant,
            I=None if I is None else parse_jumps(I),
            J=None if J is None else parse_jumps(J),
            m=m,
            p=p,
            q=q,
            r=r,
            l=l,
        )

    @classmethod
    def from_json(cls, doc: Union[str, dict]) -> "MapSpec":
        if isinstance(doc, str):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise BadArguments(f"map spec is not valid JSON: {exc}")
        if not isinstance(doc, dict) or "variant" not in doc:
            raise BadArguments(f"map spec needs a 'variant' key, got {doc!r}")
        unknown = set(doc) - {"variant", "I", "J", "m", "p", "q", "r", "l"}
        if unknown:
            raise BadArguments(f"unknown map spec keys {sorted(unknown)}")
        return cls(
            doc["variant"],
            I=None if doc.get("I") is None else parse_jumps(doc["I"]),
            J=None if doc.get("J") is None else parse_jumps(doc["J"]),
            m=doc.get("m"),
            p=doc.get("p"),
            q=doc.get("q"),
            r=doc.get("r"),
            l=doc.get("l"),
        )

    def to_json(self) -> dict:
        doc = {"variant": self.variant}
        for name in ("I", "J"):
            if getattr(self, name) is not None:
                doc[name] = list(getattr(self, name))
        for name in ("m", "p", "q", "r", "l"):
            if getattr(self, name) is not None:
                doc[name] = getattr(self, name)
        return doc

    @property
    def corrugation(self) -> CorrugationSpec:
        if self.variant == "corrugated":
            return CORRUGATED
        if self.variant == "partially_corrugated":
            return CorrugationSpec(self.q, self.r, self.l)
        raise VariantMismatch(f"{self.variant} is not a corrugated variant")

    def jumps(self, d: int) -> Tuple[JumpTuple, JumpTuple]:
        """The (I, J) pair realizing this map in dimension d."""
        if d < 2:
            raise BadArguments(f"dimension must be at least 2, got d={d}")
        if self.variant == "generalized":
            I, J = self.I, self.J
        elif self.variant == "dented":
            I, J = dented_jumps(d, self.m), unit_jumps(d)
        elif self.variant == "deep_dented":
            if not 1 <= self.m <= d - 1 or self.p < 1:
                raise BadArguments(f"deep-dented map needs 1 <= m <= d-1 and p >= 1, got {self}")
            I, J = dented_jumps(d, self.m, self.p), unit_jumps(d)
        elif self.variant == "short_diagonal":
            I, J = (2,) * (d - 1), unit_jumps(d)
        else:
            raise VariantMismatch(f"{self.variant} maps are not defined by jump tuples")
        if len(I) != d - 1 or len(J) != d - 1:
            raise BadArguments(f"jump tuples must have d-1={d - 1} entries, got I={I}, J={J}")
        return tuple(I), tuple(J)

    def dual(self, d: int) -> "MapSpec":
        """T_{J*,I*}, the inverse of this map modulo an index shift."""
        I, J = self.jumps(d)
        return MapSpec.generalized(reverse_jumps(J), reverse_jumps(I))

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def shift_polygon(poly: TwistedPolygon, c: int) -> TwistedPolygon:
    return poly.shifted(c)


def diagonal_plane(poly: TwistedPolygon, k: int, I: Sequence[int]) -> Hyperplane:
    """Hyperplane P_k through v_k, v_{k+i_1}, ..., v_{k+i_1+...+i_{d-1}}."""
    points = [poly.vertex(k + s) for s in jump_offsets(I)]
    try:
        return hyperplane_through(points, poly.d)
    except DegenerateSpan as exc:
        raise DegenerateSpan(exc.message, index=k)


def dented_hyperplane(poly: TwistedPolygon, k: int, m: int) -> Hyperplane:
    """Hyperplane through v_k..v_{k+d} without v_{k+m}."""
    return diagonal_plane(poly, k, dented_jumps(poly.d, m))


def _reencode(
    poly: TwistedPolygon, points: List[LiftedVertex], monodromy_matrix, dual: bool
) -> TwistedPolygon:
    try:
        return polygon_from_points(points, poly.d, poly.n, monodromy_matrix, dual=dual)
    except DegenerateInput as exc:
        raise GenericityFailure(f"image polygon is not generic: {exc.message}", index=exc.index)


def generalized_map(poly: TwistedPolygon, I: Sequence[int], J: Sequence[int]) -> TwistedPolygon:
    """T_{I,J} v_k = P_k ∩ P_{k+j_1} ∩ ... ∩ P_{k+j_1+...+j_{d-1}}."""
    offsets = jump_offsets(J)
    planes: Dict[int, Hyperplane] = {}
    for k in range(poly.n + offsets[-1]):
        planes[k] = diagonal_plane(poly, k, I)
    image = []
    for k in range(poly.n):
        try:
            image.append(intersect_hyperplanes([planes[k + s] for s in offsets], poly.d))
        except DegenerateIntersection as exc:
            raise DegenerateIntersection(exc.message, index=k)
    return _reencode(poly, image, poly.monodromy_matrix, poly.dual)


def apply_map(poly: Union[TwistedPolygon, CoefficientArray], spec: MapSpec) -> TwistedPolygon:
    poly = as_polygon(poly)
    if spec.variant == "corrugated":
        return corrugated_map(poly)
    if spec.variant == "partially_corrugated":
        return partially_corrugated_map(poly, spec.corrugation)
    I, J = spec.jumps(poly.d)
    return generalized_map(poly, I, J)


def iterate_map(
    poly: Union[TwistedPolygon, CoefficientArray],
    spec: MapSpec,
    iterations: int,
    trace: bool = False,
    progress: bool = False,
) -> Tuple[TwistedPolygon, List[TwistedPolygon]]:
    """Apply `spec` repeatedly; with `trace` the list holds the source and every image."""
    poly = as_polygon(poly)
    steps = [poly] if trace else []
    for step in tqdm(range(iterations), desc=spec.variant, disable=not progress, file=sys.stderr):
        try:
            poly = apply_map(poly, spec)
        except PentagramError as exc:
            if exc.detail is None:
                exc.detail = {"step": step}
            raise
        if trace:
            steps.append(poly)
    return poly, steps


def alpha_map(poly: TwistedPolygon, I: Sequence[int]) -> TwistedPolygon:
    """Diagonal hyperplanes of `poly`, read as a twisted polygon of the dual space."""
    I = tuple(I)
    if len(I) != poly.d - 1:
        raise BadArguments(f"jump tuple must have d-1={poly.d - 1} entries, got {I}")
    planes = [diagonal_plane(poly, k, I) for k in range(poly.n)]
    # covectors transform by the inverse transpose
    dual_monodromy = transpose(inverse(poly.monodromy_matrix))
    return _reencode(poly, planes, dual_monodromy, not poly.dual)


def detect_shift(a: TwistedPolygon, b: TwistedPolygon) -> Optional[int]:
    """Smallest c in [0, n) such that b is projectively equivalent to a shifted by c."""
    if (a.d, a.n, a.dual) != (b.d, b.n, b.dual):
        return None
    length = a.n + 2 * a.d + 2
    target = b.window(0, length)
    for c in range(a.n):
        if equivalent_sequences(a.window(c, length), target, a.d) is not None:
            return c
    return None


def _line_intersection(
    first: Sequence[LiftedVertex], second: Sequence[LiftedVertex], k: int
) -> LiftedVertex:
    basis = span_intersection(first, second)
    if not basis:
        raise NotCorrugated(f"diagonal lines at vertex {k} do not meet", index=k)
    if len(basis) > 1:
        raise DegenerateIntersection(f"diagonal lines at vertex {k} coincide", index=k)
    return basis[0]


def _require_corrugated(poly: TwistedPolygon) -> None:
    if not is_corrugated(poly):
        raise NotCorrugated(
            f"v_j, v_(j+1), v_(j+d), v_(j+d+1) do not span a 2-plane (d={poly.d}, n={poly.n})"
        )


def corrugated_map(poly: TwistedPolygon) -> TwistedPolygon:
    """T_cor v_k = (v_k, v_{k+d}) ∩ (v_{k+1}, v_{k+d+1})."""
    _require_corrugated(poly)
    d = poly.d
    image = [
        _line_intersection(
            [poly.vertex(k), poly.vertex(k + d)], [poly.vertex(k + 1), poly.vertex(k + d + 1)], k
        )
        for k in range(poly.n)
    ]
    return _reencode(poly, image, poly.monodromy_matrix, poly.dual)


def inverse_corrugated_map(poly: TwistedPolygon) -> TwistedPolygon:
    """T̂_cor v_k = (v_{k-1}, v_k) ∩ (v_{k+d-1}, v_{k+d})."""
    _require_corrugated(poly)
    d = poly.d
    image = [
        _line_intersection(
            [poly.vertex(k - 1), poly.vertex(k)], [poly.vertex(k + d - 1), poly.vertex(k + d)], k
        )
        for k in range(poly.n)
    ]
    return _reencode(poly, image, poly.monodromy_matrix, poly.dual)


def diagonal_subspace(poly: TwistedPolygon, j: int, spec: CorrugationSpec) -> List[LiftedVertex]:
    """Vertices spanning the j-th diagonal subspace of a (q, r; ℓ) polygon."""
    return [poly.vertex(i) for i in spec.subspace_indices(j, poly.d)]


def _annihilator(poly: TwistedPolygon, j: int, spec: CorrugationSpec) -> List[Hyperplane]:
    vertices = diagonal_subspace(poly, j, spec)
    if rank(vertices) != spec.l + 1:
        raise NotPartiallyCorrugated(
            f"diagonal subspace {j} does not have rank {spec.l + 1}", index=j
        )
    return nullspace([list(v) for v in vertices])


def partially_corrugated_map(poly: TwistedPolygon, spec: CorrugationSpec) -> TwistedPolygon:
    """T_par v_j = P_j ∩ P_{j+1} ∩ ... ∩ P_{j+ℓ} for the diagonal subspaces P_j."""
    spec.validate(poly.d)
    if not is_partially_corrugated(poly, spec):
        raise NotPartiallyCorrugated(f"polygon is not {spec.q, spec.r, spec.l}-corrugated")
    annihilators = {j: _annihilator(poly, j, spec) for j in range(poly.n + spec.l)}
    image = []
    for j in range(poly.n):
        equations = [list(h) for i in range(j, j + spec.l + 1) for h in annihilators[i]]
        kernel = nullspace(equations, poly.d + 1)
        if len(kernel) != 1:
            raise DegenerateIntersection(
                f"diagonal subspaces {j}..{j + spec.l} meet in rank {len(kernel)}", index=j
            )
        image.append(kernel[0])
    return _reencode(poly, image, poly.monodromy_matrix, poly.dual)


def random_corrugated_polygon(
    d: int,
    n: int,
    seed: int,
    bound: int = 5,
    max_retries: int = 100,
    spec: CorrugationSpec = CORRUGATED,
) -> CoefficientArray:
    """Seeded (q, r; ℓ)-corrugated coefficients whose image under the matching map is generic."""
    spec.validate(d)

    def image(poly):
        if spec == CORRUGATED:
            return corrugated_map(poly)
        return partially_corrugated_map(poly, spec)

    return random_generic_polygon(
        d, n, seed, bound, max_retries, zero_slots=spec.zero_slots(d), accept=image
    )


def dual_dented_image(poly: Union[TwistedPolygon, CoefficientArray], m: int, k: int) -> LiftedVertex:
    """R_k = a_{k,m} V_{k+m} + ... + a_{k,1} V_{k+1} + (-1)^d V_k.

    R_k spans span(v_k..v_{k+m}) ∩ span(v_{k+m+1}..v_{k+d+1}); both memberships are checked.
    """
    if isinstance(poly, TwistedPolygon):
        poly = poly.require_coefficients()
    return _dual_dented_vector(TwistedPolygon.from_coefficients(poly), m, k)


def _dual_dented_vector(seeded: TwistedPolygon, m: int, k: int) -> LiftedVertex:
    d = seeded.d
    if not 1 <= m <= d - 1:
        raise BadArguments(f"dent position must satisfy 1 <= m <= d-1, got m={m}")
    r = [Fraction((-1) ** d) * x for x in seeded.vertex(k)]
    for i in range(1, m + 1):
        a = seeded.coeffs.coeff(k, i)
        r = [x + a * y for x, y in zip(r, seeded.vertex(k + i))]
    r = tuple(r)
    head = seeded.window(k, m + 1)
    tail = seeded.window(k + m + 1, d - m + 1)
    if rank(head + [r]) != m + 1 or rank(tail + [r]) != d - m + 1:
        raise DegenerateSpan(f"spans around vertex {k} are degenerate", index=k)
    return r


def dual_dented_map(poly: Union[TwistedPolygon, CoefficientArray], m: int) -> TwistedPolygon:
    """The polygon of the vectors R_k, the inverse of the dented map T_m modulo a shift."""
    if isinstance(poly, TwistedPolygon):
        poly = poly.require_coefficients()
    source = TwistedPolygon.from_coefficients(poly)
    image = [_dual_dented_vector(source, m, k) for k in range(poly.n)]
    return _reencode(source, image, source.monodromy_matrix, False)


def cramer_dented_coefficients(
    poly: Union[TwistedPolygon, CoefficientArray], m: int
) -> CoefficientArray:
    """Coefficients of `dual_dented_map` by Cramer's rule on the R_k.

    W_k = λ_k R_k with λ_{k+d+1} / λ_k = D_k / D_{k+1}, D_k = det(R_k, ..., R_{k+d});
    the λ_k are n-periodic, which needs gcd(n, d+1) = 1.
    """
    if isinstance(poly, TwistedPolygon):
        poly = poly.require_coefficients()
    d, n = poly.d, poly.n
    if math.gcd(n, d + 1) != 1:
        raise NonPeriodic(f"Cramer normalization needs gcd(n, d+1) = 1, got n={n}, d={d}")
    seeded = TwistedPolygon.from_coefficients(poly)
    r = [_dual_dented_vector(seeded, m, k) for k in range(n + d + 1)]
    dets = [det(columns(r[k : k + d + 1])) for k in range(n)]
    if any(x == 0 for x in dets):
        k = dets.index(Fraction(0))
        raise DegenerateSpan(f"vectors R_{k}..R_{k + d} are dependent", index=k)

    lam = {0: Fraction(1)}
    k = 0
    for _ in range(n - 1):
        lam[(k + d + 1) % n] = lam[k] * dets[k] / dets[(k + 1) % n]
        k = (k + d + 1) % n

    rows = []
    for k in range(n):
        window = r[k : k + d + 1]
        row = []
        for j in range(1, d + 1):
            replaced = list(window)
            replaced[j] = r[k + d + 1]
            beta = det(columns(replaced)) / dets[k]
            row.append(beta * lam[(k + d + 1) % n] / lam[(k + j) % n])
        rows.append(tuple(row))
    return CoefficientArray(d, n, tuple(rows))


def scaling_transform(coeffs: CoefficientArray, m: int, s) -> CoefficientArray:
    """a_{j,k} -> s^{-k} a_{j,k} for k <= m and s^{d+1-k} a_{j,k} for k > m."""
    s = Fraction(s)
    if s == 0:
        raise BadArguments("scaling parameter must be nonzero")
    d = coeffs.d
    return coeffs.map_entries(lambda j, k, a: a * s ** (-k if k <= m else d + 1 - k))


def flip_lift_sign(coeffs: CoefficientArray) -> CoefficientArray:
    """a_{j,k} -> (-1)^k a_{j,k}, the array of the lifts (-1)^j V_j when d is odd."""
    return coeffs.map_entries(lambda j, k, x: x * (-1) ** k)


def equal_up_to_lift_sign(a: CoefficientArray, b: CoefficientArray) -> bool:
    """Equality of arrays, for odd d also modulo the lift sign flip."""
    if a == b:
        return True
    return a.d % 2 == 1 and a == flip_lift_sign(b)

"""Twisted polygons: coefficient arrays, lifted vertex sequences and the conversions between them."""
import dataclasses
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from sympy import integer_nthroot

from .errors import (
    BadArguments,
    DegenerateInput,
    DegenerateIntersection,
    DegenerateSpan,
    DivisionByZero,
    ExhaustedRetries,
    GenericityFailure,
    NonPeriodic,
    NormalizationFailure,
)
from .laurent import fraction_charpoly
from .projective import (
    LiftedVertex,
    Matrix,
    ProjectiveTransform,
    columns,
    det,
    equivalent_sequences,
    format_rational,
    identity,
    inverse,
    matmul,
    matvec,
    parse_rational,
    primitive,
    proportional,
    rank,
    solve,
    vector,
)


@dataclass(frozen=True)
class CoefficientArray:
    """Entry a[j][k-1] is a_{j,k} of V_{j+d+1} = Σ_k a_{j,k} V_{j+k} + (-1)^d V_j."""

    d: int
    n: int
    a: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        assert len(self.a) == self.n, f"expected {self.n} rows, got {len(self.a)}"
        assert all(len(row) == self.d for row in self.a)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "CoefficientArray":
        rows = tuple(tuple(parse_rational(x) for x in row) for row in rows)
        return cls(d=len(rows[0]), n=len(rows), a=rows)

    def coeff(self, j: int, k: int) -> Fraction:
        assert 1 <= k <= self.d
        return self.a[j % self.n][k - 1]

    def row(self, j: int) -> Tuple[Fraction, ...]:
        return self.a[j % self.n]

    def map_entries(self, fn) -> "CoefficientArray":
        """fn(j, k, a_jk) -> new entry."""
        return CoefficientArray(
            self.d,
            self.n,
            tuple(
                tuple(fn(j, k + 1, x) for k, x in enumerate(row))
                for j, row in enumerate(self.a)
            ),
        )

    def todict(self):
        return {
            "d": self.d,
            "n": self.n,
            "coeffs": [[format_rational(x) for x in row] for row in self.a],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "CoefficientArray":
        coeffs = cls.from_rows(doc["coeffs"])
        if coeffs.d != doc.get("d", coeffs.d) or coeffs.n != doc.get("n", coeffs.n):
            raise BadArguments("coefficient table does not match the declared d and n")
        return coeffs


@dataclass(frozen=True)
class QuasiPeriodicData:
    """(d+1)-periodic multipliers with a_{j+n,k} = a_{j,k} t_j / t_{j+k}."""

    t: Tuple[Fraction, ...]


@dataclass(frozen=True)
class QuasiPeriodicReport:
    """Coefficients of the seeded lift when no n-periodic representative exists over ℚ.

    `rows` holds a_{j,·} for j = 0..n (one row past the period).
    """

    d: int
    n: int
    rows: Tuple[Tuple[Fraction, ...], ...]
    t: QuasiPeriodicData
    tilde: Tuple[Tuple[Fraction, ...], ...]
    reason: str = ""

    def row(self, j: int) -> Tuple[Fraction, ...]:
        assert 0 <= j <= self.n
        return self.rows[j]

    def todict(self):
        return {
            "d": self.d,
            "n": self.n,
            "a": [[format_rational(x) for x in row] for row in self.rows[: self.n]],
            "t": [format_rational(x) for x in self.t.t],
            "tilde": [[format_rational(x) for x in row] for row in self.tilde],
            "reason": self.reason,
        }


@dataclass(frozen=True)
class CorrugationSpec:
    """(q, r; ℓ): q consecutive vertices and r consecutive vertices spanning a rank ℓ+1 subspace."""

    q: int
    r: int
    l: int

    def validate(self, d: int) -> "CorrugationSpec":
        if self.q < 2 or self.r < 2:
            raise BadArguments(f"cluster sizes must be at least 2, got {self}")
        if not max(self.q, self.r) <= self.l <= self.q + self.r - 2:
            raise BadArguments(f"need max(q,r) <= l <= q+r-2, got {self}")
        if self.l > d:
            raise BadArguments(f"l={self.l} exceeds the dimension d={d}")
        return self

    @property
    def m(self) -> int:
        return self.q - 1

    @property
    def is_minimal(self) -> bool:
        return self.q + self.r == self.l + 2

    def zero_slots(self, d: int) -> Tuple[int, ...]:
        """Indices k with a_{j,k} = 0 for polygons of this class (minimal specs only)."""
        if not self.is_minimal:
            raise BadArguments(f"{self} is not minimal (q+r != l+2), no coefficient pattern")
        return tuple(range(self.m + 1, d + self.m - self.l + 1))

    def subspace_indices(self, j: int, d: int) -> List[int]:
        second = j + self.q + d - self.l
        return list(range(j, j + self.q)) + list(range(second, second + self.r))

    @classmethod
    def parse(cls, text: str) -> "CorrugationSpec":
        try:
            q, r, l = (int(x) for x in text.replace(";", ",").split(","))
        except ValueError:
            raise BadArguments(f"expected 'q,r,l', got {text!r}")
        return cls(q, r, l)

    def todict(self):
        return {"q": self.q, "r": self.r, "l": self.l}


CORRUGATED = CorrugationSpec(2, 2, 2)


@dataclass(frozen=True, eq=False)
class TwistedPolygon:
    """Vertices V_0..V_{n-1} and a linear monodromy M with V_{j+n} = M V_j for every j.

    `coeffs` is present when the polygon has n-periodic coordinates; geometry only ever
    reads vertices and the monodromy. `dual` marks polygons whose points are covectors.
    """

    d: int
    n: int
    vertices: Tuple[LiftedVertex, ...]
    monodromy_matrix: Tuple[Tuple[Fraction, ...], ...]
    coeffs: Optional[CoefficientArray] = None
    dual: bool = False
    _powers: Dict[int, Matrix] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        assert len(self.vertices) == self.n
        assert all(len(v) == self.d + 1 for v in self.vertices)
        assert len(self.monodromy_matrix) == self.d + 1

    @classmethod
    def from_coefficients(cls, coeffs: CoefficientArray) -> "TwistedPolygon":
        window = vertices_from_coefficients(coeffs, coeffs.n + coeffs.d + 1)
        m = columns(window[coeffs.n :])
        return cls(
            d=coeffs.d,
            n=coeffs.n,
            vertices=tuple(window[: coeffs.n]),
            monodromy_matrix=tuple(tuple(row) for row in m),
            coeffs=coeffs,
        )

    @property
    def monodromy(self) -> ProjectiveTransform:
        return ProjectiveTransform(self.monodromy_matrix)

    def _power(self, q: int) -> Matrix:
        if q not in self._powers:
            if q == 0:
                self._powers[q] = identity(self.d + 1)
            elif q > 0:
                self._powers[q] = matmul(self.monodromy_matrix, self._power(q - 1))
            elif q == -1:
                self._powers[q] = inverse(self.monodromy_matrix)
            else:
                self._powers[q] = matmul(self._power(-1), self._power(q + 1))
        return self._powers[q]

    def vertex(self, j: int) -> LiftedVertex:
        q, r = divmod(j, self.n)
        if q == 0:
            return self.vertices[r]
        return matvec(self._power(q), self.vertices[r])

    def window(self, start: int, count: int) -> List[LiftedVertex]:
        return [self.vertex(j) for j in range(start, start + count)]

    def shifted(self, c: int) -> "TwistedPolygon":
        """v'_k = v_{k+c}."""
        coeffs = None
        if self.coeffs is not None:
            rows = tuple(self.coeffs.row(j + c) for j in range(self.n))
            coeffs = CoefficientArray(self.d, self.n, rows)
        return TwistedPolygon(
            self.d,
            self.n,
            tuple(self.window(c, self.n)),
            self.monodromy_matrix,
            coeffs,
            self.dual,
        )

    def require_coefficients(self) -> CoefficientArray:
        if self.coeffs is None:
            raise NonPeriodic(
                f"polygon (d={self.d}, n={self.n}) has no n-periodic coefficient array"
            )
        return self.coeffs

    def todict(self):
        doc = {"d": self.d, "n": self.n}
        if self.dual:
            doc["dual"] = True
        if self.coeffs is not None:
            doc["coeffs"] = self.coeffs.todict()["coeffs"]
            return doc
        doc["vertices"] = [[format_rational(x) for x in v] for v in self.vertices]
        doc["monodromy"] = [[format_rational(x) for x in row] for row in self.monodromy_matrix]
        report = coefficients_from_vertices(
            self.window(0, self.n), self.d, self.n, self.monodromy_matrix
        )
        if isinstance(report, QuasiPeriodicReport):
            doc["quasi_periodic"] = report.todict()
        return doc


def transfer_matrix(coeffs: CoefficientArray, j: int) -> Matrix:
    """N_j with (V_{j+1},...,V_{j+d+1}) = (V_j,...,V_{j+d}) N_j."""
    d = coeffs.d
    n_j = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    n_j[0][d] = Fraction((-1) ** d)
    for r in range(d):
        n_j[r + 1][r] = Fraction(1)
        n_j[r + 1][d] = coeffs.coeff(j, r + 1)
    return n_j


def vertices_from_coefficients(coeffs: CoefficientArray, count: int) -> List[LiftedVertex]:
    d = coeffs.d
    if count < d + 1:
        raise BadArguments(f"need at least d+1={d + 1} vertices, got count={count}")
    verts = [tuple(Fraction(int(i == j)) for j in range(d + 1)) for i in range(d + 1)]
    for j in range(count - d - 1):
        nxt = [Fraction((-1) ** d) * x for x in verts[j]]
        for k in range(1, d + 1):
            a = coeffs.coeff(j, k)
            if a:
                nxt = [x + a * y for x, y in zip(nxt, verts[j + k])]
        verts.append(tuple(nxt))
    # every N_j has determinant 1, so every window of d+1 consecutive vertices does too
    assert det(columns(verts[-(d + 1) :])) == 1, "last vertex window is not unimodular"
    return verts


def check_generic(poly: TwistedPolygon, reach: Optional[int] = None) -> None:
    """Every d+1 of `reach` consecutive vertices must be independent, over one period.

    The default reach d+2 is what projective frames need; random generation asks for more.
    """
    d = poly.d
    reach = reach or d + 2
    for j in range(poly.n):
        window = poly.window(j, reach)
        for subset in itertools.combinations(range(reach), d + 1):
            if subset[0] != 0:
                continue  # every subset is seen from its first index
            if det(columns([window[i] for i in subset])) == 0:
                raise GenericityFailure(
                    f"vertices {[j + i for i in subset]} are dependent", index=j
                )


def _require_nonzero(coeffs: CoefficientArray, slots: Sequence[int]) -> None:
    for j in range(coeffs.n):
        for k in slots:
            if coeffs.coeff(j, k) == 0:
                raise GenericityFailure(f"a_{{{j},{k}}} vanishes", index=j)


def _nth_root(x: Fraction, n: int) -> Optional[Fraction]:
    """A rational n-th root of x (the positive one when there are two), or None."""
    if x == 0:
        return Fraction(0)
    if x < 0 and n % 2 == 0:
        return None
    num, exact_num = integer_nthroot(abs(x.numerator), n)
    den, exact_den = integer_nthroot(x.denominator, n)
    if not (exact_num and exact_den):
        return None
    root = Fraction(int(num), int(den))
    return -root if x < 0 else root


def unimodular(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    """Rescale a monodromy matrix to determinant 1 when a rational root allows it."""
    size = len(matrix)
    root = _nth_root(det(matrix), size)
    if root is None or root == 0:
        return [list(row) for row in matrix]
    return [[x / root for x in row] for row in matrix]


def _recover_monodromy(points: Sequence[LiftedVertex], d: int, n: int) -> Matrix:
    if len(points) < n + d + 2:
        raise DegenerateInput(
            f"without a monodromy at least n+d+2={n + d + 2} points are needed, got {len(points)}"
        )
    g = equivalent_sequences(points[: len(points) - n], points[n:], d)
    if g is None:
        raise DegenerateInput("points are not twisted: no monodromy maps v_j to v_{j+n}")
    return unimodular(g.matrix)


def coefficients_from_vertices(
    verts: Sequence[LiftedVertex],
    d: int,
    n: int,
    monodromy: Optional[Sequence[Sequence[Fraction]]] = None,
) -> Union[CoefficientArray, QuasiPeriodicReport]:
    """Coordinates a_{j,k} of a twisted polygon given by projective points.

    Points beyond the first n are only used to find (or check) the monodromy.
    """
    verts = [vector(v) for v in verts]
    if monodromy is None:
        monodromy = _recover_monodromy(verts, d, n)
    else:
        monodromy = [list(vector(row)) for row in monodromy]
        if len(verts) < n:
            raise DegenerateInput(f"need at least n={n} points, got {len(verts)}")
        for j in range(len(verts) - n):
            if not proportional(matvec(monodromy, verts[j]), verts[j + n]):
                raise DegenerateInput(
                    f"point {j + n} is not the monodromy image of point {j}", index=j + n
                )

    # working lifts: W_j for j < n, then W_{j+n} = M W_j exactly
    lifts = [primitive(v) for v in verts[:n]]
    while len(lifts) < n + d + 2:
        lifts.append(matvec(monodromy, lifts[len(lifts) - n]))

    # raw dependencies W_{j+d+1} = Σ_k b_{j,k} W_{j+k} + b_{j,0} W_j, n-periodic in j
    raw = []
    for j in range(n + 1):
        b = solve(columns(lifts[j : j + d + 1]), lifts[j + d + 1])
        if b is None or b[0] == 0:
            raise DegenerateInput(f"vertices {j}..{j + d + 1} are not in general position", index=j)
        raw.append(b)

    # seeded lift c_{j+d+1} = (-1)^d c_j / b_{j,0}
    sign = Fraction((-1) ** d)
    c = [Fraction(1)] * (d + 1)
    for j in range(n + 1):
        c.append(sign * c[j] / raw[j % n][0])

    def seeded_rows(scale):
        return tuple(
            tuple(
                raw[j][k] * c[j + d + 1] * scale[(j + d + 1) % (d + 1)]
                / (c[j + k] * scale[(j + k) % (d + 1)])
                for k in range(1, d + 1)
            )
            for j in range(n + 1)
        )

    t0 = [c[i + n] / c[i] for i in range(d + 1)]

    # re-lifting by a (d+1)-periodic sigma turns t_i into t0_i·sigma_{i+n}/sigma_i;
    # the array is n-periodic iff all t_i agree
    cycles = []
    seen = set()
    for start in range(d + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        i = (start + n) % (d + 1)
        while i != start:
            cycle.append(i)
            seen.add(i)
            i = (i + n) % (d + 1)
        cycles.append(cycle)
    products = [math.prod((t0[i] for i in cycle), start=Fraction(1)) for cycle in cycles]
    length = len(cycles[0])

    kappa = None
    reason = ""
    if any(p != products[0] for p in products):
        reason = "cycle products of the lift multipliers differ"
    else:
        kappa = _nth_root(products[0], length)
        if kappa is None:
            reason = f"{products[0]} has no rational {length}-th root"

    if kappa is None:
        rows = seeded_rows([Fraction(1)] * (d + 1))
        report = QuasiPeriodicReport(
            d=d, n=n, rows=rows, t=QuasiPeriodicData(tuple(t0)), tilde=(), reason=reason
        )
        try:
            return dataclasses.replace(report, tilde=tilde_coordinates(report))
        except DivisionByZero:
            return report

    sigma = [Fraction(0)] * (d + 1)
    for cycle in cycles:
        sigma[cycle[0]] = Fraction(1)
        for i in cycle[:-1]:
            sigma[(i + n) % (d + 1)] = sigma[i] * kappa / t0[i]
    rows = seeded_rows(sigma)
    assert rows[n] == rows[0], "re-lifted coefficients are not n-periodic"
    return CoefficientArray(d=d, n=n, a=rows[:n])


def polygon_from_points(
    points: Sequence[LiftedVertex],
    d: int,
    n: int,
    monodromy: Optional[Sequence[Sequence[Fraction]]] = None,
    dual: bool = False,
) -> TwistedPolygon:
    points = [vector(p) for p in points]
    if monodromy is None:
        monodromy = _recover_monodromy(points, d, n)
    coeffs = coefficients_from_vertices(points, d, n, monodromy)
    return TwistedPolygon(
        d=d,
        n=n,
        vertices=tuple(primitive(p) for p in points[:n]),
        monodromy_matrix=tuple(tuple(vector(row)) for row in monodromy),
        coeffs=coeffs if isinstance(coeffs, CoefficientArray) else None,
        dual=dual,
    )


def tilde_coordinates(
    coeffs: Union[CoefficientArray, QuasiPeriodicReport]
) -> Tuple[Tuple[Fraction, ...], ...]:
    """ã_{j,k} = a_{j+1,k-1} / (a_{j,k} a_{j+1,d}) with a_{j,0} = 1; n-periodic."""
    d, n = coeffs.d, coeffs.n
    result = []
    for j in range(n):
        row, nxt = coeffs.row(j), coeffs.row(j + 1)
        if nxt[d - 1] == 0:
            raise DivisionByZero(f"a_{{{j + 1},{d}}} vanishes", index=j + 1)
        tilde_row = []
        for k in range(1, d + 1):
            if row[k - 1] == 0:
                raise DivisionByZero(f"a_{{{j},{k}}} vanishes", index=j)
            prev = Fraction(1) if k == 1 else nxt[k - 2]
            tilde_row.append(prev / (row[k - 1] * nxt[d - 1]))
        result.append(tuple(tilde_row))
    return tuple(result)


def current_monodromy(coeffs: CoefficientArray, j: int = 0) -> Matrix:
    """M̃_j = N_j N_{j+1} ... N_{j+n-1}."""
    result = identity(coeffs.d + 1)
    for i in range(j, j + coeffs.n):
        result = matmul(result, transfer_matrix(coeffs, i))
    return result


def monodromy(coeffs: CoefficientArray) -> ProjectiveTransform:
    return ProjectiveTransform.from_rows(current_monodromy(coeffs, 0))


def is_closed(coeffs: CoefficientArray) -> bool:
    return monodromy(coeffs).is_scalar()


def monodromy_charpoly(coeffs: CoefficientArray, j: int = 0) -> List[Fraction]:
    return fraction_charpoly(current_monodromy(coeffs, j))


# errors that make random_generic_polygon draw again
REJECTED_DRAWS = (GenericityFailure, DegenerateInput, DegenerateIntersection, DegenerateSpan)


def _random_scalar(rng: random.Random, bound: int) -> Fraction:
    sign = rng.choice((-1, 1))
    return Fraction(sign * rng.randint(1, bound), rng.randint(1, bound))


def random_generic_polygon(
    d: int,
    n: int,
    seed: int,
    bound: int = 5,
    max_retries: int = 100,
    zero_slots: Sequence[int] = (),
    accept: Optional[Callable[[TwistedPolygon], object]] = None,
) -> CoefficientArray:
    """Seeded random coefficients (numerators and denominators within `bound`).

    Entries in `zero_slots` are set to 0; the rest are resampled until the polygon is generic.
    Sparse classes have structurally dependent vertices, so for them genericity means nonzero
    free entries plus whatever `accept` demands: it is called on every candidate polygon and
    rejects it by raising a degenerate-geometry error.
    """
    if d < 2:
        raise BadArguments(f"dimension must be at least 2, got d={d}")
    if n < d + 2:
        raise BadArguments(f"need n >= d+2, got d={d}, n={n}")
    if bound < 1:
        raise BadArguments(f"bound must be positive, got {bound}")
    rng = random.Random(seed)
    for attempt in range(max_retries):
        rows = tuple(
            tuple(
                Fraction(0) if k in zero_slots else _random_scalar(rng, bound)
                for k in range(1, d + 1)
            )
            for _ in range(n)
        )
        coeffs = CoefficientArray(d, n, rows)
        try:
            if zero_slots:
                _require_nonzero(coeffs, [k for k in range(1, d + 1) if k not in zero_slots])
            else:
                check_generic(TwistedPolygon.from_coefficients(coeffs), 2 * d + 1)
            if accept is not None:
                accept(TwistedPolygon.from_coefficients(coeffs))
        except REJECTED_DRAWS:
            continue
        return coeffs
    raise ExhaustedRetries(
        f"no generic polygon (d={d}, n={n}) after {max_retries} draws from seed {seed}"
    )


def random_closed_polygon(
    d: int, n: int, seed: int, bound: int = 5, max_retries: int = 100, affine: bool = False
) -> TwistedPolygon:
    """Seeded closed polygon (monodromy Id) with integer points of coordinates in [-bound, bound].

    With `affine` the last coordinate is 1, so every vertex is finite in the chart (d, 0, 1).
    """
    if n < d + 2:
        raise BadArguments(f"need n >= d+2, got d={d}, n={n}")
    rng = random.Random(seed)
    for attempt in range(max_retries):
        size = d if affine else d + 1
        points = [
            vector([rng.randint(-bound, bound) for _ in range(size)] + [1] * (d + 1 - size))
            for _ in range(n)
        ]
        try:
            poly = polygon_from_points(points, d, n, identity(d + 1))
            check_generic(poly, 2 * d + 1)
        except (DegenerateInput, GenericityFailure):
            continue
        return poly
    raise ExhaustedRetries(
        f"no generic closed polygon (d={d}, n={n}) after {max_retries} draws from seed {seed}"
    )


def make_corrugated(coeffs: CoefficientArray) -> CoefficientArray:
    """Zero a_{j,l} for 2 <= l <= d-1."""
    return make_partially_corrugated(coeffs, CORRUGATED)


def make_partially_corrugated(coeffs: CoefficientArray, spec: CorrugationSpec) -> CoefficientArray:
    """Zero a_{j,k} for m+1 <= k <= d+m-ℓ, m = q-1."""
    d = coeffs.d
    zero = set(spec.validate(d).zero_slots(d))
    result = coeffs.map_entries(lambda j, k, x: Fraction(0) if k in zero else x)
    _require_nonzero(result, [k for k in range(1, d + 1) if k not in zero])
    return result


def as_polygon(poly: Union[TwistedPolygon, CoefficientArray]) -> TwistedPolygon:
    if isinstance(poly, CoefficientArray):
        return TwistedPolygon.from_coefficients(poly)
    return poly


def is_partially_corrugated(
    poly: Union[TwistedPolygon, CoefficientArray], spec: CorrugationSpec
) -> bool:
    """Each diagonal subspace (two vertex clusters) has rank exactly ℓ+1."""
    poly = as_polygon(poly)
    spec.validate(poly.d)
    for j in range(poly.n):
        idx = spec.subspace_indices(j, poly.d)
        if rank([poly.vertex(i) for i in idx]) != spec.l + 1:
            return False
    return True


def is_corrugated(poly: Union[TwistedPolygon, CoefficientArray]) -> bool:
    return is_partially_corrugated(poly, CORRUGATED)


def psi_embed(
    source: Union[TwistedPolygon, CoefficientArray], target_d: int, m: int, p: int
) -> TwistedPolygon:
    """Partially corrugated polygon in dimension c+p-2 carrying the sparse relations of a c-dimensional one.

    The source vertices satisfy W_{j+d+1} = Σ_{k∈S} b_{j,k} W_{j+k} + b_{j,0} W_j with
    S = {1..m} ∪ {d+m-c+1..d}; the image is built in dimension d from the same relations.
    """
    source = as_polygon(source)
    c = source.d
    d = c + p - 2
    if p < 2 or not 1 <= m <= c - 1:
        raise BadArguments(f"need p >= 2 and 1 <= m <= c-1, got c={c}, m={m}, p={p}")
    if target_d != d:
        raise BadArguments(f"target dimension must be c+p-2={d}, got {target_d}")
    n = source.n
    slots = list(range(1, m + 1)) + list(range(d + m - c + 1, d + 1))
    assert len(slots) == c

    raw = []
    for j in range(n + 1):
        basis = [source.vertex(j)] + [source.vertex(j + k) for k in slots]
        b = solve(columns(basis), source.vertex(j + d + 1))
        if b is None:
            raise DegenerateInput(f"source vertices around {j} are degenerate", index=j)
        if b[0] == 0:
            raise NormalizationFailure(f"b_{{{j},0}} vanishes", index=j)
        raw.append(b)

    # the same relations in dimension d, seeded with the standard basis;
    # coefficients_from_vertices renormalizes them to the (-1)^d convention
    verts = [tuple(Fraction(int(i == j)) for j in range(d + 1)) for i in range(d + 1)]
    for j in range(n):
        nxt = [raw[j][0] * x for x in verts[j]]
        for b, k in zip(raw[j][1:], slots):
            nxt = [x + b * y for x, y in zip(nxt, verts[j + k])]
        verts.append(tuple(nxt))
    monodromy_matrix = unimodular(columns(verts[n : n + d + 1]))
    return polygon_from_points(verts[:n], d, n, monodromy_matrix)


def polygon_from_doc(doc: dict) -> TwistedPolygon:
    """Polygon documents carry "coeffs"; vertex documents carry "vertices" (and optionally "monodromy")."""
    try:
        if "coeffs" in doc:
            return TwistedPolygon.from_coefficients(CoefficientArray.from_dict(doc))
        d, n = int(doc["d"]), int(doc["n"])
        points = [vector(parse_rational(x) for x in v) for v in doc["vertices"]]
        monodromy = doc.get("monodromy")
        if monodromy is not None:
            monodromy = [[parse_rational(x) for x in row] for row in monodromy]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise BadArguments(f"malformed polygon document: {exc}")
    if any(len(p) != d + 1 for p in points):
        raise BadArguments(f"every vertex needs d+1={d + 1} coordinates")
    return polygon_from_points(points, d, n, monodromy, dual=bool(doc.get("dual", False)))

"""Exact linear algebra over the rationals and the projective primitives built on it.

Vectors are tuples of `Fraction`; matrices are lists of rows. Elimination works on
integer-scaled rows (fraction-free) and only the final back substitution divides.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DegenerateInput, DegenerateIntersection, DegenerateSpan

Vector = Tuple[Fraction, ...]
Matrix = List[List[Fraction]]

# A lifted vertex and a hyperplane covector share the representation; the role is in the name.
LiftedVertex = Vector
Hyperplane = Vector


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing to convert float {x!r} to an exact scalar")
    return Fraction(x)


def parse_rational(s) -> Fraction:
    """Parse a canonical "p/q" (or "p") string; ints are accepted as well."""
    if isinstance(s, str):
        return Fraction(s.strip())
    return to_fraction(s)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def vector(xs: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in xs)


def identity(size: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def transpose(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*matrix)]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(matrix: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in matrix)


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def columns(vectors: Sequence[Sequence[Fraction]]) -> Matrix:
    """Matrix whose columns are the given vectors."""
    return transpose(vectors)


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def primitive(v: Sequence[Fraction]) -> Vector:
    """Coprime integer representative of the line through v, first nonzero entry positive."""
    assert not is_zero(v), "zero vector has no projective class"
    ints = _integer_row([to_fraction(x) for x in v])
    g = reduce(math.gcd, ints, 0)
    sign = 1 if next(x for x in ints if x != 0) > 0 else -1
    return tuple(Fraction(sign * x // g) for x in ints)


def proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    """Projective equality by cross-multiplication: every 2x2 minor of (u, v) vanishes."""
    if is_zero(u) or is_zero(v):
        return False
    size = len(u)
    assert size == len(v)
    return all(
        u[i] * v[j] == u[j] * v[i] for i in range(size) for j in range(i + 1, size)
    )


def _denominator_lcm(row: Sequence[Fraction]) -> int:
    return reduce(lambda acc, x: acc * x.denominator // math.gcd(acc, x.denominator), row, 1)


def _integer_row(row: Sequence[Fraction]) -> List[int]:
    lcm = _denominator_lcm(row)
    return [int(x * lcm) for x in row]


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by Bareiss elimination on integer-scaled rows."""
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    scale = 1
    m = []
    for row in matrix:
        assert len(row) == size
        row = [to_fraction(x) for x in row]
        lcm = _denominator_lcm(row)
        scale *= lcm
        m.append([int(x * lcm) for x in row])

    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[-1][-1]) / scale


def row_echelon(matrix: Sequence[Sequence[Fraction]]) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form.

    Returns the integer echelon rows (zero rows dropped) and the free columns.
    """
    m = [_integer_row([to_fraction(x) for x in row]) for row in matrix]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    free_vars = []
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            free_vars.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr == 0:
                continue
            row = [x * fp - y * fr for x, y in zip(m[r], m[piv_r])]
            g = reduce(math.gcd, row, 0) or 1
            m[r] = [x // g for x in row]
        piv_r += 1
    return m[:piv_r], free_vars


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    if len(vectors) == 0:
        return 0
    echelon, _ = row_echelon(vectors)
    return len(echelon)


def nullspace(matrix: Sequence[Sequence[Fraction]], n_cols: Optional[int] = None) -> List[Vector]:
    """Basis of {x : matrix x = 0}, one primitive vector per free column."""
    if len(matrix) == 0:
        assert n_cols is not None
        return [tuple(Fraction(int(i == j)) for j in range(n_cols)) for i in range(n_cols)]
    echelon, free_vars = row_echelon(matrix)
    n_cols = len(matrix[0])
    piv_cols = [c for c in range(n_cols) if c not in free_vars]
    basis = []
    for free in free_vars:
        sol = [Fraction(0)] * n_cols
        sol[free] = Fraction(1)
        for r in range(len(piv_cols) - 1, -1, -1):
            piv_c = piv_cols[r]
            s = sum((echelon[r][c] * sol[c] for c in range(piv_c + 1, n_cols)), Fraction(0))
            sol[piv_c] = -s / echelon[r][piv_c]
        basis.append(primitive(sol))
    return basis


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Vector]:
    """Unique solution of matrix x = rhs, or None when it does not exist or is not unique."""
    n_cols = len(matrix[0])
    augmented = [list(row) + [-to_fraction(b)] for row, b in zip(matrix, rhs)]
    kernel = nullspace(augmented)
    # exactly one kernel vector with nonzero last entry means a unique solution
    if len(kernel) != 1 or kernel[0][n_cols] == 0:
        return None
    k = kernel[0]
    return tuple(x / k[n_cols] for x in k[:n_cols])


def inverse(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    size = len(matrix)
    cols = []
    for i in range(size):
        e = [Fraction(int(i == j)) for j in range(size)]
        x = solve(matrix, e)
        assert x is not None, "matrix is singular"
        cols.append(x)
    return columns(cols)


def span_intersection(
    a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]
) -> List[Vector]:
    """Basis of span(a) ∩ span(b), from the kernel of [A | -B] (assumes a and b independent sets)."""
    system = columns(list(a) + [tuple(-x for x in v) for v in b])
    result = []
    for x in nullspace(system):
        w = [Fraction(0)] * len(a[0])
        for coeff, v in zip(x[: len(a)], a):
            for i, vi in enumerate(v):
                w[i] += coeff * vi
        result.append(primitive(w))
    return result


@dataclass(frozen=True, eq=False)
class ProjectiveTransform:
    """A (d+1)x(d+1) invertible matrix taken up to nonzero scale."""

    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        assert det(self.matrix) != 0, "projective transform must be invertible"

    @classmethod
    def from_rows(cls, rows) -> "ProjectiveTransform":
        return cls(tuple(tuple(to_fraction(x) for x in row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.matrix) - 1

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return matvec(self.matrix, v)

    def inverse(self) -> "ProjectiveTransform":
        return ProjectiveTransform.from_rows(inverse(self.matrix))

    def compose(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        """self ∘ other"""
        return ProjectiveTransform.from_rows(matmul(self.matrix, other.matrix))

    def is_scalar(self) -> bool:
        c = self.matrix[0][0]
        return c != 0 and all(
            self.matrix[i][j] == (c if i == j else 0)
            for i in range(self.dim + 1)
            for j in range(self.dim + 1)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectiveTransform):
            return NotImplemented
        flat_a = [x for row in self.matrix for x in row]
        flat_b = [x for row in other.matrix for x in row]
        return len(flat_a) == len(flat_b) and proportional(flat_a, flat_b)

    def __hash__(self):
        return hash(primitive([x for row in self.matrix for x in row]))


def hyperplane_through(points: Sequence[LiftedVertex], dim: int) -> Hyperplane:
    """Covector annihilating the d given points."""
    assert len(points) == dim, f"need {dim} points, got {len(points)}"
    kernel = nullspace([list(p) for p in points])
    if len(kernel) != 1:
        raise DegenerateSpan(
            f"{dim} points span a subspace of rank {dim + 1 - len(kernel)}"
        )
    return kernel[0]


def intersect_hyperplanes(planes: Sequence[Hyperplane], dim: int) -> LiftedVertex:
    """The single point on d independent hyperplanes."""
    assert len(planes) == dim, f"need {dim} hyperplanes, got {len(planes)}"
    kernel = nullspace([list(p) for p in planes])
    if len(kernel) != 1:
        raise DegenerateIntersection(
            f"hyperplanes meet in a subspace of rank {len(kernel)}"
        )
    return kernel[0]


def _frame(points: Sequence[LiftedVertex], dim: int, name: str) -> Matrix:
    """Matrix sending e_0..e_d to the first d+1 points and (1,..,1) to point d+1."""
    base = columns(points[: dim + 1])
    mu = solve(base, points[dim + 1])
    if mu is None or any(x == 0 for x in mu):
        raise DegenerateInput(f"first {dim + 2} points of {name} are not in general position")
    return columns([tuple(c * x for x in p) for c, p in zip(mu, points[: dim + 1])])


def projective_equivalence(
    a: Sequence[LiftedVertex], b: Sequence[LiftedVertex], dim: int
) -> Optional[ProjectiveTransform]:
    """g with g·a_k ∝ b_k for every k, fitted on the first d+2 points and checked on the rest."""
    assert len(a) == len(b) and len(a) >= dim + 2
    frame_a = _frame(a, dim, "A")
    frame_b = _frame(b, dim, "B")
    g = ProjectiveTransform.from_rows(matmul(frame_b, inverse(frame_a)))
    for x, y in zip(a, b):
        if not proportional(g.apply(x), y):
            return None
    return g


def general_frame(
    points: Sequence[LiftedVertex], dim: int, reach: Optional[int] = None
) -> Optional[List[int]]:
    """Indices of d+2 points in general position among the first `reach` points."""
    reach = min(len(points), reach or 2 * dim + 2)
    for subset in itertools.combinations(range(reach), dim + 2):
        base = columns([points[i] for i in subset[:-1]])
        if det(base) == 0:
            continue
        mu = solve(base, points[subset[-1]])
        if mu is not None and all(x != 0 for x in mu):
            return list(subset)
    return None


def equivalent_sequences(
    a: Sequence[LiftedVertex], b: Sequence[LiftedVertex], dim: int
) -> Optional[ProjectiveTransform]:
    """Like `projective_equivalence`, but the frame is searched for instead of taken from the front.

    Sequences whose consecutive points are dependent (corrugated polygons) still have a frame
    further apart. Returns None when no frame exists or the sequences are not equivalent.
    """
    if len(a) != len(b) or len(a) < dim + 2:
        return None
    frame = general_frame(a, dim)
    if frame is None:
        return None
    order = frame + [i for i in range(len(a)) if i not in frame]
    try:
        return projective_equivalence([a[i] for i in order], [b[i] for i in order], dim)
    except DegenerateInput:
        return None

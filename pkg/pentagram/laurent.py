"""Sparse Laurent polynomials in the spectral parameter λ, bivariate spectral functions in (k, λ),
and the small amount of matrix algebra needed over them."""
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import QQ, Poly, Rational, Symbol


def _coerce(x) -> "LaurentPoly":
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


class LaurentPoly:
    """Sparse map exponent -> Fraction; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[int, Fraction]] = None):
        self.terms = {
            int(e): Fraction(c) for e, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def min_exp(self) -> int:
        return min(self.terms)

    @property
    def max_exp(self) -> int:
        return max(self.terms)

    def coeff(self, e: int) -> Fraction:
        return self.terms.get(e, Fraction(0))

    def shift(self, e: int) -> "LaurentPoly":
        return LaurentPoly({k + e: c for k, c in self.terms.items()})

    def inverse(self) -> "LaurentPoly":
        assert self.is_monomial(), f"only monomials are invertible, got {self}"
        (e, c), = self.terms.items()
        return LaurentPoly({-e: 1 / c})

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        terms: Dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, Fraction(0)) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*λ^{e}" for e, c in sorted(self.terms.items()))


LAMBDA = LaurentPoly.monomial(1)


class LaurentBivariate:
    """Sparse map (k-exponent, λ-exponent) -> Fraction, polynomial in k and Laurent in λ."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Fraction]] = None):
        self.terms = {}
        for (i, j), c in (terms or {}).items():
            assert i >= 0, "k-exponents are non-negative"
            if c != 0:
                self.terms[(int(i), int(j))] = Fraction(c)

    @classmethod
    def from_k_coefficients(cls, coeffs: Sequence[LaurentPoly]) -> "LaurentBivariate":
        """coeffs[i] is the coefficient of k^i."""
        return cls(
            {(i, j): c for i, poly in enumerate(coeffs) for j, c in poly.terms.items()}
        )

    @classmethod
    def from_k_polynomial(cls, coeffs: Sequence) -> "LaurentBivariate":
        """A polynomial in k only, with constant coefficients (coeffs[i] of k^i)."""
        return cls({(i, 0): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def k_degree(self) -> int:
        return max(i for i, _ in self.terms)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def k_coefficient(self, i: int) -> LaurentPoly:
        return LaurentPoly({j: c for (p, j), c in self.terms.items() if p == i})

    def window(self, i: int) -> Optional[Tuple[int, int]]:
        """(lowest, highest) λ-exponent of the k^i coefficient, None when it vanishes."""
        exps = [j for (p, j) in self.terms if p == i]
        if not exps:
            return None
        return min(exps), max(exps)

    def map_terms(
        self, fn: Callable[[int, int, Fraction], Tuple[int, int, Fraction]]
    ) -> "LaurentBivariate":
        terms: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            i2, j2, c2 = fn(i, j, c)
            terms[(i2, j2)] = terms.get((i2, j2), Fraction(0)) + c2
        return LaurentBivariate(terms)

    def items(self) -> List[Tuple[Tuple[int, int], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (-t[0][0], t[0][1]))

    def todict(self) -> List[dict]:
        return [
            {"k": i, "lambda": j, "coeff": str(c)} for (i, j), c in self.items()
        ]

    def to_sympy(self, k: Symbol, lam: Symbol) -> Tuple[Poly, int]:
        """Polynomial λ^s·R in (k, λ) over QQ, together with the shift s."""
        shift = -min(0, min(j for _, j in self.terms))
        rep = {
            (i, j + shift): Rational(c.numerator, c.denominator)
            for (i, j), c in self.terms.items()
        }
        return Poly.from_dict(rep, k, lam, domain=QQ), shift

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentBivariate):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return " + ".join(f"({c})*k^{i}*λ^{j}" for (i, j), c in self.items()) or "0"


# Matrix algebra over any commutative ring whose elements support + - *


def identity_matrix(size: int, one=LaurentPoly.one(), zero=LaurentPoly.zero()):
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def matrix_multiply(a, b, zero=LaurentPoly.zero()):
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), zero) for col in cols] for row in a]


def matrix_vector(a, v, zero=LaurentPoly.zero()):
    return [sum((x * y for x, y in zip(row, v)), zero) for row in a]


def trace(a, zero=LaurentPoly.zero()):
    return sum((a[i][i] for i in range(len(a))), zero)


def ordered_product(
    matrices: Sequence, balanced: bool = False, zero=LaurentPoly.zero(), one=LaurentPoly.one()
):
    """matrices[0] @ matrices[1] @ ... ; balanced pairwise reduction gives the same matrix."""
    assert len(matrices) > 0
    if not balanced:
        result = matrices[0]
        for m in matrices[1:]:
            result = matrix_multiply(result, m, zero)
        return result
    level = list(matrices)
    while len(level) > 1:
        nxt = [
            matrix_multiply(level[i], level[i + 1], zero)
            for i in range(0, len(level) - 1, 2)
        ]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def berkowitz(matrix, one=LaurentPoly.one(), zero=LaurentPoly.zero()) -> list:
    """Division-free characteristic polynomial.

    Returns [1, c_1, ..., c_N] with det(x·Id - A) = x^N + c_1 x^{N-1} + ... + c_N.
    """
    size = len(matrix)
    if size == 0:
        return [one]
    if size == 1:
        return [one, zero - matrix[0][0]]
    a = matrix[0][0]
    row = matrix[0][1:]
    col = [r[0] for r in matrix[1:]]
    sub = [r[1:] for r in matrix[1:]]

    diags = [col]
    for _ in range(size - 2):
        diags.append(matrix_vector(sub, diags[-1], zero))
    entries = [one, zero - a] + [
        zero - sum((x * y for x, y in zip(row, vec)), zero) for vec in diags
    ]
    tail = berkowitz(sub, one, zero)
    # lower-triangular Toeplitz matrix built from `entries` applied to the tail vector
    return [
        sum((entries[i - j] * tail[j] for j in range(min(i + 1, size))), zero)
        for i in range(size + 1)
    ]


def characteristic_function(matrix) -> LaurentBivariate:
    """det(A - k·Id) for a square matrix of Laurent polynomials."""
    size = len(matrix)
    coeffs = berkowitz(matrix)
    sign = -1 if size % 2 else 1
    # det(A - k) = (-1)^N det(k - A); coeffs[i] multiplies k^{N-i}
    return LaurentBivariate.from_k_coefficients(
        [sign * coeffs[size - p] for p in range(size + 1)]
    )


def fraction_charpoly(matrix: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """Coefficients [1, c_1, ..., c_N] of det(x·Id - A) for a rational matrix."""
    return berkowitz(
        [[Fraction(x) for x in row] for row in matrix], Fraction(1), Fraction(0)
    )

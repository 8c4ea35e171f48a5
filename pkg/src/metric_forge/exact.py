"""Exact rational / integer-polynomial linear algebra and small dense
eigensolvers.

Matrices are immutable rows over one scalar kind: `fractions.Fraction`
for exact work, `IntPolynomial` for symbolic-in-the-coupling work, or
binary64 floats.  The kernel solver runs fraction-free (Bareiss)
elimination over integerized rows, so intermediate entries stay
polynomially bounded in bit size and every returned vector annihilates
the input exactly.  The floating eigensolvers wrap LAPACK via numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from .errors import DimensionError

__all__ = [
    "IntPolynomial",
    "Matrix",
    "null_space",
    "rank",
    "eigs_symmetric",
    "eigs_general",
]


def _as_poly(value: Any) -> "IntPolynomial":
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial((value,))
    return NotImplemented


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial with integer coefficients; ``coeffs[d]`` multiplies
    the d-th power.  Trailing zeros are stripped, so the zero polynomial is
    the empty tuple.  Evaluation at int or Fraction arguments is exact."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        cleaned = tuple(int(v) for v in self.coeffs)
        while cleaned and cleaned[-1] == 0:
            cleaned = cleaned[:-1]
        object.__setattr__(self, "coeffs", cleaned)

    @property
    def degree(self) -> int:
        """Degree of the polynomial, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: Any) -> "IntPolynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, v in enumerate(b):
            merged[i] += v
        return IntPolynomial(tuple(merged))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-v for v in self.coeffs))

    def __sub__(self, other: Any) -> "IntPolynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "IntPolynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(v * other for v in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for k, b in enumerate(other.coeffs):
                out[i + k] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = IntPolynomial((1,))
        for _ in range(exponent):
            result = result * self
        return result

    def __call__(self, x: Any) -> Any:
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def negate_variable(self) -> "IntPolynomial":
        """The polynomial p(-x)."""
        return IntPolynomial(
            tuple(v if i % 2 == 0 else -v for i, v in enumerate(self.coeffs))
        )

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for power, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if power == 0:
                parts.append(str(c))
            else:
                var = "x" if power == 1 else f"x^{power}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{c}*{var}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class Matrix:
    """Immutable rectangular matrix stored as a tuple of row tuples.

    All entries are expected to share one scalar kind; arithmetic works
    for anything supporting +, -, * (Fraction, IntPolynomial, int, float).
    """

    entries: tuple[tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise DimensionError("matrix needs at least one row and one column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise DimensionError("rows must all have the same length")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "Matrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int, one: Any = Fraction(1), zero: Any = Fraction(0)) -> "Matrix":
        return cls.from_rows(
            [[one if i == k else zero for k in range(n)] for i in range(n)]
        )

    @classmethod
    def exchange(cls, n: int, one: Any = Fraction(1), zero: Any = Fraction(0)) -> "Matrix":
        """Antidiagonal permutation matrix (the lattice parity)."""
        return cls.from_rows(
            [[one if i + k == n - 1 else zero for k in range(n)] for i in range(n)]
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> Any:
        i, k = key
        return self.entries[i][k]

    @property
    def T(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries)))

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return Matrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in subtraction")
        return Matrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def scale(self, factor: Any) -> "Matrix":
        return Matrix(tuple(tuple(e * factor for e in row) for row in self.entries))

    def __matmul__(self, other: Any) -> Any:
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError("inner dimensions differ")
            cols = other.T.entries
            out = []
            for row in self.entries:
                new_row = []
                for col in cols:
                    acc = row[0] * col[0]
                    for a, b in zip(row[1:], col[1:]):
                        acc = acc + a * b
                    new_row.append(acc)
                out.append(tuple(new_row))
            return Matrix(tuple(out))
        vec = tuple(other)
        if len(vec) != self.cols:
            raise DimensionError("vector length differs from column count")
        result = []
        for row in self.entries:
            acc = row[0] * vec[0]
            for a, b in zip(row[1:], vec[1:]):
                acc = acc + a * b
            result.append(acc)
        return tuple(result)

    def map(self, fn: Callable[[Any], Any]) -> "Matrix":
        return Matrix(tuple(tuple(fn(e) for e in row) for row in self.entries))

    def is_symmetric(self, tol: float | None = None) -> bool:
        if not self.is_square:
            return False
        for i in range(self.rows):
            for k in range(i + 1, self.cols):
                a, b = self.entries[i][k], self.entries[k][i]
                if tol is None:
                    if a != b:
                        return False
                elif abs(a - b) > tol:
                    return False
        return True

    def max_abs(self) -> Any:
        return max(abs(e) for row in self.entries for e in row)

    def to_numpy(self, dtype: type = float) -> np.ndarray:
        return np.array(
            [[dtype(e) for e in row] for row in self.entries], dtype=dtype
        )


def _integer_rows(a: Matrix) -> list[list[int]]:
    out = []
    for row in a.entries:
        exact = [Fraction(v) for v in row]
        scale = math.lcm(*(f.denominator for f in exact))
        out.append([int(f * scale) for f in exact])
    return out


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """Fraction-free row echelon form; returns the mutated rows and the
    pivot (row, column) list.  Columns are processed left to right so the
    pivot columns, and hence the kernel basis, are canonical."""
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[tuple[int, int]] = []
    r = 0
    prev = 1
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, n_rows):
            factor = rows[i][c]
            if factor == 0 and piv == prev:
                continue
            row_i, row_r = rows[i], rows[r]
            for k in range(c, n_cols):
                row_i[k] = (row_i[k] * piv - factor * row_r[k]) // prev
        prev = piv
        pivots.append((r, c))
        r += 1
    return rows, pivots


def null_space(a: Matrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the right kernel of a rational matrix.

    Each basis vector is the reduced-echelon one attached to a free
    column: it carries a 1 in that coordinate and the pivot coordinates
    are solved exactly.  An empty list means the kernel is trivial.
    """
    rows = _integer_rows(a)
    echelon, pivots = _bareiss_echelon(rows)
    n_cols = a.cols
    reduced = [[Fraction(v) for v in echelon[r]] for r in range(len(pivots))]
    for idx in range(len(pivots) - 1, -1, -1):
        _, c = pivots[idx]
        piv = reduced[idx][c]
        reduced[idx] = [v / piv for v in reduced[idx]]
        for above in range(idx):
            factor = reduced[above][c]
            if factor:
                reduced[above] = [
                    x - factor * y for x, y in zip(reduced[above], reduced[idx])
                ]
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for row_idx, c in enumerate(pivot_cols):
            vec[c] = -reduced[row_idx][free]
        basis.append(tuple(vec))
    return basis


def rank(a: Matrix) -> int:
    """Exact rank over the rationals."""
    _, pivots = _bareiss_echelon(_integer_rows(a))
    return len(pivots)


def _as_float_array(m: Any) -> np.ndarray:
    if isinstance(m, Matrix):
        arr = m.to_numpy()
    else:
        arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise DimensionError("expected a two-dimensional array")
    return arr


def eigs_symmetric(m: Any, *, tol: float = 1e-12, vectors: bool = False):
    """Ascending eigenvalues of a real symmetric matrix.

    Input with asymmetry beyond `tol` (absolute, max-norm) is rejected;
    within tolerance the matrix is symmetrized before the solve.  With
    ``vectors=True`` also returns the orthonormal eigenvector columns.
    """
    a = _as_float_array(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError("square matrix required")
    asym = float(np.max(np.abs(a - a.T)))
    if asym > tol:
        raise ValueError(f"matrix is not symmetric (asymmetry {asym:.3e} > {tol:.3e})")
    a = 0.5 * (a + a.T)
    if vectors:
        w, v = np.linalg.eigh(a)
        return w, v
    return np.linalg.eigvalsh(a)


def eigs_general(m: Any) -> np.ndarray:
    """Eigenvalues of a real square matrix, sorted by (real, imaginary).

    Complex eigenvalues of a real matrix come in exactly conjugate pairs
    (LAPACK guarantees the pairing); sorting keeps the multiset stable.
    """
    a = _as_float_array(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError("square matrix required")
    w = np.linalg.eigvals(a)
    order = np.lexsort((w.imag, w.real))
    return w[order]

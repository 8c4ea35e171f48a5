"""Brute-force ground truth for the quasi-Hermiticity constraint.

The constraint Theta H = H^T Theta over real symmetric Theta is a
homogeneous linear system in the n(n+1)/2 upper-triangle unknowns.  This
module vectorizes it exactly and hands it to the fraction-free kernel
solver, producing the complete, canonically ordered solution space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, NamedTuple

import numpy as np

from .errors import DimensionError, DomainError
from .exact import Matrix, null_space
from .hamiltonian import HamiltonianSpec, build_hamiltonian

__all__ = [
    "SymmetricIndexer",
    "MetricSolutionSpace",
    "MembershipResult",
    "intertwining_system",
    "solve_metric_space",
    "verify_membership",
    "upper_triangle_vector",
]


@dataclass(frozen=True)
class SymmetricIndexer:
    """Bijection between 0-based upper-triangle positions (i <= k) and flat
    unknown indices, ordered (0,0), (0,1), ..., (0,n-1), (1,1), ..."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DimensionError("indexer needs a positive size")

    @property
    def count(self) -> int:
        return self.n * (self.n + 1) // 2

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, k) for i in range(self.n) for k in range(i, self.n))

    def flat(self, i: int, k: int) -> int:
        if not (0 <= i < self.n and 0 <= k < self.n):
            raise DimensionError("position out of range")
        if i > k:
            i, k = k, i
        return i * (2 * self.n - i + 1) // 2 + (k - i)

    def pair(self, index: int) -> tuple[int, int]:
        return self.pairs[index]


@dataclass(frozen=True)
class MetricSolutionSpace:
    """Complete space of real symmetric solutions at one exact coupling."""

    n: int
    lam: Fraction
    basis: tuple[Matrix, ...]
    dimension: int


class MembershipResult(NamedTuple):
    member: bool
    residual: Any


def intertwining_system(h: Matrix) -> Matrix:
    """Coefficient matrix A with A vec(Theta_upper) = 0 equivalent to
    Theta H - H^T Theta = 0 under the symmetric parametrization.

    Rows are the n^2 entries of the defect matrix in row-major order;
    columns follow the canonical upper-triangle ordering.
    """
    if not h.is_square:
        raise DimensionError("square matrix required")
    n = h.rows
    indexer = SymmetricIndexer(n)
    rows = [[Fraction(0)] * indexer.count for _ in range(n * n)]
    for p in range(n):
        for q in range(n):
            row = rows[p * n + q]
            for r in range(n):
                row[indexer.flat(p, r)] += Fraction(h[r, q])
                row[indexer.flat(r, q)] -= Fraction(h[r, p])
    return Matrix.from_rows(rows)


def _symmetric_from_flat(n: int, indexer: SymmetricIndexer, vec) -> Matrix:
    return Matrix.from_rows(
        [[vec[indexer.flat(i, k)] for k in range(n)] for i in range(n)]
    )


def solve_metric_space(spec: HamiltonianSpec) -> MetricSolutionSpace:
    """All real symmetric solutions of the quasi-Hermiticity constraint.

    The basis is the reduced-echelon kernel basis, so it is deterministic
    across runs; every element satisfies the constraint exactly.
    """
    if not spec.is_exact:
        raise DomainError("the exact oracle requires an exact coupling")
    h = build_hamiltonian(spec)
    system = intertwining_system(h)
    kernel = null_space(system)
    indexer = SymmetricIndexer(spec.n)
    basis = tuple(_symmetric_from_flat(spec.n, indexer, vec) for vec in kernel)
    return MetricSolutionSpace(
        n=spec.n, lam=Fraction(spec.lam), basis=basis, dimension=len(basis)
    )


def upper_triangle_vector(m: Matrix) -> tuple:
    """Canonically ordered upper-triangle entries of a square matrix."""
    if not m.is_square:
        raise DimensionError("square matrix required")
    n = m.rows
    return tuple(m[i, k] for i in range(n) for k in range(i, n))


def _is_exact_matrix(m: Matrix) -> bool:
    return all(
        isinstance(e, (int, Fraction)) for row in m.entries for e in row
    )


def verify_membership(
    theta: Any, spec: HamiltonianSpec, tol: float = 1e-9
) -> MembershipResult:
    """Check Theta H = H^T Theta for a candidate matrix.

    With an exact candidate and an exact coupling the defect is computed
    exactly and membership means a residual of exactly zero; otherwise
    the float defect is compared against `tol` in the max norm.
    """
    if isinstance(theta, Matrix) and _is_exact_matrix(theta) and spec.is_exact:
        if theta.shape != (spec.n, spec.n):
            raise DimensionError("candidate size differs from the Hamiltonian")
        h = build_hamiltonian(spec)
        defect = theta @ h - h.T @ theta
        residual = defect.max_abs()
        return MembershipResult(residual == 0, residual)
    arr = theta.to_numpy() if isinstance(theta, Matrix) else np.asarray(theta, dtype=float)
    if arr.shape != (spec.n, spec.n):
        raise DimensionError("candidate size differs from the Hamiltonian")
    h_float = build_hamiltonian(HamiltonianSpec(spec.n, float(spec.lam))).to_numpy()
    residual = float(np.max(np.abs(arr @ h_float - h_float.T @ arr)))
    return MembershipResult(residual <= tol, residual)

"""Desk-scale continuum-limit checks for the middle-bond matching.

On the grid x_k = -1 + k h with h = 2/(n+1), the chain member is the
standard three-point kinetic discretization away from the origin, and the
two coupled rows across the middle bond act as a first-order matching
condition between one-sided boundary data (psi_L(0), psi_L'(0)) and
(psi_R(0), psi_R'(0)).  As h shrinks the matching degenerates into an
opaque wall, psi_L(0) = psi_R(0) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .analysis import PositivityReport, positivity
from .errors import DegenerateSpectrumError, DimensionError, DomainError
from .hamiltonian import HamiltonianSpec, build_hamiltonian

__all__ = [
    "LatticeGrid",
    "MatchingData",
    "WallReport",
    "FreeMetricParams",
    "matching_data",
    "central_row_residual",
    "matching_identity_residual",
    "matching_residual",
    "fit_loglog_slope",
    "opaque_wall_check",
    "free_lattice_metric",
]


@dataclass(frozen=True)
class LatticeGrid:
    """Equidistant grid with n interior points and Dirichlet endpoints at
    -1 and +1 exactly."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 2 or self.n % 2 != 0:
            raise DimensionError("grid needs an even interior point count >= 2")

    @property
    def h(self) -> float:
        return 2.0 / (self.n + 1)

    @property
    def points(self) -> tuple[float, ...]:
        return tuple(-1.0 + 2.0 * k / (self.n + 1) for k in range(self.n + 2))


def _real_eigenpair(
    n: int, lam: float, state: int, *, imag_tol: float = 1e-9
) -> tuple[float, np.ndarray]:
    """Selected eigenvalue (ascending by real part, 1-based) and its
    max-normalized right eigenvector; complex selections are rejected."""
    h = build_hamiltonian(HamiltonianSpec(n, float(lam))).to_numpy()
    values, vectors = np.linalg.eig(h)
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]
    if not 1 <= state <= n:
        raise DomainError(f"state index must lie in 1..{n}")
    value = values[state - 1]
    if abs(value.imag) > imag_tol:
        raise DegenerateSpectrumError("selected eigenvalue is not real")
    vector = np.real(vectors[:, state - 1])
    vector = vector / np.max(np.abs(vector))
    return float(value.real), vector


@dataclass(frozen=True, eq=False)
class MatchingData:
    """One real eigenpair with its one-sided boundary estimates.

    The estimates invert the two-term Taylor expansions through the four
    central components, which sit at offsets -3h/2, -h/2, +h/2, +3h/2
    from the origin:

        psi_L(0)  = (3 psi_K - psi_{K-1}) / 2     psi_L'(0) = (psi_K - psi_{K-1}) / h
        psi_R(0)  = (3 psi_{K+1} - psi_{K+2}) / 2 psi_R'(0) = (psi_{K+2} - psi_{K+1}) / h

    Substituting them back reproduces the two coupled rows of the
    eigenproblem identically, so this data satisfies the matching
    condition by construction (see matching_identity_residual).
    """

    n: int
    lam: float
    state: int
    energy: float  # continuum-scaled eigenvalue, f / h^2
    f: float  # dimensionless lattice eigenvalue h^2 * energy
    psi: tuple[float, ...]
    psi_l0: float
    dpsi_l0: float
    psi_r0: float
    dpsi_r0: float


def matching_data(spec: HamiltonianSpec, state: int = 1) -> MatchingData:
    """Eigenpair plus stencil-reconstructed boundary data at the origin."""
    n = spec.n
    if n < 8:
        raise DimensionError("boundary reconstruction needs n >= 8")
    lam = float(spec.lam)
    if not -1.0 < lam < 1.0:
        raise DomainError("matching analysis requires |lam| < 1")
    half = n // 2
    grid = LatticeGrid(n)
    f, psi = _real_eigenpair(n, lam, state)
    p_km1, p_k, p_k1, p_k2 = psi[half - 2], psi[half - 1], psi[half], psi[half + 1]
    return MatchingData(
        n=n,
        lam=lam,
        state=state,
        energy=f / grid.h**2,
        f=f,
        psi=tuple(float(v) for v in psi),
        psi_l0=(3.0 * p_k - p_km1) / 2.0,
        dpsi_l0=(p_k - p_km1) / grid.h,
        psi_r0=(3.0 * p_k1 - p_k2) / 2.0,
        dpsi_r0=(p_k2 - p_k1) / grid.h,
    )


def _matching_sides(
    lam: float, f: float, h: float, v_r: float, v_l: float, d_r: float, d_l: float
) -> tuple[tuple[float, float], tuple[float, float]]:
    lhs = (
        (h / 2.0) * (-(1.0 + lam) * d_r + (f + 1.0) * d_l),
        (h / 2.0) * (-(f + 1.0) * d_r + (1.0 - lam) * d_l),
    )
    rhs = (
        (1.0 + lam) * v_r + (f - 1.0) * v_l,
        (f - 1.0) * v_r + (1.0 - lam) * v_l,
    )
    return lhs, rhs


def central_row_residual(spec: HamiltonianSpec, state: int = 1) -> float:
    """Max defect of the two coupled rows of the eigenproblem themselves;
    zero up to eigensolver noise for any computed eigenpair."""
    data = matching_data(spec, state)
    half = spec.n // 2
    psi = data.psi
    p_km1, p_k, p_k1, p_k2 = psi[half - 2], psi[half - 1], psi[half], psi[half + 1]
    two_cos = 2.0 - data.f
    row_a = (1.0 + data.lam) * p_k1 - two_cos * p_k + p_km1
    row_b = p_k2 - two_cos * p_k1 + (1.0 - data.lam) * p_k
    return max(abs(row_a), abs(row_b))


def matching_identity_residual(spec: HamiltonianSpec, state: int = 1) -> float:
    """Raw matching gap evaluated on the stencil-reconstructed data.

    The stencil inversion is exact for the two-term expansions, so the
    matching condition is an algebraic rearrangement of the coupled rows
    and this gap vanishes identically (up to eigensolver noise).  It is a
    consistency check, not a convergence measure; see matching_residual.
    """
    data = matching_data(spec, state)
    h = LatticeGrid(spec.n).h
    lhs, rhs = _matching_sides(
        data.lam, data.f, h, data.psi_r0, data.psi_l0, data.dpsi_r0, data.dpsi_l0
    )
    return max(abs(a - b) for a, b in zip(lhs, rhs))


def matching_residual(spec: HamiltonianSpec, state: int = 1) -> float:
    """Relative defect of the matching condition on half-chain wave data.

    Away from the middle bond the eigenvector is an exact sinusoid on
    each half, so the eigenpair fixes a wavenumber kappa = eps / h with
    2 cos(eps) = 2 - f and one amplitude per side.  Feeding the exact
    boundary values and one-sided derivatives of those half waves into
    the matching condition leaves a gap that measures its accuracy as a
    continuum statement; the rowwise relative gap decays at second order
    in h for smooth low-lying states.
    """
    data = matching_data(spec, state)
    n, lam, f = spec.n, data.lam, data.f
    half = n // 2
    h = LatticeGrid(n).h
    eps = math.acos(min(1.0, max(-1.0, 1.0 - f / 2.0)))
    kappa = eps / h
    mid_sine = math.sin(half * eps)
    amp_left = data.psi[half - 1] / mid_sine
    amp_right = data.psi[half] / mid_sine
    v_r = amp_right * math.sin(kappa)
    v_l = amp_left * math.sin(kappa)
    d_r = -amp_right * kappa * math.cos(kappa)
    d_l = amp_left * kappa * math.cos(kappa)
    lhs, rhs = _matching_sides(lam, f, h, v_r, v_l, d_r, d_l)
    gaps = []
    for a, b in zip(lhs, rhs):
        scale = abs(a) + abs(b)
        gaps.append(abs(a - b) / scale if scale > 0.0 else 0.0)
    return max(gaps)


def fit_loglog_slope(sizes: Sequence[int], residuals: Sequence[float]) -> float:
    """Least-squares slope of log(residual) against log(h)."""
    if len(sizes) != len(residuals) or len(sizes) < 2:
        raise DimensionError("need matching size/residual lists of length >= 2")
    hs = np.log([2.0 / (n + 1) for n in sizes])
    rs = np.log(np.asarray(residuals, dtype=float))
    return float(np.polyfit(hs, rs, 1)[0])


@dataclass(frozen=True)
class WallReport:
    """Normalized central amplitude of the ground state per size."""

    lam: float
    sizes: tuple[int, ...]
    amplitudes: tuple[float, ...]
    decreasing: bool


def opaque_wall_check(
    lam: float, sizes: Iterable[int], *, tolerance: float = 0.1
) -> WallReport:
    """Track (|psi_K| + |psi_{K+1}|) / max|psi| for the ground state.

    The sequence must decrease toward zero as the lattice refines,
    monotonically within the given noise tolerance.  The free chain
    (lam = 0) is rejected: there is no wall to become opaque.
    """
    lam = float(lam)
    if lam == 0.0:
        raise DomainError("the opaque-wall limit needs a nonzero coupling")
    if not -1.0 < lam < 1.0:
        raise DomainError("wall check requires |lam| < 1")
    size_list = tuple(int(s) for s in sizes)
    if len(size_list) < 2 or list(size_list) != sorted(set(size_list)):
        raise DomainError("need a strictly increasing list of at least two sizes")
    amplitudes = []
    for n in size_list:
        if n < 8 or n % 2 != 0:
            raise DimensionError("sizes must be even and >= 8")
        _, psi = _real_eigenpair(n, lam, 1)
        half = n // 2
        amplitudes.append(float(abs(psi[half - 1]) + abs(psi[half])))
    decreasing = amplitudes[-1] < amplitudes[0] and all(
        later <= earlier * (1.0 + tolerance)
        for earlier, later in zip(amplitudes, amplitudes[1:])
    )
    return WallReport(
        lam=lam,
        sizes=size_list,
        amplitudes=tuple(amplitudes),
        decreasing=decreasing,
    )


@dataclass(frozen=True)
class FreeMetricParams:
    """Parameters of the free-chain metric family
    exp(-f) (cosh(k) I - sinh(k) J), with J the lattice parity."""

    f: float = 0.0
    k: float = 0.0


def free_lattice_metric(
    n: int, params: FreeMetricParams
) -> tuple[np.ndarray, PositivityReport]:
    """Two-parameter metric of the uncoupled chain.

    Only the identity-like and parity-like basis matrices survive the
    continuum limit at zero coupling; their hyperbolic combination has
    eigenvalues exp(-f -/+ k), each of multiplicity n/2, hence is positive
    for every parameter choice and commutes with the free chain exactly.
    """
    if n < 2 or n % 2 != 0:
        raise DimensionError("size must be an even integer >= 2")
    a = math.exp(-params.f) * math.cosh(params.k)
    b = -math.exp(-params.f) * math.sinh(params.k)
    theta = a * np.eye(n) + b * np.fliplr(np.eye(n))
    return theta, positivity(theta)

"""Independent eigensolvers for the scaled radial equation.

Two routes are provided, both unaware of the recursion in :mod:`.engine`:

* a three-point finite-difference discretization on a half-step grid,
  diagonalized by tridiagonal bisection and Richardson-extrapolated;
* a Rayleigh-Ritz solve in the basis ``r^(|m|+1/2+k) exp(-b r^2/2)`` whose
  matrix elements are closed-form Gaussian moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import BasisConditioningError, InvalidParameterError, ResolutionError

TAIL_FACTOR = 12.0
MIN_POINTS = 200
MAX_BASIS = 40


@dataclass(frozen=True)
class FdGrid:
    """Uniform grid ``r_i = (i - 1/2) h``, ``i = 1..points``."""

    h: float
    r_max: float
    points: int
    offset: bool = True

    def __post_init__(self):
        if self.points < MIN_POINTS:
            raise InvalidParameterError(f"need at least {MIN_POINTS} grid points, got {self.points}")
        if not self.offset:
            raise InvalidParameterError("only the half-step offset grid is implemented")

    @classmethod
    def for_exponent(cls, lam: float, points: int = 2000) -> "FdGrid":
        """Grid reaching ``12/sqrt(lam)``, where the Gaussian tail is negligible."""
        if not lam > 0:
            raise InvalidParameterError("Gaussian exponent must be positive")
        r_max = TAIL_FACTOR / math.sqrt(lam)
        return cls(h=r_max / points, r_max=r_max, points=points)

    def refined(self) -> "FdGrid":
        return FdGrid(h=self.h / 2, r_max=self.r_max, points=2 * self.points)

    @property
    def r(self) -> np.ndarray:
        return (np.arange(1, self.points + 1) - 0.5) * self.h


def fd_matrix(abs_m: int, kappa: float, w: float, grid: FdGrid):
    """Diagonal and off-diagonal of the symmetric radial Hamiltonian.

    The kinetic part is the flux form of ``-(1/r) d/dr r d/dr`` for
    ``R = psi / sqrt(r)``, symmetrized by ``sqrt(r_i)``; the flux through
    ``r = 0`` vanishes, so no special origin stencil is needed.
    """
    h = grid.h
    r = grid.r
    outer = r + h / 2
    inner = r - h / 2
    diag = (outer + inner) / (r * h * h) + abs_m**2 / r**2 + 0.25 * w * w * r**2 + kappa / r
    off = -outer[:-1] / (h * h * np.sqrt(r[:-1] * r[1:]))
    return diag, off


def sturm_count(diag, off, x: float) -> int:
    """Eigenvalues of the symmetric tridiagonal matrix below ``x``."""
    count = 0
    d = 1.0
    tiny = np.finfo(float).tiny
    for a, b2 in zip(diag, np.concatenate(([0.0], np.asarray(off, dtype=float) ** 2))):
        d = (a - x) - b2 / d
        if d == 0:
            d = -tiny
        if d < 0:
            count += 1
    return count


def count_nodes(values, rel_floor: float = 1e-8) -> int:
    """Sign changes of a sampled function, ignoring numerically-zero samples."""
    v = np.asarray(values, dtype=float)
    big = v[np.abs(v) > rel_floor * np.max(np.abs(v))]
    return int(np.count_nonzero(np.sign(big[1:]) != np.sign(big[:-1])))


def _fd_solve(abs_m, kappa, w, grid, k):
    diag, off = fd_matrix(abs_m, kappa, w, grid)
    return eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))


def fd_eigen(abs_m: int, kappa: float, w: float, grid: FdGrid, k_lowest: int,
             richardson: bool = True) -> list[tuple[float, int]]:
    """Lowest ``k_lowest`` eigenvalues with eigenvector node counts.

    With ``richardson`` the values on ``h`` and ``h/2`` are combined as
    ``(4 E_{h/2} - E_h) / 3``.
    """
    if w < 0 or (w == 0 and kappa <= 0):
        raise InvalidParameterError("need w > 0, or w = 0 with a repulsive Coulomb term")
    if not 1 <= k_lowest <= grid.points // 4:
        raise InvalidParameterError(f"k_lowest must lie in [1, {grid.points // 4}]")
    fine = grid.refined() if richardson else grid
    e_fine, vecs = _fd_solve(abs_m, kappa, w, fine, k_lowest + 1)
    nodes = [count_nodes(vecs[:, i]) for i in range(k_lowest)]
    if not richardson:
        return [(float(e), n) for e, n in zip(e_fine[:k_lowest], nodes)]
    e_coarse, _ = _fd_solve(abs_m, kappa, w, grid, k_lowest + 1)
    corr = np.abs(e_fine - e_coarse)
    gaps = np.diff(e_fine)
    for i in range(k_lowest):
        gap = gaps[i] if i == 0 else min(gaps[i - 1], gaps[i])
        if corr[i] > 0.1 * gap or nodes[i] != i:
            raise ResolutionError(
                f"state {i} not resolved at h = {grid.h:.6g} (shift {corr[i]:.3g}, gap {gap:.3g})",
                suggested_h=grid.h / 4,
            )
    extrap = (4 * e_fine - e_coarse) / 3
    return [(float(e), n) for e, n in zip(extrap[:k_lowest], nodes)]


@dataclass(frozen=True)
class RitzBasis:
    """``r^(|m|+1/2+k) exp(-lambda_b r^2/2)``, ``k = 0..size-1``."""

    abs_m: int
    lambda_b: float
    size: int

    def __post_init__(self):
        if not self.lambda_b > 0:
            raise InvalidParameterError("basis exponent must be positive")
        if not 1 <= self.size <= MAX_BASIS:
            raise InvalidParameterError(f"basis size must lie in [1, {MAX_BASIS}]")

    @property
    def dps(self) -> int:
        # overlap condition number grows roughly like 10**(0.8 K)
        return 24 + self.size


def gaussian_moment(p, b):
    """``int_0^inf r^p exp(-b r^2) dr``."""
    return mp.gamma((p + 1) / mp.mpf(2)) / (2 * b ** ((p + 1) / mp.mpf(2)))


def ritz_matrices(abs_m: int, kappa: float, w: float, basis: RitzBasis):
    """Hamiltonian and overlap matrices at the current mpmath precision."""
    if basis.abs_m != abs_m:
        raise InvalidParameterError("basis |m| does not match the requested |m|")
    K = basis.size
    b = mp.mpf(basis.lambda_b)
    w = mp.mpf(w)
    kappa = mp.mpf(kappa)
    moments = {p: gaussian_moment(p, b) for p in range(2 * abs_m, 2 * abs_m + 2 * K + 2)}
    S = mp.matrix(K, K)
    H = mp.matrix(K, K)
    for i in range(K):
        for j in range(K):
            q = 2 * abs_m + 1 + i + j
            S[i, j] = moments[q]
            h = b * (2 * abs_m + 2 * j + 2) * moments[q] + (w * w / 4 - b * b) * moments[q + 2]
            h += kappa * moments[q - 1]
            if j:
                h -= j * (j + 2 * abs_m) * moments[q - 2]
            H[i, j] = h
    return (H + H.T) / 2, S


def _forward(L, B):
    """Solve ``L X = B`` for lower-triangular ``L`` (lists of mpf, B by columns)."""
    n = len(L)
    out = []
    for col in B:
        x = []
        for i in range(n):
            x.append((col[i] - mp.fdot(L[i][:i], x)) / L[i][i])
        out.append(x)
    return out


def _backward_t(L, B):
    """Solve ``L^T X = B`` (columns of ``B`` given as lists)."""
    n = len(L)
    out = []
    for col in B:
        x = [mp.mpf(0)] * n
        for i in range(n - 1, -1, -1):
            acc = col[i] - mp.fdot([L[k][i] for k in range(i + 1, n)], x[i + 1:])
            x[i] = acc / L[i][i]
        out.append(x)
    return out


def _reduce(H, S, dps):
    """Cholesky-reduce ``H c = E S c`` to a standard symmetric matrix."""
    try:
        Lm = mp.cholesky(S)
    except ValueError as exc:
        raise BasisConditioningError(
            "overlap matrix is not positive definite; reduce the basis size or retune lambda_b"
        ) from exc
    n = S.rows
    diag = [Lm[i, i] / mp.sqrt(S[i, i]) for i in range(n)]
    cond_digits = float(2 * mp.log10(max(diag) / min(diag)))
    if cond_digits > dps - 20:
        raise BasisConditioningError(
            f"overlap condition ~1e{cond_digits:.0f} too large; reduce the basis size or retune lambda_b"
        )
    L = [[Lm[i, j] for j in range(i + 1)] + [mp.mpf(0)] * (n - i - 1) for i in range(n)]
    # H symmetric: L^-1 H L^-T = L^-1 (L^-1 H)^T
    X = _forward(L, [[H[i, j] for i in range(n)] for j in range(n)])
    X_t = [[X[j][i] for j in range(n)] for i in range(n)]
    A = _forward(L, X_t)
    return L, A


def ritz_states(abs_m: int, kappa: float, w: float, basis: RitzBasis, k_lowest: int):
    """Ritz values and expansion coefficients in the raw basis.

    ``coeffs[i][k]`` multiplies ``r^(|m|+1/2+k)`` in the ``i``-th state.
    """
    if not 1 <= k_lowest <= basis.size:
        raise InvalidParameterError("k_lowest must lie in [1, basis size]")
    with mp.workdps(basis.dps):
        H, S = ritz_matrices(abs_m, kappa, w, basis)
        L, A = _reduce(H, S, basis.dps)
        evals, y = np.linalg.eigh(np.array(A, dtype=float))
        coeffs = _backward_t(L, [[mp.mpf(float(v)) for v in y[:, i]] for i in range(k_lowest)])
    return evals[:k_lowest], coeffs


def ritz_eigen(abs_m: int, kappa: float, w: float, basis: RitzBasis, k_lowest: int) -> list[float]:
    return [float(e) for e in ritz_states(abs_m, kappa, w, basis, k_lowest)[0]]


def ritz_nodes(basis: RitzBasis, coeffs, column: int, samples: int = 400) -> int:
    """Node count of one Ritz vector sampled on ``(0, 12/sqrt(lambda_b)]``."""
    r_max = TAIL_FACTOR / math.sqrt(basis.lambda_b)
    with mp.workdps(basis.dps):
        c = coeffs[column]
        values = []
        for i in range(1, samples + 1):
            r = mp.mpf(r_max) * i / samples
            poly = mp.polyval(c[::-1], r)
            values.append(float(poly * r ** (basis.abs_m + mp.mpf(1) / 2) * mp.exp(-basis.lambda_b * r * r / 2)))
    return count_nodes(values)


@dataclass(frozen=True)
class VerificationReport:
    method: str
    N: int
    abs_m: int
    node_count: int
    target: float
    oracle_value: float
    oracle_nodes: int
    abs_gap: float
    rel_gap: float
    nodes_match: bool
    tol: float
    passed: bool


def verify_solution(sol, method: str = "ritz", tol: float = 1e-8, kappa: float = 1.0,
                    points: int = 2000, basis_size: int | None = None) -> VerificationReport:
    """Compare ``sol.e_prime`` with the oracle spectrum at ``sol.w``.

    The nearest oracle eigenvalue among the lowest ``node_count + 2`` states
    is reported; passing requires ``rel_gap <= tol`` and equal node counts.
    """
    k = sol.node_count + 2
    if method == "fd":
        states = fd_eigen(sol.abs_m, kappa, sol.w, FdGrid.for_exponent(sol.lam, points), k)
        value, nodes = min(states, key=lambda s: abs(s[0] - sol.e_prime))
    elif method == "ritz":
        basis = RitzBasis(sol.abs_m, sol.lam, basis_size or max(24, sol.N + 4))
        evals, coeffs = ritz_states(sol.abs_m, kappa, sol.w, basis, k)
        idx = int(np.argmin(np.abs(evals - sol.e_prime)))
        value, nodes = float(evals[idx]), ritz_nodes(basis, coeffs, idx)
    else:
        raise InvalidParameterError(f"unknown oracle method {method!r}")
    gap = abs(value - sol.e_prime)
    rel = gap / abs(sol.e_prime)
    match = nodes == sol.node_count
    return VerificationReport(
        method=method,
        N=sol.N,
        abs_m=sol.abs_m,
        node_count=sol.node_count,
        target=sol.e_prime,
        oracle_value=value,
        oracle_nodes=nodes,
        abs_gap=gap,
        rel_gap=rel,
        nodes_match=match,
        tol=tol,
        passed=bool(match and rel <= tol),
    )

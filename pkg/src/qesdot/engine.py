"""Quasi-exact states of the relative-motion radial equation.

In effective units the radial equation reads::

    -psi'' + [(m^2 - 1/4)/r^2 + (w^2/4) r^2 + kappa/r] psi = E' psi

and the ansatz ``psi = r^(|m|+1/2) exp(-lam r^2 / 2) p(r)`` with
``p = sum c_k r^k`` and ``lam = w/2`` turns it into the three-term recursion::

    (k+1)(k+2|m|+1) c_{k+1} = kappa c_k + [2 lam (k-1) - eps] c_{k-1}
    eps = E' - 2 lam (|m|+1)

Truncation at degree N forces ``eps = 2 lam N``, i.e. ``E' = (N+|m|+1) w``,
and leaves one polynomial condition ``c_{N+1}(lam) = 0`` that quantizes the
admissible frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParameterError
from .polynomials import Poly, count_positive_roots, laguerre, poly_divmod, real_roots
from .units import REDUCED_MASS

TABLE1_ROWS = ((1, 0), (2, 0), (3, 0), (3, 1), (4, 0), (4, 1))


@dataclass(frozen=True)
class TerminationPolynomial:
    """``c_{N+1}`` as a polynomial in ``lam``, normalized to ``poly(0) = 1``.

    ``trivial_factor_order`` is the multiplicity of the zero root in the
    Coulomb strength (equivalently in ``beta_1``) that drops out once the
    strength is fixed to one.
    """

    N: int
    abs_m: int
    poly: Poly
    trivial_factor_order: int

    @property
    def beta1_root_count(self) -> int:
        """Roots in ``beta_1`` counted with sign pairs and the zero root."""
        return 2 * self.poly.degree + self.trivial_factor_order


@dataclass(frozen=True)
class GReport:
    betas: tuple[float, ...]
    n_factor: int
    remainder_norm: float


@dataclass(frozen=True)
class QesSolution:
    N: int
    abs_m: int
    lam: float
    w: float
    node_count: int
    p_coeffs: Poly
    e_prime: float
    g_report: GReport | None = None

    @property
    def coulomb_lock(self) -> float:
        """``c_1 (1 + 2|m|)``; equals the Coulomb strength (one)."""
        return self.p_coeffs[1] * (1 + 2 * self.abs_m)


def _check_degree(N: int, abs_m: int) -> None:
    if N < 1:
        raise InvalidParameterError(f"polynomial degree must be >= 1, got {N}")
    if abs_m < 0:
        raise InvalidParameterError(f"|m| must be non-negative, got {abs_m}")


def series_coefficients(N: int, abs_m: int, lam, kappa=1, eps=None) -> list:
    """Coefficients ``c_0 .. c_{N+1}`` of the recursion with ``c_0 = 1``.

    ``eps`` defaults to the truncation value ``2 lam N``.  Arithmetic follows
    the inputs: ``Fraction`` in, ``Fraction`` out; ``Poly`` in ``lam`` works
    too and yields the coefficients as polynomials in ``lam``.
    """
    if eps is None:
        eps = lam * (2 * N)
    c = [Fraction(1) if not isinstance(lam, float) else 1.0]
    prev = 0 * c[0]
    for k in range(N + 1):
        nxt = c[k] * kappa + (lam * (2 * (k - 1)) - eps) * prev
        denom = (k + 1) * (k + 2 * abs_m + 1)
        nxt = nxt / (Fraction(denom) if not isinstance(lam, float) else denom)
        prev = c[k]
        c.append(nxt)
    return c


def build_termination_polynomial(N: int, abs_m: int) -> TerminationPolynomial:
    """Exact termination condition ``c_{N+1}(lam) = 0`` for unit Coulomb strength.

    The recursion is weighted-homogeneous (strength weight 1, ``lam`` weight
    2), so ``c_{N+1} = sum_i a_i kappa^(N+1-2i) lam^i``; the lowest power of
    ``kappa`` left over is ``N + 1 - 2 deg``.
    """
    _check_degree(N, abs_m)
    lam = Poly([0, Fraction(1)])
    poly = series_coefficients(N, abs_m, lam)[-1]
    poly = poly / poly[0]
    return TerminationPolynomial(
        N=N, abs_m=abs_m, poly=poly, trivial_factor_order=N + 1 - 2 * poly.degree
    )


def solution_polynomial(N: int, abs_m: int, lam: float) -> Poly:
    """``p(r)`` of degree ``N`` at a root ``lam``, computed exactly then rounded."""
    c = series_coefficients(N, abs_m, Fraction(lam))
    return Poly(float(x) for x in c[: N + 1])


def solve_qes(N: int, abs_m: int, tol: float = 1e-15) -> list[QesSolution]:
    """All quasi-exact states of polynomial degree ``N``, ascending in ``w``."""
    tp = build_termination_polynomial(N, abs_m)
    sols = []
    for lam in real_roots(tp.poly, tol=tol):
        if lam <= 0:
            continue
        p = solution_polynomial(N, abs_m, lam)
        nodes = count_positive_roots(p)
        w = lam / REDUCED_MASS
        betas, rem = extract_g_from(p, lam, abs_m, nodes)
        sols.append(
            QesSolution(
                N=N,
                abs_m=abs_m,
                lam=lam,
                w=w,
                node_count=nodes,
                p_coeffs=p,
                e_prime=(N + abs_m + 1) * w,
                g_report=GReport(betas, nodes, rem),
            )
        )
    return sorted(sols, key=lambda s: s.w)


def table1_denominator(j: int, n: int, abs_m: int) -> float:
    """``D`` with locked ``w = 1/D`` for a closed-form table row, in effective units."""
    m = abs_m
    if (j, n) == (1, 0):
        return 1.0 + 2 * m
    if (j, n) == (2, 0):
        return 2.0 * (3 + 4 * m)
    if j == 3 and n in (0, 1):
        root = math.sqrt(73 + 64 * m * (2 + m))
        return 10 + 10 * m + (root if n == 0 else -root)
    if j == 4 and n in (0, 1):
        root = 3 * math.sqrt(33 + 8 * m * (5 + 2 * m))
        return 25 + 20 * m + (root if n == 0 else -root)
    raise InvalidParameterError(f"no closed-form table row (j={j}, n={n})")


def table1_frequency(j: int, n: int, abs_m: int) -> float:
    return 1.0 / table1_denominator(j, n, abs_m)


def beta1_closed_form(j: int, n: int, abs_m: int, w: float) -> float:
    """Positive ``beta_1`` from the closed-form table with ``m* = hbar = 1``."""
    a = 1 + 2 * abs_m
    if (j, n) == (1, 0):
        return math.sqrt(w / a)
    if (j, n) == (2, 0):
        return math.sqrt(2 * (3 + 4 * abs_m) * w) / a
    return math.sqrt(table1_denominator(j, n, abs_m) * w) / a


def extract_g_from(p: Poly, lam: float, abs_m: int, n_factor: int) -> tuple[tuple[float, ...], float]:
    """Divide ``p(r)`` by ``L_n^{|m|}(lam r^2)``.

    Returns the quotient's higher coefficients scaled so its constant term is
    one, and the max-norm of the division remainder.
    """
    if n_factor < 0 or 2 * n_factor > p.degree:
        raise InvalidParameterError(
            f"Laguerre factor of degree {2 * n_factor} in r exceeds deg p = {p.degree}"
        )
    factor = laguerre(n_factor, abs_m).substitute(Fraction(lam), 2).to_float()
    q, rem = poly_divmod(p.to_float(), factor)
    betas = tuple(float(c / q[0]) for c in q.coeffs[1:])
    norm = max((abs(c) for c in rem), default=0.0)
    return betas, float(norm)


def extract_g(sol: QesSolution, n_factor: int) -> tuple[tuple[float, ...], float]:
    return extract_g_from(sol.p_coeffs, sol.lam, sol.abs_m, n_factor)


def relative_energy(sol: QesSolution, m_signed: int, wc: float) -> float:
    """Relative-motion energy including the ``m wc / 2`` Zeeman term."""
    if abs(m_signed) != sol.abs_m:
        raise InvalidParameterError(f"|m| = {abs(m_signed)} does not match solution |m| = {sol.abs_m}")
    return sol.e_prime + m_signed * wc / 2


def wavefunction_eval(sol: QesSolution, r):
    """Unnormalized ``r^(|m|+1/2) exp(-lam r^2/2) p(r)``; accepts arrays."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise InvalidParameterError("wavefunction is evaluated on r > 0")
    p = np.polynomial.polynomial.polyval(r, np.array(sol.p_coeffs.coeffs, dtype=float))
    return r ** (sol.abs_m + 0.5) * np.exp(-0.5 * sol.lam * r * r) * p


def radial_residual(sol: QesSolution, r, kappa: float = 1.0):
    """Pointwise residual of the scaled radial equation for ``sol``.

    ``psi''`` is formed from the product rule on envelope and polynomial;
    no algebraic cancellation against the potential is used.
    """
    r = np.asarray(r, dtype=float)
    s = sol.abs_m + 0.5
    lam = sol.lam
    c = np.array(sol.p_coeffs.coeffs, dtype=float)
    P = np.polynomial.polynomial
    p, dp, d2p = P.polyval(r, c), P.polyval(r, P.polyder(c)), P.polyval(r, P.polyder(c, 2))
    env = r**s * np.exp(-0.5 * lam * r * r)
    denv = env * (s / r - lam * r)
    d2env = env * ((s / r - lam * r) ** 2 - s / r**2 - lam)
    psi = env * p
    d2psi = d2env * p + 2 * denv * dp + env * d2p
    m2 = sol.abs_m**2
    V = (m2 - 0.25) / r**2 + 0.25 * sol.w**2 * r**2 + kappa / r
    return -d2psi + (V - sol.e_prime) * psi

"""Total two-electron levels and ground-state field sweeps.

The center of mass is a plain 2D oscillator with the same effective
frequency ``w`` as the relative motion (charge-to-mass ratios coincide), so
``E = E_cm + E_rm`` with both parts carrying their own ``m wc / 2`` term.

Sign convention: ``E(m) = E(|m|) + m wc / 2``, so with ``wc > 0`` the
negative-``m`` branch is the one lowered by the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .engine import QesSolution, relative_energy
from .errors import InvalidParameterError, NumericFailure
from .field import cyclotron_from_w
from .oracle import FdGrid, RitzBasis, fd_eigen, ritz_eigen


@dataclass(frozen=True)
class SpectrumLine:
    e_total: float
    e_cm: float
    e_rm: float
    n_cm: int
    m_cm: int
    m_rel: int
    w: float
    wc: float
    rel: QesSolution | None = None


@dataclass(frozen=True)
class SweepPoint:
    wc: float
    m: int
    e_min: float


class SweepError(NumericFailure):
    def __init__(self, wc, cause):
        super().__init__(f"oracle failed at wc = {wc!r}: {cause}")
        self.wc = wc


def cm_energy(n_cm: int, m_cm: int, w: float, wc: float) -> float:
    if n_cm < 0:
        raise InvalidParameterError("n_cm must be non-negative")
    return (2 * n_cm + abs(m_cm) + 1) * w + m_cm * wc / 2


def cm_levels(shell_max: int) -> list[tuple[int, int]]:
    """All ``(n_cm, m_cm)`` with ``2 n_cm + |m_cm| <= shell_max``."""
    out = []
    for n in range(shell_max // 2 + 1):
        for m in range(-(shell_max - 2 * n), shell_max - 2 * n + 1):
            out.append((n, m))
    return out


def total_spectrum(sols: Iterable[QesSolution], w0: float, m_range: Iterable[int] | None = None,
                   cm_range: int | Iterable[tuple[int, int]] = 0,
                   parity: str | None = None) -> list[SpectrumLine]:
    """Combine relative QES states with center-of-mass levels.

    Each solution fixes its own ``w`` and hence, at confinement ``w0``, its
    own cyclotron frequency.  ``m_range`` lists admissible signed relative
    ``m`` (default: both signs of each solution's ``|m|``).  ``parity``
    (``"even"``/``"odd"``) optionally keeps relative ``m`` of that parity;
    this exchange-symmetry filter is off by default.
    """
    if parity not in (None, "even", "odd"):
        raise InvalidParameterError(f"parity must be 'even' or 'odd', got {parity!r}")
    levels = cm_levels(cm_range) if isinstance(cm_range, int) else list(cm_range)
    allowed = None if m_range is None else set(m_range)
    lines = []
    for sol in sols:
        wc = cyclotron_from_w(sol.w, w0)
        for m_rel in sorted({sol.abs_m, -sol.abs_m}):
            if allowed is not None and m_rel not in allowed:
                continue
            if parity is not None and (m_rel % 2 == 0) != (parity == "even"):
                continue
            e_rm = relative_energy(sol, m_rel, wc)
            for n_cm, m_cm in levels:
                e_cm = cm_energy(n_cm, m_cm, sol.w, wc)
                lines.append(SpectrumLine(e_cm + e_rm, e_cm, e_rm, n_cm, m_cm, m_rel, sol.w, wc, sol))
    lines.sort(key=lambda s: (s.e_total, abs(s.m_rel), s.m_rel, s.n_cm, s.m_cm,
                              s.rel.N, s.rel.node_count))
    return lines


def lowest_relative_energy(abs_m: int, w: float, method: str = "fd", kappa: float = 1.0,
                           points: int = 2000, basis_size: int = 20) -> float:
    """Lowest ``E'`` of the relative radial equation at an arbitrary ``w``."""
    lam = w / 2
    if method == "fd":
        return fd_eigen(abs_m, kappa, w, FdGrid.for_exponent(lam, points), 1)[0][0]
    if method == "ritz":
        return ritz_eigen(abs_m, kappa, w, RitzBasis(abs_m, lam, basis_size), 1)[0]
    raise InvalidParameterError(f"unknown oracle method {method!r}")


def ground_state_sweep(w0: float, wc_grid: Iterable[float], m_list: Iterable[int],
                       method: str = "fd", **oracle) -> list[SweepPoint]:
    """Relative-motion ground state versus cyclotron frequency.

    Off the quasi-exact manifold, so every point is an oracle solve.  Ties
    go to the smaller ``|m|``.
    """
    if w0 <= 0:
        raise InvalidParameterError("w0 must be positive")
    m_list = sorted(set(m_list), key=lambda m: (abs(m), m))
    if not m_list:
        raise InvalidParameterError("empty m list")
    out = []
    for wc in wc_grid:
        w = math.hypot(w0, wc / 2)
        cache = {}
        best = None
        for m in m_list:
            if abs(m) not in cache:
                try:
                    cache[abs(m)] = lowest_relative_energy(abs(m), w, method, **oracle)
                except NumericFailure as exc:
                    raise SweepError(wc, exc) from exc
            e = cache[abs(m)] + m * wc / 2
            if best is None or e < best[1]:
                best = (m, e)
        out.append(SweepPoint(float(wc), best[0], best[1]))
    return out


def is_staircase(points: Iterable[SweepPoint]) -> bool:
    """True when the minimizing ``|m|`` never decreases along the sweep."""
    ms = [abs(p.m) for p in points]
    return all(a <= b for a, b in zip(ms, ms[1:]))

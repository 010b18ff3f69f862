"""Magnetic field and dot size that realize a locked frequency.

A quasi-exact state fixes the effective frequency ``w``.  Since
``w^2 = w0^2 + (wc/2)^2``, a given confinement ``w0 <= w`` needs the
cyclotron frequency ``wc = 2 sqrt(w^2 - w0^2)``; conversely a given field
needs ``w0 = sqrt(w^2 - wc^2/4)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine import QesSolution
from .errors import InvalidParameterError, NoRealFieldError
from .units import EffectiveUnits, frequency_to_length


@dataclass(frozen=True)
class MagneticConstraint:
    """Realizing parameters in effective units; ``B`` in tesla when known.

    ``ell0`` (effective Bohr) is set only on the zero-field branch.
    """

    w: float
    w0: float
    wc: float
    B: float | None = None
    ell0: float | None = None


def cyclotron_from_w(w: float, w0: float) -> float:
    if not w > 0:
        raise InvalidParameterError(f"w must be positive, got {w!r}")
    if w0 < 0:
        raise InvalidParameterError(f"w0 must be non-negative, got {w0!r}")
    if w < w0:
        raise NoRealFieldError(w, w0)
    return 2.0 * math.sqrt((w - w0) * (w + w0))


def confinement_from_cyclotron(w: float, wc: float) -> float:
    """Confinement frequency that reaches ``w`` at cyclotron frequency ``wc``."""
    if not w > 0 or wc < 0:
        raise InvalidParameterError("need w > 0 and wc >= 0")
    half = wc / 2
    if half > w:
        raise NoRealFieldError(w, half)
    return math.sqrt((w - half) * (w + half))


def constraint_for(sol: QesSolution, w0: float, units: EffectiveUnits | None = None) -> MagneticConstraint:
    wc = cyclotron_from_w(sol.w, w0)
    return MagneticConstraint(
        w=sol.w,
        w0=w0,
        wc=wc,
        B=units.field_from_cyclotron(wc) if units is not None else None,
        ell0=frequency_to_length(sol.w) if wc == 0 else None,
    )


def zero_field_constraint(sol: QesSolution, units: EffectiveUnits | None = None) -> MagneticConstraint:
    """B = 0 branch: the dot length alone locks the state."""
    return constraint_for(sol, sol.w, units)


def constraint_for_field(sol: QesSolution, B: float, units: EffectiveUnits) -> MagneticConstraint:
    """Confinement needed to realize ``sol`` at flux density ``B`` (tesla)."""
    wc = units.cyclotron_from_field(abs(B))
    w0 = confinement_from_cyclotron(sol.w, wc)
    return MagneticConstraint(
        w=sol.w, w0=w0, wc=wc, B=abs(B), ell0=frequency_to_length(w0) if wc == 0 else None
    )

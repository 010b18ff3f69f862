"""Laboratory parameters, effective atomic units and the scaled problem.

All internal work happens in effective atomic units where the electron
effective mass, hbar and e^2/eps are all one.  Energies are then measured in
effective Hartree ``Ha* = (m*/eps^2) Ha`` and lengths in effective Bohr
``a* = (eps/m*) a0``.  Only this module knows about SI constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as sc

from .errors import InvalidParameterError

HARTREE_MEV = sc.physical_constants["Hartree energy in eV"][0] * 1e3
BOHR_NM = sc.physical_constants["Bohr radius"][0] * 1e9
HARTREE_J = sc.physical_constants["Hartree energy"][0]
HBAR = sc.hbar
M_E = sc.m_e
E_CHARGE = sc.e

#: Effective mass and dielectric constant for GaAs, a CLI convenience only.
MATERIALS = {
    "gaas": {"m_star": 0.067, "eps_r": 12.4},
}

REDUCED_MASS = 0.5
COULOMB_STRENGTH = 1.0


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory description of the dot.

    ``w0`` is in rad/s, ``ell0`` in metres, ``B`` in tesla.  Confinement is
    set either through ``w0`` or through ``ell0`` (then ``w0`` must be 0).
    """

    m_star: float
    eps_r: float
    w0: float = 0.0
    ell0: float | None = None
    B: float = 0.0

    def __post_init__(self):
        if not self.m_star > 0:
            raise InvalidParameterError(f"m_star must be positive, got {self.m_star!r}")
        if not self.eps_r > 0:
            raise InvalidParameterError(f"eps_r must be positive, got {self.eps_r!r}")
        if self.w0 < 0:
            raise InvalidParameterError(f"w0 must be non-negative, got {self.w0!r}")
        if self.ell0 is not None:
            if not self.ell0 > 0:
                raise InvalidParameterError(f"ell0 must be positive, got {self.ell0!r}")
            if self.w0 != 0:
                raise InvalidParameterError("give either w0 or ell0, not both")

    @property
    def confinement_frequency(self) -> float:
        """w0 in rad/s, derived from ell0 when that is the source."""
        if self.ell0 is not None:
            return HBAR / (self.m_star * M_E * self.ell0**2)
        return self.w0


@dataclass(frozen=True)
class EffectiveUnits:
    """Effective Hartree (meV), effective Bohr (nm) and Ha*/hbar (rad/s)."""

    energy_unit: float
    length_unit: float
    frequency_unit: float
    m_star: float
    eps_r: float

    def field_from_cyclotron(self, wc: float) -> float:
        """Flux density in tesla for a scaled cyclotron frequency."""
        return wc * self.frequency_unit * self.m_star * M_E / E_CHARGE

    def cyclotron_from_field(self, B: float) -> float:
        """Scaled cyclotron frequency for a flux density in tesla."""
        return E_CHARGE * B / (self.m_star * M_E) / self.frequency_unit


@dataclass(frozen=True)
class ScaledSystem:
    abs_m: int
    w0: float
    wc: float
    mu: float = REDUCED_MASS
    kappa: float = COULOMB_STRENGTH

    def __post_init__(self):
        if self.abs_m < 0:
            raise InvalidParameterError("abs_m must be non-negative")
        if self.w0 < 0 or self.wc < 0:
            raise InvalidParameterError("frequencies must be non-negative")

    @property
    def w(self) -> float:
        """Effective oscillator frequency sqrt(w0^2 + wc^2/4)."""
        return math.hypot(self.w0, self.wc / 2)

    @property
    def lam(self) -> float:
        """Gaussian exponent mu*w of the asymptotic wavefunction."""
        return self.mu * self.w


def effective_units(p: PhysicalParams) -> EffectiveUnits:
    """Effective atomic units for the material of ``p``."""
    ratio = p.m_star / p.eps_r**2
    return EffectiveUnits(
        energy_unit=HARTREE_MEV * ratio,
        length_unit=BOHR_NM * p.eps_r / p.m_star,
        frequency_unit=HARTREE_J * ratio / HBAR,
        m_star=p.m_star,
        eps_r=p.eps_r,
    )


def scale(p: PhysicalParams, abs_m: int = 0) -> ScaledSystem:
    """Express ``p`` in effective units."""
    u = effective_units(p)
    return ScaledSystem(
        abs_m=abs_m,
        w0=p.confinement_frequency / u.frequency_unit,
        wc=u.cyclotron_from_field(abs(p.B)),
    )


def unscale(s: ScaledSystem, m_star: float, eps_r: float) -> PhysicalParams:
    """Inverse of :func:`scale` (confinement returned through ``w0``)."""
    u = effective_units(PhysicalParams(m_star=m_star, eps_r=eps_r))
    return PhysicalParams(
        m_star=m_star,
        eps_r=eps_r,
        w0=s.w0 * u.frequency_unit,
        B=u.field_from_cyclotron(s.wc),
    )


def length_to_frequency(ell0: float) -> float:
    """Scaled confinement frequency of a dot of scaled length ``ell0``."""
    if not ell0 > 0:
        raise InvalidParameterError("ell0 must be positive")
    return 1.0 / ell0**2


def frequency_to_length(w0: float) -> float:
    """Scaled dot length ``1/sqrt(w0)`` (hbar = m* = 1)."""
    if not w0 > 0:
        raise InvalidParameterError("w0 must be positive")
    return 1.0 / math.sqrt(w0)

"""Quasi-exact spectra of two electrons in a parabolic quantum dot.

Relative motion of two Coulomb-repelling electrons in a 2D harmonic trap
under a perpendicular field admits polynomial-times-Gaussian eigenstates at
isolated values of the effective frequency.  This package finds those
frequencies exactly, builds the states, maps them to fields and dot sizes,
and checks every eigenvalue against independent numerical eigensolvers.
"""

from .engine import (
    QesSolution,
    TerminationPolynomial,
    beta1_closed_form,
    build_termination_polynomial,
    extract_g,
    relative_energy,
    solve_qes,
    wavefunction_eval,
)
from .errors import (
    BasisConditioningError,
    InvalidParameterError,
    NoRealFieldError,
    NumericFailure,
    ResolutionError,
)
from .field import MagneticConstraint, constraint_for, cyclotron_from_w
from .oracle import FdGrid, RitzBasis, fd_eigen, ritz_eigen, verify_solution
from .polynomials import Poly, count_positive_roots, laguerre, real_roots
from .spectrum import cm_energy, ground_state_sweep, total_spectrum
from .units import EffectiveUnits, PhysicalParams, ScaledSystem, effective_units, scale

__version__ = "0.1.0"

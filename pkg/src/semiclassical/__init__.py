"""Semiclassical partition function of the quartic anharmonic oscillator.

Modules by layer: ``elliptic`` (special functions), ``classical``
(Euclidean paths), ``fluctuations`` (Gaussian fluctuations, Green
function), ``series`` (partition function, limits, ground state, specific
heat, first correction), ``oracle`` (exact diagonalisation) and ``cli``.
"""

from .classical import QUARTIC, HARMONIC, SingleWell, q_plus, solve_path
from .errors import (
    ConvergenceError,
    DomainError,
    InsufficientLevelsError,
    QuadratureError,
    SemiclassicalError,
)
from .fluctuations import build_kernel, green_function, omega, propagator, van_vleck
from .oracle import Spectrum, exact_specific_heat, exact_z, spectrum
from .series import (
    SeriesResult,
    density_d,
    first_correction_a1,
    ground_energy,
    specific_heat,
    z2,
    z2_high_t,
    z2_low_t,
    z_corrected,
)
from .thermo import HeatSource, ThermoPoint

__version__ = "0.1.0"

__all__ = [
    "QUARTIC",
    "HARMONIC",
    "SingleWell",
    "q_plus",
    "solve_path",
    "SemiclassicalError",
    "DomainError",
    "ConvergenceError",
    "QuadratureError",
    "InsufficientLevelsError",
    "build_kernel",
    "green_function",
    "omega",
    "propagator",
    "van_vleck",
    "Spectrum",
    "spectrum",
    "exact_z",
    "exact_specific_heat",
    "SeriesResult",
    "density_d",
    "first_correction_a1",
    "ground_energy",
    "specific_heat",
    "z2",
    "z2_high_t",
    "z2_low_t",
    "z_corrected",
    "HeatSource",
    "ThermoPoint",
]

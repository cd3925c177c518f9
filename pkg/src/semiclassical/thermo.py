"""Thermodynamic record types shared by the series and oracle modules."""

import enum
from dataclasses import dataclass


class HeatSource(enum.Enum):
    """Which partition function a specific heat was derived from."""

    SEMICLASSICAL = "semiclassical"
    CLASSICAL = "classical"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ThermoPoint:
    theta: float
    specific_heat: float
    source: HeatSource

    @property
    def temperature(self):
        return 1.0 / self.theta

"""
Specific heat of the quartic oscillator
=======================================

C = Theta^2 d^2 ln Z / d Theta^2 from three sources: the quadratic
semiclassical Z2, the classical integral, and the exact spectrum.
"""

import warnings

import numpy as np

from semiclassical import oracle
from semiclassical import series as S
from semiclassical.thermo import HeatSource

g = 0.3
print("   T      C semi     C classical   C exact")
for temp in np.geomspace(0.1, 5.0, 12):
    th = 1 / temp
    with warnings.catch_warnings():
        # below T ~ 0.5 the quadratic order is flagged as unreliable
        warnings.simplefilter("ignore", S.ValidityWarning)
        cs = S.specific_heat(th, g).specific_heat
    cc = S.specific_heat(th, g, HeatSource.CLASSICAL).specific_heat
    ce = oracle.exact_specific_heat(th, g).specific_heat
    print(f"{temp:6.3f}  {cs:9.5f}  {cc:9.5f}  {ce:9.5f}")

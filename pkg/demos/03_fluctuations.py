"""
Quadratic fluctuations, van Vleck determinant and Green function
================================================================
"""

import math

import numpy as np

from semiclassical import fluctuations as F

k = F.build_kernel(0.4, 3.0)
print("Q(0) =", k.q_zero)

# the Wronskian-like coefficient is one on the diagonal, even where dq/dtheta = 0
for th in (0.0, 0.3, 1.5, 2.7, 3.0):
    print(f"  W({th},{th}) = {F.w_coeff(k, th, th):.15f}")

# two routes to the van Vleck determinant
g = 0.5
k = F.build_kernel(0.3, 3.0)
print("Delta from Omega       :", F.van_vleck(k, g))
print("Delta from dTheta/dq_t :", F.van_vleck_from_derivative(k.path.q0, 0.3, g))

# the curvature of the quartic well can only shrink the Green function
big = 3.0
k = F.build_kernel(0.4, big)
for th in np.linspace(0.3, 2.7, 5):
    print(f"  G({th:.1f},{th:.1f}) = {F.green_function(k, th, th):.6f}  free bound = {th * (big - th) / big:.6f}")

# with q_t = 0 everything reduces to hyperbolic functions
k = F.build_kernel(0.0, 2.0)
print("harmonic propagator:", F.propagator(k, 0.0, 0.0, 2.0, 0.0, 1.0),
      "exact:", (2 * math.pi * math.sinh(2.0)) ** -0.5)

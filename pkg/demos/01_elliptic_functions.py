"""
Jacobi elliptic functions near k = 1
====================================

Low-temperature paths live at moduli extremely close to one, where the
naive formulas for sn, cn, dn lose every digit.  Here we look at how the
library behaves there.
"""

import math

import numpy as np

from semiclassical.elliptic import Modulus, complete_e, complete_k, jacobi, jacobi_epsilon

# a modulus is always carried as the pair (k, k') so that k' = 1e-12 is exact
m = Modulus.from_complement(1e-12)
print("k  =", m.k, "  k' =", m.k_prime)
print("K  =", complete_k(m), "  log(4/k') =", math.log(4 / m.k_prime))
print("E  =", complete_e(m))

# for u well below K the functions are the hyperbolic ones
for u in (0.5, 2.0, 10.0):
    t = jacobi(u, m)
    print(f"u={u:5}: sn={t.sn:.15f} tanh={math.tanh(u):.15f}  cn={t.cn:.3e} sech={1 / math.cosh(u):.3e}")

# identities stay tight over a long stretch of u
m = Modulus.from_k(0.999)
us = np.linspace(-20, 20, 401)
worst = 0.0
for u in us:
    t = jacobi(u, m)
    worst = max(worst, abs(t.sn**2 + t.cn**2 - 1), abs(t.dn**2 + m.m * t.sn**2 - 1))
print("worst identity residual on [-20, 20]:", worst)

# the epsilon function is the running integral of dn^2; at u = K it is E
m = Modulus.from_k(0.9)
print("eps(K) =", jacobi_epsilon(complete_k(m), m), "  E =", complete_e(m))

"""
The quadratic partition function Z2 and its limits
==================================================

Z2 integrates the semiclassical density over turning points.  It should
collapse to the harmonic result as g -> 0, to the classical integral at
high temperature, and to a ground-state form at low temperature.
"""

import math

from semiclassical import oracle
from semiclassical import series as S

for big in (0.5, 1.0, 2.0, 5.0):
    z = S.z2(big, 1e-4).z2
    print(f"g=1e-4 Theta={big}: Z2={z:.8f} harmonic={0.5 / math.sinh(big / 2):.8f}")

for g in (0.3, 1.0):
    print(f"Theta=0.01 g={g}: Z2/Z_high = {S.z2(0.01, g).z2 / S.z2_high_t(0.01, g):.6f}")

print("Theta=15 g=0.3: Z2/Z_low =", S.z2(15.0, 0.3).z2 / S.z2_low_t(15.0, 0.3))

# and against the exact spectral sum
print("\n  g  Theta    Z2         exact      rel.err   validity")
for g in (0.05, 0.1, 0.3):
    for big in (0.5, 1.0, 2.0):
        r = S.z2(big, g)
        zx = oracle.exact_z(big, g)
        print(f"{g:4} {big:4}  {r.z2:.7f}  {zx:.7f}  {r.z2 / zx - 1:+.2%}   {r.validity:.4f}")

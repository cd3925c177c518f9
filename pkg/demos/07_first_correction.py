"""
The first correction a1 beyond quadratic order
==============================================

a1 weights each turning point by the integrated square of the diagonal
Green function.  It is bounded by Theta^3/40, and folding it back into
Z moves Z toward the exact value.
"""

from semiclassical import classical as C
from semiclassical import oracle
from semiclassical import series as S

for big in (0.5, 2.0, 5.0):
    top = C.q_plus(big)
    vals = [S.first_correction_a1(f * top, big) for f in (0.0, 0.5, 0.9)]
    print(f"Theta={big}: a1 = {', '.join(f'{v:.5f}' for v in vals)}   bound {big**3 / 40:.5f}")

print("harmonic a1(2) closed form:", S.harmonic_a1(2.0), " kernel route:", S.first_correction_a1(0.0, 2.0))

print("\n  g  Theta   Z2 err    corrected err")
for g in (0.05, 0.1, 0.3):
    for big in (0.5, 1.0, 2.0):
        r = S.z_corrected(big, g)
        zx = oracle.exact_z(big, g)
        print(f"{g:4} {big:4}  {r.z2 / zx - 1:+.3%}   {r.z_corrected / zx - 1:+.3%}")

"""
Ground-state energies from the low-temperature wavefunction
===========================================================

The Theta -> infinity limit of the density gives an approximate ground
state.  Its Rayleigh quotient is compared with exact diagonalization.
"""

from semiclassical import oracle
from semiclassical import series as S

print("   g     E0 semiclassical   E0 exact    error %")
for g in (0.4, 1.2, 2.0, 4.0, 8.0):
    es = S.ground_energy(g)
    ex = oracle.spectrum(g, 1).ground
    print(f"{g:5}   {es:.6f}          {ex:.6f}    {(es - ex) / ex * 100:.2f}")

# the approximate energy is always above the exact one, as it must be for a trial state
spec = oracle.spectrum(1.2, 8)
print("\nfirst levels at g = 1.2:", [round(e, 6) for e in spec.levels])
print("basis size used:", spec.basis_size)

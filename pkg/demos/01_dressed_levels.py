"""Dressed levels of the driven qubit-resonator system.

Diagonalize the drive-frame Hamiltonian at the reference parameters, compare
with the second-order dispersive formulas and see which drive frequencies
nest the one-photon levels between the zero-photon ones.
"""
import numpy as np

from dressedlambda import (
    classify_regime,
    diagonalize_system,
    reference_params,
    perturbative_energies,
    to_mhz,
)

p = reference_params(omega_d_ghz=4.87)
print(f"dispersive shift chi/2pi = {to_mhz(p.chi):.1f} MHz")

basis = diagonalize_system(p)
pert = dict(perturbative_energies(p))
print("\nlevel  label   exact (MHz)   perturbative (MHz)")
for j in range(4):
    lab = basis.labels[j]
    print(f"  {j + 1}    |{lab[0]},{lab[1]}>   {to_mhz(basis.energies[j]):10.2f}   "
          f"{to_mhz(pert[lab]):10.2f}")

# Scan the drive frequency: nesting means |1,0> < |1,1> < |0,1> in the middle
print("\nomega_d (GHz)  regime")
for wd in np.arange(4.80, 5.00, 0.02):
    rc = classify_regime(reference_params(omega_d_ghz=wd))
    print(f"   {wd:.2f}       {rc.kind.value}{' (near edge)' if rc.boundary else ''}")

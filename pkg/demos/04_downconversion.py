"""Down-conversion at the matching point.

A probe on the 4->1 line is scattered almost entirely into the 4->2 Raman
line. The secular dressed model with a static probe gives the spectrum at
finite power; the efficiency drops once the |2~> -> |1~> recovery (rate ~
gamma) can no longer keep up with the input flux.
"""
import numpy as np

from dressedlambda import Level, diagonalize_system, find_matching_power, mhz, reference_params, to_ghz
from dressedlambda.dynamics import down_conversion_efficiency, output_spectrum

m = find_matching_power(reference_params(4.87), Level.FOUR)
p = m.params
basis = diagonalize_system(p)
w41 = p.omega_d + basis.transition(4, 1)
w42 = p.omega_d + basis.transition(4, 2)
print(f"probe on 4->1 at {to_ghz(w41):.4f} GHz, Raman line 4->2 at {to_ghz(w42):.4f} GHz")

grid = w42 + mhz(np.linspace(-10, 10, 801))
for flux in (1e5, 1e6, 1e7):
    s = output_spectrum(p, w41, np.sqrt(flux), grid)
    f, _ = s.peak()
    print(f"|F|^2 = {flux:.0e}: peak at {to_ghz(f):.5f} GHz, |r| = {s.reflection:.3f}, "
          f"population of |2~> = {s.populations[1]:.3f}, flux balance = {s.flux_balance():.4f}")

fluxes = np.logspace(4, 8, 9)
print("\n|F|^2 (photons/s)   eta")
for pt in down_conversion_efficiency(p, fluxes, w41):
    print(f"   {pt.input_flux:9.2e}     {pt.eta:.4f}")

"""Rate inversion and the impedance-matching drive power.

Without drive, |4~> = |0,1> decays by photon emission only to |1~> = |0,0>.
A drive mixes |0,1> with |1,1>, and in the nesting regime the two decay
rates from |4~> swap as the drive grows. Where they cross, the system is an
impedance-matched Lambda system.
"""
import numpy as np

from dressedlambda import find_both, mhz, reference_params, rate_curves, to_mhz

nest = reference_params(4.87)
grid = mhz(np.linspace(0, 50, 26))
curves = rate_curves(nest, grid) / nest.kappa

print("Rabi/2pi (MHz)   k31/k   k32/k   k41/k   k42/k")
for r, row in zip(grid, curves):
    print(f"   {to_mhz(r):6.1f}      " + "  ".join(f"{x:.3f}" for x in row))

for level, m in find_both(nest).items():
    print(f"\nlevel {int(level)}: matched at Rabi/2pi = {to_mhz(m.rabi):.3f} MHz "
          f"(residual {m.residual:.1e} kappa, {m.iterations} bisection steps)")

unnest = reference_params(4.83)
c = rate_curves(unnest, grid)
crosses = np.any(np.diff(np.sign(c[:, 2] - c[:, 3])) != 0)
print(f"\nunnesting drive (4.83 GHz): k41 and k42 cross on 0-50 MHz? {crosses}")

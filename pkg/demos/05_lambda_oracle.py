"""The three-level Lambda system on its own.

The reduced model shares the generator and resolvent code with the full
simulator. Equal decay rates from |e> cancel the reflection on resonance;
with no Raman channel the probe is fully reflected; saturation sets in when
the input flux approaches Gamma_mg.
"""
import numpy as np

from dressedlambda import LambdaParams, lambda_efficiency, lambda_reflection, mhz

k = mhz(20.0)
print("delta/2pi (MHz)   |r| matched   |r| no Raman")
for d in np.linspace(-30, 30, 13):
    matched = lambda_reflection(LambdaParams(k / 2, k / 2, mhz(1.0), mhz(d)))
    closed = lambda_reflection(LambdaParams(k / 2, 0.0, mhz(1.0), mhz(d)))
    print(f"   {d:+6.1f}          {abs(matched):.4f}        {abs(closed):.4f}")

print("\ninput flux (photons/s)   eta")
for flux in np.logspace(3, 8, 11):
    eta = lambda_efficiency(LambdaParams(k / 2, k / 2, mhz(1.0), probe_amp=np.sqrt(flux)))
    print(f"   {flux:9.2e}            {eta:.4f}")

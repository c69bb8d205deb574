"""Weak-probe reflection maps in both regimes.

Reflection comes from the exact Liouvillian resolvent in the drive frame.
In the nesting regime a deep dip opens near the 4->1 line at the matching
power; in the unnesting regime |r| never falls far.
Writes two SVG heatmaps when matplotlib is available.
"""
import os

import numpy as np

from dressedlambda import Level, diagonalize_system, find_matching_power, ghz, mhz, reference_params
from dressedlambda.dynamics import reflection_map

rabis = mhz(np.linspace(0, 50, 51))
probes = ghz(np.linspace(9.90, 10.20, 151))

maps = {}
for wd in (4.87, 4.83):
    maps[wd] = np.abs(reflection_map(reference_params(wd), rabis, probes))
    print(f"omega_d/2pi = {wd} GHz: min |r| = {maps[wd].min():.3f}, max |r| = {maps[wd].max():.6f}")

m = find_matching_power(reference_params(4.87), Level.FOUR)
w41 = m.params.omega_d + diagonalize_system(m.params).transition(4, 1)
row = np.abs(reflection_map(m.params, [m.rabi], w41 + mhz(np.linspace(-60, 20, 321)))[0])
k = int(np.argmin(row))
print(f"at the matching power: min |r| = {row[k]:.3f}, {-60 + 0.25 * k:+.2f} MHz from the 4->1 line")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    os.makedirs("out", exist_ok=True)
    for wd, r in maps.items():
        fig, ax = plt.subplots(figsize=(5, 4))
        im = ax.pcolormesh(probes / (2e9 * np.pi), rabis / (2e6 * np.pi), r, shading="auto",
                           vmin=0, vmax=1)
        fig.colorbar(im, ax=ax, label="|r|")
        ax.set_xlabel("probe frequency (GHz)")
        ax.set_ylabel("Rabi frequency (MHz)")
        ax.set_title(f"omega_d/2pi = {wd} GHz")
        fig.tight_layout()
        fig.savefig(f"out/reflection_{wd}.svg")
        plt.close(fig)

"""Tour of the five pulse spectra at the WCDMA roll-off.

Run: python3 demos/01_spectra.py
"""

import numpy as np

from nyqshape import NYQUIST_FAMILIES, PulseFamily, PulseParams, alias_sum, amplitude_spectrum, band_edges, ideal_pulse_value

params = PulseParams(symbol_rate_hz=3.84e6, rolloff=0.22)
edges = band_edges(params)
print(f"band edges: f1 = {edges.f1_hz / 1e6:.4f} MHz, B = {edges.fN_hz / 1e6:.4f} MHz, "
      f"f2 = {edges.f2_hz / 1e6:.4f} MHz")

# Sample each spectrum across the transition band. All of them pass through 1/2 at B
# (1/sqrt(2) for the root raised cosine).
f = np.linspace(edges.f1_hz, edges.f2_hz, 9)
print("\nf (MHz)   " + "  ".join(f"{fam.value:>9}" for fam in PulseFamily))
for fi in f:
    row = "  ".join(f"{amplitude_spectrum(fam, params, fi):9.6f}" for fam in PulseFamily)
    print(f"{fi / 1e6:8.4f}  {row}")

# Folding the spectrum by the symbol rate gives a flat 1 for every Nyquist family.
probe = np.random.default_rng(1).uniform(-4e6, 4e6, 10000)
for fam in NYQUIST_FAMILIES:
    dev = np.max(np.abs(alias_sum(fam, params, probe) - 1))
    print(f"{fam.value:>9}: max |alias sum - 1| over 10k points = {dev:.1e}")

# The matching time pulses cross zero at every nonzero symbol instant.
t = np.arange(0, 6) / params.symbol_rate_hz
print("\npulse samples p(kT), k = 0..5")
for fam in NYQUIST_FAMILIES:
    vals = ideal_pulse_value(fam, params, t)
    print(f"{fam.value:>9}: " + " ".join(f"{v:+.1e}" for v in vals))

# Half a symbol off the grid the tails differ, which is where the families part ways.
t_half = (np.arange(6) + 0.5) / params.symbol_rate_hz
print("\npulse tails p((k + 1/2)T)")
for fam in NYQUIST_FAMILIES:
    vals = ideal_pulse_value(fam, params, t_half)
    print(f"{fam.value:>9}: " + " ".join(f"{v:+.4f}" for v in vals))

"""Design the 17-tap WCDMA transmit filter two ways and compare them.

Run: python3 demos/02_design.py
"""

import numpy as np

from nyqshape import DesignSpec, Normalization, PulseFamily, PulseParams, design_frequency_sampling, design_time_sampling

spec = DesignSpec(
    PulseParams(3.84e6, 0.22),
    PulseFamily.FlippedExponential,
    oversample_m=2,
    delay_symbols_d=4,
    normalization=Normalization.UnitDcGain,
)
freq = design_frequency_sampling(spec)
time = design_time_sampling(spec)
print(f"N = {freq.n_taps} taps at fs = {freq.sample_rate_hz / 1e6:.2f} MHz, delay {freq.delay_samples} samples")
print(" n   frequency-sampled   time-sampled       difference")
for n, (a, b) in enumerate(zip(freq.taps, time.taps)):
    print(f"{n:2d}  {a:+.12f}   {b:+.12f}   {a - b:+.2e}")

# The frequency-sampled taps are the ideal pulse folded with period N samples,
# so the two paths only converge as the tail beyond D symbols dies out.
print("\nmax |difference| as the span grows")
for d in (2, 4, 8, 16, 32):
    s = spec.with_(delay_symbols_d=d)
    err = np.max(np.abs(design_frequency_sampling(s).taps - design_time_sampling(s).taps))
    print(f"  D = {d:2d}: {err:.2e}")

"""Frequency response, ISI and an eye-opening check for one filter.

Run: python3 demos/03_response.py
"""

import numpy as np

from nyqshape import DesignSpec, PulseFamily, PulseParams, cascade, design, eye_trace, frequency_response, isi_report, spectral_metrics

spec = DesignSpec(PulseParams(3.84e6, 0.22), PulseFamily.FlippedHyperbolicSecant, 4, 6)
filt = design(spec)
grid = frequency_response(filt, 4096)
m = spectral_metrics(grid, -40)

print(f"{filt.n_taps} taps, fs = {filt.sample_rate_hz / 1e6:.2f} MHz")
print(f"main lobe edge   {m.main_lobe_edge_hz / 1e6:.4f} MHz")
print(f"stopband from    {m.stopband_start_hz / 1e6:.4f} MHz (-40 dB)")
print(f"peak sidelobe    {m.peak_sidelobe_db:.2f} dB")
print(f"passband ripple  {m.passband_ripple_db:.4f} dB")

# Linear phase: the group delay is (N - 1)/2 samples everywhere the response is not null.
ok = grid.mag_db > -100
print(f"group delay      {np.median(grid.group_delay_samples):.6f} samples "
      f"(spread {np.ptp(grid.group_delay_samples[ok]):.1e})")

# A few spot values of the response.
for nu in (0.0, 0.25, 0.5, 0.75, 1.0):
    i = int(round(nu * (grid.f_hz.size - 1)))
    print(f"  nu = {nu:4.2f}: {grid.mag_db[i]:9.3f} dB  {grid.phase_deg[i]:10.3f} deg")

isi = isi_report(filt)
print(f"\npeak ISI distortion {isi.peak_distortion:.4f}, rms {isi.rms_distortion:.4f}")

# Eye: sample every trace at the symbol instant and find the narrowest opening.
traces = eye_trace(filt, 2000, seed=0)
centre = traces[:, spec.oversample_m] / filt.taps[filt.delay_samples]
print(f"eye opening over 2000 symbols {np.min(np.abs(centre)):.4f} (bound {1 - isi.peak_distortion:.4f})")

# A root raised cosine only becomes Nyquist after the receive-side match.
rrc = design(spec.with_(family=PulseFamily.RootRaisedCosine, delay_symbols_d=10))
print(f"\nRRC alone:   peak ISI {isi_report(rrc).peak_distortion:.4f}")
print(f"RRC x RRC:   peak ISI {isi_report(cascade(rrc, rrc)).peak_distortion:.4f}")

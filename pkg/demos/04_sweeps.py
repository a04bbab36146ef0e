"""The three WCDMA sweeps and the family comparison table.

Run: python3 demos/04_sweeps.py   (a few seconds; NYQSHAPE_THREADS caps the workers)
"""

from nyqshape import PulseParams, family_comparison, sweep_alpha, sweep_delay, sweep_oversample


def show(report):
    print(f"\n== {report.axis_name} ==")
    print(" value  taps  occ.bw MHz  lobe MHz  stop MHz  sidelobe dB  peak ISI  phase(nu=1)")
    for r in report.records:
        side = "   -   " if r.metrics.peak_sidelobe_db is None else f"{r.metrics.peak_sidelobe_db:8.2f}"
        print(f"{r.swept_value:6g}  {r.n_taps:4d}  {r.occupied_bw_hz / 1e6:10.3f}  "
              f"{r.metrics.main_lobe_edge_hz / 1e6:8.3f}  {r.metrics.stopband_start_hz / 1e6:8.3f}  "
              f"{side:>11}  {r.isi.peak_distortion:8.4f}  {r.phase_at_nu1_deg:10.1f}")


# Widening the roll-off widens the main lobe.
show(sweep_alpha())
# Longer spans: phase at nu = 1 grows as -180 D M, ISI and sidelobes trend down but not monotonically.
show(sweep_delay())
show(sweep_oversample(parity="even"))
show(sweep_oversample(parity="odd"))

cmp = family_comparison(PulseParams(3.84e6, 0.22), 2, 8)
print("\n== families at M = 2, D = 8 ==")
print("   family  peak ISI  oracle ISI  sidelobe dB")
for row in cmp.rows:
    side = "-" if row.metrics.peak_sidelobe_db is None else f"{row.metrics.peak_sidelobe_db:.2f}"
    print(f"{row.family.value:>9}  {row.isi.peak_distortion:8.4f}  {row.oracle_peak_distortion:10.1e}  {side:>11}")

print(f"\n== {cmp.tradeoff_family.value}: peak ISI over delay D (rows) and M (columns) ==")
ms = sorted({c.oversample_m for c in cmp.tradeoff})
print("  D  " + "".join(f"  M={m:<5}" for m in ms))
for d in sorted({c.delay_d for c in cmp.tradeoff}):
    cells = {c.oversample_m: c for c in cmp.tradeoff if c.delay_d == d}
    print(f"{d:3d}  " + "".join(f"  {cells[m].peak_distortion:.4f}" for m in ms))

"""Acceptance gate: one test per criterion, each reported as PASS/FAIL in the summary.

Tolerances and runtime limits are taken verbatim from the criteria; a red
line here means the criterion is not met, not that the test is flaky.
"""

import time
from pathlib import Path

import numpy as np
import pytest

from nyqshape import (
    NYQUIST_FAMILIES,
    DesignSpec,
    Normalization,
    PulseFamily,
    PulseParams,
    alias_sum,
    amplitude_spectrum,
    band_edges,
    cascade,
    design_frequency_sampling,
    design_time_sampling,
    frequency_response,
    ideal_pulse_value,
    isi_report,
    spectral_metrics,
    sweep_alpha,
    sweep_delay,
)
from nyqshape.cli import read_taps_csv, run
from nyqshape.fir_design import dtft

FD = 3.84e6
GOLDEN = Path(__file__).parent / "data" / "golden_fexp_a022_m2_d4_dc.csv"
criterion = pytest.mark.criterion


class Clock:
    def __init__(self, limit_s):
        self.limit_s = limit_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit_s, f"took {self.elapsed:.1f} s, limit {self.limit_s} s"


@criterion("Nyquist invariant suite")
def test_nyquist_invariants():
    rng = np.random.default_rng(20240611)
    with Clock(5):
        for family in NYQUIST_FAMILIES:
            for alpha in (0.0, 0.1, 0.22, 0.5, 1.0):
                p = PulseParams(FD, alpha)
                b = p.nyquist_hz
                x = np.linspace(0.0, alpha * b, 1001)
                vs = amplitude_spectrum(family, p, b + x) + amplitude_spectrum(family, p, b - x)
                assert np.max(np.abs(vs - 1.0)) <= 1e-12, (family, alpha)

                f = rng.uniform(-2 * FD, 2 * FD, 1001)
                assert np.max(np.abs(alias_sum(family, p, f) - 1.0)) <= 1e-12, (family, alpha)

                assert amplitude_spectrum(family, p, b) == 0.5

                grid = np.linspace(0.0, 2 * FD, 1001)
                pos = amplitude_spectrum(family, p, grid)
                assert np.array_equal(pos, amplitude_spectrum(family, p, -grid))
                assert np.all(np.diff(pos) <= 0.0)


@criterion("Zero-ISI oracle")
def test_zero_isi_oracle():
    p = PulseParams(FD, 0.22)
    k = np.concatenate([-np.arange(1, 9), np.arange(1, 9)])
    with Clock(30):
        for family in NYQUIST_FAMILIES:
            assert abs(ideal_pulse_value(family, p, 0.0) - 1.0) <= 1e-9, family
            v = ideal_pulse_value(family, p, k / FD)
            assert np.max(np.abs(v)) <= 1e-7, (family, np.max(np.abs(v)))


@criterion("Design-path agreement")
def test_design_path_agreement():
    misses = []
    with Clock(120):
        for family in NYQUIST_FAMILIES:
            for alpha in (0.1, 0.22, 0.5, 1.0):
                for m in (2, 4):
                    for d, tol in ((4, 5e-3), (8, 5e-4)):
                        s = DesignSpec(PulseParams(FD, alpha), family, m, d, Normalization.UnitDcGain)
                        err = np.max(np.abs(design_frequency_sampling(s).taps
                                            - design_time_sampling(s).taps))
                        if err > tol:
                            misses.append(f"{family.value} a={alpha} M={m} D={d}: {err:.2e} > {tol:g}")
    assert not misses, f"{len(misses)} of 64 cases out of tolerance:\n" + "\n".join(misses)


@criterion("Linear-phase/group-delay law")
def test_linear_phase_group_delay():
    for family in PulseFamily:
        for alpha in (0.0, 0.22, 1.0):
            for m, d in ((2, 2), (2, 10), (3, 4), (7, 2)):
                f = design_frequency_sampling(DesignSpec(PulseParams(FD, alpha), family, m, d))
                g = frequency_response(f, 4096)
                ok = g.mag_db > -100
                expect = -180.0 * g.norm_freq * d * m
                assert np.max(np.abs(g.phase_deg - expect)[ok]) <= 1e-6, (family, alpha, m, d)
                assert np.max(np.abs(g.group_delay_samples - (f.n_taps - 1) / 2)[ok]) <= 1e-3
                pb = g.f_hz <= band_edges(f.spec.params).f1_hz
                if np.count_nonzero(pb) > 1:
                    assert np.std(g.group_delay_samples[pb]) <= 1e-6


@criterion("Direction-of-effect suite")
def test_direction_claims():
    failures = []
    with Clock(60):
        rep = sweep_alpha()
        bw = [r.occupied_bw_hz for r in rep.records]
        edge = [r.metrics.main_lobe_edge_hz for r in rep.records]
        if not (bw[0] < bw[1] < bw[2]):
            failures.append(f"occupied bandwidth over alpha not increasing: {bw}")
        if not (edge[0] < edge[1] < edge[2]):
            failures.append(f"main lobe edge over alpha not increasing: {edge}")

        rep = sweep_delay()
        side = [r.metrics.peak_sidelobe_db for r in rep.records]
        isi = [r.isi.peak_distortion for r in rep.records]
        if any(s is None for s in side) or any(b > a for a, b in zip(side, side[1:])):
            failures.append(f"peak sidelobe over D=2..10 not non-increasing: {side}")
        if any(b > a for a, b in zip(isi, isi[1:])):
            failures.append(f"peak ISI over D=2..10 not non-increasing: {isi}")

        phases = []
        for m in range(2, 8):
            f = design_frequency_sampling(DesignSpec(PulseParams(FD, 0.22), oversample_m=m))
            g = frequency_response(f, 4096)
            pmax = spectral_metrics(g).passband_max_db
            if abs(pmax) > 1e-9:
                failures.append(f"passband max at M={m} is {pmax} dB")
            phases.append(abs(g.phase_deg[-1]))
        if any(b <= a for a, b in zip(phases, phases[1:])):
            failures.append(f"|phase at nu=1| not increasing with M: {phases}")
    assert not failures, "\n".join(failures)


@criterion("Transform self-consistency")
def test_transform_self_consistency():
    rng = np.random.default_rng(7)
    for _ in range(20):
        s = DesignSpec(
            PulseParams(float(rng.uniform(1e3, 1e7)), float(rng.uniform(0, 1))),
            PulseFamily(rng.choice([f.value for f in PulseFamily])),
            int(rng.integers(2, 8)),
            int(rng.integers(1, 11)),
            Normalization(rng.choice([n.value for n in Normalization])),
        )
        f = design_frequency_sampling(s)
        n_fft = 1 << int(np.ceil(np.log2(f.n_taps)) + 2)
        spectrum = np.fft.fft(f.taps, n_fft)
        energy = np.dot(f.taps, f.taps)
        assert abs(energy - np.sum(np.abs(spectrum) ** 2) / n_fft) <= 1e-10 * max(energy, 1.0)

        direct = dtft(f.taps, np.arange(n_fft) * f.sample_rate_hz / n_fft, f.sample_rate_hz)
        assert np.max(np.abs(direct - spectrum)) <= 1e-10
        g = frequency_response(f, n_fft // 2 + 1)
        assert np.max(np.abs(g.response - spectrum[: n_fft // 2 + 1])) <= 1e-10


@criterion("RRC matched-filter property")
def test_rrc_matched_filter():
    s = DesignSpec(PulseParams(FD, 0.22), PulseFamily.RootRaisedCosine, 2, 10)
    r = design_frequency_sampling(s)
    peak = isi_report(cascade(r, r)).peak_distortion
    assert peak < 1e-3, f"self-convolved RRC peak ISI {peak:.3e}"


@criterion("CLI round-trip and determinism")
def test_cli_round_trip(tmp_path):
    argv = ["design", "--family", "fexp", "--alpha", "0.22", "--symbol-rate", "3.84e6",
            "--oversample", "2", "--delay", "4", "--norm", "dc"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() == GOLDEN.read_bytes()

    s = DesignSpec(PulseParams(FD, 0.22), PulseFamily.FlippedExponential, 2, 4, Normalization.UnitDcGain)
    assert np.array_equal(np.array(read_taps_csv(a)), design_frequency_sampling(s).taps)

    sw1, sw2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
    sweep = ["sweep", "--axis", "delay", "--values", "2,4,6,8,10", "--format", "csv"]
    assert run(sweep + ["--out", str(sw1)]) == 0
    assert run(sweep + ["--out", str(sw2)]) == 0
    assert sw1.read_bytes() == sw2.read_bytes()

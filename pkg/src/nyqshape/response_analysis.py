"""Frequency response, spectral metrics, ISI and eye-diagram views of a FIR filter."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateFilter, GridTooCoarse, InvalidArg, InvalidRange
from .fir_design import dtft
from .pulse_spectra import band_edges

MAG_FLOOR_DB = -300.0
MIN_METRIC_POINTS = 512
# below this magnitude (relative to the peak) the phase of H is rounding noise
_PHASE_RELIABLE = 1e-10


@dataclass(frozen=True, eq=False)
class ResponseGrid:
    f_hz: np.ndarray
    norm_freq: np.ndarray
    response: np.ndarray
    mag_db: np.ndarray
    phase_deg: np.ndarray
    group_delay_samples: np.ndarray
    filter: object = None


@dataclass(frozen=True)
class SpectralMetrics:
    main_lobe_edge_hz: float
    stopband_start_hz: float
    peak_sidelobe_db: Optional[float]
    passband_ripple_db: float
    passband_max_db: float


@dataclass(frozen=True, eq=False)
class IsiReport:
    symbol_samples: np.ndarray
    peak_distortion: float
    rms_distortion: float


def _unwrap_linear_phase(raw_deg, mag):
    """Unwrap the phase of a real symmetric filter modulo 180 degrees.

    A symmetric filter has H = A(w) exp(-j w d) with A real, so the raw
    phase jumps by 180 degrees wherever A changes sign. Those jumps are
    absorbed into the sign of A. Samples whose magnitude is at rounding
    level carry no phase information; they are interpolated from their
    reliable neighbours.
    """
    reliable = mag > _PHASE_RELIABLE * max(mag.max(), 1e-300)
    idx = np.nonzero(reliable)[0]
    if idx.size == 0:
        return np.zeros_like(raw_deg)
    out = np.empty(idx.size)
    out[0] = raw_deg[idx[0]]
    for j in range(1, idx.size):
        raw = raw_deg[idx[j]]
        out[j] = raw + 180.0 * np.round((out[j - 1] - raw) / 180.0)
    return np.interp(np.arange(raw_deg.size), idx, out)


def frequency_response(filt, n_points=4096, f_max_hz=None):
    """Evaluate H(f) directly from the taps on a uniform grid over [0, f_max]."""
    fs = filt.sample_rate_hz
    if f_max_hz is None:
        f_max_hz = fs / 2.0
    if not (0.0 < f_max_hz <= fs / 2.0):
        raise InvalidRange(f"f_max_hz must lie in (0, fs/2 = {fs / 2.0}], got {f_max_hz}")
    if n_points < 2:
        raise InvalidRange("need at least two grid points")
    f = np.linspace(0.0, f_max_hz, int(n_points))
    if f_max_hz == fs / 2.0:
        f[-1] = fs / 2.0
    h = dtft(filt.taps, f, fs)
    mag = np.abs(h)
    with np.errstate(divide="ignore"):
        mag_db = np.maximum(20.0 * np.log10(mag), MAG_FLOOR_DB)
    phase = _unwrap_linear_phase(np.degrees(np.angle(h)), mag)
    grid = ResponseGrid(f, f / (fs / 2.0), h, mag_db, phase, np.zeros_like(f), filt)
    object.__setattr__(grid, "group_delay_samples", group_delay(filt, grid))
    return grid


def group_delay(filt, grid):
    """-d(phase)/d(omega) in samples via central differences (one-sided at the ends)."""
    if grid.f_hz.size == 0:
        raise InvalidRange("empty grid")
    if grid.f_hz.size == 1:
        return np.zeros(1)
    omega = 2.0 * np.pi * grid.f_hz / filt.sample_rate_hz
    return -np.gradient(np.radians(grid.phase_deg), omega)


def spectral_metrics(grid, stop_threshold_db=-40.0):
    """Main lobe edge, stopband onset, peak sidelobe and passband ripple."""
    n = grid.f_hz.size
    if n < MIN_METRIC_POINTS:
        raise GridTooCoarse(f"need at least {MIN_METRIC_POINTS} grid points, got {n}")
    if stop_threshold_db >= 0:
        raise InvalidRange("stop_threshold_db must be negative")
    filt = grid.filter
    f1 = band_edges(filt.spec.params).f1_hz
    f_end = grid.f_hz[-1]
    mag = grid.mag_db

    interior = np.arange(1, n - 1)
    is_min = (mag[interior] < mag[interior - 1]) & (mag[interior] < mag[interior + 1])
    cands = interior[is_min & (grid.f_hz[interior] > f1)]
    if cands.size:
        edge_i = int(cands[0])
        main_lobe_edge = float(grid.f_hz[edge_i])
        peak_sidelobe = float(mag[edge_i + 1:].max())
    else:
        edge_i = n - 1
        main_lobe_edge = float(f_end)
        peak_sidelobe = None

    above = np.nonzero(mag >= stop_threshold_db)[0]
    if above.size == 0:
        stop_i = 0
    elif above[-1] == n - 1:
        stop_i = n - 1
    else:
        stop_i = int(above[-1]) + 1
    # the stopband is searched beyond the main lobe only
    stop_i = max(stop_i, edge_i)

    passband = mag[grid.f_hz <= f1]
    return SpectralMetrics(
        main_lobe_edge_hz=main_lobe_edge,
        stopband_start_hz=float(grid.f_hz[stop_i]),
        peak_sidelobe_db=peak_sidelobe,
        passband_ripple_db=float(passband.max() - passband.min()),
        passband_max_db=float(passband.max()),
    )


def isi_report(filt):
    """Symbol-spaced samples of the filter around its center, scaled to p(0) = 1."""
    m = filt.spec.oversample_m
    d = filt.delay_samples
    center = filt.taps[d]
    if center == 0.0:
        raise DegenerateFilter("center tap is zero")
    k = d // m
    samples = filt.taps[d + m * np.arange(-k, k + 1)] / center
    samples[k] = 1.0
    others = np.delete(samples, k)
    return IsiReport(
        symbol_samples=samples,
        peak_distortion=float(np.abs(others).sum()),
        rms_distortion=float(np.sqrt(np.dot(others, others))),
    )


_MASK64 = (1 << 64) - 1


def splitmix64(seed):
    """Infinite generator of splitmix64 outputs."""
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def random_symbols(n, seed):
    """+1/-1 symbols from the top bit of successive splitmix64 draws."""
    gen = splitmix64(seed)
    return np.array([1.0 if next(gen) >> 63 else -1.0 for _ in range(n)])


def eye_trace(filt, n_symbols, seed=0, symbols=None):
    """Overlay traces of the filtered symbol stream, one per symbol.

    Each trace spans two symbol periods (2M+1 samples) centered on a symbol's
    decision instant. `symbols` overrides the PRNG draw. The first and last D
    symbols are warm-up and produce no traces.
    """
    if n_symbols < 16:
        raise InvalidArg(f"n_symbols must be >= 16, got {n_symbols}")
    m = filt.spec.oversample_m
    d = filt.delay_samples
    n_warm = d // m
    if symbols is None:
        symbols = random_symbols(n_symbols, seed)
    else:
        symbols = np.asarray(symbols, dtype=float)
        if symbols.size != n_symbols:
            raise InvalidArg("symbols length must equal n_symbols")
    x = np.zeros(n_symbols * m)
    x[::m] = symbols
    taps = filt.taps
    y = np.zeros(x.size + taps.size - 1)
    for i in np.nonzero(x)[0]:
        y[i:i + taps.size] += x[i] * taps

    traces = []
    # symbol k peaks at sample k*M + d; keep windows that see full filter overlap
    for k in range(n_warm + 1, n_symbols - n_warm - 1):
        c = k * m + d
        traces.append(y[c - m:c + m + 1])
    if not traces:
        raise InvalidArg("too few symbols for the filter span")
    return np.array(traces)

"""Parameter studies over roll-off, group delay and oversampling, plus a family comparison."""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidSpec, ParityViolation
from .fir_design import DesignSpec, design, tap_count
from .pulse_spectra import PulseFamily, PulseParams
from .response_analysis import frequency_response, isi_report, spectral_metrics

WCDMA_CHIP_RATE = 3.84e6
WCDMA_ROLLOFF = 0.22

DEFAULT_ALPHAS = (0.1, 0.5, 1.0)
DEFAULT_DELAYS = (2, 4, 6, 8, 10)
DEFAULT_EVEN_MS = (2, 4, 6)
DEFAULT_ODD_MS = (3, 5, 7)

GRID_POINTS = 4096
STOP_THRESHOLD_DB = -40.0

AXES = ("alpha", "delay", "oversample_even", "oversample_odd")


def wcdma_base_spec():
    return DesignSpec(PulseParams(WCDMA_CHIP_RATE, WCDMA_ROLLOFF))


@dataclass(frozen=True, eq=False)
class SweepRecord:
    swept_value: object
    spec: DesignSpec
    metrics: object
    isi: object
    phase_at_nu1_deg: float
    occupied_bw_hz: float

    @property
    def n_taps(self):
        return tap_count(self.spec)


@dataclass(frozen=True, eq=False)
class SweepReport:
    axis_name: str
    base_spec: DesignSpec
    records: list = field(default_factory=list)


def evaluate(spec, method="frequency", n_points=GRID_POINTS, stop_threshold_db=STOP_THRESHOLD_DB,
             swept_value=None):
    """Design one filter and collect every per-point metric."""
    filt = design(spec, method)
    grid = frequency_response(filt, n_points)
    return SweepRecord(
        swept_value=swept_value,
        spec=spec,
        metrics=spectral_metrics(grid, stop_threshold_db),
        isi=isi_report(filt),
        phase_at_nu1_deg=float(grid.phase_deg[-1]),
        occupied_bw_hz=spec.params.symbol_rate_hz * (1.0 + spec.params.rolloff),
    )


def _threads():
    raw = os.environ.get("NYQSHAPE_THREADS")
    if not raw:
        return min(8, os.cpu_count() or 1)
    n = int(raw)
    if n < 1:
        raise ValueError("NYQSHAPE_THREADS must be a positive integer")
    return n


def _run(axis, base, points, **kw):
    # pool.map yields in submission order, so the report order is fixed by the sort
    values = sorted(points, key=lambda vs: vs[0])
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        records = list(pool.map(
            lambda vs: evaluate(vs[1], swept_value=vs[0], **kw), values))
    return SweepReport(axis, base, records)


def sweep_alpha(base=None, alphas=DEFAULT_ALPHAS, **kw):
    base = base or wcdma_base_spec()
    return _run("alpha", base, [(float(a), base.with_(rolloff=a)) for a in alphas], **kw)


def sweep_delay(base=None, delays=DEFAULT_DELAYS, **kw):
    base = base or wcdma_base_spec()
    for d in delays:
        if int(d) != d or d < 1:
            raise InvalidSpec(f"delays must be positive integers, got {d!r}")
    return _run("delay", base, [(int(d), base.with_(delay_symbols_d=int(d))) for d in delays], **kw)


def sweep_oversample(base=None, ms=None, parity="even", **kw):
    base = base or wcdma_base_spec()
    if parity not in ("even", "odd"):
        raise InvalidSpec(f"parity must be 'even' or 'odd', got {parity!r}")
    if ms is None:
        ms = DEFAULT_EVEN_MS if parity == "even" else DEFAULT_ODD_MS
    want = 0 if parity == "even" else 1
    for m in ms:
        if int(m) != m or m < 2:
            raise InvalidSpec(f"oversampling factors must be integers >= 2, got {m!r}")
        if int(m) % 2 != want:
            raise ParityViolation(f"M={m} is not {parity}")
    return _run(f"oversample_{parity}", base,
                [(int(m), base.with_(oversample_m=int(m))) for m in ms], **kw)


def run_sweep(axis, base=None, values=None, **kw):
    """Dispatch on an axis name from `AXES`."""
    if axis == "alpha":
        return sweep_alpha(base, values or DEFAULT_ALPHAS, **kw)
    if axis == "delay":
        return sweep_delay(base, values or DEFAULT_DELAYS, **kw)
    if axis in ("oversample_even", "oversample_odd"):
        return sweep_oversample(base, values, axis.rsplit("_", 1)[1], **kw)
    raise InvalidSpec(f"unknown sweep axis {axis!r}; expected one of {', '.join(AXES)}")


@dataclass(frozen=True, eq=False)
class FamilyRow:
    family: PulseFamily
    n_taps: int
    metrics: object
    isi: object
    # ISI of the time-sampled (oracle) design at the same parameters
    oracle_peak_distortion: float


@dataclass(frozen=True)
class TradeoffCell:
    delay_d: int
    oversample_m: int
    n_taps: int
    peak_distortion: float
    peak_sidelobe_db: Optional[float]


@dataclass(frozen=True, eq=False)
class FamilyComparison:
    params: PulseParams
    oversample_m: int
    delay_d: int
    rows: list
    tradeoff_family: PulseFamily
    tradeoff: list


def family_comparison(params, m, d, tradeoff_family=PulseFamily.FlippedExponential,
                      tradeoff_delays=range(2, 11), tradeoff_ms=range(2, 8),
                      normalization=None):
    """Compare every family at identical (alpha, M, D) and tabulate a D x M grid.

    The comparison is reported as-is; no family is declared a winner.
    """
    base = DesignSpec(params, PulseFamily.FlippedExponential, m, d)
    if normalization is not None:
        base = base.with_(normalization=normalization)
    rows = []
    for fam in PulseFamily:
        spec = base.with_(family=fam)
        rec = evaluate(spec)
        oracle = isi_report(design(spec, "time"))
        rows.append(FamilyRow(fam, tap_count(spec), rec.metrics, rec.isi,
                              oracle.peak_distortion))

    cells = [base.with_(family=tradeoff_family, delay_symbols_d=dd, oversample_m=mm)
             for dd in tradeoff_delays for mm in tradeoff_ms]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        recs = list(pool.map(evaluate, cells))
    tradeoff = [
        TradeoffCell(s.delay_symbols_d, s.oversample_m, tap_count(s),
                     r.isi.peak_distortion, r.metrics.peak_sidelobe_db)
        for s, r in zip(cells, recs)
    ]
    return FamilyComparison(params, m, d, rows, tradeoff_family, tradeoff)

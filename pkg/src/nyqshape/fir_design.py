"""Linear-phase FIR design from a pulse spectrum.

Two independent routes produce the same filter up to truncation effects:
frequency sampling (the primary design flow) and direct sampling of the
integrated time-domain pulse.
"""

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import DegenerateFilter, InvalidSpec, NumericalAsymmetry
from .pulse_spectra import PulseFamily, PulseParams, amplitude_spectrum, ideal_pulse_value

NORMALIZE_GRID_POINTS = 4096


class Normalization(Enum):
    UnitDcGain = "dc"
    UnitEnergy = "energy"
    UnitPeakTap = "peak-tap"
    UnitPeakResponse = "peak-response"

    @classmethod
    def from_name(cls, name):
        for mode in cls:
            if name in (mode.value, mode.name):
                return mode
        raise InvalidSpec(
            f"unknown normalization {name!r}; expected one of "
            + ", ".join(m.value for m in cls)
        )


@dataclass(frozen=True)
class DesignSpec:
    params: PulseParams
    family: PulseFamily = PulseFamily.FlippedExponential
    oversample_m: int = 2
    delay_symbols_d: int = 2
    normalization: Normalization = Normalization.UnitPeakResponse

    def __post_init__(self):
        object.__setattr__(self, "family", PulseFamily(self.family))
        object.__setattr__(self, "normalization", Normalization(self.normalization))
        for name, low in (("oversample_m", 2), ("delay_symbols_d", 1)):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < low:
                raise InvalidSpec(f"{name} must be an integer >= {low}, got {v!r}")
            object.__setattr__(self, name, int(v))

    @property
    def sample_rate_hz(self):
        return self.oversample_m * self.params.symbol_rate_hz

    def with_(self, **changes):
        """Copy with some fields replaced; `symbol_rate_hz`/`rolloff` reach into params."""
        p = {k: changes.pop(k) for k in ("symbol_rate_hz", "rolloff") if k in changes}
        if p:
            changes["params"] = replace(self.params, **p)
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class FirFilter:
    taps: np.ndarray
    sample_rate_hz: float
    delay_samples: int
    spec: DesignSpec

    def __post_init__(self):
        taps = np.array(self.taps, dtype=float)
        taps.flags.writeable = False
        object.__setattr__(self, "taps", taps)

    @property
    def n_taps(self):
        return self.taps.size


def tap_count(spec):
    return 2 * spec.delay_symbols_d * spec.oversample_m + 1


def dtft(taps, f_hz, sample_rate_hz):
    """Direct evaluation of sum_n taps[n] exp(-2j pi f n / fs) at each frequency."""
    taps = np.asarray(taps, dtype=float)
    f = np.atleast_1d(np.asarray(f_hz, dtype=float))
    cycles = np.multiply.outer(f / sample_rate_hz, np.arange(taps.size, dtype=float))
    cycles -= np.round(cycles)
    return np.exp(-2j * np.pi * cycles) @ taps


def normalize(filt, mode):
    mode = Normalization(mode)
    taps = filt.taps
    if mode is Normalization.UnitDcGain:
        div = taps.sum()
    elif mode is Normalization.UnitEnergy:
        div = np.sqrt(np.dot(taps, taps))
    elif mode is Normalization.UnitPeakTap:
        div = np.max(np.abs(taps))
    else:
        f = np.linspace(0.0, filt.sample_rate_hz / 2.0, NORMALIZE_GRID_POINTS)
        div = np.max(np.abs(dtft(taps, f, filt.sample_rate_hz)))
    if not np.isfinite(div) or abs(div) < 1e-300:
        raise DegenerateFilter(f"cannot apply {mode.name}: divisor is {div!r}")
    return replace(filt, taps=taps / div, spec=replace(filt.spec, normalization=mode))


def design_frequency_sampling(spec, normalized=True):
    """Design by sampling the amplitude spectrum on the length-N DFT grid.

    The samples get the linear phase of a (N-1)/2 sample delay and are
    inverse transformed; the real part is symmetrized so that
    ``taps[n] == taps[N-1-n]`` holds bit-exactly.
    """
    n = tap_count(spec)
    d = (n - 1) // 2
    fs = spec.sample_rate_hz
    k = np.arange(n)
    fk = k * fs / n
    fk = np.where(fk > fs / 2.0, fk - fs, fk)
    amp = amplitude_spectrum(spec.family, spec.params, np.abs(fk))
    h = amp * np.exp(-2j * np.pi * ((k * d) % n) / n)
    raw = np.fft.ifft(h)

    peak = np.max(np.abs(raw.real))
    if peak == 0.0:
        raise DegenerateFilter("frequency samples are all zero")
    imag = np.max(np.abs(raw.imag))
    asym = np.max(np.abs(raw.real - raw.real[::-1]))
    if imag > 1e-8 * peak or asym > 1e-8 * peak:
        raise NumericalAsymmetry(
            f"inverse DFT residue too large: imag {imag:.3g}, asymmetry {asym:.3g}"
        )
    taps = 0.5 * (raw.real + raw.real[::-1])
    filt = FirFilter(taps, fs, d, spec)
    return normalize(filt, spec.normalization) if normalized else filt


def design_time_sampling(spec, normalized=True):
    """Sample the integrated ideal pulse at t = (n - d)/fs."""
    n = tap_count(spec)
    d = (n - 1) // 2
    fs = spec.sample_rate_hz
    offsets = np.arange(n) - d
    # evaluate on the non-negative half only; p(t) is even so symmetry is exact
    half = ideal_pulse_value(spec.family, spec.params, np.arange(d + 1) / fs)
    taps = half[np.abs(offsets)]
    filt = FirFilter(taps, fs, d, spec)
    return normalize(filt, spec.normalization) if normalized else filt


def design(spec, method="frequency", normalized=True):
    if method in ("frequency", "freq"):
        return design_frequency_sampling(spec, normalized)
    if method == "time":
        return design_time_sampling(spec, normalized)
    raise InvalidSpec(f"unknown design method {method!r}")


def cascade(first, second):
    """Series connection of two filters at the same rate (direct-sum convolution)."""
    if first.sample_rate_hz != second.sample_rate_hz:
        raise InvalidSpec("cascaded filters must share a sample rate")
    a, b = first.taps, second.taps
    out = np.zeros(a.size + b.size - 1)
    for i, tap in enumerate(a):
        out[i:i + b.size] += tap * b
    spec = replace(
        first.spec,
        delay_symbols_d=first.spec.delay_symbols_d + second.spec.delay_symbols_d,
    )
    return FirFilter(out, first.sample_rate_hz, first.delay_samples + second.delay_samples, spec)

"""Amplitude spectra of Nyquist pulse families and a numeric time-domain oracle.

All spectra are even, equal to one on the flat passband ``|f| <= f1`` and
zero beyond ``f2``. The three flipped families use a monotone shape on the
inner half of the transition band and its point reflection through
``(B, 1/2)`` on the outer half, which makes them Nyquist by construction.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import FamilyNotNyquist, InvalidParams

LN_2_PLUS_SQRT3 = float(np.log(2.0 + np.sqrt(3.0)))  # asech(1/2)

# default Simpson panel count per smooth piece of the spectrum
ORACLE_PANELS = 2**14


class PulseFamily(Enum):
    RaisedCosine = "rc"
    RootRaisedCosine = "rrc"
    FlippedExponential = "fexp"
    FlippedHyperbolicSecant = "fsech"
    FlippedArcHyperbolicSecant = "farcsech"

    @property
    def is_nyquist(self):
        return self is not PulseFamily.RootRaisedCosine

    @classmethod
    def from_name(cls, name):
        """Look up a family by short tag (``fexp``) or enum name."""
        for fam in cls:
            if name in (fam.value, fam.name):
                return fam
        raise InvalidParams(
            f"unknown pulse family {name!r}; expected one of "
            + ", ".join(f.value for f in cls)
        )


NYQUIST_FAMILIES = tuple(f for f in PulseFamily if f.is_nyquist)


@dataclass(frozen=True)
class PulseParams:
    symbol_rate_hz: float
    rolloff: float

    def __post_init__(self):
        fd = float(self.symbol_rate_hz)
        a = float(self.rolloff)
        if not (np.isfinite(fd) and fd > 0):
            raise InvalidParams(f"symbol_rate_hz must be > 0, got {self.symbol_rate_hz}")
        if not (0.0 <= a <= 1.0):
            raise InvalidParams(f"rolloff alpha must lie in [0, 1], got {self.rolloff}")
        object.__setattr__(self, "symbol_rate_hz", fd)
        object.__setattr__(self, "rolloff", a)

    @property
    def symbol_period_s(self):
        return 1.0 / self.symbol_rate_hz

    @property
    def nyquist_hz(self):
        return self.symbol_rate_hz / 2.0


@dataclass(frozen=True)
class BandEdges:
    f1_hz: float
    fN_hz: float
    f2_hz: float


def band_edges(params):
    """Inner edge ``B(1-a)``, Nyquist frequency ``B`` and outer edge ``B(1+a)``."""
    b = params.symbol_rate_hz / 2.0
    f2 = b + params.rolloff * b
    # Sterbenz: 2B - f2 is exact for f2 in [B, 2B], so f1 + f2 == 2B holds exactly
    f1 = 2.0 * b - f2
    return BandEdges(f1, b, f2)


def _asech(z):
    z = np.asarray(z, dtype=float)
    return np.log((1.0 + np.sqrt(np.clip(1.0 - z * z, 0.0, None))) / z)


def _transition(family, u):
    """Spectrum on the transition band as a function of u = (f - B)/(alpha B) in (-1, 1)."""
    inner = u < 0
    if family in (PulseFamily.RaisedCosine, PulseFamily.RootRaisedCosine):
        v = 0.5 * (1.0 - np.sin(0.5 * np.pi * u))
        return np.sqrt(v) if family is PulseFamily.RootRaisedCosine else v
    if family is PulseFamily.FlippedExponential:
        # exp(-ln2 * s) == 2**-s, s = distance from the nearer band edge in units of alpha*B
        return np.where(inner, 2.0 ** -(1.0 + u), 1.0 - 2.0 ** -(1.0 - u))
    if family is PulseFamily.FlippedHyperbolicSecant:
        s = np.where(inner, 1.0 + u, 1.0 - u)
        g = 1.0 / np.cosh(LN_2_PLUS_SQRT3 * s)
        return np.where(inner, g, 1.0 - g)
    if family is PulseFamily.FlippedArcHyperbolicSecant:
        k = 0.5 / LN_2_PLUS_SQRT3
        z = np.where(inner, 1.0 - u, 1.0 + u) / 2.0
        g = k * _asech(z)
        return np.where(inner, 1.0 - g, g)
    raise InvalidParams(f"unsupported family {family!r}")


def _spectrum_at_offset(family, params, d):
    """Spectrum as a function of d = |f| - B.

    Both band masks and the transition depend on d alone, so two frequencies
    mirrored about B give values that sum to one exactly.
    """
    b = params.nyquist_hz
    # f2 - B is exact (Sterbenz) and equals B - f1, so the band is symmetric in d
    w = band_edges(params).f2_hz - b
    edge_value = np.sqrt(0.5) if family is PulseFamily.RootRaisedCosine else 0.5
    out = np.zeros_like(d)
    if params.rolloff == 0.0:
        out[d < 0] = 1.0
    else:
        out[d <= -w] = 1.0
        mid = (d > -w) & (d < w)
        if np.any(mid):
            u = np.clip(d[mid] / (params.rolloff * b), -1.0, 1.0)
            out[mid] = _transition(family, u)
    out[d == 0] = edge_value
    return out


def amplitude_spectrum(family, params, f_hz):
    """Evaluate the amplitude spectrum F(|f|) of `family`.

    Accepts a scalar or an array of frequencies; returns the same shape.
    Values at exactly ``f1`` and ``f2`` take the passband (1) and stopband (0)
    branches. At exactly ``B`` the value is 1/2 (sqrt(1/2) for RRC).
    """
    family = PulseFamily(family)
    x = np.abs(np.asarray(f_hz, dtype=float))
    out = _spectrum_at_offset(family, params, x - params.nyquist_hz)
    return float(out) if np.ndim(f_hz) == 0 else out


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _offset_from_nyquist(f, shift, b):
    """|f - shift| - B with the rounding of the subtraction carried along.

    A plain ``abs(f - shift) - B`` rounds twice; near the band edges the
    arcsech cusp turns that into errors around 1e-10 in the alias sum.
    """
    s, e = _two_sum(f, -shift)
    neg = s < 0
    s = np.where(neg, -s, s)
    e = np.where(neg, -e, e)
    t, e2 = _two_sum(s, -b)
    return t + (e + e2)


def alias_sum(family, params, f_hz):
    """Sum of the spectrum's copies shifted by multiples of the symbol rate.

    Equals one at every frequency for a Nyquist family. The sum is periodic
    in ``f_d``, so ``f`` is first reduced into ``(-f_d, f_d)`` (``fmod`` is
    exact); shifts ``k = -2..2`` then cover every copy that can overlap.
    """
    family = PulseFamily(family)
    if not family.is_nyquist:
        raise FamilyNotNyquist(
            f"{family.name} is not a Nyquist spectrum; square its values first"
        )
    fd = params.symbol_rate_hz
    f = np.fmod(np.atleast_1d(np.asarray(f_hz, dtype=float)), fd)
    b = params.nyquist_hz
    total = sum(_spectrum_at_offset(family, params, _offset_from_nyquist(f, k * fd, b))
                for k in range(-2, 3))
    return float(total[0]) if np.ndim(f_hz) == 0 else total.reshape(np.shape(f_hz))


def simpson(y, h):
    """Composite Simpson rule for equally spaced samples (odd sample count)."""
    y = np.asarray(y)
    n = y.shape[0] - 1
    if n < 2 or n % 2:
        raise ValueError("Simpson integration needs an even, nonzero panel count")
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return h / 3.0 * np.tensordot(w, y, axes=(0, 0))


def ideal_pulse_value(family, params, t_s, panels=ORACLE_PANELS):
    """Time-domain pulse p(t) obtained by integrating the spectrum numerically.

    p(t) = (2/f_d) * integral_0^f2 F(f) cos(2 pi f t) df, evaluated with
    composite Simpson separately on [0, f1], [f1, B] and [B, f2] so the
    kinks at the band edges fall on panel boundaries. p(0) = 1 for every
    Nyquist family. `t_s` may be a scalar or an array.
    """
    family = PulseFamily(family)
    if panels < 2**14 or panels % 2:
        raise ValueError("panels must be even and at least 2**14")
    t = np.atleast_1d(np.asarray(t_s, dtype=float))
    e = band_edges(params)
    total = np.zeros(t.shape)
    for lo, hi in ((0.0, e.f1_hz), (e.f1_hz, e.fN_hz), (e.fN_hz, e.f2_hz)):
        if hi <= lo:
            continue
        f = np.linspace(lo, hi, panels + 1)
        spec = _piece_values(family, params, f, lo, hi)
        phase = np.multiply.outer(f, t)
        phase -= np.round(phase)
        total += simpson(spec[:, None] * np.cos(2.0 * np.pi * phase), (hi - lo) / panels)
    p = 2.0 / params.symbol_rate_hz * total
    return float(p[0]) if np.ndim(t_s) == 0 else p


def _piece_values(family, params, f, lo, hi):
    e = band_edges(params)
    if hi <= e.f1_hz:
        return np.ones_like(f)
    b = e.fN_hz
    # endpoints take the one-sided limit from inside the piece; _transition is
    # continuous on [-1, 1] so clipping is enough, and B gets its exact value
    u = np.clip((f - b) / (params.rolloff * b), -1.0, 1.0)
    v = _transition(family, u)
    v[-1 if hi <= b else 0] = np.sqrt(0.5) if family is PulseFamily.RootRaisedCosine else 0.5
    return v

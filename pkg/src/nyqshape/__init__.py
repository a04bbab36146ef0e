"""Nyquist pulse shaping toolkit: flipped pulse families, FIR design and response analysis."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateFilter,
    FamilyNotNyquist,
    GridTooCoarse,
    InvalidArg,
    InvalidParams,
    InvalidRange,
    InvalidSpec,
    NumericalAsymmetry,
    NyqshapeError,
    ParityViolation,
)
from .pulse_spectra import (  # noqa: E402
    NYQUIST_FAMILIES,
    BandEdges,
    PulseFamily,
    PulseParams,
    alias_sum,
    amplitude_spectrum,
    band_edges,
    ideal_pulse_value,
)
from .fir_design import (  # noqa: E402
    DesignSpec,
    FirFilter,
    Normalization,
    cascade,
    design,
    design_frequency_sampling,
    design_time_sampling,
    normalize,
    tap_count,
)
from .response_analysis import (  # noqa: E402
    IsiReport,
    ResponseGrid,
    SpectralMetrics,
    eye_trace,
    frequency_response,
    group_delay,
    isi_report,
    spectral_metrics,
)
from .sweep_experiments import (  # noqa: E402
    SweepRecord,
    SweepReport,
    family_comparison,
    sweep_alpha,
    sweep_delay,
    sweep_oversample,
)

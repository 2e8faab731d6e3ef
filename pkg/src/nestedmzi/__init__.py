"""Time-modulated multi-path interferometers and their exact line spectra."""

from .config import ParseError, parse, serialize
from .network import (
    Beamsplitter,
    InterferometerSpec,
    InvalidSpecError,
    Mirror,
    Modulator,
    StaticPhase,
    danan_preset,
    stage_matrix,
    validate,
)
from .oracle import bessel_j, cancellation_report, enumerate_paths, line_spectrum
from .peaks import classify, detect_peaks, peak_report
from .signals import amplitude_at, trace
from .spectrum import band, dft_spectrum, parseval_check

__all__ = [
    "Beamsplitter",
    "InterferometerSpec",
    "InvalidSpecError",
    "Mirror",
    "Modulator",
    "ParseError",
    "StaticPhase",
    "amplitude_at",
    "band",
    "bessel_j",
    "cancellation_report",
    "classify",
    "danan_preset",
    "detect_peaks",
    "dft_spectrum",
    "enumerate_paths",
    "line_spectrum",
    "parse",
    "parseval_check",
    "peak_report",
    "serialize",
    "stage_matrix",
    "trace",
    "validate",
]

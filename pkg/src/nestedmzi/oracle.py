"""Exact line spectrum from classical path terms.

Each path that reaches the detector contributes
``weight * exp(i*static_phase) * prod_k exp(i*a_k*sin(2*pi*f_k*t))``. Expanding
every factor with the Jacobi-Anger identity
``exp(i*a*sin(theta)) = sum_n J_n(a) exp(i*n*theta)`` turns the detected
amplitude into a comb of lines at integer combinations ``sum_k n_k f_k``,
with amplitude ``weight * exp(i*static_phase) * prod_k J_{n_k}(a_k)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterator

from .network import X, Beamsplitter, InterferometerSpec, Mirror, Modulator, StaticPhase

DEFAULT_CUTOFF = 8
PRUNE = 1e-30


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind by its ascending power series.

    Accurate to full double precision for the small arguments used here
    (``|x| <= 1``); the series converges for any ``x`` but loses digits to
    cancellation once ``|x|`` is large.
    """
    if n < 0:
        return -bessel_j(-n, x) if n % 2 else bessel_j(-n, x)
    half = 0.5 * x
    term = 1.0
    for k in range(1, n + 1):
        term *= half / k
    terms = [term]
    # Stop once a term no longer affects the sum in double precision.
    floor = abs(term) * 1e-18
    q = -half * half
    m = 0
    while term != 0.0:
        m += 1
        term *= q / (m * (m + n))
        if abs(term) <= floor:
            break
        terms.append(term)
    return math.fsum(terms)


@dataclass(frozen=True)
class PathTerm:
    weight: complex
    static_phase: float
    modulators: tuple[Modulator, ...]
    ports: tuple[int, ...] = field(default=(), compare=False)

    @property
    def coefficient(self) -> complex:
        return self.weight * cmath.exp(1j * self.static_phase)

    def frequency_amplitudes(self) -> list[tuple[int, float]]:
        """Modulators merged by frequency, in first-encounter order.

        Two mirrors sharing a frequency on one path add their sine phases, so
        they expand as a single modulator with the summed amplitude.
        """
        merged: dict[int, float] = {}
        for m in self.modulators:
            merged[m.frequency] = merged.get(m.frequency, 0.0) + m.amplitude
        return list(merged.items())

    def amplitude_at(self, t: float) -> complex:
        phase = self.static_phase + sum(m.phase(t) for m in self.modulators)
        return self.weight * cmath.exp(1j * phase)


def enumerate_paths(spec: InterferometerSpec) -> list[PathTerm]:
    """All classical paths from the injection port that end on the detector."""
    # (port, weight, static phase, modulators, visited ports); the list order
    # is depth-first with the lower output port explored first.
    partial = [(spec.injection_port, 1.0 + 0j, 0.0, (), (spec.injection_port,))]
    for stage in spec.stages:
        nxt = []
        for port, w, phi, mods, trail in partial:
            if isinstance(stage, Beamsplitter):
                lo, hi = stage.ports
                if port == lo:
                    nxt.append((lo, w * X, phi, mods, trail))
                    nxt.append((hi, w * X, phi, mods, trail + (hi,)))
                    continue
                if port == hi:
                    nxt.append((lo, w * X, phi, mods, trail + (lo,)))
                    nxt.append((hi, -(w * X), phi, mods, trail))
                    continue
            elif isinstance(stage, Mirror) and stage.port == port:
                mods = mods + (stage.modulator,)
            elif isinstance(stage, StaticPhase) and stage.port == port:
                phi = phi + stage.phase
            nxt.append((port, w, phi, mods, trail))
        partial = nxt
    return [
        PathTerm(w, phi, mods, trail)
        for port, w, phi, mods, trail in partial
        if port == spec.detection_port
    ]


def multi_indices(dim: int, cutoff: int) -> Iterator[tuple[int, ...]]:
    """Integer vectors of length ``dim`` with ``sum(|n_k|) <= cutoff``.

    Lexicographic order with each coordinate running from ``-r`` to ``r``.
    """
    if dim == 0:
        yield ()
        return
    for first in range(-cutoff, cutoff + 1):
        for rest in multi_indices(dim - 1, cutoff - abs(first)):
            yield (first,) + rest


@dataclass
class AnalyticSpectrum:
    lines: dict[int, complex]
    order_cutoff: int

    def amplitude(self, f: int) -> complex:
        return self.lines.get(f, 0j)

    def power(self, f: int) -> float:
        a = self.amplitude(f)
        return a.real * a.real + a.imag * a.imag


def path_lines(term: PathTerm, cutoff: int) -> dict[int, complex]:
    freqs_amps = term.frequency_amplitudes()
    tables = [
        {n: bessel_j(n, a) for n in range(-cutoff, cutoff + 1)} for _, a in freqs_amps
    ]
    freqs = [f for f, _ in freqs_amps]
    coeff = term.coefficient
    out: dict[int, complex] = {}
    for idx in multi_indices(len(freqs), cutoff):
        prod = 1.0
        for n, table in zip(idx, tables):
            prod *= table[n]
        if prod == 0.0:
            continue
        f = sum(n * fk for n, fk in zip(idx, freqs))
        out[f] = out.get(f, 0j) + coeff * prod
    return out


def line_spectrum(terms: list[PathTerm], order_cutoff: int = DEFAULT_CUTOFF) -> AnalyticSpectrum:
    """Coherent sum of the per-path line combs.

    Lines are accumulated per path first, then paths are added in their
    enumeration order, so two mirror-image paths cancel to an exact zero.
    """
    if order_cutoff < 0:
        raise ValueError("order_cutoff must be >= 0")
    total: dict[int, complex] = {}
    for term in terms:
        for f, a in path_lines(term, order_cutoff).items():
            total[f] = total.get(f, 0j) + a
    lines = {f: total[f] for f in sorted(total) if abs(total[f]) >= PRUNE}
    return AnalyticSpectrum(lines, order_cutoff)


class InapplicableError(ValueError):
    """The path terms do not have the balanced two-arm shape."""


def balanced_pair(terms: list[PathTerm]) -> tuple[PathTerm, PathTerm]:
    """Two equal-magnitude, opposite-sign terms that share some modulators."""
    for a_i, a in enumerate(terms):
        for b in terms[a_i + 1:]:
            if not math.isclose(abs(a.weight), abs(b.weight), rel_tol=1e-12):
                continue
            if not math.isclose((a.weight / b.weight).real, -1.0, rel_tol=1e-12):
                continue
            if {m.frequency for m in a.modulators} & {m.frequency for m in b.modulators}:
                return a, b
    raise InapplicableError("no balanced opposite-sign pair of path terms with shared modulators")


def cancellation_report(terms: list[PathTerm], order_cutoff: int) -> list[tuple[int, bool]]:
    """For each combination of the modulators shared by the balanced pair,
    whether the coherent line amplitude there is exactly zero.
    """
    a, b = balanced_pair(terms)
    shared_freqs = sorted(
        {m.frequency for m in a.modulators} & {m.frequency for m in b.modulators}
    )
    if order_cutoff < 1:
        return []
    spectrum = line_spectrum(terms, order_cutoff)
    seen: set[int] = set()
    report = []
    for idx in sorted(multi_indices(len(shared_freqs), order_cutoff),
                      key=lambda v: (sum(map(abs, v)), v)):
        if not any(idx):
            continue
        f = sum(n * fk for n, fk in zip(idx, shared_freqs))
        if f in seen:
            continue
        seen.add(f)
        report.append((f, spectrum.amplitude(f) == 0))
    return report

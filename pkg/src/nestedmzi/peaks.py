"""Peak picking and integer-combination labelling of spectral lines."""

from __future__ import annotations

from dataclasses import dataclass

from .network import InterferometerSpec
from .oracle import enumerate_paths, multi_indices
from .spectrum import PowerSpectrum


@dataclass(frozen=True)
class PeakLabel:
    frequency: int
    coefficients: tuple[tuple[str, int], ...]  # (mirror label, n), sorted by label
    total_order: int
    paths: tuple[int, ...]  # indices into enumerate_paths(spec)

    def __str__(self) -> str:
        return "".join(f"{n:+d}*{label}" for label, n in self.coefficients)

    def as_dict(self) -> dict[str, int]:
        return dict(self.coefficients)


@dataclass(frozen=True)
class Peak:
    frequency: int
    power: float
    labels: tuple[PeakLabel, ...]

    @property
    def classified(self) -> bool:
        return bool(self.labels)

    @property
    def minimal_labels(self) -> tuple[PeakLabel, ...]:
        if not self.labels:
            return ()
        lowest = self.labels[0].total_order
        return tuple(lab for lab in self.labels if lab.total_order == lowest)


def detect_peaks(spectrum: PowerSpectrum, threshold: float) -> list[tuple[int, float]]:
    """Positive-frequency bins with power at or above ``threshold``."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    return [
        (f, float(spectrum.bins[f]))
        for f in range(1, spectrum.n // 2 + 1)
        if spectrum.bins[f] >= threshold
    ]


def classify(f: int, spec: InterferometerSpec, max_order: int) -> list[PeakLabel]:
    """All ways to write ``f`` as ``sum n_k f_k`` over the mirrors met by a
    single detected path, with ``1 <= sum |n_k| <= max_order``.

    Labels shared by several paths (combinations of mirrors common to them)
    are reported once, listing every path. Sorted by order, then label text.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    found: dict[tuple[tuple[str, int], ...], list[int]] = {}
    for p, term in enumerate(enumerate_paths(spec)):
        mods = term.modulators
        for idx in multi_indices(len(mods), max_order):
            if not any(idx):
                continue
            if sum(n * m.frequency for n, m in zip(idx, mods)) != f:
                continue
            coeffs = tuple(sorted((m.label, n) for n, m in zip(idx, mods) if n))
            paths = found.setdefault(coeffs, [])
            if p not in paths:
                paths.append(p)
    labels = [
        PeakLabel(f, coeffs, sum(abs(n) for _, n in coeffs), tuple(paths))
        for coeffs, paths in found.items()
    ]
    labels.sort(key=lambda lab: (lab.total_order, str(lab)))
    return labels


def peak_report(
    spectrum: PowerSpectrum, spec: InterferometerSpec, threshold: float, max_order: int
) -> list[Peak]:
    return [
        Peak(f, power, tuple(classify(f, spec, max_order)))
        for f, power in detect_peaks(spectrum, threshold)
    ]

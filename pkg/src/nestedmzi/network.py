"""Interferometers as chronological pipelines of unitary stages.

A pipeline acts on a vector of path amplitudes (ports are 1-based). Three
stage kinds exist: a balanced beamsplitter mixing two ports, a vibrating
mirror imprinting ``amplitude * sin(2*pi*frequency*t)`` on one port, and a
static phase on one port.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import complex_core as cc

#: Balanced beamsplitter coefficient 1/sqrt(2).
X = 1.0 / math.sqrt(2.0)

DANAN_AMPLITUDE = math.pi / 100
DANAN_FREQUENCIES = {"A": 37, "B": 41, "C": 43, "E": 159, "F": 179}

# Times at which validate() checks unitarity of every stage.
_PROBE_TIMES = (0.0, 0.13, 0.77)


class InvalidSpecError(ValueError):
    """Raised when an interferometer violates its structural invariants."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class Modulator:
    label: str
    port: int
    frequency: int
    amplitude: float

    def phase(self, t):
        return self.amplitude * np.sin(2.0 * np.pi * self.frequency * t)


@dataclass(frozen=True)
class Beamsplitter:
    port_i: int
    port_j: int

    @property
    def ports(self) -> tuple[int, int]:
        # The "+" row always sits on the lower-indexed port.
        return (min(self.port_i, self.port_j), max(self.port_i, self.port_j))


@dataclass(frozen=True)
class Mirror:
    modulator: Modulator

    @property
    def port(self) -> int:
        return self.modulator.port


@dataclass(frozen=True)
class StaticPhase:
    port: int
    phase: float


Stage = Union[Beamsplitter, Mirror, StaticPhase]


@dataclass(frozen=True)
class InterferometerSpec:
    path_count: int
    injection_port: int
    detection_port: int
    stages: tuple[Stage, ...]

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))

    @property
    def modulators(self) -> list[Modulator]:
        return [s.modulator for s in self.stages if isinstance(s, Mirror)]

    def with_stages(self, stages) -> "InterferometerSpec":
        return InterferometerSpec(
            self.path_count, self.injection_port, self.detection_port, tuple(stages)
        )


def stage_matrix(stage: Stage, t: float, path_count: int) -> np.ndarray:
    """Matrix of one stage at time ``t`` acting on ``path_count`` paths."""
    m = np.eye(path_count, dtype=cc.DTYPE)
    if isinstance(stage, Beamsplitter):
        i, j = (p - 1 for p in stage.ports)
        m[i, i] = X
        m[i, j] = X
        m[j, i] = X
        m[j, j] = -X
    elif isinstance(stage, Mirror):
        p = stage.port - 1
        m[p, p] = np.exp(1j * stage.modulator.phase(t))
    elif isinstance(stage, StaticPhase):
        p = stage.port - 1
        m[p, p] = np.exp(1j * stage.phase)
    else:
        raise TypeError(f"unknown stage {stage!r}")
    return cc.matrix(m)


def total_matrix(spec: InterferometerSpec, t: float) -> np.ndarray:
    """Product of all stage matrices, last stage leftmost."""
    u = np.eye(spec.path_count, dtype=cc.DTYPE)
    for stage in spec.stages:
        u = stage_matrix(stage, t, spec.path_count) @ u
    return u


def danan_preset(detune_phase: float = 0.0) -> InterferometerSpec:
    """The nested three-path interferometer with mirrors A, B, C, E, F.

    Ports: 1 and 2 are the arms of the small inner loop, 3 the lower arm of
    the outer loop. A nonzero ``detune_phase`` adds a static phase on the B
    arm just before the beamsplitter that recombines the inner loop.
    """

    def mirror(label, port):
        return Mirror(Modulator(label, port, DANAN_FREQUENCIES[label], DANAN_AMPLITUDE))

    stages: list[Stage] = [
        Beamsplitter(1, 3),
        mirror("E", 1),
        mirror("C", 3),
        Beamsplitter(1, 2),
        mirror("A", 1),
        mirror("B", 2),
    ]
    if detune_phase != 0:
        stages.append(StaticPhase(2, float(detune_phase)))
    stages += [Beamsplitter(1, 2), mirror("F", 2), Beamsplitter(2, 3)]
    return InterferometerSpec(3, 1, 2, tuple(stages))


def _is_int(value) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def validate(spec: InterferometerSpec) -> list[str]:
    """Return the list of invariant violations; empty means valid."""
    out: list[str] = []
    n = spec.path_count
    if not _is_int(n) or n < 2:
        return [f"path count must be an integer >= 2, got {n!r}"]

    def in_range(port) -> bool:
        return _is_int(port) and 1 <= port <= n

    if not in_range(spec.injection_port):
        out.append(f"injection port {spec.injection_port} out of range")
    if not in_range(spec.detection_port):
        out.append(f"detection port {spec.detection_port} out of range")
    if not spec.stages:
        out.append("stage list must be non-empty")

    labels: set[str] = set()
    for k, stage in enumerate(spec.stages, start=1):
        where = f"stage {k}"
        if isinstance(stage, Beamsplitter):
            for p in (stage.port_i, stage.port_j):
                if not in_range(p):
                    out.append(f"{where}: port {p} out of range")
            if stage.port_i == stage.port_j:
                out.append(f"{where}: beamsplitter ports must differ")
        elif isinstance(stage, Mirror):
            mod = stage.modulator
            if not in_range(mod.port):
                out.append(f"{where}: port {mod.port} out of range")
            if not _is_int(mod.frequency) or mod.frequency < 1:
                out.append(f"{where}: frequency must be a positive integer")
            if not (math.isfinite(mod.amplitude) and mod.amplitude >= 0):
                out.append(f"{where}: amplitude must be finite and >= 0")
            if not mod.label or any(c.isspace() for c in mod.label):
                out.append(f"{where}: modulator label must be a non-empty word")
            if mod.label in labels:
                out.append(f"{where}: duplicate modulator label {mod.label!r}")
            labels.add(mod.label)
        elif isinstance(stage, StaticPhase):
            if not in_range(stage.port):
                out.append(f"{where}: port {stage.port} out of range")
            if not math.isfinite(stage.phase):
                out.append(f"{where}: phase must be finite")
        else:
            out.append(f"{where}: unknown stage type {type(stage).__name__}")

    if out:
        return out
    for t in _PROBE_TIMES:
        for k, stage in enumerate(spec.stages, start=1):
            if not cc.is_unitary(stage_matrix(stage, t, n), 1e-12):
                out.append(f"stage {k}: not unitary at t={t}")
    return out


def ensure_valid(spec: InterferometerSpec) -> InterferometerSpec:
    violations = validate(spec)
    if violations:
        raise InvalidSpecError(violations)
    return spec

"""Detected amplitude as a function of time over one unit period."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import complex_core as cc
from .network import X, Beamsplitter, InterferometerSpec, Mirror, StaticPhase, stage_matrix

NORM_TOL = 1e-12


@dataclass(frozen=True)
class TimeTrace:
    """Samples of the detected amplitude; sample ``k`` is taken at ``t = k/N``."""

    samples: np.ndarray

    @property
    def n(self) -> int:
        return int(self.samples.shape[0])


def state_at(spec: InterferometerSpec, t: float) -> np.ndarray:
    t = math.fmod(t, 1.0)
    if t < 0:
        t += 1.0
    v = cc.basis(spec.path_count, spec.injection_port)
    for stage in spec.stages:
        v = cc.mat_vec(stage_matrix(stage, t, spec.path_count), v)
    return v


def amplitude_at(spec: InterferometerSpec, t: float) -> complex:
    """Detection-port amplitude at time ``t`` (taken modulo 1)."""
    return complex(state_at(spec, t)[spec.detection_port - 1])


def states(spec: InterferometerSpec, n: int) -> np.ndarray:
    """Full state vectors at ``t = k/n``, shape ``(path_count, n)``.

    Stages act column-wise instead of through dense matrices, and mirror
    phases use ``(f*k) mod n`` in integer arithmetic so that every sample
    sits exactly on its point of the period.
    """
    if n < 1:
        raise ValueError("sample count must be >= 1")
    k = np.arange(n, dtype=np.int64)
    psi = np.zeros((spec.path_count, n), dtype=cc.DTYPE)
    psi[spec.injection_port - 1] = 1.0
    for stage in spec.stages:
        if isinstance(stage, Beamsplitter):
            i, j = (p - 1 for p in stage.ports)
            a, b = psi[i].copy(), psi[j].copy()
            psi[i] = X * a + X * b
            psi[j] = X * a - X * b
        elif isinstance(stage, Mirror):
            m = stage.modulator
            cycles = ((m.frequency * k) % n) / n
            psi[m.port - 1] *= np.exp(1j * (m.amplitude * np.sin(2.0 * np.pi * cycles)))
        elif isinstance(stage, StaticPhase):
            psi[stage.port - 1] *= np.exp(1j * stage.phase)
        else:
            raise TypeError(f"unknown stage {stage!r}")
    return psi


def trace(spec: InterferometerSpec, n: int) -> TimeTrace:
    psi = states(spec, n)
    norms = np.sqrt(np.sum(np.abs(psi) ** 2, axis=0))
    worst = float(np.max(np.abs(norms - 1.0)))
    if worst > NORM_TOL:
        raise RuntimeError(f"state norm drifted by {worst:.3e}")
    samples = psi[spec.detection_port - 1].copy()
    samples.setflags(write=False)
    return TimeTrace(samples)

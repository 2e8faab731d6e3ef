import math
import sys
import random
from dataclasses import replace

import mpmath
import numpy as np
import pytest

from nestedmzi.network import (
    Beamsplitter,
    InterferometerSpec,
    Mirror,
    Modulator,
    StaticPhase,
    danan_preset,
)
from nestedmzi.oracle import enumerate_paths

A0 = math.pi / 100
DETUNE = math.pi / 20

mpmath.mp.dps = 40


def mp_j(n, x=A0):
    """High-precision Bessel value, independent of the package series."""
    return mpmath.besselj(n, mpmath.mpf(x))


def closed_form_tuned(t, a0=A0):
    """Three-term detector amplitude of the nested interferometer, written out by hand."""
    s = lambda f: np.sin(2 * np.pi * f * t)
    return 0.25 * (
        2 * np.exp(1j * a0 * s(43))
        + np.exp(1j * a0 * (s(37) + s(159) + s(179)))
        - np.exp(1j * a0 * (s(41) + s(159) + s(179)))
    )


def closed_form_detuned(t, a0=A0, detune=DETUNE):
    s = lambda f: np.sin(2 * np.pi * f * t)
    return 0.25 * (
        2 * np.exp(1j * a0 * s(43))
        + np.exp(1j * a0 * (s(37) + s(159) + s(179)))
        - np.exp(1j * (a0 * (s(41) + s(159) + s(179)) + detune))
    )


def scale_amplitudes(spec, factor):
    stages = [
        Mirror(replace(s.modulator, amplitude=s.modulator.amplitude * factor))
        if isinstance(s, Mirror) else s
        for s in spec.stages
    ]
    return spec.with_stages(stages)


def random_spec(rng: random.Random, max_freq=200, max_amp=math.pi / 50) -> InterferometerSpec:
    """Random valid pipeline with at least two detected paths and two mirrors."""
    while True:
        paths = rng.randint(2, 4)
        stages = []
        for _ in range(rng.randint(4, 10)):
            r = rng.random()
            if r < 0.45:
                i, j = rng.sample(range(1, paths + 1), 2)
                stages.append(Beamsplitter(i, j))
            elif r < 0.9:
                label = f"M{len(stages)}"
                stages.append(Mirror(Modulator(
                    label, rng.randint(1, paths), rng.randint(1, max_freq),
                    rng.uniform(0, max_amp),
                )))
            else:
                stages.append(StaticPhase(rng.randint(1, paths), rng.uniform(-math.pi, math.pi)))
        spec = InterferometerSpec(paths, rng.randint(1, paths), rng.randint(1, paths), tuple(stages))
        if len(enumerate_paths(spec)) >= 2 and len(spec.modulators) >= 2:
            return spec


def random_specs(count=20, seed=20131211):
    rng = random.Random(seed)
    return [random_spec(rng) for _ in range(count)]


@pytest.fixture(scope="session")
def tuned():
    return danan_preset(0.0)


@pytest.fixture(scope="session")
def detuned():
    return danan_preset(DETUNE)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=int):
        terminalreporter.write_line(mod.RESULTS[key][1])

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nestedmzi import complex_core as cc
from nestedmzi.network import X, Beamsplitter, danan_preset, stage_matrix


def test_identity_acts_trivially():
    v = cc.vector([1, 0, 0])
    assert np.array_equal(cc.mat_vec(cc.identity(3), v), v)


def test_outer_beamsplitter_splits_injection_evenly():
    m = stage_matrix(Beamsplitter(1, 3), 0.0, 3)
    out = cc.mat_vec(m, cc.vector([1, 0, 0]))
    np.testing.assert_allclose(out, [1 / math.sqrt(2), 0, 1 / math.sqrt(2)], atol=1e-15)


def test_phase_on_first_entry():
    m = cc.matrix(np.diag([np.exp(1j * np.pi / 2), 1, 1]))
    np.testing.assert_allclose(cc.mat_vec(m, cc.vector([1, 0, 0])), [1j, 0, 0], atol=1e-15)


def test_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        cc.mat_vec(cc.identity(3), cc.vector([1, 0]))


def test_matrix_shape_checks():
    with pytest.raises(ValueError):
        cc.matrix([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ValueError):
        cc.matrix([[1]])
    with pytest.raises(ValueError):
        cc.vector([1, float("nan")])


def test_is_unitary_examples():
    assert cc.is_unitary(cc.identity(3), 1e-12)
    bs = cc.matrix([[X, X, 0], [X, -X, 0], [0, 0, 1]])
    assert cc.is_unitary(bs, 1e-12)
    assert not cc.is_unitary(cc.matrix(np.diag([2, 1, 1])), 1e-12)
    with pytest.raises(ValueError):
        cc.is_unitary(bs, 0)


@pytest.mark.parametrize("t", [0.0, 0.13, 0.5, 0.77, 0.999])
@pytest.mark.parametrize("detune", [0.0, math.pi / 20])
def test_every_preset_stage_is_unitary(t, detune):
    spec = danan_preset(detune)
    for stage in spec.stages:
        assert cc.is_unitary(stage_matrix(stage, t, 3), 1e-12)


unit_complex = st.tuples(
    st.floats(-1, 1, allow_nan=False), st.floats(-1, 1, allow_nan=False)
).map(lambda p: complex(*p))


@given(st.lists(unit_complex, min_size=3, max_size=3), st.floats(0, 1, exclude_max=True))
def test_unitary_preserves_norm(entries, t):
    v = cc.vector(entries)
    for stage in danan_preset(0.1).stages:
        w = cc.mat_vec(stage_matrix(stage, t, 3), v)
        assert abs(np.linalg.norm(w) - np.linalg.norm(v)) <= 1e-12

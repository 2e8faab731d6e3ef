"""Small dense complex linear algebra for path-amplitude vectors.

Vectors and matrices are plain ``numpy`` complex128 arrays; the helpers here
only add the shape checks and the unitarity test the rest of the package
relies on.
"""

from __future__ import annotations

import numpy as np

DTYPE = np.complex128


def vector(entries) -> np.ndarray:
    v = np.array(entries, dtype=DTYPE)
    if v.ndim != 1 or v.size < 1:
        raise ValueError("vector must be one-dimensional and non-empty")
    _require_finite(v)
    v.setflags(write=False)
    return v


def matrix(entries) -> np.ndarray:
    m = np.array(entries, dtype=DTYPE)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if m.shape[0] < 2:
        raise ValueError("matrix dimension must be at least 2")
    _require_finite(m)
    m.setflags(write=False)
    return m


def identity(n: int) -> np.ndarray:
    return matrix(np.eye(n))


def basis(n: int, port: int) -> np.ndarray:
    """Unit vector with a one on the 1-based ``port``."""
    v = np.zeros(n, dtype=DTYPE)
    v[port - 1] = 1.0
    return vector(v)


def mat_vec(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    if m.ndim != 2 or v.ndim != 1 or m.shape[1] != v.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix {m.shape} cannot act on vector {v.shape}"
        )
    out = m @ v
    _require_finite(out)
    return out


def is_unitary(m: np.ndarray, tol: float = 1e-12) -> bool:
    """True iff the max-norm of ``m^H m - I`` is at most ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    defect = m.conj().T @ m - np.eye(m.shape[0])
    return bool(np.max(np.abs(defect)) <= tol)


def _require_finite(a: np.ndarray) -> None:
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite complex entry")

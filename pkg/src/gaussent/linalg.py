"""Small dense linear-algebra helpers shared by the other modules."""
from __future__ import annotations

import numpy as np

from .errors import UnsupportedNorm


def singular_values(a) -> np.ndarray:
    """Singular values of a rectangular matrix, sorted descending.

    Always returns exactly min(m, n) values; rank deficiency shows up as
    trailing zeros rather than a shorter list.
    """
    a = np.atleast_2d(np.asarray(a))
    return np.linalg.svd(a, compute_uv=False)


def matrix_norm(a, m) -> float:
    """Schatten-type norm built from singular values.

    m = 1   sum of singular values (trace norm)
    m = 2   sqrt of sum of squares (Frobenius)
    m = inf largest singular value (spectral)
    """
    sv = singular_values(a)
    if m == 1:
        return float(sv.sum())
    if m == 2:
        return float(np.sqrt((sv ** 2).sum()))
    if m in (np.inf, float("inf"), "inf"):
        return float(sv[0]) if sv.size else 0.0
    raise UnsupportedNorm(f"matrix_norm supports m in {{1, 2, inf}}, got {m!r}")


def hermitian_residual(a) -> float:
    """Largest entry of |A - A^dagger|."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def symmetric_residual(a) -> float:
    """Largest entry of |A - A^T|."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.T))) if a.size else 0.0

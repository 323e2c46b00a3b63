"""Shared fixtures.

Ground states are expensive at the sizes some tests need, so they are
cached per parameter tuple for the whole session.
"""
import numpy as np
import pytest

import gaussent as g

_GROUND_CACHE = {}


def ground_state(nx, ny, delta_plus, delta_minus, lam_ratio, boundary="open"):
    """Ground-state contractions of a lattice Hamiltonian with uniform
    couplings, at lam = lam_ratio * critical lambda. Cached."""
    key = (nx, ny, delta_plus, delta_minus, lam_ratio, boundary)
    if key not in _GROUND_CACHE:
        lat = g.Lattice2D(nx, ny, boundary=boundary)
        dp, dm = g.lattice_deltas(lat, delta_plus, delta_minus)
        lam = lam_ratio * g.critical_lambda(dp, dm).value
        h = g.QuadraticHamiltonian(np.full(lat.n, lam), dp, dm)
        d = g.solve_ground_state(h).ground_contractions()
        _GROUND_CACHE[key] = (lat, lam, d)
    return _GROUND_CACHE[key]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def lattice_8x8():
    return ground_state(8, 8, 0.3, 0.2, 2.0)


@pytest.fixture(scope="session")
def lattice_8x8_weak():
    return ground_state(8, 8, 0.3, 0.2, 8.0)


def covariance_blocks(d):
    """Position/momentum covariance blocks of a real Gaussian state.

    With x = (a + a')/sqrt(2), p = (a - a')/(i sqrt(2)) and real F blocks:
    <xx> = 1/2 + F+ + F-, <pp> = 1/2 + F+ - F-, <xp + px>/2 = 0.
    The symplectic spectrum is then sqrt(eig(Cxx Cpp)), an independent
    route to the same quantities through symmetric solves only.
    """
    fp = np.asarray(d.f_plus)
    fm = np.asarray(d.f_minus)
    assert np.max(np.abs(fp.imag)) == 0 if np.iscomplexobj(fp) else True
    fp, fm = fp.real, fm.real
    n = fp.shape[0]
    cxx = 0.5 * np.eye(n) + fp + fm
    cpp = 0.5 * np.eye(n) + fp - fm
    return cxx, cpp


def williamson_oracle(d, transpose_sites=()):
    """Symplectic eigenvalues (as f = nu - 1/2) via the covariance route,
    valid for real states; transpose_sites flips those momenta first."""
    cxx, cpp = covariance_blocks(d)
    if len(transpose_sites):
        s = np.ones(cxx.shape[0])
        s[list(transpose_sites)] = -1.0
        cpp = s[:, None] * cpp * s[None, :]
    # eig(Cxx Cpp) through a symmetric product keeps the oracle accurate
    w, u = np.linalg.eigh(cpp)
    assert w.min() > 0
    root = (u * np.sqrt(w)) @ u.T
    nu2 = np.linalg.eigvalsh(root @ cxx @ root)
    return np.sort(np.sqrt(np.maximum(nu2, 0.0))) - 0.5

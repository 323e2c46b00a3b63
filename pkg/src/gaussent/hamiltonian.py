"""Quadratic bosonic Hamiltonians and their gaussian ground and thermal states.

The model is

    H = sum_ij (lambda_i delta_ij - Delta+_ij) (b_i^dagger b_j + delta_ij / 2)
        - 1/2 sum_ij (Delta-_ij b_i^dagger b_j^dagger + h.c.)

with Delta+ hermitian and Delta- symmetric. Stability is positivity of the
quadratic form

    H_form = [[Lambda - Delta+,   -Delta-        ],
              [-conj(Delta-),     Lambda - conj(Delta+)]].

Diagonalizing M H_form (M the bosonic metric) yields frequency pairs
(omega, -omega); the positive-branch eigenvectors (U_a; conj(V)_a),
normalized to U^dag U - V^T conj(V) = 1 and U^dag V - V^T conj(U) = 0,
define the Bogoliubov modes. The ground state has F- = V U^T, F+ = V V^dag.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.linalg import eig, eigh, eigvalsh

from .errors import (
    CouplingTooStrong,
    NoCriticalPoint,
    NumericalFailure,
    SymmetryViolation,
    UnequalLocalEnergies,
    Unstable,
)
from .linalg import hermitian_residual, matrix_norm, symmetric_residual
from .symplectic import ContractionMatrix

SYMMETRY_TOL = 1e-12
NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """Local energies lam (> 0) plus hopping Delta+ and pairing Delta- couplings."""

    lam: np.ndarray
    delta_plus: np.ndarray
    delta_minus: np.ndarray

    def __post_init__(self):
        lam = np.atleast_1d(np.asarray(self.lam, dtype=float))
        dp = np.asarray(self.delta_plus)
        dm = np.asarray(self.delta_minus)
        n = lam.size
        if dp.shape != (n, n) or dm.shape != (n, n):
            raise ValueError(f"coupling blocks must be {n}x{n}")
        if np.any(lam <= 0):
            raise ValueError("local energies must be positive")
        if hermitian_residual(dp) > SYMMETRY_TOL:
            raise SymmetryViolation(
                f"Delta+ must be hermitian (residual {hermitian_residual(dp):.3e})")
        if symmetric_residual(dm) > SYMMETRY_TOL:
            raise SymmetryViolation(
                f"Delta- must be symmetric (residual {symmetric_residual(dm):.3e})")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "delta_plus", dp)
        object.__setattr__(self, "delta_minus", dm)

    @property
    def n(self) -> int:
        return self.lam.size

    @property
    def form_matrix(self) -> np.ndarray:
        """The 2n x 2n quadratic form whose positivity is stability."""
        a = np.diag(self.lam) - self.delta_plus
        return np.block([[a, -self.delta_minus],
                         [-self.delta_minus.conj(), a.conj()]])

    def stability_margin(self) -> float:
        """Smallest eigenvalue of the quadratic form; positive iff stable."""
        return float(eigvalsh(self.form_matrix)[0])


@dataclass(frozen=True)
class BogoliubovTransform:
    """Positive-branch Bogoliubov modes: frequencies omega (ascending) and blocks U, V."""

    u: np.ndarray
    v: np.ndarray
    omega: np.ndarray

    @property
    def n(self) -> int:
        return self.omega.size

    def normalization_residuals(self) -> tuple[float, float]:
        """Max-entry residuals of U^dag U - V^T conj(V) = 1 and U^dag V - V^T conj(U) = 0."""
        u, v = self.u, self.v
        r1 = np.max(np.abs(u.conj().T @ u - v.T @ v.conj() - np.eye(self.n)))
        r2 = np.max(np.abs(u.conj().T @ v - v.T @ u.conj()))
        return float(r1), float(r2)

    def ground_contractions(self) -> ContractionMatrix:
        """Gaussian vacuum of the Bogoliubov modes: F- = V U^T, F+ = V V^dag."""
        return _as_contractions(self.v @ self.u.T, self.v @ self.v.conj().T)

    def thermal_contractions(self, beta: float) -> ContractionMatrix:
        return thermal_contractions(self, beta)


def _as_contractions(fm, fp) -> ContractionMatrix:
    # strip roundoff so the constructor's symmetry gate is meaningful
    fp = 0.5 * (fp + fp.conj().T)
    fm = 0.5 * (fm + fm.T)
    if np.iscomplexobj(fp) and np.max(np.abs(fp.imag)) == 0.0 \
            and np.max(np.abs(fm.imag)) == 0.0:
        fp, fm = fp.real, fm.real
    return ContractionMatrix(fp, fm)


def solve_ground_state(
    h: QuadraticHamiltonian,
    *,
    imag_tol: float = 1e-8,
    omega_floor: float = 1e-10,
) -> BogoliubovTransform:
    """Diagonalize M H_form and return the normalized positive branch.

    Raises Unstable when eigenvalues come out complex or the smallest
    frequency hits omega_floor, and NumericalFailure when the
    normalization identities cannot be met to 1e-10.
    """
    n = h.n
    metric = np.concatenate([np.ones(n), -np.ones(n)])
    mh = metric[:, None] * h.form_matrix
    w, vecs = eig(mh)
    scale = max(1.0, float(np.max(np.abs(w))))
    if np.max(np.abs(w.imag)) > imag_tol * scale:
        raise Unstable(
            f"complex mode frequencies (|Im| up to {np.max(np.abs(w.imag)):.3e}); "
            "the Hamiltonian form is not positive definite")
    if np.iscomplexobj(w) and not np.iscomplexobj(mh):
        # A real solve that resolves a degenerate cluster as a conjugate
        # pair (rounding-level imaginary parts, gated above) hands back one
        # complex column v and its conjugate; Re v and Im v span the same
        # invariant plane, so substituting them keeps the basis real.
        vecs = vecs.copy()
        open_idx = [j for j in range(2 * n) if w[j].imag != 0.0]
        while open_idx:
            j = open_idx.pop(0)
            k = min(open_idx, key=lambda m: abs(w[m] - w[j].conjugate()))
            open_idx.remove(k)
            re, im = vecs[:, j].real.copy(), vecs[:, j].imag.copy()
            vecs[:, j], vecs[:, k] = re, im
        vecs = vecs.real if np.max(np.abs(vecs.imag)) == 0.0 else vecs
    w = w.real
    pos = np.flatnonzero(w > 0)
    if pos.size != n:
        raise Unstable(f"expected {n} positive frequencies, found {pos.size}")
    order = pos[np.argsort(w[pos])]
    omega = w[order]
    if omega[0] <= omega_floor * scale:
        raise Unstable(f"lowest mode frequency {omega[0]:.3e} at or below the floor")
    cols = vecs[:, order]

    # Orthonormalize the whole branch in the metric at once. The Gram
    # matrix W' M W is hermitian positive definite here, and the symmetric
    # correction W G^{-1/2} both fixes the exactly degenerate blocks and
    # removes the small cross-talk eig leaves between near-degenerate
    # clusters; well-separated modes are barely touched since their Gram
    # off-diagonals are already at rounding level.
    gram = cols.conj().T @ (metric[:, None] * cols)
    gram = 0.5 * (gram + gram.conj().T)
    ev, rot = eigh(gram)
    if ev[0] <= 0:
        raise NumericalFailure(
            "positive branch has non-positive metric norm; state not normalizable")
    cols = cols @ (rot * (ev ** -0.5)) @ rot.conj().T

    u = cols[:n, :]
    v = cols[n:, :].conj()
    if np.iscomplexobj(u) and np.max(np.abs(u.imag)) == 0.0 and np.max(np.abs(v.imag)) == 0.0:
        u, v = u.real, v.real
    t = BogoliubovTransform(u=u, v=v, omega=omega)
    r1, r2 = t.normalization_residuals()
    if max(r1, r2) > NORMALIZATION_TOL:
        raise NumericalFailure(f"Bogoliubov normalization residuals ({r1:.3e}, {r2:.3e})")
    return t


def thermal_contractions(t: BogoliubovTransform, beta: float) -> ContractionMatrix:
    """Gibbs state of the diagonalized Hamiltonian at inverse temperature beta.

    Mode occupations n_a = 1 / (exp(beta omega_a) - 1) enter as

        F- = V U^T + V N U^T + U N V^T
        F+ = V V^dag + V N V^dag + U N U^dag

    beta = inf reproduces the ground state.
    """
    if not beta > 0:
        raise ValueError("beta must be positive (use numpy.inf for the ground state)")
    if np.isinf(beta):
        occ = np.zeros(t.n)
    else:
        occ = 1.0 / np.expm1(beta * t.omega)
    u, v = t.u, t.v
    fm = v @ u.T + (v * occ) @ u.T + (u * occ) @ v.T
    fp = v @ v.conj().T + (v * occ) @ v.conj().T + (u * occ) @ u.conj().T
    return _as_contractions(fm, fp)


def _require_uniform_lam(h: QuadraticHamiltonian) -> float:
    lam = float(np.mean(h.lam))
    if np.max(np.abs(h.lam - lam)) > 1e-12 * max(1.0, abs(lam)):
        raise UnequalLocalEnergies("perturbative contractions require equal local energies")
    return lam


def perturbative_contractions(h: QuadraticHamiltonian, order: int = 2) -> ContractionMatrix:
    """Weak-coupling expansion of the ground-state contractions.

    order 1:  F- = Delta- / (2 lambda)
    order 2:  adds (Delta+ Delta- + Delta- conj(Delta+)) / (4 lambda^2)
    and in both cases F+ = F- conj(F-), the leading pure-state closure.

    Requires equal local energies and coupling norms below lambda/2
    (warns above lambda/5).
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    lam = _require_uniform_lam(h)
    ratio = max(matrix_norm(h.delta_plus, np.inf), matrix_norm(h.delta_minus, np.inf)) / lam
    if ratio >= 0.5:
        raise CouplingTooStrong(f"coupling/gap ratio {ratio:.3f} >= 0.5")
    if ratio > 0.2:
        warnings.warn(f"coupling/gap ratio {ratio:.3f} > 0.2; expansion error grows as its square",
                      stacklevel=2)
    fm = h.delta_minus / (2.0 * lam)
    if order == 2:
        fm = fm + (h.delta_plus @ h.delta_minus
                   + h.delta_minus @ h.delta_plus.conj()) / (4.0 * lam ** 2)
    fp = fm @ fm.conj()
    return _as_contractions(fm, fp)


def perturbative_bogoliubov_v(h: QuadraticHamiltonian) -> np.ndarray:
    """First-order pairing block V of the Bogoliubov transformation.

    With U the unitary eigenbasis of Lambda - Delta+ (frequencies omega_a),

        V_ib = sum_a U_ia (U^dag Delta- conj(U))_ab / (omega_a + omega_b).

    The hopping part is treated exactly; only Delta- is perturbative.
    """
    a = np.diag(h.lam) - h.delta_plus
    omega, u = eigh(a)
    if omega[0] <= 0:
        raise Unstable("Lambda - Delta+ must be positive definite")
    k = (u.conj().T @ h.delta_minus @ u.conj()) / (omega[:, None] + omega[None, :])
    return u @ k


@dataclass(frozen=True)
class CriticalPoint:
    """Coupling-fixed critical local energy and the cyclic first-neighbor estimate."""

    value: float
    estimate: float


def critical_lambda(
    delta_plus: np.ndarray,
    delta_minus: np.ndarray,
    *,
    bracket: tuple[float, float] | None = None,
    tol: float = 1e-12,
) -> CriticalPoint:
    """Smallest uniform local energy with a stable ground state.

    Bisects the stability margin of H_form(lambda) to the point where the
    lowest mode frequency vanishes. The margin is the smallest eigenvalue
    of the quadratic form and, since lambda enters as lambda * identity,
    it equals lambda plus the smallest eigenvalue of the lambda-free part,
    so one hermitian eigensolve prices every bisection step.

    The estimate field carries max_i sum_j (Re Delta+_ij + |Delta-_ij|),
    which for cyclic first-neighbor coupling is the exact closed form
    2 (Delta+ + |Delta-|).
    """
    dp = np.asarray(delta_plus)
    dm = np.asarray(delta_minus)
    if hermitian_residual(dp) > SYMMETRY_TOL:
        raise SymmetryViolation("Delta+ must be hermitian")
    if symmetric_residual(dm) > SYMMETRY_TOL:
        raise SymmetryViolation("Delta- must be symmetric")
    base = np.block([[-dp, -dm], [-dm.conj(), -dp.conj()]])
    mu0 = float(eigvalsh(base)[0])

    def margin(lam: float) -> float:
        return lam + mu0

    estimate = float(np.max(np.sum(dp.real + np.abs(dm), axis=1)))
    scale = max(estimate, float(np.max(np.abs(dp))) + float(np.max(np.abs(dm))), 1e-30)
    lo, hi = bracket if bracket is not None else (0.0, 1.125 * scale)
    grow = 0
    while margin(hi) <= 0.0:
        hi *= 2.0
        grow += 1
        if grow > 60:
            raise NoCriticalPoint("stability margin stays negative on any bracket")
    if margin(lo) >= 0.0:
        raise NoCriticalPoint(
            f"lowest mode frequency never vanishes on ({lo:g}, {hi:g}]")
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return CriticalPoint(value=0.5 * (lo + hi), estimate=estimate)


def fully_connected_deltas(n: int, delta_plus: float, delta_minus: float):
    """Coupling matrices of the fully connected model: every off-diagonal pair
    carries Delta/(n-1), so row sums stay at Delta independent of n."""
    if n < 2:
        raise ValueError("need at least two modes")
    off = 1.0 - np.eye(n)
    return off * (delta_plus / (n - 1)), off * (delta_minus / (n - 1))

"""Exact entanglement kernel for bosonic gaussian states.

A gaussian state of n modes is held as the pair of contraction matrices

    F+_ij = <b_j^dagger b_i>        (hermitian)
    F-_ij = <b_i b_j>               (symmetric)

packed into the 2n x 2n matrix

    D = [[F+,        F-       ],
         [conj(F-),  1 + conj(F+)]].

Multiplying by the bosonic metric M = diag(1_n, -1_n) gives a matrix whose
2n eigenvalues come in pairs {f, -(1+f)}; the n values with f >= -1/2 are
the symplectic eigenvalues. For a physical reduced state f >= 0 and the
mode entropy is h(f) = -f log f + (1+f) log(1+f). For a partially
transposed state f may reach down to -1/2 and each negative value
contributes -log(1+2f) to the logarithmic negativity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy.linalg import eigvals

from .config import resolve_base
from .errors import NonPhysical, NumericalFailure, OverlappingRegions, SymmetryViolation, WrongKind
from .linalg import hermitian_residual, symmetric_residual

SYMMETRY_TOL = 1e-12


class SpectrumKind(enum.Enum):
    REDUCED = "reduced"
    PARTIAL_TRANSPOSE = "partial_transpose"


@dataclass(frozen=True)
class ContractionMatrix:
    """Gaussian state in the F+/F- representation.

    transposed marks matrices produced by partial_transpose; their spectra
    are allowed to dip below zero (down to -1/2) where a reduced state
    must stay non-negative.
    """

    f_plus: np.ndarray
    f_minus: np.ndarray
    transposed: bool = False

    def __post_init__(self):
        fp = np.asarray(self.f_plus)
        fm = np.asarray(self.f_minus)
        if fp.ndim != 2 or fp.shape[0] != fp.shape[1] or fp.shape != fm.shape:
            raise ValueError(f"need square blocks of equal shape, got {fp.shape} and {fm.shape}")
        if hermitian_residual(fp) > SYMMETRY_TOL:
            raise SymmetryViolation(
                f"F+ must be hermitian (residual {hermitian_residual(fp):.3e})")
        if symmetric_residual(fm) > SYMMETRY_TOL:
            raise SymmetryViolation(
                f"F- must be symmetric (residual {symmetric_residual(fm):.3e})")
        object.__setattr__(self, "f_plus", fp)
        object.__setattr__(self, "f_minus", fm)

    @property
    def n(self) -> int:
        return self.f_plus.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """The full 2n x 2n contraction matrix D."""
        n = self.n
        eye = np.eye(n)
        return np.block([
            [self.f_plus, self.f_minus],
            [self.f_minus.conj(), eye + self.f_plus.conj()],
        ])

    @classmethod
    def vacuum(cls, n: int) -> "ContractionMatrix":
        return cls(np.zeros((n, n)), np.zeros((n, n)))

    def purity_residual(self) -> float:
        """Spectral norm of F- conj(F-) - F+ - F+^2; zero for a pure state."""
        fp, fm = self.f_plus, self.f_minus
        r = fm @ fm.conj() - fp - fp @ fp
        return float(np.linalg.norm(r, 2)) if r.size else 0.0


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Sorted symplectic eigenvalues of one state, with their kind."""

    values: np.ndarray
    kind: SpectrumKind

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    @property
    def negative(self) -> np.ndarray:
        return self.values[self.values < 0.0]


@dataclass(frozen=True)
class EntropyValue:
    """Entanglement entropy; non-negative, in units of the stated log base."""

    value: float
    base: float = 2.0

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class NegativityValue:
    """Logarithmic negativity; non-negative, in units of the stated log base.

    diverging is set when a partial-transpose eigenvalue sat on the -1/2
    floor and was nudged off it; vanishes_at_this_order is set by
    asymptotic estimators whose leading order predicts no negativity.
    """

    value: float
    base: float = 2.0
    diverging: bool = False
    vanishes_at_this_order: bool = False

    def __float__(self) -> float:
        return self.value


def restricted(d: ContractionMatrix, modes) -> ContractionMatrix:
    """Reduced state on the given mode indices (gaussian states close under reduction)."""
    idx = np.asarray(list(modes), dtype=int)
    if idx.size != np.unique(idx).size:
        raise OverlappingRegions("mode list contains duplicates")
    ix = np.ix_(idx, idx)
    return ContractionMatrix(d.f_plus[ix], d.f_minus[ix], transposed=d.transposed)


def partial_transpose(d: ContractionMatrix, b, c) -> ContractionMatrix:
    """Contraction matrix of the state transposed on block b, reduced to b + c.

    Transposition on b swaps creation and annihilation operators there,
    which conjugates the b-diagonal blocks and exchanges the roles of the
    F+ and F- cross blocks:

        tilde F+ = [[conj F+_B,  conj F-_BC],     tilde F- = [[conj F-_B,  conj F+_BC],
                    [F-_CB,      F+_C      ]]                 [F+_CB,      F-_C      ]]

    Applying the operation twice (with c as the second block both times)
    returns the reduction of the original state to b + c.
    """
    b = np.asarray(list(b), dtype=int)
    c = np.asarray(list(c), dtype=int)
    if np.intersect1d(b, c).size:
        raise OverlappingRegions("blocks b and c share modes")
    fp, fm = d.f_plus, d.f_minus
    B, C = np.ix_(b, b), np.ix_(c, c)
    BC, CB = np.ix_(b, c), np.ix_(c, b)
    tfp = np.block([[fp[B].conj(), fm[BC].conj()], [fm[CB], fp[C]]])
    tfm = np.block([[fm[B].conj(), fp[BC].conj()], [fp[CB], fm[C]]])
    return ContractionMatrix(tfp, tfm, transposed=not d.transposed)


def symplectic_eigenvalues(
    d: ContractionMatrix,
    *,
    tol: float = 1e-9,
    pairing_tol: float = 1e-8,
    imag_tol: float = 1e-8,
) -> SymplecticSpectrum:
    """Symplectic spectrum of D via the eigenvalues of D M.

    The 2n eigenvalues are split by count: the n largest (by real part)
    are the symplectic eigenvalues, the rest their partners -(1+f). The
    pairing is verified to pairing_tol and imaginary parts must stay
    below imag_tol; both failing cases raise NumericalFailure. Values in
    (-tol, 0) are clamped to 0. A reduced-state spectrum below -tol
    raises NonPhysical; partial-transpose spectra may be negative but
    never below -1/2 - tol.
    """
    n = d.n
    kind = SpectrumKind.PARTIAL_TRANSPOSE if d.transposed else SpectrumKind.REDUCED
    if n == 0:
        return SymplecticSpectrum(np.zeros(0), kind)
    metric = np.concatenate([np.ones(n), -np.ones(n)])
    w = eigvals(d.matrix * metric[None, :])
    scale = max(1.0, float(np.max(np.abs(w))))
    max_imag = float(np.max(np.abs(w.imag)))
    if max_imag > imag_tol * scale:
        raise NumericalFailure(f"complex symplectic eigenvalues (|Im| up to {max_imag:.3e})")
    w = np.sort(w.real)
    f = w[n:]
    partners = w[:n]
    # partners ascending must mirror f descending as -(1+f)
    residual = float(np.max(np.abs(partners + 1.0 + f[::-1])))
    if residual > pairing_tol * scale:
        raise NumericalFailure(f"eigenvalues do not pair as (f, -(1+f)) (residual {residual:.3e})")
    f = np.where((f > -tol) & (f < 0.0), 0.0, f)
    if kind is SpectrumKind.REDUCED and np.any(f < -tol):
        raise NonPhysical(f"reduced state has symplectic eigenvalue {f.min():.3e} < 0")
    if kind is SpectrumKind.PARTIAL_TRANSPOSE and np.any(f < -0.5 - tol):
        raise NonPhysical(f"partial-transpose eigenvalue {f.min():.6f} below -1/2")
    return SymplecticSpectrum(f, kind)


def mode_entropy(f, base=None):
    """Entropy contribution h(f) = -f log f + (1+f) log(1+f) of one mode; h(0) = 0."""
    b = resolve_base(base)
    f = np.asarray(f, dtype=float)
    out = np.zeros_like(f)
    pos = f > 0.0
    fp = f[pos]
    out[pos] = -fp * np.log2(fp) + (1.0 + fp) * np.log2(1.0 + fp)
    if b != 2.0:
        out = out * np.log(2.0)
    return out if out.ndim else float(out)


def mode_negativity(f, base=None):
    """Negativity contribution g(f) = -log(1+2f) of one partial-transpose mode, f < 0."""
    b = resolve_base(base)
    f = np.asarray(f, dtype=float)
    out = -np.log2(1.0 + 2.0 * np.minimum(f, 0.0))
    if b != 2.0:
        out = out * np.log(2.0)
    return out if out.ndim else float(out)


def entropy(spectrum: SymplecticSpectrum, base=None) -> EntropyValue:
    """Total entropy sum_a h(f_a) of a reduced-state spectrum."""
    if spectrum.kind is not SpectrumKind.REDUCED:
        raise WrongKind("entropy needs a reduced-state spectrum")
    b = resolve_base(base)
    vals = np.clip(spectrum.values, 0.0, None)
    return EntropyValue(float(np.sum(mode_entropy(vals, base=b))), base=b)


def log_negativity(
    spectrum: SymplecticSpectrum, base=None, *, tol: float = 1e-9
) -> NegativityValue:
    """Logarithmic negativity sum over f < 0 of -log(1+2f).

    Eigenvalues within tol of the -1/2 floor are moved to -1/2 + 1e-12
    and the result is flagged diverging.
    """
    if spectrum.kind is not SpectrumKind.PARTIAL_TRANSPOSE:
        raise WrongKind("log_negativity needs a partial-transpose spectrum")
    b = resolve_base(base)
    f = spectrum.values.copy()
    floor = (f >= -0.5 - tol) & (f <= -0.5)
    diverging = bool(np.any(floor))
    f[floor] = -0.5 + 1e-12
    neg = f[f < 0.0]
    value = float(np.sum(mode_negativity(neg, base=b))) if neg.size else 0.0
    return NegativityValue(value, base=b, diverging=diverging)


def pure_bipartition_log_negativity(spectrum: SymplecticSpectrum, base=None) -> NegativityValue:
    """Negativity across a cut of a globally pure state, from the reduced spectrum alone.

    For a pure state the partial-transpose route and
    2 sum_a log(sqrt(f_a) + sqrt(1+f_a)) agree identically.
    """
    if spectrum.kind is not SpectrumKind.REDUCED:
        raise WrongKind("pure_bipartition_log_negativity needs a reduced-state spectrum")
    b = resolve_base(base)
    f = np.clip(spectrum.values, 0.0, None)
    value = float(2.0 * np.sum(np.log2(np.sqrt(f) + np.sqrt(1.0 + f))))
    if b != 2.0:
        value *= float(np.log(2.0))
    return NegativityValue(value, base=b)


def apply_local_rotation(d: ContractionMatrix, u, v, phi) -> ContractionMatrix:
    """Rotate every mode by its own Bogoliubov transformation b_i -> u_i b_i - e^{i phi_i} v_i b_i^dagger.

    u, v, phi are per-mode real vectors with u_i^2 - v_i^2 = 1. Being a
    product of single-mode transformations, the rotation leaves every
    reduced and partial-transpose spectrum unchanged; it is the change of
    basis that cancels the anomalous diagonal F-_ii when (u, v, phi) come
    from local_symplectic_eigenvalue.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    phi = np.asarray(phi, dtype=float)
    n = d.n
    if not (u.shape == v.shape == phi.shape == (n,)):
        raise ValueError("u, v, phi must be vectors of length n")
    if np.max(np.abs(u * u - v * v - 1.0)) > 1e-9:
        raise ValueError("u^2 - v^2 = 1 violated")
    ud = np.diag(u.astype(complex))
    vd = np.diag(-np.exp(1j * phi) * v)
    w = np.block([[ud, vd], [vd.conj(), ud.conj()]])
    dm = w @ d.matrix @ w.conj().T
    fp = dm[:n, :n]
    fm = dm[:n, n:]
    # symmetrize away roundoff so the constructor's strict gate passes
    fp = 0.5 * (fp + fp.conj().T)
    fm = 0.5 * (fm + fm.T)
    if np.max(np.abs(fp.imag)) == 0.0 and np.max(np.abs(fm.imag)) == 0.0:
        fp, fm = fp.real, fm.real
    return ContractionMatrix(fp, fm, transposed=d.transposed)

"""Singular-value estimators for weakly correlated pure gaussian states.

When every local symplectic eigenvalue f_i is small, the reduced spectrum of a
region A reduces to the squared singular values of the cross block F-_{A,Abar},
and the negative partial-transpose spectrum of a pair (B, C) to minus the
singular values of F-_{B,C}, with first-order counterterm corrections

    f~_a = -sigma_a + (U_a^dag conj(G_B) U_a + V_a^dag G_C V_a) / 2

taken in the singular bases. The counterterms come either from the definition
G_S = F+_S - F-_S conj(F-_S) or, for a pure global state, from the environment
block G_S = F-_{S,env} F-_{S,env}^dag.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.linalg import eigh, svd

from .config import log2_to_base, resolve_base
from .errors import NonPhysical, NotWeaklyCorrelated, OverlappingRegions, WrongKind
from .symplectic import ContractionMatrix, EntropyValue, NegativityValue

WEAK_GATE = 0.1
PURITY_GATE = 1e-6


def _sites(region) -> list[int]:
    return list(region.sites) if hasattr(region, "sites") else [int(i) for i in region]


@dataclass(frozen=True)
class LocalMode:
    """Single-mode symplectic eigenvalue and the rotation that removes F-_ii."""

    f: float
    u: float
    v: float
    phi: float

    def __float__(self) -> float:
        return self.f


def local_symplectic_eigenvalue(d: ContractionMatrix, i: int, *, tol: float = 1e-12) -> LocalMode:
    """f_i = sqrt((1/2 + F+_ii)^2 - |F-_ii|^2) - 1/2 plus the (u, v, phi)
    of the local Bogoliubov rotation b_i -> u b_i - e^{i phi} v b_i^dagger
    that zeroes F-_ii and leaves F+_ii = f_i."""
    p = float(d.f_plus[i, i].real)
    m = complex(d.f_minus[i, i])
    rad = (0.5 + p) ** 2 - abs(m) ** 2
    if rad < -tol:
        raise NonPhysical(f"mode {i}: local radicand {rad:.3e} below zero")
    f = float(np.sqrt(max(rad, 0.0)) - 0.5)
    if f < -tol and not d.transposed:
        raise NonPhysical(
            f"mode {i}: local pairing exceeds the occupation bound (f = {f:.3e})")
    denom = 2.0 * f + 1.0
    u = float(np.sqrt(max((p + 0.5 + (f + 0.5)) / denom, 0.0)))
    v = float(np.sqrt(max((p + 0.5 - (f + 0.5)) / denom, 0.0)))
    return LocalMode(f=f, u=u, v=v, phi=float(np.angle(m)))


def local_spectrum(d: ContractionMatrix) -> np.ndarray:
    """All single-mode symplectic eigenvalues."""
    p = np.real(np.diagonal(d.f_plus))
    m = np.abs(np.diagonal(d.f_minus))
    rad = np.clip((0.5 + p) ** 2 - m ** 2, 0.0, None)
    return np.sqrt(rad) - 0.5


@dataclass(frozen=True)
class WeakCouplingEstimate:
    """Singular values sigma (descending) plus optional corrected f~ values and
    the per-mode sufficient-negativity flags; degraded marks a violated gate."""

    sigma: np.ndarray
    kind: str
    corrected: np.ndarray | None = None
    condition_flags: np.ndarray | None = None
    degraded: bool = False
    max_local_f: float = 0.0
    counterterm_form: str | None = None

    def __post_init__(self):
        s = np.asarray(self.sigma, dtype=float)
        if s.size and (np.any(s < -1e-15) or np.any(np.diff(s) > 1e-12)):
            raise ValueError("sigma must be non-negative and descending")
        object.__setattr__(self, "sigma", s)
        if self.corrected is not None and len(self.corrected) != s.size:
            raise ValueError("corrected values must match sigma in length")

    def values(self) -> np.ndarray:
        """Estimated symplectic eigenvalues: sigma^2 for a reduced spectrum,
        corrected (or -sigma) for a partial transpose."""
        if self.kind == "reduced":
            return self.sigma ** 2
        if self.corrected is not None:
            return np.asarray(self.corrected, dtype=float)
        return -self.sigma


def _gate(d: ContractionMatrix, *, strict: bool, purity_tol: float) -> tuple[float, bool]:
    fmax = float(np.max(local_spectrum(d))) if d.n else 0.0
    degraded = fmax > WEAK_GATE
    if not degraded and purity_tol is not None:
        degraded = d.purity_residual() > purity_tol
    if degraded and strict:
        raise NotWeaklyCorrelated(
            f"max local symplectic eigenvalue {fmax:.3g} (gate {WEAK_GATE}) "
            "or impure global state")
    return fmax, degraded


def cross_singular_values(d: ContractionMatrix, a) -> np.ndarray:
    """Singular values of F-_{A,Abar}, descending."""
    rows = _sites(a)
    cols = [j for j in range(d.n) if j not in set(rows)]
    if not rows or not cols:
        return np.zeros(0)
    blk = d.f_minus[np.ix_(rows, cols)]
    return svd(blk, compute_uv=False)


def approx_reduced_spectrum(
    d: ContractionMatrix, a, *, strict: bool = False, purity_tol: float = PURITY_GATE,
) -> WeakCouplingEstimate:
    """Reduced symplectic spectrum of region a at leading order: f_alpha =
    (sigma_alpha)^2 with sigma the singular values of the cross block."""
    fmax, degraded = _gate(d, strict=strict, purity_tol=purity_tol)
    return WeakCouplingEstimate(
        sigma=cross_singular_values(d, a), kind="reduced",
        degraded=degraded, max_local_f=fmax)


def approx_entropy(est: WeakCouplingEstimate, base=None) -> EntropyValue:
    """Entanglement entropy at leading order: -sum sigma^2 log2(sigma^2 / e)."""
    if est.kind != "reduced":
        raise WrongKind("entropy estimate needs a reduced spectrum")
    b = resolve_base(base)
    s2 = est.sigma ** 2
    s2 = s2[s2 > 0]
    bits = float(np.sum(-s2 * (np.log2(s2) - np.log2(np.e))))
    return EntropyValue(value=bits * log2_to_base(b), base=b)


@dataclass(frozen=True)
class Counterterms:
    """Both counterterm forms for a region pair; g_b / g_c expose the requested one."""

    definition_b: np.ndarray
    definition_c: np.ndarray
    environment_b: np.ndarray
    environment_c: np.ndarray
    form: str

    @property
    def g_b(self) -> np.ndarray:
        return self.environment_b if self.form == "environment" else self.definition_b

    @property
    def g_c(self) -> np.ndarray:
        return self.environment_c if self.form == "environment" else self.definition_c


def counterterms(d: ContractionMatrix, b, c, *, form: str = "environment") -> Counterterms:
    """G_B and G_C for the pair (b, c).

    definition form: G_S = F+_S - F-_S conj(F-_S)
    environment form: G_S = F-_{S,env} F-_{S,env}^dag with env the complement
    of b and c (zero when the pair covers the whole system).
    """
    if form not in ("environment", "definition"):
        raise ValueError("form must be 'environment' or 'definition'")
    bs, cs = _sites(b), _sites(c)
    if set(bs) & set(cs):
        raise OverlappingRegions("pair regions overlap")
    env = [j for j in range(d.n) if j not in set(bs) | set(cs)]

    def definition(s):
        fp = d.f_plus[np.ix_(s, s)]
        fm = d.f_minus[np.ix_(s, s)]
        g = fp - fm @ fm.conj()
        return 0.5 * (g + g.conj().T)

    def environment(s):
        if not env:
            return np.zeros((len(s), len(s)))
        blk = d.f_minus[np.ix_(s, env)]
        return blk @ blk.conj().T

    return Counterterms(
        definition_b=definition(bs), definition_c=definition(cs),
        environment_b=environment(bs), environment_c=environment(cs),
        form=form)


def approx_pt_spectrum(
    d: ContractionMatrix,
    b,
    c,
    order: int = 1,
    *,
    counterterm_form: str = "environment",
    strict: bool = False,
    purity_tol: float = PURITY_GATE,
    degeneracy_tol: float = 1e-9,
) -> WeakCouplingEstimate:
    """Negative branch of the pair partial-transpose spectrum at weak coupling.

    order 0 keeps f~_a = -sigma_a with sigma the singular values of F-_{B,C};
    order 1 adds the half-sum of the counterterm diagonals in the singular
    bases, diagonalizing the correction inside each degenerate sigma block.
    condition_flags marks modes where sigma_a exceeds the geometric mean of
    the counterterm diagonals; since near-degenerate modes mix when the
    counterterms are comparable to sigma, a flag is kept only while the mode
    rank stays within the negative-eigenvalue count of the full leading-order
    pair matrix [[conj(G_B), conj(F-_BC)], [F-_CB, G_C]], so that every
    flagged mode certifies a genuinely negative eigenvalue.
    """
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    bs, cs = _sites(b), _sites(c)
    if set(bs) & set(cs):
        raise OverlappingRegions("pair regions overlap")
    fmax, degraded = _gate(d, strict=strict, purity_tol=purity_tol)

    # bases that diagonalize conj(F-_{B,C}); the -sigma eigenvectors of the
    # zeroth-order block matrix are (U_a, -V_a)/sqrt(2)
    mbar = d.f_minus[np.ix_(bs, cs)].conj()
    u, sigma, vh = svd(mbar)
    r = sigma.size
    u = u[:, :r]
    v = vh.conj().T[:, :r]

    ct = counterterms(d, b, c, form=counterterm_form)
    gb_bar = ct.g_b.conj()
    gc = ct.g_c
    diag_b = np.real(np.einsum("ia,ij,ja->a", u.conj(), gb_bar, u))
    diag_c = np.real(np.einsum("ia,ij,ja->a", v.conj(), gc, v))

    corrected = None
    if order == 1:
        corrected = np.empty(r)
        start = 0
        while start < r:
            stop = start + 1
            while stop < r and sigma[start] - sigma[stop] <= degeneracy_tol * max(1.0, sigma[start]):
                stop += 1
            ub, vb = u[:, start:stop], v[:, start:stop]
            corr = 0.5 * (ub.conj().T @ gb_bar @ ub + vb.conj().T @ gc @ vb)
            corr = 0.5 * (corr + corr.conj().T)
            ev, rot = eigh(corr)
            corrected[start:stop] = -sigma[start:stop] + ev
            u[:, start:stop] = ub @ rot
            v[:, start:stop] = vb @ rot
            start = stop
        diag_b = np.real(np.einsum("ia,ij,ja->a", u.conj(), gb_bar, u))
        diag_c = np.real(np.einsum("ia,ij,ja->a", v.conj(), gc, v))

    flags = sigma > np.sqrt(np.clip(diag_b, 0.0, None) * np.clip(diag_c, 0.0, None))
    model = np.block([[gb_bar, mbar], [mbar.conj().T, gc]])
    model = 0.5 * (model + model.conj().T)
    negatives = int(np.sum(np.linalg.eigvalsh(model) < 0.0))
    flags &= np.arange(r) < negatives
    return WeakCouplingEstimate(
        sigma=sigma, kind="partial_transpose", corrected=corrected,
        condition_flags=flags, degraded=degraded, max_local_f=fmax,
        counterterm_form=counterterm_form)


def approx_log_negativity(est: WeakCouplingEstimate, base=None) -> NegativityValue:
    """Logarithmic negativity at leading order: -2 log(e) sum of negative f~."""
    if est.kind != "partial_transpose":
        raise WrongKind("negativity estimate needs a partial-transpose spectrum")
    b = resolve_base(base)
    vals = est.values()
    neg = vals[vals < 0]
    bits = float(-2.0 * np.log2(np.e) * np.sum(neg))
    return NegativityValue(value=bits * log2_to_base(b), base=b)

"""Closed-form asymptotics for first-neighbor lattices and the fully connected model.

At weak coupling the cross-block singular values of standard partitions reduce
to a handful of link strengths sigma_mu = |Delta-_mu| / (4 lambda) and
sigma+_mu = |Delta+_mu| / (4 lambda). This module evaluates those geometric
singular-value sets, the area-law asymptotes they imply for entropy and
logarithmic negativity, the Toeplitz-Fourier diagonalization behind the tilted
and separated-pair formulas, and the exact fully connected (uniformly coupled)
solution.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import log2_to_base, resolve_base
from .errors import InvalidSeparation, NonPhysical, Unstable
from .symplectic import EntropyValue, NegativityValue

ALPHA = math.e / 2.0
BETA = 2.0 * math.sqrt(2.0) / math.pi
STRENGTH_WARN = 0.25


def _pair_of(value) -> tuple[float, float]:
    if np.isscalar(value):
        return float(value), float(value)
    vx, vy = value
    return float(vx), float(vy)


@dataclass(frozen=True)
class LinkStrengths:
    """Per-axis link strengths sigma = |Delta-|/(4 lambda), sigma+ = |Delta+|/(4 lambda)."""

    sigma_x: float
    sigma_y: float
    sigma_plus_x: float = 0.0
    sigma_plus_y: float = 0.0

    def __post_init__(self):
        vals = (self.sigma_x, self.sigma_y, self.sigma_plus_x, self.sigma_plus_y)
        if any(v < 0 for v in vals):
            raise ValueError("link strengths must be non-negative")
        if any(v >= STRENGTH_WARN for v in vals):
            warnings.warn(
                f"link strength {max(vals):.3g} >= {STRENGTH_WARN}; "
                "asymptotic forms degrade", stacklevel=2)

    @classmethod
    def from_couplings(cls, delta_plus, delta_minus, lam: float) -> "LinkStrengths":
        if lam <= 0:
            raise ValueError("lambda must be positive")
        px, py = _pair_of(delta_plus)
        mx, my = _pair_of(delta_minus)
        return cls(sigma_x=abs(mx) / (4 * lam), sigma_y=abs(my) / (4 * lam),
                   sigma_plus_x=abs(px) / (4 * lam), sigma_plus_y=abs(py) / (4 * lam))

    def isotropic(self, tol: float = 1e-9) -> tuple[float, float]:
        """(sigma, sigma+) when both axes agree; error otherwise."""
        if abs(self.sigma_x - self.sigma_y) > tol * max(1.0, self.sigma_x) or \
                abs(self.sigma_plus_x - self.sigma_plus_y) > tol * max(1.0, self.sigma_plus_x):
            raise ValueError("anisotropic strengths; use the singular-value route")
        return self.sigma_x, self.sigma_plus_x


def geometry_singulars(kind: str, params: dict, s: LinkStrengths) -> np.ndarray:
    """Asymptotic cross-block singular values, with multiplicities, of the
    standard complementary partitions. Descending.

    single_site: one value sqrt(2 (sigma_x^2 + sigma_y^2)).
    rect_block (w, h): sigma_y on the horizontal edges (2(w-2) values),
        sigma_x on the vertical ones (2(h-2)), sqrt(sigma_x^2+sigma_y^2) at
        the 4 corners.
    tilted_block (side): sqrt(sigma_x^2 + sigma_y^2 + 2 sigma_x sigma_y
        cos(2 pi k / m)), k = 1..m, m = 4 side - 4.
    checkerboard (nx, ny): 2 |sigma_x cos(2 pi kx / nx) + sigma_y cos(2 pi ky / ny)|,
        kx = 1..nx, ky = 1..ny/2 (cyclic lattice, ny even).
    """
    sx, sy = s.sigma_x, s.sigma_y
    if kind == "single_site":
        vals = np.array([math.sqrt(2.0 * (sx * sx + sy * sy))])
    elif kind == "rect_block":
        w, h = int(params["w"]), int(params["h"])
        if w < 2 or h < 2:
            raise ValueError("rect form needs extents of at least 2")
        vals = np.concatenate([
            np.full(2 * (w - 2), sy),
            np.full(2 * (h - 2), sx),
            np.full(4, math.hypot(sx, sy)),
        ])
    elif kind == "tilted_block":
        side = int(params["side"])
        if side < 2:
            raise ValueError("tilted form needs side of at least 2")
        m = 4 * side - 4
        k = np.arange(1, m + 1)
        vals = np.sqrt(sx * sx + sy * sy + 2 * sx * sy * np.cos(2 * np.pi * k / m))
    elif kind == "checkerboard":
        nx, ny = int(params["nx"]), int(params["ny"])
        if ny % 2:
            raise ValueError("checkerboard form needs even ny")
        kx = np.arange(1, nx + 1)
        ky = np.arange(1, ny // 2 + 1)
        grid = sx * np.cos(2 * np.pi * kx / nx)[:, None] \
            + sy * np.cos(2 * np.pi * ky / ny)[None, :]
        vals = 2.0 * np.abs(grid).ravel()
    else:
        raise ValueError(f"unknown geometry kind {kind!r}")
    return np.sort(vals)[::-1]


def entropy_from_singulars(sigmas, base=None) -> EntropyValue:
    """Leading-order entropy sum over f = sigma^2: -sum sigma^2 log2(sigma^2/e)."""
    b = resolve_base(base)
    s2 = np.asarray(sigmas, dtype=float) ** 2
    s2 = s2[s2 > 0]
    bits = float(np.sum(-s2 * (np.log2(s2) - np.log2(np.e))))
    return EntropyValue(value=bits * log2_to_base(b), base=b)


def negativity_from_singulars(sigmas, base=None) -> NegativityValue:
    """Leading-order negativity sum over f~ = -sigma: 2 log2(e) sum sigma."""
    b = resolve_base(base)
    bits = float(2.0 * np.log2(np.e) * np.sum(np.asarray(sigmas, dtype=float)))
    return NegativityValue(value=bits * log2_to_base(b), base=b)


def asymptotic_entropy(kind: str, n: int, s: LinkStrengths, *,
                       corners: bool = False, base=None) -> EntropyValue:
    """Integral-form entropy asymptotes of the standard partitions, isotropic case.

    single_site: -4 s^2 log2(4 s^2 / e)
    rect_block:  -4 n s^2 log2(s^2 / e), with corners
                 -4 (n-1) s^2 log2(s^2/e) - 4 s^2 log2(4 s^2 / e)
    tilted_block: -8 n s^2 log2(s^2)
    checkerboard: -2 n^2 s^2 log2(s^2 e)
    """
    b = resolve_base(base)
    sig, _ = s.isotropic()
    s2 = sig * sig
    l2 = math.log2(s2) if s2 > 0 else 0.0
    le = math.log2(math.e)
    if kind == "single_site":
        bits = -4 * s2 * (math.log2(4 * s2) - le) if s2 > 0 else 0.0
    elif kind == "rect_block":
        if corners:
            bits = -4 * (n - 1) * s2 * (l2 - le) - 4 * s2 * (math.log2(4 * s2) - le) \
                if s2 > 0 else 0.0
        else:
            bits = -4 * n * s2 * (l2 - le)
    elif kind == "tilted_block":
        bits = -8 * n * s2 * l2
    elif kind == "checkerboard":
        bits = -2 * n * n * s2 * (l2 + le)
    else:
        raise ValueError(f"unknown geometry kind {kind!r}")
    return EntropyValue(value=bits * log2_to_base(b), base=b)


def asymptotic_negativity(kind: str, n: int, s: LinkStrengths, *,
                          corners: bool = False, base=None) -> NegativityValue:
    """Integral-form negativity asymptotes (scaled value times 2 log(e)).

    single_site: 2 s; rect_block: 4 n s (with corners 4(n-1)s + 4(sqrt2 - 1)s);
    tilted_block: (16/pi) n s; checkerboard: (8/pi^2) n^2 s.
    """
    b = resolve_base(base)
    sig, _ = s.isotropic()
    if kind == "single_site":
        scaled = 2 * sig
    elif kind == "rect_block":
        scaled = 4 * (n - 1) * sig + 4 * (math.sqrt(2) - 1) * sig if corners \
            else 4 * n * sig
    elif kind == "tilted_block":
        scaled = 16 / math.pi * n * sig
    elif kind == "checkerboard":
        scaled = 8 / math.pi ** 2 * n * n * sig
    else:
        raise ValueError(f"unknown geometry kind {kind!r}")
    bits = 2.0 * math.log2(math.e) * scaled
    return NegativityValue(value=bits * log2_to_base(b), base=b)


@dataclass(frozen=True)
class GeometryForm:
    """Unified border description: L border modes, m broken links per border
    mode, geometric class j (0 plain, 1 tilted, 2 checkerboard)."""

    l_modes: float
    m_links: float
    j: int

    def __post_init__(self):
        if self.l_modes < 1 or self.m_links < 1 or self.j not in (0, 1, 2):
            raise ValueError("need L >= 1, m >= 1, j in {0, 1, 2}")

    @property
    def boundary_2(self) -> float:
        return self.l_modes * self.m_links

    @property
    def boundary_1(self) -> float:
        return self.l_modes * math.sqrt(self.m_links) * BETA ** self.j


def geometry_form_for(kind: str, n: int) -> GeometryForm:
    table = {
        "single_site": (1.0, 4.0, 0),
        "rect_block": (4.0 * n, 1.0, 0),
        "tilted_block": (4.0 * n, 2.0, 1),
        "checkerboard": (n * n / 2.0, 4.0, 2),
    }
    if kind not in table:
        raise ValueError(f"unknown geometry kind {kind!r}")
    return GeometryForm(*table[kind])


def generic_form(gf: GeometryForm, s: LinkStrengths, base=None) -> tuple[EntropyValue, NegativityValue]:
    """The unified asymptotes

        E   = -L m s^2 log2(alpha^j m s^2 / e),  alpha = e/2
        E~N = L sqrt(m) beta^j s,                beta = 2 sqrt(2)/pi

    with the negativity returned as 2 log(e) times the scaled value."""
    b = resolve_base(base)
    sig, _ = s.isotropic()
    s2 = sig * sig
    if s2 > 0:
        ebits = -gf.l_modes * gf.m_links * s2 * math.log2(
            ALPHA ** gf.j * gf.m_links * s2 / math.e)
    else:
        ebits = 0.0
    nbits = 2.0 * math.log2(math.e) * gf.boundary_1 * sig
    return (EntropyValue(value=ebits * log2_to_base(b), base=b),
            NegativityValue(value=nbits * log2_to_base(b), base=b))


def contact_template(orientation: str, separation: int, s: LinkStrengths) -> np.ndarray:
    """Toeplitz symbol f(l) of the cross block F-_{B,C} for facing blocks whose
    contact surface runs along y, sites ordered contact-surface first.

    separation 0 (first order): parallel f = [sigma_x];
        tilted f = [sigma_x, sigma_y].
    separation 1 (second order): parallel f = [2 sigma+_x sigma_x]; tilted
        f = 2 [sigma+_x sigma_x, sigma+_x sigma_y + sigma+_y sigma_x,
        sigma+_y sigma_y].
    """
    if separation not in (0, 1):
        raise InvalidSeparation("templates exist for separations 0 and 1")
    sx, sy = s.sigma_x, s.sigma_y
    px, py = s.sigma_plus_x, s.sigma_plus_y
    if orientation == "parallel":
        return np.array([sx]) if separation == 0 else np.array([2 * px * sx])
    if orientation == "tilted":
        if separation == 0:
            return np.array([sx, sy])
        return 2.0 * np.array([px * sx, px * sy + py * sx, py * sy])
    raise ValueError("orientation must be 'parallel' or 'tilted'")


def toeplitz_fourier_singulars(f, n: int) -> np.ndarray:
    """Circulant diagonalization of a Toeplitz cross block (F-)_{ij} = f(j - i):
    with g(l) = sum_k f(k) conj(f(k + l)), the squared singular values are
    sigma_k^2 = sum_l g(l) e^{2 pi i k l / n}, k = 0..n-1, i.e.
    g(0) + 2 sum_{l>0} g(l) cos(2 pi k l / n) for real g. Returned in k order."""
    f = np.asarray(f, dtype=complex).ravel()
    if f.size > n:
        raise ValueError("template support exceeds the block size")
    supp = f.size
    k = np.arange(n)
    s2 = np.full(n, float(np.sum(np.abs(f) ** 2)))
    for l in range(1, supp):
        g = complex(np.sum(f[: supp - l] * f[l:].conj()))
        s2 = s2 + 2.0 * np.real(g * np.exp(2j * np.pi * k * l / n))
    return np.sqrt(np.clip(s2, 0.0, None))


def pair_negativity(
    orientation: str,
    n: int,
    s: LinkStrengths,
    *,
    separation: int = 0,
    depth: int = 2,
    edge_correction: bool = False,
    base=None,
) -> NegativityValue:
    """Asymptotic log-negativity of two facing blocks with n contacting sites.

    Contiguous (separation 0): scaled value n sigma (parallel) or
    (4/pi) n sigma (tilted), independent of depth. One-site separation:
    blocks (depth >= 2) give n sigma (2 sigma+ - sigma), doubled when tilted,
    valid for sigma <= 2 sigma+; lines (depth 1) lose twice the sigma^2 term
    to the environment on the far side, n sigma (2 sigma+ - 2 sigma), valid
    for sigma <= sigma+. Outside validity, and for separation >= 2, the
    negativity vanishes at this order and the flag says so. The optional edge
    correction subtracts the second-order 2 sigma^2 end effect."""
    if orientation not in ("parallel", "tilted"):
        raise ValueError("orientation must be 'parallel' or 'tilted'")
    if n < 1 or depth < 1:
        raise ValueError("contact length and depth must be positive")
    if separation < 0:
        raise InvalidSeparation("separation must be non-negative")
    b = resolve_base(base)
    sig, sig_p = s.isotropic()

    def result(scaled: float, vanishes: bool = False) -> NegativityValue:
        bits = 2.0 * math.log2(math.e) * scaled
        return NegativityValue(value=bits * log2_to_base(b), base=b,
                               vanishes_at_this_order=vanishes)

    if separation >= 2:
        return result(0.0, vanishes=True)
    if separation == 0:
        scaled = n * sig if orientation == "parallel" else 4 / math.pi * n * sig
    else:
        drain = 2 if depth == 1 else 1
        if sig > 2 * sig_p / drain:
            return result(0.0, vanishes=True)
        scaled = n * sig * (2 * sig_p - drain * sig)
        if orientation == "tilted":
            scaled *= 2
    if edge_correction:
        scaled = max(scaled - 2 * sig * sig, 0.0)
    return result(scaled)


@dataclass(frozen=True)
class LmgCorrelations:
    """Uniform off-diagonal contractions of the fully connected ground state."""

    f1_plus: float
    f1_minus: float
    omega0: float
    omega1: float

    def __float__(self) -> float:
        return self.f1_plus


def lmg_f1(n: int, lam: float, delta_x: float, delta_y: float) -> LmgCorrelations:
    """Exact uniform contractions of the n-mode fully connected ground state
    with couplings Delta+- = (Delta_x +- Delta_y)/2 spread over n-1 partners:

        F1+ = n (lambda^2 - omega_bar^2) / (4 (n-1) omega_0 omega_1)

    with omega_0 = sqrt((lambda - Dx)(lambda - Dy)), omega_1 =
    sqrt((lambda + Dx/(n-1))(lambda + Dy/(n-1))) and omega_bar their
    site-weighted mean. F1- follows from the pure-state constraint
    (F1+)^2 + F1+/n = (F1-)^2, signed like Delta- = (Dx - Dy)/2."""
    if n < 2:
        raise ValueError("need at least two modes")
    if lam <= max(delta_x, delta_y):
        raise Unstable(f"lambda = {lam:g} at or below max coupling "
                       f"{max(delta_x, delta_y):g}")
    w0sq = (lam - delta_x) * (lam - delta_y)
    w1sq = (lam + delta_x / (n - 1)) * (lam + delta_y / (n - 1))
    if w1sq <= 0:
        raise Unstable("collective mode frequency not real")
    w0, w1 = math.sqrt(w0sq), math.sqrt(w1sq)
    wbar = (w0 + (n - 1) * w1) / n
    f1p = n * (lam * lam - wbar * wbar) / (4 * (n - 1) * w0 * w1)
    f1m = math.copysign(math.sqrt(max(f1p * f1p + f1p / n, 0.0)), delta_x - delta_y)
    return LmgCorrelations(f1_plus=f1p, f1_minus=f1m, omega0=w0, omega1=w1)


def lmg_reduced_eigenvalue(n: int, n_a: int, f1_plus: float) -> float:
    """The single non-zero symplectic eigenvalue of any n_a-site subsystem:
    sqrt(1/4 + F1+ n_a (n - n_a) / n) - 1/2."""
    if not 0 < n_a < n:
        raise ValueError("subsystem must be a proper non-empty part")
    rad = 0.25 + f1_plus * n_a * (n - n_a) / n
    if rad < 0:
        raise NonPhysical(f"radicand {rad:.3e} negative")
    return math.sqrt(rad) - 0.5


def lmg_pt_eigenvalue(n: int, n_b: int, n_c: int, f1_plus: float) -> float:
    """The single negative partial-transpose eigenvalue of a disjoint pair:

        sqrt(1/4 + gamma F1+ - sqrt(F1+ (beta + gamma^2 F1+))) - 1/2

    with beta = n_b n_c / n and gamma = (n_b + n_c)(n - n_b - n_c)/(2n)
    + 2 beta."""
    if n_b < 1 or n_c < 1 or n_b + n_c > n:
        raise ValueError("pair sizes must be positive and fit in the system")
    beta = n_b * n_c / n
    gamma = (n_b + n_c) * (n - n_b - n_c) / (2 * n) + 2 * beta
    inner = f1_plus * (beta + gamma * gamma * f1_plus)
    if inner < 0:
        raise NonPhysical(f"inner radicand {inner:.3e} negative")
    rad = 0.25 + gamma * f1_plus - math.sqrt(inner)
    if rad < 0:
        raise NonPhysical(f"radicand {rad:.3e} negative")
    return math.sqrt(rad) - 0.5


def lmg_weak_sigma(n_b: int, n_c: int, f1_minus: float) -> float:
    """Single singular value of the uniform cross block: sqrt(n_b n_c) |F1-|."""
    return math.sqrt(n_b * n_c) * abs(f1_minus)


def lmg_weak_reduced(n: int, n_a: int, f1_minus: float) -> float:
    """Weak-coupling reduced eigenvalue n_a (n - n_a) (F1-)^2."""
    return n_a * (n - n_a) * f1_minus * f1_minus


def lmg_weak_pt(n: int, n_b: int, n_c: int, f1_minus: float) -> float:
    """Weak-coupling pair eigenvalue with both environment counterterms:
    -sqrt(n_b n_c)|F1-| + |F1-|^2 (n_b (n-n_b) + n_c (n-n_c)) / 2."""
    return -lmg_weak_sigma(n_b, n_c, f1_minus) \
        + 0.5 * f1_minus * f1_minus * (n_b * (n - n_b) + n_c * (n - n_c))


def lmg_reduced_sigma_pair(
    l_sites: int, f0_plus: float, f0_minus: float, f1_plus: float, f1_minus: float,
) -> tuple[float, float]:
    """Exact reduced symplectic eigenvalues of L sites of the uniform state
    F+-_ij = F0 delta_ij + F1: the collective value

        sqrt((F0+ + L F1+ + 1/2)^2 - (F0- + L F1-)^2) - 1/2

    and the (L-1)-fold degenerate sqrt((F0+ + 1/2)^2 - (F0-)^2) - 1/2,
    which vanishes for a pure global state in the F0- = 0 basis."""
    if l_sites < 1:
        raise ValueError("need at least one site")
    rad1 = (f0_plus + l_sites * f1_plus + 0.5) ** 2 - (f0_minus + l_sites * f1_minus) ** 2
    rad0 = (f0_plus + 0.5) ** 2 - f0_minus ** 2
    if rad1 < 0 or rad0 < 0:
        raise NonPhysical("negative radicand in the uniform reduced spectrum")
    return math.sqrt(rad1) - 0.5, math.sqrt(rad0) - 0.5

"""Square-lattice geometry: site indexing, first-neighbor couplings, regions.

Sites of an nx x ny lattice are numbered i = x + nx * y. First-neighbor
coupling matrices follow

    Delta_ij = sum_mu (Delta_mu / 2) (delta_{i,j+u_mu} + delta_{i,j-u_mu})

so each linked pair carries Delta_mu / 2 per axis. Regions are ordered site
lists with a small descriptor for serialization; the pair constructors order
sites contact-surface first, which downstream low-rank expansions and output
tables rely on for determinism.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import InvalidSeparation, OutOfBounds, OverlappingRegions
from .linalg import singular_values

BOUNDARIES = ("open", "cyclic")


@dataclass(frozen=True)
class Lattice2D:
    nx: int
    ny: int
    boundary: str = "open"

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("lattice extents must be positive")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")

    @property
    def n(self) -> int:
        return self.nx * self.ny

    def index(self, x: int, y: int) -> int:
        """Site index of (x, y); wraps on a cyclic lattice."""
        if self.boundary == "cyclic":
            x %= self.nx
            y %= self.ny
        elif not (0 <= x < self.nx and 0 <= y < self.ny):
            raise OutOfBounds(f"site ({x}, {y}) outside open {self.nx}x{self.ny} lattice")
        return x + self.nx * y

    def coords(self, i: int) -> tuple[int, int]:
        if not 0 <= i < self.n:
            raise OutOfBounds(f"site index {i} outside lattice of {self.n} sites")
        return i % self.nx, i // self.nx

    def _axis_shift(self, axis: int) -> np.ndarray:
        """Matrix S with S_ij = delta_{i, j + u_axis} (one hop up the axis)."""
        s = np.zeros((self.n, self.n))
        for i in range(self.n):
            x, y = self.coords(i)
            x, y = (x + 1, y) if axis == 0 else (x, y + 1)
            if self.boundary == "open" and not (x < self.nx and y < self.ny):
                continue
            s[self.index(x, y), i] = 1.0
        return s

    def axis_coupling(self, axis: int) -> np.ndarray:
        """Coupling pattern of one axis at unit strength: (S + S^T) / 2."""
        s = self._axis_shift(axis)
        return 0.5 * (s + s.T)

    def adjacency(self) -> np.ndarray:
        """0/1 first-neighbor matrix (link multiplicity ignored)."""
        m = np.zeros((self.n, self.n))
        for axis in (0, 1):
            s = self._axis_shift(axis)
            m = np.maximum(m, np.maximum(s, s.T))
        np.fill_diagonal(m, 0.0)
        return m


def _pair_of(value) -> tuple[float, float]:
    if np.isscalar(value):
        return float(value), float(value)
    vx, vy = value
    return float(vx), float(vy)


def lattice_deltas(lat: Lattice2D, delta_plus, delta_minus) -> tuple[np.ndarray, np.ndarray]:
    """First-neighbor coupling matrices. Scalars mean isotropic; pairs are (x, y)."""
    px, py = _pair_of(delta_plus)
    mx, my = _pair_of(delta_minus)
    ax, ay = lat.axis_coupling(0), lat.axis_coupling(1)
    return px * ax + py * ay, mx * ax + my * ay


@dataclass(frozen=True)
class Region:
    """Ordered list of distinct sites plus a descriptor for round-tripping."""

    sites: tuple[int, ...]
    descriptor: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        sites = tuple(int(s) for s in self.sites)
        if len(set(sites)) != len(sites):
            raise OverlappingRegions("region contains repeated sites")
        object.__setattr__(self, "sites", sites)

    def __len__(self) -> int:
        return len(self.sites)

    def __contains__(self, i: int) -> bool:
        return i in set(self.sites)

    def to_json(self) -> dict:
        d = dict(self.descriptor)
        if not d:
            d = {"kind": "sites", "sites": list(self.sites)}
        return d


def _check_disjoint(b: Region, c: Region):
    common = set(b.sites) & set(c.sites)
    if common:
        raise OverlappingRegions(f"regions share {len(common)} site(s)")


def single_site(lat: Lattice2D, x: int, y: int) -> Region:
    return Region((lat.index(x, y),), {"kind": "single_site", "x": x, "y": y})


def rect_block(lat: Lattice2D, x0: int, y0: int, w: int, h: int) -> Region:
    if w < 1 or h < 1:
        raise ValueError("block extents must be positive")
    sites = tuple(lat.index(x0 + dx, y0 + dy) for dy in range(h) for dx in range(w))
    return Region(sites, {"kind": "rect_block", "x0": x0, "y0": y0, "w": w, "h": h})


def tilted_block(lat: Lattice2D, cx: int, cy: int, side: int) -> Region:
    """Square of the given side tilted 45 degrees: the diamond
    |x - cx| + |y - cy| <= side - 1, holding side^2 + (side-1)^2 sites."""
    if side < 1:
        raise ValueError("side must be positive")
    r = side - 1
    sites = tuple(
        lat.index(cx + dx, cy + dy)
        for dy in range(-r, r + 1)
        for dx in range(-r, r + 1)
        if abs(dx) + abs(dy) <= r
    )
    return Region(sites, {"kind": "tilted_block", "cx": cx, "cy": cy, "side": side})


def checkerboard(lat: Lattice2D, parity: int = 0) -> Region:
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    sites = tuple(
        i for i in range(lat.n) if sum(lat.coords(i)) % 2 == parity
    )
    return Region(sites, {"kind": "checkerboard", "parity": parity})


def block_pair(
    lat: Lattice2D,
    x0: int,
    y0: int,
    n: int,
    *,
    separation: int = 0,
    depth: int = 1,
    orientation: str = "parallel",
) -> tuple[Region, Region]:
    """Two n-site-wide blocks of the given depth facing each other across
    `separation` empty sites, contact surfaces parallel or tilted 45 degrees
    with respect to the axes. Sites are ordered contact layer first.

    Parallel: layer t of the left block sits at column x0 - 1 - t, the right
    block starts at column x0 + separation. Tilted: layers alternate the two
    sublattice shifts of a 45-degree surface so the footprint stays compact.
    """
    if n < 1 or depth < 1:
        raise ValueError("contact length and depth must be positive")
    if separation < 0:
        raise InvalidSeparation("separation must be non-negative")
    s = separation
    if orientation == "parallel":
        b = tuple(lat.index(x0 - 1 - t, y0 + i) for t in range(depth) for i in range(n))
        c = tuple(lat.index(x0 + s + u, y0 + i) for u in range(depth) for i in range(n))
    elif orientation == "tilted":
        b = tuple(
            lat.index(x0 - i - (t + 1) // 2, y0 + i - t // 2)
            for t in range(depth) for i in range(n)
        )
        c = tuple(
            lat.index(x0 + 1 + s - i + (u + 1) // 2, y0 + i + u // 2)
            for u in range(depth) for i in range(n)
        )
    else:
        raise ValueError("orientation must be 'parallel' or 'tilted'")
    desc = {"x0": x0, "y0": y0, "n": n, "separation": s,
            "depth": depth, "orientation": orientation}
    rb = Region(b, {"kind": "block_pair_b", **desc})
    rc = Region(c, {"kind": "block_pair_c", **desc})
    _check_disjoint(rb, rc)
    return rb, rc


def line_pair(
    lat: Lattice2D, x0: int, y0: int, n: int, *,
    separation: int = 0, orientation: str = "parallel",
) -> tuple[Region, Region]:
    """Depth-1 block pair: two facing lines of n sites."""
    rb, rc = block_pair(lat, x0, y0, n, separation=separation, depth=1,
                        orientation=orientation)
    desc_b = {**rb.descriptor, "kind": "line_pair_b"}
    desc_c = {**rc.descriptor, "kind": "line_pair_c"}
    del desc_b["depth"], desc_c["depth"]
    return Region(rb.sites, desc_b), Region(rc.sites, desc_c)


def complement(lat: Lattice2D, region: Region) -> Region:
    inside = set(region.sites)
    sites = tuple(i for i in range(lat.n) if i not in inside)
    return Region(sites, {"kind": "complement", "of": region.to_json()})


def region_from_json(lat: Lattice2D, d: dict) -> Region:
    kind = d.get("kind")
    if kind == "sites":
        return Region(tuple(d["sites"]), {"kind": "sites", "sites": list(d["sites"])})
    if kind == "single_site":
        return single_site(lat, d["x"], d["y"])
    if kind == "rect_block":
        return rect_block(lat, d["x0"], d["y0"], d["w"], d["h"])
    if kind == "tilted_block":
        return tilted_block(lat, d["cx"], d["cy"], d["side"])
    if kind == "checkerboard":
        return checkerboard(lat, d.get("parity", 0))
    if kind in ("block_pair_b", "block_pair_c", "line_pair_b", "line_pair_c"):
        depth = d.get("depth", 1)
        ctor = block_pair if kind.startswith("block") else line_pair
        kwargs = {"separation": d["separation"], "orientation": d["orientation"]}
        if ctor is block_pair:
            kwargs["depth"] = depth
        rb, rc = ctor(lat, d["x0"], d["y0"], d["n"], **kwargs)
        return rb if kind.endswith("_b") else rc
    if kind == "complement":
        return complement(lat, region_from_json(lat, d["of"]))
    raise ValueError(f"unknown region kind {kind!r}")


def _cut_block(lat: Lattice2D, region: Region, other: Region | None = None) -> np.ndarray:
    m = lat.adjacency()
    rows = list(region.sites)
    cols = list(other.sites) if other is not None else \
        [i for i in range(lat.n) if i not in set(region.sites)]
    return m[np.ix_(rows, cols)]


def boundary_measure_2(lat: Lattice2D, region: Region, other: Region | None = None) -> float:
    """Number of first-neighbor links broken by the cut: ||M_cut||_2^2."""
    blk = _cut_block(lat, region, other)
    return float(np.sum(blk * blk))


def boundary_measure_1(lat: Lattice2D, region: Region, other: Region | None = None) -> float:
    """Trace norm of the cut block of the adjacency: sum of its singular values."""
    blk = _cut_block(lat, region, other)
    if min(blk.shape) == 0:
        return 0.0
    return float(np.sum(singular_values(blk)))


def boundary_sqrt_degree(lat: Lattice2D, region: Region, other: Region | None = None) -> float:
    """Sum over region sites of sqrt(outside-neighbor count); equals the trace
    norm when no outside site touches two region sites."""
    blk = _cut_block(lat, region, other)
    return float(np.sum(np.sqrt(np.sum(blk * blk, axis=1))))


def region_coords(lat: Lattice2D, region: Region) -> list[tuple[int, int]]:
    return [lat.coords(i) for i in region.sites]


def sites_from_coords(lat: Lattice2D, coords: Iterable[tuple[int, int]]) -> Region:
    return Region(tuple(lat.index(x, y) for x, y in coords))

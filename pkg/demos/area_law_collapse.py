"""Area-law collapse on a square lattice.

Sweeps the coupling ratio on a 16x16 open lattice and prints the exact
log-negativity of three partitions divided by 2 log2(e) sigma |dA|_1,
the combination the asymptotic forms predict to approach 1 deep in the
weakly correlated regime, for boundaries of very different shapes.
"""
import math

import numpy as np

import gaussent as g


def main():
    lat = g.Lattice2D(16, 16)
    dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
    lam_c = g.critical_lambda(dp, dm).value
    regions = [
        ("single site", g.single_site(lat, 8, 8)),
        ("4x4 block", g.rect_block(lat, 6, 6, 4, 4)),
        ("tilted block", g.tilted_block(lat, 8, 8, 4)),
    ]
    print("negativity / (2 log2(e) sigma |dA|_1), 16x16 lattice, couplings 0.3 / 0.2")
    print(f"{'lam/lam_c':>10}" + "".join(f"{name:>14}" for name, _ in regions))
    for ratio in (1.5, 2.0, 4.0, 8.0, 16.0):
        lam = ratio * lam_c
        h = g.QuadraticHamiltonian(np.full(lat.n, lam), dp, dm)
        d = g.solve_ground_state(h).ground_contractions()
        sigma, _ = g.LinkStrengths.from_couplings(0.3, 0.2, lam).isotropic()
        cells = []
        for _, region in regions:
            spec = g.symplectic_eigenvalues(g.restricted(d, region.sites))
            neg = float(g.pure_bipartition_log_negativity(spec))
            scale = 2.0 * math.log2(math.e) * sigma * g.boundary_measure_1(lat, region)
            cells.append(neg / scale)
        print(f"{ratio:>10.1f}" + "".join(f"{v:>14.4f}" for v in cells))
    print()
    print("all three shapes collapse onto 1 as the coupling weakens; the")
    print("boundary measure |dA|_1 absorbs the whole geometry dependence")


if __name__ == "__main__":
    main()

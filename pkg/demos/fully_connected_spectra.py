"""Single-eigenvalue structure of the fully connected model.

When every mode couples to every other with the same strength, any
subsystem of the ground state carries exactly one non-zero symplectic
eigenvalue and any disjoint pair exactly one negative partial-transpose
eigenvalue, both given by closed forms in the uniform contraction F1+.
Prints the forms next to dense diagonalization, then the weak-coupling
expressions converging as lambda grows.
"""
import numpy as np

import gaussent as g

N, DX, DY = 16, 1.0, 0.3


def ground(lam):
    dp, dm = g.fully_connected_deltas(N, (DX + DY) / 2, (DX - DY) / 2)
    h = g.QuadraticHamiltonian(np.full(N, lam), dp, dm)
    return g.solve_ground_state(h).ground_contractions()


def main():
    lam = 3.0
    d = ground(lam)
    c = g.lmg_f1(N, lam, DX, DY)
    print(f"n = {N}, lambda = {lam}, couplings {DX} / {DY}: F1+ = {c.f1_plus:.6f}")
    print()
    print(f"{'n_a':>4}{'closed form':>14}{'dense':>14}{'next |value|':>14}")
    for n_a in (1, 2, 4, 8):
        vals = np.sort(np.abs(g.symplectic_eigenvalues(
            g.restricted(d, list(range(n_a)))).values))[::-1]
        form = g.lmg_reduced_eigenvalue(N, n_a, c.f1_plus)
        second = vals[1] if len(vals) > 1 else 0.0
        print(f"{n_a:>4}{form:>14.8f}{vals[0]:>14.8f}{second:>14.2e}")

    print()
    print(f"{'pair':>6}{'closed form':>14}{'dense':>14}")
    for nb, nc in ((2, 3), (4, 4), (5, 8)):
        pair = g.restricted(d, list(range(nb + nc)))
        pt = g.partial_transpose(pair, range(nb), range(nb, nb + nc))
        low = np.sort(g.symplectic_eigenvalues(pt).values)[0]
        form = g.lmg_pt_eigenvalue(N, nb, nc, c.f1_plus)
        print(f"{nb}+{nc:>3}{form:>14.8f}{low:>14.8f}")

    print()
    print("weak-coupling forms for the 4 + 4 pair, exact alongside:")
    print(f"{'lambda':>8}{'exact':>14}{'weak':>14}")
    for lam in (3.0, 6.0, 12.0, 24.0):
        c = g.lmg_f1(N, lam, DX, DY)
        exact = g.lmg_pt_eigenvalue(N, 4, 4, c.f1_plus)
        weak = g.lmg_weak_pt(N, 4, 4, c.f1_minus)
        print(f"{lam:>8.1f}{exact:>14.8f}{weak:>14.8f}")


if __name__ == "__main__":
    main()

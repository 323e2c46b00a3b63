import math
import warnings

import numpy as np
import pytest

import gaussent as g
from gaussent.errors import (
    CouplingTooStrong, NoCriticalPoint, SymmetryViolation, UnequalLocalEnergies, Unstable,
)

from conftest import ground_state


def two_mode_exact(lam, cp, cm):
    """Closed-form F blocks for H = lam(na+nb) - cp(a'b+b'a) - cm(ab+a'b'),
    the sign convention the coupling matrices use.

    The symmetric and antisymmetric combinations decouple into single-mode
    squeezed oscillators with gap lam -+ cp and squeezing -+ cm, giving
    <a'a> and <ab> by transforming back.
    """
    def single(gap, sq):
        w = math.sqrt(gap * gap - sq * sq)
        return (gap / w - 1.0) / 2.0, -sq / (2.0 * w)

    fp_p, fm_p = single(lam - cp, -cm)
    fp_m, fm_m = single(lam + cp, cm)
    fp = np.array([[fp_p + fp_m, fp_p - fp_m], [fp_p - fp_m, fp_p + fp_m]]) / 2.0
    fm = np.array([[fm_p + fm_m, fm_p - fm_m], [fm_p - fm_m, fm_p + fm_m]]) / 2.0
    return fp, fm


class TestQuadraticHamiltonian:
    def test_rejects_nonpositive_lam(self):
        with pytest.raises(ValueError):
            g.QuadraticHamiltonian(np.array([1.0, -1.0]), np.zeros((2, 2)), np.zeros((2, 2)))

    def test_rejects_asymmetric_couplings(self):
        bad = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(SymmetryViolation):
            g.QuadraticHamiltonian(np.ones(2), bad, np.zeros((2, 2)))
        with pytest.raises(SymmetryViolation):
            g.QuadraticHamiltonian(np.ones(2), np.zeros((2, 2)), bad)

    def test_form_matrix_blocks(self):
        dp = np.array([[0.0, 0.3], [0.3, 0.0]])
        dm = np.array([[0.0, 0.2], [0.2, 0.0]])
        h = g.QuadraticHamiltonian(np.array([2.0, 2.0]), dp, dm)
        m = h.form_matrix
        np.testing.assert_allclose(m[:2, :2], np.diag([2.0, 2.0]) - dp)
        np.testing.assert_allclose(m[:2, 2:], -dm)


class TestGroundState:
    def test_two_mode_against_closed_form(self):
        lam, cp, cm = 2.0, 0.5, 0.3
        h = g.QuadraticHamiltonian(
            np.array([lam, lam]),
            np.array([[0.0, cp], [cp, 0.0]]),
            np.array([[0.0, cm], [cm, 0.0]]))
        d = g.solve_ground_state(h).ground_contractions()
        fp, fm = two_mode_exact(lam, cp, cm)
        np.testing.assert_allclose(d.f_plus, fp, atol=1e-13)
        np.testing.assert_allclose(d.f_minus, fm, atol=1e-13)

    def test_frequencies_two_mode(self):
        lam, cp, cm = 2.0, 0.5, 0.3
        h = g.QuadraticHamiltonian(
            np.array([lam, lam]),
            np.array([[0.0, cp], [cp, 0.0]]),
            np.array([[0.0, cm], [cm, 0.0]]))
        t = g.solve_ground_state(h)
        expect = sorted([
            math.sqrt((lam + cp) ** 2 - cm ** 2),
            math.sqrt((lam - cp) ** 2 - cm ** 2)])
        np.testing.assert_allclose(t.omega, expect, atol=1e-13)

    def test_normalization_and_purity(self, lattice_8x8):
        lat, lam, d = lattice_8x8
        assert d.purity_residual() < 1e-12
        # full-system ground spectrum is identically zero
        spec = g.symplectic_eigenvalues(d)
        assert np.max(np.abs(spec.values)) < 1e-9

    def test_unstable_hamiltonian_raises(self):
        # coupling exceeding the local energy closes the gap
        h = g.QuadraticHamiltonian(
            np.array([1.0, 1.0]),
            np.zeros((2, 2)),
            np.array([[0.0, 1.2], [1.2, 0.0]]))
        with pytest.raises(Unstable):
            g.solve_ground_state(h)

    def test_degenerate_spectrum_is_orthonormalized(self):
        # an 18-site cyclic ring has many exactly degenerate mode pairs
        lat = g.Lattice2D(18, 1, boundary="cyclic")
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        h = g.QuadraticHamiltonian(np.full(18, 2.0), dp, dm)
        t = g.solve_ground_state(h)
        r1, r2 = t.normalization_residuals()
        assert max(r1, r2) < 1e-11


class TestThermalState:
    def test_infinite_beta_is_ground(self):
        lat = g.Lattice2D(3, 3)
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        h = g.QuadraticHamiltonian(np.full(9, 2.0), dp, dm)
        t = g.solve_ground_state(h)
        cold = g.thermal_contractions(t, beta=np.inf)
        ground = t.ground_contractions()
        np.testing.assert_allclose(cold.f_plus, ground.f_plus, atol=1e-14)
        np.testing.assert_allclose(cold.f_minus, ground.f_minus, atol=1e-14)

    def test_uncoupled_matches_bose_occupation(self):
        lam, beta = 1.7, 0.9
        h = g.QuadraticHamiltonian(np.array([lam]), np.zeros((1, 1)), np.zeros((1, 1)))
        t = g.solve_ground_state(h)
        d = g.thermal_contractions(t, beta)
        occ = 1.0 / math.expm1(beta * lam)
        assert d.f_plus[0, 0] == pytest.approx(occ, rel=1e-12)
        assert d.f_minus[0, 0] == pytest.approx(0.0, abs=1e-14)

    def test_rejects_nonpositive_beta(self):
        h = g.QuadraticHamiltonian(np.array([1.0]), np.zeros((1, 1)), np.zeros((1, 1)))
        t = g.solve_ground_state(h)
        with pytest.raises(ValueError):
            g.thermal_contractions(t, 0.0)


class TestPerturbative:
    def test_first_order_cross_block(self):
        lam = 40.0
        lat = g.Lattice2D(4, 4)
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        h = g.QuadraticHamiltonian(np.full(16, lam), dp, dm)
        d1 = g.perturbative_contractions(h, order=1)
        np.testing.assert_allclose(d1.f_minus, dm / (2 * lam), atol=1e-15)

    def test_error_scales_with_order(self):
        # order-1 error falls off one power of coupling faster than the
        # coupling itself; order-2 two powers
        lat = g.Lattice2D(4, 4)
        errs = {1: [], 2: []}
        for lam in (20.0, 40.0, 80.0):
            dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
            h = g.QuadraticHamiltonian(np.full(16, lam), dp, dm)
            exact = g.solve_ground_state(h).ground_contractions()
            for order in (1, 2):
                dp_ = g.perturbative_contractions(h, order=order)
                errs[order].append(np.max(np.abs(dp_.f_minus - exact.f_minus)))
        for order, seq in errs.items():
            for a, b in zip(seq, seq[1:]):
                ratio = a / b
                expect = 2.0 ** (order + 1)
                assert ratio == pytest.approx(expect, rel=0.25)

    def test_requires_uniform_lam(self):
        lat = g.Lattice2D(2, 2)
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        lam = np.array([5.0, 5.0, 5.0, 6.0])
        h = g.QuadraticHamiltonian(lam, dp, dm)
        with pytest.raises(UnequalLocalEnergies):
            g.perturbative_contractions(h)

    def test_strong_coupling_rejected_and_warned(self):
        lat = g.Lattice2D(3, 3)
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        strength = np.linalg.norm(dp, 2)
        h = g.QuadraticHamiltonian(np.full(9, strength / 0.6), dp, dm)
        with pytest.raises(CouplingTooStrong):
            g.perturbative_contractions(h)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            g.perturbative_contractions(
                g.QuadraticHamiltonian(np.full(9, strength / 0.3), dp, dm))
        assert any("ratio" in str(w.message) for w in caught)

    def test_bogoliubov_v_matches_exact_gauge_invariantly(self):
        lat = g.Lattice2D(4, 4)
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        h = g.QuadraticHamiltonian(np.full(16, 30.0), dp, dm)
        v = g.perturbative_bogoliubov_v(h)
        t = g.solve_ground_state(h)
        # compare F- = V U^T, which is basis independent; the perturbative
        # V lives in the band basis of Lambda - Delta+
        _, u_band = np.linalg.eigh(np.diag(h.lam) - h.delta_plus)
        approx_fm = v @ u_band.T
        exact_fm = t.v @ t.u.T
        err = np.max(np.abs(approx_fm - exact_fm))
        assert err < 2.0 * (0.5 / 30.0) ** 2


class TestCriticalLambda:
    def test_single_ring_closed_form(self):
        # cyclic first-neighbor chain: lambda_c = 2(dp + |dm|)... the gap
        # closes when lam equals the largest coupling row sum
        lat = g.Lattice2D(8, 1, boundary="cyclic")
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        c = g.critical_lambda(dp, dm)
        assert c.value == pytest.approx(2 * (0.3 + 0.2), rel=1e-10)

    def test_gap_positive_just_above_and_closed_just_below(self):
        lat = g.Lattice2D(5, 5)
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        c = g.critical_lambda(dp, dm)
        up = g.QuadraticHamiltonian(np.full(25, c.value * (1 + 1e-6)), dp, dm)
        g.solve_ground_state(up)
        down = g.QuadraticHamiltonian(np.full(25, c.value * (1 - 1e-6)), dp, dm)
        with pytest.raises(Unstable):
            g.solve_ground_state(down)

    def test_estimate_bounds_value(self):
        lat = g.Lattice2D(6, 6)
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        c = g.critical_lambda(dp, dm)
        assert c.value <= c.estimate * (1 + 1e-12)

    def test_uncoupled_has_no_critical_point(self):
        with pytest.raises(NoCriticalPoint):
            g.critical_lambda(np.zeros((3, 3)), np.zeros((3, 3)))

    def test_explicit_bracket(self):
        lat = g.Lattice2D(4, 4)
        dp, dm = g.lattice_deltas(lat, 0.3, 0.2)
        ref = g.critical_lambda(dp, dm)
        c = g.critical_lambda(dp, dm, bracket=(1e-6, 10.0))
        assert c.value == pytest.approx(ref.value, rel=1e-9)


class TestFullyConnected:
    def test_delta_matrices(self):
        dp, dm = g.fully_connected_deltas(4, 0.9, 0.3)
        assert dp[0, 0] == 0.0
        assert dp[0, 1] == pytest.approx(0.9 / 3)
        assert dm[2, 3] == pytest.approx(0.3 / 3)
        np.testing.assert_allclose(dp, dp.T)

    def test_ground_state_solves(self):
        dp, dm = g.fully_connected_deltas(12, 1.0, 0.2)
        h = g.QuadraticHamiltonian(np.full(12, 5.0), dp, dm)
        d = g.solve_ground_state(h).ground_contractions()
        assert d.purity_residual() < 1e-12

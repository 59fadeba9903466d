#!/usr/bin/env python3
"""
Test the warping engine: p-grid, warped data, Fourier transform in p,
mode-by-mode evolution, left-boundary estimate and recovery
"""

import math
import sys
import unittest
from pathlib import Path

import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from ode_core import hermitian_split
from pde_builders import Mesh1D, laplacian_1d
from utils.errors import ConfigError, GridError
from warping import (
    PGrid,
    TransformPlan,
    WarpedField,
    assemble_schrodinger,
    build_pgrid,
    estimate_left_boundary,
    evolve,
    evolve_time_dependent,
    from_fourier,
    left_moving_speed,
    left_tail_fraction,
    recover_integral,
    recover_point,
    recovery_threshold,
    to_fourier,
    warp_initial,
)
from tests.test_utils import random_dissipative_matrix


class TestPGrid(unittest.TestCase):

    def test_nodes_and_modes(self):
        """Test 1: Nodes, spacing and ascending Fourier modes"""
        grid = build_pgrid(-2.0, 6.0, -1.0, 8)

        self.assertAlmostEqual(grid.dp, 1.0)
        np.testing.assert_allclose(grid.nodes, np.arange(-2.0, 6.0))
        np.testing.assert_array_equal(grid.mode_indices, np.arange(-4, 4))
        np.testing.assert_allclose(grid.modes, 2 * np.pi * np.arange(-4, 4) / 8.0)

    def test_invalid_grids(self):
        """Test 2: Odd Np and misordered boundaries raise GridError"""
        with self.assertRaises(GridError):
            build_pgrid(-2.0, 6.0, -1.0, 7)
        with self.assertRaises(GridError):
            build_pgrid(-1.0, 6.0, -1.0, 8)
        with self.assertRaises(GridError):
            build_pgrid(-2.0, 6.0, 0.5, 8)
        with self.assertRaises(GridError):
            build_pgrid(-2.0, 0.0, -1.0, 8)

    def test_first_positive_node(self):
        """Test 3: Recovery node lookup skips p <= 0"""
        grid = build_pgrid(-2.0, 6.0, -1.0, 8)

        self.assertEqual(grid.nodes[grid.first_node_at_or_above(0.0)], 1.0)
        self.assertEqual(grid.nodes[grid.first_node_at_or_above(2.5)], 3.0)
        with self.assertRaises(GridError):
            grid.first_node_at_or_above(6.5)


class TestWarpInitial(unittest.TestCase):

    def test_profile(self):
        """Test 4: exp(-p) on the right, exp(-alpha_neg*|p|) on the left"""
        grid = build_pgrid(-2.0, 6.0, -1.0, 8)
        w = warp_initial(np.array([1.0, 2.0]), grid, alpha_neg=3.0)

        self.assertEqual(w.values.shape, (2, 8))
        self.assertEqual(w.space, "physical")
        self.assertAlmostEqual(w.values[0, 0], math.exp(-6.0))
        self.assertAlmostEqual(w.values[1, 2], 2.0)
        self.assertAlmostEqual(w.values[1, 4], 2.0 * math.exp(-2.0))

    def test_alpha_below_one(self):
        """Test 5: alpha_neg < 1 is rejected"""
        grid = build_pgrid(-2.0, 6.0, -1.0, 8)
        with self.assertRaises(GridError):
            warp_initial([1.0], grid, alpha_neg=0.5)

    def test_field_validation(self):
        """Test 6: WarpedField needs 2-D values and a known space"""
        with self.assertRaises(GridError):
            WarpedField(np.ones(4))
        with self.assertRaises(GridError):
            WarpedField(np.ones((1, 4)), space="spectral")


class TestTransform(unittest.TestCase):

    def setUp(self):
        self.grid = build_pgrid(-3.0, 5.0, -1.0, 16)
        self.plan = TransformPlan(self.grid)
        rng = np.random.default_rng(0)
        self.values = rng.standard_normal((3, 16)) + 1j * rng.standard_normal((3, 16))

    def test_fft_matches_basis(self):
        """Test 7: FFT route applies exactly Phi^{-1} and Phi"""
        forward = self.plan.forward(self.values)
        np.testing.assert_allclose(forward, self.values @ self.plan.inverse_basis().T, atol=1e-12)

        inverse = self.plan.inverse(self.values)
        np.testing.assert_allclose(inverse, self.values @ self.plan.basis().T, atol=1e-12)

    def test_basis_is_inverse(self):
        """Test 8: Phi^{-1} Phi = I"""
        product = self.plan.inverse_basis() @ self.plan.basis()
        np.testing.assert_allclose(product, np.eye(16), atol=1e-12)

    def test_round_trip(self):
        """Test 9: from_fourier(to_fourier(w)) = w"""
        w = WarpedField(self.values)
        w_tilde = to_fourier(w, self.plan)

        self.assertEqual(w_tilde.space, "mode")
        np.testing.assert_allclose(from_fourier(w_tilde, self.plan).values, self.values, atol=1e-12)

    def test_space_checks(self):
        """Test 10: Transforms refuse fields in the wrong space or size"""
        with self.assertRaises(GridError):
            from_fourier(WarpedField(self.values), self.plan)
        with self.assertRaises(GridError):
            to_fourier(WarpedField(np.ones((1, 8))), self.plan)


class TestEvolve(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(4)
        self.pair = hermitian_split(random_dissipative_matrix(rng, 3))
        self.grid = build_pgrid(-4.0, 6.0, -1.0, 32)
        self.system = assemble_schrodinger(self.pair, self.grid)
        plan = TransformPlan(self.grid)
        self.w_tilde0 = to_fourier(warp_initial(np.array([1.0, 0.5, -0.25]), self.grid, 10.0), plan)

    def test_blocks_are_anti_hermitian(self):
        """Test 11: i*B_l is Hermitian and apply() matches the blocks"""
        for k in (0, 7, 31):
            B = np.asarray(self.system.block(k))
            np.testing.assert_allclose(1j * B, (1j * B).conj().T, atol=1e-13)

        applied = self.system.apply(self.w_tilde0.values)
        for k, block in enumerate(self.system.iter_blocks()):
            np.testing.assert_allclose(applied[:, k], np.asarray(block) @ self.w_tilde0.values[:, k], atol=1e-12)

    def test_hamiltonian_is_hermitian(self):
        """Test 12: The full H = H1 ⊗ D_mu - H2 ⊗ I is Hermitian"""
        H = self.system.hamiltonian().toarray()
        self.assertEqual(H.shape, (3 * 32, 3 * 32))
        np.testing.assert_allclose(H, H.conj().T, atol=1e-13)

    def test_exact_exponential_conserves_norm(self):
        """Test 13: exp(T*B_l) is unitary mode by mode"""
        out = evolve(self.system, self.w_tilde0, 1.0, 1, "exact_block_exponential")

        np.testing.assert_allclose(
            np.linalg.norm(out.values, axis=0), np.linalg.norm(self.w_tilde0.values, axis=0), rtol=1e-12
        )

    def test_backward_euler_non_expansive(self):
        """Test 14: Backward Euler never grows a mode"""
        out = evolve(self.system, self.w_tilde0, 1.0, 20, "backward_euler")

        growth = np.linalg.norm(out.values, axis=0) - np.linalg.norm(self.w_tilde0.values, axis=0)
        self.assertTrue(np.all(growth <= 1e-13))

    def test_zero_time_returns_input(self):
        """Test 15: T = 0 hands back the initial field unchanged"""
        out = evolve(self.system, self.w_tilde0, 0.0, 10, "backward_euler")

        np.testing.assert_array_equal(out.values, self.w_tilde0.values)
        self.assertIsNot(out.values, self.w_tilde0.values)

    def test_invalid_evolution(self):
        """Test 16: Unknown scheme and physical-space input are rejected"""
        with self.assertRaises(ConfigError):
            evolve(self.system, self.w_tilde0, 1.0, 10, "crank_nicolson")
        with self.assertRaises(GridError):
            evolve(self.system, WarpedField(self.w_tilde0.values), 1.0, 10, "backward_euler")

    def test_time_dependent_with_frozen_matrix(self):
        """Test 17: The stacked time-dependent path equals per-mode BE for a constant pair"""
        stacked = evolve_time_dependent(lambda t: self.pair, self.grid, self.w_tilde0, 1.0, 10)
        per_mode = evolve(self.system, self.w_tilde0, 1.0, 10, "backward_euler")

        np.testing.assert_allclose(stacked.values, per_mode.values, atol=1e-12)


class TestLeftBoundary(unittest.TestCase):

    def test_heat_dirichlet_value(self):
        """Test 18: Heat on [0,10] with 64 interior nodes and T = 1/pi^2 gives L = -18.1233"""
        mesh = Mesh1D(0.0, 10.0, 65)
        pair = hermitian_split(laplacian_1d(64, mesh.dx))
        L = estimate_left_boundary(pair, 1.0 / math.pi ** 2, -1.0)

        self.assertAlmostEqual(L, -18.1233, delta=5e-4)

    def test_eigen_bound_is_tighter(self):
        """Test 19: The eigenvalue speed never exceeds the Gershgorin speed"""
        mesh = Mesh1D(0.0, 10.0, 65)
        pair = hermitian_split(laplacian_1d(64, mesh.dx))

        self.assertLessEqual(left_moving_speed(pair, "eigen"), left_moving_speed(pair, "gershgorin"))
        self.assertGreaterEqual(
            estimate_left_boundary(pair, 0.1, -1.0, "eigen"), estimate_left_boundary(pair, 0.1, -1.0)
        )

    def test_zero_time_and_bad_method(self):
        """Test 20: T = 0 returns L0; unknown bounds are configuration errors"""
        pair = hermitian_split(-np.eye(2))
        self.assertEqual(estimate_left_boundary(pair, 0.0, -1.5), -1.5)
        self.assertAlmostEqual(estimate_left_boundary(pair, 2.0, -1.0), -3.0)
        with self.assertRaises(ConfigError):
            left_moving_speed(pair, "power")


class TestRecovery(unittest.TestCase):

    def setUp(self):
        self.grid = PGrid(L=-5.0, R=10.0, L0=-1.0, Np=256)
        self.u0 = np.array([1.0, -2.0 + 1j])
        self.w0 = warp_initial(self.u0, self.grid, 10.0)

    def test_point_recovery_of_initial_data(self):
        """Test 21: exp(p_k)*w0(p_k) returns u0 at any positive node"""
        for p in (0.0, 1.0, 4.0):
            k = self.grid.first_node_at_or_above(p)
            np.testing.assert_allclose(recover_point(self.w0, self.grid, k), self.u0, atol=1e-12)

    def test_integral_recovery_of_initial_data(self):
        """Test 22: The Riemann sum over p >= 0 recovers u0 to O(dp)"""
        u = recover_integral(self.w0, self.grid)
        np.testing.assert_allclose(u, self.u0, atol=self.grid.dp * abs(self.u0).max())

    def test_recovery_errors(self):
        """Test 23: Non-positive nodes and mode-space fields are refused"""
        k_negative = int(np.argmax(self.grid.nodes > -1.0))
        with self.assertRaises(GridError):
            recover_point(self.w0, self.grid, k_negative)
        with self.assertRaises(GridError):
            recover_point(WarpedField(self.w0.values, space="mode"), self.grid, 200)
        with self.assertRaises(GridError):
            recover_integral(WarpedField(self.w0.values, space="mode"), self.grid)

    def test_threshold(self):
        """Test 24: Clearance of max(p_kink, 4*dp) past a positive kink"""
        self.assertEqual(recovery_threshold(0.0, 0.1), 0.0)
        self.assertAlmostEqual(recovery_threshold(0.5, 0.1), 1.0)
        self.assertAlmostEqual(recovery_threshold(0.1, 0.1), 0.5)

    def test_tail_fraction(self):
        """Test 25: Warped data with fast left decay keeps the left boundary clean"""
        self.assertLess(left_tail_fraction(self.w0), 1e-12)

        values = np.zeros((1, 20))
        values[0, 0] = 1.0
        self.assertEqual(left_tail_fraction(WarpedField(values)), 1.0)
        self.assertEqual(left_tail_fraction(WarpedField(np.zeros((1, 20)))), 0.0)


if __name__ == '__main__':
    unittest.main(verbosity=2)

#!/usr/bin/env python3
"""
Test linear ODE systems: Hermitian split, augmentation, dissipativity and
the direct integrator used as the reference solver
"""

import math
import sys
import unittest
from pathlib import Path

import numpy as np
import scipy.sparse as sp

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from ode_core import (
    LinearODESystem,
    Trajectory,
    augment,
    augmentation_scale,
    check_dissipativity,
    direct_integrate,
    forward_euler_matrix_free,
    gershgorin_left_speed,
    hermitian_split,
    min_eigenvalue,
)
from pde_builders import Mesh1D, laplacian_1d
from utils.errors import ConfigError, GridError, SingularSolveError
from tests.test_utils import random_dissipative_matrix, random_dissipative_system


class TestHermitianSplit(unittest.TestCase):

    def test_dense_reconstruction(self):
        """Test 1: H1 + iH2 rebuilds A and both parts are Hermitian"""
        rng = np.random.default_rng(1)
        A = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        pair = hermitian_split(A)

        np.testing.assert_allclose(pair.reconstruct(), A, atol=1e-12)
        np.testing.assert_allclose(pair.H1, pair.H1.conj().T, atol=1e-14)
        np.testing.assert_allclose(pair.H2, pair.H2.conj().T, atol=1e-14)

    def test_sparse_stays_sparse(self):
        """Test 2: Sparse input gives sparse Hermitian parts"""
        A = sp.random(20, 20, density=0.2, random_state=3, format="csr") * (1 + 2j)
        pair = hermitian_split(A)

        self.assertTrue(pair.is_sparse)
        np.testing.assert_allclose(pair.reconstruct().toarray(), A.toarray(), atol=1e-12)

    def test_real_skew_matrix_is_purely_oscillatory(self):
        """Test 3: A real antisymmetric matrix has H1 = 0"""
        A = np.array([[0.0, 1.0], [-1.0, 0.0]])
        pair = hermitian_split(A)

        np.testing.assert_allclose(pair.H1, np.zeros((2, 2)))
        np.testing.assert_allclose(pair.H2, np.array([[0, -1j], [1j, 0]]))

    def test_non_square_rejected(self):
        """Test 4: Non-square matrices raise GridError"""
        with self.assertRaises(GridError):
            hermitian_split(np.ones((2, 3)))


class TestLinearODESystem(unittest.TestCase):

    def test_shape_mismatch(self):
        """Test 1: u0 of the wrong length is rejected"""
        with self.assertRaises(GridError):
            LinearODESystem.constant_system(np.eye(3), np.ones(2))

    def test_b_flags(self):
        """Test 2: None, vector and callable b set the zero/constant flags"""
        A = -np.eye(2)
        self.assertTrue(LinearODESystem.constant_system(A, [1, 0]).zero_b)

        fixed = LinearODESystem.constant_system(A, [1, 0], b=[1.0, 2.0])
        self.assertFalse(fixed.zero_b)
        self.assertTrue(fixed.b_constant)
        np.testing.assert_allclose(fixed.b_at(3.0), [1.0, 2.0])

        moving = LinearODESystem.constant_system(A, [1, 0], b=lambda t: np.array([t, 0.0]))
        self.assertFalse(moving.b_constant)
        np.testing.assert_allclose(moving.b_at(0.5), [0.5, 0.0])

    def test_trajectory_times_increase(self):
        """Test 3: Trajectory rejects non-increasing times"""
        with self.assertRaises(GridError):
            Trajectory(times=np.array([0.0, 0.0]), states=np.zeros((2, 1)))


class TestAugment(unittest.TestCase):

    def test_augmented_backward_euler_matches_original(self):
        """Test 1: Direct BE of the augmented system reproduces the inhomogeneous run"""
        rng = np.random.default_rng(7)
        system = random_dissipative_system(rng, 4, with_b=True)
        for scale in (1.0, 5.0):
            augmented = augment(system, scale)
            self.assertEqual(augmented.n, 5)
            self.assertTrue(augmented.zero_b)

            plain = direct_integrate(system, "backward_euler", 1.0, 40)
            lifted = direct_integrate(augmented, "backward_euler", 1.0, 40)

            np.testing.assert_allclose(lifted.final[:-1], plain.final, rtol=1e-10, atol=1e-12)
            # the auxiliary component never moves
            np.testing.assert_allclose(lifted.states[:, -1], scale, atol=1e-12)

    def test_time_dependent_b_stays_time_dependent(self):
        """Test 2: A callable b yields a time-dependent augmented matrix"""
        system = LinearODESystem.constant_system(-np.eye(2), [1, 1], b=lambda t: np.array([math.sin(t), 0.0]))
        augmented = augment(system)

        self.assertFalse(augmented.constant)
        self.assertAlmostEqual(augmented.A_at(1.0)[0, 2], math.sin(1.0))

    def test_sparse_augmentation(self):
        """Test 3: Sparse systems augment to sparse matrices"""
        mesh = Mesh1D(0.0, 1.0, 8)
        system = LinearODESystem.constant_system(laplacian_1d(7, mesh.dx), np.ones(7), b=np.ones(7))
        augmented = augment(system, augmentation_scale(system, [0.0]))

        self.assertTrue(augmented.is_sparse)
        self.assertAlmostEqual(augmented.u0[-1], math.sqrt(7))
        self.assertAlmostEqual(abs(augmented.A_at(0.0)[0, 7]), 1 / math.sqrt(7))

    def test_bad_scale(self):
        """Test 4: Non-positive scale is rejected"""
        system = LinearODESystem.constant_system(-np.eye(1), [1.0], b=[1.0])
        with self.assertRaises(GridError):
            augment(system, 0.0)

    def test_auxiliary_component_conserved_with_time_dependent_b(self):
        """Test 5: Both direct schemes hold the auxiliary component at its scale at every output time"""
        system = LinearODESystem.constant_system(
            np.array([[-1.0, 0.3], [0.0, -2.0]]), [1.0, 0.5],
            b=lambda t: np.array([math.cos(t), 2.0 * math.sin(3 * t)]),
        )
        scale = augmentation_scale(system, np.linspace(0.0, 2.0, 41))
        augmented = augment(system, scale)

        for scheme in ("backward_euler", "forward_euler"):
            trajectory = direct_integrate(augmented, scheme, 2.0, 200)
            self.assertEqual(trajectory.states.shape, (201, 3))
            self.assertLess(np.max(np.abs(trajectory.states[:, -1] / scale - 1.0)), 1e-10, scheme)


class TestDissipativity(unittest.TestCase):

    def test_dissipative_matrix(self):
        """Test 1: Random dissipative matrices pass the check"""
        rng = np.random.default_rng(11)
        report = check_dissipativity(hermitian_split(random_dissipative_matrix(rng, 6)))
        self.assertTrue(report.ok)
        self.assertLessEqual(report.max_eigenvalue, -0.5 + 1e-12)

    def test_growing_matrix_flagged(self):
        """Test 2: A growing system is reported, not raised"""
        report = check_dissipativity(hermitian_split(np.eye(3)))
        self.assertFalse(report.ok)
        self.assertAlmostEqual(report.max_eigenvalue, 1.0)

    def test_gershgorin_bounds_the_spectrum(self):
        """Test 3: The Gershgorin speed is at least |lambda_min(H1)|"""
        mesh = Mesh1D(0.0, 10.0, 65)
        H1 = hermitian_split(laplacian_1d(64, mesh.dx)).H1
        speed = gershgorin_left_speed(H1)

        self.assertGreaterEqual(speed, -min_eigenvalue(H1) - 1e-9)
        self.assertAlmostEqual(speed, 4 / mesh.dx ** 2, places=9)


class TestDirectIntegrate(unittest.TestCase):

    def test_scalar_schemes(self):
        """Test 1: Scalar decay reproduces the closed-form Euler iterates"""
        system = LinearODESystem.constant_system(np.array([[-1.0]]), [1.0])

        be = direct_integrate(system, "backward_euler", 1.0, 10)
        fe = direct_integrate(system, "forward_euler", 1.0, 10)

        self.assertAlmostEqual(be.final[0].real, 1.1 ** -10, places=12)
        self.assertAlmostEqual(fe.final[0].real, 0.9 ** 10, places=12)
        self.assertEqual(len(be.times), 11)
        self.assertEqual(be.times[-1], 1.0)

    def test_time_dependent_matrix(self):
        """Test 2: du/dt = -(1+t)u reaches exp(-1.5) at t = 1"""
        system = LinearODESystem.time_dependent(lambda t: np.array([[-(1.0 + t)]]), [1.0])
        trajectory = direct_integrate(system, "backward_euler", 1.0, 100)

        self.assertAlmostEqual(trajectory.final[0].real, math.exp(-1.5), delta=2e-2)

    def test_backward_euler_non_expansive(self):
        """Test 3: BE never increases the norm of a dissipative homogeneous system"""
        rng = np.random.default_rng(5)
        system = random_dissipative_system(rng, 5)
        norms = np.linalg.norm(direct_integrate(system, "backward_euler", 2.0, 50).states, axis=1)

        self.assertTrue(np.all(np.diff(norms) <= 1e-14))

    def test_singular_solve(self):
        """Test 4: A singular BE matrix raises SingularSolveError with the step"""
        for A in (np.eye(2), sp.identity(2, format="csr")):
            system = LinearODESystem.constant_system(A, [1.0, 1.0])
            with self.assertRaises(SingularSolveError) as context:
                direct_integrate(system, "backward_euler", 1.0, 1)
            self.assertEqual(context.exception.step, 1)

    def test_invalid_arguments(self):
        """Test 5: Unknown scheme, T <= 0 and Nt < 1 are configuration errors"""
        system = LinearODESystem.constant_system(-np.eye(1), [1.0])
        with self.assertRaises(ConfigError):
            direct_integrate(system, "rk4", 1.0, 10)
        with self.assertRaises(ConfigError):
            direct_integrate(system, "backward_euler", 0.0, 10)
        with self.assertRaises(ConfigError):
            direct_integrate(system, "backward_euler", 1.0, 0)

    def test_matrix_free_matches_forward_euler(self):
        """Test 6: Matrix-free forward Euler equals the matrix version"""
        rng = np.random.default_rng(2)
        A = random_dissipative_matrix(rng, 4)
        system = LinearODESystem.constant_system(A, np.ones(4))
        steps = []

        final = forward_euler_matrix_free(
            lambda u: A @ u, system.u0, 0.5, 25, on_step=lambda m, t, u: steps.append(m)
        )
        reference = direct_integrate(system, "forward_euler", 0.5, 25).final

        np.testing.assert_allclose(final, reference, atol=1e-13)
        self.assertEqual(steps, list(range(1, 26)))


if __name__ == '__main__':
    unittest.main(verbosity=2)

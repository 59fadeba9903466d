#!/usr/bin/env python3
"""
Test the Liouville solver: phase mesh, Hamiltonian-preserving interface flux,
right-hand side, assembled matrix and CFL step
"""

import math
import sys
import unittest
from pathlib import Path

import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from liouville import (
    FluxPlan,
    PhaseField,
    PhaseMesh,
    assemble_liouville_matrix,
    boundary_mass,
    cfl_timestep,
    hp_flux_x,
    interface_relation_residual,
    liouville_rhs,
    refracted_velocity_2d,
    transmission_coefficients,
    xi_flux_difference,
    xi_upwind_difference,
)
from ode_core import forward_euler_matrix_free
from oracles import optics_initial
from utils.errors import ConfigError, GridError, TotalInternalReflectionError


def optics_mesh(N=16, M=16):
    return PhaseMesh.two_speed((-4.0, 4.0), N, (-4.0, 4.0), M, 0.6, 0.2)


def graded_mesh():
    """Continuous speed 1 -> 2 over four cells, so every cell has a speed gradient."""
    speeds = np.linspace(1.0, 2.0, 5)
    return PhaseMesh(0.0, 1.0, 4, -2.0, 2.0, 8, speeds, speeds)


class TestPhaseMesh(unittest.TestCase):

    def test_symmetric_velocities(self):
        """Test 1: xi-centres are exactly antisymmetric, mirror_index finds -xi, edges span the ranges"""
        mesh = PhaseMesh.uniform((0.0, 1.0), 4, (-3.0, 3.0), 10, lambda x: np.ones_like(x))

        np.testing.assert_array_equal(mesh.xi_centers[::-1], -mesh.xi_centers)
        self.assertEqual(mesh.mirror_index(2), 7)
        self.assertAlmostEqual(mesh.xi_centers[5], 0.3)
        np.testing.assert_allclose(mesh.x_edges, [0.0, 0.25, 0.5, 0.75, 1.0])
        self.assertAlmostEqual(mesh.xi_edges[0], -3.0)
        self.assertAlmostEqual(mesh.xi_edges[-1], 3.0)
        self.assertEqual(mesh.xi_edges.shape, (11,))

    def test_two_speed_edges(self):
        """Test 2: The speed jump sits on the middle edge"""
        mesh = optics_mesh(8, 8)

        self.assertEqual(mesh.c_left[4], 0.6)
        self.assertEqual(mesh.c_right[4], 0.2)
        np.testing.assert_allclose(mesh.cell_speed, [0.6] * 4 + [0.2] * 4)
        np.testing.assert_array_equal(mesh.speed_gradient, 0.0)

    def test_invalid_meshes(self):
        """Test 3: Odd M, lopsided xi-range, bad speeds and misplaced jumps"""
        ones = np.ones(5)
        with self.assertRaises(GridError):
            PhaseMesh(0.0, 1.0, 4, -1.0, 1.0, 7, ones, ones)
        with self.assertRaises(GridError):
            PhaseMesh(0.0, 1.0, 4, -1.0, 2.0, 8, ones, ones)
        with self.assertRaises(GridError):
            PhaseMesh(0.0, 1.0, 4, -1.0, 1.0, 8, ones, np.zeros(5))
        with self.assertRaises(GridError):
            PhaseMesh.two_speed((-4.0, 4.0), 8, (-4.0, 4.0), 8, 0.6, 0.2, position=0.5)
        with self.assertRaises(GridError):
            PhaseField(np.ones(4))


class TestInterfaceCoefficients(unittest.TestCase):

    def test_transmission(self):
        """Test 4: c = 0.6 -> 0.2 gives a_R = 0.25 and a_T = 0.75"""
        coefficients = transmission_coefficients(0.6, 0.2)
        self.assertAlmostEqual(coefficients.a_R, 0.25)
        self.assertAlmostEqual(coefficients.a_T, 0.75)
        self.assertEqual(transmission_coefficients(1.0, 1.0).a_R, 0.0)
        with self.assertRaises(GridError):
            transmission_coefficients(-1.0, 1.0)

    def test_refraction_2d(self):
        """Test 5: rho = 2 with xi = (1, 1) refracts to sqrt(7)"""
        self.assertAlmostEqual(refracted_velocity_2d(1.0, 1.0, 2.0), math.sqrt(7.0))
        self.assertAlmostEqual(refracted_velocity_2d(0.5, 0.0, 1.0), 0.5)

    def test_total_internal_reflection(self):
        """Test 6: A negative radicand is reported, not clipped"""
        with self.assertRaises(TotalInternalReflectionError):
            refracted_velocity_2d(0.1, 1.0, 0.5)
        with self.assertRaises(ConfigError):
            refracted_velocity_2d(0.0, 1.0, 2.0)


class TestHamiltonianPreservingFlux(unittest.TestCase):

    def setUp(self):
        self.mesh = optics_mesh()
        self.plan = FluxPlan.build(self.mesh)
        self.edge = 8

    def test_transmitted_part_uses_refracted_velocity(self):
        """Test 7: A field linear in xi on the left is transmitted at xi/3"""
        values = np.zeros(self.mesh.shape)
        values[self.edge - 1] = self.mesh.xi_centers
        _, F_minus = self.plan.evaluate(values)

        positive = self.mesh.xi_centers > 0
        np.testing.assert_allclose(F_minus[self.edge, positive], 0.25 * self.mesh.xi_centers[positive], atol=1e-14)

    def test_reflected_part_uses_mirror(self):
        """Test 8: A field on the right side is reflected with a_R"""
        values = np.zeros(self.mesh.shape)
        values[self.edge, self.mesh.xi_centers < 0] = 1.0
        _, F_minus = self.plan.evaluate(values)

        np.testing.assert_allclose(F_minus[self.edge, self.mesh.xi_centers > 0], 0.25)

    def test_relation_holds_everywhere(self):
        """Test 9: Plan fluxes agree with an independent interface evaluation"""
        rng = np.random.default_rng(9)
        field = PhaseField(rng.random(self.mesh.shape))

        self.assertLess(interface_relation_residual(field, self.mesh, self.plan), 1e-13)
        self.assertGreater(self.plan.off_grid, 0)

    def test_constant_speed_is_plain_upwind(self):
        """Test 10: Without a jump both sides of an edge see the upwind cell"""
        mesh = PhaseMesh.uniform((0.0, 1.0), 6, (-1.0, 1.0), 4, lambda x: np.full_like(x, 1.5))
        field = PhaseField(np.arange(24, dtype=float).reshape(6, 4))

        self.assertEqual(hp_flux_x(field, 3, 3, mesh), (field.values[2, 3], field.values[2, 3]))
        self.assertEqual(hp_flux_x(field, 3, 0, mesh), (field.values[3, 0], field.values[3, 0]))
        with self.assertRaises(GridError):
            hp_flux_x(field, 7, 0, mesh)


class TestLiouvilleOperator(unittest.TestCase):

    def test_constant_speed_upwind(self):
        """Test 11: Constant speed reduces to upwind transport with zero inflow"""
        mesh = PhaseMesh.uniform((0.0, 1.0), 6, (-1.0, 1.0), 4, lambda x: np.full_like(x, 1.5))
        rng = np.random.default_rng(1)
        f = rng.random(mesh.shape)
        rhs = liouville_rhs(PhaseField(f), mesh).values

        padded = np.pad(f, ((1, 1), (0, 0)))
        expected_right = -(1.5 / mesh.dx) * (f - padded[:-2])
        expected_left = (1.5 / mesh.dx) * (padded[2:] - f)
        positive = mesh.xi_centers > 0
        np.testing.assert_allclose(rhs[:, positive], expected_right[:, positive], atol=1e-12)
        np.testing.assert_allclose(rhs[:, ~positive], expected_left[:, ~positive], atol=1e-12)

    def test_matrix_matches_rhs(self):
        """Test 12: The assembled matrix reproduces the matrix-free operator"""
        rng = np.random.default_rng(12)
        for mesh in (optics_mesh(), graded_mesh()):
            f = rng.standard_normal(mesh.shape)
            system = assemble_liouville_matrix(mesh)
            np.testing.assert_allclose(
                system.A_at(0.0) @ f.reshape(-1), liouville_rhs(PhaseField(f), mesh).flatten(), atol=1e-12
            )
            self.assertEqual(system.n, mesh.size)

    def test_linearity(self):
        """Test 13: The right-hand side is linear in f"""
        mesh = optics_mesh()
        rng = np.random.default_rng(13)
        f, g = rng.random(mesh.shape), rng.random(mesh.shape)
        combined = liouville_rhs(PhaseField(2.0 * f - 3.0 * g), mesh).values
        separate = 2.0 * liouville_rhs(PhaseField(f), mesh).values - 3.0 * liouville_rhs(PhaseField(g), mesh).values

        np.testing.assert_allclose(combined, separate, atol=1e-12)

    def test_xi_differences(self):
        """Test 14: Single-cell xi differences match the vectorised ones"""
        mesh = graded_mesh()
        rng = np.random.default_rng(14)
        field = PhaseField(rng.random(mesh.shape))
        whole = xi_upwind_difference(field.values, mesh)

        for i, j in ((0, 0), (1, 3), (3, 7)):
            self.assertAlmostEqual(xi_flux_difference(field, i, j, mesh), whole[i, j])

    def test_shape_and_size_checks(self):
        """Test 15: Mismatched fields and oversize assemblies are refused"""
        mesh = optics_mesh()
        with self.assertRaises(GridError):
            liouville_rhs(PhaseField(np.zeros((4, 4))), mesh)
        with self.assertRaises(GridError):
            assemble_liouville_matrix(mesh, size_cap=100)

    def test_positivity_under_cfl(self):
        """Test 16: Forward Euler at the CFL step keeps the optics data non-negative"""
        mesh = optics_mesh(32, 32)
        plan = FluxPlan.build(mesh)
        initial = PhaseField.sample(mesh, optics_initial)
        dt = cfl_timestep(mesh).dt
        Nt = 20
        final = forward_euler_matrix_free(
            lambda values: liouville_rhs(PhaseField(values), mesh, plan).values, initial.values, dt * Nt, Nt
        )

        self.assertGreater(initial.values.sum(), 0.0)
        self.assertGreaterEqual(final.min(), -1e-12)
        self.assertLessEqual(final.max(), 1.0 + 1e-12)
        self.assertAlmostEqual(boundary_mass(initial.values), 0.0)


class TestCfl(unittest.TestCase):

    def test_two_speed_steps(self):
        """Test 17: Transport bound 1/0.6 and the direct-upwind bound dx*dxi/(0.4*3.5)"""
        mesh = optics_mesh(8, 8)
        report = cfl_timestep(mesh)

        self.assertAlmostEqual(report.dt, 1 / 0.6)
        self.assertEqual(report.dt_xi, math.inf)
        self.assertAlmostEqual(report.dt_direct_upwind, 1 / (0.4 * 3.5))
        self.assertAlmostEqual(cfl_timestep(mesh, safety=0.5).dt, 0.5 / 0.6)

    def test_graded_speed_xi_bound(self):
        """Test 18: A speed gradient adds the xi bound"""
        report = cfl_timestep(graded_mesh())
        # dx = 0.25, dxi = 0.5, max gradient 0.25, max |xi| = 1.75
        self.assertAlmostEqual(report.dt_xi, 0.25 * 0.5 / (0.25 * 1.75))
        self.assertAlmostEqual(report.dt_transport, 0.25 / 1.875)
        self.assertEqual(report.dt, min(report.dt_xi, report.dt_transport))

    def test_safety_range(self):
        """Test 19: Safety factors outside (0, 1] are configuration errors"""
        with self.assertRaises(ConfigError):
            cfl_timestep(optics_mesh(), safety=0.0)
        with self.assertRaises(ConfigError):
            cfl_timestep(optics_mesh(), safety=1.5)


if __name__ == '__main__':
    unittest.main(verbosity=2)

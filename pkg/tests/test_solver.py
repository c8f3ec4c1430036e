"""Discretization, eigensolve, self-consistency, and convergence studies."""
import math
from dataclasses import replace

import numpy as np
import pytest

from kgbound.core import PhysicalParams, PotentialSpec, RadialGrid
from kgbound.coulomb import energy_level
from kgbound.errors import NoConvergence, StateNotFound, UnsupportedCombination
from kgbound.solver import (
    SolveMode,
    SolveRequest,
    convergence_study,
    default_solver_grid,
    discretize_operator,
    effective_radial_equation,
    inner_eigensolve,
    richardson_extrapolate,
    singular_exponent,
    solve_self_consistent,
)

P_03 = PhysicalParams(alpha=0.3)
P_01 = PhysicalParams(alpha=0.1)


def coulomb_request(p, n, l, n_points=3000, **kw):
    grid = default_solver_grid(
        SolveMode.KG_VECTOR, PotentialSpec.coulomb(), p, n, l, n_points=n_points)
    return SolveRequest(mode=SolveMode.KG_VECTOR, potential=PotentialSpec.coulomb(),
                        n=n, l=l, grid=grid, **kw)


class TestModeChecks:
    def test_scalar_channel_rejected_where_absent(self):
        for mode in (SolveMode.SCHRODINGER, SolveMode.KG_VECTOR):
            with pytest.raises(UnsupportedCombination):
                SolveRequest(mode=mode, potential=PotentialSpec.equal_coulomb(),
                             n=1, l=0) and solve_self_consistent(
                    SolveRequest(mode=mode, potential=PotentialSpec.equal_coulomb(),
                                 n=1, l=0), P_03)

    def test_equal_mode_requires_matching_parts(self):
        for pot in (PotentialSpec.coulomb(), PotentialSpec.hulthen(0.2),
                    PotentialSpec(None, None)):
            with pytest.raises(UnsupportedCombination):
                solve_self_consistent(
                    SolveRequest(mode=SolveMode.KG_EQUAL, potential=pot, n=1, l=0),
                    P_03)


class TestEffectiveEquation:
    def test_schrodinger_coefficients(self):
        A, v_eff = effective_radial_equation(
            SolveMode.SCHRODINGER, PotentialSpec.coulomb(), P_03, P_03.rest_mass, 1)
        assert A == pytest.approx(P_03.hbar ** 2 / (2.0 * P_03.rest_mass), rel=1e-15)
        r = np.array([0.7, 2.0])
        want = (2.0 * P_03.hbar ** 2 / (2.0 * P_03.rest_mass) / r ** 2
                - P_03.e_squared / r)
        np.testing.assert_allclose(v_eff(r), want, rtol=1e-14)

    def test_kg_vector_coefficients(self):
        m_sys = 0.95
        A, v_eff = effective_radial_equation(
            SolveMode.KG_VECTOR, PotentialSpec.coulomb(), P_03, m_sys, 0)
        mp = P_03.rest_mass + m_sys
        assert A == pytest.approx(P_03.hbar ** 2 / mp, rel=1e-15)
        r = np.array([0.5, 1.0, 5.0])
        u = -P_03.e_squared / r
        want = 2.0 * m_sys * u / mp - u ** 2 / (mp * P_03.c ** 2)
        np.testing.assert_allclose(v_eff(r), want, rtol=1e-14)

    def test_kg_equal_doubles_potential(self):
        m_sys = 0.9
        A, v_eff = effective_radial_equation(
            SolveMode.KG_EQUAL, PotentialSpec.equal_coulomb(), P_03, m_sys, 0)
        r = np.array([0.4, 3.0])
        np.testing.assert_allclose(
            v_eff(r), 2.0 * (-P_03.e_squared / r), rtol=1e-14)
        assert A == pytest.approx(P_03.hbar ** 2 / (P_03.rest_mass + m_sys),
                                  rel=1e-15)


class TestSingularExponent:
    def test_schrodinger_integer(self):
        s = singular_exponent(SolveMode.SCHRODINGER, PotentialSpec.coulomb(), P_03, 2)
        assert s == 3.0

    def test_vector_coupling_lowers_exponent(self):
        # l = 0, Z*alpha = 0.3: s = 1/2 + sqrt(1/4 - 0.09) = 0.9 exactly
        s = singular_exponent(SolveMode.KG_VECTOR, PotentialSpec.coulomb(), P_03, 0)
        assert s == pytest.approx(0.9, abs=2e-16)

    def test_equal_mode_cancels(self):
        s = singular_exponent(SolveMode.KG_EQUAL, PotentialSpec.equal_coulomb(),
                              P_03, 1)
        assert s == 2.0


class TestDiscretizeOperator:
    def test_plain_stencil_when_exponent_integer(self):
        grid = RadialGrid.uniform(30.0, 200)
        A, v_eff = effective_radial_equation(
            SolveMode.SCHRODINGER, PotentialSpec.coulomb(), P_01, P_01.rest_mass, 1)
        op = discretize_operator(A, v_eff, grid, 2.0 * P_01.rest_mass, 2.0)
        kin = A / grid.step ** 2
        np.testing.assert_array_equal(op.offdiag, np.full(199, -kin))
        # correction term vanishes identically for integer exponents <= 3
        np.testing.assert_array_equal(op.diag, 2.0 * kin + v_eff(grid.points))

    def test_corrected_diagonal_first_entry(self):
        grid = RadialGrid.uniform(30.0, 100)
        A, v_eff = effective_radial_equation(
            SolveMode.KG_VECTOR, PotentialSpec.coulomb(), P_03, 0.95, 0)
        s = 0.9
        op = discretize_operator(A, v_eff, grid, P_03.rest_mass + 0.95, s)
        kin = A / grid.step ** 2
        want_shift = kin * (2.0 ** s - 2.0 - s * (s - 1.0))
        got_shift = op.diag[0] - (2.0 * kin + v_eff(grid.points[:1])[0])
        assert got_shift == pytest.approx(want_shift, rel=1e-12)

    def test_correction_decays_into_the_bulk(self):
        grid = RadialGrid.uniform(30.0, 500)
        A, v_eff = effective_radial_equation(
            SolveMode.KG_VECTOR, PotentialSpec.coulomb(), P_03, 0.95, 0)
        op = discretize_operator(A, v_eff, grid, P_03.rest_mass + 0.95, 0.9)
        kin = A / grid.step ** 2
        shift = np.abs(op.diag - (2.0 * kin + v_eff(grid.points)))
        assert shift[-1] < 1e-6 * shift[0]


class TestInnerEigensolve:
    def test_schrodinger_hydrogen_levels(self):
        p = P_01
        grid = RadialGrid.uniform(15.0 * 4 * p.bohr_radius(), 6000)
        A, v_eff = effective_radial_equation(
            SolveMode.SCHRODINGER, PotentialSpec.coulomb(), p, p.rest_mass, 0)
        op = discretize_operator(A, v_eff, grid, 2.0 * p.rest_mass,
                                 singular_exponent(SolveMode.SCHRODINGER,
                                                   PotentialSpec.coulomb(), p, 0))
        for n in (1, 2):
            e, u = inner_eigensolve(op, n - 1)
            ref = -p.z_alpha ** 2 * p.rest_energy / (2.0 * n ** 2)
            # single fixed grid: discretization error ~ (h/a0)^2 ~ 1e-4
            assert e == pytest.approx(ref, rel=1e-3)
            assert u.shape == grid.points.shape

    def test_eigenvector_normalized_and_oriented(self):
        p = P_01
        grid = RadialGrid.uniform(40.0 * p.bohr_radius(), 2000)
        A, v_eff = effective_radial_equation(
            SolveMode.SCHRODINGER, PotentialSpec.coulomb(), p, p.rest_mass, 0)
        op = discretize_operator(A, v_eff, grid, 2.0 * p.rest_mass, 1.0)
        _, u = inner_eigensolve(op, 1)
        assert np.sum(u ** 2) == pytest.approx(1.0, rel=1e-12)
        first_big = u[np.flatnonzero(np.abs(u) > 1e-8 * np.abs(u).max())[0]]
        assert first_big > 0

    def test_no_bound_state_in_free_potential(self):
        p = P_01
        grid = RadialGrid.uniform(50.0, 500)
        A, v_eff = effective_radial_equation(
            SolveMode.KG_VECTOR, PotentialSpec(None, None), p, p.rest_mass, 0)
        op = discretize_operator(A, v_eff, grid, 2.0 * p.rest_mass, 1.0)
        with pytest.raises(StateNotFound):
            inner_eigensolve(op, 0)


class TestSolveSelfConsistent:
    def test_matches_closed_form_after_extrapolation(self):
        ref = energy_level(P_03, 1, 0)
        e = {}
        for n_pts in (2000, 4000):
            state = solve_self_consistent(coulomb_request(P_03, 1, 0, n_pts), P_03)
            e[n_pts] = state.e_total
        extrap = richardson_extrapolate(e[2000], e[4000])
        assert abs(extrap - ref.e_total) / abs(ref.e_total) < 1e-6

    def test_state_bookkeeping(self):
        state = solve_self_consistent(coulomb_request(P_03, 3, 1, 1500), P_03)
        assert state.node_count == 1
        assert state.qn.n == 3 and state.qn.l == 1
        assert state.system_mass == pytest.approx(
            P_03.rest_mass + state.e_prime / P_03.c ** 2, rel=1e-14)
        assert state.iterations >= 2
        assert state.residual < 1e-12
        r, u = state.radial_samples
        assert r.shape == u.shape
        # physical normalization sum u^2 dr = 1
        assert np.sum(u ** 2) * (r[1] - r[0]) == pytest.approx(1.0, rel=1e-10)

    def test_schrodinger_needs_one_pass(self):
        req = SolveRequest(mode=SolveMode.SCHRODINGER,
                           potential=PotentialSpec.coulomb(), n=1, l=0,
                           grid=RadialGrid.uniform(15.0 * P_01.bohr_radius(), 2000))
        state, trace = solve_self_consistent(req, P_01, with_trace=True)
        assert state.iterations == 1
        assert state.residual == 0.0
        assert trace == []  # no mass feedback, nothing to record

    def test_trace_monotone_after_second_iteration(self):
        state, trace = solve_self_consistent(
            coulomb_request(P_03, 1, 0, 2000), P_03, with_trace=True)
        assert len(trace) == state.iterations
        assert all(b < a for a, b in zip(trace[1:], trace[2:]))

    def test_overtight_tolerance_converges_or_raises(self):
        req = coulomb_request(P_03, 1, 0, 2000, sc_tolerance=1e-15)
        try:
            state = solve_self_consistent(req, P_03)
        except NoConvergence:
            return
        assert state.residual <= 1e-15

    def test_iteration_cap_enforced(self):
        with pytest.raises(NoConvergence):
            solve_self_consistent(
                coulomb_request(P_03, 1, 0, 1000, max_sc_iters=1), P_03)


class TestEqualModeReduction:
    def test_operator_equals_schrodinger_with_half_mass_sum(self):
        # at the converged mass, the kg-equal operator must be entry-exact
        # the schrodinger operator built with mass (m0+m)/2 and potential 2U
        lam = 0.2
        p = P_03
        req = SolveRequest(mode=SolveMode.KG_EQUAL,
                           potential=PotentialSpec.equal_hulthen(lam), n=1, l=0)
        state = solve_self_consistent(req, p)
        m = state.system_mass
        grid = default_solver_grid(req.mode, req.potential, p, 1, 0)

        A_eq, v_eq = effective_radial_equation(
            SolveMode.KG_EQUAL, req.potential, p, m, 0)
        s_eq = singular_exponent(SolveMode.KG_EQUAL, req.potential, p, 0)
        op_eq = discretize_operator(A_eq, v_eq, grid, p.rest_mass + m, s_eq)

        class DoubledPart:
            # 2U with U frozen at the original parameter set: the screened
            # range is stated in the original mass's length unit
            def __init__(self, inner, params):
                self.inner = inner
                self.params = params

            def evaluate(self, r, _params):
                return 2.0 * self.inner.evaluate(r, self.params)

        p_half = replace(p, rest_mass=0.5 * (p.rest_mass + m))
        pot_sch = PotentialSpec(DoubledPart(req.potential.vector_part, p), None)
        A_s, v_s = effective_radial_equation(
            SolveMode.SCHRODINGER, pot_sch, p_half, p_half.rest_mass, 0)
        s_s = singular_exponent(SolveMode.SCHRODINGER, pot_sch, p_half, 0)
        op_s = discretize_operator(A_s, v_s, grid, 2.0 * p_half.rest_mass, s_s)

        assert A_eq == A_s
        assert op_eq.mass_parameter == op_s.mass_parameter
        np.testing.assert_array_equal(op_eq.diag, op_s.diag)
        np.testing.assert_array_equal(op_eq.offdiag, op_s.offdiag)

    def test_screened_ground_state_against_mapped_oracle(self):
        # fixed point of e'(m) with the analytic screened l=0 level at
        # doubled coupling and averaged mass
        lam = 0.2
        p = P_03
        e = {}
        for n_pts in (4000, 8000, 16000):
            grid_ref = default_solver_grid(
                SolveMode.KG_EQUAL, PotentialSpec.equal_hulthen(lam), p, 1, 0,
                n_points=n_pts)
            req = SolveRequest(mode=SolveMode.KG_EQUAL,
                               potential=PotentialSpec.equal_hulthen(lam),
                               n=1, l=0, grid=grid_ref)
            e[n_pts] = solve_self_consistent(req, p).e_prime

        lam_abs = lam / p.bohr_radius()
        e_prev = 0.0
        for _ in range(200):
            m_eff = 0.5 * (p.rest_mass + p.rest_mass + e_prev / p.c ** 2)
            b = 4.0 * m_eff * p.z_number * p.e_squared / (p.hbar ** 2 * lam_abs)
            e_new = -(p.hbar ** 2 * lam_abs ** 2 / (8.0 * m_eff)) * (b - 1.0) ** 2
            if abs(e_new - e_prev) < 1e-16:
                break
            e_prev = e_new
        lvl1a = richardson_extrapolate(e[4000], e[8000])
        lvl1b = richardson_extrapolate(e[8000], e[16000])
        extrap = richardson_extrapolate(lvl1a, lvl1b, order=4)
        assert abs(extrap - e_new) / abs(e_new) < 1e-8


class TestGridsAndStudies:
    def test_default_coulomb_box(self):
        grid = default_solver_grid(
            SolveMode.KG_VECTOR, PotentialSpec.coulomb(), P_03, 2, 0)
        r_max = grid.points[-1] + grid.step
        assert r_max == pytest.approx(
            15.0 * 4 * P_03.bohr_radius() / P_03.z_number, rel=1e-12)

    def test_rmax_override(self):
        grid = default_solver_grid(
            SolveMode.KG_VECTOR, PotentialSpec.coulomb(), P_03, 1, 0,
            n_points=500, r_max=77.0)
        assert grid.points[-1] + grid.step == pytest.approx(77.0, rel=1e-12)
        assert grid.n_points == 500

    def test_screened_box_scales_inversely_with_lam(self):
        g1 = default_solver_grid(
            SolveMode.KG_VECTOR, PotentialSpec.hulthen(0.1), P_03, 1, 0)
        g2 = default_solver_grid(
            SolveMode.KG_VECTOR, PotentialSpec.hulthen(0.2), P_03, 1, 0)
        assert g1.points[-1] > g2.points[-1]

    def test_richardson_exact_on_model_data(self):
        # data with a pure h^2 error must extrapolate to the exact value
        exact = -0.123456
        def model(h):
            return exact + 0.37 * h ** 2
        got = richardson_extrapolate(model(0.2), model(0.1))
        assert got == pytest.approx(exact, rel=1e-12)
        got4 = richardson_extrapolate(
            exact + 0.1 * 0.2 ** 4, exact + 0.1 * 0.1 ** 4, order=4)
        assert got4 == pytest.approx(exact, rel=1e-12)

    def test_convergence_study_orders(self):
        req = SolveRequest(mode=SolveMode.KG_VECTOR,
                           potential=PotentialSpec.coulomb(), n=1, l=0)
        study = convergence_study(req, P_01, (500, 1000, 2000))
        assert len(study.rows) == 3
        assert 1.7 < study.final_order < 2.3
        ref = energy_level(P_01, 1, 0).e_prime
        assert study.rows[0][2] is None  # nothing to extrapolate yet
        coarse_err = abs(study.rows[0][1] - ref)
        best_err = abs(study.best_estimate - ref)
        assert best_err < 0.05 * coarse_err

    def test_convergence_study_validation(self):
        req = SolveRequest(mode=SolveMode.KG_VECTOR,
                           potential=PotentialSpec.coulomb(), n=1, l=0)
        with pytest.raises(ValueError):
            convergence_study(req, P_01, (500, 1000))
        with pytest.raises(ValueError):
            convergence_study(req, P_01, (500, 500, 1000))

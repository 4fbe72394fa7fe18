import math

import numpy as np
import pytest

from mmfs import analysis, geometry, reference, solvers
from mmfs.analysis import CondProfile
from mmfs.errors import PointInsideObstacleError
from mmfs.geometry import Circle, Epitrochoid


class TestAnalyticCondS:
    def test_branch_values(self):
        rho, m = 1.0, 4
        # decreasing branch below rho
        assert analysis.analytic_cond_S_circle(rho, m, 0.5) == pytest.approx(
            math.sqrt(2) * 2.0**m
        )
        # minimum at 2^(1/(2M)) rho
        r0_opt, cond_min = analysis.analytic_optimal_R0(rho, m)
        assert analysis.analytic_cond_S_circle(rho, m, r0_opt) == pytest.approx(
            cond_min
        )
        # growing branch above sqrt(2) rho
        assert analysis.analytic_cond_S_circle(rho, m, 2.0) == pytest.approx(
            2.0**m / math.sqrt(2)
        )

    def test_continuity_at_branch_edges(self):
        rho, m = 2.0, 6
        for edge in (rho, 2 ** (1 / (2 * m)) * rho, math.sqrt(2) * rho):
            lo = analysis.analytic_cond_S_circle(rho, m, edge * (1 - 1e-12))
            hi = analysis.analytic_cond_S_circle(rho, m, edge * (1 + 1e-12))
            assert lo == pytest.approx(hi, rel=1e-9)

    def test_scale_invariance(self):
        # only R0/rho matters
        a = analysis.analytic_cond_S_circle(1.0, 5, 0.7)
        b = analysis.analytic_cond_S_circle(3.0, 5, 2.1)
        assert a == pytest.approx(b)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            analysis.analytic_cond_S_circle(-1.0, 4, 1.0)
        with pytest.raises(ValueError):
            analysis.analytic_optimal_R0(1.0, 0)


class TestCondProfile:
    def test_argmin_skips_unreliable(self):
        p = CondProfile(
            parameter="R0",
            grid=np.array([1.0, 2.0, 3.0]),
            conds=np.array([0.5, 5.0, 9.0]),
            reliable=np.array([False, True, True]),
        )
        assert p.argmin == (2.0, 5.0)

    def test_argmin_tie_breaks_left(self):
        p = CondProfile(
            parameter="R0",
            grid=np.array([1.0, 2.0]),
            conds=np.array([4.0, 4.0]),
            reliable=np.array([True, True]),
        )
        assert p.argmin == (1.0, 4.0)

    def test_grid_must_increase(self):
        with pytest.raises(ValueError):
            CondProfile("R0", np.array([2.0, 1.0]), np.ones(2), np.ones(2, bool))


class TestSweeps:
    def test_sweep_matches_analytic_on_circle(self):
        grid = np.array([0.5, 1.0, 1.035, 2.0])
        profile = analysis.cond_sweep_S(Circle(1.0), 21, 10, grid)
        expected = [analysis.analytic_cond_S_circle(1.0, 10, v) for v in grid]
        np.testing.assert_allclose(profile.conds, expected, rtol=1e-10)

    def test_threaded_sweep_identical(self):
        grid = analysis.default_r0_grid(step=0.05, stop=3.0)
        a = analysis.cond_sweep_S(Circle(1.0), 21, 10, grid, threads=1)
        b = analysis.cond_sweep_S(Circle(1.0), 21, 10, grid, threads=4)
        np.testing.assert_array_equal(a.conds, b.conds)

    def test_optimal_r0_vs_n_bounded_below_by_rho_min(self):
        pairs = analysis.optimal_R0_vs_N(
            Epitrochoid(3.0, 1.0), [5, 9, 13],
            r0_grid=analysis.default_r0_grid(step=0.05, stop=8.0),
        )
        for _, r0 in pairs:
            assert r0 >= 3.0

    def test_optimal_r0_rejects_even_n(self):
        with pytest.raises(ValueError):
            analysis.optimal_R0_vs_N(Circle(1.0), [6])

    def test_k_comparison_shapes(self):
        grid = np.array([0.5, 1.0, 1.5])
        k1, k2 = analysis.cond_K_comparison(9, grid)
        assert len(k1.conds) == len(k2.conds) == 3
        np.testing.assert_allclose(k2.conds, math.sqrt(2) * 4, rtol=1e-12)


@pytest.fixture(scope="module")
def report():
    curve = Epitrochoid(3.0, 1.0)

    def f(theta):
        r = geometry.rho(curve, theta)
        return reference.exterior_u_shifted(r * np.cos(theta), r * np.sin(theta))

    return solvers.solve_mtm(curve, f, 19, 9, 3.6)


class TestErrorMetrics:

    def test_pointwise_small_outside(self, report):
        err = analysis.error_pointwise(
            report, reference.exterior_u, 10.0, 0.7, far_field=1.0
        )
        assert err < 1e-10

    def test_point_inside_rejected(self, report):
        with pytest.raises(PointInsideObstacleError):
            analysis.error_pointwise(report, reference.exterior_u, 2.0, 0.0)

    def test_max_on_circle_dominates_pointwise(self, report):
        theta = 2 * np.pi * np.arange(720) / 720
        per_point = [
            analysis.error_pointwise(report, reference.exterior_u, 10.0, t,
                                     far_field=1.0)
            for t in theta[::90]
        ]
        err = analysis.error_max_on_circle(
            report, reference.exterior_u, 10.0, theta_samples=720, far_field=1.0
        )
        assert err >= max(per_point) - 1e-18

    def test_circle_dipping_inside_rejected(self, report):
        with pytest.raises(PointInsideObstacleError):
            analysis.error_max_on_circle(report, reference.exterior_u, 4.0)

    def test_coarse_angle_grid_rejected(self, report):
        with pytest.raises(ValueError):
            analysis.error_max_on_circle(
                report, reference.exterior_u, 10.0, theta_samples=100
            )


class TestSkConvergence:
    def test_monotone_decrease(self):
        gaps = analysis.sk_convergence(Circle(2.0), 9, 1.0, 1.0, [2, 4, 8, 16])
        values = [g for _, g in gaps]
        assert all(b <= a for a, b in zip(values, values[1:]))


class TestGrowthFit:
    def test_recovers_exact_geometric_growth(self):
        n = np.arange(5, 21, 2)
        amp, base = analysis.growth_fit(n, 0.7 * 1.9**n)
        assert amp == pytest.approx(0.7, rel=1e-10)
        assert base == pytest.approx(1.9, rel=1e-12)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            analysis.growth_fit([5, 7, 9], [1.0, 2.0, 4.0])

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            analysis.growth_fit([5, 7, 9, 11], [1.0, 2.0, -4.0, 8.0])


class TestCsvWriters:
    def test_cond_profile_csv(self, tmp_path):
        p = CondProfile("R0", np.array([1.0, 2.0]), np.array([3.0, 4.0]),
                        np.array([True, False]))
        path = tmp_path / "p.csv"
        analysis.write_cond_profile_csv(p, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "R0,cond2,reliable"
        assert lines[1] == "1,3,1"
        assert lines[2] == "2,4,0"

    def test_error_curves_csv(self, tmp_path):
        path = tmp_path / "e.csv"
        analysis.write_error_curves_csv(
            [10.0, 100.0],
            {"mtm": np.array([1e-3, 1e-4]), "cmfs-cbf": np.array([1e-2, 1e-1])},
            path,
        )
        lines = path.read_text().splitlines()
        assert lines[0] == "r,error_mtm,error_cmfs-cbf"
        assert lines[1].startswith("10,0.001")

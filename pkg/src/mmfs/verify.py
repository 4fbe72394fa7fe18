"""Self-contained oracle suite for the closed-form matrix identities.

Each check compares a numerically assembled or decomposed quantity
against its closed form at fixed sizes, so the mathematical backbone
can be re-verified from the installed package without the test suite.
"""

from __future__ import annotations

import math

import numpy as np

from . import analysis, assembly, geometry, linalg, solvers
from .assembly import MethodParams, TrefftzDims


def _maxdiff(a, b) -> float:
    return float(np.abs(np.asarray(a) - np.asarray(b)).max())


def check_k_factorization():
    """K must equal the product of its diagonal and trigonometric factors."""
    params = MethodParams(r_source=1.3, r0=0.7, dims=TrefftzDims(21, 10))
    gap = _maxdiff(
        assembly.build_K(params),
        assembly.build_T_R(10, 1.3, 0.7) @ assembly.build_T_theta(21, 10),
    )
    return gap <= 1e-14, f"max |K - T_R T_theta| = {gap:.2e}"


def check_t_theta_orthogonality():
    n, m = 201, 100
    t = assembly.build_T_theta(n, m)
    target = (n / 2.0) * np.diag(np.concatenate(([2.0], np.ones(2 * m))))
    gap = _maxdiff(t @ t.T, target)
    return gap <= 1e-11 * n, f"max |T T^T - (N/2)diag(2,1,..)| = {gap:.2e}"


def check_t_theta_inverse():
    n, m = 21, 10
    gap = _maxdiff(
        assembly.build_T_theta(n, m) @ assembly.explicit_T_theta_inverse(n, m),
        np.eye(n),
    )
    return gap <= 1e-12, f"max |T T^-1 - I| = {gap:.2e}"


def check_determinants():
    worst = 0.0
    for m in range(1, 9):
        n = 2 * m + 1
        ratio = 1.5
        det_tr = linalg.determinant(assembly.build_T_R(m, ratio, 1.0))
        det_tt = linalg.determinant(assembly.build_T_theta(n, m))
        exact_tr = ratio ** (m * (m + 1)) / math.factorial(m) ** 2
        exact_tt = n ** (m + 0.5) / 2.0**m
        worst = max(
            worst,
            abs(det_tr - exact_tr) / abs(exact_tr),
            abs(det_tt - exact_tt) / abs(exact_tt),
        )
    return worst <= 1e-8, f"worst relative determinant error = {worst:.2e}"


def check_k_inverse():
    worst = 0.0
    for n in (3, 7, 21):
        m = (n - 1) // 2
        for ratio in (0.5, 1.0, 2.0):
            params = MethodParams(r_source=ratio, r0=1.0, dims=TrefftzDims(n, m))
            gap = _maxdiff(
                assembly.build_K(params) @ assembly.explicit_K_inverse(params),
                np.eye(n),
            )
            worst = max(worst, gap)
    return worst <= 1e-10, f"worst max |K K^-1 - I| = {worst:.2e}"


def check_exact_conds():
    worst = 0.0
    for m in range(1, 11):
        n = 2 * m + 1
        params = MethodParams(r_source=1.0, r0=1.0, dims=TrefftzDims(n, m))
        pairs = (
            (linalg.cond2(assembly.build_T_R(m, 1.0, 1.0)), float(m)),
            (linalg.cond2(assembly.build_T_theta(n, m)), math.sqrt(2.0)),
            (linalg.cond2(assembly.build_K(params)), math.sqrt(2.0) * m),
        )
        for got, want in pairs:
            worst = max(worst, abs(got - want) / want)
    return worst <= 1e-10, f"worst relative cond error = {worst:.2e}"


def check_s_factorization_circle():
    rho_val, r0, n, m = 2.0, 0.9, 21, 10
    coll = geometry.collocation_points(geometry.Circle(rho_val), n)
    gap = _maxdiff(
        assembly.build_S(coll, m, r0),
        assembly.build_T_theta(n, m).T @ assembly.build_S_R0(m, r0, rho_val),
    )
    return gap <= 1e-13, f"max |S - T^T S_R0| = {gap:.2e}"


def check_det_s_circle():
    rho_val, r0, m = 2.0, 0.75, 6
    n = 2 * m + 1
    coll = geometry.collocation_points(geometry.Circle(rho_val), n)
    det = linalg.determinant(assembly.build_S(coll, m, r0))
    exact = (n ** (m + 0.5) / 2.0**m) * (r0 / rho_val) ** (m * (m + 1))
    rel = abs(det - exact) / abs(exact)
    return rel <= 1e-8, f"relative det(S) error = {rel:.2e}"


def check_cond_s_oracle():
    """Numeric cond_2(S) must match the four-branch circle formula."""
    rho_val = 1.0
    worst = 0.0
    for m in (1, 4, 10):
        n = 2 * m + 1
        coll = geometry.collocation_points(geometry.Circle(rho_val), n)
        branch_edges = [rho_val, 2 ** (1 / (2 * m)) * rho_val, math.sqrt(2) * rho_val]
        grid = sorted(
            [0.2, 0.5, 5.0, 15.0]
            + [e * f for e in branch_edges for f in (0.97, 1.0, 1.03)]
        )
        for r0 in grid:
            got = linalg.cond2(assembly.build_S(coll, m, r0))
            want = analysis.analytic_cond_S_circle(rho_val, m, r0)
            worst = max(worst, abs(got - want) / want)
    return worst <= 1e-6, f"worst relative oracle gap = {worst:.2e}"


def check_optimal_r0():
    n, m = 21, 10
    grid = analysis.default_r0_grid(step=0.005, stop=3.0)
    profile = analysis.cond_sweep_S(geometry.Circle(1.0), n, m, grid)
    r0_num, _ = profile.argmin
    r0_opt, _ = analysis.analytic_optimal_R0(1.0, m)
    gap = abs(r0_num - r0_opt)
    return gap <= 0.005, f"|argmin - closed form| = {gap:.4f}"


def check_sk_diagonalization():
    rho_val, n, m = 2.0, 21, 10
    coll = geometry.collocation_points(geometry.Circle(rho_val), n)
    worst = 0.0
    for r in (0.6, 1.8):
        sk = assembly.build_SK(
            coll, MethodParams(r_source=r, r0=1.0, dims=TrefftzDims(n, m))
        )
        t = assembly.build_T_theta(n, m)
        lam = assembly.build_Lambda(m, r, rho_val)
        worst = max(worst, _maxdiff(sk, t.T @ lam @ t))
    return worst <= 1e-11 * n, f"max |SK - T^T Lambda T| = {worst:.2e}"


def check_even_grid_singularity():
    """Dropping the constant column with N = 2M leaves a singular matrix."""
    m = 5
    n = 2 * m
    coll = geometry.collocation_points(geometry.Circle(1.0), n)
    s_prime = assembly.build_S(coll, m, 0.8)[:, 1:]
    sv = linalg.singular_values(s_prime)
    ratio = sv[-1] / sv[0]
    return ratio <= 1e-12, f"sigma_min/sigma_max = {ratio:.2e}"


def check_polar_orthogonality():
    """Sign-flipped T_theta scaled by D^-1 must be orthogonal."""
    n, m = 21, 10
    t = assembly.build_T_theta(n, m, sign=-1.0)
    d_inv = np.diag(
        1.0 / (np.sqrt(n / 2.0) * np.concatenate(([math.sqrt(2.0)], np.ones(2 * m))))
    )
    q = d_inv @ t
    gap = _maxdiff(q @ q.T, np.eye(2 * m + 1))
    return gap <= 1e-12, f"max |Q Q^T - I| = {gap:.2e}"


def check_fourier_coefficients():
    """MTM on a circle recovers scaled Fourier coefficients exactly."""
    rho_val, r0, n, m = 2.0, 0.8, 21, 10
    report = solvers.solve_mtm(
        geometry.Circle(rho_val),
        lambda t: 2.0 + 3.0 * np.cos(2 * t) - np.sin(t),
        n,
        m,
        r0,
    )
    c = report.coefficients
    scale = rho_val / r0
    gap = max(
        abs(c.a0 - 2.0),
        abs(c.a[1] - 3.0 * scale**2),
        abs(c.b[0] + scale),
        np.abs(np.delete(c.a, 1)).max(),
        np.abs(np.delete(c.b, 0)).max(),
    )
    return gap <= 1e-10, f"worst coefficient error = {gap:.2e}"


ALL_CHECKS = [
    ("K factorization", check_k_factorization),
    ("T_theta orthogonality", check_t_theta_orthogonality),
    ("T_theta explicit inverse", check_t_theta_inverse),
    ("determinant formulas", check_determinants),
    ("K explicit inverse", check_k_inverse),
    ("exact condition numbers", check_exact_conds),
    ("S factorization (circle)", check_s_factorization_circle),
    ("det(S) formula (circle)", check_det_s_circle),
    ("cond(S) analytic oracle", check_cond_s_oracle),
    ("optimal R0 argmin", check_optimal_r0),
    ("SK diagonalization (circle)", check_sk_diagonalization),
    ("even-grid singularity", check_even_grid_singularity),
    ("polar-variant orthogonality", check_polar_orthogonality),
    ("Fourier coefficient recovery", check_fourier_coefficients),
]


def run_all(out=print) -> bool:
    """Run every check; report one line each; True iff all passed."""
    all_ok = True
    for name, check in ALL_CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # a failed build is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        out(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok

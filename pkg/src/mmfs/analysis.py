"""Conditioning sweeps, analytic condition-number oracles, and error metrics.

The analytic formulas (circle boundary) serve as closed-form oracles for
the numeric Jacobi-SVD condition numbers; the sweeps and error ladders
reproduce the parameter studies behind the method comparison.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import assembly, geometry, linalg, solvers
from .assembly import MethodParams, TrefftzDims
from .errors import DegenerateFitError, NoConvergenceError, PointInsideObstacleError
from .geometry import BoundaryCurve

DEFAULT_R0_STEP = 0.005
DEFAULT_R0_MAX = 15.0
DEFAULT_THETA_SAMPLES = 1024


def default_r0_grid(step: float = DEFAULT_R0_STEP, stop: float = DEFAULT_R0_MAX):
    """Uniform grid over (0, stop] with the given step."""
    count = int(round(stop / step))
    return step * np.arange(1, count + 1)


@dataclass(frozen=True)
class CondProfile:
    """Condition numbers along one swept parameter."""

    parameter: str
    grid: np.ndarray
    conds: np.ndarray
    reliable: np.ndarray

    def __post_init__(self):
        if len(self.grid) == 0:
            raise ValueError("empty sweep grid")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("sweep grid must be strictly increasing")

    @property
    def argmin(self) -> tuple[float, float]:
        """(parameter, cond) at the smallest reliable condition number.

        Ties break toward the smaller parameter value.
        """
        conds = np.where(self.reliable, self.conds, np.inf)
        i = int(np.argmin(conds))
        return float(self.grid[i]), float(self.conds[i])


@dataclass(frozen=True)
class ErrorCurve:
    """Max-over-angle errors along a radius ladder."""

    radii: np.ndarray
    errors: np.ndarray
    theta_samples: int


def analytic_cond_S_circle(rho: float, m: int, r0: float) -> float:
    """Closed-form cond_2 of the Trefftz matrix S on a circle of radius rho.

    Four branches with boundaries at rho, 2^(1/(2M)) rho, and sqrt(2) rho.
    """
    if rho <= 0 or r0 <= 0:
        raise ValueError("rho and R0 must be positive")
    if m < 1:
        raise ValueError("M must be at least 1")
    ratio = r0 / rho
    if r0 < rho:
        return np.sqrt(2.0) * ratio ** (-m)
    if r0 < 2.0 ** (1.0 / (2 * m)) * rho:
        return np.sqrt(2.0) / ratio
    if r0 < np.sqrt(2.0) * rho:
        return ratio ** (m - 1)
    return ratio**m / np.sqrt(2.0)


def analytic_optimal_R0(rho: float, m: int) -> tuple[float, float]:
    """Minimizer of the circle cond_2(S) formula and its minimum value."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    if m < 1:
        raise ValueError("M must be at least 1")
    r0_opt = 2.0 ** (1.0 / (2 * m)) * rho
    cond_min = 2.0 ** ((m - 1) / (2.0 * m))
    return r0_opt, cond_min


def _cond_of(matrix: np.ndarray) -> tuple[float, bool]:
    try:
        value = linalg.cond2(matrix)
    except NoConvergenceError:
        return float("inf"), False
    return value, linalg.cond2_is_reliable(value)


def _sweep(parameter: str, grid, build_matrix, threads: int = 1) -> CondProfile:
    grid = np.asarray(grid, dtype=float)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda v: _cond_of(build_matrix(v)), grid))
    else:
        results = [_cond_of(build_matrix(v)) for v in grid]
    conds = np.array([c for c, _ in results])
    reliable = np.array([ok for _, ok in results])
    return CondProfile(parameter=parameter, grid=grid, conds=conds, reliable=reliable)


def cond_sweep_S(
    curve: BoundaryCurve, n: int, m: int, r0_grid, threads: int = 1
) -> CondProfile:
    """cond_2(S) against R0; requires the square system N = 2M+1."""
    TrefftzDims(n, m).require_square()
    coll = geometry.collocation_points(curve, n)
    return _sweep(
        "R0", r0_grid, lambda r0: assembly.build_S(coll, m, r0), threads=threads
    )


def optimal_R0_vs_N(
    curve: BoundaryCurve, n_list, r0_grid=None, threads: int = 1
) -> list[tuple[int, float]]:
    """Per-N argmin of the R0 sweep."""
    out = []
    for n in n_list:
        if n < 5 or n % 2 == 0:
            raise ValueError(f"N must be odd and >= 5, got {n}")
        grid = default_r0_grid() if r0_grid is None else r0_grid
        profile = cond_sweep_S(curve, n, (n - 1) // 2, grid, threads=threads)
        out.append((int(n), profile.argmin[0]))
    return out


def cond_K_comparison(
    n: int, r_grid, threads: int = 1
) -> tuple[CondProfile, CondProfile]:
    """cond_2 of K with R0=1 (K1) and R0=R (K2) against the source radius."""
    m = (n - 1) // 2
    dims = TrefftzDims(n, m)

    def k1(r):
        return assembly.build_K(MethodParams(r_source=r, r0=1.0, dims=dims))

    def k2(r):
        return assembly.build_K(MethodParams(r_source=r, r0=r, dims=dims))

    return (
        _sweep("R", r_grid, k1, threads=threads),
        _sweep("R", r_grid, k2, threads=threads),
    )


def _exact_shifted(exact, far_field: float):
    """Cancellation-safe evaluator of (exact - far_field), if available."""
    shifted = getattr(exact, "shifted", None)
    if shifted is not None and far_field == getattr(exact, "far_field", far_field):
        return shifted
    return lambda x, y: np.asarray(exact(x, y), dtype=float) - far_field


def error_pointwise(
    report: solvers.SolveReport, exact, r: float, theta: float, far_field: float = 0.0
) -> float:
    """|numeric - exact| at the exterior polar point (r, theta).

    The comparison happens in the shifted (decaying) field, which is the
    same number in exact arithmetic but avoids losing the error under
    the far-field constant at large radii.
    """
    if r < geometry.rho(report.curve, theta):
        raise PointInsideObstacleError(f"(r, theta) = ({r}, {theta})")
    value = solvers.evaluate_report(report, r, theta)
    target = _exact_shifted(exact, far_field)(r * np.cos(theta), r * np.sin(theta))
    return float(np.abs(value - target))


def error_max_on_circle(
    report: solvers.SolveReport,
    exact,
    r: float,
    theta_samples: int = DEFAULT_THETA_SAMPLES,
    far_field: float = 0.0,
) -> float:
    """max over a uniform angle grid of the pointwise error at radius r."""
    if theta_samples < 360:
        raise ValueError(f"theta_samples {theta_samples} < 360")
    theta = 2.0 * np.pi * np.arange(theta_samples) / theta_samples
    rho_max = geometry.rho_extrema(report.curve)[1]
    if r < rho_max:
        inside = r < geometry.rho(report.curve, theta)
        if np.any(inside):
            raise PointInsideObstacleError(f"radius {r} dips inside the obstacle")
    values = solvers.evaluate_report(report, np.full_like(theta, r), theta)
    target = _exact_shifted(exact, far_field)(r * np.cos(theta), r * np.sin(theta))
    return float(np.abs(values - target).max())


def sk_convergence(
    curve: BoundaryCurve, n: int, r: float, r0: float, m_ladder
) -> list[tuple[int, float]]:
    """max-norm gap between A and the rectangular product SK along M."""
    coll = geometry.collocation_points(curve, n)
    src = geometry.source_points(r, n)
    a = assembly.build_A(coll, src)
    out = []
    for m in m_ladder:
        s = assembly.build_S(coll, int(m), r0)
        k = assembly.build_K(MethodParams(r_source=r, r0=r0, dims=TrefftzDims(n, int(m))))
        out.append((int(m), float(np.abs(a - s @ k).max())))
    return out


def growth_fit(n_list, cond_list) -> tuple[float, float]:
    """Fit cond = amplitude * base^N by least squares on log(cond)."""
    n = np.asarray(n_list, dtype=float)
    c = np.asarray(cond_list, dtype=float)
    if len(n) < 4:
        raise ValueError(f"need at least 4 points, got {len(n)}")
    if np.any(~np.isfinite(c)) or np.any(c <= 0):
        raise ValueError("condition numbers must be finite and positive")
    if np.ptp(n) == 0:
        raise DegenerateFitError("all abscissae are equal")
    slope, intercept = np.polyfit(n, np.log(c), 1)
    return float(np.exp(intercept)), float(np.exp(slope))


def write_cond_profile_csv(profile: CondProfile, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{profile.parameter},cond2,reliable\n")
        for v, c, ok in zip(profile.grid, profile.conds, profile.reliable):
            fh.write(f"{v:.17g},{c:.17g},{int(ok)}\n")


def write_error_curves_csv(radii, curves: dict[str, np.ndarray], path) -> None:
    """One row per radius; one error column per method."""
    names = list(curves)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("r," + ",".join(f"error_{name}" for name in names) + "\n")
        for i, r in enumerate(radii):
            row = ",".join(f"{curves[name][i]:.17g}" for name in names)
            fh.write(f"{r:.17g},{row}\n")

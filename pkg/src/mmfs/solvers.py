"""The five end-to-end exterior solvers and point evaluation.

Method naming: CMFS solves the plain fundamental-solution collocation
system (matrix A or A_hat); MMFS solves the transformed system SK; MTM
solves the Trefftz collocation system S.  CBF/MBF selects which basis
the computed weights are substituted into at evaluation time: the
conventional log kernel (grows like ln r) or the modified one (decays
like 1/r).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import assembly, geometry, linalg
from .assembly import MethodParams, TrefftzDims
from .errors import CoincidentPointsError
from .geometry import BoundaryCurve, SourceSet

# |sum w| above this fraction of ||w||_1 signals that the computed
# weights violate the zero-sum decay premise.
SUM_W_FLAG_RTOL = 1e-6


class MethodKind(Enum):
    MTM = "mtm"
    CMFS_CBF = "cmfs-cbf"
    CMFS_MBF = "cmfs-mbf"
    MMFS_CBF = "mmfs-cbf"
    MMFS_MBF = "mmfs-mbf"


class Basis(Enum):
    CONVENTIONAL = "conventional"
    MODIFIED = "modified"


@dataclass(frozen=True)
class TrefftzCoefficients:
    """Truncated expansion a0 + sum_k (a_k cos + b_k sin)(R0/r)^k."""

    r0: float
    a0: float
    a: np.ndarray
    b: np.ndarray

    @property
    def order(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class MfsWeights:
    """Source weights plus the basis they are meant to be evaluated in."""

    src: SourceSet
    w: np.ndarray
    basis: Basis

    @property
    def sum_w(self) -> float:
        return float(self.w.sum())

    @property
    def sum_w_flagged(self) -> bool:
        """True when the weights visibly violate the zero-sum premise."""
        return abs(self.sum_w) > SUM_W_FLAG_RTOL * float(np.abs(self.w).sum())


@dataclass(frozen=True)
class SolveReport:
    method: MethodKind
    curve: BoundaryCurve
    coefficients: TrefftzCoefficients | MfsWeights
    residual_norm: float
    cond2: float
    boundary_data: np.ndarray


def _sample_boundary(f, angles: np.ndarray) -> np.ndarray:
    """Boundary data as samples at the collocation angles.

    ``f`` is either a callable of theta (scalar or vectorized) or a
    sequence of N samples.
    """
    if callable(f):
        values = np.asarray(f(angles), dtype=float)
        if values.shape != angles.shape:  # scalar-only callable
            values = np.array([float(f(t)) for t in angles])
    else:
        values = np.asarray(f, dtype=float)
        if values.shape != angles.shape:
            raise ValueError(
                f"expected {len(angles)} boundary samples, got shape {values.shape}"
            )
    return values


def shift_far_field(f, c: float):
    """Turn boundary data for u into data for the decaying field u - c."""
    if callable(f):
        return lambda theta: np.asarray(f(theta), dtype=float) - c
    return np.asarray(f, dtype=float) - c


def _solve_and_report(method, curve, matrix, g, make_coefficients) -> SolveReport:
    sol = linalg.lu_solve(matrix, g)
    residual = float(np.linalg.norm(matrix @ sol - g))
    return SolveReport(
        method=method,
        curve=curve,
        coefficients=make_coefficients(sol),
        residual_norm=residual,
        cond2=linalg.cond2(matrix),
        boundary_data=g,
    )


def solve_mtm(curve: BoundaryCurve, f, n: int, m: int, r0: float) -> SolveReport:
    """Trefftz collocation solve S y = g; requires N = 2M+1."""
    dims = TrefftzDims(n, m)
    dims.require_square()
    coll = geometry.collocation_points(curve, n)
    g = _sample_boundary(f, coll.angles)
    s = assembly.build_S(coll, m, r0)

    def make(sol):
        return TrefftzCoefficients(
            r0=r0, a0=float(sol[0]), a=sol[1::2].copy(), b=sol[2::2].copy()
        )

    return _solve_and_report(MethodKind.MTM, curve, s, g, make)


def solve_mfs(curve: BoundaryCurve, f, n: int, r: float, basis: Basis) -> SolveReport:
    """Fundamental-solution collocation solve A w = g (or A_hat for MBF)."""
    geometry.require_sources_inside(curve, r)
    coll = geometry.collocation_points(curve, n)
    src = geometry.source_points(r, n)
    g = _sample_boundary(f, coll.angles)
    if basis is Basis.CONVENTIONAL:
        matrix = assembly.build_A(coll, src)
        method = MethodKind.CMFS_CBF
    else:
        matrix = assembly.build_A_hat(coll, src)
        method = MethodKind.CMFS_MBF
    return _solve_and_report(
        method, curve, matrix, g, lambda w: MfsWeights(src=src, w=w, basis=basis)
    )


def solve_mmfs(
    curve: BoundaryCurve,
    f,
    n: int,
    m: int,
    r: float,
    r0: float,
    basis: Basis = Basis.MODIFIED,
) -> SolveReport:
    """Transformed solve SK w = g; the weights are evaluated in ``basis``.

    The product SK is independent of R0 (it cancels between S and K),
    so R0 only labels the transform.
    """
    geometry.require_sources_inside(curve, r)
    params = MethodParams(r_source=r, r0=r0, dims=TrefftzDims(n, m))
    params.dims.require_square()
    coll = geometry.collocation_points(curve, n)
    g = _sample_boundary(f, coll.angles)
    sk = assembly.build_SK(coll, params)
    src = geometry.source_points(r, n)
    method = MethodKind.MMFS_CBF if basis is Basis.CONVENTIONAL else MethodKind.MMFS_MBF
    return _solve_and_report(
        method, curve, sk, g, lambda w: MfsWeights(src=src, w=w, basis=basis)
    )


def run_method(
    kind: MethodKind,
    curve: BoundaryCurve,
    f,
    n: int,
    m: int | None = None,
    r: float | None = None,
    r0: float | None = None,
) -> SolveReport:
    """Dispatch one of the five methods with shared parameters."""
    if m is None:
        m = (n - 1) // 2
    if kind is MethodKind.MTM:
        if r0 is None:
            raise ValueError("MTM needs R0")
        return solve_mtm(curve, f, n, m, r0)
    if r is None:
        raise ValueError(f"{kind.value} needs the source radius R")
    if kind is MethodKind.CMFS_CBF:
        return solve_mfs(curve, f, n, r, Basis.CONVENTIONAL)
    if kind is MethodKind.CMFS_MBF:
        return solve_mfs(curve, f, n, r, Basis.MODIFIED)
    basis = Basis.CONVENTIONAL if kind is MethodKind.MMFS_CBF else Basis.MODIFIED
    return solve_mmfs(curve, f, n, m, r, r0 if r0 is not None else r, basis)


def evaluate_trefftz(coeffs: TrefftzCoefficients, r, theta):
    """Evaluate the truncated expansion at polar point(s) (r, theta)."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    out = np.full(np.broadcast(r, theta).shape, coeffs.a0, dtype=float)
    for k in range(1, coeffs.order + 1):
        out += (
            coeffs.a[k - 1] * np.cos(k * theta) + coeffs.b[k - 1] * np.sin(k * theta)
        ) * (coeffs.r0 / r) ** k
    return float(out) if out.ndim == 0 else out


def evaluate_mfs(wts: MfsWeights, z):
    """Evaluate the weighted basis sum at complex point(s) z.

    The modified basis uses log1p of the relative distance excess, which
    stays accurate at radii where ln|z - zeta| and ln|z| would cancel.
    """
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    src = wts.src
    dist = np.hypot(x[..., None] - src.x, y[..., None] - src.y)
    if dist.size and dist.min() < assembly.COINCIDENT_TOL:
        raise CoincidentPointsError("evaluation point coincides with a source")
    if wts.basis is Basis.CONVENTIONAL:
        out = np.log(dist) @ wts.w
    else:
        r2 = x * x + y * y
        if np.any(r2 == 0):
            raise ValueError("modified basis is undefined at the origin")
        excess = (
            src.radius**2 - 2.0 * (x[..., None] * src.x + y[..., None] * src.y)
        ) / r2[..., None]
        out = (0.5 * np.log1p(excess)) @ wts.w
    return float(out) if out.ndim == 0 else out


def evaluate_report(report: SolveReport, r, theta):
    """Evaluate a solve's (decaying) solution at polar point(s)."""
    if isinstance(report.coefficients, TrefftzCoefficients):
        return evaluate_trefftz(report.coefficients, r, theta)
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return evaluate_mfs(report.coefficients, r * np.exp(1j * theta))

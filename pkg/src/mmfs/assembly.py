"""Matrix assembly for the collocation systems.

Builds the dense systems used by the five methods: the fundamental
solution matrices A and A_hat, the Trefftz collocation matrix S, the
weight-to-coefficient map K with its diagonal/trigonometric factors
T_R and T_theta, and the product system SK.  Closed-form inverses and
the diagonal factors are kept separate so they can serve as independent
oracles for the entrywise builds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError, DimensionMismatchError
from .geometry import CollocationSet, SourceSet

COINCIDENT_TOL = 1e-14


@dataclass(frozen=True)
class TrefftzDims:
    """Collocation count N and truncation order M."""

    n: int
    m: int

    def require_square(self) -> None:
        if self.n != 2 * self.m + 1:
            raise DimensionMismatchError(f"N={self.n} != 2M+1={2 * self.m + 1}")


@dataclass(frozen=True)
class MethodParams:
    """Source radius R, characteristic length R0, and system dimensions."""

    r_source: float
    r0: float
    dims: TrefftzDims

    def __post_init__(self):
        if self.r_source <= 0 or self.r0 <= 0:
            raise ValueError(f"R={self.r_source}, R0={self.r0} must be positive")

    def r0_exceeds(self, rho_min: float) -> bool:
        """Warning flag: R0 beyond the usual guideline R0 <= rho_min."""
        return self.r0 > rho_min


def build_A(coll: CollocationSet, src: SourceSet) -> np.ndarray:
    """A[k, j] = ln |z_k - zeta_j|  (conventional basis)."""
    if coll.n != src.n:
        raise DimensionMismatchError(f"{coll.n} collocation vs {src.n} source points")
    dist = np.hypot(coll.x[:, None] - src.x[None, :], coll.y[:, None] - src.y[None, :])
    if dist.min() < COINCIDENT_TOL:
        k, j = np.unravel_index(int(dist.argmin()), dist.shape)
        raise CoincidentPointsError(f"z_{k + 1} coincides with zeta_{j + 1}")
    return np.log(dist)


def build_A_hat(coll: CollocationSet, src: SourceSet) -> np.ndarray:
    """A_hat[k, j] = ln(|z_k - zeta_j| / |z_k|)  (modified basis)."""
    return build_A(coll, src) - np.log(coll.radii)[:, None]


def build_S(coll: CollocationSet, m: int, r0: float) -> np.ndarray:
    """Trefftz collocation matrix, N x (2M+1).

    Column 1 is all ones; columns 2k and 2k+1 are (R0/rho_j)^k cos(k theta_j)
    and (R0/rho_j)^k sin(k theta_j).
    """
    if r0 <= 0:
        raise ValueError(f"R0 must be positive, got {r0}")
    s = np.ones((coll.n, 2 * m + 1))
    ratio = r0 / coll.radii
    for k in range(1, m + 1):
        scale = ratio**k
        s[:, 2 * k - 1] = scale * np.cos(k * coll.angles)
        s[:, 2 * k] = scale * np.sin(k * coll.angles)
    return s


def build_T_theta(n: int, m: int, sign: float = 1.0) -> np.ndarray:
    """Trigonometric factor, (2M+1) x N: ones row, then cos/sin harmonics.

    ``sign=-1`` negates the harmonic rows (the polar-decomposition variant);
    the product with the matching T_R is unchanged.
    """
    theta = 2.0 * np.pi * np.arange(n) / n
    t = np.ones((2 * m + 1, n))
    for k in range(1, m + 1):
        t[2 * k - 1] = sign * np.cos(k * theta)
        t[2 * k] = sign * np.sin(k * theta)
    return t


def build_T_R(m: int, r_source: float, r0: float, sign: float = 1.0) -> np.ndarray:
    """Diagonal factor diag(1, -(R/R0), -(R/R0), -(1/2)(R/R0)^2, ...).

    ``sign=-1`` flips the harmonic entries positive (polar variant).
    """
    if r_source <= 0 or r0 <= 0:
        raise ValueError(f"R={r_source}, R0={r0} must be positive")
    diag = np.ones(2 * m + 1)
    ratio = r_source / r0
    for k in range(1, m + 1):
        diag[2 * k - 1] = diag[2 * k] = -sign * ratio**k / k
    return np.diag(diag)


def build_S_R0(m: int, r0: float, rho: float) -> np.ndarray:
    """Diagonal factor diag(1, (R0/rho), (R0/rho), (R0/rho)^2, ...).

    Valid only for a circular boundary of radius ``rho``.
    """
    diag = np.ones(2 * m + 1)
    ratio = r0 / rho
    for k in range(1, m + 1):
        diag[2 * k - 1] = diag[2 * k] = ratio**k
    return np.diag(diag)


def build_K(params: MethodParams) -> np.ndarray:
    """Weight-to-coefficient map, (2M+1) x N, built entrywise.

    Row 1 is all ones (the zero-sum constraint on the weights); rows 2k
    and 2k+1 are -(1/k)(R/R0)^k cos(k theta_j) and the sine analog.
    Equals build_T_R @ build_T_theta.
    """
    n, m = params.dims.n, params.dims.m
    theta = 2.0 * np.pi * np.arange(n) / n
    k_mat = np.ones((2 * m + 1, n))
    ratio = params.r_source / params.r0
    for k in range(1, m + 1):
        scale = -(ratio**k) / k
        k_mat[2 * k - 1] = scale * np.cos(k * theta)
        k_mat[2 * k] = scale * np.sin(k * theta)
    return k_mat


def explicit_T_theta_inverse(n: int, m: int) -> np.ndarray:
    """Closed-form inverse of T_theta; requires N = 2M+1."""
    TrefftzDims(n, m).require_square()
    theta = 2.0 * np.pi * np.arange(n) / n
    inv = np.empty((n, n))
    inv[:, 0] = 1.0 / n
    for k in range(1, m + 1):
        inv[:, 2 * k - 1] = (2.0 / n) * np.cos(k * theta)
        inv[:, 2 * k] = (2.0 / n) * np.sin(k * theta)
    return inv


def explicit_K_inverse(params: MethodParams) -> np.ndarray:
    """Closed-form inverse of K; requires N = 2M+1."""
    params.dims.require_square()
    n, m = params.dims.n, params.dims.m
    theta = 2.0 * np.pi * np.arange(n) / n
    inv = np.empty((n, n))
    inv[:, 0] = 1.0 / n
    ratio = params.r0 / params.r_source
    for k in range(1, m + 1):
        scale = -(2.0 * k / n) * ratio**k
        inv[:, 2 * k - 1] = scale * np.cos(k * theta)
        inv[:, 2 * k] = scale * np.sin(k * theta)
    return inv


def build_SK(coll: CollocationSet, params: MethodParams) -> np.ndarray:
    """Product system S K, N x N; requires N = 2M+1.

    S and K share the same R0, so the product depends only on R and the
    boundary radii.
    """
    params.dims.require_square()
    if coll.n != params.dims.n:
        raise DimensionMismatchError(f"{coll.n} points vs N={params.dims.n}")
    s = build_S(coll, params.dims.m, params.r0)
    return s @ build_K(params)


def build_Lambda(m: int, r_source: float, rho: float) -> np.ndarray:
    """Diagonal core of SK for a circle: diag(1, -(R/rho), -(R/rho), ...)."""
    diag = np.ones(2 * m + 1)
    ratio = r_source / rho
    for k in range(1, m + 1):
        diag[2 * k - 1] = diag[2 * k] = -(ratio**k) / k
    return np.diag(diag)


def dump_matrix_csv(a: np.ndarray, path) -> None:
    """Write a matrix as CSV, one row per line, 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in np.atleast_2d(a):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")

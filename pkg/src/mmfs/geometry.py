"""Star-shaped obstacle boundaries and collocation/source point sets.

A boundary is given in polar form r = rho(theta) with rho positive and
2*pi-periodic.  Collocation points sit on the boundary at the uniform
angle grid theta_j = 2*pi*(j-1)/N; source points sit on a circle of
radius R inside the obstacle, on the same angle grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveRadiusError, SourceOutsideObstacleError

DEFAULT_EXTREMA_GRID = 4096


@dataclass(frozen=True)
class Circle:
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise NonPositiveRadiusError(f"radius {self.radius}")

    def rho_of(self, theta):
        return np.full_like(np.asarray(theta, dtype=float), self.radius)


@dataclass(frozen=True)
class Ellipse:
    a: float
    b: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise NonPositiveRadiusError(f"semi-axes ({self.a}, {self.b})")

    def rho_of(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.a * self.b / np.sqrt(
            (self.a * np.sin(theta)) ** 2 + (self.b * np.cos(theta)) ** 2
        )


@dataclass(frozen=True)
class Epitrochoid:
    """rho(theta) = sqrt((a+b)^2 + 1 - 2(a+b) cos(a*theta/b))."""

    a: float
    b: float

    def __post_init__(self):
        if self.a + self.b <= 1:
            # rho would touch zero or go complex at cos = 1
            raise NonPositiveRadiusError(f"a + b must exceed 1, got {self.a + self.b}")

    def rho_of(self, theta):
        theta = np.asarray(theta, dtype=float)
        s = self.a + self.b
        return np.sqrt(s * s + 1.0 - 2.0 * s * np.cos(self.a * theta / self.b))


@dataclass(frozen=True)
class CustomRadial:
    """Boundary from rho samples on a uniform theta grid, linearly interpolated."""

    samples: tuple

    def __post_init__(self):
        samples = tuple(float(s) for s in self.samples)
        if len(samples) < 3:
            raise ValueError("need at least 3 radius samples")
        if min(samples) <= 0:
            raise NonPositiveRadiusError(f"min sample {min(samples)}")
        object.__setattr__(self, "samples", samples)

    def rho_of(self, theta):
        theta = np.mod(np.asarray(theta, dtype=float), 2.0 * np.pi)
        n = len(self.samples)
        grid = np.linspace(0.0, 2.0 * np.pi, n + 1)
        values = np.append(self.samples, self.samples[0])  # periodic closure
        return np.interp(theta, grid, values)


BoundaryCurve = Circle | Ellipse | Epitrochoid | CustomRadial


def rho(curve: BoundaryCurve, theta):
    """Boundary radius at angle(s) theta (reduced modulo 2*pi)."""
    theta = np.mod(np.asarray(theta, dtype=float), 2.0 * np.pi)
    out = curve.rho_of(theta)
    return float(out) if out.ndim == 0 else out


def rho_extrema(curve: BoundaryCurve, grid_size: int = DEFAULT_EXTREMA_GRID):
    """(rho_min, rho_max) over a dense uniform angle grid.

    Exact for circles; for other curves the resolution is the grid step.
    """
    if isinstance(curve, Circle):
        return curve.radius, curve.radius
    if grid_size < 360:
        raise ValueError(f"grid_size {grid_size} < 360")
    theta = 2.0 * np.pi * np.arange(grid_size) / grid_size
    values = curve.rho_of(theta)
    return float(values.min()), float(values.max())


@dataclass(frozen=True)
class CollocationSet:
    """Boundary points z_j = rho(theta_j) e^{i theta_j} on the uniform grid."""

    angles: np.ndarray
    radii: np.ndarray
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def points(self) -> np.ndarray:
        return self.x + 1j * self.y


@dataclass(frozen=True)
class SourceSet:
    """Source points zeta_j = R e^{i theta_j} on the uniform grid."""

    radius: float
    angles: np.ndarray
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def points(self) -> np.ndarray:
        return self.x + 1j * self.y


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def collocation_points(curve: BoundaryCurve, n: int) -> CollocationSet:
    """N boundary collocation points at theta_j = 2*pi*(j-1)/N."""
    if n < 3:
        raise ValueError(f"need at least 3 collocation points, got {n}")
    angles = 2.0 * np.pi * np.arange(n) / n
    radii = np.asarray(curve.rho_of(angles), dtype=float)
    x = radii * np.cos(angles)
    y = radii * np.sin(angles)
    _freeze(angles, radii, x, y)
    return CollocationSet(angles=angles, radii=radii, x=x, y=y)


def source_points(radius: float, n: int) -> SourceSet:
    """N equally spaced source points on the circle of the given radius."""
    if radius <= 0:
        raise NonPositiveRadiusError(f"source radius {radius}")
    if n < 3:
        raise ValueError(f"need at least 3 source points, got {n}")
    angles = 2.0 * np.pi * np.arange(n) / n
    x = radius * np.cos(angles)
    y = radius * np.sin(angles)
    _freeze(angles, x, y)
    return SourceSet(radius=float(radius), angles=angles, x=x, y=y)


def require_sources_inside(curve: BoundaryCurve, radius: float) -> None:
    """Raise unless the source circle lies strictly inside the obstacle."""
    rho_min, _ = rho_extrema(curve)
    if radius >= rho_min:
        raise SourceOutsideObstacleError(
            f"source radius {radius} >= rho_min {rho_min}"
        )

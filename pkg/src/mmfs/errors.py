"""Exception types shared across the package."""


class MmfsError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrixError(MmfsError):
    """LU elimination hit a pivot below the singularity threshold."""


class NoConvergenceError(MmfsError):
    """Jacobi SVD sweeps exhausted with a large off-diagonal residual."""


class DimensionMismatchError(MmfsError):
    """Matrix/vector shapes violate a required relation (e.g. N = 2M+1)."""


class CoincidentPointsError(MmfsError):
    """A collocation point coincides with a source point."""


class NonPositiveRadiusError(MmfsError):
    """A boundary radius sample is zero or negative."""


class SourceOutsideObstacleError(MmfsError):
    """Source circle radius is not strictly inside the obstacle."""


class PointInsideObstacleError(MmfsError):
    """An evaluation point lies inside the obstacle."""


class DegenerateFitError(MmfsError):
    """Growth fit requested on a degenerate abscissa set."""


class ConfigError(MmfsError):
    """Invalid or inconsistent run configuration."""

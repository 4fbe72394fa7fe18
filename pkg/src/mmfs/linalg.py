"""Dense real linear algebra: LU solves, determinants, and a Jacobi SVD.

Everything here works on plain float64 numpy arrays.  The SVD is a
one-sided Jacobi iteration applied to the matrix itself rather than to
the Gram matrix, so small singular values keep their relative accuracy
even when the condition number climbs toward 1e9 and beyond.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import NoConvergenceError, SingularMatrixError

# Pivot below this fraction of the largest entry counts as singular.
PIVOT_RTOL = 1e-30

# Jacobi sweep control: stop once every column pair has inner product
# below STOP_TOL relative to the product of the column norms; give up
# after MAX_SWEEPS and report failure if the relative residual is still
# above FAIL_TOL.  The criterion must be relative, not absolute: columns
# whose norms differ by many orders of magnitude are orthogonal long
# before their raw inner products fall below any absolute threshold.
JACOBI_STOP_TOL = 1e-14
JACOBI_FAIL_TOL = 1e-8
JACOBI_MAX_SWEEPS = 60

# Condition numbers above this are numerically unreliable in float64.
COND_RELIABLE_LIMIT = 1e12


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {a.shape}")
    return a


def _require_square(a: np.ndarray) -> np.ndarray:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def lu_factor(a) -> tuple[np.ndarray, np.ndarray, float]:
    """LU-factorize a square matrix with partial pivoting.

    Returns (lu, perm, sign) where ``lu`` packs the unit-lower and upper
    triangular factors, ``perm`` is the row permutation applied to the
    right-hand side, and ``sign`` is the permutation parity.

    Raises SingularMatrixError when a pivot magnitude drops below
    PIVOT_RTOL times the largest entry of the input.
    """
    lu = _require_square(_as_matrix(a)).copy()
    n = lu.shape[0]
    scale = np.abs(lu).max() if n else 0.0
    if scale == 0.0:
        raise SingularMatrixError("zero matrix")
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) < PIVOT_RTOL * scale:
            raise SingularMatrixError(f"pivot {lu[p, k]:.3e} at column {k}")
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, sign


def lu_solve(a, b) -> np.ndarray:
    """Solve ``A x = b`` by LU factorization with partial pivoting."""
    a = _require_square(_as_matrix(a))
    b = np.asarray(b, dtype=float)
    if b.shape != (a.shape[0],):
        raise ValueError(f"rhs has shape {b.shape}, expected ({a.shape[0]},)")
    lu, perm, _ = lu_factor(a)
    n = a.shape[0]
    x = b[perm].copy()
    for k in range(1, n):          # forward substitution, unit lower factor
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):  # back substitution
        x[k] = (x[k] - lu[k, k + 1:] @ x[k + 1:]) / lu[k, k]
    return x


def determinant(a) -> float:
    """Determinant via LU pivots; 0.0 for numerically singular input."""
    a = _require_square(_as_matrix(a))
    try:
        lu, _, sign = lu_factor(a)
    except SingularMatrixError:
        return 0.0
    return float(sign * np.prod(np.diag(lu)))


@njit(cache=True, nogil=True)
def _jacobi_sweeps(a, stop_tol, max_sweeps):
    """Cyclic one-sided Jacobi rotations on the columns of ``a`` (in place).

    Returns the largest relative off-diagonal Gram term of the last sweep.
    """
    m, n = a.shape
    off = 0.0
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for t in range(m):
                    alpha += a[t, i] * a[t, i]
                    beta += a[t, j] * a[t, j]
                    gamma += a[t, i] * a[t, j]
                denom = np.sqrt(alpha * beta)
                if denom == 0.0:
                    continue
                rel = abs(gamma) / denom
                if rel > off:
                    off = rel
                if rel <= stop_tol:
                    continue
                tau = (beta - alpha) / (2.0 * gamma)
                if tau >= 0.0:
                    t_ = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t_ = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t_ * t_)
                s = c * t_
                for t in range(m):
                    ai = a[t, i]
                    aj = a[t, j]
                    a[t, i] = c * ai - s * aj
                    a[t, j] = s * ai + c * aj
        if off < stop_tol:
            break
    return off


def singular_values(a) -> np.ndarray:
    """Singular values of a dense matrix, sorted descending.

    One-sided Jacobi rotations orthogonalize the columns; the singular
    values are then the column norms.  Raises NoConvergenceError if the
    sweep cap is reached with a large off-diagonal residual.
    """
    a = _as_matrix(a)
    if a.size == 0:
        raise ValueError("empty matrix")
    if a.shape[0] < a.shape[1]:
        a = a.T
    work = np.array(a, dtype=float, order="F")
    if not np.any(work):
        return np.zeros(work.shape[1])
    off = _jacobi_sweeps(work, JACOBI_STOP_TOL, JACOBI_MAX_SWEEPS)
    if off > JACOBI_FAIL_TOL:
        raise NoConvergenceError(
            f"off-diagonal residual {off:.3e} after {JACOBI_MAX_SWEEPS} sweeps"
        )
    sv = np.sqrt(np.sum(work * work, axis=0))
    sv.sort()
    return sv[::-1].copy()


def cond2(a) -> float:
    """2-norm condition number: ratio of extreme singular values."""
    a = _require_square(_as_matrix(a))
    sv = singular_values(a)
    if sv[-1] == 0.0:
        return float("inf")
    return float(sv[0] / sv[-1])


def cond2_is_reliable(value: float) -> bool:
    """Whether a computed condition number is below the float64 trust limit."""
    return np.isfinite(value) and value <= COND_RELIABLE_LIMIT

"""Method of particular solutions for the eccentric planar annulus.

Domain: the disk of radius R2 about C' = 0 minus the closed disk of radius
R1 about C = (d, 0).  The trial space is spanned by harmonic functions

    1,  log|z - C|,  Re (R1 / (z - C))**j,  Re (z / R2)**j      (1 <= j <= N),

which are even in y; the first eigenfunction is simple, hence symmetric
about the axis CC', so sine terms are not needed and collocation only
uses the upper half of each circle.  For a trial sigma the rows impose
u = 0 on the inner circle and du/dn - sigma u = 0 on the outer one; sigma
is an eigenvalue exactly when the column-normalized matrix loses rank,
which is detected as a minimum of its smallest singular value.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.linalg import qr

from .model_spaces import DomainError

__all__ = [
    "IllConditionedWarning",
    "JacobiConvergenceError",
    "MpsConfig",
    "MpsResult",
    "NoMinimumError",
    "collocation_matrices",
    "singular_values",
    "smallest_singular_value",
    "solve_eccentric",
]

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class JacobiConvergenceError(ArithmeticError):
    pass


class NoMinimumError(ArithmeticError):
    """The singular-value scan has no interior local minimum."""

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


class IllConditionedWarning(UserWarning):
    pass


@numba.njit(cache=True)
def _hestenes(u, tol, max_sweeps):
    """Cyclic one-sided Jacobi in place; returns the number of sweeps used or -1."""
    n = u.shape[1]
    rows = u.shape[0]
    for sweep in range(max_sweeps):
        worst = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(rows):
                    alpha += u[k, i] * u[k, i]
                    beta += u[k, j] * u[k, j]
                    gamma += u[k, i] * u[k, j]
                scale = math.sqrt(alpha * beta)
                if scale == 0.0 or abs(gamma) <= tol * scale:
                    continue
                worst = max(worst, abs(gamma) / scale)
                zeta = (beta - alpha) / (2.0 * gamma)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + math.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                for k in range(rows):
                    x = u[k, i]
                    y = u[k, j]
                    u[k, i] = c * x - s * y
                    u[k, j] = s * x + c * y
        if worst <= tol:
            return sweep + 1
    return -1


def singular_values(matrix, tol: float = 1e-15, max_sweeps: int = 60) -> np.ndarray:
    """All singular values of a tall matrix by one-sided (Hestenes) Jacobi.

    A column-pivoted Householder QR first shrinks the problem to the
    square factor R, which has the same singular values; Jacobi then runs
    on R^T, whose graded rows make the rotations converge in a few sweeps.
    Returned in descending order.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] < a.shape[1]:
        raise DomainError(f"need a 2-d matrix with rows >= columns, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    cols = a.shape[1]
    if cols == 0:
        return np.zeros(0)
    r = qr(a, mode="r", pivoting=True)[0][:cols]
    u = np.ascontiguousarray(r.T)
    if _hestenes(u, tol, max_sweeps) < 0:
        raise JacobiConvergenceError(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")
    return np.sort(np.sqrt(np.einsum("ij,ij->j", u, u)))[::-1]


def smallest_singular_value(matrix) -> float:
    """Smallest singular value of a tall matrix via :func:`singular_values`."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim == 2 and (a.shape[0] > 2000 or a.shape[1] > 500):
        raise DomainError(f"matrix too large for the dense Jacobi solver: {a.shape}")
    return float(singular_values(a)[-1])


@dataclass(frozen=True)
class MpsConfig:
    basis_order: int = 24
    collocation_factor: int = 4
    sigma_bracket: tuple[float, float] | None = None
    scan_points: int = 200
    refine_tol: float = 1e-10
    accept_ratio: float = 1e3

    def __post_init__(self):
        if self.basis_order < 4:
            raise DomainError("basis_order must be at least 4")
        if self.collocation_factor < 2:
            raise DomainError("collocation_factor must be at least 2")
        if self.scan_points < 3:
            raise DomainError("scan_points must be at least 3")
        if self.sigma_bracket is not None:
            lo, hi = self.sigma_bracket
            if not 0 < lo < hi:
                raise DomainError(f"need 0 < low < high, got {self.sigma_bracket}")


@dataclass(frozen=True)
class MpsResult:
    sigma: float
    min_singular_value: float
    scan_trace: list[tuple[float, float]] = field(repr=False)
    basis_order: int


def collocation_matrices(R1: float, R2: float, d: float, basis_order: int,
                         collocation_factor: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrices (B, V) with the collocation system A(sigma) = B - sigma V.

    Inner-circle rows of V are zero, so those rows of A(sigma) are plain
    Dirichlet values.
    """
    size = 2 + 2 * basis_order
    count = collocation_factor * size
    t = math.pi * (np.arange(count) + 0.5) / count
    inner = d + R1 * np.exp(1j * t)
    normal = np.exp(1j * t)
    outer = R2 * normal

    # powers are taken of R1/(z - C) and z/R2, both of modulus near 1 on the boundary
    def values(z):
        inv = R1 / (z - d)
        out = z / R2
        cols = [np.ones_like(z.real), np.log(np.abs(z - d))]
        for j in range(1, basis_order + 1):
            cols.append((inv ** j).real)
        for j in range(1, basis_order + 1):
            cols.append((out ** j).real)
        return np.column_stack(cols)

    def normal_derivs(z, n):
        # d/dn Re f = Re(f'(z) n) for analytic f
        zc = z - d
        inv = R1 / zc
        out = z / R2
        cols = [np.zeros_like(z.real), (n / zc).real]
        for j in range(1, basis_order + 1):
            cols.append((-j * inv ** j / zc * n).real)
        for j in range(1, basis_order + 1):
            cols.append((j * out ** (j - 1) / R2 * n).real)
        return np.column_stack(cols)

    b = np.vstack([values(inner), normal_derivs(outer, normal)])
    v = np.vstack([np.zeros((count, size)), values(outer)])
    return b, v


def _column_scales(b, v):
    # sigma-independent, so a null vector made of one basis function stays null
    norms = np.sqrt(np.einsum("ij,ij->j", b, b) + np.einsum("ij,ij->j", v, v))
    ratio = norms.max() / norms.min()
    if ratio > 1e12:
        warnings.warn(f"column norm ratio {ratio:.3g} exceeds 1e12",
                      IllConditionedWarning, stacklevel=3)
    return norms


def _golden(f, lo, hi, tol):
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol * max(1.0, abs(lo)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def solve_eccentric(R1: float, R2: float, d: float, cfg: MpsConfig | None = None) -> MpsResult:
    """First mixed Steklov-Dirichlet eigenvalue of the eccentric annulus.

    Scans sigma over the bracket (default 0.1 to 1.5 times the concentric
    value 1/(R2 log(R2/R1))), refines each interior local minimum of the
    smallest singular value by golden-section search, and returns the
    lowest sigma whose refined minimum is within ``accept_ratio`` of the
    best one found.
    """
    cfg = cfg or MpsConfig()
    if not 0 < R1 < R2:
        raise DomainError(f"need 0 < R1 < R2, got R1={R1}, R2={R2}")
    if not 0 <= d < R2 - R1:
        raise DomainError(f"need 0 <= d < R2 - R1, got d={d}")
    concentric = 1.0 / (R2 * math.log(R2 / R1))
    lo, hi = cfg.sigma_bracket or (0.1 * concentric, 1.5 * concentric)
    b, v = collocation_matrices(R1, R2, d, cfg.basis_order, cfg.collocation_factor)
    scales = _column_scales(b, v)
    b, v = b / scales, v / scales
    f = lambda s: smallest_singular_value(b - s * v)

    grid = np.linspace(lo, hi, cfg.scan_points)
    vals = np.array([f(s) for s in grid])
    trace = [(float(s), float(x)) for s, x in zip(grid, vals)]
    interior = [i for i in range(1, len(grid) - 1)
                if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]]
    if not interior:
        raise NoMinimumError(f"no interior minimum of the smallest singular value in [{lo}, {hi}]",
                             trace)
    refined = [_golden(f, grid[i - 1], grid[i + 1], cfg.refine_tol) for i in interior]
    best = min(val for _, val in refined)
    for sigma, val in refined:
        if val <= cfg.accept_ratio * best:
            return MpsResult(float(sigma), float(val), trace, cfg.basis_order)
    raise AssertionError("unreachable")

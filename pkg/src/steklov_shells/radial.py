"""Radial factors of mixed Steklov-Dirichlet eigenfunctions on concentric shells.

On the shell between geodesic spheres of radii R1 < R2 about a common
center, separated solutions are ``a(r) * f(theta)`` with ``f`` a Laplace
eigenfunction of the unit sphere.  The radial factor solves

    a'' + (omega'/omega) a' - lam(r) a = 0,   a(R1) = 0,

and its Steklov eigenvalue is a'(R2) / a(R2).  For the constant mode
(lam = 0) the solution is a(r) = integral of 1/omega from R1 to r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model_spaces import DomainError, ModelSpace, density, max_outer_radius
from .quadrature import DEFAULT, Quadrature1D, integrate

__all__ = [
    "RadialPotential",
    "RadialProfile",
    "UnsupportedFamilyError",
    "first_radial",
    "mode_ordering_check",
    "radial_mode",
    "sigma1_concentric",
]


class UnsupportedFamilyError(DomainError):
    """Operation needs a constant-curvature space (R^m, S^m, RP^n, RH^n)."""


def require_constant_curvature(space: ModelSpace) -> int:
    if space.kappa is None:
        raise UnsupportedFamilyError(
            f"{space} is not of constant curvature; only euclidean, sphere, rp and rh are supported"
        )
    return space.kappa


@dataclass(frozen=True, eq=False)
class RadialProfile:
    space: ModelSpace
    R1: float
    grid: np.ndarray
    a_values: np.ndarray
    a_prime_values: np.ndarray
    mode_l: int = 0

    @property
    def r_max(self) -> float:
        return float(self.grid[-1])

    @property
    def sigma(self) -> float:
        """Steklov eigenvalue a'/a at the outer end of the grid."""
        return float(self.a_prime_values[-1] / self.a_values[-1])


class RadialPotential:
    """The first radial factor a(r) = int_{R1}^r dt / omega(t), evaluated on demand."""

    def __init__(self, space: ModelSpace, R1: float, cfg: Quadrature1D | None = None):
        if not 0 < R1 < space.inj:
            raise DomainError(f"R1 must lie in (0, {space.inj}), got {R1}")
        self.space = space
        self.R1 = float(R1)
        self.cfg = cfg or DEFAULT

    def _inv_density(self, t):
        return 1.0 / density(self.space, t)

    def evaluate(self, r) -> tuple[np.ndarray, np.ndarray]:
        """Values of a at the points ``r`` (all >= R1) and per-point error bounds.

        Points are visited in increasing order and integrated piecewise, so
        the cost is one short integral per point.
        """
        r = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any(r < self.R1):
            raise DomainError(f"a(r) is defined for r >= R1 = {self.R1}")
        order = np.argsort(r, kind="stable")
        values = np.empty_like(r)
        errors = np.empty_like(r)
        acc, acc_err, prev = 0.0, 0.0, self.R1
        for i in order:
            piece, err = integrate(self._inv_density, prev, r[i], self.cfg)
            acc += piece
            acc_err += err
            values[i], errors[i] = acc, acc_err
            prev = r[i]
        return values, errors

    def __call__(self, r):
        values, _ = self.evaluate(r)
        return values


def first_radial(space: ModelSpace, R1: float, r_max: float,
                 cfg: Quadrature1D | None = None, num: int = 257) -> RadialProfile:
    """Sample the constant-mode radial factor on ``num`` uniform points."""
    if not 0 < R1 < r_max < space.inj:
        raise DomainError(f"need 0 < R1 < r_max < {space.inj}, got R1={R1}, r_max={r_max}")
    grid = np.linspace(R1, r_max, num)
    a = RadialPotential(space, R1, cfg)(grid)
    a[0] = 0.0
    a_prime = 1.0 / density(space, grid)
    return RadialProfile(space, float(R1), grid, a, a_prime, 0)


def _check_shell(space: ModelSpace, R1: float, R2: float):
    bound = max_outer_radius(space)
    if not 0 < R1 < R2 < bound:
        raise DomainError(f"need 0 < R1 < R2 < {bound} for {space}, got R1={R1}, R2={R2}")


def sigma1_concentric(space: ModelSpace, R1: float, R2: float,
                      cfg: Quadrature1D | None = None) -> float:
    """First eigenvalue 1 / (omega(R2) a(R2)) of the concentric shell."""
    _check_shell(space, R1, R2)
    a2, _ = integrate(lambda t: 1.0 / density(space, t), R1, R2, cfg or DEFAULT)
    return 1.0 / (density(space, R2) * a2)


def _mode_coefficients(space: ModelSpace, l: int):
    m = space.m
    lam = l * (l + m - 2)
    kappa = space.kappa
    if kappa == 0:
        return (lambda r: (m - 1) / r), (lambda r: lam / (r * r))
    if kappa == 1:
        return (lambda r: (m - 1) / math.tan(r)), (lambda r: lam / math.sin(r) ** 2)
    return (lambda r: (m - 1) / math.tanh(r)), (lambda r: lam / math.sinh(r) ** 2)


def radial_mode(space: ModelSpace, R1: float, R2: float, l: int,
                ode_step: float | None = None) -> RadialProfile:
    """Radial factor of the degree-``l`` spherical-harmonic mode by classical RK4.

    Starts from a(R1) = 0, a'(R1) = 1; only ratios a'/a are meaningful so
    the slope normalization is irrelevant.  The step is ``ode_step`` rounded
    down so that an integer number of steps lands exactly on R2.
    """
    require_constant_curvature(space)
    _check_shell(space, R1, R2)
    if int(l) != l or l < 0:
        raise DomainError(f"mode degree must be a non-negative integer, got {l}")
    if ode_step is None:
        ode_step = (R2 - R1) / 4096
    if not (ode_step > 0 and ode_step <= R2 - R1):
        raise DomainError(f"ode_step must lie in (0, R2 - R1], got {ode_step}")
    steps = math.ceil((R2 - R1) / ode_step - 1e-9)
    h = (R2 - R1) / steps
    drift, potential = _mode_coefficients(space, int(l))

    def rhs(r, a, b):
        return b, potential(r) * a - drift(r) * b

    grid = R1 + h * np.arange(steps + 1)
    grid[-1] = R2
    a_vals = np.empty(steps + 1)
    b_vals = np.empty(steps + 1)
    a, b = 0.0, 1.0
    a_vals[0], b_vals[0] = a, b
    for i in range(steps):
        r = R1 + i * h
        k1a, k1b = rhs(r, a, b)
        k2a, k2b = rhs(r + h / 2, a + h / 2 * k1a, b + h / 2 * k1b)
        k3a, k3b = rhs(r + h / 2, a + h / 2 * k2a, b + h / 2 * k2b)
        k4a, k4b = rhs(r + h, a + h * k3a, b + h * k3b)
        a += h / 6 * (k1a + 2 * k2a + 2 * k3a + k4a)
        b += h / 6 * (k1b + 2 * k2b + 2 * k3b + k4b)
        a_vals[i + 1], b_vals[i + 1] = a, b
    return RadialProfile(space, float(R1), grid, a_vals, b_vals, int(l))


def mode_ordering_check(space: ModelSpace, R1: float, R2: float, l_max: int,
                        ode_step: float | None = None) -> tuple[list[tuple[int, float]], bool]:
    """Steklov eigenvalues of modes 0..l_max and whether mode 0 is strictly smallest."""
    table = [(l, radial_mode(space, R1, R2, l, ode_step).sigma) for l in range(l_max + 1)]
    sigma0 = table[0][1]
    return table, all(sigma0 < s for _, s in table[1:])

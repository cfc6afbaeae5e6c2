"""Rayleigh-quotient functionals of off-center geodesic shells.

The test function is the concentric first eigenfunction ``a(r_C)`` where
``r_C`` is the distance to the inner center C.  For the shell
``B2' \\ cl(B1)`` with outer center C' at distance d from C we evaluate

* the Dirichlet energy   N(d) = int |grad a(r_C)|^2 dV,
* the boundary mass      D(d) = int_{dB2'} a(r_C)^2 dS,
* their ratio            Q(d) = N(d) / D(d),

which bounds the first mixed Steklov-Dirichlet eigenvalue from above and
equals it at d = 0.  Everything is reduced to one-dimensional integrals by
the rotational symmetry about the axis CC'; the dimension only enters
through the weight sin(theta)**(m-2) and the area of the unit (m-2)-sphere.

Off-center quantities need constant curvature (euclidean, sphere, rp, rh).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geodesic_trig import _angle_sas, _side, angle_from_sss, boundary_distance
from .model_spaces import DomainError, ModelSpace, density, max_outer_radius, unit_sphere_area
from .quadrature import DEFAULT, Quadrature1D, integrate
from .radial import RadialPotential, require_constant_curvature, sigma1_concentric

__all__ = [
    "CSV_FIELDS",
    "InvariantViolation",
    "ShellGeometry",
    "Sweep",
    "SweepRecord",
    "boundary_mass",
    "boundary_mass_from_center",
    "cap_measure",
    "cap_measure_compare",
    "default_d_grid",
    "density_asymmetry",
    "dirichlet_energy",
    "inner_center_distance",
    "newton_shell_residual",
    "rayleigh_quotient",
    "sweep",
]

CSV_FIELDS = ("space", "m", "k", "R1", "R2", "d", "N", "D", "D_alt", "Q",
              "sigma1_concentric", "newton_residual", "quad_err")

STRICT_FACTOR = 10.0


class InvariantViolation(ArithmeticError):
    """A geometric fact the computation relies on failed numerically."""


@dataclass(frozen=True)
class ShellGeometry:
    """Inner ball of radius R1 about C inside the ball of radius R2 about C'.

    ``d`` is the distance |CC'|; admissibility is d + R1 < R2 < inj / 2.
    """

    space: ModelSpace
    R1: float
    R2: float
    d: float = 0.0

    def __post_init__(self):
        bound = max_outer_radius(self.space)
        if not 0 < self.R1 < self.R2 < bound:
            raise DomainError(f"need 0 < R1 < R2 < {bound} for {self.space}, "
                              f"got R1={self.R1}, R2={self.R2}")
        if not 0 <= self.d < self.R2 - self.R1:
            raise DomainError(f"need 0 <= d < R2 - R1 = {self.R2 - self.R1}, got d={self.d}")

    def at(self, d: float) -> "ShellGeometry":
        return ShellGeometry(self.space, self.R1, self.R2, float(d))

    @property
    def kappa(self) -> int:
        return require_constant_curvature(self.space)


@dataclass(frozen=True)
class SweepRecord:
    d: float
    energy: float
    boundary_mass: float
    quotient: float
    boundary_mass_alt: float
    newton_residual: float
    quad_err: float
    sigma1_concentric: float
    energy_err: float = 0.0
    boundary_mass_err: float = 0.0
    geometry: ShellGeometry | None = field(default=None, compare=False)

    def as_row(self) -> dict:
        g = self.geometry
        return {
            "space": g.space.label, "m": g.space.m, "k": g.space.k,
            "R1": g.R1, "R2": g.R2, "d": self.d,
            "N": self.energy, "D": self.boundary_mass, "D_alt": self.boundary_mass_alt,
            "Q": self.quotient, "sigma1_concentric": self.sigma1_concentric,
            "newton_residual": self.newton_residual, "quad_err": self.quad_err,
        }


def _weight(m, theta):
    if m == 2:
        return np.ones_like(theta)
    return np.sin(theta) ** (m - 2)


class _Potential:
    """Tracks the worst inner-quadrature error across integrand calls."""

    def __init__(self, geometry, cfg):
        self.inner = RadialPotential(geometry.space, geometry.R1, cfg)
        self.max_err = 0.0
        self.max_value = 0.0

    def __call__(self, r):
        values, errs = self.inner.evaluate(r)
        self.max_err = max(self.max_err, float(errs.max()))
        self.max_value = max(self.max_value, float(values.max()))
        return values


def inner_center_distance(geometry: ShellGeometry, psi):
    """Distance from C to the point of dB2' seen from C' at angle ``psi`` off C' -> C."""
    kappa = geometry.kappa
    psi = np.asarray(psi, dtype=float)
    if np.any(psi < 0) or np.any(psi > math.pi):
        raise DomainError("psi must lie in [0, pi]")
    if geometry.d == 0:
        out = np.full_like(psi, geometry.R2)
    else:
        out = _side(kappa, geometry.d, geometry.R2, psi)
    return float(out) if out.ndim == 0 else out


def _boundary_mass(geometry, cfg, potential=None):
    m = geometry.space.m
    pot = potential or _Potential(geometry, cfg)

    def integrand(psi):
        return pot(inner_center_distance(geometry, psi)) ** 2 * _weight(m, psi)

    value, err = integrate(integrand, 0.0, math.pi, cfg)
    scale = unit_sphere_area(m - 1) * density(geometry.space, geometry.R2)
    inner = 2.0 * unit_sphere_area(m) * density(geometry.space, geometry.R2) * pot.max_value * pot.max_err
    return scale * value, scale * err + inner


def _boundary_mass_from_center(geometry, cfg, potential=None):
    kappa, m, d, R2 = geometry.kappa, geometry.space.m, geometry.d, geometry.R2
    pot = potential or _Potential(geometry, cfg)
    jacobian_max = [0.0]

    def integrand(theta):
        rho = boundary_distance(kappa, d, R2, theta)
        if d == 0:
            cos_lam = np.ones_like(theta)
        else:
            cos_lam = np.cos(angle_from_sss(kappa, d, rho, R2))
        if np.any(cos_lam <= 0):
            raise InvariantViolation(
                f"boundary normal not acute to the radial direction at d={d}, R2={R2}")
        jac = density(geometry.space, rho) / cos_lam
        jacobian_max[0] = max(jacobian_max[0], float(np.max(jac)))
        return pot(rho) ** 2 * jac * _weight(m, theta)

    value, err = integrate(integrand, 0.0, math.pi, cfg)
    scale = unit_sphere_area(m - 1)
    inner = 2.0 * unit_sphere_area(m) * jacobian_max[0] * pot.max_value * pot.max_err
    return scale * value, scale * err + inner


def _dirichlet_energy(geometry, cfg, potential=None):
    kappa, m = geometry.kappa, geometry.space.m
    pot = potential or _Potential(geometry, cfg)

    def integrand(theta):
        rho = boundary_distance(kappa, geometry.d, geometry.R2, theta)
        return pot(rho) * _weight(m, theta)

    value, err = integrate(integrand, 0.0, math.pi, cfg)
    scale = unit_sphere_area(m - 1)
    return scale * value, scale * err + unit_sphere_area(m) * pot.max_err


def boundary_mass(geometry: ShellGeometry, cfg: Quadrature1D | None = None) -> float:
    """Integral of a(r_C)**2 over dB2', parametrized from the outer center C'."""
    return _boundary_mass(geometry, cfg or DEFAULT)[0]


def boundary_mass_from_center(geometry: ShellGeometry, cfg: Quadrature1D | None = None) -> float:
    """The same boundary integral parametrized by directions at C.

    Uses dS = omega(r_C) / cos(lambda) dmu, where lambda is the angle at
    the boundary point between the geodesic from C and the radius from C'.
    Agreement with :func:`boundary_mass` checks that area identity.
    """
    return _boundary_mass_from_center(geometry, cfg or DEFAULT)[0]


def dirichlet_energy(geometry: ShellGeometry, cfg: Quadrature1D | None = None) -> float:
    """Integral of |grad a(r_C)|**2 over the shell.

    |grad a| = 1/omega, so integrating along each ray from C out to dB2'
    gives a(rho(theta)); the shell is star-shaped about C.
    """
    return _dirichlet_energy(geometry, cfg or DEFAULT)[0]


def _newton_residual(space, R2, x, cfg):
    kappa = require_constant_curvature(space)
    if not 0 <= x < R2 < max_outer_radius(space):
        raise DomainError(f"need 0 <= x < R2 < {max_outer_radius(space)}, got x={x}, R2={R2}")
    m = space.m

    def integrand(psi):
        # alpha is the angle at X between X -> C' and X -> P; it tends to pi - psi as x -> 0
        if x == 0:
            r_x = np.full_like(psi, R2)
            cos_alpha = -np.cos(psi)
        else:
            r_x = _side(kappa, x, R2, psi)
            cos_alpha = np.cos(_angle_sas(kappa, R2, x, psi))
        return cos_alpha / density(space, r_x) * _weight(m, psi)

    value, err = integrate(integrand, 0.0, math.pi, cfg)
    scale = unit_sphere_area(m - 1) * density(space, R2)
    return scale * value, scale * err


def newton_shell_residual(space: ModelSpace, R2: float, x: float,
                          cfg: Quadrature1D | None = None) -> float:
    """Axial component of the shell integral of v_X / omega(r_X) over dB2'.

    X sits at distance ``x`` from the center of the ball of radius R2 and
    v_X(P) is the unit direction at X toward P; the transverse components
    vanish by symmetry.  The exact value is zero.
    """
    return _newton_residual(space, float(R2), float(x), cfg or DEFAULT)[0]


def rayleigh_quotient(geometry: ShellGeometry, cfg: Quadrature1D | None = None) -> SweepRecord:
    """Energy, boundary mass (both ways), quotient and diagnostics at one displacement."""
    cfg = cfg or DEFAULT
    pot = _Potential(geometry, cfg)
    n, n_err = _dirichlet_energy(geometry, cfg, pot)
    dm, dm_err = _boundary_mass(geometry, cfg, pot)
    alt, alt_err = _boundary_mass_from_center(geometry, cfg, pot)
    newton, _ = _newton_residual(geometry.space, geometry.R2, geometry.d, cfg)
    sigma = sigma1_concentric(geometry.space, geometry.R1, geometry.R2, cfg)
    return SweepRecord(
        d=geometry.d, energy=n, boundary_mass=dm, quotient=n / dm,
        boundary_mass_alt=alt, newton_residual=newton,
        quad_err=n_err + dm_err + alt_err, sigma1_concentric=sigma,
        energy_err=n_err, boundary_mass_err=dm_err, geometry=geometry,
    )


def default_d_grid(R1: float, R2: float, steps: int = 17) -> list[float]:
    """Uniform displacements on [0, 0.95 (R2 - R1)], avoiding internal tangency."""
    if steps < 1:
        raise DomainError("steps must be positive")
    return [float(v) for v in np.linspace(0.0, 0.95 * (R2 - R1), steps)]


@dataclass
class Sweep:
    """Records in input order plus the inequality checks along the sweep.

    Each check is ``"strict"`` when every gap beats ``STRICT_FACTOR`` times
    the summed quadrature errors, ``"within tolerance"`` when some gap is
    smaller than that but not negative beyond it, and ``"violated"``
    otherwise.
    """

    records: list[SweepRecord]
    failures: list[tuple[float, str]]
    energy0: float
    mass0: float
    sigma1: float

    def _status(self, gaps, errs):
        gaps, errs = np.asarray(gaps, float), np.asarray(errs, float)
        if gaps.size == 0:
            return "strict"
        if np.all(gaps > STRICT_FACTOR * errs):
            return "strict"
        if np.all(gaps >= -STRICT_FACTOR * errs):
            return "within tolerance"
        return "violated"

    def _sorted(self):
        return sorted(self.records, key=lambda r: r.d)

    def mass_increasing(self) -> str:
        recs = self._sorted()
        gaps = [b.boundary_mass - a.boundary_mass for a, b in zip(recs, recs[1:])]
        errs = [a.boundary_mass_err + b.boundary_mass_err for a, b in zip(recs, recs[1:])]
        return self._status(gaps, errs)

    def energy_bounded(self) -> str:
        recs = [r for r in self.records if r.d > 0]
        return self._status([self.energy0 - r.energy for r in recs], [r.energy_err for r in recs])

    def quotient_bounded(self) -> str:
        recs = [r for r in self.records if r.d > 0]
        errs = [r.quotient * (r.energy_err / r.energy + r.boundary_mass_err / r.boundary_mass)
                for r in recs]
        return self._status([self.sigma1 - r.quotient for r in recs], errs)

    def quotient_monotone(self) -> bool:
        """Observed (not proven) monotone decrease of the quotient in d."""
        q = [r.quotient for r in self._sorted()]
        return all(b < a for a, b in zip(q, q[1:]))

    def flags(self) -> dict[str, str]:
        return {
            "boundary_mass_increasing": self.mass_increasing(),
            "energy_below_concentric": self.energy_bounded(),
            "quotient_below_concentric": self.quotient_bounded(),
        }

    @property
    def certified(self) -> bool:
        return not self.failures and all(v == "strict" for v in self.flags().values())


def sweep(base: ShellGeometry, d_values, cfg: Quadrature1D | None = None,
          workers: int = 1) -> Sweep:
    """Evaluate :func:`rayleigh_quotient` at each displacement.

    Records keep the input order whatever ``workers`` is; a displacement
    that fails is reported in ``failures`` instead of aborting the sweep.
    """
    cfg = cfg or DEFAULT
    d_values = [float(d) for d in d_values]

    def one(d):
        try:
            return rayleigh_quotient(base.at(d), cfg)
        except (ArithmeticError, ValueError, RuntimeError) as exc:
            return exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, d_values))
    else:
        results = [one(d) for d in d_values]
    records = [r for r in results if isinstance(r, SweepRecord)]
    failures = [(d, f"{type(r).__name__}: {r}") for d, r in zip(d_values, results)
                if not isinstance(r, SweepRecord)]
    space = base.space
    a2, _ = integrate(lambda t: 1.0 / density(space, t), base.R1, base.R2, cfg)
    energy0 = unit_sphere_area(space.m) * a2
    mass0 = unit_sphere_area(space.m) * density(space, base.R2) * a2 ** 2
    return Sweep(records, failures, energy0, mass0, sigma1_concentric(space, base.R1, base.R2, cfg))


def cap_measure(m: int, theta: float) -> float:
    """Measure of the set of unit directions in R^m within angle theta of an axis."""
    if not 0 <= theta <= math.pi:
        raise DomainError("cap angle must lie in [0, pi]")
    n = m - 2
    # I_n(theta) = int_0^theta sin^n, by the standard reduction formula
    if n % 2 == 0:
        val, j = theta, 0
    else:
        val, j = 1.0 - math.cos(theta), 1
    while j < n:
        j += 2
        val = -math.sin(theta) ** (j - 1) * math.cos(theta) / j + (j - 1) / j * val
    return unit_sphere_area(m - 1) * val


def cap_measure_compare(space: ModelSpace, R2: float, d: float, s: float,
                        R1: float | None = None, tol: float = 1e-12) -> tuple[float, float, bool]:
    """Direction sets at C of the two lunes B2' \\ B2 and B2 \\ B2' at radii R2 +/- s.

    ``left`` measures directions at C whose point at distance R2 + s lies
    inside B2'; ``right`` those whose point at distance R2 - s lies outside
    it.  Both are caps about the axis CC'.  Returns (left, right, left <= right + tol).
    """
    kappa = require_constant_curvature(space)
    if kappa != 1:
        raise DomainError(f"cap comparison is for positively curved spaces, got {space}")
    bound = max_outer_radius(space)
    if not 0 < R2 < bound:
        raise DomainError(f"need 0 < R2 < {bound}, got {R2}")
    if d == 0:
        return 0.0, 0.0, True
    limit = R2 - R1 if R1 is not None else R2
    if not (0 < s <= d < limit):
        raise DomainError(f"need 0 < s <= d < {limit}, got s={s}, d={d}")
    m = space.m
    theta_out = angle_from_sss(kappa, R2, R2 + s, d)
    theta_in = angle_from_sss(kappa, R2, R2 - s, d)
    left = cap_measure(m, theta_out)
    right = unit_sphere_area(m) - cap_measure(m, theta_in)
    return left, right, left <= right + tol


def density_asymmetry(space: ModelSpace, R2: float, s_grid) -> bool:
    """Whether omega(R2 - s) < omega(R2 + s) at every s in the grid."""
    s = np.asarray(s_grid, dtype=float)
    bound = max_outer_radius(space)
    if not 0 < R2 < bound:
        raise DomainError(f"need 0 < R2 < {bound}, got {R2}")
    if np.any(s <= 0) or np.any(s >= R2):
        raise DomainError("every s must lie in (0, R2)")
    return bool(np.all(density(space, R2 - s) < density(space, R2 + s)))

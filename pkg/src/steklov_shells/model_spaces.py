"""Two-point homogeneous model spaces and their radial geometry.

Every space is normalized so that the compact families have sectional
curvature in [1, 4] and the noncompact ones in [-4, -1].  In geodesic polar
coordinates about any point the volume element is ``omega(r) dr dmu`` with

    omega(r) = s(r)**(m - 1) * c(r)**(k - 1)

where ``s`` is sin / sinh / identity and ``c`` is cos / cosh / 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "Family",
    "ModelSpace",
    "density",
    "density_derivative",
    "max_outer_radius",
    "parse_space",
    "unit_sphere_area",
]


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class Family(enum.Enum):
    EUCLIDEAN = "euclidean"
    SPHERE = "sphere"
    REAL_PROJECTIVE = "rp"
    COMPLEX_PROJECTIVE = "cp"
    QUATERNIONIC_PROJECTIVE = "hp"
    OCTONIONIC_PROJECTIVE = "op2"
    REAL_HYPERBOLIC = "rh"
    COMPLEX_HYPERBOLIC = "ch"
    QUATERNIONIC_HYPERBOLIC = "hh"
    OCTONIONIC_HYPERBOLIC = "oh2"

    @property
    def field_dim(self) -> int:
        return _FIELD_DIM[self]

    @property
    def compact(self) -> bool:
        return self in _COMPACT

    @property
    def noncompact(self) -> bool:
        return self in _NONCOMPACT


_FIELD_DIM = {
    Family.EUCLIDEAN: 1,
    Family.SPHERE: 1,
    Family.REAL_PROJECTIVE: 1,
    Family.REAL_HYPERBOLIC: 1,
    Family.COMPLEX_PROJECTIVE: 2,
    Family.COMPLEX_HYPERBOLIC: 2,
    Family.QUATERNIONIC_PROJECTIVE: 4,
    Family.QUATERNIONIC_HYPERBOLIC: 4,
    Family.OCTONIONIC_PROJECTIVE: 8,
    Family.OCTONIONIC_HYPERBOLIC: 8,
}

_PROJECTIVE = frozenset({
    Family.REAL_PROJECTIVE,
    Family.COMPLEX_PROJECTIVE,
    Family.QUATERNIONIC_PROJECTIVE,
    Family.OCTONIONIC_PROJECTIVE,
})
_COMPACT = _PROJECTIVE | {Family.SPHERE}
_NONCOMPACT = frozenset({
    Family.REAL_HYPERBOLIC,
    Family.COMPLEX_HYPERBOLIC,
    Family.QUATERNIONIC_HYPERBOLIC,
    Family.OCTONIONIC_HYPERBOLIC,
})
_OCTONIONIC = frozenset({Family.OCTONIONIC_PROJECTIVE, Family.OCTONIONIC_HYPERBOLIC})


@dataclass(frozen=True)
class ModelSpace:
    """One of the Euclidean or rank-one symmetric spaces.

    ``n`` is the real dimension for Euclidean space and the sphere, and the
    rank parameter (dimension over the field) for the other families.
    Construct through :meth:`of` or :func:`parse_space` so that ``m`` and
    ``k`` are derived consistently.
    """

    family: Family
    n: int
    m: int
    k: int

    def __post_init__(self):
        k = self.family.field_dim
        if self.k != k:
            raise DomainError(f"{self.family.value}: field dimension must be {k}, got {self.k}")
        if self.m != self.n * k:
            raise DomainError(f"{self.family.value}: m must equal n*k = {self.n * k}, got {self.m}")
        if self.m < 2:
            raise DomainError(f"{self.family.value}: real dimension must be at least 2, got {self.m}")
        if self.family in _PROJECTIVE or self.family in _NONCOMPACT:
            if self.n < 2:
                raise DomainError(f"{self.family.value}: n must be at least 2, got {self.n}")
        if self.family in _OCTONIONIC and self.n != 2:
            raise DomainError(f"{self.family.value}: only n = 2 exists, got {self.n}")

    @classmethod
    def of(cls, family: Family | str, n: int) -> "ModelSpace":
        if not isinstance(family, Family):
            family = Family(str(family).lower())
        k = family.field_dim
        return cls(family, int(n), int(n) * k, k)

    @property
    def inj(self) -> float:
        """Injectivity radius; ``math.inf`` when unbounded."""
        if self.family is Family.SPHERE:
            return math.pi
        if self.family in _PROJECTIVE:
            return math.pi / 2
        return math.inf

    @property
    def kappa(self) -> int | None:
        """Constant sectional curvature, or None when it is not constant."""
        if self.family is Family.EUCLIDEAN:
            return 0
        if self.family in (Family.SPHERE, Family.REAL_PROJECTIVE):
            return 1
        if self.family is Family.REAL_HYPERBOLIC:
            return -1
        return None

    @property
    def constant_curvature(self) -> bool:
        return self.kappa is not None

    @property
    def label(self) -> str:
        return self.family.value

    def s(self, r):
        if self.family is Family.EUCLIDEAN:
            return np.asarray(r, dtype=float) * 1.0
        if self.family.compact:
            return np.sin(r)
        return np.sinh(r)

    def c(self, r):
        if self.k == 1:
            return np.ones_like(np.asarray(r, dtype=float))
        if self.family.compact:
            return np.cos(r)
        return np.cosh(r)

    def __str__(self):
        return f"{self.family.value}(n={self.n}, m={self.m}, k={self.k})"


_DIM_ALIASES = {
    "s": "sphere", "r": "euclidean", "e": "euclidean",
    "rp": "rp", "cp": "cp", "hp": "hp", "qp": "hp", "op": "op2", "op2": "op2",
    "rh": "rh", "h": "rh", "ch": "ch", "hh": "hh", "qh": "hh", "oh": "oh2", "oh2": "oh2",
}


def parse_space(family: str, dim: int | None = None) -> ModelSpace:
    """Build a space from a CLI-style family string and dimension.

    ``dim`` is the real dimension for ``euclidean`` and ``sphere`` and the
    rank ``n`` for the projective and hyperbolic families.  The octonionic
    planes accept ``dim`` of None, 2 or 16.
    """
    name = family.strip().lower()
    name = _DIM_ALIASES.get(name, name)
    try:
        fam = Family(name)
    except ValueError:
        choices = ", ".join(f.value for f in Family)
        raise DomainError(f"unknown space family {family!r}; choose from {choices}") from None
    if fam in _OCTONIONIC:
        if dim not in (None, 2, 16):
            raise DomainError(f"{fam.value} only exists as the plane (n=2, m=16), got dim={dim}")
        return ModelSpace.of(fam, 2)
    if dim is None:
        raise DomainError(f"{fam.value} needs a dimension")
    return ModelSpace.of(fam, int(dim))


def _check_radius(space: ModelSpace, r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r <= 0.0) or np.any(r >= space.inj):
        raise DomainError(f"radius must lie in (0, {space.inj}) for {space}, got {r}")
    return r


def density(space: ModelSpace, r):
    """Polar volume density s(r)**(m-1) * c(r)**(k-1).

    Accepts scalars or arrays; returns a float for scalar input.
    """
    r = _check_radius(space, r)
    out = space.s(r) ** (space.m - 1) * space.c(r) ** (space.k - 1)
    return float(out) if out.ndim == 0 else out


def density_derivative(space: ModelSpace, r):
    """Exact derivative of :func:`density` with respect to r."""
    r = _check_radius(space, r)
    m, k = space.m, space.k
    s, c = space.s(r), space.c(r)
    if space.family is Family.EUCLIDEAN:
        ds = np.ones_like(r)
    elif space.family.compact:
        ds = np.cos(r)
    else:
        ds = np.cosh(r)
    out = (m - 1) * s ** (m - 2) * ds * c ** (k - 1)
    if k > 1:
        dc = -np.sin(r) if space.family.compact else np.sinh(r)
        out = out + (k - 1) * s ** (m - 1) * c ** (k - 2) * dc
    return float(out) if out.ndim == 0 else out


def max_outer_radius(space: ModelSpace) -> float:
    """Supremum of admissible outer radii, half the injectivity radius."""
    return space.inj / 2


def unit_sphere_area(m: int) -> float:
    """Surface measure of the unit (m-1)-sphere in R^m."""
    if int(m) != m or m < 1:
        raise DomainError(f"sphere area needs an integer m >= 1, got {m}")
    m = int(m)
    if m == 1:
        return 2.0
    if m == 2:
        return 2 * math.pi
    return 2 * math.pi ** (m / 2) / math.gamma(m / 2)

"""Triangle trigonometry in the constant-curvature planes (kappa = +1, 0, -1).

Conventions: side ``p`` is opposite vertex P, and so on.  All formulas go
through the generalized sine ``s`` (sin, identity, sinh) in half-angle
form, e.g.

    s(p/2)**2 = s((q - r)/2)**2 + s(q) s(r) sin(P/2)**2

which keeps full relative accuracy for thin and nearly degenerate
triangles, where the textbook cosine rule loses digits.

In the shell configuration the inner center C and outer center C' are a
distance d apart.  Angles at C are measured from the ray C -> C' and
angles at C' from the ray C' -> C.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .model_spaces import DomainError

__all__ = [
    "BoundaryDistanceError",
    "DegenerateTriangleWarning",
    "Triangle",
    "acute_angle_check",
    "angle_from_sss",
    "boundary_distance",
    "chord_symmetry_check",
    "side_from_sas",
]


class DegenerateTriangleWarning(UserWarning):
    """The included angle is 0 or pi, so the three points are collinear."""


class BoundaryDistanceError(ArithmeticError):
    """Neither the closed form nor bracketing produced a boundary distance."""


def _s(kappa, x):
    if kappa == 0:
        return np.asarray(x, dtype=float) * 1.0
    if kappa == 1:
        return np.sin(x)
    return np.sinh(x)


def _check_kappa(kappa):
    if kappa not in (-1, 0, 1):
        raise DomainError(f"kappa must be -1, 0 or +1, got {kappa}")


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _side(kappa, q, r, angle):
    h = _s(kappa, 0.5 * (q - r)) ** 2 + _s(kappa, q) * _s(kappa, r) * np.sin(0.5 * angle) ** 2
    if kappa == 0:
        return 2.0 * np.sqrt(h)
    if kappa == 1:
        return 2.0 * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))
    return 2.0 * np.arcsinh(np.sqrt(h))


def _c(kappa, x):
    if kappa == 0:
        return np.ones_like(np.asarray(x, dtype=float))
    if kappa == 1:
        return np.cos(x)
    return np.cosh(x)


def _angle_sas(kappa, b, c, A):
    # four-part formula: angle opposite b, sides b and c enclosing A
    num = np.sin(A) * _s(kappa, b)
    den = _c(kappa, b) * _s(kappa, c) - _c(kappa, c) * _s(kappa, b) * np.cos(A)
    return np.arctan2(num, den)


def _angle(kappa, p, q, r):
    half = 0.5 * (p + q + r)
    num = _s(kappa, half - r) * _s(kappa, half - q)
    den = _s(kappa, half) * _s(kappa, half - p)
    return 2.0 * np.arctan2(np.sqrt(np.maximum(num, 0.0)), np.sqrt(np.maximum(den, 0.0)))


def side_from_sas(kappa: int, q, r, lambda_P):
    """Side opposite P given the adjacent sides q, r and the included angle."""
    _check_kappa(kappa)
    q, r, lam = (np.asarray(v, dtype=float) for v in (q, r, lambda_P))
    if np.any(q <= 0) or np.any(r <= 0):
        raise DomainError("adjacent sides must be positive")
    if np.any(lam < 0) or np.any(lam > math.pi):
        raise DomainError("included angle must lie in [0, pi]")
    if kappa == 1 and (np.any(q >= math.pi) or np.any(r >= math.pi)):
        raise DomainError("spherical sides must be below pi")
    if np.any((lam == 0) | (lam == math.pi)):
        warnings.warn("collinear configuration: included angle is 0 or pi",
                      DegenerateTriangleWarning, stacklevel=2)
    return _scalar(_side(kappa, q, r, lam))


def angle_from_sss(kappa: int, p, q, r):
    """Angle at P (opposite side p) of the triangle with the given sides."""
    _check_kappa(kappa)
    p, q, r = (np.asarray(v, dtype=float) for v in (p, q, r))
    if np.any(p < 0) or np.any(q <= 0) or np.any(r <= 0):
        raise DomainError("sides adjacent to the angle must be positive")
    scale = np.maximum(np.maximum(p, q), r)
    slack = 1e-12 * np.maximum(scale, 1.0)
    if np.any(p > q + r + slack) or np.any(q > p + r + slack) or np.any(r > p + q + slack):
        raise DomainError("sides violate the triangle inequality")
    if kappa == 1 and (np.any(scale >= math.pi) or np.any(p + q + r > 2 * math.pi + slack)):
        raise DomainError("spherical sides must be below pi with perimeter at most 2 pi")
    return _scalar(_angle(kappa, p, q, r))


@dataclass(frozen=True)
class Triangle:
    kappa: int
    p: float
    q: float
    r: float
    lambda_P: float
    lambda_Q: float
    lambda_R: float

    @classmethod
    def from_sides(cls, kappa: int, p: float, q: float, r: float) -> "Triangle":
        return cls(kappa, p, q, r,
                   angle_from_sss(kappa, p, q, r),
                   angle_from_sss(kappa, q, r, p),
                   angle_from_sss(kappa, r, p, q))

    def residual(self) -> float:
        """Largest cosine-rule mismatch over the three vertices."""
        k = self.kappa
        return max(
            abs(_side(k, self.q, self.r, self.lambda_P) - self.p),
            abs(_side(k, self.r, self.p, self.lambda_Q) - self.q),
            abs(_side(k, self.p, self.q, self.lambda_R) - self.r),
        )


def _closed_form_distance(kappa, d, R2, theta):
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    if kappa == 0:
        root = np.sqrt(np.maximum(R2 * R2 - (d * sin_t) ** 2, 0.0))
        return d * cos_t + root
    if kappa == 1:
        # cos R2 = A cos rho + B sin rho, written in amplitude-phase form
        phase = np.arctan2(np.sin(d) * cos_t, np.cos(d))
        rest = np.sqrt(np.maximum(np.sin(R2) ** 2 - (np.sin(d) * sin_t) ** 2, 0.0))
        return phase + np.arctan2(rest, np.cos(R2))
    phase = np.arctanh(np.tanh(d) * cos_t)
    across = (np.sinh(d) * sin_t) ** 2
    rest = np.sqrt(np.maximum(np.sinh(R2) ** 2 - across, 0.0) / (1.0 + across))
    return phase + np.arcsinh(rest)


def boundary_distance(kappa: int, d, R2: float, theta):
    """Distance from C to the point of the sphere of radius R2 about C'.

    The point is reached along the geodesic leaving C at angle ``theta``
    from the ray C -> C', with |CC'| = d < R2.  Gives R2 + d at theta = 0
    and R2 - d at theta = pi.
    """
    _check_kappa(kappa)
    d = float(d)
    R2 = float(R2)
    if not 0 <= d < R2:
        raise DomainError(f"need 0 <= d < R2, got d={d}, R2={R2}")
    if kappa == 1 and R2 >= math.pi / 2:
        raise DomainError(f"spherical outer radius must be below pi/2, got {R2}")
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > math.pi):
        raise DomainError("theta must lie in [0, pi]")
    if d == 0.0:
        return _scalar(np.full_like(theta, R2))
    rho = np.atleast_1d(_closed_form_distance(kappa, d, R2, theta))
    flat_theta = np.atleast_1d(theta)
    check = _side(kappa, np.full_like(rho, d), np.maximum(rho, 1e-300), flat_theta)
    bad = ~(np.abs(check - R2) <= 1e-10 * max(R2, 1.0))
    for i in np.flatnonzero(bad):
        lo, hi = R2 - d, R2 + d
        f = lambda x, t=flat_theta[i]: float(_side(kappa, d, x, t)) - R2
        try:
            rho[i] = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        except ValueError as exc:
            raise BoundaryDistanceError(
                f"no root for d={d}, R2={R2}, theta={flat_theta[i]}: "
                f"bracket [{lo}, {hi}] gives f=({f(lo)}, {f(hi)})"
            ) from exc
    return _scalar(rho.reshape(theta.shape))


def acute_angle_check(kappa: int, sample_count: int, seed: int = 0) -> bool:
    """Sample triangles with p <= q and confirm the angle at P is acute.

    For kappa = +1 the larger side q is kept below pi/2; for kappa = 0 and
    -1 side lengths are drawn from (0, 4).
    """
    _check_kappa(kappa)
    if sample_count < 1:
        raise DomainError("sample_count must be positive")
    rng = np.random.default_rng(seed)
    top = math.pi / 2 if kappa == 1 else 4.0
    q = rng.uniform(0.0, top, sample_count)
    p = q * rng.uniform(0.0, 1.0, sample_count)
    r = (q - p) + 2.0 * p * rng.uniform(0.0, 1.0, sample_count)
    keep = (p > 0) & (q > 0) & (r > 0)
    angle = angle_from_sss(kappa, p[keep], q[keep], r[keep])
    return bool(np.all(angle < math.pi / 2))


def chord_symmetry_check(kappa: int, d: float, R2: float, sample_count: int,
                         seed: int = 0, tol: float = 1e-10) -> bool:
    """Distance and angle symmetries seen from a point X inside a geodesic ball.

    X sits at distance ``d`` from the center C' of the ball of radius R2.
    Boundary points P are parametrized by the angle ``beta`` at X from the
    ray X -> C'; only ``beta <= pi/2`` is sampled.  Checks, within ``tol``:

    * the angle at P between PX and PC' is acute;
    * mirroring P across the axis leaves distance and angle unchanged;
    * the opposite point -P (direction pi - beta) has the same angle and a
      distance no larger than P's, equal only when beta = pi/2.
    """
    _check_kappa(kappa)
    if sample_count < 1:
        raise DomainError("sample_count must be positive")
    rng = np.random.default_rng(seed)
    beta = np.concatenate([[0.0, math.pi / 2], rng.uniform(0.0, math.pi / 2, sample_count)])
    far = boundary_distance(kappa, d, R2, beta)
    mirror = _closed_form_distance(kappa, d, R2, -beta) if d > 0 else far
    near = boundary_distance(kappa, d, R2, math.pi - beta)
    # angle at P of triangle (P, X, C'), from the two sides at X and the angle there
    ang_far = _angle_sas(kappa, d, far, beta)
    ang_near = _angle_sas(kappa, d, near, math.pi - beta)
    ok = bool(np.all(ang_far < math.pi / 2) and np.all(ang_near < math.pi / 2))
    ok &= bool(np.all(np.abs(far - mirror) <= tol))
    ok &= bool(np.all(np.abs(ang_far - ang_near) <= tol))
    ok &= bool(np.all(far >= near - tol))
    perpendicular = np.abs(beta - math.pi / 2) <= 1e-12
    ok &= bool(np.all(np.abs(far - near)[perpendicular] <= tol))
    if d > 0:
        oblique = beta < math.pi / 2 - 1e-6
        ok &= bool(np.all((far - near)[oblique] > 0))
    return ok

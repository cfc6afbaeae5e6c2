"""Adaptive Gauss-Legendre integration on finite intervals."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .model_spaces import DomainError

__all__ = [
    "Quadrature1D",
    "QuadratureError",
    "composite",
    "gauss_legendre_nodes",
    "integrate",
]

MAX_ORDER = 64


class QuadratureError(RuntimeError):
    """Adaptive refinement hit ``max_depth`` or ``max_panels`` before meeting the tolerance.

    The best available estimate is kept on ``value`` and ``error``.
    """

    def __init__(self, message, value, error):
        super().__init__(message)
        self.value = value
        self.error = error


@dataclass(frozen=True)
class Quadrature1D:
    rule_order: int = 16
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_depth: int = 40
    max_panels: int = 200_000

    def __post_init__(self):
        if not 2 <= self.rule_order <= MAX_ORDER:
            raise DomainError(f"rule_order must be in [2, {MAX_ORDER}], got {self.rule_order}")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be at least 1")
        if self.max_panels < 1:
            raise DomainError("max_panels must be at least 1")


DEFAULT = Quadrature1D()


@functools.lru_cache(maxsize=None)
def _legendre_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    # Newton on P_n from the Chebyshev-like initial guesses; converges in a few steps.
    i = np.arange(1, order + 1)
    x = np.cos(np.pi * (i - 0.25) / (order + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, order + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = order * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, order + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = order * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # Symmetrize exactly; ascending order.
    x = np.sort(0.5 * (x - x[::-1]))
    w = 0.5 * (w + w[::-1])
    if order % 2:
        x[order // 2] = 0.0
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``order``-point rule on [-1, 1].

    Nodes come back in ascending order; both arrays are read-only and shared.
    """
    if int(order) != order or not 2 <= order <= MAX_ORDER:
        raise DomainError(f"Gauss-Legendre order must be an integer in [2, {MAX_ORDER}], got {order}")
    return _legendre_rule(int(order))


def _panel(f, a, b, x, w):
    half = 0.5 * (b - a)
    return half * float(np.dot(w, f(a + half * (x + 1.0))))


def composite(f, a: float, b: float, panels: int, order: int = 16) -> float:
    """Non-adaptive composite rule on ``panels`` equal subintervals."""
    x, w = gauss_legendre_nodes(order)
    edges = np.linspace(a, b, panels + 1)
    return math.fsum(_panel(f, lo, hi, x, w) for lo, hi in zip(edges[:-1], edges[1:]))


def integrate(f, a: float, b: float, cfg: Quadrature1D | None = None) -> tuple[float, float]:
    """Integrate a vectorized ``f`` over [a, b].

    Each panel is accepted when its single-rule value agrees with the
    two-half composite to within its share of the tolerance (never less
    than a small fixed floor, so endpoint singularities terminate); the composite
    value is kept.  The tolerance scale is taken from the integral of |f|
    so that integrals with heavy cancellation are not over-refined.

    Returns ``(value, err_estimate)`` where the estimate is the sum of the
    accepted panels' discrepancies.
    """
    cfg = cfg or DEFAULT
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite")
    if a > b:
        raise DomainError(f"need a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0, 0.0
    x, w = gauss_legendre_nodes(cfg.rule_order)
    width = b - a
    scale = _panel(lambda t: np.abs(f(t)), a, b, x, w)
    tol = max(cfg.abs_tol, cfg.rel_tol * scale)
    # panels touching an endpoint singularity never reach their width share;
    # at most a couple per level hit this floor, so it adds at most tol / 2
    floor = tol / (4 * cfg.max_depth)

    values, errors = [], []
    failed = False
    stack = [(a, b, _panel(f, a, b, x, w), 0)]
    visited = 0
    while stack:
        visited += 1
        if visited > cfg.max_panels:
            # the rest of the stack is counted at its coarse value with unknown error
            rest = math.fsum(item[2] for item in stack)
            raise QuadratureError(f"panel budget {cfg.max_panels} exhausted on [{a}, {b}]",
                                  math.fsum(values) + rest, math.inf)
        lo, hi, coarse, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid, x, w)
        right = _panel(f, mid, hi, x, w)
        fine = left + right
        err = abs(fine - coarse)
        if not math.isfinite(fine):
            raise DomainError(f"integrand is not finite on [{lo}, {hi}]")
        if err <= max(tol * (hi - lo) / width, floor):
            values.append(fine)
            errors.append(err)
        elif depth + 1 >= cfg.max_depth:
            failed = True
            values.append(fine)
            errors.append(err)
        else:
            # right pushed first so panels are accepted left to right
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    value, error = math.fsum(values), math.fsum(errors)
    if failed:
        raise QuadratureError(
            f"no convergence on [{a}, {b}] within depth {cfg.max_depth}", value, error
        )
    return value, error

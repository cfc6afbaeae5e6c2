"""The property suite behind ``steklov-shells verify``.

Every check is a pure function of ``(seed, fast)`` returning one named
:class:`CheckResult`.  Details contain only computed numbers, never
timings, so two runs with the same arguments give identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geodesic_trig import acute_angle_check, chord_symmetry_check
from .model_spaces import ModelSpace, max_outer_radius, parse_space
from .mps2d import MpsConfig, solve_eccentric
from .quadrature import DEFAULT, Quadrature1D
from .radial import mode_ordering_check, sigma1_concentric
from .shell_functionals import (
    ShellGeometry,
    cap_measure_compare,
    default_d_grid,
    density_asymmetry,
    newton_shell_residual,
    rayleigh_quotient,
    sweep,
)

__all__ = [
    "CLOSED_FORMS",
    "CheckResult",
    "SWEEP_CONFIGS",
    "format_report",
    "run_checks",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


# (family, dim, R1, R2, exact first eigenvalue)
CLOSED_FORMS = [
    ("euclidean", 3, 1.0, 2.0, 0.5),
    ("euclidean", 2, 1.0, math.e, 1.0 / math.e),
    ("sphere", 2, 0.3, 1.2,
     1.0 / (math.sin(1.2) * math.log(math.tan(0.6) / math.tan(0.15)))),
    ("rh", 2, 0.5, 1.5,
     1.0 / (math.sinh(1.5) * math.log(math.tanh(0.75) / math.tanh(0.25)))),
    ("sphere", 3, 0.2, 1.0,
     1.0 / (math.sin(1.0) ** 2 * (1 / math.tan(0.2) - 1 / math.tan(1.0)))),
    ("rh", 3, 0.4, 1.3,
     1.0 / (math.sinh(1.3) ** 2 * (1 / math.tanh(0.4) - 1 / math.tanh(1.3)))),
]

# shells swept in d; the second sphere entry has R2 > pi/4
SWEEP_CONFIGS = [
    ("euclidean", 2, 1.0, 2.0),
    ("euclidean", 3, 0.5, 1.5),
    ("sphere", 2, 0.3, 1.2),
    ("sphere", 2, 0.2, 1.3),
    ("sphere", 3, 0.3, 1.1),
    ("rp", 3, 0.2, 0.7),
    ("rh", 2, 0.5, 1.5),
    ("rh", 3, 0.4, 1.2),
]

QUOTIENT_CONFIGS = [
    ("euclidean", 2, 1.0, 2.0), ("euclidean", 3, 1.0, 2.0), ("euclidean", 4, 0.5, 1.0),
    ("sphere", 2, 0.3, 1.2), ("sphere", 3, 0.2, 1.0), ("sphere", 4, 0.5, 1.4),
    ("rp", 2, 0.1, 0.6), ("rp", 3, 0.2, 0.7), ("rp", 4, 0.3, 0.75),
    ("rh", 2, 0.5, 1.5), ("rh", 3, 0.4, 1.3), ("rh", 4, 1.0, 2.5),
]

MODE_CONFIGS = [
    ("euclidean", 2, 1.0, 2.0), ("euclidean", 3, 1.0, 2.0),
    ("sphere", 2, 0.3, 1.2), ("sphere", 3, 0.2, 1.0),
    ("rp", 2, 0.2, 0.7), ("rh", 2, 0.5, 1.5), ("rh", 3, 0.3, 1.0),
]

ASYMMETRY_SPACES = [
    ("sphere", 2), ("sphere", 3), ("sphere", 4), ("sphere", 5),
    ("rp", 2), ("rp", 3), ("cp", 2), ("cp", 3), ("hp", 2), ("op2", None),
]

MPS_CONCENTRIC = [(1.0, 2.0), (1.0, 1.5), (0.5, 1.5), (1.0, 3.0), (2.0, 3.0)]
MPS_DISPLACEMENTS = (0.1, 0.3, 0.5)


def _space(family, dim) -> ModelSpace:
    return parse_space(family, dim)


def check_closed_forms(cfg: Quadrature1D) -> CheckResult:
    worst = 0.0
    for family, dim, r1, r2, exact in CLOSED_FORMS:
        got = sigma1_concentric(_space(family, dim), r1, r2, cfg)
        worst = max(worst, abs(got - exact) / exact)
    return CheckResult("closed_form_sigma1", worst < 1e-10,
                       f"{len(CLOSED_FORMS)} shells, max rel err {worst:.3e}")


def check_quotient_at_zero(cfg: Quadrature1D) -> CheckResult:
    worst = 0.0
    for family, dim, r1, r2 in QUOTIENT_CONFIGS:
        rec = rayleigh_quotient(ShellGeometry(_space(family, dim), r1, r2, 0.0), cfg)
        worst = max(worst, abs(rec.quotient - rec.sigma1_concentric) / rec.sigma1_concentric)
    return CheckResult("quotient_at_zero", worst < 1e-10,
                       f"{len(QUOTIENT_CONFIGS)} shells, max rel err {worst:.3e}")


def _run_sweeps(fast: bool, cfg: Quadrature1D, workers: int):
    steps = 6 if fast else 17
    out = []
    for family, dim, r1, r2 in SWEEP_CONFIGS:
        base = ShellGeometry(_space(family, dim), r1, r2)
        out.append(((family, dim, r1, r2), sweep(base, default_d_grid(r1, r2, steps), cfg, workers)))
    return out


def check_area_identity(sweeps) -> CheckResult:
    worst, count = 0.0, 0
    for _, sw in sweeps:
        for rec in sw.records:
            worst = max(worst, abs(rec.boundary_mass - rec.boundary_mass_alt) / rec.boundary_mass)
            count += 1
    failures = sum(len(sw.failures) for _, sw in sweeps)
    return CheckResult("area_identity", worst < 1e-8 and failures == 0,
                       f"{count} points, max rel gap {worst:.3e}, {failures} failed points")


def _sweep_check(name, sweeps, flag) -> CheckResult:
    bad = []
    for key, sw in sweeps:
        status = sw.flags()[flag]
        if status != "strict" or sw.failures:
            bad.append(f"{key[0]}{key[1]}({key[2]},{key[3]}):{status}")
    detail = f"{len(sweeps)} sweeps strict" if not bad else "; ".join(bad)
    return CheckResult(name, not bad, detail)


def check_newton(seed: int, fast: bool, cfg: Quadrature1D) -> CheckResult:
    rng = np.random.default_rng([seed, 5])
    draws = 20 if fast else 50
    families = ("euclidean", "sphere", "rp", "rh")
    worst = 0.0
    for i in range(draws):
        space = _space(families[i % 4], int(rng.integers(2, 5)))
        top = min(max_outer_radius(space), 3.0)
        r2 = rng.uniform(0.05, 0.95) * top
        x = rng.uniform(0.0, 0.95) * r2
        worst = max(worst, abs(newton_shell_residual(space, r2, x, cfg)))
    return CheckResult("newton_shell", worst < 1e-8, f"{draws} draws, max |residual| {worst:.3e}")


def check_acute(seed: int, fast: bool) -> CheckResult:
    count = 500 if fast else 4000
    ok = all(acute_angle_check(k, count, seed) for k in (1, 0, -1))
    return CheckResult("acute_angle", ok, f"{count} triangles per curvature")


def check_chords(seed: int, fast: bool) -> CheckResult:
    rng = np.random.default_rng([seed, 7])
    shells = 2 if fast else 5
    count = 100 if fast else 400
    ok = True
    for kappa in (1, 0, -1):
        for _ in range(shells):
            r2 = rng.uniform(0.1, 1.5)
            d = rng.uniform(0.0, 0.95) * r2
            ok &= chord_symmetry_check(kappa, d, r2, count, seed)
    return CheckResult("chord_symmetry", ok, f"{3 * shells} balls, {count} boundary points each")


def check_caps(seed: int, fast: bool) -> CheckResult:
    rng = np.random.default_rng([seed, 11])
    triples = 12 if fast else 24
    worst_margin = math.inf
    ok = True
    for i in range(triples):
        space = _space("sphere", 2 + i % 2)
        r2 = rng.uniform(0.1, 0.98) * max_outer_radius(space)
        d = rng.uniform(0.02, 0.95) * r2
        s = rng.uniform(0.01, 1.0) * d
        left, right, good = cap_measure_compare(space, r2, d, s)
        ok &= good
        worst_margin = min(worst_margin, right - left)
    return CheckResult("cap_measure", ok, f"{triples} triples, min margin {worst_margin:.3e}")


def check_asymmetry() -> CheckResult:
    bad = []
    for family, dim in ASYMMETRY_SPACES:
        space = _space(family, dim)
        for frac in (0.3, 0.6, 0.95):
            r2 = frac * max_outer_radius(space)
            grid = np.linspace(0.0, r2, 102)[1:-1]
            if not density_asymmetry(space, r2, grid):
                bad.append(f"{space.label}@{frac}")
    detail = f"{len(ASYMMETRY_SPACES)} spaces x 3 radii" if not bad else ", ".join(bad)
    return CheckResult("density_asymmetry", not bad, detail)


def check_modes() -> CheckResult:
    bad = []
    for family, dim, r1, r2 in MODE_CONFIGS:
        _, ordered = mode_ordering_check(_space(family, dim), r1, r2, 5)
        if not ordered:
            bad.append(f"{family}{dim}({r1},{r2})")
    detail = f"{len(MODE_CONFIGS)} shells, modes 0..5" if not bad else ", ".join(bad)
    return CheckResult("mode_ordering", not bad, detail)


def check_mps_concentric() -> CheckResult:
    worst = 0.0
    for r1, r2 in MPS_CONCENTRIC:
        exact = 1.0 / (r2 * math.log(r2 / r1))
        worst = max(worst, abs(solve_eccentric(r1, r2, 0.0).sigma - exact))
    return CheckResult("mps_concentric", worst < 1e-6,
                       f"{len(MPS_CONCENTRIC)} annuli, max abs err {worst:.3e}")


def check_mps_sandwich(cfg: Quadrature1D) -> CheckResult:
    base = solve_eccentric(1.0, 2.0, 0.0).sigma
    space = _space("euclidean", 2)
    parts, ok = [], True
    for d in MPS_DISPLACEMENTS:
        sigma = solve_eccentric(1.0, 2.0, d).sigma
        q = rayleigh_quotient(ShellGeometry(space, 1.0, 2.0, d), cfg).quotient
        ok &= sigma <= q + 1e-6 and sigma < base
        parts.append(f"d={d}: {sigma:.10f} <= {q:.10f}")
    return CheckResult("mps_sandwich", ok, "; ".join(parts))


def check_mps_convergence() -> CheckResult:
    coarse = solve_eccentric(1.0, 2.0, 0.3, MpsConfig(basis_order=16)).sigma
    fine = solve_eccentric(1.0, 2.0, 0.3, MpsConfig(basis_order=32)).sigma
    gap = abs(fine - coarse)
    return CheckResult("mps_self_convergence", gap < 1e-7, f"|N32 - N16| = {gap:.3e}")


def run_checks(seed: int = 0, fast: bool = False, cfg: Quadrature1D | None = None,
               workers: int = 1) -> list[CheckResult]:
    cfg = cfg or DEFAULT
    sweeps = _run_sweeps(fast, cfg, workers)
    return [
        check_closed_forms(cfg),
        check_quotient_at_zero(cfg),
        check_area_identity(sweeps),
        _sweep_check("boundary_mass_increasing", sweeps, "boundary_mass_increasing"),
        _sweep_check("energy_bound", sweeps, "energy_below_concentric"),
        _sweep_check("quotient_bound", sweeps, "quotient_below_concentric"),
        check_newton(seed, fast, cfg),
        check_acute(seed, fast),
        check_chords(seed, fast),
        check_caps(seed, fast),
        check_asymmetry(),
        check_modes(),
        check_mps_concentric(),
        check_mps_sandwich(cfg),
        check_mps_convergence(),
    ]


def format_report(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}" for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"

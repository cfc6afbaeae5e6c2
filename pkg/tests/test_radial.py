import math

import numpy as np
import pytest
from scipy.linalg import solve_banded

from oracle_values import SIGMA1
from steklov_shells.model_spaces import DomainError, density, parse_space
from steklov_shells.radial import (
    RadialPotential,
    UnsupportedFamilyError,
    first_radial,
    mode_ordering_check,
    radial_mode,
    sigma1_concentric,
)


@pytest.mark.parametrize("family, dim, r1, r2, expected", SIGMA1)
def test_sigma1_against_frozen_oracle(family, dim, r1, r2, expected):
    got = sigma1_concentric(parse_space(family, dim), r1, r2)
    assert got == pytest.approx(expected, rel=1e-12)


def test_sigma1_euclidean_three_closed_form():
    for r1, r2 in [(1.0, 2.0), (0.5, 3.0), (2.0, 2.1)]:
        got = sigma1_concentric(parse_space("euclidean", 3), r1, r2)
        assert got == pytest.approx(r1 / (r2 * (r2 - r1)), rel=1e-13)


@pytest.mark.parametrize("family, dim, r1, r2", [
    ("sphere", 2, 0.5, 1.6), ("rp", 2, 0.1, 0.8), ("euclidean", 2, 2.0, 1.0), ("rh", 2, 0.0, 1.0),
])
def test_sigma1_rejects_inadmissible_shells(family, dim, r1, r2):
    with pytest.raises(DomainError):
        sigma1_concentric(parse_space(family, dim), r1, r2)


@pytest.mark.parametrize("family, dim", [("sphere", 3), ("cp", 2), ("rh", 4), ("op2", None)])
def test_first_radial_invariants(family, dim):
    space = parse_space(family, dim)
    r_max = min(space.inj / 2, 2.0) * 0.9
    prof = first_radial(space, 0.1, r_max, num=65)
    assert prof.a_values[0] == 0.0
    assert np.all(np.diff(prof.a_values) > 0)
    assert np.allclose(prof.a_prime_values * density(space, prof.grid), 1.0, rtol=1e-14)
    # Steklov ratio at the outer end equals the concentric eigenvalue
    assert prof.sigma == pytest.approx(sigma1_concentric(space, 0.1, r_max), rel=1e-12)


def test_potential_evaluate_unsorted_points():
    pot = RadialPotential(parse_space("euclidean", 2), 1.0)
    values, errors = pot.evaluate([3.0, 1.5, 2.0])
    assert np.allclose(values, np.log([3.0, 1.5, 2.0]), rtol=1e-14)
    assert np.all(errors >= 0)
    with pytest.raises(DomainError):
        pot([0.5])


def euclid3_mode(l, r1, r2):
    a = r2 ** l - r1 ** (2 * l + 1) * r2 ** (-l - 1)
    da = l * r2 ** (l - 1) + (l + 1) * r1 ** (2 * l + 1) * r2 ** (-l - 2)
    return da / a


@pytest.mark.parametrize("l, exact", [(0, 0.5), (1, 5 / 7), (2, 67 / 62), (5, None)])
def test_euclidean_modes_closed_form(l, exact):
    exact = exact if exact is not None else euclid3_mode(l, 1.0, 2.0)
    assert euclid3_mode(l, 1.0, 2.0) == pytest.approx(exact, rel=1e-15)
    assert radial_mode(parse_space("euclidean", 3), 1.0, 2.0, l).sigma == pytest.approx(exact, abs=1e-8)


def test_rk4_fourth_order():
    space = parse_space("euclidean", 3)
    errs = [abs(radial_mode(space, 1.0, 2.0, 2, ode_step=h).sigma - 67 / 62) for h in (0.02, 0.01)]
    assert 12 < errs[0] / errs[1] < 20


def test_mode_ode_residual():
    space = parse_space("sphere", 2)
    prof = radial_mode(space, 0.3, 1.2, 3)
    r, a, b = prof.grid, prof.a_values, prof.a_prime_values
    h = r[1] - r[0]
    # fourth-order central difference of the slope
    second = (-b[4:] + 8 * b[3:-1] - 8 * b[1:-3] + b[:-4]) / (12 * h)
    inner = r[2:-2]
    residual = second + b[2:-2] / np.tan(inner) - 9 / np.sin(inner) ** 2 * a[2:-2]
    assert np.max(np.abs(residual)) < 1e-6


def dense_fd_sigma(space_drift, potential, r1, r2, n):
    # second-order FD on a(r1) = 0, a(r2) = 1, then a third-order one-sided slope at r2
    r = np.linspace(r1, r2, n + 1)
    h = r[1] - r[0]
    inner = r[1:-1]
    lower = 1 / h ** 2 - space_drift(inner) / (2 * h)
    main = -2 / h ** 2 - potential(inner)
    upper = 1 / h ** 2 + space_drift(inner) / (2 * h)
    ab = np.zeros((3, n - 1))
    ab[0, 1:] = upper[:-1]
    ab[1] = main
    ab[2, :-1] = lower[1:]
    rhs = np.zeros(n - 1)
    rhs[-1] = -upper[-1]
    a = np.concatenate([[0.0], solve_banded((1, 1), ab, rhs), [1.0]])
    slope = (11 * a[-1] - 18 * a[-2] + 9 * a[-3] - 2 * a[-4]) / (6 * h)
    return slope / a[-1]


def test_sphere_modes_against_finite_differences():
    space = parse_space("sphere", 2)
    table, ordered = mode_ordering_check(space, 0.3, 1.2, 5)
    assert ordered
    for l, sigma in table:
        lam = l * l
        coarse, fine = (dense_fd_sigma(lambda r: 1 / np.tan(r), lambda r: lam / np.sin(r) ** 2, 0.3, 1.2, n)
                        for n in (4000, 8000))
        assert sigma == pytest.approx((4 * fine - coarse) / 3, abs=1e-6)


@pytest.mark.parametrize("family, dim, r1, r2", [
    ("euclidean", 2, 1.0, 3.0), ("euclidean", 4, 0.5, 1.0), ("sphere", 4, 0.2, 1.4),
    ("rp", 3, 0.1, 0.7), ("rh", 2, 0.2, 2.0), ("rh", 3, 1.0, 1.5),
])
def test_mode_ordering(family, dim, r1, r2):
    table, ordered = mode_ordering_check(parse_space(family, dim), r1, r2, 5, ode_step=(r2 - r1) / 1024)
    assert ordered
    assert [l for l, _ in table] == list(range(6))


def test_mode_ordering_trivial():
    table, ordered = mode_ordering_check(parse_space("euclidean", 3), 1.0, 2.0, 0)
    assert ordered and len(table) == 1


def test_modes_need_constant_curvature():
    with pytest.raises(UnsupportedFamilyError):
        radial_mode(parse_space("cp", 2), 0.1, 0.5, 1)


@pytest.mark.parametrize("l, step", [(-1, None), (1.5, None), (1, 0.0), (1, 5.0)])
def test_mode_argument_validation(l, step):
    with pytest.raises(DomainError):
        radial_mode(parse_space("euclidean", 3), 1.0, 2.0, l, ode_step=step)


def test_step_lands_on_outer_radius():
    prof = radial_mode(parse_space("euclidean", 3), 1.0, 2.0, 1, ode_step=0.3)
    assert prof.grid[-1] == 2.0
    assert len(prof.grid) == 5
    assert math.isclose(prof.grid[1] - prof.grid[0], 0.25)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conformal_oracle import conformal_sigma
from steklov_shells.model_spaces import DomainError, parse_space
from steklov_shells.mps2d import (
    MpsConfig,
    NoMinimumError,
    collocation_matrices,
    singular_values,
    smallest_singular_value,
    solve_eccentric,
)
from steklov_shells.shell_functionals import ShellGeometry, rayleigh_quotient


def known_spectrum(rows, cols, sigmas, seed):
    rng = np.random.default_rng(seed)
    u, _ = np.linalg.qr(rng.standard_normal((rows, cols)))
    v, _ = np.linalg.qr(rng.standard_normal((cols, cols)))
    return u @ np.diag(sigmas) @ v.T


@pytest.mark.parametrize("seed", range(4))
def test_singular_values_of_constructed_matrix(seed):
    sigmas = np.sort(np.logspace(-6, 2, 12))[::-1]
    a = known_spectrum(40, 12, sigmas, seed)
    assert np.allclose(singular_values(a), sigmas, rtol=1e-9)


def test_singular_values_against_gram_matrix():
    # oracle: eigenvalues of A^T A for a well-conditioned matrix
    a = np.random.default_rng(5).standard_normal((30, 8))
    expected = np.sqrt(np.sort(np.linalg.eigvalsh(a.T @ a))[::-1])
    assert np.allclose(singular_values(a), expected, rtol=1e-12)


def test_rank_deficient():
    a = known_spectrum(20, 5, np.array([3.0, 2.0, 1.0, 0.0, 0.0]), 1)
    sv = singular_values(a)
    assert np.allclose(sv[:3], [3, 2, 1], rtol=1e-12)
    assert np.all(sv[3:] < 1e-14)


@settings(max_examples=30, deadline=None)
@given(rows=st.integers(1, 25), extra=st.integers(0, 10), seed=st.integers(0, 2 ** 31))
def test_singular_values_property(rows, extra, seed):
    cols = rows
    a = np.random.default_rng(seed).standard_normal((rows + extra, cols))
    sv = singular_values(a)
    assert np.all(np.diff(sv) <= 0)
    assert np.sqrt(np.sum(sv ** 2)) == pytest.approx(np.linalg.norm(a), rel=1e-12)
    assert smallest_singular_value(a) == sv[-1]


@pytest.mark.parametrize("bad", [np.zeros((2, 3)), np.array([[np.nan]]), np.zeros(4)])
def test_singular_values_rejects(bad):
    with pytest.raises(DomainError):
        singular_values(bad)


def test_size_limit():
    with pytest.raises(DomainError):
        smallest_singular_value(np.zeros((2001, 3)))


def test_collocation_shapes():
    b, v = collocation_matrices(1.0, 2.0, 0.3, 6, 3)
    assert b.shape == v.shape == (2 * 3 * 14, 14)
    assert not np.any(v[: 3 * 14])


@pytest.mark.parametrize("r1, r2", [(1.0, 2.0), (1.0, 1.5), (0.5, 1.5), (1.0, 3.0), (0.2, 1.0)])
def test_concentric_recovery(r1, r2):
    assert solve_eccentric(r1, r2, 0.0).sigma == pytest.approx(1 / (r2 * math.log(r2 / r1)), abs=1e-6)


@pytest.mark.parametrize("r1, r2, d", [(1.0, 2.0, 0.1), (1.0, 2.0, 0.3), (1.0, 2.0, 0.5), (1.0, 2.0, 0.8),
                                       (0.5, 2.0, 0.7), (1.0, 3.0, 1.2)])
def test_eccentric_against_conformal_oracle(r1, r2, d):
    assert solve_eccentric(r1, r2, d).sigma == pytest.approx(conformal_sigma(r1, r2, d), abs=1e-8)


@pytest.mark.parametrize("d", [0.1, 0.3, 0.5])
def test_sandwich(d):
    space = parse_space("euclidean", 2)
    sigma = solve_eccentric(1.0, 2.0, d).sigma
    q = rayleigh_quotient(ShellGeometry(space, 1.0, 2.0, d)).quotient
    assert sigma <= q + 1e-6
    assert sigma < solve_eccentric(1.0, 2.0, 0.0).sigma


def test_self_convergence():
    coarse = solve_eccentric(1.0, 2.0, 0.3, MpsConfig(basis_order=16)).sigma
    fine = solve_eccentric(1.0, 2.0, 0.3, MpsConfig(basis_order=32)).sigma
    assert abs(fine - coarse) < 1e-7


def test_deterministic_and_trace():
    first, second = solve_eccentric(1.0, 2.0, 0.4), solve_eccentric(1.0, 2.0, 0.4)
    assert first == second
    assert len(first.scan_trace) == MpsConfig().scan_points


def test_no_minimum_raises_with_trace():
    with pytest.raises(NoMinimumError) as info:
        solve_eccentric(1.0, 2.0, 0.2, MpsConfig(sigma_bracket=(0.01, 0.05), scan_points=20))
    assert len(info.value.trace) == 20


@pytest.mark.parametrize("kwargs", [{"basis_order": 2}, {"collocation_factor": 1}, {"scan_points": 2},
                                    {"sigma_bracket": (1.0, 0.5)}])
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        MpsConfig(**kwargs)


@pytest.mark.parametrize("args", [(2.0, 1.0, 0.0), (1.0, 2.0, 1.0), (1.0, 2.0, -0.1)])
def test_solver_preconditions(args):
    with pytest.raises(DomainError):
        solve_eccentric(*args)

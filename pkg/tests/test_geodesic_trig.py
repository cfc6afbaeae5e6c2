import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generate_oracles import hyperbolic_model, plane_model, sphere_model
from steklov_shells.geodesic_trig import (
    BoundaryDistanceError,
    DegenerateTriangleWarning,
    Triangle,
    acute_angle_check,
    angle_from_sss,
    boundary_distance,
    chord_symmetry_check,
    side_from_sas,
)
from steklov_shells.model_spaces import DomainError

MODELS = {1: sphere_model, 0: plane_model, -1: hyperbolic_model}


def ambient_side(kappa, q, r, angle):
    """Side opposite the angle, from vectors in the ambient model at 40 digits."""
    with mp.workdps(40):
        q, r, angle = mp.mpf(q), mp.mpf(r), mp.mpf(angle)
        if kappa == 0:
            return float(mp.sqrt(q ** 2 + r ** 2 - 2 * q * r * mp.cos(angle)))
        if kappa == 1:
            u = mp.matrix([mp.sin(q), 0, mp.cos(q)])
            v = mp.matrix([mp.sin(r) * mp.cos(angle), mp.sin(r) * mp.sin(angle), mp.cos(r)])
            chord = mp.norm(u - v)
            return float(2 * mp.asin(chord / 2))
        u = mp.matrix([mp.cosh(q), mp.sinh(q), 0])
        v = mp.matrix([mp.cosh(r), mp.sinh(r) * mp.cos(angle), mp.sinh(r) * mp.sin(angle)])
        return float(mp.acosh(u[0] * v[0] - u[1] * v[1] - u[2] * v[2]))


@settings(max_examples=80, deadline=None)
@given(kappa=st.sampled_from([1, 0, -1]), q=st.floats(1e-6, 1.5), r=st.floats(1e-6, 1.5),
       angle=st.floats(1e-6, math.pi - 1e-6))
def test_side_matches_ambient_model(kappa, q, r, angle):
    expected = ambient_side(kappa, q, r, angle)
    assert side_from_sas(kappa, q, r, angle) == pytest.approx(expected, rel=1e-12, abs=1e-300)


@settings(max_examples=80, deadline=None)
@given(kappa=st.sampled_from([1, 0, -1]), q=st.floats(0.01, 1.5), r=st.floats(0.01, 1.5),
       angle=st.floats(0.01, math.pi - 0.01))
def test_angle_inverts_side(kappa, q, r, angle):
    p = side_from_sas(kappa, q, r, angle)
    assert angle_from_sss(kappa, p, q, r) == pytest.approx(angle, abs=1e-9)
    tri = Triangle.from_sides(kappa, p, q, r)
    assert tri.residual() < 1e-12


def test_angle_sum_by_curvature():
    sides = (0.5, 0.6, 0.7)
    sums = {k: sum(getattr(Triangle.from_sides(k, *sides), f"lambda_{v}") for v in "PQR") for k in (1, 0, -1)}
    assert sums[1] > math.pi
    assert sums[0] == pytest.approx(math.pi, abs=1e-14)
    assert sums[-1] < math.pi


def test_thin_triangle_keeps_relative_accuracy():
    for kappa in (1, 0, -1):
        p = side_from_sas(kappa, 1.0, 1.0 + 1e-9, 1e-9)
        assert p == pytest.approx(ambient_side(kappa, 1.0, 1.0 + 1e-9, 1e-9), rel=1e-9)


def test_vectorized_inputs():
    out = side_from_sas(1, np.array([0.2, 0.3]), 0.4, np.array([0.5, 1.0]))
    assert out.shape == (2,)


def test_collinear_warns():
    with pytest.warns(DegenerateTriangleWarning):
        assert side_from_sas(0, 1.0, 2.0, 0.0) == pytest.approx(1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        side_from_sas(0, 1.0, 2.0, 0.1)


@pytest.mark.parametrize("args", [(0, 5.0, 1.0, 1.0), (2, 0.5, 0.5, 0.5), (1, 0.5, 0.0, 0.5), (1, 3.2, 3.2, 0.5)])
def test_angle_rejects_bad_sides(args):
    with pytest.raises(DomainError):
        angle_from_sss(*args)


@pytest.mark.parametrize("kappa", [1, 0, -1])
def test_boundary_distance_endpoints(kappa):
    assert boundary_distance(kappa, 0.3, 1.2, 0.0) == pytest.approx(1.5, abs=1e-14)
    assert boundary_distance(kappa, 0.3, 1.2, math.pi) == pytest.approx(0.9, abs=1e-14)
    assert boundary_distance(kappa, 0.0, 1.2, 1.0) == 1.2


@pytest.mark.parametrize("kappa, d, r2", [(1, 0.4, 1.2), (1, 1.2, 1.5), (0, 0.7, 2.0), (-1, 0.6, 1.5), (-1, 2.0, 2.5)])
def test_boundary_distance_against_ambient(kappa, d, r2):
    _, rho, _ = MODELS[kappa](mp.mpf(d), mp.mpf(r2))
    thetas = np.linspace(0.0, math.pi, 9)
    got = boundary_distance(kappa, d, r2, thetas)
    expected = [float(rho(mp.mpf(t))) for t in thetas]
    assert np.allclose(got, expected, rtol=1e-13)


@pytest.mark.parametrize("args", [(1, 0.2, 1.6, 0.5), (0, 1.0, 0.5, 0.5), (0, 0.1, 1.0, 4.0), (3, 0.1, 1.0, 0.5)])
def test_boundary_distance_preconditions(args):
    with pytest.raises(DomainError):
        boundary_distance(*args)


def test_boundary_distance_error_is_arithmetic():
    assert issubclass(BoundaryDistanceError, ArithmeticError)


@pytest.mark.parametrize("kappa", [1, 0, -1])
@pytest.mark.parametrize("seed", [0, 1, 42])
def test_acute_angle_check(kappa, seed):
    assert acute_angle_check(kappa, 2000, seed)


@pytest.mark.parametrize("kappa, d, r2", [(1, 0.5, 1.4), (1, 0.05, 0.2), (0, 1.0, 2.0), (-1, 1.5, 2.0), (-1, 0.0, 1.0)])
def test_chord_symmetry_check(kappa, d, r2):
    assert chord_symmetry_check(kappa, d, r2, 500, seed=3)


def test_sampling_checks_reproducible():
    assert acute_angle_check(1, 100, 7) == acute_angle_check(1, 100, 7)
    with pytest.raises(DomainError):
        acute_angle_check(1, 0)

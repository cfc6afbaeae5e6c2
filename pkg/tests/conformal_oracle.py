"""Independent eigenvalue oracle for the eccentric planar annulus.

A Moebius map of the disk takes the eccentric annulus to the concentric
one rho < |w| < 1.  Harmonicity and the Dirichlet condition carry over; the
Steklov condition becomes du/dn = sigma h(phi) u on |w| = 1, with h the
boundary stretch factor.  Expanding u in the even separated solutions and
testing against cos(i phi) gives a symmetric generalized eigenproblem.
"""

import math

import numpy as np
from scipy.linalg import eigh


def conformal_sigma(R1, R2, d, modes=60, nodes=4096):
    if d == 0:
        return 1.0 / (R2 * math.log(R2 / R1))
    delta, r1 = d / R2, R1 / R2
    # the real point a symmetric with respect to both circles
    t = (1 + delta ** 2 - r1 ** 2) / delta
    a = (t - math.sqrt(t * t - 4)) / 2
    rho = abs((delta + r1 - a) / (1 - a * (delta + r1)))
    phi = 2 * np.pi * np.arange(nodes) / nodes
    stretch = R2 * (1 - a * a) / np.abs(1 + a * np.exp(1j * phi)) ** 2
    j = np.arange(modes + 1)
    value = np.where(j == 0, -math.log(rho), 1 - rho ** (2 * j))
    slope = np.where(j == 0, 1.0, j * (1 + rho ** (2 * j)))
    norm = np.where(j == 0, 2 * np.pi, np.pi)
    basis = np.cos(np.outer(j, phi))
    mass = (basis * stretch) @ basis.T * (2 * np.pi / nodes)
    stiff = np.diag(slope * norm / value)
    return float(eigh(stiff, mass, eigvals_only=True)[0])

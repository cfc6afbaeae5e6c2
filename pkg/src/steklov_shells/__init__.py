"""Mixed Steklov-Dirichlet eigenvalues of geodesic shells in two-point homogeneous spaces."""

from .geodesic_trig import (
    Triangle,
    acute_angle_check,
    angle_from_sss,
    boundary_distance,
    chord_symmetry_check,
    side_from_sas,
)
from .model_spaces import (
    DomainError,
    Family,
    ModelSpace,
    density,
    density_derivative,
    max_outer_radius,
    parse_space,
    unit_sphere_area,
)
from .mps2d import MpsConfig, MpsResult, singular_values, solve_eccentric
from .quadrature import Quadrature1D, QuadratureError, gauss_legendre_nodes, integrate
from .radial import (
    RadialPotential,
    UnsupportedFamilyError,
    first_radial,
    mode_ordering_check,
    radial_mode,
    sigma1_concentric,
)
from .shell_functionals import (
    CSV_FIELDS,
    ShellGeometry,
    Sweep,
    SweepRecord,
    boundary_mass,
    boundary_mass_from_center,
    cap_measure,
    cap_measure_compare,
    default_d_grid,
    density_asymmetry,
    dirichlet_energy,
    newton_shell_residual,
    rayleigh_quotient,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_FIELDS",
    "DomainError",
    "Family",
    "ModelSpace",
    "MpsConfig",
    "MpsResult",
    "Quadrature1D",
    "QuadratureError",
    "RadialPotential",
    "ShellGeometry",
    "Sweep",
    "SweepRecord",
    "Triangle",
    "UnsupportedFamilyError",
    "acute_angle_check",
    "angle_from_sss",
    "boundary_distance",
    "boundary_mass",
    "boundary_mass_from_center",
    "cap_measure",
    "cap_measure_compare",
    "chord_symmetry_check",
    "default_d_grid",
    "density",
    "density_asymmetry",
    "density_derivative",
    "dirichlet_energy",
    "first_radial",
    "gauss_legendre_nodes",
    "integrate",
    "max_outer_radius",
    "mode_ordering_check",
    "newton_shell_residual",
    "parse_space",
    "radial_mode",
    "rayleigh_quotient",
    "side_from_sas",
    "sigma1_concentric",
    "singular_values",
    "solve_eccentric",
    "sweep",
    "unit_sphere_area",
]

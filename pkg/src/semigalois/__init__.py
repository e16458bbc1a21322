"""Monodromy groups of Weierstrass polynomials over punctured discs."""

__version__ = "0.1.0"

from .covering import (
    correspondence,
    degree_tower,
    factor,
    pullback_power,
    solution_cover,
    splitting_cover,
)
from .domain import Disc, Domain, build_domain, generator_loop, loop_word
from .errors import SemiGaloisError
from .kernels import BACKEND
from .numerics import GaussianRational, PolyX
from .perm import PermGroup, Permutation, generate, identify, orbits
from .problem import ProblemSpec
from .rationalize import approximate_coeffs, emit_function_field_poly, verify_homotopy
from .realize import (
    realize_abelian_product,
    realize_cyclic,
    realize_rational,
    realize_search,
    realize_symmetric,
)
from .tracking import TrackerOptions, WeierstrassSpec, monodromy, roots_at, track_path
from .vandermonde import delta, galois_system, sigma_enum, v_matrix

__all__ = [
    "__version__",
    "BACKEND",
    "Disc",
    "Domain",
    "GaussianRational",
    "PermGroup",
    "Permutation",
    "PolyX",
    "ProblemSpec",
    "SemiGaloisError",
    "TrackerOptions",
    "WeierstrassSpec",
    "approximate_coeffs",
    "build_domain",
    "correspondence",
    "degree_tower",
    "delta",
    "emit_function_field_poly",
    "factor",
    "galois_system",
    "generate",
    "generator_loop",
    "identify",
    "loop_word",
    "monodromy",
    "orbits",
    "pullback_power",
    "realize_abelian_product",
    "realize_cyclic",
    "realize_rational",
    "realize_search",
    "realize_symmetric",
    "roots_at",
    "sigma_enum",
    "solution_cover",
    "splitting_cover",
    "track_path",
    "v_matrix",
    "verify_homotopy",
]

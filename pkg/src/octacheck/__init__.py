"""Exact verification of triangles and octahedra in a small homotopy category
of two-term complexes over K[x], and of the finitely presented category an
octahedron generates."""
from .errors import BuildError, DomainError, OctacheckError, PreconditionError, ValidationError
from .exactalg import Field, Poly, PolyMatrix, smith_with_inverses, solve_affine
from .complex import ChainMap, FreeComplex, cone_of, make_P, normal_form, null_homotopy
from .homcat import HomMatrix, PObject, compose, hom_basis, is_invertible, presentify, realize
from .tri import (Octahedron, Triangle, basis_triangle, contradiction_chain, epsilon_deform,
                  goodness_by_uniqueness, is_distinguished, iso_search, reference_octahedra,
                  validate_octahedron)
from .scat import (SMorphism, build_category, cat_compose, check_functor, decompose_morphism,
                   deccrit_split, functor_from_octahedron, is_distinguished_S)

__version__ = "0.1.0"

__all__ = [
    "BuildError", "DomainError", "OctacheckError", "PreconditionError", "ValidationError",
    "Field", "Poly", "PolyMatrix", "smith_with_inverses", "solve_affine",
    "ChainMap", "FreeComplex", "cone_of", "make_P", "normal_form", "null_homotopy",
    "HomMatrix", "PObject", "compose", "hom_basis", "is_invertible", "presentify", "realize",
    "Octahedron", "Triangle", "basis_triangle", "contradiction_chain", "epsilon_deform",
    "goodness_by_uniqueness", "is_distinguished", "iso_search", "reference_octahedra",
    "validate_octahedron",
    "SMorphism", "build_category", "cat_compose", "check_functor", "decompose_morphism",
    "deccrit_split", "functor_from_octahedron", "is_distinguished_S",
]

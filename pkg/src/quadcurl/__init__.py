"""Nonconforming grad-curl finite elements for the singularly perturbed quad-curl problem."""
from .element import ElementCache, LocalGradCurlElement, build_local_element
from .forms import ProblemSpec, assemble
from .manufactured import example1, example2, get_example
from .mesh import StructuredTetMesh, build_structured_mesh, validate_mesh
from .quadrature import QuadRule, tet_rule, tri_rule
from .solver import solve_saddle
from .space import build_dof_map, build_scalar_space
from .study import StudyConfig, compute_errors, compute_rates, run_convergence

__version__ = "0.1.0"

__all__ = [
    "ElementCache", "LocalGradCurlElement", "build_local_element", "ProblemSpec", "assemble",
    "example1", "example2", "get_example", "StructuredTetMesh", "build_structured_mesh",
    "validate_mesh", "QuadRule", "tet_rule", "tri_rule", "solve_saddle", "build_dof_map",
    "build_scalar_space", "StudyConfig", "compute_errors", "compute_rates", "run_convergence",
]

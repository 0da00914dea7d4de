"""Exact lattice-cone geometry: Hilbert bases, toric singularities and resolution searches."""

from .cone import Cone, ConeError, contains, make_cone, multiplicity, parallelepiped_points
from .fan import Fan, FanError, make_fan, is_subdivision_of, stellar_subdivide, validate_fan
from .hilbert import HilbertBasis, essential_divisors, hilbert_basis, hilbert_basis_bruteforce
from .search import (
    Budget,
    SearchOutcome,
    canonical_subdivision,
    enumerate_hilbert_basis_resolutions,
    find_moderate_resolutions,
    is_moderate,
    minimal_terminal_models_3d,
    resolve,
)
from .singularity import ClassificationReport, classify, recognize_family_4d, terminal_form_3d

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "ClassificationReport",
    "Cone",
    "ConeError",
    "Fan",
    "FanError",
    "HilbertBasis",
    "SearchOutcome",
    "canonical_subdivision",
    "classify",
    "contains",
    "enumerate_hilbert_basis_resolutions",
    "essential_divisors",
    "find_moderate_resolutions",
    "hilbert_basis",
    "hilbert_basis_bruteforce",
    "is_moderate",
    "is_subdivision_of",
    "make_cone",
    "make_fan",
    "minimal_terminal_models_3d",
    "multiplicity",
    "parallelepiped_points",
    "recognize_family_4d",
    "resolve",
    "stellar_subdivide",
    "terminal_form_3d",
    "validate_fan",
]

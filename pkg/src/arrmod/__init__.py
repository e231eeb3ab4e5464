"""Combinatorics, perturbations and moduli-space parametrizations of line arrangements."""
from __future__ import annotations

from .combinatorics import (
    Arrangement,
    Combinatorics,
    LineOrder,
    ProjectiveLine,
    are_equivalent,
    classify_pencil,
    combinatorics_of,
    naive_dimension,
    type_of,
    validate,
)
from .errors import ArrmodError
from .order_search import (
    OrderCertificate,
    find_ic_order,
    find_rigid_order,
    ic_dimension,
    incidence_graph,
    normalize_square_basis,
    valence_reduction,
)
from .parametrization import (
    best_tower,
    build,
    count_components_univariate,
    dimension_bracket,
    lambda_theta,
    realization_check,
    upper_bound,
    verify_degree_bounds,
)
from .perturbation import (
    ElementaryStep,
    PerturbationTower,
    find_m_perturbation,
    kappa,
    perturb,
)
from .polynomial import MPoly
from .structure import c3_simple_type, c_class, is_nice, rigid_pencil_form

__version__ = "0.1.0"

"""Numerical geometric constants of normed planes.

Computes suprema such as the von Neumann-Jordan constant, its skewed
generalization L_YJ(xi, eta, X) and James-type constants on the
Banas-Fraczek plane R^2_lambda, its p-generalization and l_p planes, and
checks them against the known exact values.
"""
from .closed_forms import closed_form, cnj_bf, cnjp_bf, james_type_gbf, lyj_bf
from .errors import (
    ConditionNotMetError,
    DegenerateInputError,
    GeoConstError,
    NumericFailureError,
    ParameterDomainError,
    PreconditionError,
    UnsupportedBranchError,
    UnsupportedCombinationError,
    UnsupportedOperationError,
)
from .functionals import ConstantKind, ConstantQuery
from .norms import SpaceKind, SpaceSpec, Vec2, is_extreme_point, norm, parse_space, sample_sphere, unit_vector
from .search import (
    Branch,
    ComputationResult,
    SearchConfig,
    Witness,
    compute_constant,
    make_witness,
    refine_local,
    verify_against_closed_form,
)

__version__ = "0.1.0"

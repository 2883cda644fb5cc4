"""Generalized n-th order arctan integrals, their functional identities, and
the cubature engine that verifies them numerically."""

from .arctann import (
    eval_arctan,
    eval_F,
    eval_phi4,
    full_space_value,
    functional_residual,
    functional_sum,
    order4_identity_triples,
    reflection_args,
    unit_cube_value,
)
from .cubature import Box, EvalResult, QuadratureConfig, default_config, integrate_box, integrate_semi_infinite
from .errors import ArctnError, DomainError, IntegrandError, UnknownIntegrandError
from .reduction import REGISTRY, Integrand, ReductionReport, integrand_names, reduce_check_f1, reduce_check_f2
from .special_functions import (
    ArctanConstant,
    GammaValue,
    arctan_constant,
    exp_product_check,
    gamma,
    gamma_value,
    gamma_via_exp_integral,
)

__version__ = "0.1.0"

__all__ = [
    "ArctanConstant",
    "ArctnError",
    "Box",
    "DomainError",
    "EvalResult",
    "GammaValue",
    "Integrand",
    "IntegrandError",
    "QuadratureConfig",
    "REGISTRY",
    "ReductionReport",
    "UnknownIntegrandError",
    "arctan_constant",
    "default_config",
    "eval_F",
    "eval_arctan",
    "eval_phi4",
    "exp_product_check",
    "full_space_value",
    "functional_residual",
    "functional_sum",
    "gamma",
    "gamma_value",
    "gamma_via_exp_integral",
    "integrand_names",
    "integrate_box",
    "integrate_semi_infinite",
    "order4_identity_triples",
    "reduce_check_f1",
    "reduce_check_f2",
    "reflection_args",
    "unit_cube_value",
    "__version__",
]

"""Numerical checks of the square-to-unit-cube integral reduction formulas.

The two-variable formula rewrites a double integral over the alpha-square as

    integral_0^1 dx integral_0^alpha beta * (f(beta, beta*x) + f(beta*x, beta)) dbeta

and the n-variable version sums, over p = 1..n, the integrand with beta in
slot p and beta-scaled unit-cube coordinates elsewhere, weighted by
beta**(n-1). Both sides are evaluated by cubature on a fixed registry of
test integrands and compared; each right-hand side is integrated as one
cubature (the trivial unit-cube axis that the p-th summand does not depend
on is dropped), so there is a single error estimate per side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gamma as _sc_gamma
from scipy.special import gammainc as _sc_gammainc

from .cubature import Box, EvalResult, QuadratureConfig, default_config, integrate_box
from .errors import DomainError, IntegrandError, UnknownIntegrandError

__all__ = [
    "Integrand",
    "ReductionReport",
    "REGISTRY",
    "get_integrand",
    "integrand_names",
    "reduce_check_f1",
    "reduce_check_f2",
]

# The right-hand side pairs the beta axis with the unit cube, so checking an
# n-variable integrand costs an n-dimensional cubature per side.
_MAX_N_VARS = 4


@dataclass(frozen=True)
class Integrand:
    """A registered test integrand.

    ``arity`` is the number of variables, or None when the formula applies
    for any count. ``alpha_max`` bounds the validity range declared for the
    reduction check. ``closed_form``, when present, maps (alpha, n_vars) to
    the exact left-hand side.
    """

    name: str
    arity: int | None
    fn: Callable[[np.ndarray], np.ndarray]
    alpha_max: float
    closed_form: Callable[[float, int], float] | None = None


@dataclass(frozen=True)
class ReductionReport:
    """Both sides of one reduction check plus their difference."""

    lhs: EvalResult
    rhs: EvalResult
    residual: float
    alpha: float
    n_vars: int

    @property
    def passed(self) -> bool:
        return abs(self.residual) <= 10.0 * (self.lhs.error_estimate + self.rhs.error_estimate)


def _erf_power(alpha: float, d: int) -> float:
    # integral_0^alpha exp(-t^2) dt = sqrt(pi)/2 * erf(alpha), separable in d.
    return (0.5 * math.sqrt(math.pi) * math.erf(alpha)) ** d


def _exp_cube_power(alpha: float, d: int) -> float:
    # integral_0^alpha exp(-t^3) dt via the lower incomplete gamma at 1/3.
    third = 1.0 / 3.0
    one_dim = _sc_gamma(third) * _sc_gammainc(third, alpha ** 3) / 3.0
    return float(one_dim ** d)


REGISTRY: dict[str, Integrand] = {
    e.name: e
    for e in (
        Integrand(
            name="const_one",
            arity=None,
            fn=lambda x: np.ones(len(x)),
            alpha_max=math.inf,
            closed_form=lambda alpha, d: alpha ** d,
        ),
        Integrand(
            name="product_xy",
            arity=2,
            fn=lambda x: x[:, 0] * x[:, 1],
            alpha_max=math.inf,
            closed_form=lambda alpha, d: (alpha ** 2 / 2.0) ** 2,
        ),
        Integrand(
            name="exp_neg_sum_squares",
            arity=None,
            fn=lambda x: np.exp(-np.sum(x ** 2, axis=1)),
            # Beyond this the tail is far below double-precision resolution,
            # so checks out there would compare pure roundoff noise.
            alpha_max=50.0,
            closed_form=_erf_power,
        ),
        Integrand(
            name="exp_neg_sum_cubes",
            arity=None,
            fn=lambda x: np.exp(-np.sum(x ** 3, axis=1)),
            alpha_max=50.0,
            closed_form=_exp_cube_power,
        ),
        Integrand(
            name="rational_arctan3",
            arity=2,
            fn=lambda x: 1.0 / (1.0 + x[:, 0] ** 3 + x[:, 1] ** 3),
            alpha_max=math.inf,
            closed_form=None,
        ),
        Integrand(
            name="polynomial_mixed",
            arity=None,
            fn=lambda x: np.prod(x, axis=1) + np.sum(x ** 2, axis=1),
            alpha_max=math.inf,
            closed_form=lambda alpha, d: (alpha ** 2 / 2.0) ** d + d * alpha ** (d + 2) / 3.0,
        ),
    )
}


def integrand_names() -> list[str]:
    return sorted(REGISTRY)


def get_integrand(integrand_id: str) -> Integrand:
    try:
        return REGISTRY[integrand_id]
    except KeyError:
        raise UnknownIntegrandError(
            f"unknown integrand {integrand_id!r}; registered: {', '.join(integrand_names())}"
        ) from None


def _check_inputs(entry: Integrand, n_vars: int, alpha: float) -> float:
    if entry.arity is not None and entry.arity != n_vars:
        raise DomainError(
            f"integrand {entry.name!r} takes {entry.arity} variables, not {n_vars}"
        )
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 0.0:
        raise DomainError(f"alpha must be finite and >= 0, got {alpha}")
    if alpha > entry.alpha_max:
        raise DomainError(
            f"alpha={alpha} outside the validity range (0, {entry.alpha_max}] of {entry.name!r}"
        )
    return alpha


def _zero_report(n_vars: int) -> ReductionReport:
    zero = EvalResult(value=0.0, error_estimate=0.0, evals=0, converged=True)
    return ReductionReport(lhs=zero, rhs=zero, residual=0.0, alpha=0.0, n_vars=n_vars)


def _attributed(side: str, f, box: Box, cfg: QuadratureConfig) -> EvalResult:
    try:
        return integrate_box(f, box, cfg)
    except IntegrandError as exc:
        raise IntegrandError(f"{side} integration failed: {exc}", point=exc.point) from exc


def reduce_check_f1(integrand_id: str, alpha: float,
                    cfg: QuadratureConfig | None = None) -> ReductionReport:
    """Check the two-variable reduction on the alpha-square."""
    entry = get_integrand(integrand_id)
    alpha = _check_inputs(entry, 2, alpha)
    if alpha == 0.0:
        return _zero_report(2)
    if cfg is None:
        cfg = default_config(2)

    lhs = _attributed("lhs", entry.fn, Box((0.0, 0.0), (alpha, alpha)), cfg)

    def rhs_integrand(pts: np.ndarray) -> np.ndarray:
        x, beta = pts[:, 0], pts[:, 1]
        bx = beta * x
        return beta * (entry.fn(np.stack([beta, bx], axis=1))
                       + entry.fn(np.stack([bx, beta], axis=1)))

    rhs = _attributed("rhs", rhs_integrand, Box((0.0, 0.0), (1.0, alpha)), cfg)
    return ReductionReport(lhs=lhs, rhs=rhs, residual=lhs.value - rhs.value,
                           alpha=alpha, n_vars=2)


def reduce_check_f2(integrand_id: str, n_vars: int, alpha: float,
                    cfg: QuadratureConfig | None = None) -> ReductionReport:
    """Check the n-variable reduction on the alpha-hypercube.

    With n_vars = 2 this must agree with :func:`reduce_check_f1` on
    identical inputs; the test suite cross-validates that.
    """
    if int(n_vars) != n_vars or not 2 <= n_vars <= _MAX_N_VARS:
        raise DomainError(f"n_vars must be an integer in 2..{_MAX_N_VARS}, got {n_vars}")
    n_vars = int(n_vars)
    entry = get_integrand(integrand_id)
    alpha = _check_inputs(entry, n_vars, alpha)
    if alpha == 0.0:
        return _zero_report(n_vars)
    if cfg is None:
        cfg = default_config(n_vars)

    lhs = _attributed("lhs", entry.fn, Box((0.0,) * n_vars, (alpha,) * n_vars), cfg)

    def rhs_integrand(pts: np.ndarray) -> np.ndarray:
        t, beta = pts[:, :-1], pts[:, -1]
        bt = beta[:, None] * t
        total = np.zeros(len(pts))
        for p in range(n_vars):
            total += entry.fn(np.insert(bt, p, beta, axis=1))
        return beta ** (n_vars - 1) * total

    rhs_box = Box((0.0,) * n_vars, (1.0,) * (n_vars - 1) + (alpha,))
    rhs = _attributed("rhs", rhs_integrand, rhs_box, cfg)
    return ReductionReport(lhs=lhs, rhs=rhs, residual=lhs.value - rhs.value,
                           alpha=alpha, n_vars=n_vars)

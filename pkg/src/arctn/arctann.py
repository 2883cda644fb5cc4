"""The n-th order arctan integral and its functional identities.

arctan_n(u_1, ..., u_{n-1}) integrates 1/(1 + x_1**n + ... + x_{n-1}**n) over
the box (0, u_1) x ... x (0, u_{n-1}); n = 2 recovers the classical arctan.
Replacing the arguments by their order-p reflection (divide everything by
u_p, put 1/u_p in slot p) and summing the original plus all n-1 reflections
gives the constant C_n regardless of the arguments, which generalizes
arctan(u) + arctan(1/u) = pi/2. This module evaluates all of those pieces
numerically; nothing here is closed form except the degenerate zero case.
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .cubature import Box, EvalResult, QuadratureConfig, default_config, integrate_box, integrate_semi_infinite
from .errors import DomainError, IntegrandError
from .special_functions import arctan_constant, validate_order

__all__ = [
    "eval_arctan",
    "reflection_args",
    "functional_sum",
    "functional_residual",
    "unit_cube_value",
    "full_space_value",
    "eval_F",
    "eval_phi4",
    "order4_identity_triples",
]

# Boxes with side ratios at or beyond this count as elongated and earn a
# retry with a 4x evaluation budget before non-convergence is reported.
_EXTREME_RATIO = 100.0


def _validate_args(n: int, args, allow_zero: bool) -> tuple[float, ...]:
    args = tuple(float(u) for u in args)
    if len(args) != n - 1:
        raise DomainError(f"order {n} needs {n - 1} arguments, got {len(args)}")
    for i, u in enumerate(args):
        if not math.isfinite(u):
            raise DomainError(f"argument {i + 1} must be finite, got {u}")
        if u < 0.0 or (not allow_zero and u == 0.0):
            kind = "non-negative" if allow_zero else "strictly positive"
            raise DomainError(f"argument {i + 1} must be {kind}, got {u}")
    return args


def _sum_of_powers_integrand(n: int):
    def f(x: np.ndarray) -> np.ndarray:
        return 1.0 / (1.0 + np.sum(x ** n, axis=1))

    return f


def eval_arctan(n: int, args, cfg: QuadratureConfig | None = None) -> EvalResult:
    """arctan_n at ``args`` (n-1 non-negative reals).

    Any zero argument collapses the box to zero volume and returns exactly 0
    without touching the engine. On non-convergence over an elongated box
    (side ratio >= 100) the integral is retried once with 4x the budget.
    """
    n = validate_order(n)
    args = _validate_args(n, args, allow_zero=True)
    if any(u == 0.0 for u in args):
        return EvalResult(value=0.0, error_estimate=0.0, evals=0, converged=True)
    if cfg is None:
        cfg = default_config(n - 1)

    box = Box(lower=(0.0,) * (n - 1), upper=args)
    result = integrate_box(_sum_of_powers_integrand(n), box, cfg)
    if not result.converged and max(args) / min(args) >= _EXTREME_RATIO:
        retry_cfg = replace(cfg, method="adaptive" if n - 1 <= 7 else cfg.method,
                            max_evals=4 * cfg.max_evals)
        result = integrate_box(_sum_of_powers_integrand(n), box, retry_cfg)
    return result


def reflection_args(n: int, args, p: int) -> tuple[float, ...]:
    """The order-p reflection: u_k/u_p everywhere except 1/u_p in slot p.

    ``p`` is 1-based, matching the term index in the functional sum.
    """
    n = validate_order(n)
    args = _validate_args(n, args, allow_zero=False)
    if not 1 <= p <= n - 1:
        raise DomainError(f"reflection index must be in 1..{n - 1}, got {p}")
    pivot = args[p - 1]
    return tuple(1.0 / pivot if k == p - 1 else u / pivot for k, u in enumerate(args))


def functional_sum(n: int, args, cfg: QuadratureConfig | None = None) -> EvalResult:
    """arctan_n(args) plus its n-1 reflections; equals C_n when the identity holds.

    Terms are evaluated and combined in fixed index order (original first,
    then p = 1..n-1); the error estimate is the sum of the per-term ones.
    """
    n = validate_order(n)
    args = _validate_args(n, args, allow_zero=False)
    term_args = [args] + [reflection_args(n, args, p) for p in range(1, n)]

    values, errors, evals, converged = [], [], 0, True
    for p, a in enumerate(term_args):
        try:
            r = eval_arctan(n, a, cfg)
        except IntegrandError as exc:
            label = "original term" if p == 0 else f"reflection term p={p}"
            raise IntegrandError(f"{label} with args {a}: {exc}", point=exc.point) from exc
        values.append(r.value)
        errors.append(r.error_estimate)
        evals += r.evals
        converged = converged and r.converged
    return EvalResult(
        value=math.fsum(values),
        error_estimate=math.fsum(errors),
        evals=evals,
        converged=converged,
    )


def functional_residual(n: int, args, cfg: QuadratureConfig | None = None) -> float:
    """functional_sum minus the closed-form constant C_n; zero up to quadrature error."""
    return functional_sum(n, args, cfg).value - arctan_constant(n).value


def unit_cube_value(n: int, cfg: QuadratureConfig | None = None) -> EvalResult:
    """arctan_n at all-ones arguments; equals (Gamma(1/n)/n)**n = C_n/n."""
    n = validate_order(n)
    return eval_arctan(n, (1.0,) * (n - 1), cfg)


def full_space_value(n: int, cfg: QuadratureConfig | None = None) -> EvalResult:
    """The integral over the whole positive orthant; equals C_n."""
    n = validate_order(n)
    d = n - 1
    if cfg is None:
        cfg = default_config(d)
    return integrate_semi_infinite(
        _sum_of_powers_integrand(n), unbounded_axes=range(d), finite_limits={}, cfg=cfg
    )


def eval_F(n: int, u: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """F(u) = arctan_n(u, ..., u) + (n-1) * arctan_n(u, 1, ..., 1).

    Satisfies F(u) + F(1/u) = 2*C_n for every positive u.
    """
    n = validate_order(n)
    u = float(u)
    if not (math.isfinite(u) and u > 0.0):
        raise DomainError(f"u must be strictly positive and finite, got {u}")
    all_u = eval_arctan(n, (u,) * (n - 1), cfg)
    one_u = eval_arctan(n, (u,) + (1.0,) * (n - 2), cfg)
    return EvalResult(
        value=all_u.value + (n - 1) * one_u.value,
        error_estimate=all_u.error_estimate + (n - 1) * one_u.error_estimate,
        evals=all_u.evals + one_u.evals,
        converged=all_u.converged and one_u.converged,
    )


def eval_phi4(u: float, v: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Phi(u, v) = arctan_4(u, v, u/v) + arctan_4(u/v, 1/v, u/v**2).

    Satisfies Phi(u, v) + Phi(1/u, 1/v) = C_4 for all positive u, v.
    """
    u, v = float(u), float(v)
    for name, val in (("u", u), ("v", v)):
        if not (math.isfinite(val) and val > 0.0):
            raise DomainError(f"{name} must be strictly positive and finite, got {val}")
    first = eval_arctan(4, (u, v, u / v), cfg)
    second = eval_arctan(4, (u / v, 1.0 / v, u / v ** 2), cfg)
    return EvalResult(
        value=first.value + second.value,
        error_estimate=first.error_estimate + second.error_estimate,
        evals=first.evals + second.evals,
        converged=first.converged and second.converged,
    )


def order4_identity_triples(u: float, v: float) -> list[tuple[float, float, float]]:
    """The four argument triples whose arctan_4 values sum to C_4.

    These are the original (u, v, u/v) and its three reflections written out
    explicitly; tests cross-check them against :func:`reflection_args` as
    multisets, since arctan_4 is symmetric in its arguments.
    """
    u, v = float(u), float(v)
    return [
        (u, v, u / v),
        (1.0 / u, v / u, 1.0 / v),
        (u / v, 1.0 / v, u / v ** 2),
        (v, v ** 2 / u, v / u),
    ]

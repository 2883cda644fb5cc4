"""Adaptive cubature over axis-aligned boxes, with a quasi-Monte Carlo fallback.

The adaptive path keeps a priority queue of sub-boxes ordered by local error.
The local rule is an embedded pair evaluated on every box:

* d <= 2: tensor-product Gauss-Legendre, 7- and 15-point per axis;
* d = 3, 4: tensor-product Gauss-Legendre, 5- and 9-point per axis;
* d = 5..7: a degree-7 fully symmetric rule with an embedded degree-5 rule
  on the same points (Genz-Malik construction).

The local error is |high - low|; the box with the worst error is bisected
along its widest axis (ties go to the lowest axis index). Everything is
deterministic: identical inputs reproduce identical bits, and the final
value is the fsum of per-box values in box-id order.

The QMC path uses a scrambled Sobol sequence with 16 independent
randomizations; the reported error is three standard errors of the spread
across randomizations. It is bit-reproducible for a fixed seed.

Integrands are evaluated in batches: ``f`` receives an (m, d) array and must
return an (m,) array (pass ``vectorized=False`` to supply a scalar function
of a single point instead). A non-finite integrand value is a hard error
that identifies the offending sample point.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.stats import qmc

from .errors import DomainError, IntegrandError

__all__ = [
    "Box",
    "QuadratureConfig",
    "EvalResult",
    "default_config",
    "integrate_box",
    "integrate_semi_infinite",
]

_ADAPTIVE_MAX_DIM = 7
_AUTO_QMC_DIM = 5          # auto method switches to qmc at this dimension
_QMC_RANDOMIZATIONS = 16
_SEMI_INFINITE_EPS = 1e-12
_DEFAULT_MAX_EVALS = 1_000_000

_METHODS = ("adaptive", "qmc", "auto")


@dataclass(frozen=True)
class Box:
    """An axis-aligned integration domain with strictly positive volume."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if len(lower) == 0 or len(lower) != len(upper):
            raise DomainError(
                f"box needs matching non-empty bounds, got {len(lower)} lower / {len(upper)} upper"
            )
        for i, (lo, up) in enumerate(zip(lower, upper)):
            if not (math.isfinite(lo) and math.isfinite(up)):
                raise DomainError(f"box bounds must be finite, axis {i} is [{lo}, {up}]")
            if not lo < up:
                raise DomainError(f"box must have lower < upper on every axis, axis {i} is [{lo}, {up}]")

    @property
    def dim(self) -> int:
        return len(self.lower)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances, evaluation budget, method selection, and QMC seed.

    Convergence means error_estimate <= max(abs_tol, rel_tol * |value|).
    ``method`` is one of "adaptive", "qmc", or "auto" (adaptive up to 4
    dimensions, qmc beyond).
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_evals: int = _DEFAULT_MAX_EVALS
    method: str = "auto"
    seed: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.abs_tol) and self.abs_tol >= 0.0):
            raise DomainError(f"abs_tol must be finite and >= 0, got {self.abs_tol}")
        if not (math.isfinite(self.rel_tol) and self.rel_tol >= 0.0):
            raise DomainError(f"rel_tol must be finite and >= 0, got {self.rel_tol}")
        if self.abs_tol == 0.0 and self.rel_tol == 0.0:
            raise DomainError("at least one of abs_tol, rel_tol must be > 0")
        if int(self.max_evals) != self.max_evals or self.max_evals < 1000:
            raise DomainError(f"max_evals must be an integer >= 1000, got {self.max_evals}")
        if self.method not in _METHODS:
            raise DomainError(f"method must be one of {_METHODS}, got {self.method!r}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise DomainError(f"seed must be a non-negative integer, got {self.seed}")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class EvalResult:
    """Outcome of one numerical integration."""

    value: float
    error_estimate: float
    evals: int
    converged: bool


def default_config(dim: int, method: str = "auto", seed: int = 0,
                   max_evals: int = _DEFAULT_MAX_EVALS) -> QuadratureConfig:
    """Dimension-appropriate default tolerances.

    d <= 2: abs 1e-10 / rel 1e-9; d = 3, 4: abs 1e-8 / rel 1e-7;
    d >= 5: abs 1e-5 / rel 1e-4 (QMC territory).
    """
    if dim <= 2:
        abs_tol, rel_tol = 1e-10, 1e-9
    elif dim <= 4:
        abs_tol, rel_tol = 1e-8, 1e-7
    else:
        abs_tol, rel_tol = 1e-5, 1e-4
    return QuadratureConfig(abs_tol=abs_tol, rel_tol=rel_tol, max_evals=max_evals,
                            method=method, seed=seed)


# ---------------------------------------------------------------------------
# Local rules on the reference cube [-1, 1]^d.
#
# Each rule exposes a single point set plus two weight vectors over it; the
# high-order weights give the returned value, |high - low| is the error.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _LocalRule:
    points: np.ndarray   # (npts, d)
    w_high: np.ndarray   # (npts,)
    w_low: np.ndarray    # (npts,)

    @property
    def npts(self) -> int:
        return self.points.shape[0]


def _tensor_points(nodes: np.ndarray, weights: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    grids = np.meshgrid(*([nodes] * d), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    w = weights
    for _ in range(d - 1):
        w = np.multiply.outer(w, weights)
    return pts, w.ravel()


def _gauss_legendre_pair(d: int, n_low: int, n_high: int) -> _LocalRule:
    nodes_hi, w_hi = leggauss(n_high)
    nodes_lo, w_lo = leggauss(n_low)
    pts_hi, wts_hi = _tensor_points(nodes_hi, w_hi, d)
    pts_lo, wts_lo = _tensor_points(nodes_lo, w_lo, d)
    points = np.vstack([pts_hi, pts_lo])
    w_high = np.concatenate([wts_hi, np.zeros(len(wts_lo))])
    w_low = np.concatenate([np.zeros(len(wts_hi)), wts_lo])
    return _LocalRule(points=points, w_high=w_high, w_low=w_low)


def _genz_malik(d: int) -> _LocalRule:
    """Degree-7 fully symmetric rule with embedded degree-5 rule (d >= 2)."""
    l2 = math.sqrt(9.0 / 70.0)
    l3 = math.sqrt(9.0 / 10.0)
    l4 = l3
    l5 = math.sqrt(9.0 / 19.0)

    pts: list[np.ndarray] = [np.zeros((1, d))]
    counts = [1]
    for lam in (l2, l3):
        block = np.zeros((2 * d, d))
        for i in range(d):
            block[2 * i, i] = lam
            block[2 * i + 1, i] = -lam
        pts.append(block)
        counts.append(2 * d)
    pair_block = []
    for i in range(d):
        for j in range(i + 1, d):
            for si in (l4, -l4):
                for sj in (l4, -l4):
                    row = np.zeros(d)
                    row[i] = si
                    row[j] = sj
                    pair_block.append(row)
    pts.append(np.array(pair_block).reshape(-1, d))
    counts.append(2 * d * (d - 1))
    corners = np.array(np.meshgrid(*([[-l5, l5]] * d), indexing="ij")).reshape(d, -1).T
    pts.append(corners)
    counts.append(2 ** d)

    two_d = float(2 ** d)
    w7 = (
        two_d * (12824.0 - 9120.0 * d + 400.0 * d * d) / 19683.0,
        two_d * 980.0 / 6561.0,
        two_d * (1820.0 - 400.0 * d) / 19683.0,
        two_d * 200.0 / 19683.0,
        6859.0 / 19683.0,
    )
    w5 = (
        two_d * (729.0 - 950.0 * d + 50.0 * d * d) / 729.0,
        two_d * 245.0 / 486.0,
        two_d * (265.0 - 100.0 * d) / 1458.0,
        two_d * 25.0 / 729.0,
        0.0,
    )
    w_high = np.concatenate([np.full(c, w) for c, w in zip(counts, w7)])
    w_low = np.concatenate([np.full(c, w) for c, w in zip(counts, w5)])
    return _LocalRule(points=np.vstack(pts), w_high=w_high, w_low=w_low)


@lru_cache(maxsize=None)
def _rule_for_dim(d: int) -> _LocalRule:
    if d <= 2:
        return _gauss_legendre_pair(d, 7, 15)
    if d <= 4:
        return _gauss_legendre_pair(d, 5, 9)
    if d <= _ADAPTIVE_MAX_DIM:
        return _genz_malik(d)
    raise DomainError(f"adaptive cubature supports at most {_ADAPTIVE_MAX_DIM} dimensions, got {d}")


def _apply_rule(f, lower: np.ndarray, upper: np.ndarray, rule: _LocalRule) -> tuple[float, float]:
    half = 0.5 * (upper - lower)
    center = 0.5 * (upper + lower)
    pts = center + half * rule.points
    y = np.asarray(f(pts), dtype=float)
    if y.shape != (rule.npts,):
        raise ValueError(
            f"integrand must map an (m, {len(lower)}) array to an (m,) array, got shape {y.shape}"
        )
    finite = np.isfinite(y)
    if not finite.all():
        i = int(np.argmin(finite))
        raise IntegrandError(
            f"integrand returned {y[i]} at point {pts[i].tolist()}", point=pts[i].copy()
        )
    jac = float(np.prod(half))
    hi = jac * float(rule.w_high @ y)
    lo = jac * float(rule.w_low @ y)
    return hi, abs(hi - lo)


def _resolve_method(method: str, dim: int) -> str:
    if method == "auto":
        return "adaptive" if dim < _AUTO_QMC_DIM else "qmc"
    return method


def _as_batch(f: Callable, vectorized: bool) -> Callable[[np.ndarray], np.ndarray]:
    if vectorized:
        return f

    def batched(pts: np.ndarray) -> np.ndarray:
        return np.array([f(p) for p in pts], dtype=float)

    return batched


def integrate_box(f: Callable, box: Box, cfg: QuadratureConfig | None = None,
                  vectorized: bool = True) -> EvalResult:
    """Integrate ``f`` over ``box`` to the tolerances in ``cfg``.

    Exhausting the evaluation budget returns the best value so far with
    ``converged=False``; it never fabricates convergence.
    """
    if not isinstance(box, Box):
        box = Box(tuple(box[0]), tuple(box[1]))
    if cfg is None:
        cfg = default_config(box.dim)
    method = _resolve_method(cfg.method, box.dim)
    g = _as_batch(f, vectorized)
    if method == "qmc":
        return _integrate_qmc(g, box, cfg)
    return _integrate_adaptive(g, box, cfg)


def _integrate_adaptive(f, box: Box, cfg: QuadratureConfig) -> EvalResult:
    d = box.dim
    rule = _rule_for_dim(d)

    lower = np.array(box.lower)
    upper = np.array(box.upper)
    value, err = _apply_rule(f, lower, upper, rule)
    evals = rule.npts

    leaves: dict[int, tuple[float, float]] = {0: (value, err)}
    heap: list[tuple[float, int, np.ndarray, np.ndarray]] = [(-err, 0, lower, upper)]
    next_id = 1
    total_value, total_err = value, err

    while heap:
        if total_err <= cfg.tolerance(total_value):
            break
        if evals + 2 * rule.npts > cfg.max_evals:
            break
        neg_err, box_id, lo, up = heapq.heappop(heap)
        widths = up - lo
        axis = int(np.argmax(widths))  # widest axis, ties to lowest index
        mid = 0.5 * (lo[axis] + up[axis])
        if not lo[axis] < mid < up[axis]:
            # No representable interior split point; keep the leaf as-is.
            continue
        v_parent, e_parent = leaves.pop(box_id)
        total_value -= v_parent
        total_err -= e_parent
        for half_lo, half_up in (
            (lo, np.concatenate([up[:axis], [mid], up[axis + 1:]])),
            (np.concatenate([lo[:axis], [mid], lo[axis + 1:]]), up),
        ):
            v, e = _apply_rule(f, half_lo, half_up, rule)
            evals += rule.npts
            leaves[next_id] = (v, e)
            heapq.heappush(heap, (-e, next_id, half_lo, half_up))
            next_id += 1
            total_value += v
            total_err += e

    # Deterministic reduction: partial sums in box-id order.
    ordered = sorted(leaves)
    value = math.fsum(leaves[i][0] for i in ordered)
    error = math.fsum(leaves[i][1] for i in ordered)
    return EvalResult(
        value=value,
        error_estimate=error,
        evals=evals,
        converged=error <= cfg.tolerance(value),
    )


def _integrate_qmc(f, box: Box, cfg: QuadratureConfig) -> EvalResult:
    d = box.dim
    lower = np.array(box.lower)
    widths = np.array(box.upper) - lower
    volume = float(np.prod(widths))

    seeds = np.random.SeedSequence(cfg.seed).spawn(_QMC_RANDOMIZATIONS)
    engines = [qmc.Sobol(d, scramble=True, seed=np.random.default_rng(s)) for s in seeds]
    sums = np.zeros(_QMC_RANDOMIZATIONS)

    # Per-replicate batches stay powers of two to keep the Sobol balance.
    batch = 1 << max(4, min(10, int(math.log2(cfg.max_evals / _QMC_RANDOMIZATIONS))))
    n_per = 0
    evals = 0
    value = 0.0
    error = math.inf
    converged = False
    while True:
        for i, engine in enumerate(engines):
            pts = lower + widths * engine.random(batch)
            y = np.asarray(f(pts), dtype=float)
            finite = np.isfinite(y)
            if not finite.all():
                j = int(np.argmin(finite))
                raise IntegrandError(
                    f"integrand returned {y[j]} at point {pts[j].tolist()}", point=pts[j].copy()
                )
            sums[i] += float(y.sum())
        n_per += batch
        evals += _QMC_RANDOMIZATIONS * batch
        estimates = volume * sums / n_per
        value = float(estimates.mean())
        error = 3.0 * float(estimates.std(ddof=1)) / math.sqrt(_QMC_RANDOMIZATIONS)
        if error <= cfg.tolerance(value):
            converged = True
            break
        batch = n_per  # double the total count next round
        if evals + _QMC_RANDOMIZATIONS * batch > cfg.max_evals:
            break
    return EvalResult(value=value, error_estimate=error, evals=evals, converged=converged)


def integrate_semi_infinite(f: Callable, unbounded_axes: Iterable[int],
                            finite_limits: Mapping[int, float] | None = None,
                            cfg: QuadratureConfig | None = None,
                            vectorized: bool = True) -> EvalResult:
    """Integrate ``f`` over [0, inf) on ``unbounded_axes`` and [0, L] elsewhere.

    Each unbounded axis is mapped through x = t/(1-t) (Jacobian 1/(1-t)^2)
    and the result integrated over the unit box truncated at 1 - 1e-12; the
    integrand must decay fast enough for the truncated tail to be negligible
    (true of everything this package integrates).
    """
    unbounded = sorted({int(a) for a in unbounded_axes})
    finite_limits = {int(k): float(v) for k, v in (finite_limits or {}).items()}
    d = len(unbounded) + len(finite_limits)
    if d == 0:
        raise DomainError("no axes given")
    if sorted(unbounded + list(finite_limits)) != list(range(d)):
        raise DomainError(
            f"unbounded axes {unbounded} and finite limits {sorted(finite_limits)} "
            f"must partition axes 0..{d - 1}"
        )
    for ax, limit in finite_limits.items():
        if not (math.isfinite(limit) and limit > 0.0):
            raise DomainError(f"finite upper limit on axis {ax} must be positive, got {limit}")

    upper = tuple(
        1.0 - _SEMI_INFINITE_EPS if ax in unbounded else finite_limits[ax] for ax in range(d)
    )
    box = Box(lower=(0.0,) * d, upper=upper)
    mask = np.zeros(d, dtype=bool)
    mask[unbounded] = True

    g = _as_batch(f, vectorized)

    def transformed(t: np.ndarray) -> np.ndarray:
        x = np.array(t, copy=True)
        s = 1.0 - t[:, mask]
        x[:, mask] = t[:, mask] / s
        jac = np.prod(s, axis=1) ** -2
        return g(x) * jac

    return integrate_box(transformed, box, cfg)

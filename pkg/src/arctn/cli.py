"""Command-line front end.

Every numeric command prints one output record per evaluation, in one of
three formats: ``text`` (aligned table, 10 significant digits), ``json``
(one object per line, 17 significant digits), or ``csv``. Records carry the
computed value, the engine's error estimate, the closed-form reference and
residual when one is known, the convergence flag, and the evaluation count.

Exit codes: 0 on success (all checks passed), 1 on usage errors, 2 when the
engine failed to converge or an identity check failed numerically.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace

import click
import numpy as np

from . import arctann, reduction
from .cubature import QuadratureConfig, default_config
from .errors import ArctnError
from .special_functions import arctan_constant, gamma, gamma_via_exp_integral

PASS_EXIT = 0
USAGE_EXIT = 1
NUMERIC_EXIT = 2

_JSON_DIGITS = 17
_TEXT_DIGITS = 10


@dataclass
class OutputRecord:
    command: str
    inputs: dict = field(default_factory=dict)
    value: float = 0.0
    error_estimate: float = 0.0
    reference: float | None = None
    residual: float | None = None
    converged: bool = True
    evals: int = 0

    def passed(self) -> bool:
        if not self.converged:
            return False
        if self.residual is None:
            return True
        return abs(self.residual) <= 10.0 * self.error_estimate


# ---------------------------------------------------------------------------
# Rendering. JSON is built by hand so float precision is exactly 17
# significant digits, which byte-stable golden tests rely on.
# ---------------------------------------------------------------------------


def _fmt_float(x: float, digits: int) -> str:
    return format(float(x), f".{digits}g")


def _json_value(v, digits: int) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(v, digits)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, dict):
        inner = ", ".join(f'{_json_value(str(k), digits)}: {_json_value(x, digits)}'
                          for k, x in v.items())
        return "{" + inner + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x, digits) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _record_fields(rec: OutputRecord) -> dict:
    out = {
        "command": rec.command,
        "inputs": rec.inputs,
        "value": float(rec.value),
        "error_estimate": float(rec.error_estimate),
    }
    if rec.reference is not None:
        out["reference"] = float(rec.reference)
        out["residual"] = float(rec.residual)
    out["converged"] = bool(rec.converged)
    out["evals"] = int(rec.evals)
    return out


def _inputs_compact(inputs: dict, digits: int) -> str:
    parts = []
    for k, v in inputs.items():
        if isinstance(v, (list, tuple)):
            rendered = "|".join(_fmt_float(x, digits) if isinstance(x, float) else str(x)
                                for x in v)
        elif isinstance(v, float):
            rendered = _fmt_float(v, digits)
        else:
            rendered = str(v)
        parts.append(f"{k}={rendered}")
    return ";".join(parts)


_CSV_HEADER = "command,inputs,value,error_estimate,reference,residual,converged,evals"


def _emit(records: list[OutputRecord], fmt: str, summary: str | None = None) -> None:
    if fmt == "json":
        for rec in records:
            click.echo(_json_value(_record_fields(rec), _JSON_DIGITS))
        if summary:
            click.echo(summary, err=True)
    elif fmt == "csv":
        click.echo(_CSV_HEADER)
        for rec in records:
            ref = _fmt_float(rec.reference, _JSON_DIGITS) if rec.reference is not None else ""
            res = _fmt_float(rec.residual, _JSON_DIGITS) if rec.residual is not None else ""
            click.echo(",".join([
                rec.command,
                _inputs_compact(rec.inputs, _JSON_DIGITS),
                _fmt_float(rec.value, _JSON_DIGITS),
                _fmt_float(rec.error_estimate, _JSON_DIGITS),
                ref,
                res,
                "true" if rec.converged else "false",
                str(rec.evals),
            ]))
        if summary:
            click.echo(summary, err=True)
    else:
        _emit_text(records, summary)


def _emit_text(records: list[OutputRecord], summary: str | None) -> None:
    header = ["command", "inputs", "value", "error", "reference", "residual", "conv", "evals"]
    rows = []
    for rec in records:
        rows.append([
            rec.command,
            _inputs_compact(rec.inputs, _TEXT_DIGITS),
            _fmt_float(rec.value, _TEXT_DIGITS),
            _fmt_float(rec.error_estimate, _TEXT_DIGITS),
            _fmt_float(rec.reference, _TEXT_DIGITS) if rec.reference is not None else "-",
            _fmt_float(rec.residual, _TEXT_DIGITS) if rec.residual is not None else "-",
            "yes" if rec.converged else "NO",
            str(rec.evals),
        ])
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
              for i in range(len(header))]
    click.echo("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    click.echo("  ".join("-" * w for w in widths))
    for r in rows:
        click.echo("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    if summary:
        click.echo(summary)


# ---------------------------------------------------------------------------
# Shared option handling
# ---------------------------------------------------------------------------


def _engine_options(fn):
    for opt in reversed([
        click.option("--abs-tol", type=float, default=None, help="Absolute tolerance."),
        click.option("--rel-tol", type=float, default=None, help="Relative tolerance."),
        click.option("--max-evals", type=int, default=None,
                      help="Evaluation budget (default from ARCTN_MAX_EVALS or 1e6)."),
        click.option("--method", type=click.Choice(["adaptive", "qmc", "auto"]),
                      default="auto", show_default=True),
        click.option("--seed", type=int, default=0, show_default=True,
                      help="Seed for QMC scrambling and sample generation."),
    ]):
        fn = opt(fn)
    return fn


def _format_option(fn):
    return click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
                        default="text", show_default=True)(fn)


def _resolve_cfg(dim: int, abs_tol, rel_tol, max_evals, method, seed) -> QuadratureConfig:
    cfg = default_config(dim)
    if max_evals is None:
        env = os.environ.get("ARCTN_MAX_EVALS")
        if env is not None:
            try:
                max_evals = int(env)
            except ValueError:
                raise click.UsageError(f"ARCTN_MAX_EVALS must be an integer, got {env!r}")
    overrides = {"method": method, "seed": seed}
    if abs_tol is not None:
        overrides["abs_tol"] = abs_tol
    if rel_tol is not None:
        overrides["rel_tol"] = rel_tol
    if max_evals is not None:
        overrides["max_evals"] = max_evals
    try:
        return replace(cfg, **overrides)
    except ArctnError as exc:
        raise click.UsageError(str(exc))


def _parse_arg_vector(args_str: str, order: int, flag: str = "--args") -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in args_str.split(",") if tok.strip() != "")
    except ValueError:
        raise click.UsageError(f"{flag} must be comma-separated numbers, got {args_str!r}")
    if len(values) != order - 1:
        raise click.UsageError(
            f"{flag} needs exactly order-1 = {order - 1} entries, got {len(values)}"
        )
    return values


def _check_order(order: int) -> int:
    if order < 2:
        raise click.UsageError("--order must be an integer >= 2")
    return order


def _random_arg_vectors(order: int, count: int, seed: int) -> list[tuple[float, ...]]:
    # Log-uniform in [0.1, 10] per entry.
    rng = np.random.default_rng(seed)
    return [tuple(10.0 ** rng.uniform(-1.0, 1.0, size=order - 1)) for _ in range(count)]


@click.group()
@click.version_option(package_name="arctn", prog_name="arctn")
def cli():
    """Generalized n-th order arctan integrals and identity checks."""


@cli.command("eval")
@click.option("--order", type=int, required=True, help="Order n >= 2.")
@click.option("--args", "args_str", required=True,
              help="Comma-separated non-negative u_1,...,u_{n-1}.")
@_engine_options
@_format_option
def cmd_eval(order, args_str, abs_tol, rel_tol, max_evals, method, seed, fmt):
    """Evaluate arctan_n at the given arguments."""
    order = _check_order(order)
    args = _parse_arg_vector(args_str, order)
    cfg = _resolve_cfg(order - 1, abs_tol, rel_tol, max_evals, method, seed)
    r = arctann.eval_arctan(order, args, cfg)
    if order == 2:
        reference = math.atan(args[0])
    elif all(u == 1.0 for u in args):
        reference = arctan_constant(order).value / order
    else:
        reference = None
    rec = OutputRecord(
        command="eval",
        inputs={"order": order, "args": list(args)},
        value=r.value,
        error_estimate=r.error_estimate,
        reference=reference,
        residual=None if reference is None else r.value - reference,
        converged=r.converged,
        evals=r.evals,
    )
    _emit([rec], fmt)
    return PASS_EXIT if r.converged else NUMERIC_EXIT


@cli.command("identity")
@click.option("--order", type=int, required=True)
@click.option("--args", "args_str", default=None,
              help="Comma-separated strictly positive arguments.")
@click.option("--random", "random_count", type=int, default=None,
              help="Check this many random argument vectors instead of --args.")
@_engine_options
@_format_option
def cmd_identity(order, args_str, random_count, abs_tol, rel_tol, max_evals, method, seed, fmt):
    """Check the n-term functional relation: sum of reflections equals C_n."""
    order = _check_order(order)
    if (args_str is None) == (random_count is None):
        raise click.UsageError("exactly one of --args or --random is required")
    if args_str is not None:
        samples = [_parse_arg_vector(args_str, order)]
    else:
        if random_count < 1:
            raise click.UsageError("--random must be >= 1")
        samples = _random_arg_vectors(order, random_count, seed)
    cfg = _resolve_cfg(order - 1, abs_tol, rel_tol, max_evals, method, seed)
    constant = arctan_constant(order).value

    records = []
    for sample in samples:
        r = arctann.functional_sum(order, sample, cfg)
        records.append(OutputRecord(
            command="identity",
            inputs={"order": order, "args": list(sample)},
            value=r.value,
            error_estimate=r.error_estimate,
            reference=constant,
            residual=r.value - constant,
            converged=r.converged,
            evals=r.evals,
        ))
    worst = max(abs(rec.residual) for rec in records)
    failures = sum(not rec.passed() for rec in records)
    verdict = "all pass" if failures == 0 else f"{failures} FAILED"
    summary = f"# max |residual| = {_fmt_float(worst, _TEXT_DIGITS)} over {len(records)} sample(s); {verdict}"
    _emit(records, fmt, summary=summary)
    return PASS_EXIT if failures == 0 else NUMERIC_EXIT


@cli.command("constant")
@click.option("--order", type=int, required=True)
@_format_option
def cmd_constant(order, fmt):
    """Print the closed-form constant C_n = n*(Gamma(1/n)/n)**n."""
    order = _check_order(order)
    rec = OutputRecord(
        command="constant",
        inputs={"order": order},
        value=arctan_constant(order).value,
    )
    _emit([rec], fmt)
    return PASS_EXIT


@cli.command("unitcube")
@click.option("--order", type=int, required=True)
@_engine_options
@_format_option
def cmd_unitcube(order, abs_tol, rel_tol, max_evals, method, seed, fmt):
    """Integrate over the unit cube and compare with (Gamma(1/n)/n)**n."""
    order = _check_order(order)
    cfg = _resolve_cfg(order - 1, abs_tol, rel_tol, max_evals, method, seed)
    r = arctann.unit_cube_value(order, cfg)
    reference = arctan_constant(order).value / order
    rec = OutputRecord(
        command="unitcube",
        inputs={"order": order},
        value=r.value,
        error_estimate=r.error_estimate,
        reference=reference,
        residual=r.value - reference,
        converged=r.converged,
        evals=r.evals,
    )
    _emit([rec], fmt)
    return PASS_EXIT if rec.passed() else NUMERIC_EXIT


@cli.command("fullspace")
@click.option("--order", type=int, required=True)
@_engine_options
@_format_option
def cmd_fullspace(order, abs_tol, rel_tol, max_evals, method, seed, fmt):
    """Integrate over the whole positive orthant and compare with C_n."""
    order = _check_order(order)
    cfg = _resolve_cfg(order - 1, abs_tol, rel_tol, max_evals, method, seed)
    r = arctann.full_space_value(order, cfg)
    reference = arctan_constant(order).value
    rec = OutputRecord(
        command="fullspace",
        inputs={"order": order},
        value=r.value,
        error_estimate=r.error_estimate,
        reference=reference,
        residual=r.value - reference,
        converged=r.converged,
        evals=r.evals,
    )
    _emit([rec], fmt)
    return PASS_EXIT if rec.passed() else NUMERIC_EXIT


@cli.command("gammacheck")
@click.option("--order", type=int, required=True)
@_engine_options
@_format_option
def cmd_gammacheck(order, abs_tol, rel_tol, max_evals, method, seed, fmt):
    """Compare n * integral exp(-x**n) against Gamma(1/n)."""
    order = _check_order(order)
    cfg = _resolve_cfg(1, abs_tol, rel_tol, max_evals, method, seed)
    r = gamma_via_exp_integral(order, cfg)
    reference = gamma(1.0 / order)
    rec = OutputRecord(
        command="gammacheck",
        inputs={"order": order},
        value=r.value,
        error_estimate=r.error_estimate,
        reference=reference,
        residual=r.value - reference,
        converged=r.converged,
        evals=r.evals,
    )
    _emit([rec], fmt)
    return PASS_EXIT if rec.passed() else NUMERIC_EXIT


@cli.command("fsym")
@click.option("--order", type=int, required=True)
@click.option("--u", type=float, required=True)
@_engine_options
@_format_option
def cmd_fsym(order, u, abs_tol, rel_tol, max_evals, method, seed, fmt):
    """Check F(u) + F(1/u) = 2*C_n for F(u) = arctan_n(u,..,u) + (n-1)*arctan_n(u,1,..,1)."""
    order = _check_order(order)
    if u <= 0:
        raise click.UsageError("--u must be strictly positive")
    cfg = _resolve_cfg(order - 1, abs_tol, rel_tol, max_evals, method, seed)
    a = arctann.eval_F(order, u, cfg)
    b = arctann.eval_F(order, 1.0 / u, cfg)
    reference = 2.0 * arctan_constant(order).value
    rec = OutputRecord(
        command="fsym",
        inputs={"order": order, "u": float(u)},
        value=a.value + b.value,
        error_estimate=a.error_estimate + b.error_estimate,
        reference=reference,
        residual=a.value + b.value - reference,
        converged=a.converged and b.converged,
        evals=a.evals + b.evals,
    )
    _emit([rec], fmt)
    return PASS_EXIT if rec.passed() else NUMERIC_EXIT


@cli.command("phi4")
@click.option("--u", type=float, required=True)
@click.option("--v", type=float, required=True)
@_engine_options
@_format_option
def cmd_phi4(u, v, abs_tol, rel_tol, max_evals, method, seed, fmt):
    """Check Phi(u,v) + Phi(1/u,1/v) = C_4 for the two-term order-4 combination."""
    if u <= 0 or v <= 0:
        raise click.UsageError("--u and --v must be strictly positive")
    cfg = _resolve_cfg(3, abs_tol, rel_tol, max_evals, method, seed)
    a = arctann.eval_phi4(u, v, cfg)
    b = arctann.eval_phi4(1.0 / u, 1.0 / v, cfg)
    reference = arctan_constant(4).value
    rec = OutputRecord(
        command="phi4",
        inputs={"u": float(u), "v": float(v)},
        value=a.value + b.value,
        error_estimate=a.error_estimate + b.error_estimate,
        reference=reference,
        residual=a.value + b.value - reference,
        converged=a.converged and b.converged,
        evals=a.evals + b.evals,
    )
    _emit([rec], fmt)
    return PASS_EXIT if rec.passed() else NUMERIC_EXIT


@cli.command("reduce")
@click.option("--formula", type=click.Choice(["f1", "f2"]), required=True)
@click.option("--integrand", "integrand_id", required=True,
              help="Registered integrand id (see `arctn integrands`).")
@click.option("--n-vars", type=int, default=2, show_default=True,
              help="Variable count for --formula f2.")
@click.option("--alpha", type=float, required=True)
@_engine_options
@_format_option
def cmd_reduce(formula, integrand_id, n_vars, alpha, abs_tol, rel_tol, max_evals, method, seed, fmt):
    """Check one reduction formula on a registered integrand."""
    if formula == "f1" and n_vars != 2:
        raise click.UsageError("--n-vars applies only to --formula f2")
    dim = 2 if formula == "f1" else n_vars
    cfg = _resolve_cfg(dim, abs_tol, rel_tol, max_evals, method, seed)
    if formula == "f1":
        report = reduction.reduce_check_f1(integrand_id, alpha, cfg)
    else:
        report = reduction.reduce_check_f2(integrand_id, n_vars, alpha, cfg)
    rec = OutputRecord(
        command="reduce",
        inputs={"formula": formula, "integrand": integrand_id,
                "n_vars": report.n_vars, "alpha": float(alpha)},
        value=report.lhs.value,
        error_estimate=report.lhs.error_estimate + report.rhs.error_estimate,
        reference=report.rhs.value,
        residual=report.residual,
        converged=report.lhs.converged and report.rhs.converged,
        evals=report.lhs.evals + report.rhs.evals,
    )
    _emit([rec], fmt)
    return PASS_EXIT if report.passed and rec.converged else NUMERIC_EXIT


@cli.command("integrands")
@_format_option
def cmd_integrands(fmt):
    """List the registered reduction-check integrands."""
    entries = [reduction.get_integrand(name) for name in reduction.integrand_names()]
    if fmt == "json":
        for e in entries:
            click.echo(_json_value({
                "name": e.name,
                "arity": e.arity if e.arity is not None else "any",
                "alpha_max": e.alpha_max,
                "closed_form": e.closed_form is not None,
            }, _JSON_DIGITS))
    elif fmt == "csv":
        click.echo("name,arity,alpha_max,closed_form")
        for e in entries:
            arity = str(e.arity) if e.arity is not None else "any"
            click.echo(f"{e.name},{arity},{_fmt_float(e.alpha_max, _JSON_DIGITS)},"
                       f"{'true' if e.closed_form is not None else 'false'}")
    else:
        click.echo(f"{'name':<22}{'arity':<7}{'alpha_max':<11}closed_form")
        for e in entries:
            arity = str(e.arity) if e.arity is not None else "any"
            amax = "inf" if math.isinf(e.alpha_max) else _fmt_float(e.alpha_max, _TEXT_DIGITS)
            click.echo(f"{e.name:<22}{arity:<7}{amax:<11}"
                       f"{'yes' if e.closed_form is not None else 'no'}")
    return PASS_EXIT


def main(argv=None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        rv = cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.ClickException as exc:  # includes UsageError
        exc.show()
        return USAGE_EXIT
    except click.Abort:
        click.echo("aborted", err=True)
        return USAGE_EXIT
    except ArctnError as exc:
        click.echo(f"error: {exc}", err=True)
        return USAGE_EXIT
    return int(rv) if isinstance(rv, int) else PASS_EXIT


if __name__ == "__main__":
    raise SystemExit(main())

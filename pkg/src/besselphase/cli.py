"""Reproduce the tables and figure data as CSV, or evaluate a single point.

    besselphase eval --nu 50 --z 100
    besselphase table1 --out table1.csv
    besselphase table-large --nu 1e6
    besselphase figure-phase | figure-small-nu | figure-arg
    besselphase kummer --nu 20

Every file starts with one ``#`` comment line recording the configuration and
the package version, followed by a header row.  Rows are produced in a fixed
order whatever ``--jobs`` is.  Exit status: 0 on success, 1 if any row failed
(the failure text is in its ``error`` column), 2 on a bad command line.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import warnings
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Any

from . import __version__
from .errors import IntegerOrderWarning
from .eval import eval_jy
from .oracle import DEFAULT_PRECISION, oracle_j, oracle_y
from .phase import EPS, TruncationPolicy, general_basis_phase_derivative, phase_derivative
from .series import DEFAULT_MAX_TERMS, Order
from .validate import _kummer

COMMANDS = ("eval", "table1", "table-large", "figure-phase", "figure-small-nu", "figure-arg", "kummer")

TABLE1_ORDERS = (50, complex(50, -10), complex(100, 20), 10_000, 100_000)
TABLE1_RATIOS = (1.1, 2.0, 10.0, 100.0)
LARGE_ORDERS = (1e6, 1e9, 1e12, 1e15, 1e18)
LARGE_RATIOS = (1.1, 2.0, 10.0, 10 * math.pi)
KUMMER_ORDERS = (5.0, 20.0, 50.0)
KUMMER_RATIOS = (1.5, 2.0, 10.0, 100.0)
# the oracle's power series is used up to this |nu|; beyond it the reference is
# the same expansion run in extended precision
ORACLE_ORDER_LIMIT = 200
REFERENCE_MAX_TERMS = 2000
GRID_POINTS = 100


@dataclass(frozen=True)
class RunConfig:
    command: str
    nu: complex | None = None
    z: complex | None = None
    ratio: float | None = None
    precision_bits: int = DEFAULT_PRECISION
    max_terms: int = DEFAULT_MAX_TERMS
    rtol: float = EPS
    terms: int | None = None
    output_path: str | None = None
    jobs: int = 1
    extended: bool = False  # eval only: run the expansion at precision_bits

    def policy(self) -> TruncationPolicy:
        if self.terms is not None:
            return TruncationPolicy.fixed(self.terms)
        return TruncationPolicy.auto(self.rtol, self.max_terms)

    def reference_policy(self) -> TruncationPolicy:
        return TruncationPolicy.auto(2.0 ** -(self.precision_bits // 2), REFERENCE_MAX_TERMS)

    def comment(self) -> str:
        parts = [f"besselphase {__version__}"]
        for key, value in asdict(self).items():
            if value is not None and key != "output_path":
                parts.append(f"{key}={_fmt_scalar(value)}")
        return "# " + " ".join(parts)


class ConfigError(ValueError):
    pass


def parse_complex(text: str) -> complex | float:
    """``"50"``, ``"50-10i"``, ``"1e6"``, ``"-2.5+0.5i"``; real when the imaginary part is 0."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        value = complex(s)
    except ValueError:
        raise ConfigError(f"cannot parse {text!r} as a number (use a+bi for complex)") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConfigError(f"{text!r} is not finite")
    return value.real if value.imag == 0 else value


def _fmt_scalar(x: Any) -> str:
    if isinstance(x, complex):
        sign = "+" if x.imag >= 0 or math.isnan(x.imag) else "-"
        return f"{x.real!r}{sign}{abs(x.imag)!r}i"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _fmt_err(x: float | None) -> str:
    return "" if x is None else f"{x:.6e}"


def _log10(x: float | None) -> str:
    if x is None:
        return ""
    return "-inf" if x == 0 else f"{math.log10(x):.4f}"


def _rel(approx: Any, ref: Any) -> float:
    ref_c = complex(ref)
    diff = abs(complex(approx) - ref_c)
    return diff / abs(ref_c) if ref_c != 0 else diff


def _quiet_oracle_y(nu: Any, z: Any, precision: int) -> Any:
    # integer orders go through the documented extrapolation; the warning
    # would only repeat on every row
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegerOrderWarning)
        return oracle_y(nu, z, precision=precision)


def _guard(fn: Callable[..., dict], columns: Sequence[str]) -> Callable[..., dict]:
    def run(*args: Any) -> dict:
        try:
            row = fn(*args)
            row.setdefault("error", "")
        except Exception as exc:  # recorded per row; the run continues
            row = dict(_identity(args))
            row["error"] = f"{type(exc).__name__}: {exc}"
        return {c: row.get(c, "") for c in columns}

    return run


def _identity(args: tuple) -> dict:
    # the leading (cfg, nu, x) arguments identify a row even when it failed
    out = {}
    if len(args) > 1:
        out["nu"] = _fmt_scalar(args[1])
    if len(args) > 2:
        out["z_over_nu"] = _fmt_scalar(args[2])
    return out


# -- rows -------------------------------------------------------------------

EVAL_COLUMNS = (
    "nu", "z", "j_re", "j_im", "y_re", "y_im", "err_estimate",
    "modulus_terms", "phase_terms", "warnings", "error",
)


def _eval_row(cfg: RunConfig, nu: Any, z: Any) -> dict:
    if cfg.extended:
        res = eval_jy(nu, z, cfg.policy(), precision=cfg.precision_bits)
        digits = int(cfg.precision_bits * math.log10(2))
        ctx = res.modulus_sq.context

        def parts(v: Any) -> tuple[str, str]:
            return ctx.nstr(ctx.re(v), digits), ctx.nstr(ctx.im(v), digits)
    else:
        res = eval_jy(nu, z, cfg.policy())

        def parts(v: Any) -> tuple[str, str]:
            c = complex(v)
            return repr(c.real), repr(c.imag)

    j_re, j_im = parts(res.j_value)
    y_re, y_im = parts(res.y_value)
    return {
        "nu": _fmt_scalar(nu), "z": _fmt_scalar(z),
        "j_re": j_re, "j_im": j_im, "y_re": y_re, "y_im": y_im,
        "err_estimate": _fmt_err(res.err_estimate),
        "modulus_terms": res.modulus_terms_used, "phase_terms": res.phase_terms_used,
        "warnings": ";".join(sorted(w.value for w in res.warnings)),
    }


TABLE_COLUMNS = (
    "nu", "z_over_nu", "z", "modulus_terms", "phase_terms",
    "rel_err_j", "rel_err_y", "reference", "error",
)


def _reference(cfg: RunConfig, nu: Any, z: float) -> tuple[Any, Any, str]:
    if abs(nu) <= ORACLE_ORDER_LIMIT:
        p = cfg.precision_bits
        return oracle_j(nu, z, precision=p), _quiet_oracle_y(nu, z, p), "oracle"
    ref = eval_jy(nu, z, cfg.reference_policy(), precision=cfg.precision_bits)
    return ref.j_value, ref.y_value, f"extended-{cfg.precision_bits}"


def _table_row(cfg: RunConfig, nu: Any, ratio: float) -> dict:
    z = ratio * abs(nu)
    res = eval_jy(nu, z, cfg.policy())
    j_ref, y_ref, source = _reference(cfg, nu, z)
    return {
        "nu": _fmt_scalar(nu), "z_over_nu": _fmt_scalar(ratio), "z": _fmt_scalar(z),
        "modulus_terms": res.modulus_terms_used, "phase_terms": res.phase_terms_used,
        "rel_err_j": _fmt_err(_rel(res.j_value, j_ref)),
        "rel_err_y": _fmt_err(_rel(res.y_value, y_ref)),
        "reference": source,
    }


PHASE_COLUMNS = ("z", "alpha_prime_jy", "alpha_prime_2jy", "alpha_prime_series", "error")


def _figure_phase_row(cfg: RunConfig, nu: float, z: float) -> dict:
    p = cfg.precision_bits
    j = float(oracle_j(nu, z, precision=p))
    y = float(_quiet_oracle_y(nu, z, p))
    root = math.sqrt(z)
    # Wronskians: {sqrt(z) J, sqrt(z) Y} has 2/pi, doubling u doubles it
    a1 = general_basis_phase_derivative([root * j], [root * y], 2 / math.pi)[0]
    a2 = general_basis_phase_derivative([2 * root * j], [root * y], 4 / math.pi)[0]
    series = phase_derivative(nu, z, cfg.policy())[0]
    return {
        "z": _fmt_scalar(z),
        "alpha_prime_jy": f"{a1:.17g}", "alpha_prime_2jy": f"{a2:.17g}",
        "alpha_prime_series": f"{float(series):.17g}",
    }


SMALL_NU_COLUMNS = ("nu", "z", "modulus_terms", "phase_terms", "rel_err_j", "log10_rel_err_j", "error")


def _small_nu_row(cfg: RunConfig, nu: float, _: Any = None) -> dict:
    z = 10 * nu
    res = eval_jy(nu, z, cfg.policy())
    err = _rel(res.j_value, oracle_j(nu, z, precision=cfg.precision_bits))
    return {
        "nu": _fmt_scalar(nu), "z": _fmt_scalar(z),
        "modulus_terms": res.modulus_terms_used, "phase_terms": res.phase_terms_used,
        "rel_err_j": _fmt_err(err), "log10_rel_err_j": _log10(err),
    }


ARG_COLUMNS = ("theta", "z_re", "z_im", "rel_err_y", "log10_rel_err_y", "warnings", "error")


def _arg_row(cfg: RunConfig, nu: Any, radius: float, theta: float) -> dict:
    z = radius * complex(math.cos(theta), math.sin(theta))
    if theta == 0:
        z = radius
    res = eval_jy(nu, z, cfg.policy())
    err = _rel(res.y_value, _quiet_oracle_y(nu, z, cfg.precision_bits))
    zc = complex(z)
    return {
        "theta": _fmt_scalar(theta), "z_re": repr(zc.real), "z_im": repr(zc.imag),
        "rel_err_y": _fmt_err(err), "log10_rel_err_y": _log10(err),
        "warnings": ";".join(sorted(w.value for w in res.warnings)),
    }


KUMMER_COLUMNS = ("nu", "z_over_nu", "z", "phase_terms", "residual", "estimate", "residual_over_estimate", "error")


def _kummer_row(cfg: RunConfig, nu: float, ratio: float) -> dict:
    z = ratio * nu
    res, terms, est = _kummer(Order(nu), z, cfg.policy(), cfg.precision_bits)
    return {
        "nu": _fmt_scalar(nu), "z_over_nu": _fmt_scalar(ratio), "z": _fmt_scalar(z),
        "phase_terms": terms, "residual": _fmt_err(res), "estimate": _fmt_err(est),
        "residual_over_estimate": f"{res / est:.3f}" if est else "",
    }


# -- commands -----------------------------------------------------------------


def _grid_args(cfg: RunConfig) -> tuple[Callable[..., dict], Sequence[str], list[tuple]]:
    c = cfg.command
    if c == "eval":
        if cfg.nu is None or cfg.z is None:
            raise ConfigError("eval needs --nu and --z")
        return _eval_row, EVAL_COLUMNS, [(cfg.nu, cfg.z)]
    if c in ("table1", "table-large"):
        orders = TABLE1_ORDERS if c == "table1" else LARGE_ORDERS
        ratios = TABLE1_RATIOS if c == "table1" else LARGE_RATIOS
        if cfg.nu is not None:
            orders = (cfg.nu,)
        if cfg.ratio is not None:
            ratios = (cfg.ratio,)
        return _table_row, TABLE_COLUMNS, [(nu, r) for nu in orders for r in ratios]
    if c == "figure-phase":
        nu = 20.0 if cfg.nu is None else _real(cfg.nu, "--nu")
        top = 200.0
        if not 0 <= nu < top:
            raise ConfigError("figure-phase needs 0 <= nu < 200")
        step = (top - nu) / GRID_POINTS
        return _figure_phase_row, PHASE_COLUMNS, [(nu, nu + k * step) for k in range(1, GRID_POINTS + 1)]
    if c == "figure-small-nu":
        return _small_nu_row, SMALL_NU_COLUMNS, [(5 * k / GRID_POINTS,) for k in range(1, GRID_POINTS + 1)]
    if c == "figure-arg":
        nu = 10.0 if cfg.nu is None else cfg.nu
        radius = 100.0 if cfg.z is None else abs(cfg.z)
        thetas = [math.pi * k / GRID_POINTS for k in range(GRID_POINTS)]
        return _arg_row, ARG_COLUMNS, [(nu, radius, t) for t in thetas]
    if c == "kummer":
        orders = KUMMER_ORDERS if cfg.nu is None else (_real(cfg.nu, "--nu"),)
        ratios = KUMMER_RATIOS if cfg.ratio is None else (cfg.ratio,)
        return _kummer_row, KUMMER_COLUMNS, [(nu, r) for nu in orders for r in ratios]
    raise ConfigError(f"unknown command {c!r}")


def _real(x: Any, flag: str) -> float:
    if isinstance(x, complex):
        raise ConfigError(f"{flag} must be real for this command")
    return float(x)


def run(cfg: RunConfig, out=None) -> int:
    """Write the CSV for ``cfg`` to ``out`` (or ``cfg.output_path``); return the exit status."""
    fn, columns, grid = _grid_args(cfg)
    guarded = _guard(fn, columns)
    calls = [(cfg, *args) for args in grid]
    if cfg.jobs > 1 and len(calls) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_call, [(fn.__name__, columns, c) for c in calls]))
    else:
        rows = [guarded(*c) for c in calls]

    def write(stream) -> None:
        stream.write(cfg.comment() + "\r\n")
        writer = csv.DictWriter(stream, fieldnames=list(columns))
        writer.writeheader()
        writer.writerows(rows)

    if out is not None:
        write(out)
    elif cfg.output_path:
        with open(cfg.output_path, "w", newline="", encoding="utf-8") as fh:
            write(fh)
    else:
        write(sys.stdout)
    return 1 if any(r["error"] for r in rows) else 0


def _call(job: tuple) -> dict:
    # process-pool entry point; row functions are looked up by name so only
    # plain data crosses the process boundary
    name, columns, args = job
    return _guard(globals()[name], columns)(*args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="besselphase",
        description="Bessel J and Y of large order from modulus/phase asymptotics.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--nu", help="order, real or complex as a+bi")
    p.add_argument("--z", help="argument, real or complex as a+bi")
    p.add_argument("--ratio", type=float, help="restrict tables to one z/|nu|")
    p.add_argument("--terms", type=int, help="fixed number of terms per series (default: automatic)")
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.add_argument("--rtol", type=float, default=EPS, help="automatic truncation target (default: machine epsilon)")
    p.add_argument("--precision", type=int, help=f"bits for reference paths (default {DEFAULT_PRECISION}); "
                   "with eval, run the expansion itself at this precision")
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for rows")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        nu=None if args.nu is None else parse_complex(args.nu),
        z=None if args.z is None else parse_complex(args.z),
        ratio=args.ratio,
        max_terms=args.max_terms,
        rtol=args.rtol,
        terms=args.terms,
        output_path=args.out,
        jobs=args.jobs,
    )
    if args.precision is not None:
        cfg = replace(cfg, precision_bits=args.precision, extended=args.command == "eval")
    if cfg.precision_bits < 64:
        raise ConfigError("--precision must be at least 64")
    if cfg.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    if cfg.ratio is not None and not cfg.ratio > 0:
        raise ConfigError("--ratio must be positive")
    if cfg.rtol < 0:
        raise ConfigError("--rtol must be nonnegative")
    try:
        cfg.policy()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _grid_args(cfg)  # surfaces command-specific config errors before any work
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"besselphase: error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

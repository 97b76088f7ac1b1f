"""Command-line front end: tabulate spherical functions and run the identity checks.

Exit status: 0 success, 1 a verification check failed, 2 invalid configuration,
3 numerical non-convergence. Tables are CSV (header row, 17 significant digits)
or JSON; figures are left to whatever consumes the CSV.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from .errors import ConfigError, DomainError, HypPoissonError, NoConvergence
from .harmonics import KTypeIndex
from .kernels import SpectralParams
from .quadrature import GRID_ENV, default_grid_size, zonal_grid
from .spherical import (
    c_constant,
    delta_constant,
    elementary_spherical,
    generalized_spherical,
    scaled_generalized,
    spherical_limit,
)
from .transform import (
    KFiniteFunction,
    hardy_norm,
    inversion_error,
    kfinite_norm,
)
from .verify import CHECK_ORDER, DEFAULT_TOLERANCES, build_report, run_checks

COMMANDS = ("spherical", "gen-spherical", "limit", "hardy", "invert", "verify")
FORMATS = ("csv", "json")
EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_NO_CONVERGENCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    n: int = 2
    twice_l: int = 0
    lambda_re: float = 0.0
    lambda_im: float = -1.0
    p: int = 0
    q: int = 0
    r_min: float = 0.0
    r_max: float = 0.9
    r_steps: int = 10
    p_exp: float = 2.0
    grid_size: int | None = None
    tolerances: dict = field(default_factory=dict)
    output_path: str | None = None
    format: str = "csv"
    timings: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.n < 2:
            raise ConfigError("--n must be >= 2")
        if self.twice_l < 0:
            raise ConfigError("--twice-l must be >= 0")
        for v in (self.lambda_re, self.lambda_im, self.r_min, self.r_max, self.p_exp):
            if not math.isfinite(v):
                raise ConfigError("numeric options must be finite")
        if not 0.0 <= self.r_min <= self.r_max < 1.0:
            raise ConfigError("need 0 <= r-min <= r-max < 1")
        if self.r_steps < 1:
            raise ConfigError("--r-steps must be >= 1")
        if self.r_steps > 1 and self.r_min == self.r_max:
            raise ConfigError("several r-steps need r-min < r-max")
        if self.grid_size is not None and not 1 <= self.grid_size <= 2048:
            raise ConfigError("--grid-size must lie in [1, 2048]")
        if self.command in ("gen-spherical", "limit", "hardy", "invert"):
            try:
                KTypeIndex(self.p, self.q)
            except DomainError as exc:
                raise ConfigError(str(exc)) from exc
        if self.command == "hardy" and self.p_exp < 2:
            raise ConfigError("--p-exp must be >= 2")
        if self.command in ("limit", "hardy", "invert") and not self.params().i_lambda.real > 0:
            raise ConfigError("this command needs Re(i lambda) > 0, i.e. --lambda-im < 0")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
        for key, val in self.tolerances.items():
            if not (isinstance(val, float) and val > 0 and math.isfinite(val)):
                raise ConfigError(f"tolerance {key} must be a positive number")

    def params(self) -> SpectralParams:
        return SpectralParams(self.n, self.twice_l, complex(self.lambda_re, self.lambda_im))

    def kfinite(self) -> KFiniteFunction:
        return KFiniteFunction(((KTypeIndex(self.p, self.q), 1.0),))

    def r_grid(self) -> list[float]:
        if self.r_steps == 1:
            return [self.r_min]
        step = (self.r_max - self.r_min) / (self.r_steps - 1)
        return [self.r_min + k * step for k in range(self.r_steps)]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))


def _tolerance_pair(text: str) -> tuple[str, float]:
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip(), float(val)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance value in {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyppoisson",
        description="Spherical functions and Poisson transforms on quaternionic hyperbolic space.",
        epilog=("lambda = lambda-re + i lambda-im, so i lambda = -lambda-im + i lambda-re; "
                f"{GRID_ENV} sets the quadrature grid when --grid-size is absent."),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    columns = {
        "spherical": "CSV columns: r, re, im (elementary spherical function)",
        "gen-spherical": "CSV columns: r, re, im (generalized spherical function of K-type (p, q))",
        "limit": "CSV columns: r, re, im, kind; kind is scaled, extrapolated or closed_form",
        "hardy": "CSV columns: r, scaled_norm; JSON adds the sup and both norm constants",
        "invert": "CSV columns: r, error (L2 distance of |C|^-2 g_r from phi_{p,q})",
        "verify": "JSON report of named checks; CSV columns: check_name, residual, tolerance, pass, runtime_ms",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=columns[name], description=columns[name])
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--twice-l", type=int, default=0)
        p.add_argument("--lambda-re", type=float, default=0.0)
        p.add_argument("--lambda-im", type=float, default=-1.0)
        p.add_argument("--p", type=int, default=0)
        p.add_argument("--q", type=int, default=0)
        p.add_argument("--r-min", type=float, default=0.0)
        p.add_argument("--r-max", type=float, default=0.9)
        p.add_argument("--r-steps", type=int, default=10)
        p.add_argument("--p-exp", type=float, default=2.0)
        p.add_argument("--grid-size", type=int, default=None)
        p.add_argument("--tol", type=_tolerance_pair, action="append", default=[], metavar="KEY=VALUE",
                       help=f"override a check tolerance; keys: {', '.join(CHECK_ORDER)}")
        p.add_argument("--output", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=FORMATS, default="json" if name == "verify" else "csv")
        p.add_argument("--timings", action="store_true",
                       help="record runtime_ms in the verify report (makes it run-dependent)")
    return parser


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command, n=ns.n, twice_l=ns.twice_l, lambda_re=ns.lambda_re, lambda_im=ns.lambda_im,
        p=ns.p, q=ns.q, r_min=ns.r_min, r_max=ns.r_max, r_steps=ns.r_steps, p_exp=ns.p_exp,
        grid_size=ns.grid_size, tolerances=dict(ns.tol), output_path=ns.output, format=ns.format,
        timings=ns.timings,
    )


# -- output --------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


# -- commands ---------------------------------------------------------------------------

def _table(config: RunConfig, header: list[str], rows: list[list], extra: dict | None = None) -> str:
    if config.format == "csv":
        return to_csv(header, rows)
    body = {"command": config.command, "config": asdict(config), "columns": header, "rows": rows}
    body.update(extra or {})
    return to_json(body)


def cmd_spherical(config: RunConfig) -> tuple[str, int]:
    params = config.params()
    rows = []
    for r in config.r_grid():
        v = elementary_spherical(params, r)
        rows.append([r, v.real, v.imag])
    return _table(config, ["r", "re", "im"], rows), EXIT_OK


def cmd_gen_spherical(config: RunConfig) -> tuple[str, int]:
    params, kt = config.params(), KTypeIndex(config.p, config.q)
    rows = []
    for r in config.r_grid():
        v = generalized_spherical(params, kt, r)
        rows.append([r, v.real, v.imag])
    return _table(config, ["r", "re", "im"], rows, {"radial_exponent": "q"}), EXIT_OK


def cmd_limit(config: RunConfig) -> tuple[str, int]:
    params, kt = config.params(), KTypeIndex(config.p, config.q)
    rows = []
    for r in config.r_grid():
        v = scaled_generalized(params, kt, r)
        rows.append([r, v.real, v.imag, "scaled"])
    ext = spherical_limit(params, kt).value
    closed = c_constant(params)
    rows.append([1.0, ext.real, ext.imag, "extrapolated"])
    rows.append([1.0, closed.real, closed.imag, "closed_form"])
    extra = {"extrapolated": _pair(ext), "closed_form": _pair(closed),
             "relative_error": abs(ext / closed - 1.0)}
    return _table(config, ["r", "re", "im", "kind"], rows, extra), EXIT_OK


def cmd_hardy(config: RunConfig) -> tuple[str, int]:
    params, f = config.params(), config.kfinite()
    grid = zonal_grid(config.n, config.grid_size)
    res = hardy_norm(params, f, config.p_exp, config.r_grid(), grid, with_limit=True)
    rows = [[r, v] for r, v in res.samples]
    fn = kfinite_norm(f, config.n, config.p_exp, grid)
    extra = {"sup": res.value, "argmax_r": res.argmax_r, "limit": res.limit, "f_norm": fn,
             "lower_bound": abs(c_constant(params)) * fn, "upper_bound": delta_constant(params) * fn}
    return _table(config, ["r", "scaled_norm"], rows, extra), EXIT_OK


def cmd_invert(config: RunConfig) -> tuple[str, int]:
    params, f = config.params(), config.kfinite()
    grid = zonal_grid(config.n, config.grid_size)
    rows = [[r, inversion_error(params, f, r, grid)] for r in config.r_grid()]
    return _table(config, ["r", "error"], rows), EXIT_OK


def cmd_verify(config: RunConfig) -> tuple[str, int]:
    results = run_checks(config.n, config.tolerances, config.grid_size)
    status = EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED
    if config.format == "csv":
        rows = [[d["check_name"], d["residual"], d["tolerance"], d["pass"], d["runtime_ms"]]
                for d in (r.to_dict(config.timings) for r in results)]
        return to_csv(["check_name", "residual", "tolerance", "pass", "runtime_ms"], rows), status
    return to_json(build_report(config.n, results, config.grid_size, config.timings)), status


HANDLERS = {
    "spherical": cmd_spherical,
    "gen-spherical": cmd_gen_spherical,
    "limit": cmd_limit,
    "hardy": cmd_hardy,
    "invert": cmd_invert,
    "verify": cmd_verify,
}


def run(config: RunConfig) -> int:
    try:
        config.validate()
        if config.grid_size is None:
            default_grid_size()  # surfaces a bad environment override as a config error
        print(f"Re(i lambda) = {config.params().i_lambda.real!r}", file=sys.stderr)
        text, status = HANDLERS[config.command](config)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ConfigError, DomainError, HypPoissonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv=None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
Semigroup Lab CLI.

Every command builds a RunReport and prints it as JSON (or CSV with
--out csv); --output also writes it to a directory.
"""

import argparse
import json
import logging
import math
from pathlib import Path
import sys

import numpy as np

from .admissibility import (
    admissibility_from_decay,
    decay_bound_from_admissibility,
    finite_time_constant,
    l2_admissibility_constant,
    lp_admissibility,
    plancherel_check,
)
from .calculus import (
    decay_curve,
    polynomial_decay_constant,
    resolvent_profile,
    semigroup_norm,
    weiss_constant,
)
from .carleson import ColumnFamily, carleson_constant, load_columns
from .certificates import (
    admissibility_certificate,
    calibrate_moment_constant,
    measure_certificate_inputs,
    measure_faster_decay,
    measure_strong_weiss,
)
from .config import Config
from .errors import SemigroupLabError, UsageError
from .harness import QuadratureSpec
from .rates import (
    check_log_decay_equivalence,
    fit_rate,
    integral_bound_constant,
    transference_envelope,
    verify_integral_bound,
)
from .reports import ORACLE, RunReport
from .spectra import (
    FAMILIES,
    FAMILY_ALIASES,
    OperatorSymbol,
    WeightedIndexSpace,
    builtin_family,
    dump_spectrum,
    load_spectrum,
    read_document,
)
from .truncation import TruncationPolicy
from .validation_utils import validate_spectrum_document

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = "config/config.yaml"

# Short names accepted next to the descriptive command names
COMMAND_ALIASES = {
    "lemma43": "integral-bound",
    "thm44-check": "log-equivalence",
    "prop56": "faster-decay",
    "prop57": "strong-weiss",
    "example33": "worked-example",
}


def _floats(text: str) -> list[float]:
    """Parse "0.4,0.5" into floats."""
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text}") from e


def _aliases(command: str) -> list[str]:
    return [alias for alias, target in COMMAND_ALIASES.items() if target == command]


class CLIArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _source_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--family",
        choices=(*FAMILIES, *FAMILY_ALIASES),
        default="harmonic",
        help="built-in eigenvalue family (default: harmonic)",
    )
    parent.add_argument(
        "--params", type=_floats, default=None, help="family parameters, e.g. 1,2"
    )
    parent.add_argument(
        "--spectrum", type=str, help="spectrum document (YAML/JSON) instead of a family"
    )
    parent.add_argument(
        "--symbol",
        type=str,
        default=None,
        help='observation symbol, e.g. "a=0.5" or "a=-0.5,b=1"',
    )
    return parent


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser with all CLI commands."""
    parser = CLIArgumentParser(
        prog="semilab",
        description="Semigroup Lab: decay, resolvent and admissibility constants "
        "for diagonal semigroups",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  semilab weiss --symbol a=0.5                 # 2-Weiss constant, harmonic family
  semilab --nmax 10000 decay --symbol a=1      # ‖T(t)A^-1‖ on a log grid
  semilab admissibility --symbol a=0.4         # l2 admissibility (divergent)
  semilab integral-bound --beta 0.5 --gamma 1  # log-integral bound check
  semilab certificate --family logdecay --nmax 30 --symbol a=0.75 \\
      --alpha 0.75 --beta 0.75
  semilab worked-example --alphas 0.4,0.5,0.6
        """,
    )

    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {_get_version()}"
    )
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help=f"path to configuration file (default: {DEFAULT_CONFIG} if present)",
    )
    parser.add_argument("--output", type=str, help="directory for report files")
    parser.add_argument("--debug", action="store_true", help="enable debug output")
    parser.add_argument("--nmax", type=int, help="truncation index n_max")
    parser.add_argument("--tol", type=float, help="relative quadrature tolerance")
    parser.add_argument(
        "--out", choices=("json", "csv"), default=None, help="report format"
    )
    parser.add_argument("--seed", type=int, help="seed for random test vectors")

    subparsers = parser.add_subparsers(
        dest="command", help="available commands", required=False
    )
    source = _source_parent()

    # Spectrum documents
    spectrum_parser = subparsers.add_parser("spectrum", help="inspect spectra")
    spectrum_sub = spectrum_parser.add_subparsers(dest="spectrum_command")
    validate_parser = spectrum_sub.add_parser(
        "validate", help="validate a spectrum document"
    )
    validate_parser.add_argument("file", help="spectrum document to validate")
    spectrum_sub.add_parser("show", parents=[source], help="print a spectrum document")

    # Norms
    decay_parser = subparsers.add_parser(
        "decay", parents=[source], help="‖T(t)D‖ on a time grid"
    )
    decay_parser.add_argument("--t-min", type=float, default=1.0)
    decay_parser.add_argument("--t-max", type=float, default=1e3)
    decay_parser.add_argument("--points", type=int, default=61)
    decay_parser.add_argument("--scale", choices=("log", "linear"), default="log")
    decay_parser.add_argument(
        "--fit", choices=("poly", "polylog"), help="also fit a decay law"
    )

    profile_parser = subparsers.add_parser(
        "resolvent-profile", parents=[source], help="g(ξ) = sup_η ‖D R(ξ+iη)‖"
    )
    profile_parser.add_argument("--xi-min", type=float, default=1e-4)
    profile_parser.add_argument("--xi-max", type=float, default=1.0)
    profile_parser.add_argument("--points", type=int, default=41)
    profile_parser.add_argument(
        "--envelope", action="store_true", help="add the transference decay envelope"
    )

    weiss_parser = subparsers.add_parser(
        "weiss", parents=[source], help="p-Weiss constant with grid oracle"
    )
    weiss_parser.add_argument(
        "-p", "--p", dest="p", type=float, default=2.0, help="exponent p >= 1"
    )

    # Admissibility
    adm_parser = subparsers.add_parser(
        "admissibility", parents=[source], help="infinite-time admissibility constant"
    )
    adm_parser.add_argument("--kind", choices=("l2", "lp"), default="l2")
    adm_parser.add_argument("--alpha", type=float, default=1.0, help="lp: exponent α")
    adm_parser.add_argument(
        "-p", "--p", dest="p", type=float, default=2.0, help="lp: exponent p"
    )
    adm_parser.add_argument("--q", type=float, default=None, help="lp: space exponent")
    adm_parser.add_argument("--t1", type=float, default=math.inf, help="lp: horizon")

    fadm_parser = subparsers.add_parser(
        "finite-admissibility", parents=[source], help="admissibility on [0, t1]"
    )
    fadm_parser.add_argument("-p", "--p", dest="p", type=float, default=2.0)
    fadm_parser.add_argument("--t1", type=float, required=True)

    plan_parser = subparsers.add_parser(
        "plancherel", parents=[source], help="time vs frequency energy check"
    )
    plan_parser.add_argument("--xi", type=_floats, default=[1e-3, 1e-2, 1e-1, 1, 10])
    plan_parser.add_argument("--vectors", type=int, default=10)
    plan_parser.add_argument("--support", type=int, default=16)

    # Rates
    ib_parser = subparsers.add_parser(
        "integral-bound",
        aliases=_aliases("integral-bound"),
        help="log-weighted Laplace integral bound"
    )
    ib_parser.add_argument("--beta", type=float, required=True)
    ib_parser.add_argument("--gamma", type=float, required=True)
    ib_parser.add_argument("--t0", type=float, help="default: twice the threshold")
    ib_parser.add_argument("--points", type=int, default=20)

    eq_parser = subparsers.add_parser(
        "log-equivalence",
        aliases=_aliases("log-equivalence"),
        parents=[source],
        help="logarithmic decay vs resolvent growth at both truncations",
    )
    eq_parser.add_argument("--beta", type=float, required=True)
    eq_parser.add_argument("--gamma", type=float, required=True)

    # Carleson
    car_parser = subparsers.add_parser(
        "carleson", parents=[source], help="Carleson box constant (lower bound)"
    )
    car_parser.add_argument(
        "--alpha", type=float, default=0.5, help="box-norm exponent"
    )
    car_parser.add_argument(
        "--column-exponent",
        type=float,
        default=1.0,
        help="diagonal columns |λ_n|^(-exponent) e_n",
    )
    car_parser.add_argument("--columns", type=str, help="dense columns document")
    car_parser.add_argument("--levels", type=int, help="box levels J")

    # Certificates
    cert_parser = subparsers.add_parser(
        "certificate", parents=[source], help="explicit 2-admissibility certificate"
    )
    cert_parser.add_argument("--alpha", type=float, required=True)
    cert_parser.add_argument("--beta", type=float, required=True)
    cert_parser.add_argument("--t0", type=float, default=math.e**2)

    fd_parser = subparsers.add_parser(
        "faster-decay",
        aliases=_aliases("faster-decay"),
        parents=[source],
        help="decay faster than t^(-1/2)"
    )
    fd_parser.add_argument("--alpha", type=float, required=True)
    fd_parser.add_argument("--beta", type=float, required=True)
    fd_parser.add_argument("--t-min", type=float, default=1.0)
    fd_parser.add_argument("--t-max", type=float, default=1e3)
    fd_parser.add_argument("--points", type=int, default=61)

    sw_parser = subparsers.add_parser(
        "strong-weiss",
        aliases=_aliases("strong-weiss"),
        parents=[source],
        help="strong 2-Weiss constants from decay"
    )
    sw_parser.add_argument("--alpha", type=float, required=True)
    sw_parser.add_argument("--beta", type=float, required=True)

    we_parser = subparsers.add_parser(
        "worked-example",
        aliases=_aliases("worked-example"),
        parents=[source],
        help="Weiss, admissibility and Carleson verdicts for (−A)^(−α)",
    )
    we_parser.add_argument("--alphas", type=_floats, default=[0.4, 0.5, 0.6])

    return parser


def _get_version() -> str:
    """Get the package version."""
    try:
        from semigroup_lab import __version__

        return __version__
    except ImportError:
        return "0.0.0-dev"


def _setup_logging(debug: bool = False) -> None:
    """Setup logging configuration; stdout stays reserved for reports."""
    level = logging.DEBUG if debug else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


def _load_config(args) -> Config:
    if args.config:
        config = Config.from_file(args.config)
    elif Path(DEFAULT_CONFIG).exists():
        config = Config.from_file(DEFAULT_CONFIG)
    else:
        config = Config.from_defaults()
    # CLI flags win over the file
    if args.nmax is not None:
        config.set("spectra.n_max", args.nmax)
    if args.tol is not None:
        config.set("quadrature.rtol", args.tol)
    if args.out is not None:
        config.set("output.format", args.out)
    if args.seed is not None:
        config.set("random.seed", args.seed)
    if args.output:
        config.set("output.directory", args.output)
    return config


def _policy(config: Config) -> TruncationPolicy:
    return TruncationPolicy.from_config(config)


def _quad(config: Config) -> QuadratureSpec:
    return QuadratureSpec(
        rtol=config.quad_rtol,
        atol=config.quad_atol,
        max_subdivisions=config.quad_max_subdivisions,
        horizon=config.quad_horizon,
    )


def _spectrum(config: Config, args):
    if getattr(args, "spectrum", None):
        return load_spectrum(args.spectrum)
    spec = builtin_family(args.family, args.params, config.n_max)
    return spec, None


def _symbol(args, default: OperatorSymbol | None = None) -> OperatorSymbol:
    text = getattr(args, "symbol", None)
    if text:
        return OperatorSymbol.parse(text)
    return default or OperatorSymbol()


def _base_inputs(config: Config, spec, sym=None) -> dict:
    inputs = {"spectrum": spec.tag, "n_max": spec.n_max}
    if sym is not None:
        inputs["symbol"] = sym.label
    inputs["divergence_ratio"] = config.divergence_ratio
    return inputs


def _emit(report: RunReport, config: Config) -> int:
    fmt = config.output_format
    print(report.render(fmt))
    if config.output_directory:
        path = report.write(config.output_directory, fmt)
        logger.info("report written to %s", path)
    return 0


def _fail(
    command: str | None, error: Exception, debug: bool = False, exit_code: int = 1
) -> int:
    print(f"❌ Error: {error}", file=sys.stderr)
    print(json.dumps({"status": "error", "command": command, "error": str(error)}))
    if debug:
        import traceback

        traceback.print_exc()
    return exit_code


def cmd_spectrum(config: Config, args) -> int:
    """Validate or show a spectrum document."""
    if args.spectrum_command == "validate":
        doc = read_document(Path(args.file))
        errors = validate_spectrum_document(doc)
        report = RunReport("spectrum validate", {"file": args.file})
        report.add_output("valid", not errors)
        report.add_output("errors", errors)
        _emit(report, config)
        return 0 if not errors else 1
    if args.spectrum_command == "show":
        spec, space = _spectrum(config, args)
        report = RunReport("spectrum show", _base_inputs(config, spec))
        report.add_output("document", dump_spectrum(spec, space))
        return _emit(report, config)
    raise UsageError("spectrum: choose a subcommand (validate or show)")


def cmd_decay(config: Config, args) -> int:
    """‖T(t)D‖ on a grid, optionally with a fitted decay law."""
    spec, _ = _spectrum(config, args)
    sym = _symbol(args)
    if args.scale == "log":
        grid = np.geomspace(args.t_min, args.t_max, args.points)
    else:
        grid = np.linspace(args.t_min, args.t_max, args.points)
    inputs = _base_inputs(config, spec, sym)
    inputs.update(t_min=args.t_min, t_max=args.t_max, points=args.points)
    report = RunReport("decay", inputs)
    curve = decay_curve(spec, sym, grid, _policy(config))
    report.add_output("curve", curve.to_rows())
    report.add_output(
        "norm_at_t_max", semigroup_norm(spec, sym, grid[-1], _policy(config))
    )
    if args.fit:
        model = fit_rate(
            curve.t,
            curve.values,
            args.fit,
            window_decades=config.fit_window_decades,
            min_points=config.fit_min_points,
        )
        report.add_output("fit", model, ORACLE)
    return _emit(report, config)


def cmd_resolvent_profile(config: Config, args) -> int:
    """g(ξ) on a log grid, optionally with the transference envelope."""
    spec, _ = _spectrum(config, args)
    sym = _symbol(args)
    xi = np.geomspace(args.xi_min, args.xi_max, args.points)
    inputs = _base_inputs(config, spec, sym)
    inputs.update(xi_min=args.xi_min, xi_max=args.xi_max, points=args.points)
    report = RunReport("resolvent-profile", inputs)
    profile = resolvent_profile(spec, sym, xi, _policy(config))
    report.add_output("profile", profile.to_rows())
    if args.envelope:
        t = 1.0 / xi[::-1]
        envelope = transference_envelope(profile, t)
        report.add_output(
            "envelope",
            [{"t": float(a), "bound": float(b)} for a, b in zip(t, envelope, strict=True)],
        )
    return _emit(report, config)


def cmd_weiss(config: Config, args) -> int:
    spec, _ = _spectrum(config, args)
    sym = _symbol(args)
    inputs = _base_inputs(config, spec, sym)
    inputs["p"] = args.p
    report = RunReport("weiss", inputs)
    result = weiss_constant(
        spec,
        sym,
        args.p,
        grid_settings=config.grid_settings,
        tolerance=config.grid_tolerance,
        policy=_policy(config),
    )
    report.add_output("K_exact", result.exact)
    report.add_output("K_grid", result.grid_value, ORACLE)
    report.add_output("grid_bound_ok", result.grid_bound_ok, ORACLE)
    if result.boundary_supremum:
        report.warn("p = 1: supremum is approached as Re λ → 0")
    if not result.grid_bound_ok:
        report.warn("grid oracle exceeds the closed form")
    return _emit(report, config)


def cmd_admissibility(config: Config, args) -> int:
    spec, space = _spectrum(config, args)
    policy = _policy(config)
    quad = _quad(config)
    if args.kind == "l2":
        sym = _symbol(args)
        inputs = _base_inputs(config, spec, sym)
        inputs["kind"] = "l2"
        report = RunReport("admissibility", inputs)
        result = l2_admissibility_constant(spec, sym, policy, quad)
    else:
        if args.q is not None:
            weights = space.weights if space is not None else np.ones(spec.n_max)
            space = WeightedIndexSpace(weights, args.q)
        inputs = _base_inputs(config, spec)
        inputs.update(kind="lp", alpha=args.alpha, p=args.p, t1=args.t1)
        inputs["q"] = space.q if space is not None else 2.0
        report = RunReport("admissibility", inputs)
        result = lp_admissibility(spec, space, args.alpha, args.p, args.t1, policy, quad)
    report.add_output("M_exact", result.exact)
    report.add_output("bound_kind", result.bound_kind)
    if result.oracle is not None:
        report.add_output("M_oracle", result.oracle, ORACLE)
        if not result.oracle_ok:
            report.warn("oracle exceeds the closed form")
    if math.isinf(result.t1):
        report.add_output("decay_constant", decay_bound_from_admissibility(result))
    return _emit(report, config)


def cmd_finite_admissibility(config: Config, args) -> int:
    spec, _ = _spectrum(config, args)
    sym = _symbol(args)
    inputs = _base_inputs(config, spec, sym)
    inputs.update(p=args.p, t1=args.t1)
    report = RunReport("finite-admissibility", inputs)
    report.add_output(
        "M_t1", finite_time_constant(spec, sym, args.p, args.t1, _policy(config))
    )
    report.add_output(
        "M_infinity",
        finite_time_constant(spec, sym, args.p, math.inf, _policy(config)),
    )
    return _emit(report, config)


def cmd_plancherel(config: Config, args) -> int:
    spec, _ = _spectrum(config, args)
    rng = np.random.default_rng(config.seed)
    support = min(args.support, spec.n_max)
    quad = _quad(config)
    inputs = _base_inputs(config, spec)
    inputs.update(xi=args.xi, vectors=args.vectors, support=support, seed=config.seed)
    report = RunReport("plancherel", inputs)
    rows = []
    for k in range(args.vectors):
        x = np.zeros(spec.n_max, dtype=complex)
        x[:support] = rng.normal(size=support) + 1j * rng.normal(size=support)
        x /= np.linalg.norm(x)
        for xi in args.xi:
            result = plancherel_check(spec, x, xi, quad)
            rows.append({"vector": k, **result.to_dict()})
    report.add_output("checks", rows, ORACLE)
    report.add_output("max_gap", max(row["gap"] for row in rows), ORACLE)
    return _emit(report, config)


def cmd_integral_bound(config: Config, args) -> int:
    beta, gamma = args.beta, args.gamma
    if args.t0 is not None:
        t0 = args.t0
    elif beta == 1:
        t0 = 2 * math.e
    else:
        t0 = 2 * math.exp(gamma / (1 - beta))
    xi = np.geomspace(1e-6 / t0, 0.99 / t0, args.points)
    report = RunReport(
        "integral-bound", {"beta": beta, "gamma": gamma, "t0": t0, "points": args.points}
    )
    constant = integral_bound_constant(beta, gamma, t0)
    report.add_output("constant", constant)
    for note in constant.notes:
        report.warn(note)
    check = verify_integral_bound(beta, gamma, t0, xi, _quad(config))
    report.add_output("rows", check.rows, ORACLE)
    report.add_output("worst_ratio", check.worst_ratio, ORACLE)
    report.add_output("worst_xi", check.worst_xi, ORACLE)
    if check.worst_ratio > 1:
        report.warn("quadrature exceeds the explicit bound")
    return _emit(report, config)


def cmd_log_equivalence(config: Config, args) -> int:
    spec, _ = _spectrum(config, args)
    sym = _symbol(args)
    inputs = _base_inputs(config, spec, sym)
    inputs.update(beta=args.beta, gamma=args.gamma)
    report = RunReport("log-equivalence", inputs)
    result = check_log_decay_equivalence(
        spec,
        sym,
        args.beta,
        args.gamma,
        points_per_decade=config.equivalence_points_per_decade,
        growth_threshold=config.equivalence_growth_threshold,
        divisor=config.tail_divisor,
    )
    report.add_output("resolvent_side", result.resolvent_side.to_dict(), ORACLE)
    report.add_output("decay_side", result.decay_side.to_dict(), ORACLE)
    report.add_output("verdict", result.verdict, ORACLE)
    if not result.consistent:
        report.warn("decay and resolvent sides disagree")
    return _emit(report, config)


def cmd_carleson(config: Config, args) -> int:
    spec, _ = _spectrum(config, args)
    if args.columns:
        cols = load_columns(Path(args.columns), spec)
    else:
        cols = ColumnFamily.diagonal(spec, args.column_exponent)
    levels = args.levels if args.levels is not None else config.carleson_levels
    inputs = _base_inputs(config, spec)
    inputs.update(
        alpha=args.alpha,
        columns=args.columns or f"diagonal^{args.column_exponent:g}",
        levels=levels,
    )
    report = RunReport("carleson", inputs)
    result = carleson_constant(
        spec,
        cols,
        args.alpha,
        levels=levels,
        dense_limit=config.carleson_dense_limit,
        rng=np.random.default_rng(config.seed),
        policy=_policy(config),
    )
    report.add_output("carleson", result, ORACLE)
    if result.divergent:
        report.warn(f"M_hat grows by {result.growth:.4g} over the truncation")
    return _emit(report, config)


def cmd_certificate(config: Config, args) -> int:
    spec, _ = _spectrum(config, args)
    sym_c = _symbol(args, OperatorSymbol(a=args.alpha))
    inputs = _base_inputs(config, spec, sym_c)
    inputs.update(alpha=args.alpha, beta=args.beta, t0=args.t0)
    report = RunReport("certificate", inputs)
    policy = _policy(config)
    measured = measure_certificate_inputs(
        spec, sym_c, args.alpha, args.beta, args.t0, policy
    )
    cert = admissibility_certificate(measured)
    report.add_output("certificate", cert)
    l2 = l2_admissibility_constant(spec, sym_c, policy, _quad(config), run_oracle=False)
    report.add_output("l2_constant", l2.exact)
    if cert.m_adm < l2.value:
        report.warn("certificate below the exact admissibility constant")
    return _emit(report, config)


def cmd_faster_decay(config: Config, args) -> int:
    spec, _ = _spectrum(config, args)
    sym_c = _symbol(args, OperatorSymbol(a=1.0))
    policy = _policy(config)
    inputs = _base_inputs(config, spec, sym_c)
    inputs.update(alpha=args.alpha, beta=args.beta)
    report = RunReport("faster-decay", inputs)
    result = measure_faster_decay(spec, sym_c, args.alpha, args.beta, policy)
    report.add_output("faster_decay", result)
    t = np.geomspace(args.t_min, args.t_max, args.points)
    norms = decay_curve(spec, sym_c, t, policy).values
    ratio = float(np.max(norms / result.envelope(t)))
    report.add_output("max_norm_over_envelope", ratio, ORACLE)
    if ratio > 1:
        report.warn("decay curve exceeds the envelope")
    return _emit(report, config)


def cmd_strong_weiss(config: Config, args) -> int:
    spec, _ = _spectrum(config, args)
    sym_c = _symbol(args, OperatorSymbol(a=1.0))
    policy = _policy(config)
    inputs = _base_inputs(config, spec, sym_c)
    inputs.update(alpha=args.alpha, beta=args.beta)
    report = RunReport("strong-weiss", inputs)
    gamma = args.alpha * args.beta / (1 + args.beta)
    c_moment = calibrate_moment_constant(
        spec, args.alpha, gamma, np.random.default_rng(config.seed)
    )
    report.add_output("moment_constant", c_moment, ORACLE)
    result, m1, m2 = measure_strong_weiss(
        spec, sym_c, args.alpha, args.beta, c_moment, policy
    )
    report.add_output("M1", m1)
    report.add_output("M2", m2)
    report.add_output("strong_weiss", result)
    exact = weiss_constant(
        spec, sym_c.times_power(result.gamma), 2.0, config.grid_settings, policy=policy
    )
    report.add_output("K_exact_of_C_A_gamma", exact.exact)
    if exact.value > result.k * (1 + 1e-12):
        report.warn("measured Weiss constant exceeds the derived bound")
    return _emit(report, config)


def cmd_worked_example(config: Config, args) -> int:
    """Weiss, admissibility and Carleson verdicts for (−A)^{−α}."""
    spec, _ = _spectrum(config, args)
    policy = _policy(config)
    quad = _quad(config)
    inputs = _base_inputs(config, spec)
    inputs["alphas"] = args.alphas
    report = RunReport("worked-example", inputs)
    rows = []
    for alpha in args.alphas:
        sym = OperatorSymbol(a=alpha)
        weiss = weiss_constant(spec, sym, 2.0, config.grid_settings, policy=policy)
        l2 = l2_admissibility_constant(spec, sym, policy, quad)
        carleson = carleson_constant(
            spec,
            ColumnFamily.diagonal(spec, alpha + 0.5),
            0.5,
            levels=config.carleson_levels,
            policy=policy,
        )
        row = {
            "alpha": alpha,
            "weiss": weiss.value,
            "weiss_growth": weiss.exact.growth,
            "weiss_divergent": weiss.divergent,
            "l2": l2.value,
            "l2_growth": l2.exact.growth,
            "l2_divergent": l2.divergent,
            "carleson": carleson.value,
            "carleson_growth": carleson.growth,
            "carleson_divergent": carleson.divergent,
        }
        if alpha > 0.5:
            decay = polynomial_decay_constant(spec, sym, alpha, policy)
            row["admissibility_from_decay"] = admissibility_from_decay(
                float(np.max(sym.moduli(spec))), decay.value, alpha
            )
        rows.append(row)
        if weiss.divergent != carleson.divergent:
            report.warn(f"alpha={alpha}: Weiss and Carleson verdicts differ")
    report.add_output("verdicts", rows)
    decay = polynomial_decay_constant(spec, OperatorSymbol(a=1.0), 1.0, policy)
    report.add_output("sup_t_norm_T_A_inv", decay)
    return _emit(report, config)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "decay": cmd_decay,
    "resolvent-profile": cmd_resolvent_profile,
    "weiss": cmd_weiss,
    "admissibility": cmd_admissibility,
    "finite-admissibility": cmd_finite_admissibility,
    "plancherel": cmd_plancherel,
    "integral-bound": cmd_integral_bound,
    "log-equivalence": cmd_log_equivalence,
    "carleson": cmd_carleson,
    "certificate": cmd_certificate,
    "faster-decay": cmd_faster_decay,
    "strong-weiss": cmd_strong_weiss,
    "worked-example": cmd_worked_example,
}


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        return _fail(None, e, exit_code=2)

    # Setup logging
    _setup_logging(args.debug)

    # Show help if no command provided
    if args.command is None:
        parser.print_help()
        return 0

    command = COMMAND_ALIASES.get(args.command, args.command)
    try:
        config = _load_config(args)
        return COMMANDS[command](config, args)
    except UsageError as e:
        return _fail(command, e, args.debug, exit_code=2)
    except (SemigroupLabError, FileNotFoundError) as e:
        return _fail(command, e, args.debug)
    except Exception as e:
        logger.exception("unexpected failure in %s", command)
        return _fail(command, e, args.debug)


if __name__ == "__main__":
    sys.exit(main())

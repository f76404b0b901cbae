"""Command-line driver: ``simulate``, ``sweep``, ``resonances`` and ``validate``.

Exit codes: 0 success, 1 acceptance failure, 2 configuration or input
error, 3 numerical failure.  Errors are reported on stderr as a single
JSON object.  All results are computed before any file is written, and
each file is replaced atomically.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import __version__
from . import photon_number as pn
from .config import KEYS, RunConfig, config_as_dict, convert_value, parse_config
from .errors import ConfigError, DCEError, NumericalError, ValidationError
from .io import atomic_write, rows_csv, series_csv, series_json
from .modulation import resonance_csv, resonance_table
from .svgplot import line_plot

EXIT_OK, EXIT_ACCEPTANCE, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3
SATURATION_FRACTION = 0.99
SWEEP_AXES = ("epsilon", "Q", "Omega")
SWEEP_COLUMNS = ("value", "epsilon", "Q", "Omega", "nu0", "gamma", "ratio", "alpha",
                 "N_inf_weak", "N_inf_general", "t_sat", "t_sat_over_tau", "status")

log = logging.getLogger("dce_quasimode")


# argument parsing ---------------------------------------------------------

def _add_key_flags(parser):
    group = parser.add_argument_group("configuration overrides (one flag per config key)")
    for name, f in KEYS.items():
        kind = f.metadata["kind"]
        kwargs = dict(dest=f"key_{name}", metavar=kind.upper(), default=None,
                      help=f"{f.metadata['doc']} [{f.metadata['section']}]")
        if kind == "bool":
            kwargs.update(nargs="?", const="true")
        flags = [f"--{name.replace('_', '-')}"]
        if "_" in name:
            flags.append(f"--{name}")
        if name == "directory":
            flags.append("--out")
        group.add_argument(*flags, **kwargs)
    group.add_argument("--no-timestamp", dest="key_timestamp", action="store_const", const="false",
                       help="omit the timestamp comment from the SVG")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dce-quasimode",
        description="Pair creation in a cavity with a time-modulated refractive index.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", type=Path, help="configuration file (defaults apply if omitted)")
        p.add_argument("--quiet", action="store_true", help="suppress the stdout summary")
        _add_key_flags(p)
        return p

    with_config("simulate", "photon number versus time for the selected methods")
    p = with_config("sweep", "asymptotic pair numbers and saturation times over one parameter")
    p.add_argument("--axis", required=True, choices=SWEEP_AXES)
    p.add_argument("--values", required=True, help="comma-separated parameter values")
    p = with_config("resonances", "tabulate parametric resonance branches")
    p.add_argument("--lmin", type=int, default=-5)
    p.add_argument("--lmax", type=int, default=5)

    p = sub.add_parser("validate", help="run the acceptance suite")
    p.add_argument("--json", action="store_true", help="also write validate.json")
    p.add_argument("--out", type=Path, default=Path("."), help="directory for validate.json")
    p.add_argument("--only", help="comma-separated criterion keys (default: all)")
    p.add_argument("--corrupt", action="append", default=[], help=argparse.SUPPRESS)
    return parser


def load_config(args) -> RunConfig:
    """Config file values, then command-line overrides, validated together."""
    cfg = RunConfig()
    if args.config is not None:
        try:
            text = args.config.read_text()
        except OSError as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc.strerror}") from None
        cfg = parse_config(text)
    overrides = {}
    for name in KEYS:
        raw = getattr(args, f"key_{name}", None)
        if raw is not None:
            overrides[name] = convert_value(name, raw)
    if "Q" in overrides and "gamma" not in overrides:
        overrides["gamma"] = None
    elif "gamma" in overrides and "Q" not in overrides:
        overrides["Q"] = None
    return cfg.replace(**overrides) if overrides else cfg


# commands -----------------------------------------------------------------

def _asymptote(nu0, gamma):
    try:
        return pn.asymptotic_pair_number(nu0, gamma, "general")
    except NumericalError:
        return None


def cmd_simulate(cfg: RunConfig, quiet=False):
    qm, prof = cfg.quasimode(), cfg.profile()
    series = pn.compute_series(cfg.cavity(), qm, prof, cfg.grid(), cfg.methods,
                               shape=cfg.shape(), ode_tolerance=cfg.ode_tolerance,
                               n_max=cfg.n_max)
    nu0, gamma = prof.coupling_rate, qm.linewidth
    t_sat = pn.saturation_time(nu0, gamma, SATURATION_FRACTION)
    series.metadata["saturation"] = {
        "fraction": SATURATION_FRACTION,
        "t_sat": t_sat,
        "t_sat_over_tau": t_sat * gamma,
        "convention": "first t with N(t) >= 0.99 N_inf on the closed_general curve; "
                      "a tooling convention",
    }

    out = Path(cfg.directory)
    files = {}
    if cfg.csv:
        files["series.csv"] = series_csv(series)
    if cfg.json:
        files["series.json"] = series_json(series, config_as_dict(cfg))
    if cfg.svg:
        asym = _asymptote(nu0, gamma)
        files["series.svg"] = line_plot(
            series.times_over_tau, series.values, xlabel="t / tau", ylabel="N(t)",
            title=f"nu0/gamma = {nu0 / gamma:.4g}, Q = {qm.quality_factor:.4g}",
            hline=asym or None, hline_label="sinh^2(nu0/gamma)",
            log_x=cfg.spacing == "log", timestamp=cfg.timestamp)
    for name, text in files.items():
        atomic_write(out / name, text)

    if not quiet:
        p = series.metadata["parameters"]
        print(f"nu0/gamma = {p['nu0_over_gamma']:.6g}  gamma = {gamma:.6g}  "
              f"N_inf = {series.metadata['asymptotes']['general']:.6g}  "
              f"t_sat = {t_sat * gamma:.4g} tau")
        check = series.metadata.get("cross_check")
        if check:
            print(f"quadrature vs closed_weak max rel diff = "
                  f"{check['quadrature_vs_closed_weak_max_rel_diff']:.3e}")
        for name in files:
            print(f"wrote {out / name}")
    return EXIT_OK


def parse_values(text):
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise ValidationError("values", "at least one sweep value is required")
    try:
        return [float(s) for s in items]
    except ValueError as exc:
        raise ValidationError("values", f"not a number: {exc}") from None


def sweep_row(cfg: RunConfig, axis, value):
    """One sweep row; a failure is reported in the status column."""
    row = dict.fromkeys(SWEEP_COLUMNS, "")
    row["value"] = value
    try:
        if axis == "epsilon":
            cfg = cfg.replace(epsilon=value)
        elif axis == "Q":
            cfg = cfg.replace(Q=value, gamma=None)
        else:
            cfg = cfg.replace(drive=value)
        qm, prof = cfg.quasimode(), cfg.profile()
        nu0, gamma = prof.coupling_rate, qm.linewidth
        row.update(epsilon=prof.amplitude, Q=qm.quality_factor, Omega=prof.drive_frequency,
                   nu0=nu0, gamma=gamma, ratio=nu0 / gamma, alpha=prof.bessel_argument)
        row["N_inf_weak"] = pn.asymptotic_pair_number(nu0, gamma, "weak")
        row["N_inf_general"] = pn.asymptotic_pair_number(nu0, gamma, "general")
        t_sat = pn.saturation_time(nu0, gamma, SATURATION_FRACTION)
        row.update(t_sat=t_sat, t_sat_over_tau=t_sat * gamma, status="ok")
    except DCEError as exc:
        row["status"] = f"error: {type(exc).__name__}: {exc}"
    return row


def cmd_sweep(cfg: RunConfig, axis, values, quiet=False):
    if axis not in SWEEP_AXES:
        raise ValidationError("axis", f"expected one of {SWEEP_AXES}")
    rows = [sweep_row(cfg, axis, float(v)) for v in values]
    path = Path(cfg.directory) / "sweep.csv"
    atomic_write(path, rows_csv(SWEEP_COLUMNS, ([r[c] for c in SWEEP_COLUMNS] for r in rows)))
    if not quiet:
        for r in rows:
            n = r["N_inf_general"]
            shown = f"{n:.6g}" if isinstance(n, float) else "-"
            print(f"{axis} = {r['value']:<12.6g} N_inf = {shown:<14} {r['status']}")
        print(f"wrote {path}")
    return EXIT_OK


def cmd_resonances(cfg: RunConfig, lmin, lmax, quiet=False):
    if lmin > lmax:
        raise ValidationError("lmin", f"empty range: lmin={lmin} > lmax={lmax}")
    table = resonance_table(cfg.cavity(), cfg.profile(), range(lmin, lmax + 1))
    path = Path(cfg.directory) / "resonances.csv"
    atomic_write(path, resonance_csv(table))
    if not quiet:
        print(f"{'l':>4} {'sign':>5} {'Omega/omega0':>14} {'alpha':>12} {'weight':>12}")
        for b in table:
            mark = "  dominant" if b.harmonic_order == 0 else ""
            print(f"{b.harmonic_order:>4} {b.sign:>5} {b.resonant_frequency:>14.6g} "
                  f"{b.bessel_argument:>12.6g} {b.bessel_weight:>12.6g}{mark}")
        print(f"{len(table)} physical branches; wrote {path}")
    return EXIT_OK


def cmd_validate(as_json=False, out=Path("."), only=None, corrupt=()):
    from .validate import CRITERIA, report, results_as_dict, run_acceptance

    keys = None
    if only:
        keys = [k.strip() for k in only.split(",") if k.strip()]
    for k in list(keys or []) + list(corrupt):
        if k not in CRITERIA:
            raise ValidationError("criterion", f"unknown criterion {k!r}; expected one of {list(CRITERIA)}")
    results = run_acceptance(scale={k: 0.0 for k in corrupt}, only=keys)
    text = report(results)
    if as_json:
        atomic_write(Path(out) / "validate.json",
                     json.dumps(results_as_dict(results), indent=2) + "\n")
    sys.stdout.write(text)
    failed = [r.key for r in results if not r.passed]
    if failed:
        sys.stderr.write(f"failing criteria: {', '.join(failed)}\n")
        return EXIT_ACCEPTANCE
    return EXIT_OK


# entry point --------------------------------------------------------------

def _error_record(exc, code):
    record = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    for attr in ("field", "line", "method", "t"):
        value = getattr(exc, attr, None)
        if value is not None:
            record[attr] = value
    for attr in ("estimate", "error"):
        value = getattr(exc, attr, None)
        if isinstance(value, (int, float)) and math.isfinite(value):
            record[attr] = value
    return json.dumps(record)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if args.command == "validate":
            return cmd_validate(args.json, args.out, args.only, args.corrupt)
        cfg = load_config(args)
        if args.command == "simulate":
            return cmd_simulate(cfg, args.quiet)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.axis, parse_values(args.values), args.quiet)
        return cmd_resonances(cfg, args.lmin, args.lmax, args.quiet)
    except (ValidationError, OSError) as exc:
        return _fail(exc, EXIT_CONFIG)
    except NumericalError as exc:
        return _fail(exc, EXIT_NUMERICAL)


def _fail(exc, code):
    sys.stderr.write(_error_record(exc, code) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

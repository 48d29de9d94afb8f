"""Command-line front end.

Every command writes a table: ``#``-prefixed metadata lines, a header row
with units in brackets, then data rows (CSV), or a JSON document holding the
same metadata and one object per row. ``--plot PATH`` additionally renders
the table to an image for the commands that have a natural figure.

Exit status: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings

import numpy as np

from . import __version__
from .electrostatics import (
    CalibrationScenario,
    effective_screening_length,
    field_energy_per_area,
    figure1_data,
    figure2_data,
    pfa_sphere_plate_force,
    separation_correction_factor,
    surface_potential,
)
from .errors import ConvergenceError, DomainError
from .lifshitz import QuadratureSpec, ScreeningSpec
from .materials import (
    CODATA2018,
    E_CHARGE,
    EPS0,
    GE_MOBILITY,
    K_B,
    CarrierKinetics,
    DrudeConductivity,
    IntrinsicSemiconductor,
    PerfectConductor,
    StaticDielectric,
)
from .thermal import GapConfig, entropy, free_energy, free_energy_T0, pressure, sum_vs_integral_gap

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 2, 3


def parse_range(spec):
    """Parse ``start:stop:count[log]`` (inclusive endpoints) into floats.

    A plain number gives a one-element list; a comma list is taken verbatim.
    """
    text = spec.strip()
    if ":" not in text:
        try:
            return [float(tok) for tok in text.split(",")]
        except ValueError as exc:
            raise DomainError(text, "not a number, comma list or start:stop:count[log]") from exc
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(text, "expected start:stop:count[log]")
    start_tok, stop_tok, count_tok = parts
    log = count_tok.endswith("log")
    if log:
        count_tok = count_tok[:-3]
    try:
        start = float(start_tok)
    except ValueError:
        raise DomainError(start_tok, "start is not a number") from None
    try:
        stop = float(stop_tok)
    except ValueError:
        raise DomainError(stop_tok, "stop is not a number") from None
    try:
        count = int(count_tok)
    except ValueError:
        raise DomainError(count_tok, "count is not an integer") from None
    if count < 2:
        raise DomainError(count_tok, "count must be >= 2")
    if log:
        if not (start > 0 and stop > 0):
            raise DomainError(text, "log spacing needs positive endpoints")
        values = np.geomspace(start, stop, count)
    else:
        values = np.linspace(start, stop, count)
    values[0], values[-1] = start, stop
    return [float(v) for v in values]


# -- building library objects from arguments --------------------------------


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise DomainError(missing[0], f"{args.command} needs {flags}")


def build_model(args):
    if args.model == "perfect":
        return PerfectConductor()
    if args.model == "drude":
        _require(args, "sigma")
        return DrudeConductivity(args.sigma)
    if args.model == "static":
        _require(args, "eps")
        return StaticDielectric(args.eps)
    _require(args, "eps", "carrier_density")
    return IntrinsicSemiconductor(args.eps, args.carrier_density, args.mobility)


def build_screening(args):
    tm = not args.no_screen_tm
    if args.screening == "off":
        return ScreeningSpec.off()
    if args.screening == "fixed":
        _require(args, "lam")
        return ScreeningSpec.debye_fixed(args.lam, apply_to_tm=tm)
    eps = args.screen_eps if args.screen_eps is not None else args.eps
    density = args.screen_carrier_density if args.screen_carrier_density is not None else args.carrier_density
    if eps is None or density is None:
        raise DomainError("screening", "computed screening needs --eps/--screen-eps and --carrier-density")
    return ScreeningSpec.debye_computed(eps, density, apply_to_tm=tm)


def build_quad(args):
    return QuadratureSpec(rel_tol=args.quad_tol)


def _scenario_temperature(args):
    if args.kT_meV is not None:
        return args.kT_meV * 1e-3 * E_CHARGE / K_B
    _require(args, "T")
    return parse_range(args.T)[0]


# -- command implementations -----------------------------------------------
# Each returns (columns, rows, plot) where plot is None or a dict for
# plotting.plot_columns.


def _warn_text(items):
    return ";".join(items)


def cmd_energy(args):
    model, screening, quad = build_model(args), build_screening(args), build_quad(args)
    kinetics = CarrierKinetics(args.vc) if args.vc else None
    d, T = parse_range(args.d)[0], parse_range(args.T)[0]
    cols = ["d [m]", "T [K]", "free_energy [J/m^2]", "n_zero_te [J/m^2]", "n_zero_tm [J/m^2]",
            "n_used", "truncation_estimate [J/m^2]", "warnings"]
    if T == 0:
        total = free_energy_T0(d, model, screening, quad)
        return cols, [[d, T, total, math.nan, math.nan, 0, 0.0, ""]], None
    gap = GapConfig(d, T, args.rel_tol, args.n_max, quad)
    b = free_energy(gap, model, screening, kinetics)
    row = [d, T, b.total, b.n_zero_te, b.n_zero_tm, b.n_used, b.truncation_estimate,
           _warn_text(b.validity_warnings)]
    return cols, [row], None


def cmd_pressure(args):
    model, screening, quad = build_model(args), build_screening(args), build_quad(args)
    d, T = parse_range(args.d)[0], parse_range(args.T)[0]
    gap = GapConfig(d, T, args.rel_tol, args.n_max, quad)
    return ["d [m]", "T [K]", "pressure [Pa]"], [[d, T, pressure(gap, model, screening)]], None


def cmd_sweep(args):
    model, screening, quad = build_model(args), build_screening(args), build_quad(args)
    kinetics = CarrierKinetics(args.vc) if args.vc else None
    ds, Ts = sorted(parse_range(args.d)), sorted(parse_range(args.T))
    ref = PerfectConductor() if args.ratio_vs == "perfect" else None
    cols = ["d [m]", "T [K]", "free_energy [J/m^2]", "pressure [Pa]", "n_zero_te [J/m^2]",
            "n_zero_tm [J/m^2]", "n_used"]
    if ref is not None:
        cols.append("pressure_ratio")
    cols.append("warnings")
    rows = []
    for d in ds:
        for T in Ts:
            gap = GapConfig(d, T, args.rel_tol, args.n_max, quad)
            if T == 0:
                row = [d, T, free_energy_T0(d, model, screening, quad), pressure(gap, model, screening),
                       math.nan, math.nan, 0]
                warn = []
            else:
                b = free_energy(gap, model, screening, kinetics)
                row = [d, T, b.total, pressure(gap, model, screening), b.n_zero_te, b.n_zero_tm, b.n_used]
                warn = b.validity_warnings
            if ref is not None:
                row.append(row[3] / pressure(gap, ref, ScreeningSpec.off()))
            row.append(_warn_text(warn))
            rows.append(row)
    plot = None
    if len(ds) > 1 and len(Ts) == 1:
        ycol = 7 if ref is not None else 3
        plot = dict(x=[r[0] for r in rows], series={cols[ycol]: [r[ycol] for r in rows]},
                    xlabel="separation d [m]", ylabel=cols[ycol], logx=True, hline=0.5 if ref else None)
    elif len(Ts) > 1 and len(ds) == 1:
        plot = dict(x=[r[1] for r in rows], series={"pressure [Pa]": [r[3] for r in rows]},
                    xlabel="temperature T [K]", ylabel="pressure [Pa]")
    return cols, rows, plot


def cmd_entropy(args):
    model, screening, quad = build_model(args), build_screening(args), build_quad(args)
    Ts = sorted(parse_range(args.T))
    rows = []
    for T in Ts:
        dT = args.dT if args.dT is not None else args.dT_rel * T
        gap = GapConfig(parse_range(args.d)[0], T, args.rel_tol, args.n_max, quad)
        rows.append([T, dT, entropy(gap, model, screening, dT), entropy(gap, model, screening, dT, terms="zero")])
    cols = ["T [K]", "dT [K]", "entropy [J/(K m^2)]", "entropy_n0 [J/(K m^2)]"]
    plot = dict(x=Ts, series={"full sum": [r[2] for r in rows], "n = 0 only": [r[3] for r in rows]},
                xlabel="temperature T [K]", ylabel="entropy [J/(K m^2)]")
    return cols, rows, plot


def cmd_gapcheck(args):
    model, screening, quad = build_model(args), build_screening(args), build_quad(args)
    d = parse_range(args.d)[0]
    Ts = sorted(parse_range(args.T))
    check = sum_vs_integral_gap(d, model, screening, Ts, GapConfig(d, 1.0, args.rel_tol, args.n_max, quad))
    cols = ["T [K]", "relative_deviation", "energy_T0 [J/m^2]"]
    if check.degenerate:
        return cols, [], None, ["degenerate: T = 0 energy is zero"]
    rows = [[T, dev, check.energy_t0] for T, dev in check.rows]
    plot = dict(x=Ts, series={"deviation": [r[1] for r in rows]}, xlabel="temperature T [K]",
                ylabel="|E(T) - E(0)| / |E(0)|", logx=True, logy=True)
    return cols, rows, plot


def _scenarios(args):
    _require(args, "V", "d", "eps", "lam")
    T = _scenario_temperature(args)
    d = parse_range(args.d)[0]
    return [CalibrationScenario(V, d, args.eps, args.lam, T) for V in sorted(parse_range(args.V))]


def cmd_calib_energy(args):
    cols = ["V [V]", "y", "surface_potential [V]", "field_energy [J/m^2]", "ideal_energy [J/m^2]",
            "correction_factor", "lambda_prime [m]", "phi"]
    rows = []
    for s in _scenarios(args):
        eff = effective_screening_length(s)
        energy = field_energy_per_area(s)
        rows.append([s.applied_voltage, s.y, surface_potential(s), energy, 0.5 * EPS0 * s.applied_voltage**2 / s.d,
                     separation_correction_factor(s.y), eff.lambda_prime, eff.phi])
    return cols, rows, None


def cmd_calib_force(args):
    _require(args, "R")
    cols = ["V [V]", "y", "force [N]", "ideal_force [N]", "correction_factor", "warnings"]
    rows = []
    for s in _scenarios(args):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            force = pfa_sphere_plate_force(s, args.R)
        ideal = math.pi * args.R * EPS0 * s.applied_voltage**2 / s.d
        rows.append([s.applied_voltage, s.y, force, ideal, separation_correction_factor(s.y),
                     _warn_text(str(w.message) for w in caught)])
    return cols, rows, None


def cmd_fig1(args):
    ys = parse_range(args.y)
    lo, hi = min(ys), max(ys)
    log = args.y.strip().endswith("log")
    rows = [list(r) for r in figure1_data((lo, hi), len(ys), log=log)] if len(ys) > 1 else [
        [ys[0], separation_correction_factor(ys[0])]]
    plot = dict(x=[r[0] for r in rows], series={"factor": [r[1] for r in rows]},
                xlabel=r"$\epsilon d / \lambda$", ylabel="separation correction factor", logx=log, hline=1.0)
    return ["y", "correction_factor"], rows, plot


def cmd_fig2(args):
    phis = parse_range(args.phi)
    lo, hi = min(phis), max(phis)
    rows = [list(r) for r in figure2_data((lo, hi), len(phis))]
    plot = dict(x=[r[0] for r in rows], series={"ratio": [r[1] for r in rows]},
                xlabel=r"$\Phi$", ylabel=r"$\lambda' / \lambda$")
    return ["phi", "lambda_ratio"], rows, plot


COMMANDS = {
    "energy": cmd_energy,
    "pressure": cmd_pressure,
    "sweep": cmd_sweep,
    "entropy": cmd_entropy,
    "gapcheck": cmd_gapcheck,
    "calib-energy": cmd_calib_energy,
    "calib-force": cmd_calib_force,
    "fig1": cmd_fig1,
    "fig2": cmd_fig2,
}

LIFSHITZ_COMMANDS = {"energy", "pressure", "sweep", "entropy", "gapcheck"}


# -- argument parsing ------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", default="-", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--rel-tol", type=float, default=1e-10, help="Matsubara summation tolerance")
    common.add_argument("--n-max", type=int, default=100_000, help="Matsubara index cap")
    common.add_argument("--quad-tol", type=float, default=1e-9, help="quadrature relative tolerance")
    common.add_argument("--plot", default=None, metavar="PATH", help="also render a figure to PATH")

    physics = argparse.ArgumentParser(add_help=False)
    physics.add_argument("--model", choices=("perfect", "drude", "static", "semiconductor"), default="perfect")
    physics.add_argument("--sigma", type=float, help="Drude conductivity [S/m]")
    physics.add_argument("--eps", type=float, help="static relative permittivity")
    physics.add_argument("--carrier-density", type=float, help="total carrier density [1/m^3]")
    physics.add_argument("--mobility", type=float, default=GE_MOBILITY, help="carrier mobility [m^2/(V s)]")
    physics.add_argument("--screening", choices=("off", "fixed", "computed"), default="off")
    physics.add_argument("--lambda", dest="lam", type=float, help="screening length [m]")
    physics.add_argument("--screen-eps", type=float, help="permittivity for a computed Debye length")
    physics.add_argument("--screen-carrier-density", type=float, help="carrier density for a computed Debye length")
    physics.add_argument("--no-screen-tm", action="store_true", help="keep the Debye term out of the TM wavevector")
    physics.add_argument("--vc", type=float, help="carrier thermal velocity [m/s] for validity warnings")
    physics.add_argument("--d", required=True, help="separation [m]: value or start:stop:count[log]")
    physics.add_argument("--T", required=True, help="temperature [K]: value, list or range")

    calib = argparse.ArgumentParser(add_help=False)
    calib.add_argument("--V", required=True, help="applied voltage [V]: value or range")
    calib.add_argument("--d", required=True, help="separation [m]")
    calib.add_argument("--eps", type=float, required=True, help="plate relative permittivity")
    calib.add_argument("--lambda", dest="lam", type=float, required=True, help="screening length [m]")
    group = calib.add_mutually_exclusive_group(required=True)
    group.add_argument("--T", help="temperature [K]")
    group.add_argument("--kT-meV", dest="kT_meV", type=float, help="thermal energy k_B T in meV")

    parser = argparse.ArgumentParser(prog="casimir-debye", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("energy", parents=[common, physics], help="free energy per area")
    sub.add_parser("pressure", parents=[common, physics], help="pressure between plates")
    p = sub.add_parser("sweep", parents=[common, physics], help="energy and pressure over d and T")
    p.add_argument("--ratio-vs", choices=("perfect",), default=None)
    p = sub.add_parser("entropy", parents=[common, physics], help="finite-difference entropy")
    p.add_argument("--dT", type=float, default=None, help="absolute temperature step [K]")
    p.add_argument("--dT-rel", type=float, default=0.02, help="step as a fraction of T")
    sub.add_parser("gapcheck", parents=[common, physics], help="Matsubara sum vs T = 0 integral")
    sub.add_parser("calib-energy", parents=[common, calib], help="screened electrostatic energy")
    p = sub.add_parser("calib-force", parents=[common, calib], help="sphere-plate calibration force")
    p.add_argument("--R", type=float, required=True, help="sphere radius [m]")
    p = sub.add_parser("fig1", parents=[common], help="separation correction factor table")
    p.add_argument("--y", default="0.1:1000:200log", help="range of eps d / lambda")
    p = sub.add_parser("fig2", parents=[common], help="effective screening length table")
    p.add_argument("--phi", default="0:6:100", help="range of the dimensionless potential")
    return parser


# -- output ----------------------------------------------------------------


def _fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return "%.17g" % value


def metadata(args):
    meta = {"command": args.command, "version": __version__, "constants": CODATA2018.name}
    resolved = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "output", "plot", "func")}
    meta["config"] = resolved
    if args.command in LIFSHITZ_COMMANDS:
        try:
            meta["model"] = build_model(args).describe()
            meta["screening"] = build_screening(args).describe()
        except DomainError:
            pass
        meta["tolerances"] = {"rel_tol": args.rel_tol, "n_max": args.n_max, "quad_tol": args.quad_tol}
    return meta


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def render(meta, columns, rows, fmt, error=None, notes=()):
    if fmt == "json":
        doc = {"metadata": meta, "columns": columns,
               "rows": [{c: _json_value(v) for c, v in zip(columns, r)} for r in rows]}
        if notes:
            doc["notes"] = list(notes)
        if error is not None:
            doc["error"] = error
        return json.dumps(doc, indent=2, default=str) + "\n"
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}: {json.dumps(value, sort_keys=True, default=str)}\n")
    for note in notes:
        buf.write(f"# note: {note}\n")
    if error is not None:
        buf.write(f"# error: {json.dumps(error, sort_keys=True, default=str)}\n")
    if columns:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _emit(text, path):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run(args):
    """Execute a parsed command; returns the process exit status."""
    meta = metadata(args)
    try:
        result = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, ArithmeticError) as exc:
        record = {"type": type(exc).__name__, "message": str(exc)}
        residual = getattr(exc, "residual", None)
        if residual is not None:
            record["residual"] = residual
        _emit(render(meta, [], [], args.format, error=record), args.output)
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    notes = ()
    if len(result) == 4:
        columns, rows, plot, notes = result
    else:
        columns, rows, plot = result
    _emit(render(meta, columns, rows, args.format, notes=notes), args.output)
    if args.plot:
        if plot and rows:
            from .plotting import plot_columns

            plot_columns(args.plot, **plot)
        else:
            print(f"note: {args.command} has no figure; --plot ignored", file=sys.stderr)
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line entry point: scatter / bounds / gp / jellium / sweep.

Every flag mirrors a config key, runs are reproducible (same config + seed
gives byte-identical artifacts), and outputs are written atomically
(temp file + rename).  Exit codes: 2 config/parse errors, 3 computation
validity errors (with the violated precondition named), 4 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from .config import (SECTION_KEYS, ConfigError, RunConfig, SweepSpec,
                     parse_config_file)
from .dilute_bounds import (BoundsError, GasParameter, OptimizedConstants,
                            ansatz_parameters, lower_bound_ratio,
                            optimize_error_constant)
from .charged_gas import QuadratureSpec, foldy_energy, tabulate_pairing_G
from .gp_solver import (GPError, GPProblem, RadialGrid, gp_minimize,
                        tf_minimize)
from .potentials import (BoxTrap, HarmonicTrap, Units, potential_from_mapping)
from .scattering import ScatteringError, solve_zero_energy

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDITY = 3
EXIT_IO = 4

_G_GRID = [float(x) for x in np.geomspace(1e-4, 1e4, 81)]


def _fmt(value) -> str:
    """Shortest decimal form that parses back to the same value."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".bosegas-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(config: RunConfig, artifacts: dict, summary: str):
    """artifacts: suffix -> text; written as {out}{suffix} atomically."""
    if config.out:
        for suffix, text in artifacts.items():
            _write_atomic(config.out + suffix, text)
    else:
        first = next(iter(artifacts.values()))
        sys.stdout.write(first)
    print(summary)


# ---------------------------------------------------------------------------
# subcommand row producers (shared by direct runs and sweeps)


def _float(config, section, key, default=None, required=False):
    raw = config.get(section, key)
    if raw is None:
        if required:
            raise ConfigError(f"missing key {key!r} in section [{section}]")
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {section}.{key}: {raw!r}") from exc


def _run_scatter(config: RunConfig):
    pot_section = config.section("potential")
    if not pot_section:
        raise ConfigError("scatter needs a [potential] section")
    try:
        potential = potential_from_mapping(pot_section)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    dimension = int(_float(config, "scatter", "dimension", 3))
    r_max = _float(config, "scatter", "r_max", required=True)
    n_points = int(_float(config, "scatter", "n_points", 2000))
    sol = solve_zero_energy(potential, Units(), r_max=r_max, n_points=n_points,
                            dimension=dimension)
    report = {
        "a": sol.a,
        "residual": sol.residual,
        "dimension": sol.dimension,
        "refinements": sol.refinements,
        "slope": sol.slope,
        "seed": config.seed,
    }
    profile = _csv_text(("r", "u"), zip(sol.grid.tolist(), sol.u.tolist()))
    summary = f"scatter: a={_fmt(sol.a)} residual={_fmt(sol.residual)} dim={sol.dimension}"
    return report, profile, summary


def _bounds_values(config: RunConfig):
    raw = config.get("bounds", "Y")
    if raw is None:
        raise ConfigError("bounds needs a Y value or geometric range")
    if ":" in raw:
        spec = SweepSpec.parse("Y", "geometric:" + raw if raw.count(":") == 2 else raw)
        return spec.values()
    try:
        return [float(raw)]
    except ValueError as exc:
        raise ConfigError(f"bad Y value {raw!r}") from exc


def _parse_exponents(raw: str):
    try:
        parts = [Fraction(tok.strip()) for tok in raw.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad exponents {raw!r}") from exc
    if len(parts) != 3:
        raise ConfigError("exponents must be three comma-separated rationals")
    return tuple(parts)


BOUNDS_HEADER = ("Y", "lower", "upper", "epsilon", "R_over_a", "ell_over_a", "valid")


def _run_bounds_rows(config: RunConfig):
    ys = _bounds_values(config)
    exponents = _parse_exponents(config.get("bounds", "exponents", "1/17,6/17,3/17"))
    gap = config.get("bounds", "gap_convention", "paper")
    constants_raw = config.get("bounds", "constants", "1,1,1")
    extended = config.precision == "extended"
    if constants_raw.strip() == "optimize":
        opt: OptimizedConstants = optimize_error_constant(ys, exponents, gap_convention=gap)
        constants = opt.constants
    else:
        try:
            constants = tuple(float(tok) for tok in constants_raw.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad constants {constants_raw!r}") from exc
        if len(constants) != 3:
            raise ConfigError("constants must be three comma-separated numbers")
    units = Units()
    rows = []
    for Y in ys:
        params = ansatz_parameters(Y, exponents, constants, extended=extended)
        gas = GasParameter.from_Y(Y)
        rep = lower_bound_ratio(gas, params, units, gap_convention=gap,
                                extended=extended)
        rows.append((float(Y), float(rep.lower), float(rep.upper),
                     float(params.epsilon), float(params.R / gas.a),
                     float(params.ell / gas.a), rep.valid))
    return rows


def _run_bounds(config: RunConfig):
    rows = _run_bounds_rows(config)
    payload = [dict(zip(BOUNDS_HEADER, row)) for row in rows]
    summary = (f"bounds: {len(rows)} point(s), lower[0]={_fmt(rows[0][1])} "
               f"upper[0]={_fmt(rows[0][2])}")
    return rows, payload, summary


def _gp_problem(config: RunConfig) -> GPProblem:
    dimension = int(_float(config, "gp", "dimension", 3))
    trap_kind = config.get("gp", "trap", "harmonic")
    if trap_kind == "harmonic":
        raw_k = config.get("gp", "k", "1.0")
        trap = HarmonicTrap(k=tuple(float(tok) for tok in raw_k.split(",")))
    elif trap_kind == "box":
        trap = BoxTrap(side=_float(config, "gp", "side", required=True))
    else:
        raise ConfigError(f"unknown trap {trap_kind!r}")
    N = _float(config, "gp", "N", required=True)
    a = _float(config, "gp", "a", 0.0)
    mode = config.get("gp", "mode", "gp")
    if mode not in ("gp", "tf", "2dlog"):
        raise ConfigError(f"unknown gp mode {mode!r}")
    if mode == "2dlog" or (dimension == 2 and a > 0):
        coupling = "fixed_2d_logbar"
    elif mode == "tf":
        coupling = "thomas_fermi"
    else:
        coupling = "fixed_3d"
    grid = None
    raw_grid = config.get("gp", "grid")
    if raw_grid:
        try:
            r_max, n = raw_grid.split(":")
            grid = RadialGrid(dimension, r_max=float(r_max), n=int(n))
        except ValueError as exc:
            raise ConfigError(f"bad grid spec {raw_grid!r} (want r_max:n)") from exc
    return GPProblem(dimension=dimension, trap=trap, N=N, a=a,
                     coupling_mode=coupling, grid=grid)


def _run_gp(config: RunConfig):
    problem = _gp_problem(config)
    mode = config.get("gp", "mode", "gp")
    if mode == "tf" or problem.coupling_mode == "thomas_fermi":
        sol = tf_minimize(problem)
    else:
        sol = gp_minimize(problem)
    report = {
        "N": problem.N,
        "a": problem.a,
        "dimension": problem.dimension,
        "mode": sol.mode,
        "energy_total": sol.energy_total,
        "energy_kinetic": sol.energy_kinetic,
        "energy_trap": sol.energy_trap,
        "energy_interaction": sol.energy_interaction,
        "chemical_potential": sol.chemical_potential,
        "rho_bar": sol.rho_bar,
        "coupling": sol.coupling,
        "iterations": sol.iterations,
        "residual": sol.residual,
        "converged": sol.converged,
        "seed": config.seed,
    }
    grid = problem.resolved_grid()
    if isinstance(grid, RadialGrid):
        coords = grid.nodes
        density = sol.phi**2
        profile = _csv_text(("r", "density"), zip(coords.tolist(), density.tolist()))
    else:
        # centerline along the first axis
        axis = grid.axes[0]
        idx = tuple([slice(None)] + [n // 2 for n in grid.shape[1:]])
        density = sol.phi[idx] ** 2
        profile = _csv_text(("x", "density"), zip(axis.tolist(),
                                                  np.asarray(density).ravel().tolist()))
    summary = (f"gp[{sol.mode}]: E={_fmt(sol.energy_total)} "
               f"mu={_fmt(sol.chemical_potential)} converged={sol.converged}")
    return report, profile, summary


def _jellium_values(config: RunConfig):
    raw_rho = config.get("jellium", "rho")
    raw_rs = config.get("jellium", "rs")
    if (raw_rho is None) == (raw_rs is None):
        raise ConfigError("jellium needs exactly one of rho / rs")
    if raw_rs is not None:
        rs = float(raw_rs)
        if rs <= 0:
            raise ConfigError("rs must be positive")
        return [3.0 / (4.0 * math.pi * rs**3)]
    if ":" in raw_rho:
        return SweepSpec.parse("rho", raw_rho if raw_rho.count(":") == 3
                               else "geometric:" + raw_rho).values()
    return [float(raw_rho)]


JELLIUM_HEADER = ("rho", "e_per_particle", "coefficient_rs", "r_s", "quadrature_error")


def _run_jellium_rows(config: RunConfig):
    rows = []
    for rho in _jellium_values(config):
        res = foldy_energy(rho, QuadratureSpec())
        rows.append((res.rho, res.e_per_particle, res.coefficient_rs,
                     res.r_s, res.quadrature_error))
    return rows


def _run_jellium(config: RunConfig):
    rows = _run_jellium_rows(config)
    payload = [dict(zip(JELLIUM_HEADER, row)) for row in rows]
    g_rows = list(zip(_G_GRID, (float(g) for g in tabulate_pairing_G(_G_GRID))))
    summary = f"jellium: {len(rows)} point(s), coefficient_rs={_fmt(rows[0][2])}"
    return payload, g_rows, summary


_SWEEP_TARGETS = {
    "bounds": (BOUNDS_HEADER, _run_bounds_rows, "bounds"),
    "jellium": (JELLIUM_HEADER, _run_jellium_rows, "jellium"),
}


def _run_sweep(config: RunConfig):
    of = config.get("sweep", "of")
    variable = config.get("sweep", "variable")
    raw_range = config.get("sweep", "range")
    if not of or not variable or not raw_range:
        raise ConfigError("sweep needs of, variable and range keys")
    jobs = int(_float(config, "sweep", "jobs", 1))
    spec = SweepSpec.parse(variable, raw_range)

    if of in _SWEEP_TARGETS:
        header, producer, section = _SWEEP_TARGETS[of]
    elif of == "gp":
        header, producer, section = None, None, "gp"
    elif of == "scatter":
        header, producer, section = None, None, None
    else:
        raise ConfigError(f"cannot sweep subcommand {of!r}")

    def point_config(value) -> RunConfig:
        sections = {k: dict(v) for k, v in config.sections.items()}
        target = None
        for name in (section or of, "potential"):
            if variable in SECTION_KEYS.get(name, ()):
                target = name
                break
        if target is None:
            raise ConfigError(f"variable {variable!r} is not a parameter of {of!r}")
        sections.setdefault(target, {})[variable] = _fmt(value)
        return RunConfig(subcommand=of, sections=sections, out=None,
                         format=config.format, seed=config.seed,
                         precision=config.precision)

    def evaluate(value):
        cfg = point_config(value)
        if of == "bounds":
            return _run_bounds_rows(cfg)
        if of == "jellium":
            return _run_jellium_rows(cfg)
        if of == "gp":
            report, _, _ = _run_gp(cfg)
            return [(report["N"], report["a"], report["energy_total"],
                     report["chemical_potential"], report["converged"])]
        report, _, _ = _run_scatter(cfg)
        return [(report["a"], report["residual"], report["refinements"])]

    values = spec.values()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(evaluate, values))
    else:
        results = [evaluate(v) for v in values]

    if of == "gp":
        header = ("N", "a", "energy_total", "chemical_potential", "converged")
    elif of == "scatter":
        header = ("a", "residual", "refinements")
    rows = []
    native_variable = header[0] == variable
    out_header = header if native_variable else (variable,) + tuple(header)
    for value, result in zip(values, results):
        for row in result:
            rows.append(row if native_variable else (value,) + tuple(row))
    summary = f"sweep[{of}/{variable}]: {len(rows)} rows"
    return out_header, rows, summary


# ---------------------------------------------------------------------------


def execute(config: RunConfig) -> int:
    if config.subcommand == "scatter":
        report, profile, summary = _run_scatter(config)
        _emit(config, {".json": _json_text(report), ".csv": profile}, summary)
    elif config.subcommand == "bounds":
        rows, payload, summary = _run_bounds(config)
        if config.format == "csv":
            _emit(config, {"": _csv_text(BOUNDS_HEADER, rows)}, summary)
        else:
            _emit(config, {"": _json_text(payload)}, summary)
    elif config.subcommand == "gp":
        report, profile, summary = _run_gp(config)
        _emit(config, {".json": _json_text(report), ".csv": profile}, summary)
    elif config.subcommand == "jellium":
        payload, g_rows, summary = _run_jellium(config)
        _emit(config, {".json": _json_text(payload),
                       ".csv": _csv_text(("p4_over_rho", "G"), g_rows)}, summary)
    elif config.subcommand == "sweep":
        header, rows, summary = _run_sweep(config)
        _emit(config, {"": _csv_text(header, rows)}, summary)
    return EXIT_OK


def _merge_flags(config: RunConfig | None, args, section_map) -> RunConfig:
    sections = {} if config is None else {k: dict(v) for k, v in config.sections.items()}
    for (section, key), attr in section_map.items():
        value = getattr(args, attr, None)
        if value is not None:
            sections.setdefault(section, {})[key] = str(value)
    out = args.out if args.out is not None else (config.out if config else None)
    fmt = args.format or (config.format if config else "json")
    seed = args.seed if args.seed is not None else (config.seed if config else 0)
    precision = args.precision or (config.precision if config else "double")
    return RunConfig(subcommand=args.subcommand, sections=sections, out=out,
                     format=fmt, seed=seed, precision=precision)


def _add_common(parser):
    parser.add_argument("--config", help="config file to start from")
    parser.add_argument("--out", help="output path (or base path)")
    parser.add_argument("--format", choices=("json", "csv"))
    parser.add_argument("--seed", type=int)
    parser.add_argument("--precision", choices=("double", "extended"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bosegas",
        description="scattering lengths, certified dilute-gas bounds, "
                    "GP ground states, and charged-gas energetics")
    parser.add_argument("--version", action="store_true",
                        help="print version and unit conventions")
    sub = parser.add_subparsers(dest="subcommand")

    run = sub.add_parser("run", help="execute a config file")
    run.add_argument("configfile")
    run.add_argument("--out", help="override the configured output path")

    sc = sub.add_parser("scatter", help="zero-energy scattering solve")
    _add_common(sc)
    sc.add_argument("--potential", help="config file with a [potential] section")
    sc.add_argument("--kind")
    sc.add_argument("--radius", type=float)
    sc.add_argument("--height", type=float)
    sc.add_argument("--well-range", dest="well_range", type=float)
    sc.add_argument("--amplitude", type=float)
    sc.add_argument("--eps", type=float)
    sc.add_argument("--dimension", type=int)
    sc.add_argument("--r-max", dest="r_max", type=float)
    sc.add_argument("--n-points", dest="n_points", type=int)

    bd = sub.add_parser("bounds", help="certified upper/lower bound bracket")
    _add_common(bd)
    bd.add_argument("--Y", dest="Y")
    bd.add_argument("--exponents")
    bd.add_argument("--constants")
    bd.add_argument("--gap-convention", dest="gap_convention",
                    choices=("paper", "pi-squared"))

    g = sub.add_parser("gp", help="Gross-Pitaevskii ground state")
    _add_common(g)
    g.add_argument("--dim", dest="dimension", type=int)
    g.add_argument("--trap", choices=("harmonic", "box"))
    g.add_argument("--k")
    g.add_argument("--side", type=float)
    g.add_argument("--N", dest="N", type=float)
    g.add_argument("--a", dest="a", type=float)
    g.add_argument("--mode", choices=("gp", "tf", "2dlog"))
    g.add_argument("--grid")

    j = sub.add_parser("jellium", help="charged-gas correlation energy")
    _add_common(j)
    j.add_argument("--rho")
    j.add_argument("--rs", type=float)

    sw = sub.add_parser("sweep", help="sweep one parameter of a subcommand")
    _add_common(sw)
    sw.add_argument("--of", choices=("bounds", "jellium", "gp", "scatter"))
    sw.add_argument("--variable")
    sw.add_argument("--range", dest="range_")
    sw.add_argument("--jobs", type=int)
    for name in ("--Y", "--rho", "--N", "--a"):
        sw.add_argument(name, dest=name.lstrip("-"))
    return parser


_FLAG_MAPS = {
    "scatter": {("potential", "kind"): "kind", ("potential", "radius"): "radius",
                ("potential", "height"): "height", ("potential", "range"): "well_range",
                ("potential", "amplitude"): "amplitude", ("potential", "eps"): "eps",
                ("scatter", "dimension"): "dimension", ("scatter", "r_max"): "r_max",
                ("scatter", "n_points"): "n_points"},
    "bounds": {("bounds", "Y"): "Y", ("bounds", "exponents"): "exponents",
               ("bounds", "constants"): "constants",
               ("bounds", "gap_convention"): "gap_convention"},
    "gp": {("gp", "dimension"): "dimension", ("gp", "trap"): "trap",
           ("gp", "k"): "k", ("gp", "side"): "side", ("gp", "N"): "N",
           ("gp", "a"): "a", ("gp", "mode"): "mode", ("gp", "grid"): "grid"},
    "jellium": {("jellium", "rho"): "rho", ("jellium", "rs"): "rs"},
    "sweep": {("sweep", "of"): "of", ("sweep", "variable"): "variable",
              ("sweep", "range"): "range_", ("sweep", "jobs"): "jobs",
              ("bounds", "Y"): "Y", ("jellium", "rho"): "rho",
              ("gp", "N"): "N", ("gp", "a"): "a"},
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        print(f"bosegas {__version__} "
              "(dilute-gas units: mu = hbar^2/2m = 1; "
              "charged-gas units: hbar = m = e = 1, mu = 1/2)")
        return EXIT_OK
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        if args.subcommand == "run":
            config = parse_config_file(args.configfile)
            if args.out:
                config.out = args.out
        else:
            base = parse_config_file(args.config) if getattr(args, "config", None) else None
            if base is not None and base.subcommand != args.subcommand:
                raise ConfigError(
                    f"config is for {base.subcommand!r}, not {args.subcommand!r}")
            if args.subcommand == "scatter" and getattr(args, "potential", None):
                # the potential file is plain [potential] key=value; read directly
                import configparser as _cp
                cp = _cp.ConfigParser()
                cp.optionxform = str
                if not cp.read(args.potential):
                    raise ConfigError(f"cannot read potential file {args.potential!r}")
                if "potential" not in cp:
                    raise ConfigError(f"{args.potential!r} has no [potential] section")
                base_sections = {} if base is None else base.sections
                base_sections = {k: dict(v) for k, v in base_sections.items()}
                base_sections["potential"] = dict(cp["potential"])
                base = RunConfig(subcommand="scatter", sections=base_sections,
                                 out=base.out if base else None,
                                 format=base.format if base else "json",
                                 seed=base.seed if base else 0,
                                 precision=base.precision if base else "double")
            config = _merge_flags(base, args, _FLAG_MAPS[args.subcommand])
        return execute(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BoundsError, GPError, ScatteringError, ValueError) as exc:
        print(f"validity error: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    co2dryout groups   [--fluids co2,r12,...] [--percent-diff] [--match r290 --match-T -15,15]
    co2dryout spectrum --x 0.7 [--nscan 16:32:4] [--svg] [--dump-pencil FILE]
    co2dryout xdry
    co2dryout sweep    [--G 1200,1600,2000] [--svg]
    co2dryout validate [--benchmark expected.csv] [--inject EPS]

Every command accepts ``--config run.yaml``; flags win over the file. Exit
codes: 0 success, 1 input error, 2 numerical failure, 3 no dryout in range.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np
import yaml

from . import __version__, spectral
from .dryout import (CalibrationError, SweepError, calibrate_k, find_x_dry, instability_factor_at,
                     params_at_G, sweep_G)
from .properties import (OperatingConditions, PropertyTableError, bundled_table, dimensionless_groups,
                         load_property_table, match_conditions, percent_diff_report, properties_at)
from .stability import ProblemParams, build_problem, solve_problem
from .svgplot import Chart
from .validation import BenchmarkConfig, degenerate_equivalence_check, two_fluid_benchmark

OUTPUT_ENV = "CO2DRYOUT_OUTPUT_DIR"
SCHEMA_VERSION = 1
BUNDLED = ("co2", "r12", "r134a", "r290")

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_NO_DRYOUT = 0, 1, 2, 3

_NUMERIC_ERRORS = (spectral.EigenSolveError, spectral.SingularEliminationError, np.linalg.LinAlgError,
                   FloatingPointError, CalibrationError, SweepError)


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class Calibration:
    G_ref: float
    x_target: float
    k_min: float = 0.01
    k_max: float = 10.0


@dataclass(frozen=True)
class Campaign:
    name: str
    D: float
    q: float
    T_sat: float
    G: tuple[float, ...]
    fluid: str


@dataclass(frozen=True)
class RunConfig:
    """Run settings. Keys of the YAML file match the field names.

    fluid        bundled name (co2, r12, r134a, r290) or path to a property CSV
    fluids       list of fluids for the groups command, first one is the reference
    T_sat        saturation temperature [C]
    D, q         diameter [m] and wall heat flux [W/m2]
    G            mass flux [kg/m2 s], a number or a list
    k            wavenumber; exclusive with ``calibration``
    calibration  {G_ref, x_target, k_min, k_max}
    N, tol, H    polynomial count, bisection tolerance in x, interface heat parameter
    scan         {lo, hi, step} coarse grid in x
    convention   growth convention of the bulk rows ("consistent" or "printed")
    campaigns    optional list of {name, D, q, T_sat, G, fluid} overrides for sweeps
    output_dir   where CSV and SVG files go
    """

    fluid: str = "co2"
    fluids: tuple[str, ...] = BUNDLED
    T_sat: float = -15.0
    D: float = 1e-3
    q: float = 30e3
    G: tuple[float, ...] = (1200.0,)
    k: float | None = None
    calibration: Calibration | None = None
    N: int = 20
    tol: float = 1e-3
    H: float = 0.0
    scan: tuple[float, float, float] = (0.05, 0.95, 0.05)
    convention: str = "consistent"
    campaigns: tuple[Campaign, ...] = ()
    output_dir: str = "."

    def validate(self) -> "RunConfig":
        if self.k is not None and self.calibration is not None:
            raise ConfigError("give either k or a calibration block, not both")
        if self.k is not None and not self.k > 0:
            raise ConfigError(f"k must be positive, got {self.k}")
        for name in ("D", "tol"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.q < 0:
            raise ConfigError("q must be non-negative")
        if not self.G:
            raise ConfigError("empty G list")
        if any(not g > 0 for g in self.G):
            raise ConfigError("mass fluxes must be positive")
        for f in (self.fluid, *self.fluids, *(c.fluid for c in self.campaigns)):
            resolve_fluid(f)
        return self

    @property
    def needs_k(self) -> bool:
        return self.k is None and self.calibration is None


_SCALARS = {"fluid": str, "T_sat": float, "D": float, "q": float, "k": float, "N": int, "tol": float,
            "H": float, "convention": str, "output_dir": str}


def _as_list(value, cast) -> tuple:
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    if not isinstance(value, (list, tuple)):
        value = [value]
    return tuple(cast(v) for v in value)


def _campaign(entry: dict, base: dict, index: int) -> Campaign:
    unknown = set(entry) - {"name", "D", "q", "T_sat", "G", "fluid"}
    if unknown:
        raise ConfigError(f"campaign {index}: unknown keys {sorted(unknown)}")
    return Campaign(name=str(entry.get("name", f"campaign{index}")),
                    D=float(entry.get("D", base["D"])), q=float(entry.get("q", base["q"])),
                    T_sat=float(entry.get("T_sat", base["T_sat"])),
                    G=_as_list(entry.get("G", base["G"]), float), fluid=str(entry.get("fluid", base["fluid"])))


def build_config(file_values: dict, flag_values: dict) -> RunConfig:
    """Merge defaults, file and flags (flags win) into a validated RunConfig."""
    known = {f.name for f in fields(RunConfig)}
    unknown = set(file_values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    merged = dict(file_values)
    flags = {k: v for k, v in flag_values.items() if v is not None}
    if "k" in flags:
        merged.pop("calibration", None)
    if "calibration" in flags:
        merged.pop("k", None)
    merged.update(flags)

    out = {}
    try:
        for key, cast in _SCALARS.items():
            if merged.get(key) is not None:
                out[key] = cast(merged[key])
        if "G" in merged:
            out["G"] = _as_list(merged["G"], float)
        if "fluids" in merged:
            out["fluids"] = _as_list(merged["fluids"], str)
        if merged.get("calibration") is not None:
            cal = dict(merged["calibration"])
            out["calibration"] = Calibration(**{k: float(v) for k, v in cal.items()})
        if "scan" in merged:
            sc = merged["scan"]
            out["scan"] = (float(sc["lo"]), float(sc["hi"]), float(sc["step"])) if isinstance(sc, dict) \
                else tuple(float(v) for v in sc)
        defaults = RunConfig()
        base = {"D": out.get("D", defaults.D), "q": out.get("q", defaults.q),
                "T_sat": out.get("T_sat", defaults.T_sat), "G": out.get("G", defaults.G),
                "fluid": out.get("fluid", defaults.fluid)}
        if merged.get("campaigns"):
            out["campaigns"] = tuple(_campaign(dict(c), base, i) for i, c in enumerate(merged["campaigns"]))
    except (TypeError, KeyError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed config value: {exc}") from None
    return RunConfig(**out).validate()


def load_config_file(path) -> dict:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {path}")
    data = yaml.safe_load(p.read_text(encoding="utf-8")) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def resolve_fluid(name: str):
    if name.lower().replace("-", "") in BUNDLED:
        return bundled_table(name)
    p = Path(name)
    if not p.is_file():
        raise ConfigError(f"fluid {name!r} is neither a bundled table ({', '.join(BUNDLED)}) nor an existing file")
    return load_property_table(p)


def _conditions(cfg: RunConfig, G: float, D: float | None = None, q: float | None = None,
                T_sat: float | None = None) -> OperatingConditions:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return OperatingConditions(D=cfg.D if D is None else D, G=G, q=cfg.q if q is None else q,
                                   T_sat=cfg.T_sat if T_sat is None else T_sat)


def problem_params(cfg: RunConfig, G: float, k: float | None = None, fluid: str | None = None,
                   D: float | None = None, q: float | None = None, T_sat: float | None = None) -> ProblemParams:
    cond = _conditions(cfg, G, D, q, T_sat)
    props = properties_at(resolve_fluid(fluid or cfg.fluid), cond.T_sat)
    k = cfg.k if k is None else k
    return ProblemParams(dimensionless_groups(props, cond), k=k if k is not None else 1.0, N=cfg.N, H=cfg.H,
                         props=props, cond=cond, convention=cfg.convention)


def resolve_k(cfg: RunConfig, out) -> float:
    if cfg.k is not None:
        return cfg.k
    if cfg.calibration is None:
        raise ConfigError("a wavenumber is needed: set k or a calibration block")
    cal = cfg.calibration
    params = problem_params(cfg, cal.G_ref, k=1.0)
    res = calibrate_k(params, cal.G_ref, cal.x_target, (cal.k_min, cal.k_max), scan=cfg.scan, tol=cfg.tol)
    print(f"calibrated k = {res.k:.6g} (x_dry = {res.x_dry:.6g}, target {cal.x_target:g})", file=out)
    return res.k


# --------------------------------------------------------------------------
# output

def output_dir(cfg: RunConfig, flag: str | None) -> Path:
    path = Path(flag or os.environ.get(OUTPUT_ENV) or cfg.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path: Path, kind: str, columns, rows, meta: dict | None = None, trailer=()) -> Path:
    """CSV with a schema-versioned header comment; output depends only on the arguments."""
    lines = [f"# co2dryout {kind} schema={SCHEMA_VERSION} version={__version__}"]
    if meta:
        lines.append("# " + " ".join(f"{k}={_fmt(v)}" for k, v in meta.items()))
    lines.append(",".join(columns))
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    lines += [f"# {t}" for t in trailer]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def _run_meta(cfg: RunConfig, **extra) -> dict:
    meta = {"fluid": cfg.fluid, "T_sat": cfg.T_sat, "D": cfg.D, "q": cfg.q, "N": cfg.N, "H": cfg.H,
            "convention": cfg.convention}
    meta.update(extra)
    return meta


def _table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [[r if isinstance(r, str) else f"{r:.6g}" for r in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


# --------------------------------------------------------------------------
# commands

GROUP_COLUMNS = ("fluid", "We", "Re_l", "Re_v", "Bd", "Bo", "rho_ratio", "p_r")


def _group_row(name, g) -> list:
    return [name, g.We, g.Re_l, g.Re_v, g.Bd, g.Bo, g.rho_hat, g.p_r]


def cmd_groups(cfg: RunConfig, args, out) -> int:
    G = cfg.G[0]
    cond = _conditions(cfg, G)
    groups = {}
    for name in cfg.fluids:
        props = properties_at(resolve_fluid(name), cfg.T_sat)
        groups[name] = (props, dimensionless_groups(props, cond))
    dest = output_dir(cfg, args.out)
    meta = {"T_sat": cfg.T_sat, "D": cfg.D, "G": G, "q": cfg.q}
    rows = [_group_row(n, g) for n, (_, g) in groups.items()]
    print(_table(GROUP_COLUMNS, rows), file=out)
    write_csv(dest / "groups.csv", "groups", GROUP_COLUMNS, rows, meta)

    ref_name = cfg.fluids[0]
    if args.percent_diff and len(groups) > 1:
        diff = percent_diff_report(groups[ref_name][1], {n: g for n, (_, g) in groups.items() if n != ref_name})
        drows = [[n] + [d[c] for c in ("We", "Re_l", "Re_v", "Bd", "Bo", "rho_hat", "p_r")] for n, d in diff.items()]
        print(f"\npercent difference from {ref_name}", file=out)
        print(_table(GROUP_COLUMNS, drows), file=out)
        write_csv(dest / "groups_diff.csv", "groups-percent-diff", GROUP_COLUMNS, drows, dict(meta, reference=ref_name))

    if args.match:
        target = groups[ref_name][1]
        table = resolve_fluid(args.match)
        temps = _as_list(args.match_T, float) if args.match_T else (cfg.T_sat,)
        cols = ("fluid", "T_sat", "D_mm", "G", "q_kW", "We", "Re_l", "Bd", "Bo", "rho_ratio")
        mrows = []
        for T in temps:
            m = match_conditions(target, properties_at(table, T))
            a = m.achieved
            mrows.append([args.match, T, m.D * 1e3, m.G, m.q / 1e3, a.We, a.Re_l, a.Bd, a.Bo, a.rho_hat])
        print(f"\nconditions matching {ref_name} (We, Bd, Bo)", file=out)
        print(_table(cols, mrows), file=out)
        write_csv(dest / "match.csv", "match", cols, mrows, dict(meta, reference=ref_name))
    return EXIT_OK


def _parse_nscan(text: str) -> list[int]:
    try:
        lo, hi, step = (int(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(f"--nscan expects lo:hi:step, got {text!r}") from None
    if not (12 <= lo <= hi and step > 0):
        raise ConfigError("--nscan needs 12 <= lo <= hi and step > 0")
    return list(range(lo, hi + 1, step))


def cmd_spectrum(cfg: RunConfig, args, out) -> int:
    x = args.x
    if x is None or not 0 < x < 1:
        raise ConfigError(f"--x must lie in (0, 1), got {x}")
    nscan = _parse_nscan(args.nscan) if args.nscan else None
    G = cfg.G[0]
    k = resolve_k(cfg, out)
    params = problem_params(cfg, G, k)
    pencil = build_problem(params, x)
    spec = solve_problem(pencil)
    dest = output_dir(cfg, args.out)
    order = sorted(range(len(spec.eigenvalues)), key=lambda i: (-np.nan_to_num(spec.eigenvalues[i].real, nan=-np.inf),
                                                               np.nan_to_num(spec.eigenvalues[i].imag)))
    rows = [[spec.eigenvalues[i].real, spec.eigenvalues[i].imag, bool(spec.kept[i])] for i in order]
    meta = _run_meta(cfg, G=G, k=k, x=x)
    write_csv(dest / "spectrum.csv", "spectrum", ("re", "im", "filtered"), rows, meta)
    n = spec.leading
    print(f"leading eigenvalue n = {n.real:.8g} {n.imag:+.8g}i ({'unstable' if n.real >= 0 else 'stable'}), "
          f"{spec.filtered.size} of {spec.eigenvalues.size} eigenvalues kept", file=out)
    if args.dump_pencil:
        spectral.dump_pencil(pencil, args.dump_pencil)
    if args.svg:
        f = spec.filtered
        Chart(f"spectrum, x = {x:g}, k = {k:g}", "n_r", "n_i").add(f.real, f.imag).save(dest / "spectrum.svg")
    if nscan:
        rows, dev = spectral.convergence_scan(lambda N: build_problem(params.with_(N=N), x), nscan, solver=solve_problem)
        write_csv(dest / "convergence.csv", "convergence", ("N", "re", "im"),
                  [[N, v.real, v.imag] for N, v in rows], meta, trailer=[f"max_relative_deviation={dev!r}"])
        print(f"N scan {nscan[0]}..{nscan[-1]}: max relative deviation {dev:.3e}", file=out)
    return EXIT_OK


def cmd_xdry(cfg: RunConfig, args, out) -> int:
    G = cfg.G[0]
    k = resolve_k(cfg, out)
    params = problem_params(cfg, G, k)
    res = find_x_dry(params, cfg.scan, cfg.tol)
    dest = output_dir(cfg, args.out)
    rows = [[x, n.real, n.imag] for x, n in res.scan]
    meta = _run_meta(cfg, G=G, k=k, tol=cfg.tol)
    if not res.found:
        write_csv(dest / "xdry.csv", "xdry", ("x", "n_r", "n_i"), rows, meta, trailer=[res.reason])
        print(res.reason, file=out)
        return EXIT_NO_DRYOUT
    (xs, xu), (ns, nu) = res.bracket, res.leading_at_bracket
    trailer = [f"x_dry={res.x_dry!r}", f"bracket={xs!r},{xu!r}", f"iterations={res.iterations}",
               f"n_stable={ns!r}", f"n_unstable={nu!r}",
               "crossings=" + ";".join(f"{a!r}:{b!r}" for a, b in res.crossings)]
    write_csv(dest / "xdry.csv", "xdry", ("x", "n_r", "n_i"), rows, meta, trailer)
    print(f"x_dry = {res.x_dry:.6g}, bracket [{xs:.6g}, {xu:.6g}] after {res.iterations} bisections", file=out)
    if len(res.crossings) > 1:
        print(f"note: {len(res.crossings)} sign changes on the grid, first one used", file=out)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, args, out) -> int:
    campaigns = cfg.campaigns or (Campaign("sweep", cfg.D, cfg.q, cfg.T_sat, cfg.G, cfg.fluid),)
    for c in campaigns:
        if not c.G:
            raise ConfigError(f"campaign {c.name}: empty G list")
    k = resolve_k(cfg, out)
    dest = output_dir(cfg, args.out)
    corr_rows, any_found = [], False
    sweep_chart = Chart("dryout quality vs mass flux", "G [kg/m2 s]", "x_dry")
    for c in campaigns:
        params = problem_params(cfg, c.G[0], k, fluid=c.fluid, D=c.D, q=c.q, T_sat=c.T_sat)
        curve = sweep_G(params, c.G, cfg.scan, cfg.tol)
        rows = []
        for G, res in curve.outcomes:
            if res is not None and res.found:
                I = instability_factor_at(params_at_G(params, G), res.x_dry)
                rows.append([G, res.x_dry, res.iterations, I])
                corr_rows.append([c.name, G, c.D, c.q, c.T_sat, I, res.x_dry])
                any_found = True
            else:
                rows.append([G, math.nan, 0, math.nan])
        trailer = [f"G={G!r}: {'failed' if r is None else r.reason}" for G, r in curve.outcomes
                   if r is None or not r.found]
        name = "sweep.csv" if c.name == "sweep" else f"sweep_{c.name}.csv"
        write_csv(dest / name, "sweep", ("G", "x_dry", "iterations", "I_factor"), rows,
                  {"campaign": c.name, "fluid": c.fluid, "T_sat": c.T_sat, "D": c.D, "q": c.q, "k": k, "N": cfg.N},
                  trailer)
        print(f"[{c.name}]", file=out)
        print(_table(("G", "x_dry", "iterations", "I_factor"), rows), file=out)
        found = [(r[0], r[1]) for r in rows if not math.isnan(r[1])]
        sweep_chart.add([g for g, _ in found], [x for _, x in found], line=True)
    write_csv(dest / "correlation.csv", "correlation", ("campaign", "G", "D", "q", "T_sat", "I_factor", "x_dry"),
              corr_rows, {"k": k, "N": cfg.N})
    if args.svg:
        sweep_chart.save(dest / "sweep.svg")
        Chart("dryout quality vs instability factor", "I", "x_dry").add(
            [r[5] for r in corr_rows], [r[6] for r in corr_rows]).save(dest / "correlation.svg")
    return EXIT_OK if any_found else EXIT_NO_DRYOUT


def cmd_validate(cfg: RunConfig, args, out) -> int:
    report = degenerate_equivalence_check(inject=args.inject)
    print(report.summary(), file=out)
    bench = BenchmarkConfig(expected=args.benchmark)
    _, rep = two_fluid_benchmark(bench)
    print(f"two-layer benchmark (Re={bench.Re:g}, mu_ratio={bench.mu_ratio:g}, m={bench.m:g}, k={bench.k:g}): "
          f"N {rep.N}->{rep.N_check} deviation {rep.convergence:.3e}", file=out)
    ok = report.passed and rep.convergence <= 1e-8
    if rep.expected_deviation is not None:
        print(f"max deviation from {args.benchmark}: {rep.expected_deviation:.3e}", file=out)
    print("validation " + ("passed" if ok else "FAILED"), file=out)
    return EXIT_OK if ok else EXIT_NUMERIC


# --------------------------------------------------------------------------
# entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="YAML run configuration")
    p.add_argument("--out", help=f"output directory (overrides ${OUTPUT_ENV} and the config)")
    p.add_argument("--fluid")
    p.add_argument("--T-sat", dest="T_sat", type=float)
    p.add_argument("--D", type=float, help="diameter [m]")
    p.add_argument("--q", type=float, help="wall heat flux [W/m2]")
    p.add_argument("--G", help="mass flux [kg/m2 s], comma separated for sweeps")
    p.add_argument("--k", type=float, help="wavenumber")
    p.add_argument("--G-ref", dest="G_ref", type=float, help="calibrate k at this mass flux")
    p.add_argument("--x-target", dest="x_target", type=float, help="calibration target quality")
    p.add_argument("--N", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--H", type=float)
    p.add_argument("--convention", choices=("consistent", "printed"))


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="co2dryout", description="Interfacial stability and dryout inception in annular flow.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("groups", help="dimensionless groups per fluid")
    _common(p)
    p.add_argument("--fluids", help="comma separated, first is the reference")
    p.add_argument("--percent-diff", action="store_true")
    p.add_argument("--match", metavar="FLUID", help="find D, G, q reproducing the reference groups")
    p.add_argument("--match-T", dest="match_T", help="comma separated saturation temperatures for --match")

    p = sub.add_parser("spectrum", help="eigenvalues at one quality")
    _common(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--nscan", help="lo:hi:step convergence scan in N")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--dump-pencil", metavar="FILE", help="write the regularized pencil as text")

    p = sub.add_parser("xdry", help="dryout quality at one mass flux")
    _common(p)

    p = sub.add_parser("sweep", help="dryout quality over a list of mass fluxes")
    _common(p)
    p.add_argument("--svg", action="store_true")

    p = sub.add_parser("validate", help="run the reference-problem checks")
    _common(p)
    p.add_argument("--benchmark", help="expected two-layer spectrum, CSV with columns re,im")
    p.add_argument("--inject", type=float, default=0.0, help="relative viscosity perturbation (test hook)")
    return parser


def _flag_values(args) -> dict:
    flags = {k: getattr(args, k, None) for k in ("fluid", "T_sat", "D", "q", "G", "k", "N", "tol", "H", "convention")}
    flags["fluids"] = getattr(args, "fluids", None)
    if args.G_ref is not None or args.x_target is not None:
        if args.G_ref is None or args.x_target is None:
            raise ConfigError("--G-ref and --x-target go together")
        flags["calibration"] = {"G_ref": args.G_ref, "x_target": args.x_target}
    return flags


COMMANDS = {"groups": cmd_groups, "spectrum": cmd_spectrum, "xdry": cmd_xdry, "sweep": cmd_sweep,
            "validate": cmd_validate}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        file_values = load_config_file(args.config) if args.config else {}
        cfg = build_config(file_values, _flag_values(args))
        if args.command == "validate" and args.benchmark and not Path(args.benchmark).is_file():
            raise ConfigError(f"benchmark file not found: {args.benchmark}")
        return COMMANDS[args.command](cfg, args, out)
    except (ConfigError, PropertyTableError, yaml.YAMLError) as exc:
        print(f"co2dryout: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _NUMERIC_ERRORS as exc:
        print(f"co2dryout: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"co2dryout: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

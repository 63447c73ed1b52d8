"""Saturated refrigerant property tables and the dimensionless groups built on them.

Tables are plain CSV files (one saturation state per row, SI units except for the
temperature column, which is in degrees Celsius)::

    T_sat_C,rho_l,rho_v,mu_l,mu_v,sigma,h_gl,p_sat
    # p_crit=7.3773e+06 fluid=CO2
    -40,1116.4253,26.120733,...

Fixtures for CO2, R-12, R-134a and R-290 ship in ``co2dryout/data``.
"""
from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path

import numpy as np

G_ACC = 9.81  # m/s^2

COLUMNS = ("T_sat_C", "rho_l", "rho_v", "mu_l", "mu_v", "sigma", "h_gl", "p_sat")
_VALUE_COLUMNS = COLUMNS[1:]


class PropertyTableError(ValueError):
    """Malformed or physically inconsistent property file."""


@dataclass(frozen=True)
class FluidProperties:
    """Saturated liquid/vapour state at one temperature (SI, T in C)."""

    T_sat: float
    rho_l: float
    rho_v: float
    mu_l: float
    mu_v: float
    sigma: float
    h_gl: float
    p_sat: float
    p_crit: float
    fluid_name: str = ""

    @property
    def rho_hat(self) -> float:
        return self.rho_l / self.rho_v


@dataclass(frozen=True)
class PropertyTable:
    fluid_name: str
    p_crit: float
    # shape (n_rows, 8), columns as in COLUMNS
    rows: np.ndarray

    @property
    def temperatures(self) -> np.ndarray:
        return self.rows[:, 0]

    @property
    def t_range(self) -> tuple[float, float]:
        return float(self.rows[0, 0]), float(self.rows[-1, 0])


@dataclass(frozen=True)
class OperatingConditions:
    """Channel diameter D [m], mass flux G [kg/m2 s], wall heat flux q [W/m2], T_sat [C]."""

    D: float
    G: float
    q: float
    T_sat: float

    def __post_init__(self):
        for name in ("D", "G"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive, got {v}")
        if not (math.isfinite(self.q) and self.q >= 0):
            raise ValueError(f"q must be non-negative, got {self.q}")
        if self.D > 5e-3:
            warnings.warn(f"D = {self.D * 1e3:.2f} mm is outside the millichannel regime (D <= 5 mm)",
                          stacklevel=2)


@dataclass(frozen=True)
class DimensionlessGroups:
    We: float
    Re_l: float
    Re_v: float
    Bd: float
    Bo: float
    rho_hat: float
    rho_bar: float
    p_r: float

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _parse_header_comment(line: str, path) -> tuple[float, str]:
    items = dict(tok.split("=", 1) for tok in line.lstrip("#").split() if "=" in tok)
    try:
        p_crit = float(items["p_crit"])
    except (KeyError, ValueError):
        raise PropertyTableError(f"{path}: comment line must carry 'p_crit=<Pa>'") from None
    return p_crit, items.get("fluid", Path(str(path)).stem)


def load_property_table(path) -> PropertyTable:
    """Read and validate a saturation table.

    Raises PropertyTableError naming the offending line for malformed rows,
    non-increasing temperatures or rho_l <= rho_v.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise PropertyTableError(f"{path}: empty file")
    header = [h.strip() for h in lines[0].split(",")]
    if tuple(header) != COLUMNS:
        raise PropertyTableError(f"{path}: line 1: expected header {','.join(COLUMNS)}")

    p_crit, fluid = None, path.stem
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if line.lstrip().startswith("#"):
            p_crit, fluid = _parse_header_comment(line, path)
            continue
        parts = next(csv.reader([line]))
        if len(parts) != len(COLUMNS):
            raise PropertyTableError(f"{path}: line {lineno}: expected {len(COLUMNS)} fields, got {len(parts)}")
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise PropertyTableError(f"{path}: line {lineno}: {exc}") from None
        if not all(math.isfinite(v) for v in vals) or min(vals[1:]) <= 0:
            raise PropertyTableError(f"{path}: line {lineno}: property values must be finite and positive")
        if vals[1] <= vals[2]:
            raise PropertyTableError(f"{path}: line {lineno}: rho_l ({vals[1]}) must exceed rho_v ({vals[2]})")
        if rows and vals[0] <= rows[-1][1][0]:
            raise PropertyTableError(f"{path}: line {lineno}: T_sat must be strictly increasing")
        rows.append((lineno, vals))

    if p_crit is None:
        raise PropertyTableError(f"{path}: missing '# p_crit=<Pa> fluid=<name>' line")
    if not rows:
        raise PropertyTableError(f"{path}: no data rows")
    for lineno, vals in rows:
        if vals[7] >= p_crit:
            raise PropertyTableError(f"{path}: line {lineno}: p_sat is not below p_crit")
    return PropertyTable(fluid, p_crit, np.array([v for _, v in rows], dtype=float))


def bundled_table(name: str) -> PropertyTable:
    """Load one of the shipped fixtures: 'co2', 'r12', 'r134a' or 'r290'."""
    ref = resources.files("co2dryout") / "data" / f"{name.lower().replace('-', '')}.csv"
    with resources.as_file(ref) as p:
        return load_property_table(p)


def properties_at(table: PropertyTable, T: float) -> FluidProperties:
    """Linear interpolation in T between saturation rows; exact rows are returned verbatim."""
    t = table.temperatures
    lo, hi = table.t_range
    if not (lo <= T <= hi):
        raise ValueError(f"T = {T} C outside table range [{lo}, {hi}] C for {table.fluid_name}")
    i = int(np.searchsorted(t, T))
    if i < len(t) and t[i] == T:
        vals = table.rows[i, 1:]
    else:
        w = (T - t[i - 1]) / (t[i] - t[i - 1])
        vals = (1 - w) * table.rows[i - 1, 1:] + w * table.rows[i, 1:]
    return FluidProperties(float(T), *map(float, vals), p_crit=table.p_crit, fluid_name=table.fluid_name)


def dimensionless_groups(props: FluidProperties, cond: OperatingConditions) -> DimensionlessGroups:
    D, G, q = cond.D, cond.G, cond.q
    return DimensionlessGroups(
        We=G**2 * D / (props.sigma * props.rho_l),
        Re_l=G * D / props.mu_l,
        Re_v=G * D / props.mu_v,
        Bd=G_ACC * (props.rho_l - props.rho_v) * D**2 / props.sigma,
        Bo=q / (props.h_gl * G),
        rho_hat=props.rho_l / props.rho_v,
        rho_bar=props.rho_v / props.rho_l,
        p_r=props.p_sat / props.p_crit,
    )


@dataclass(frozen=True)
class MatchResult:
    D: float
    G: float
    q: float
    achieved: DimensionlessGroups


def match_conditions(target: DimensionlessGroups, props: FluidProperties) -> MatchResult:
    """Pick (D, G, q) so that ``props`` reproduces the target We, Bd and Bo.

    The inversion is sequential: Bd fixes D, then We fixes G, then Bo fixes q.
    Re and the density ratio follow from the properties and are only reported.
    """
    for name in ("We", "Bd", "Bo"):
        v = getattr(target, name)
        if not math.isfinite(v) or v < 0 or (name != "Bo" and v == 0):
            raise ValueError(f"target {name} must be finite and positive, got {v}")
    D = math.sqrt(target.Bd * props.sigma / (G_ACC * (props.rho_l - props.rho_v)))
    G = math.sqrt(target.We * props.sigma * props.rho_l / D)
    q = target.Bo * props.h_gl * G
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cond = OperatingConditions(D=D, G=G, q=q, T_sat=props.T_sat)
    return MatchResult(D, G, q, dimensionless_groups(props, cond))


def percent_diff_report(reference: DimensionlessGroups,
                        others: dict[str, DimensionlessGroups]) -> dict[str, dict[str, float]]:
    """100 (other - ref) / ref for every group, keyed by fluid name then group."""
    ref = reference.as_dict()
    return {name: {k: 100.0 * (v - ref[k]) / ref[k] if ref[k] != 0 else math.nan
                   for k, v in grp.as_dict().items()}
            for name, grp in others.items()}


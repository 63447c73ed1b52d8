"""Reference problems for the spectral machinery.

Three oracles, all written in the growth convention n = -i k c (Re(n) > 0 grows):

* plane Poiseuille Orr-Sommerfeld on one domain;
* two superposed viscous layers in pressure-driven flow between fixed plates,
  velocities scaled so the interface moves at unit speed, split over two
  mapped domains with the interface at t = -1 in both;
* the annular problem collapsed to one fluid, compared against the first.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import spectral
from .baseflow import InterfaceState, film_geometry
from .properties import DimensionlessGroups
from .stability import ProblemParams, assemble_operators, operator_set

# Orr-Sommerfeld, plane Poiseuille, Re = 1e4, k = 1: c = 0.23752649 + 0.00373967i
ORSZAG_C = 0.23752649 + 0.00373967j
ORSZAG_N = -1j * ORSZAG_C
EQUIVALENCE_RTOL = 1e-6
MODES_COMPARED = 10

_ZERO = np.array([0.0])


def _series(U, affine) -> np.ndarray:
    return spectral.to_mapped_series(np.asarray(U, dtype=float), affine)


def _d2_blocks(U, visc: float, k: float, M: int, affine, scale: float):
    """Orr-Sommerfeld as two second-order equations on one mapped domain.

    Unknowns (w, theta), theta = (D^2 - k^2) w, each M Chebyshev coefficients:

        (D^2 - k^2) w - theta = 0
        visc (D^2 - k^2) theta - ik U theta + ik U'' w = n theta

    Each equation keeps its first M - 2 rows.
    """
    ik = 1j * k
    D2 = scale**2 * spectral.diff_matrix(M, 2)
    I = np.eye(M)
    L = D2 - k**2 * I
    Upp = np.polynomial.polynomial.polyder(np.asarray(U, dtype=float), 2) if len(U) > 2 else [0.0]
    MU = spectral.mult_matrix(_series(U, affine), M)
    MUpp = spectral.mult_matrix(_series(Upp, affine), M)
    r = M - 2
    A = np.zeros((2 * r, 2 * M), dtype=complex)
    B = np.zeros_like(A)
    A[:r, :M], A[:r, M:] = L[:r], -I[:r]
    A[r:, :M] = ik * MUpp[:r]
    A[r:, M:] = (visc * L - ik * MU)[:r]
    B[r:, M:] = I[:r]
    return A, B


def _leading(spec: spectral.Spectrum, count: int = MODES_COMPARED) -> np.ndarray:
    return spec.top(count)


def _solve(pencil: spectral.Pencil, exclude=()) -> spectral.Spectrum:
    return spectral.solve(pencil, tail_tol=spectral.TAIL_TOLERANCE, exclude=exclude)


# --------------------------------------------------------------------------
# single fluid

def single_fluid_pencil(Re: float, k: float, N: int, U=(1.0, 0.0, -1.0),
                        interval: tuple[float, float] = (-1.0, 1.0)) -> spectral.Pencil:
    """Clamped-wall pencil; rows with no eigenvalue give infinite eigenvalues that solve() drops."""
    if not (Re > 0 and k > 0):
        raise ValueError("Re and k must be positive")
    a, b = interval
    M = N + 4
    scale = 2 / (b - a)
    A, B = _d2_blocks(U, 1 / Re, k, M, ((a + b) / 2, (b - a) / 2), scale)
    z = np.zeros(M)
    conds = [(f"bc:{side}:{order}", np.concatenate([spectral.endpoint_row(M, side, order) * scale**order, z]), None)
             for side in (-1, 1) for order in (0, 1)]
    rows_A = np.vstack([A] + [c[1][None, :] for c in conds])
    rows_B = np.vstack([B, np.zeros((len(conds), 2 * M))])
    labels = tuple(["bulk0"] * A.shape[0] + [c[0] for c in conds])
    return spectral.Pencil(rows_A, rows_B, labels, (M, M), None, {"Re": Re, "k": k, "N": N})


def single_fluid_os(Re: float, k: float, N: int = 64, U=(1.0, 0.0, -1.0),
                    interval: tuple[float, float] = (-1.0, 1.0)) -> spectral.Spectrum:
    """Orr-Sommerfeld spectrum with clamped walls; U is a power series in y."""
    return _solve(single_fluid_pencil(Re, k, N, U, interval))


# --------------------------------------------------------------------------
# two superposed layers

@dataclass(frozen=True)
class BenchmarkConfig:
    """Lower layer (fluid 2) on -1 < y < 0, upper layer (fluid 1) on 0 < y < m.

    Re uses the lower-layer viscosity, the interface speed and the lower depth.
    mu_ratio and rho_ratio are upper over lower. S is the scaled surface
    tension coefficient of the interface.
    """

    Re: float = 1000.0
    mu_ratio: float = 0.5
    rho_ratio: float = 1.0
    m: float = 1.0
    k: float = 1.0
    N: int = 50
    S: float = 0.0
    expected: str | None = None

    def __post_init__(self):
        for name in ("Re", "mu_ratio", "rho_ratio", "m", "k"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive, got {v}")
        if self.S < 0:
            raise ValueError("S must be non-negative")
        if self.N < 20:
            raise ValueError(f"N must be at least 20, got {self.N}")
        if self.rho_ratio != 1.0:
            raise ValueError("only equal densities are supported (the eigenvalue enters the "
                             "interface rows nonlinearly otherwise)")
        if self.expected is not None and not Path(self.expected).is_file():
            raise ValueError(f"expected-spectrum file not found: {self.expected}")

    @property
    def Re_upper(self) -> float:
        return self.Re * self.rho_ratio / self.mu_ratio

    def base_flow(self) -> tuple[np.ndarray, np.ndarray]:
        """Power series of U per layer: no slip at y = -1 and y = m, U(0) = 1, shear stress continuous."""
        mr, m = self.mu_ratio, self.m
        A = -(mr + m) / (m * (1 + m))
        B2 = 1 + A
        return np.array([1.0, B2, A]), np.array([1.0, B2 / mr, A / mr])


def two_fluid_pencil(cfg: BenchmarkConfig, N: int | None = None, upper_visc_factor: float = 1.0) -> spectral.Pencil:
    """Unknowns (w2, theta2, w1, theta1); lower layer first."""
    N = cfg.N if N is None else N
    M = N + 4
    k, Re = cfg.k, cfg.Re
    ik = 1j * k
    mu1 = upper_visc_factor * cfg.mu_ratio
    U2, U1 = cfg.base_flow()
    # lower: y = -(t + 1)/2, upper: y = m (t + 1)/2; interface at t = -1 in both
    s2, s1 = -2.0, 2.0 / cfg.m
    A2, B2 = _d2_blocks(U2, 1 / Re, k, M, (-0.5, -0.5), s2)
    A1, B1 = _d2_blocks(U1, mu1 / Re, k, M, (cfg.m / 2, cfg.m / 2), s1)

    z = np.zeros(M)

    def at(side, order, scale):
        return spectral.endpoint_row(M, side, order) * scale**order

    def field(block, side=-1, order=0):
        # block: 0 = w2, 1 = theta2, 2 = w1, 3 = theta1
        parts = [z] * 4
        parts[block] = at(side, order, s2 if block < 2 else s1)
        return np.concatenate(parts)

    w2, w1 = field(0), field(2)
    jump = field(2, order=1) - field(0, order=1)
    # x-momentum gives the pressure jump (theta2' - mu theta1') / (ik Re);
    # with w'' = theta + k^2 w the viscous normal stress adds (2ik/Re)(w2' - mu w1')
    R = ((field(1, order=1) - mu1 * field(3, order=1)) / (ik * Re)
         + 2 * ik / Re * (field(0, order=1) - mu1 * field(2, order=1)))
    conds = [
        ("interface1:tangential", ik * jump - ik * (U1[1] - U2[1]) * w2, -jump),
        ("interface1:normal", ik * R + ik * cfg.S * k**2 * w2, -R),
        ("interface0:continuity", w1 - w2, None),
        ("interface0:shear", mu1 * (field(3) + 2 * k**2 * w1) - (field(1) + 2 * k**2 * w2), None),
        ("bc:lower:value", field(0, +1, 0), None),
        ("bc:lower:deriv", field(0, +1, 1), None),
        ("bc:upper:value", field(2, +1, 0), None),
        ("bc:upper:deriv", field(2, +1, 1), None),
    ]
    r = A2.shape[0]
    A = np.zeros((2 * r, 4 * M), dtype=complex)
    B = np.zeros_like(A)
    A[:r, :2 * M], B[:r, :2 * M] = A2, B2
    A[r:, 2 * M:], B[r:, 2 * M:] = A1, B1
    A = np.vstack([A] + [c[1][None, :] for c in conds])
    B = np.vstack([B] + [np.zeros((1, 4 * M)) if c[2] is None else c[2][None, :] for c in conds])
    labels = tuple(["bulk0"] * r + ["bulk1"] * r + [c[0] for c in conds])
    return spectral.Pencil(A, B, labels, (M,) * 4, None, {"Re": Re, "k": k, "N": N, "m": cfg.m})


def _solve_two_fluid(pencil: spectral.Pencil, U_interface: float, k: float) -> spectral.Spectrum:
    # c = U_interface is a root of the rows multiplied through by (c - U_i)
    return _solve(pencil, exclude=(-1j * k * U_interface,))


def load_expected_spectrum(path) -> np.ndarray:
    vals = []
    with open(path, newline="", encoding="utf-8") as fh:
        rows = (r for r in fh if r.strip() and not r.lstrip().startswith("#"))
        for row in csv.DictReader(rows):
            vals.append(complex(float(row["re"]), float(row["im"])))
    if not vals:
        raise ValueError(f"{path}: no eigenvalues")
    return np.array(vals)


@dataclass(frozen=True)
class BenchmarkReport:
    N: int
    N_check: int
    convergence: float
    expected_deviation: float | None = None
    leading: tuple[complex, ...] = ()


def two_fluid_benchmark(cfg: BenchmarkConfig, N_check: int | None = None) -> tuple[spectral.Spectrum, BenchmarkReport]:
    """Spectrum at cfg.N plus a self-convergence check of the leading modes at N_check."""
    N_check = cfg.N + 10 if N_check is None else N_check
    spec = _solve_two_fluid(two_fluid_pencil(cfg), 1.0, cfg.k)
    check = _solve_two_fluid(two_fluid_pencil(cfg, N_check), 1.0, cfg.k)
    lead = _leading(spec)
    conv = float(np.max(spectral.match_modes(lead, check.filtered)))
    dev = None
    if cfg.expected is not None:
        dev = float(np.max(spectral.match_modes(load_expected_spectrum(cfg.expected), spec.filtered)))
    return spec, BenchmarkReport(cfg.N, N_check, conv, dev, tuple(complex(z) for z in lead))


# --------------------------------------------------------------------------
# degenerate equivalence

class FlatBaseFlow:
    """Uniform streamwise velocity in both phases, no transverse motion."""

    def __init__(self, U: float, delta_star: float):
        self.U_b = U
        self.delta_star = delta_star
        self._polys = {name: _ZERO for name in ("w", "w_y", "w_yz", "w_zz", "u_y", "u_yy", "u_z", "u_zy")}
        self._polys["u"] = np.array([float(U)])

    def polys(self, phase: str) -> dict:
        return self._polys

    def interface_derivs(self, phase: str) -> dict[str, float]:
        return {"u_y": 0.0, "u_z": 0.0, "w_z": 0.0}


def degenerate_annular_pencil(Re: float, k: float, N: int, U: float = 1.0, x: float = 0.25,
                              regularized: bool = True) -> spectral.Pencil:
    """Annular pencil with one fluid in both phases, no surface tension, flat film and flat profile."""
    groups = DimensionlessGroups(We=math.inf, Re_l=Re, Re_v=Re, Bd=0.0, Bo=0.0,
                                 rho_hat=1.0, rho_bar=1.0, p_r=0.0)
    params = ProblemParams(groups, k=k, N=N)
    geo = film_geometry(x, groups)
    lam = 1j * k * U
    state = InterfaceState(x=x, alpha=geo.alpha, delta_star=geo.delta_star, delta_p=0.0, delta_pp=0.0,
                           U_b=U, W_b=0.0, R1_star=geo.R1_star, I_factor=0.0, beta_nd=0.0, k=k,
                           lam=lam, lam_bar=lam)
    base = FlatBaseFlow(U, geo.delta_star)
    ops = operator_set(state, base, params)
    dmap = spectral.map_domains(geo.delta_star)
    pencil = assemble_operators(ops, dmap, N, meta={"x": x, "k": k, "N": N, "lam": lam})
    return spectral.regularize(pencil) if regularized else pencil


def pencil_is_singular(pencil: spectral.Pencil, rtol: float = 1e-10, trials: int = 3) -> bool:
    """True when A - s B is numerically singular for every tried shift s."""
    rng = np.random.default_rng(0)
    scale = np.linalg.norm(pencil.A) + np.linalg.norm(pencil.B)
    for _ in range(trials):
        s = complex(*rng.normal(size=2))
        sv = np.linalg.svd(pencil.A - s * pencil.B, compute_uv=False)
        if sv[-1] > rtol * scale:
            return False
    return True


@dataclass(frozen=True)
class LinkReport:
    name: str
    passed: bool
    worst: float
    worst_mode: complex | None
    modes_compared: int
    note: str = ""


@dataclass(frozen=True)
class EquivalenceReport:
    links: tuple[LinkReport, ...]
    tolerance: float = EQUIVALENCE_RTOL
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(link.passed for link in self.links)

    def summary(self) -> str:
        lines = []
        for link in self.links:
            status = "PASS" if link.passed else "FAIL"
            mode = "" if link.worst_mode is None else f" at n = {link.worst_mode:.8g}"
            note = f" ({link.note})" if link.note else ""
            lines.append(f"{status} {link.name}: worst {link.worst:.3e} over {link.modes_compared} modes{mode}{note}")
        return "\n".join(lines)


def _compare(name: str, reference: np.ndarray, candidate: np.ndarray, rtol: float, note: str = "") -> LinkReport:
    dev = spectral.match_modes(reference, candidate)
    i = int(np.argmax(dev))
    return LinkReport(name, bool(dev[i] <= rtol), float(dev[i]), complex(reference[i]), len(reference), note)


def degenerate_equivalence_check(Re: float = 1e4, k: float = 1.0, N: int = 100, rtol: float = EQUIVALENCE_RTOL,
                                 inject: float = 0.0) -> EquivalenceReport:
    """Run the oracle chain.

    1. annular problem with one fluid and a flat profile vs single-domain
       Orr-Sommerfeld on the merged interval (wall to axis);
    2. two layers of one fluid (m = 1) vs plane Poiseuille on [-1, 1];
    3. plane Poiseuille leading mode vs the published Re = 1e4, k = 1 value.

    ``inject`` perturbs the upper-layer viscosity in link 2 by that relative
    amount, to exercise the failure path.
    """
    links = []

    # 1. annular, flat profile, merged interval [0, 1/2]
    merged = single_fluid_os(Re, k, N, U=(1.0,), interval=(0.0, 0.5))
    ref = _leading(merged)
    pencil = degenerate_annular_pencil(Re, k, N)
    if pencil_is_singular(pencil):
        links.append(LinkReport("annular-degenerate vs single-fluid", False, math.inf, None, len(ref),
                                "pencil is singular: det(A - sB) vanishes for every s"))
    else:
        try:
            cand = spectral.solve(pencil, tail_tol=spectral.TAIL_TOLERANCE,
                                  exclude=(-complex(pencil.meta["lam"]),)).filtered
            links.append(_compare("annular-degenerate vs single-fluid", ref, cand, rtol))
        except spectral.EigenSolveError as exc:
            links.append(LinkReport("annular-degenerate vs single-fluid", False, math.inf, None, len(ref), str(exc)))

    # 2. two layers of one fluid
    cfg = BenchmarkConfig(Re=Re, mu_ratio=1.0, m=1.0, k=k, N=N)
    poiseuille = single_fluid_os(Re, k, N)
    ref = _leading(poiseuille)
    two = _solve_two_fluid(two_fluid_pencil(cfg, upper_visc_factor=1.0 + inject), 1.0, k)
    links.append(_compare("two-fluid-degenerate vs single-fluid", ref, two.filtered, rtol))

    # 3. anchor
    lead = poiseuille.leading
    dev = abs(lead - ORSZAG_N) / abs(ORSZAG_N)
    links.append(LinkReport("single-fluid vs published value", dev <= rtol, float(dev), lead, 1))
    return EquivalenceReport(tuple(links), rtol, {"Re": Re, "k": k, "N": N, "inject": inject})

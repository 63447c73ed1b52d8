"""Annular base state as a function of vapour quality.

Lengths are in units of D, velocities in units of G / rho_l. The wall sits at
y = 0 and the pipe axis at y = 1/2; z runs downstream. Streamwise derivatives
follow from dx/dz = 4 Bo (the nondimensional form of dx/dz = 4q / (h_gl G D)),
so every z-derivative is (4 Bo)^k times the matching x-derivative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .properties import DimensionlessGroups, FluidProperties, OperatingConditions

LIQUID = "liquid"
VAPOUR = "vapour"

# derivative orders carried for delta(z) and U_b(z)
_ORDERS = 4


class FilmDepletedError(ValueError):
    """Film thickness has collapsed (alpha -> 1)."""


def _check_quality(x: float) -> None:
    if not 0 < x < 1:
        raise ValueError(f"vapour quality must lie in (0, 1), got {x}")


def void_fraction(x: float, rho_hat: float) -> float:
    """Homogeneous closure alpha / (1 - alpha) = rho_hat x / (1 - x)."""
    _check_quality(x)
    return rho_hat * x / (1 + (rho_hat - 1) * x)


def void_fraction_slope(x: float, alpha: float) -> float:
    """d alpha / dx = alpha (1 - alpha) / (x (1 - x))."""
    return alpha * (1 - alpha) / (x * (1 - x))


def _alpha_x_derivs(x: float, rho_hat: float) -> np.ndarray:
    r = rho_hat - 1
    den = 1 + r * x
    return np.array([rho_hat * x / den,
                     rho_hat / den**2,
                     -2 * r * rho_hat / den**3,
                     6 * r**2 * rho_hat / den**4])


def _delta_x_derivs(x: float, rho_hat: float) -> np.ndarray:
    a0, a1, a2, a3 = _alpha_x_derivs(x, rho_hat)
    g = math.sqrt(a0)
    g1 = a1 / (2 * g)
    g2 = a2 / (2 * g) - a1**2 / (4 * g**3)
    g3 = a3 / (2 * g) - 3 * a1 * a2 / (4 * g**3) + 3 * a1**3 / (8 * g**5)
    return np.array([(1 - g) / 2, -g1 / 2, -g2 / 2, -g3 / 2])


def _product_derivs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Leibniz rule on derivative sequences [f, f', f'', ...]."""
    n = min(len(a), len(b))
    return np.array([sum(math.comb(k, j) * a[j] * b[k - j] for j in range(k + 1)) for k in range(n)])


def _quotient_derivs(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Derivatives of num / den from num = q den."""
    n = min(len(num), len(den))
    q = np.zeros(n)
    for k in range(n):
        acc = num[k] - sum(math.comb(k, j) * q[j] * den[k - j] for j in range(k))
        q[k] = acc / den[0]
    return q


def vapour_core_velocity(x: float, alpha: float, rho_hat: float) -> float:
    """Plug velocity of the vapour core, rho_hat x / alpha."""
    return rho_hat * x / alpha


@dataclass(frozen=True)
class FilmGeometry:
    x: float
    alpha: float
    delta_star: float
    delta_p: float
    delta_pp: float
    R1_star: float


def film_geometry(x: float, groups: DimensionlessGroups) -> FilmGeometry:
    """Film thickness delta/D = (1 - sqrt(alpha)) / 2 and its z-slope and curvature."""
    _check_quality(x)
    d = _delta_x_derivs(x, groups.rho_hat)
    if d[0] <= 0:
        raise FilmDepletedError(f"film depleted at x = {x}")
    s = 4 * groups.Bo
    alpha = void_fraction(x, groups.rho_hat)
    return FilmGeometry(x, alpha, float(d[0]), float(s * d[1]), float(s**2 * d[2]), math.sqrt(alpha) / 2)


def dryout_instability_factor(x: float, alpha: float, groups: DimensionlessGroups) -> float:
    """I = 2 (1 - alpha) / (x (1 - x)) * Bo / We."""
    _check_quality(x)
    return 2 * (1 - alpha) / (x * (1 - x)) * groups.Bo / groups.We


def beta_coefficient(delta_star: float, H: float, props: FluidProperties, cond: OperatingConditions) -> float:
    """Interfacial mass-production coefficient, scaled by the time unit D rho_l / G.

    Dimensional beta = (H / h_gl) (1 / (D/2 - delta) + 1 / delta); with lengths
    in D the nondimensional value is (H / (h_gl G)) (1/(1/2 - delta*) + 1/delta*).
    """
    if not 0 < delta_star < 0.5:
        raise ValueError(f"singular film geometry: delta* = {delta_star}")
    if H == 0:
        return 0.0
    return H / (props.h_gl * cond.G) * (1 / (0.5 - delta_star) + 1 / delta_star)


@dataclass(frozen=True)
class BaseFlowSample:
    phase: str
    u: float
    w: float
    u_y: float
    u_z: float
    w_y: float
    w_z: float
    u_yy: float
    u_zy: float
    w_yz: float
    w_zz: float


class AnnularBaseFlow:
    """Linear film profile under a plug vapour core, at one axial station.

    Liquid: u = s(z) y with s = U_b / delta, w from continuity with w(0) = 0.
    Vapour: u = U_b(z), w from continuity with w(1/2) = 0, shifted by a
    constant so that the interface slip W_b = U_b d(delta)/dz holds exactly.
    """

    def __init__(self, x: float, groups: DimensionlessGroups):
        _check_quality(x)
        self.x = x
        self.groups = groups
        rho_hat = groups.rho_hat
        dz = (4 * groups.Bo) ** np.arange(_ORDERS)
        self.delta = _delta_x_derivs(x, rho_hat) * dz
        if self.delta[0] <= 0:
            raise FilmDepletedError(f"film depleted at x = {x}")
        self.U = np.array([1 + (rho_hat - 1) * x, rho_hat - 1, 0.0, 0.0]) * dz
        self.s = _quotient_derivs(self.U, self.delta)
        half_gap = np.concatenate([[0.5 - self.delta[0]], -self.delta[1:]])
        # w shift in the core: c = U delta' - U' (1/2 - delta)
        self.c = _product_derivs(self.U, self.delta[1:]) - _product_derivs(self.U[1:], half_gap)

    @property
    def delta_star(self) -> float:
        return float(self.delta[0])

    @property
    def U_b(self) -> float:
        return float(self.U[0])

    @property
    def W_b(self) -> float:
        return float(self.U[0] * self.delta[1])

    @cached_property
    def liquid_polys(self) -> dict[str, np.ndarray]:
        """Power-series coefficients in y of every liquid base quantity."""
        s, s1, s2, s3 = self.s
        return {
            "u": np.array([0.0, s]), "u_y": np.array([s]), "u_yy": np.array([0.0]),
            "u_z": np.array([0.0, s1]), "u_zy": np.array([s1]),
            "w": np.array([0.0, 0.0, -s1 / 2]), "w_y": np.array([0.0, -s1]),
            "w_z": np.array([0.0, 0.0, -s2 / 2]), "w_yz": np.array([0.0, -s2]),
            "w_zz": np.array([0.0, 0.0, -s3 / 2]),
        }

    @cached_property
    def vapour_polys(self) -> dict[str, np.ndarray]:
        U, U1, U2, U3 = self.U
        c = self.c
        return {
            "u": np.array([U]), "u_y": np.array([0.0]), "u_yy": np.array([0.0]),
            "u_z": np.array([U1]), "u_zy": np.array([0.0]),
            "w": np.array([c[0] + U1 / 2, -U1]), "w_y": np.array([-U1]),
            "w_z": np.array([c[1] + U2 / 2, -U2]), "w_yz": np.array([-U2]),
            "w_zz": np.array([c[2] + U3 / 2, -U3]),
        }

    def polys(self, phase: str) -> dict[str, np.ndarray]:
        if phase == LIQUID:
            return self.liquid_polys
        if phase == VAPOUR:
            return self.vapour_polys
        raise ValueError(f"unknown phase {phase!r}")

    def sample(self, y: float, phase: str) -> BaseFlowSample:
        lo, hi = (0.0, self.delta_star) if phase == LIQUID else (self.delta_star, 0.5)
        if not lo - 1e-14 <= y <= hi + 1e-14:
            raise ValueError(f"y = {y} outside the {phase} range [{lo}, {hi}]")
        vals = {k: float(np.polynomial.polynomial.polyval(y, p)) for k, p in self.polys(phase).items()}
        return BaseFlowSample(phase, **vals)

    def interface_derivs(self, phase: str) -> dict[str, float]:
        """One-sided partial derivatives of u and w at y = delta."""
        p = self.polys(phase)
        y = self.delta_star
        return {k: float(np.polynomial.polynomial.polyval(y, p[k])) for k in ("u_y", "u_z", "w_z")}


def base_flow_field(base: AnnularBaseFlow, y: float, phase: str) -> BaseFlowSample:
    return base.sample(y, phase)


@dataclass(frozen=True)
class InterfaceState:
    x: float
    alpha: float
    delta_star: float
    delta_p: float
    delta_pp: float
    U_b: float
    W_b: float
    R1_star: float
    I_factor: float
    beta_nd: float
    k: float
    lam: complex
    lam_bar: complex


def interface_state(x: float, groups: DimensionlessGroups, k: float, beta_nd: float = 0.0) -> InterfaceState:
    geo = film_geometry(x, groups)
    U_b = vapour_core_velocity(x, geo.alpha, groups.rho_hat)
    ik = 1j * k
    lam = beta_nd + ik * U_b
    lam_bar = (beta_nd + groups.rho_bar * ik * U_b) / groups.rho_bar
    return InterfaceState(
        x=x, alpha=geo.alpha, delta_star=geo.delta_star, delta_p=geo.delta_p, delta_pp=geo.delta_pp,
        U_b=U_b, W_b=U_b * geo.delta_p, R1_star=geo.R1_star,
        I_factor=dryout_instability_factor(x, geo.alpha, groups),
        beta_nd=beta_nd, k=k, lam=lam, lam_bar=lam_bar,
    )

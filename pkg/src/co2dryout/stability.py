"""Linearised interfacial-stability problem for the annular film.

Perturbations are w~(y) exp(i k z + n t) per phase. The liquid lives on the
mapped interval y_l in [-1, 1] (interface at -1, wall at +1) and the vapour on
y_v in [-1, 1] (interface at -1, axis at +1). All operators are assembled in
Chebyshev coefficient space with ``N + 4`` coefficients per phase, so the full
pencil is (2N + 8) square before regularization and (2N + 3) after.

Operator descriptors use physical derivatives D = d/dy; a descriptor is a list
indexed by derivative order. Bulk descriptors hold power series in y, interface
descriptors hold plain complex numbers (the functional is evaluated at the
interface).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import spectral
from .baseflow import (LIQUID, VAPOUR, AnnularBaseFlow, InterfaceState, beta_coefficient,
                       interface_state)
from .properties import DimensionlessGroups, FluidProperties, OperatingConditions

# Growth conventions for the bulk rows.
# "consistent": bulk rows X w = n (D^2 - k^2) w, matching the interface rows and
#   the rule "Re(n) > 0 is unstable".
# "printed": bulk rows X w = n W w with W = -(D^2 - k^2) as typeset, which puts
#   the viscously damped bulk modes at Re(n) > 0.
CONVENTIONS = ("consistent", "printed")


@dataclass(frozen=True)
class ProblemParams:
    groups: DimensionlessGroups
    k: float
    N: int = 20
    H: float = 0.0
    props: FluidProperties | None = None
    cond: OperatingConditions | None = None
    convention: str = "consistent"

    def __post_init__(self):
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValueError(f"wavenumber must be positive, got {self.k}")
        if self.N < 12:
            raise ValueError(f"N must be at least 12, got {self.N}")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}")
        if self.H and (self.props is None or self.cond is None):
            raise ValueError("H != 0 needs props and cond to scale beta")

    def with_(self, **changes) -> "ProblemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class InterfaceCondition:
    """(A_l, A_v) w = n (B_l, B_v) w at the interface, each a list over D-order."""

    a_l: tuple
    a_v: tuple
    b_l: tuple | None = None
    b_v: tuple | None = None


@dataclass(frozen=True)
class OperatorSet:
    X: list
    Y: list
    W: list
    ic1: InterfaceCondition
    ic2: InterfaceCondition
    ic3: InterfaceCondition
    tangential: InterfaceCondition
    meta: dict = field(default_factory=dict)


def _series(*terms) -> np.ndarray:
    """Sum power series of different lengths."""
    n = max(len(np.atleast_1d(t)) for t in terms)
    out = np.zeros(n, dtype=complex)
    for t in terms:
        t = np.atleast_1d(np.asarray(t, dtype=complex))
        out[:len(t)] += t
    return out


def bulk_descriptor(polys: dict, k: float, visc: float) -> list:
    """Orr-Sommerfeld-type operator with general base flow, as D-order coefficients.

    visc (D^2 - k^2)^2 - ik (w_yz - u_yy) - w (D^3 - k^2 D)
        + (w_zz - u_zy) D - ik u (D^2 - k^2)
    """
    ik = 1j * k
    u, w = polys["u"], polys["w"]
    return [
        _series([visc * k**4], -ik * _series(polys["w_yz"], -polys["u_yy"]), ik * k**2 * u),
        _series(k**2 * w, polys["w_zz"], -polys["u_zy"]),
        _series([-2 * k**2 * visc], -ik * u),
        _series(-w),
        _series([visc]),
    ]


def bulk_operators(base, params: ProblemParams) -> tuple[list, list, list]:
    g, k = params.groups, params.k
    X = bulk_descriptor(base.polys(LIQUID), k, 1 / g.Re_l)
    Y = bulk_descriptor(base.polys(VAPOUR), k, g.rho_hat / g.Re_v)
    W = [np.array([k**2 + 0j]), np.array([0j]), np.array([-1 + 0j])]
    return X, Y, W


def _momentum_condition(lam, gamma, dp, A, B, C1, C2, E1, E2, F1, F2) -> InterfaceCondition:
    """Shared layout of both momentum-balance rows."""
    return InterfaceCondition(
        a_l=(lam * (C1 + B), lam * (E1 - gamma * dp * B), lam * F1),
        a_v=(-lam * C2, -lam * E2, -lam * F2),
        b_l=(-C1 - A, -E1 + gamma * dp * A, -F1),
        b_v=(C2, E2, F2),
    )


def interface_operators(state: InterfaceState, base, params: ProblemParams) -> dict[str, InterfaceCondition]:
    g, k = params.groups, params.k
    ik = 1j * k
    gamma = -1 / ik
    dp, dpp = state.delta_p, state.delta_pp
    U, W = state.U_b, state.W_b
    rb = g.rho_bar
    inv_we = 0.0 if math.isinf(g.We) else 1 / g.We
    ire_l, ire_v = 1 / g.Re_l, 1 / g.Re_v
    if not math.isfinite(dp) or not math.isfinite(dpp):
        raise FloatingPointError("non-finite film slope or curvature")
    lam, lam_bar = state.lam, state.lam_bar
    liq = base.interface_derivs(LIQUID)
    vap = base.interface_derivs(VAPOUR)

    ic1 = InterfaceCondition(
        a_l=(lam_bar, -lam_bar * gamma * dp),
        a_v=(-lam, lam * gamma * dp),
        b_l=(-1.0, gamma * dp),
        b_v=(1.0, -gamma * dp),
    )
    ic2 = _momentum_condition(
        lam, gamma, dp,
        A=U * (rb - 1),
        B=(-ik * U**2 + ik * rb * U**2 + ire_l * 2 * liq["u_z"] * ik - ire_v * 2 * vap["u_z"] * ik
           - inv_we * k**2 * dp + inv_we * (1 / state.R1_star + dpp) * ik),
        C1=U - ire_l * ik, C2=rb * U - ire_v * ik,
        E1=-2 * gamma * U * dp + W * gamma + 2 * ire_l * ik * gamma * dp,
        E2=-2 * gamma * U * rb * dp + W * gamma * rb + 2 * ire_v * ik * gamma * dp,
        F1=-ire_l * gamma, F2=-ire_v * gamma,
    )
    ic3 = _momentum_condition(
        lam, gamma, dp,
        A=W * (rb - 1),
        B=(-ik * W * U + ire_l * (liq["u_y"] + liq["w_z"]) * ik + inv_we * k**2
           + ik * rb * U * W - ire_v * (vap["u_y"] + vap["w_z"]) * ik),
        C1=2 * W - dp * U + ire_l * dp * ik, C2=2 * rb * W - rb * U * dp + ire_v * ik * dp,
        E1=-gamma * W * dp - 2 * ire_l, E2=-gamma * W * rb * dp - 2 * ire_v,
        F1=ire_l * gamma * dp, F2=ire_v * gamma * dp,
    )
    tangential = InterfaceCondition(a_l=(0.0, 1.0), a_v=(0.0, -1.0))
    return {"ic1": ic1, "ic2": ic2, "ic3": ic3, "tangential": tangential}


def operator_set(state: InterfaceState, base, params: ProblemParams) -> OperatorSet:
    X, Y, W = bulk_operators(base, params)
    ics = interface_operators(state, base, params)
    return OperatorSet(X, Y, W, **ics, meta={"x": state.x, "k": params.k})


def _bulk_matrix(descr: list, M: int, affine, scale: float) -> np.ndarray:
    coeffs = [spectral.to_mapped_series(c, affine) for c in descr]
    try:
        return spectral.poly_operator(coeffs, M, scale)
    except FloatingPointError as exc:
        raise FloatingPointError(f"{exc} (affine map {affine})") from None


def _cond_rows(cond: InterfaceCondition, M: int, dmap: spectral.DomainMap):
    def row(cl, cv):
        return np.concatenate([spectral.functional(cl, M, -1, dmap.scale_l),
                               spectral.functional(cv, M, -1, dmap.scale_v)])
    a = row(cond.a_l, cond.a_v)
    b = None if cond.b_l is None else row(cond.b_l, cond.b_v)
    return a, b


def boundary_rows(M: int, dmap: spectral.DomainMap) -> list[tuple[str, np.ndarray, None]]:
    """No-penetration and no-slip at the wall and at the axis, in the paper's row order."""
    z = np.zeros(M)
    rows = []
    for label, side_scale, liquid in (("centerline", dmap.scale_v, False), ("wall", dmap.scale_l, True)):
        for name, order in (("value", 0), ("deriv", 1)):
            r = spectral.endpoint_row(M, +1, order) * side_scale**order
            full = np.concatenate([r, z] if liquid else [z, r])
            rows.append((f"{label}:{name}", full, None))
    return rows


def assemble_operators(ops: OperatorSet, dmap: spectral.DomainMap, N: int,
                       convention: str = "consistent", meta: dict | None = None) -> spectral.Pencil:
    M = N + 4
    Xm = _bulk_matrix(ops.X, M, dmap.liquid_affine, dmap.scale_l)[:N]
    Ym = _bulk_matrix(ops.Y, M, dmap.vapour_affine, dmap.scale_v)[:N]
    sign = -1.0 if convention == "consistent" else 1.0
    Wl = sign * _bulk_matrix(ops.W, M, dmap.liquid_affine, dmap.scale_l)[:N]
    Wv = sign * _bulk_matrix(ops.W, M, dmap.vapour_affine, dmap.scale_v)[:N]
    conditions = []
    for name in ("ic1", "ic2", "ic3", "tangential"):
        a, b = _cond_rows(getattr(ops, name), M, dmap)
        conditions.append((name, a, b))
    conditions += boundary_rows(M, dmap)
    return spectral.assemble([Xm, Ym], [Wl, Wv], conditions, meta=meta)


def _state(params: ProblemParams, x: float):
    base = AnnularBaseFlow(x, params.groups)
    beta = 0.0
    if params.H:
        beta = beta_coefficient(base.delta_star, params.H, params.props, params.cond)
    return base, interface_state(x, params.groups, params.k, beta)


def assemble_problem(params: ProblemParams, x: float) -> spectral.Pencil:
    """Unregularized (2N + 8) pencil at vapour quality x."""
    base, state = _state(params, x)
    ops = operator_set(state, base, params)
    dmap = spectral.map_domains(state.delta_star)
    return assemble_operators(ops, dmap, params.N, params.convention,
                              meta={"x": x, "k": params.k, "N": params.N, "lam": state.lam})


def build_problem(params: ProblemParams, x: float) -> spectral.Pencil:
    """Regularized (2N + 3) pencil at vapour quality x."""
    return spectral.regularize(assemble_problem(params, x))


def extraneous_root(pencil: spectral.Pencil) -> complex:
    """n = -lambda, introduced when the interface rows are cleared of the
    (lambda + n) denominator of the interface displacement.

    At this n every interface row vanishes once the liquid kinematic numerator
    does, so it is an eigenvalue of the assembled pencil for any base state but
    not a solution of the problem with the displacement kept as an unknown.
    """
    return -complex(pencil.meta["lam"])


def solve_problem(pencil: spectral.Pencil, keep_extraneous: bool = False,
                  tail_tol: float | None = spectral.TAIL_TOLERANCE) -> spectral.Spectrum:
    """Spectrum with unresolved tau modes and the extraneous root removed."""
    exclude = () if keep_extraneous else (extraneous_root(pencil),)
    return spectral.solve(pencil, tail_tol=tail_tol, exclude=exclude)


def spectrum(params: ProblemParams, x: float, **kw) -> spectral.Spectrum:
    return solve_problem(build_problem(params, x), **kw)


def leading_eigenvalue(params: ProblemParams, x: float) -> complex:
    return spectrum(params, x).leading

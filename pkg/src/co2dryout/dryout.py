"""Dryout inception as the first quality at which the interface turns unstable.

The procedure per operating point: evaluate the leading eigenvalue on a coarse
quality grid, bracket the first sign change of its real part, refine by
bisection. Sweeps repeat this over mass flux; calibration tunes the wavenumber
so the reference point lands on a target quality.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .baseflow import dryout_instability_factor, void_fraction
from .properties import dimensionless_groups
from .stability import ProblemParams, leading_eigenvalue

DEFAULT_SCAN = (0.05, 0.95, 0.05)
DEFAULT_TOL = 1e-3
DEFAULT_K_RANGE = (0.01, 10.0)

GrowthFn = Callable[[float], complex]


class CalibrationError(RuntimeError):
    """No wavenumber in the search range produces a dryout bracket."""


class SweepError(RuntimeError):
    """Every point of a sweep failed."""


@dataclass(frozen=True)
class DryoutResult:
    x_dry: float
    bracket: tuple[float, float]          # (x_stable, x_unstable)
    iterations: int
    leading_at_bracket: tuple[complex, complex]
    scan: tuple[tuple[float, complex], ...] = ()
    crossings: tuple[tuple[float, float], ...] = ()

    found = True

    def __post_init__(self):
        (xs, xu), (ns, nu) = self.bracket, self.leading_at_bracket
        if not (ns.real < 0 <= nu.real):
            raise ValueError(f"bracket does not straddle a sign change: n_r = {ns.real}, {nu.real} at {xs}, {xu}")


@dataclass(frozen=True)
class NoDryout:
    """The leading real part keeps one sign over the whole scan grid."""

    scan: tuple[tuple[float, complex], ...]
    unstable: bool

    found = False
    x_dry = None

    @property
    def reason(self) -> str:
        state = "unstable" if self.unstable else "stable"
        lo, hi = self.scan[0][0], self.scan[-1][0]
        return f"no dryout in range: interface {state} for every x in [{lo:g}, {hi:g}]"


def growth_rate(params: ProblemParams, x: float) -> complex:
    """Leading eigenvalue at quality x; Re(n) >= 0 counts as unstable."""
    if not 0 < x < 1:
        raise ValueError(f"vapour quality must lie in (0, 1), got {x}")
    return leading_eigenvalue(params, x)


def scan_grid(scan: tuple[float, float, float] = DEFAULT_SCAN) -> np.ndarray:
    lo, hi, step = scan
    if not (0 < lo < hi < 1) or step <= 0:
        raise ValueError(f"scan grid must satisfy 0 < lo < hi < 1 and step > 0, got {scan}")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return np.round(lo + step * np.arange(n + 1), 12)


def _unstable(n: complex) -> bool:
    return n.real >= 0


def find_x_dry(params: ProblemParams | None = None, scan=DEFAULT_SCAN, tol: float = DEFAULT_TOL,
               growth: GrowthFn | None = None) -> DryoutResult | NoDryout:
    """Bracket the first sign change of Re(n) on the grid and bisect it to ``tol``.

    ``growth`` replaces the eigenvalue solve (x -> n or n_r) when given.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if growth is None:
        if params is None:
            raise ValueError("need params or a growth function")
        growth = lambda x: growth_rate(params, x)  # noqa: E731
    evaluate = lambda x: complex(growth(float(x)))  # noqa: E731

    xs = scan_grid(scan)
    values = [evaluate(x) for x in xs]
    table = tuple(zip(map(float, xs), values))
    flags = [_unstable(n) for n in values]
    crossings = tuple((float(xs[i]), float(xs[i + 1])) for i in range(len(xs) - 1) if flags[i] != flags[i + 1])
    if not crossings:
        return NoDryout(table, unstable=flags[0])

    i = next(i for i in range(len(xs) - 1) if flags[i] != flags[i + 1])
    (a, na), (b, nb) = table[i], table[i + 1]
    if flags[i]:
        (a, na), (b, nb) = (b, nb), (a, na)
    # a stays stable, b stays unstable
    iterations = 0
    while abs(b - a) > tol:
        mid = 0.5 * (a + b)
        nm = evaluate(mid)
        iterations += 1
        if _unstable(nm):
            b, nb = mid, nm
        else:
            a, na = mid, nm
    return DryoutResult(0.5 * (a + b), (a, b), iterations, (na, nb), table, crossings)


# --------------------------------------------------------------------------
# sweeps

def params_at_G(params: ProblemParams, G: float) -> ProblemParams:
    """Same fluid, diameter, heat flux and wavenumber at another mass flux."""
    if params.props is None or params.cond is None:
        raise ValueError("sweeps need ProblemParams with props and cond")
    cond = replace(params.cond, G=float(G))
    return params.with_(cond=cond, groups=dimensionless_groups(params.props, cond))


@dataclass(frozen=True)
class DryoutCurve:
    outcomes: tuple[tuple[float, DryoutResult | NoDryout | None], ...]
    meta: dict = field(default_factory=dict)
    failures: tuple[tuple[float, str], ...] = ()

    @property
    def points(self) -> list[tuple[float, DryoutResult]]:
        return [(G, r) for G, r in self.outcomes if r is not None and r.found]

    def is_increasing(self, exclude_lowest: bool = False) -> bool:
        """x_dry strictly increasing in G over all outcomes (optionally from the second G on)."""
        rows = list(self.outcomes[1:] if exclude_lowest else self.outcomes)
        if len(rows) < 2 or any(r is None or not r.found for _, r in rows):
            return False
        x = [r.x_dry for _, r in rows]
        return all(b > a for a, b in zip(x, x[1:]))


def _map_ordered(fn, items, max_workers):
    if max_workers == 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, items))


def sweep_G(params: ProblemParams, G_list: Sequence[float], scan=DEFAULT_SCAN, tol: float = DEFAULT_TOL,
            max_workers: int | None = None,
            growth_factory: Callable[[ProblemParams], GrowthFn] | None = None) -> DryoutCurve:
    """find_x_dry at each mass flux with T_sat, q, D and k held fixed.

    Points run concurrently and come back in input order. A failing point is
    reported as a warning and recorded; the sweep fails only if all points do.
    """
    G_list = [float(g) for g in G_list]
    if not G_list:
        raise ValueError("empty G list")
    if any(b <= a for a, b in zip(G_list, G_list[1:])):
        raise ValueError("G list must be strictly increasing")

    def one(G):
        p = params_at_G(params, G)
        try:
            growth = growth_factory(p) if growth_factory else None
            return find_x_dry(p, scan, tol, growth), None
        except (ArithmeticError, ValueError, RuntimeError, np.linalg.LinAlgError) as exc:
            return None, f"{type(exc).__name__}: {exc}"

    results = _map_ordered(one, G_list, max_workers)
    failures = tuple((G, err) for G, (_, err) in zip(G_list, results) if err)
    for G, err in failures:
        warnings.warn(f"G = {G:g}: {err}", RuntimeWarning, stacklevel=2)
    if len(failures) == len(G_list):
        raise SweepError("every sweep point failed: " + "; ".join(e for _, e in failures))
    c = params.cond
    meta = {"T_sat": c.T_sat, "q": c.q, "D": c.D, "k": params.k, "N": params.N,
            "fluid": params.props.fluid_name}
    return DryoutCurve(tuple((G, r) for G, (r, _) in zip(G_list, results)), meta, failures)


@dataclass(frozen=True)
class CorrelationPoint:
    G: float
    q: float
    T_sat: float
    D: float
    x_dry: float | None
    I_factor: float | None


def instability_factor_at(params: ProblemParams, x: float) -> float:
    g = params.groups
    return dryout_instability_factor(x, void_fraction(x, g.rho_hat), g)


def instability_correlation(configs: Sequence[ProblemParams], scan=DEFAULT_SCAN, tol: float = DEFAULT_TOL,
                            max_workers: int | None = None,
                            growth_factory: Callable[[ProblemParams], GrowthFn] | None = None
                            ) -> list[CorrelationPoint]:
    """(I at x_dry, x_dry) for each configuration; None entries where no dryout was found."""
    def one(p):
        growth = growth_factory(p) if growth_factory else None
        res = find_x_dry(p, scan, tol, growth)
        c = p.cond
        if not res.found:
            return CorrelationPoint(c.G, c.q, c.T_sat, c.D, None, None)
        return CorrelationPoint(c.G, c.q, c.T_sat, c.D, res.x_dry, instability_factor_at(p, res.x_dry))
    return _map_ordered(one, list(configs), max_workers)


# --------------------------------------------------------------------------
# wavenumber calibration

@dataclass(frozen=True)
class CalibrationResult:
    k: float
    x_dry: float
    x_target: float
    scan: tuple[tuple[float, float | None], ...]
    evaluations: int


_GOLDEN = (math.sqrt(5) - 1) / 2


def calibrate_k(params: ProblemParams | None, G_ref: float, x_target: float, k_range=DEFAULT_K_RANGE,
                n_scan: int = 25, rtol: float = 1e-3, scan=DEFAULT_SCAN, tol: float = DEFAULT_TOL,
                x_dry_of_k: Callable[[float], float | None] | None = None) -> CalibrationResult:
    """Wavenumber minimising |x_dry(k; G_ref) - x_target|.

    Log-spaced scan over ``k_range``, then golden-section search in log k on
    the cell around the best scan point until |dk|/k < rtol. ``x_dry_of_k``
    replaces the eigenvalue path (return None for "no dryout").
    """
    if not 0 < x_target < 1:
        raise ValueError(f"x_target must lie in (0, 1), got {x_target}")
    k_lo, k_hi = k_range
    if not 0 < k_lo < k_hi:
        raise ValueError(f"invalid k range {k_range}")
    if x_dry_of_k is None:
        if params is None:
            raise ValueError("need params or an x_dry(k) function")
        base = params_at_G(params, G_ref)

        def x_dry_of_k(k):
            res = find_x_dry(base.with_(k=k), scan, tol)
            return res.x_dry if res.found else None

    cache: dict[float, float | None] = {}

    def x_at(logk):
        if logk not in cache:
            cache[logk] = x_dry_of_k(math.exp(logk))
        return cache[logk]

    def cost(logk):
        x = x_at(logk)
        return math.inf if x is None else abs(x - x_target)

    grid = np.linspace(math.log(k_lo), math.log(k_hi), n_scan)
    costs = [cost(float(g)) for g in grid]
    report = tuple((math.exp(float(g)), x_at(float(g))) for g in grid)
    if all(math.isinf(c) for c in costs):
        lines = ", ".join(f"k={k:.4g}: none" for k, _ in report)
        raise CalibrationError(f"no k in [{k_lo:g}, {k_hi:g}] gives a dryout bracket ({lines})")

    i = int(np.argmin(costs))
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, n_scan - 1)])
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    while b - a > rtol:
        if cost(c) <= cost(d):
            b, d = d, c
            c = b - _GOLDEN * (b - a)
        else:
            a, c = c, d
            d = a + _GOLDEN * (b - a)
    best = min((lk for lk in cache if x_at(lk) is not None), key=cost)
    return CalibrationResult(math.exp(best), x_at(best), x_target, report, len(cache))

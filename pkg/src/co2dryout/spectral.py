"""Chebyshev-tau machinery in coefficient space.

Every unknown field is a truncated Chebyshev series on [-1, 1]; operators are
dense matrices acting on coefficient vectors. Two-domain problems stack the
coefficient vectors of both domains, and condition rows are linear functionals
on the stacked vector.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.linalg
from numpy.polynomial import chebyshev as C

# Rows whose B-part is identically zero; regularize() eliminates these.
CONSTRAINT_LABELS = frozenset({"tangential", "wall", "centerline", "bc", "interface0"})

FILTER_THRESHOLD = 1e6

# relative size of the top Chebyshev coefficients above which a mode counts as unresolved
TAIL_TOLERANCE = 1e-3


class SingularEliminationError(np.linalg.LinAlgError):
    pass


class EigenSolveError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# operators on coefficient vectors

def diff_matrix(n: int, order: int = 1) -> np.ndarray:
    """n x n differentiation matrix in Chebyshev coefficient space.

    Uses d_i = (2 / c_i) * sum_{j > i, i + j odd} j a_j with c_0 = 2, c_i = 1,
    so entries are integers and the operator is exact on degree < n.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    D1 = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n, 2):
            D1[i, j] = 2.0 * j
    if n:
        D1[0, :] *= 0.5
    return np.linalg.matrix_power(D1, order)


@dataclass(frozen=True)
class DiffOperator:
    N: int
    order: int
    entries: np.ndarray


def chebyshev_diff(N: int, order: int) -> DiffOperator:
    if not 0 <= order <= 4:
        raise ValueError("order must be in 0..4")
    if order and N < order + 2:
        raise ValueError(f"need N >= order + 2, got N={N}, order={order}")
    return DiffOperator(N, order, diff_matrix(N, order))


def mult_matrix(p: Sequence[complex], n: int) -> np.ndarray:
    """Matrix of multiplication by the Chebyshev series ``p``, truncated to n terms.

    T_j T_k = (T_{j+k} + T_{|j-k|}) / 2.
    """
    p = np.asarray(p)
    M = np.zeros((n, n), dtype=np.result_type(p, float))
    for k, pk in enumerate(p):
        if pk == 0:
            continue
        for j in range(n):
            if j + k < n:
                M[j + k, j] += 0.5 * pk
            M[abs(j - k), j] += 0.5 * pk
    return M


def endpoint_row(n: int, side: int, order: int = 0) -> np.ndarray:
    """Functional returning the ``order``-th derivative at y = side (+1 or -1)."""
    row = np.array([float(side) ** j for j in range(n)])
    if order:
        row = row @ diff_matrix(n, order)
    return row


def poly_operator(coeffs: Sequence, n: int, scale: float = 1.0) -> np.ndarray:
    """Matrix of sum_p c_p(y) (scale * d/dy)^p.

    ``coeffs[p]`` is a Chebyshev series (or scalar) for the coefficient of the
    p-th derivative in the mapped variable.
    """
    D1 = diff_matrix(n, 1)
    out = np.zeros((n, n), dtype=complex)
    Dp = np.eye(n)
    for p, cp in enumerate(coeffs):
        if p:
            Dp = scale * (D1 @ Dp)
        cp = np.atleast_1d(np.asarray(cp, dtype=complex))
        if not np.any(cp):
            continue
        if not np.all(np.isfinite(cp)):
            raise FloatingPointError(f"non-finite coefficient for derivative order {p}")
        out += mult_matrix(cp, n) @ Dp
    return out


def functional(coeffs: Sequence[complex], n: int, side: int, scale: float = 1.0) -> np.ndarray:
    """Row evaluating sum_p coeffs[p] (scale d/dy)^p f at the endpoint ``side``."""
    row = np.zeros(n, dtype=complex)
    for p, cp in enumerate(coeffs):
        if cp:
            row += cp * scale**p * endpoint_row(n, side, p)
    return row


def to_mapped_series(poly_in_y: Sequence[float], y_of_t: tuple[float, float]) -> np.ndarray:
    """Re-express a power series in physical y as a Chebyshev series in mapped t.

    ``y_of_t = (a, b)`` gives y = a + b t.
    """
    P = np.polynomial.Polynomial(np.asarray(poly_in_y, dtype=complex))
    composed = P(np.polynomial.Polynomial([y_of_t[0], y_of_t[1]]))
    return C.poly2cheb(composed.coef)


# --------------------------------------------------------------------------
# two-domain geometry

@dataclass(frozen=True)
class DomainMap:
    """Liquid film and vapour core mapped to [-1, 1] each, interface at -1 in both.

    Physical y runs from the wall (0) to the centreline (1/2) in units of D.
    """

    delta_star: float
    m: float
    scale_l: float
    scale_v: float

    def y_liquid(self, t):
        return self.delta_star * (1 - np.asarray(t)) / 2

    def y_vapour(self, t):
        return self.delta_star * (1 + self.m * (np.asarray(t) + 1) / 2)

    @property
    def liquid_affine(self) -> tuple[float, float]:
        # y = a + b t in the liquid
        return self.delta_star / 2, -self.delta_star / 2

    @property
    def vapour_affine(self) -> tuple[float, float]:
        h = self.delta_star * self.m / 2
        return self.delta_star + h, h


def map_domains(delta_star: float) -> DomainMap:
    if not 0 < delta_star < 0.5:
        raise ValueError(f"delta_star must lie in (0, 1/2), got {delta_star}")
    m = 1 / (2 * delta_star) - 1
    return DomainMap(delta_star, m, -2 / delta_star, 2 / (m * delta_star))


# --------------------------------------------------------------------------
# pencils

@dataclass(frozen=True)
class Pencil:
    """A x = n B x with a provenance label per row and a block size per domain."""

    A: np.ndarray
    B: np.ndarray
    row_labels: tuple[str, ...]
    n_coeffs: tuple[int, ...]
    # columns kept after regularization, as indices into the assembled layout
    columns: tuple[int, ...] | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return self.A.shape[0]


def assemble(bulk_A: Sequence[np.ndarray], bulk_B: Sequence[np.ndarray],
             conditions: Sequence[tuple[str, np.ndarray, np.ndarray | None]],
             meta: dict | None = None) -> Pencil:
    """Stack per-domain bulk blocks and condition rows into one square pencil.

    ``bulk_A[d]`` / ``bulk_B[d]`` are (rows_d x n_d) operator blocks for domain
    d, already tau-truncated. ``conditions`` are (label, A_row, B_row) triples
    acting on the concatenated coefficient vector; ``B_row=None`` means the
    condition carries no eigenvalue.
    """
    n_coeffs = tuple(b.shape[1] for b in bulk_A)
    total = sum(n_coeffs)
    rows_A, rows_B, labels = [], [], []
    offset = 0
    for d, (a, b) in enumerate(zip(bulk_A, bulk_B)):
        if a.shape != b.shape:
            raise ValueError(f"domain {d}: A block {a.shape} and B block {b.shape} differ")
        pad = np.zeros((a.shape[0], total), dtype=complex)
        padb = pad.copy()
        pad[:, offset:offset + a.shape[1]] = a
        padb[:, offset:offset + b.shape[1]] = b
        rows_A.append(pad)
        rows_B.append(padb)
        labels += [f"bulk{d}"] * a.shape[0]
        offset += a.shape[1]
    for label, ra, rb in conditions:
        ra = np.asarray(ra, dtype=complex)
        if ra.shape != (total,):
            raise ValueError(f"condition {label!r} has length {ra.shape}, expected {total}")
        rows_A.append(ra[None, :])
        rows_B.append(np.zeros((1, total), dtype=complex) if rb is None
                      else np.asarray(rb, dtype=complex)[None, :])
        labels.append(label)
    A = np.vstack(rows_A)
    B = np.vstack(rows_B)
    if A.shape[0] != total:
        raise ValueError(f"pencil is {A.shape[0]} x {total}, not square")
    return Pencil(A, B, tuple(labels), n_coeffs, None, dict(meta or {}))


def _candidate_columns(n_coeffs: Sequence[int], per_domain: int) -> list[int]:
    cols, offset = [], 0
    for n in n_coeffs:
        cols += list(range(offset + n - per_domain, offset + n))
        offset += n
    return cols


def regularize(pencil: Pencil, per_domain: int = 3, rtol: float = 1e-10) -> Pencil:
    """Eliminate the eigenvalue-free condition rows.

    Each such row is a homogeneous linear constraint C x = 0. Solving it for as
    many high-index coefficients (picked by column-pivoted QR among the last
    ``per_domain`` coefficients of every domain) removes those rows and columns
    and leaves an equivalent pencil of reduced size whose B is nonsingular in
    the generic case.
    """
    is_con = np.array([lab.split(":")[0] in CONSTRAINT_LABELS for lab in pencil.row_labels])
    if np.any(np.abs(pencil.B[is_con]) > 0):
        raise ValueError("rows labelled as constraints carry eigenvalue terms")
    Cm = pencil.A[is_con]
    n_con = Cm.shape[0]
    if n_con == 0:
        return pencil
    cand = _candidate_columns(pencil.n_coeffs, per_domain)
    if n_con > len(cand):
        raise ValueError("more constraints than candidate pivot columns")
    _, R, piv = scipy.linalg.qr(Cm[:, cand], mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag[-1] <= rtol * diag[0]:
        raise SingularEliminationError(
            "constraint rows are linearly dependent on the candidate pivot columns; "
            "increase per_domain or check for duplicated boundary rows")
    elim = sorted(cand[i] for i in piv[:n_con])
    keep = [j for j in range(pencil.A.shape[1]) if j not in set(elim)]
    # x_elim = -Ce^{-1} Ck x_keep
    S = -np.linalg.solve(Cm[:, elim], Cm[:, keep])
    rest = ~is_con
    A = pencil.A[rest][:, keep] + pencil.A[rest][:, elim] @ S
    B = pencil.B[rest][:, keep] + pencil.B[rest][:, elim] @ S
    labels = tuple(l for l, c in zip(pencil.row_labels, is_con) if not c)
    meta = dict(pencil.meta, eliminated=tuple(elim), elimination=S)
    return Pencil(A, B, labels, pencil.n_coeffs, tuple(keep), meta)


def reconstruct(pencil: Pencil, v: np.ndarray) -> np.ndarray:
    """Full coefficient vector from a reduced eigenvector."""
    if pencil.columns is None:
        return v
    total = sum(pencil.n_coeffs)
    out = np.zeros(total, dtype=complex)
    out[list(pencil.columns)] = v
    out[list(pencil.meta["eliminated"])] = pencil.meta["elimination"] @ v
    return out


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    filtered: np.ndarray
    leading: complex
    # per-eigenvalue flag, aligned with ``eigenvalues``: True if kept in ``filtered``
    kept: np.ndarray | None = None
    # per-eigenvalue reason for rejection ("" when kept)
    reasons: tuple[str, ...] = ()

    def top(self, count: int = 10) -> np.ndarray:
        """The ``count`` filtered eigenvalues of largest real part, descending."""
        order = np.argsort(-self.filtered.real, kind="stable")
        return self.filtered[order[:count]]


def filter_spectrum(eigs: np.ndarray, threshold: float = FILTER_THRESHOLD) -> np.ndarray:
    eigs = np.asarray(eigs)
    ok = np.isfinite(eigs) & (np.abs(eigs) <= threshold)
    return eigs[ok]


def equilibrate(A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row and column scaling of the pair by powers of two.

    Returns (A', B', c) with A' = R A C, B' = R B C and c the diagonal of C, so
    eigenvectors of the scaled pair map back as x = c * x'.
    """
    def pow2(v):
        v = np.where(v > 0, v, 1.0)
        return 2.0 ** -np.round(np.log2(v))
    r = pow2(np.maximum(np.abs(A).max(axis=1), np.abs(B).max(axis=1)))
    A1, B1 = A * r[:, None], B * r[:, None]
    c = pow2(np.maximum(np.abs(A1).max(axis=0), np.abs(B1).max(axis=0)))
    return A1 * c, B1 * c, c


def coefficient_tails(pencil: Pencil, vectors: np.ndarray, width: int = 4) -> np.ndarray:
    """Largest of the last ``width`` coefficients of any domain, relative to the largest coefficient.

    Resolved modes decay spectrally, so this is tiny; tau-spurious modes live in
    the top coefficients and give values of order one.
    """
    tails = np.empty(vectors.shape[1])
    for i in range(vectors.shape[1]):
        full = np.abs(reconstruct(pencil, vectors[:, i]))
        top = full.max()
        worst, offset = 0.0, 0
        for n in pencil.n_coeffs:
            worst = max(worst, full[offset + n - width:offset + n].max())
            offset += n
        tails[i] = worst / top if top > 0 else np.inf
    return tails


def solve(pencil: Pencil, threshold: float = FILTER_THRESHOLD, tail_tol: float | None = None,
          exclude: Sequence[complex] = (), exclude_rtol: float = 1e-6) -> Spectrum:
    """Generalized eigenvalues by QZ on the equilibrated pair.

    Non-finite values and |n| > ``threshold`` are always rejected. With
    ``tail_tol`` set, modes whose Chebyshev tail exceeds it are rejected as
    unresolved. Values within ``exclude_rtol`` of a point in ``exclude`` are
    rejected as known extraneous roots.
    """
    A, B, c = equilibrate(pencil.A, pencil.B)
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            if tail_tol is None:
                eigs, vecs = scipy.linalg.eigvals(A, B), None
            else:
                eigs, vecs = scipy.linalg.eig(A, B, right=True)
                vecs = vecs * c[:, None]
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigenSolveError(f"QZ failed on {pencil.size}x{pencil.size} pencil "
                              f"({dict((k, v) for k, v in pencil.meta.items() if np.isscalar(v))}): {exc}") from exc

    reasons = []
    tails = coefficient_tails(pencil, vecs) if vecs is not None else None
    for i, e in enumerate(eigs):
        if not np.isfinite(e):
            reasons.append("non-finite")
        elif abs(e) > threshold:
            reasons.append("magnitude")
        elif any(abs(e - z) <= exclude_rtol * max(abs(z), 1.0) for z in exclude):
            reasons.append("extraneous")
        elif tails is not None and not tails[i] <= tail_tol:
            reasons.append("unresolved")
        else:
            reasons.append("")
    kept = np.array([r == "" for r in reasons], dtype=bool)
    filt = eigs[kept]
    if filt.size == 0:
        raise EigenSolveError("no finite eigenvalues survived filtering")
    leading = complex(filt[np.argmax(filt.real)])
    return Spectrum(eigs, filt, leading, kept, tuple(reasons))


def max_relative_deviation(values: Sequence[complex]) -> float:
    vals = np.asarray(values, dtype=complex)
    worst = 0.0
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            ref = max(abs(vals[i]), abs(vals[j]))
            if ref:
                worst = max(worst, abs(vals[i] - vals[j]) / ref)
    return worst


def convergence_scan(build: Callable[[int], Pencil], N_list: Sequence[int],
                     solver: Callable[[Pencil], Spectrum] = solve) -> tuple[list[tuple[int, complex]], float]:
    """Leading eigenvalue per N plus the largest pairwise relative deviation."""
    if list(N_list) != sorted(N_list):
        raise ValueError("N_list must be ascending")
    rows = [(N, solver(build(N)).leading) for N in N_list]
    return rows, max_relative_deviation([r[1] for r in rows])


def match_modes(reference: Sequence[complex], candidate: Sequence[complex]) -> np.ndarray:
    """Relative distance from each reference eigenvalue to its nearest candidate."""
    cand = np.asarray(candidate)
    out = []
    for r in reference:
        d = np.min(np.abs(cand - r))
        out.append(d / max(abs(r), 1e-300))
    return np.array(out)


def dump_pencil(pencil: Pencil, path) -> None:
    """Write A then B as row-major text, complex entries as ``a+bi``."""
    def fmt(z):
        return f"{z.real:.17g}{z.imag:+.17g}i"
    with open(path, "w", encoding="utf-8") as fh:
        for name, M in (("A", pencil.A), ("B", pencil.B)):
            fh.write(f"# {name} {M.shape[0]}x{M.shape[1]}\n")
            for row in M:
                fh.write(" ".join(fmt(z) for z in row) + "\n")

"""Independent reference implementations used only by the tests."""
import numpy as np
import scipy.linalg


def cheb(N):
    """Chebyshev collocation points and differentiation matrix (N + 1 points)."""
    x = np.cos(np.pi * np.arange(N + 1) / N)
    c = np.hstack([2, np.ones(N - 1), 2]) * (-1) ** np.arange(N + 1)
    X = np.tile(x, (N + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1 / c) / (dX + np.eye(N + 1))
    D -= np.diag(D.sum(axis=1))
    return D, x


def orr_sommerfeld_collocation(Re, k, N):
    """Plane Poiseuille eigenvalues n (growth convention n = -ikc) by collocation.

    Clamped conditions are built into the fourth derivative through the
    substitution w = (1 - x^2) g.
    """
    D, x = cheb(N)
    D2 = (D @ D)[1:N, 1:N]
    S = np.diag(np.hstack([0, 1 / (1 - x[1:N] ** 2), 0]))
    D4 = (np.diag(1 - x**2) @ np.linalg.matrix_power(D, 4)
          - 8 * np.diag(x) @ np.linalg.matrix_power(D, 3) - 12 * D @ D) @ S
    D4 = D4[1:N, 1:N]
    I = np.eye(N - 1)
    U = np.diag(1 - x[1:N] ** 2)
    A = (D4 - 2 * k**2 * D2 + k**4 * I) / Re - 2j * k * I - 1j * k * U @ (D2 - k**2 * I)
    B = D2 - k**2 * I
    e = scipy.linalg.eigvals(A, B)
    e = e[np.isfinite(e)]
    return e[np.argsort(-e.real)]


def two_layer_collocation(Re, mu_ratio, m, k, N):
    """Two layers of equal density between fixed plates, by collocation.

    Lower fluid on -1 < y < 0 (viscosity 1), upper on 0 < y < m (viscosity
    mu_ratio), interface speed 1. The interface displacement eta is a separate
    unknown, so no extraneous root appears. Boundary and interface conditions
    replace the two outermost collocation rows of each layer.
    """
    D, x = cheb(N)
    n1 = N + 1
    A_coef = -(mu_ratio + m) / (m * (1 + m))
    layers = []
    # (viscosity, U coefficients, y = a + b x)
    for mu, U, (a, b) in ((1.0, [1.0, 1 + A_coef, A_coef], (-0.5, 0.5)),
                          (mu_ratio, [1.0, (1 + A_coef) / mu_ratio, A_coef / mu_ratio], (m / 2, m / 2))):
        y = a + b * x
        Dy = [np.linalg.matrix_power(D / b, p) for p in range(5)]
        Uv = np.polynomial.polynomial.polyval(y, U)
        Upp = np.polynomial.polynomial.polyval(y, np.polynomial.polynomial.polyder(U, 2))
        layers.append(dict(mu=mu, U=U, Dy=Dy, Uv=Uv, Upp=Upp))

    size = 2 * n1 + 1
    A = np.zeros((size, size), dtype=complex)
    B = np.zeros_like(A)
    ik = 1j * k
    I = np.eye(n1)
    for j, L in enumerate(layers):
        s = slice(j * n1, (j + 1) * n1)
        Dy = L["Dy"]
        lap = Dy[2] - k**2 * I
        A[s, s] = (L["mu"] / Re * (Dy[4] - 2 * k**2 * Dy[2] + k**4 * I)
                   - ik * np.diag(L["Uv"]) @ lap + ik * np.diag(L["Upp"]))
        B[s, s] = lap

    def row(layer, idx, order):
        r = np.zeros(size, dtype=complex)
        r[layer * n1:(layer + 1) * n1] = layers[layer]["Dy"][order][idx]
        return r

    eta = np.zeros(size, dtype=complex)
    eta[-1] = 1.0
    lo_i, up_i = 0, N  # interface: lower layer at x = +1, upper layer at x = -1
    mu1 = mu_ratio
    dU2 = layers[0]["U"][1]
    dU1 = layers[1]["U"][1]

    def pressure_terms(layer, idx, mu):
        # -p = a + n c at the interface, from x-momentum with u = i w' / k
        dU = dU2 if layer == 0 else dU1
        a = (ik * (1j / k) * row(layer, idx, 1) + dU * row(layer, idx, 0)
             - mu / Re * (1j / k) * (row(layer, idx, 3) - k**2 * row(layer, idx, 1))) / ik
        c = (1j / k) * row(layer, idx, 1) / ik
        return a, c

    conditions = []
    conditions.append((0, N, row(0, N, 0), None))                  # lower wall
    conditions.append((0, N - 1, row(0, N, 1), None))
    conditions.append((1, 0, row(1, 0, 0), None))                  # upper wall
    conditions.append((1, 1, row(1, 0, 1), None))
    conditions.append((0, lo_i, row(1, up_i, 0) - row(0, lo_i, 0), None))
    conditions.append((0, lo_i + 1, row(1, up_i, 1) - row(0, lo_i, 1) - ik * (dU1 - dU2) * eta, None))
    conditions.append((1, up_i, mu1 * (row(1, up_i, 2) + k**2 * row(1, up_i, 0))
                       - (row(0, lo_i, 2) + k**2 * row(0, lo_i, 0)), None))
    pa1, pb1 = pressure_terms(1, up_i, mu1)
    pa2, pb2 = pressure_terms(0, lo_i, 1.0)
    normal_a = pa1 + 2 * mu1 / Re * row(1, up_i, 1) - pa2 - 2 / Re * row(0, lo_i, 1)
    # normal_a + n (c1 - c2) = 0
    normal_b = -(pb1 - pb2)
    conditions.append((1, up_i - 1, normal_a, normal_b))
    for layer, idx, ra, rb in conditions:
        A[layer * n1 + idx] = ra
        B[layer * n1 + idx] = 0 if rb is None else rb
    # kinematic: (n + ik) eta = w(0)
    A[-1] = row(0, lo_i, 0) - ik * eta
    B[-1] = eta
    e = scipy.linalg.eigvals(A, B)
    e = e[np.isfinite(e) & (np.abs(e) < 1e6)]
    return e[np.argsort(-e.real)]

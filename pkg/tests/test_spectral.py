import numpy as np
import pytest
from numpy.polynomial import chebyshev as C

from co2dryout import spectral
from co2dryout.spectral import (Pencil, SingularEliminationError, assemble, chebyshev_diff, convergence_scan,
                                diff_matrix, dump_pencil, endpoint_row, map_domains, mult_matrix, poly_operator,
                                regularize, solve)


def unit(n, j):
    v = np.zeros(n)
    v[j] = 1.0
    return v


class TestDiffMatrix:
    def test_known_derivatives(self):
        D1 = chebyshev_diff(8, 1).entries
        np.testing.assert_array_equal(D1 @ unit(8, 2), 4 * unit(8, 1))
        D2 = chebyshev_diff(8, 2).entries
        np.testing.assert_array_equal(D2 @ unit(8, 3), 24 * unit(8, 1))

    @pytest.mark.parametrize("order", [1, 2, 3, 4])
    def test_matches_numpy(self, order):
        rng = np.random.default_rng(order)
        a = rng.standard_normal(16)
        got = diff_matrix(16, order) @ a
        want = C.chebder(a, order)
        np.testing.assert_allclose(got[:len(want)], want, rtol=1e-12, atol=1e-9)
        assert np.all(got[len(want):] == 0)

    def test_constants_vanish(self):
        assert np.all(diff_matrix(10, 1) @ unit(10, 0) == 0)

    @pytest.mark.parametrize("N,order", [(4, 3), (10, 5), (10, -1)])
    def test_invalid(self, N, order):
        with pytest.raises(ValueError):
            chebyshev_diff(N, order)


def test_multiplication_matches_numpy():
    rng = np.random.default_rng(0)
    p, a = rng.standard_normal(3), rng.standard_normal(12)
    got = mult_matrix(p, 16) @ np.concatenate([a, np.zeros(4)])
    np.testing.assert_allclose(got, np.pad(C.chebmul(p, a), (0, 2)), atol=1e-13)


def test_endpoint_rows():
    rng = np.random.default_rng(1)
    a = rng.standard_normal(10)
    for side in (-1, 1):
        for order in range(3):
            want = C.chebval(side, C.chebder(a, order)) if order else C.chebval(side, a)
            assert endpoint_row(10, side, order) @ a == pytest.approx(want, rel=1e-12)


def test_poly_operator_scaled_derivative():
    # (y d/dy) applied with scale 2 is 2 y f'
    a = np.array([0.0, 0.0, 0.0, 1.0, 0, 0])
    got = poly_operator([0, [0, 1]], 6, scale=2.0) @ a
    want = C.chebmul([0, 1], 2 * C.chebder(a))
    np.testing.assert_allclose(got[:len(want)].real, want, atol=1e-13)


def test_domain_map():
    d = map_domains(0.25)
    assert d.m == 1.0 and d.scale_l == -8.0 and d.scale_v == 8.0
    assert d.y_liquid(-1) == 0.25 and d.y_liquid(1) == 0.0
    assert d.y_vapour(-1) == 0.25 and d.y_vapour(1) == 0.5
    for bad in (0.0, 0.5, -1):
        with pytest.raises(ValueError):
            map_domains(bad)


def beam_pencil(N):
    """(D^2)^2 w = n D^2 w with clamped ends on [-1, 1]."""
    M = N + 4
    A = diff_matrix(M, 4)[:N].astype(complex)
    B = diff_matrix(M, 2)[:N].astype(complex)
    rows = [("bc", endpoint_row(M, s, o), None) for s in (-1, 1) for o in (0, 1)]
    return assemble([A], [B], rows)


class TestPencils:
    def test_assemble_shapes_and_labels(self):
        p = beam_pencil(16)
        assert p.size == 20 and p.row_labels[-1] == "bc" and p.n_coeffs == (20,)

    def test_not_square(self):
        with pytest.raises(ValueError, match="square"):
            assemble([np.eye(3)[:2]], [np.eye(3)[:2]], [])

    def test_regularize_preserves_spectrum(self):
        rng = np.random.default_rng(3)
        n = 12
        A = rng.standard_normal((n - 2, n)) + 0j
        B = rng.standard_normal((n - 2, n)) + 0j
        cons = [("bc", rng.standard_normal(n), None), ("bc", rng.standard_normal(n), None)]
        p = assemble([A], [B], cons)
        reduced = regularize(p)
        assert reduced.size == n - 2
        direct = solve(p).filtered
        regular = solve(reduced).filtered
        assert len(direct) == len(regular) == n - 2
        assert np.max(spectral.match_modes(direct, regular)) < 1e-8

    def test_dependent_constraints(self):
        n = 10
        row = np.arange(1.0, n + 1)
        p = assemble([np.eye(n)[:n - 2] + 0j], [np.eye(n)[:n - 2] + 0j], [("bc", row, None), ("bc", 2 * row, None)])
        with pytest.raises(SingularEliminationError, match="linearly dependent"):
            regularize(p)

    def test_constraint_with_eigenvalue_terms(self):
        p = beam_pencil(10)
        B = p.B.copy()
        B[-1, 0] = 1.0
        with pytest.raises(ValueError, match="eigenvalue terms"):
            regularize(Pencil(p.A, B, p.row_labels, p.n_coeffs))

    def test_reconstruct_satisfies_constraints(self):
        p = beam_pencil(20)
        r = regularize(p, per_domain=4)
        v = np.random.default_rng(4).standard_normal(r.size)
        full = spectral.reconstruct(r, v)
        np.testing.assert_allclose(p.A[-4:] @ full, 0, atol=1e-10)


class TestSolve:
    def test_diagonal(self):
        p = Pencil(np.diag([1, 2, 3j]).astype(complex), np.eye(3, dtype=complex), ("a",) * 3, (3,))
        s = solve(p)
        assert s.leading == pytest.approx(2)
        assert s.top(2)[1] == pytest.approx(1)

    def test_infinite_filtered(self):
        p = Pencil(np.eye(2, dtype=complex), np.diag([1.0, 0.0]).astype(complex), ("a", "a"), (2,))
        s = solve(p)
        assert list(s.filtered) == [1] and s.reasons.count("non-finite") + s.reasons.count("magnitude") == 1

    def test_threshold(self):
        p = Pencil(np.diag([1.0, 5e6]).astype(complex), np.eye(2, dtype=complex), ("a", "a"), (2,))
        assert solve(p).filtered.tolist() == [1]
        assert len(solve(p, threshold=1e7).filtered) == 2

    def test_exclusion(self):
        p = Pencil(np.diag([-1.0, -3.0]).astype(complex), np.eye(2, dtype=complex), ("a", "a"), (2,))
        s = solve(p, exclude=(-1.0,))
        assert s.leading == pytest.approx(-3) and s.reasons[0] == "extraneous"

    def test_nothing_survives(self):
        p = Pencil(np.eye(1, dtype=complex), np.zeros((1, 1), dtype=complex), ("a",), (1,))
        with pytest.raises(spectral.EigenSolveError):
            solve(p)

    def test_clamped_beam(self):
        s = solve(regularize(beam_pencil(16), per_domain=4), tail_tol=spectral.TAIL_TOLERANCE)
        assert s.leading == pytest.approx(-np.pi**2, rel=1e-9)

    def test_convergence(self):
        # the fourth-order coefficient operator amplifies rounding as N grows, so stay moderate
        rows, dev = convergence_scan(lambda N: regularize(beam_pencil(N), per_domain=4), [14, 16, 18, 20],
                                     solver=lambda p: solve(p, tail_tol=spectral.TAIL_TOLERANCE))
        assert dev < 1e-8 and len(rows) == 4
        with pytest.raises(ValueError):
            convergence_scan(lambda N: beam_pencil(N), [32, 24])

    def test_tail_filter_drops_spurious(self):
        N = 16
        r = regularize(beam_pencil(N), per_domain=4)
        plain = solve(r)
        filtered = solve(r, tail_tol=spectral.TAIL_TOLERANCE)
        assert len(filtered.filtered) < len(plain.filtered)
        assert "unresolved" in filtered.reasons
        # kept modes are close to the exact clamped-beam values
        exact_sym = -np.pi**2
        assert np.min(np.abs(filtered.filtered - exact_sym)) < 1e-8
        # without the tail check a positive tau mode would lead
        assert plain.leading.real > 0


def test_equilibrate_keeps_eigenvalues():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((6, 6)) * np.logspace(-6, 6, 6)[:, None]
    B = np.eye(6) * np.logspace(-6, 6, 6)[:, None]
    A1, B1, c = spectral.equilibrate(A, B)
    e0 = np.sort_complex(np.linalg.eigvals(np.linalg.solve(B, A)))
    e1 = np.sort_complex(np.linalg.eigvals(np.linalg.solve(B1, A1)))
    np.testing.assert_allclose(e1, e0, rtol=1e-8)
    assert np.all(np.log2(c) == np.round(np.log2(c)))


def test_max_relative_deviation():
    assert spectral.max_relative_deviation([1, 1 + 1e-9, 1 - 1e-9]) == pytest.approx(2e-9, rel=1e-6)
    assert spectral.max_relative_deviation([0, 0]) == 0


def test_dump_pencil(tmp_path):
    p = Pencil(np.array([[1 + 2j, 0], [0, -1.5]]), np.eye(2, dtype=complex), ("a", "a"), (2,))
    path = tmp_path / "p.txt"
    dump_pencil(p, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# A 2x2" and lines[3] == "# B 2x2"
    assert lines[1].split()[0] == "1+2i" and lines[2].split()[1] == "-1.5+0i"
    back = np.array([[complex(t.replace("i", "j")) for t in line.split()] for line in lines[1:3]])
    np.testing.assert_array_equal(back, p.A)

import math

import numpy as np
import pytest

from logmaj import linalg, spectral
from logmaj.errors import NotHermitian, NotPositive, OutOfDomain
from logmaj.linalg import adjoint, haar_unitary, identity, inverse, op_norm, psd_sqrt, symmetrize
from logmaj.spectral import (
    TracialContext,
    big_lambda,
    dyadic_approx,
    fk_det,
    lambda_scale,
    log_fk_det,
    mu,
)
from logmaj.stepfn import eval_right


def rand_complex(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def rand_positive(rng, n, floor=0.05):
    g = rand_complex(rng, n)
    p = symmetrize(adjoint(g) @ g)
    return symmetrize(p / op_norm(p) + floor * np.eye(n))


def abs_of(x):
    return psd_sqrt(symmetrize(adjoint(x) @ x))


class TestMu:
    def test_matches_singular_values_on_dyadic_pieces(self):
        f = mu(np.diag([3.0, 1.0]).astype(complex))
        assert f.breakpoints == (0.0, 0.5, 1.0)
        assert f.values == (3.0, 1.0)

    def test_unitary_is_constant_one(self):
        f = mu(haar_unitary(4, 0))
        assert all(v == pytest.approx(1.0, abs=1e-13) for v in f.values)

    def test_scaling(self):
        rng = np.random.default_rng(0)
        x = rand_complex(rng, 4)
        alpha = -1.5 + 0.7j
        f = mu(x)
        g = mu(alpha * x)
        for t in (0.0, 0.3, 0.6, 0.9):
            assert eval_right(g, t) == pytest.approx(abs(alpha) * eval_right(f, t), rel=1e-12)

    def test_invariances(self):
        rng = np.random.default_rng(1)
        x = rand_complex(rng, 5)
        fx = mu(x)
        assert mu(adjoint(x)).values == pytest.approx(fx.values, rel=1e-11)
        assert mu(abs_of(x)).values == pytest.approx(fx.values, rel=1e-9)


class TestLambdaScale:
    def test_diagonal(self):
        f = lambda_scale(np.diag([1.0, -2.0]).astype(complex))
        assert f.values == (1.0, -2.0)

    def test_positive_matches_mu(self):
        rng = np.random.default_rng(2)
        h = rand_positive(rng, 6)
        assert lambda_scale(h).values == pytest.approx(mu(h).values, rel=1e-10, abs=1e-12)

    def test_shift(self):
        rng = np.random.default_rng(3)
        g = rand_complex(rng, 5)
        h = symmetrize(g)
        a = 0.8
        f0 = lambda_scale(h)
        f1 = lambda_scale(h + a * identity(5))
        assert np.allclose(np.array(f1.values), np.array(f0.values) + a, atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            lambda_scale(np.array([[0, 1], [0, 0]], dtype=complex))


class TestFkDet:
    def test_sqrt3(self):
        assert fk_det(np.diag([3.0, 1.0]).astype(complex)) == pytest.approx(
            math.sqrt(3.0), abs=1e-12
        )

    def test_identity_is_one(self):
        assert fk_det(identity(5)) == 1.0

    def test_singular_is_zero(self):
        assert fk_det(np.diag([1.0, 0.0]).astype(complex)) == 0.0
        assert log_fk_det(np.zeros((2, 2), complex)) == float("-inf")

    def test_multiplicative(self):
        rng = np.random.default_rng(4)
        for n in (2, 4, 8):
            x = rand_complex(rng, n)
            y = rand_complex(rng, n)
            lhs = fk_det(x @ y)
            rhs = fk_det(x) * fk_det(y)
            assert abs(lhs - rhs) <= 1e-9 * max(rhs, 1e-12)

    def test_inverse(self):
        rng = np.random.default_rng(5)
        x = rand_positive(rng, 5)
        assert fk_det(inverse(x)) == pytest.approx(1.0 / fk_det(x), rel=1e-9)

    def test_monotone_on_positive_order(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            x = rand_positive(rng, 4)
            bump = rand_positive(rng, 4, floor=0.0)
            y = symmetrize(x + bump)  # y >= x
            assert fk_det(y) >= fk_det(x) - 1e-12

    def test_powers(self):
        rng = np.random.default_rng(7)
        x = rand_complex(rng, 4)
        ax = abs_of(x)
        base = fk_det(x)
        for alpha in (0.5, 2.0, 3.0):
            powered = psd_sqrt(ax) if alpha == 0.5 else np.linalg.matrix_power(ax, int(alpha))
            assert fk_det(powered) == pytest.approx(base**alpha, rel=1e-9)

    def test_continuity_from_above(self):
        x = np.diag([2.0, 1.0, 0.0]).astype(complex)
        prev = math.inf
        for eps in (1e-1, 1e-2, 1e-3, 1e-4):
            v = fk_det(x + eps * identity(3))
            assert v <= prev + 1e-15
            prev = v
        assert prev <= 0.1  # approaching fk_det(x) = 0 monotonically


class TestBigLambda:
    def test_t_one_is_det(self):
        rng = np.random.default_rng(8)
        x = rand_complex(rng, 4)
        assert big_lambda(x, 1.0) == pytest.approx(fk_det(x), rel=1e-12)

    def test_unitary_is_one(self):
        u = haar_unitary(4, 11)
        for t in (0.25, 0.5, 1.0):
            assert big_lambda(u, t) == pytest.approx(1.0, abs=1e-12)

    def test_analytic_example(self):
        x = np.diag([8.0, 2.0]).astype(complex)
        assert big_lambda(x, 0.5) == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)

    def test_domain(self):
        with pytest.raises(OutOfDomain):
            big_lambda(identity(2), 0.0)
        with pytest.raises(OutOfDomain):
            big_lambda(identity(2), 1.5)


class TestGridInequalities:
    def test_submultiplicative_on_grid(self):
        rng = np.random.default_rng(9)
        for n in (2, 4, 8):
            x = rand_complex(rng, n)
            y = rand_complex(rng, n)
            sx = linalg.svd(x).sigma
            sy = linalg.svd(y).sigma
            sxy = linalg.svd(x @ y).sigma
            for i in range(n):
                for j in range(n):
                    if i + j < n:
                        assert sxy[i + j] <= sx[i] * sy[j] + 1e-9

    def test_subadditive_on_grid(self):
        rng = np.random.default_rng(10)
        for n in (2, 4, 8):
            x = rand_complex(rng, n)
            y = rand_complex(rng, n)
            sx = linalg.svd(x).sigma
            sy = linalg.svd(y).sigma
            sxy = linalg.svd(x + y).sigma
            for i in range(n):
                for j in range(n):
                    if i + j < n:
                        assert sxy[i + j] <= sx[i] + sy[j] + 1e-9

    def test_monotone_under_positive_order(self):
        rng = np.random.default_rng(11)
        x = rand_positive(rng, 5)
        bump = rand_positive(rng, 5, floor=0.0)
        y = symmetrize(x + bump)
        fx, fy = mu(x), mu(y)
        for t in (0.0, 0.2, 0.4, 0.6, 0.8):
            assert eval_right(fx, t) <= eval_right(fy, t) + 1e-11

    def test_eigenvalue_sums_on_grid(self):
        rng = np.random.default_rng(12)
        for n in (2, 4, 8):
            x = symmetrize(rand_complex(rng, n))
            y = symmetrize(rand_complex(rng, n))
            lx = linalg.herm_eig(x).eigenvalues
            ly = linalg.herm_eig(y).eigenvalues
            lxy = linalg.herm_eig(x + y).eigenvalues
            for i in range(n):
                for j in range(n):
                    if i + j < n:
                        assert lxy[i + j] <= lx[i] + ly[j] + 1e-9


class TestDyadicApprox:
    def test_fixed_point_on_grid(self):
        # eigenvalues exactly on the grid {j * span / 2^k}
        x = np.diag([1.0, 0.75, 0.25]).astype(complex)
        xk = dyadic_approx(x, 2, span=1.0)
        assert np.allclose(xk, x, atol=0.0)

    def test_snap_up_bound_and_monotonicity(self):
        rng = np.random.default_rng(13)
        x = rand_positive(rng, 6)
        span = op_norm(x)
        prev = None
        for k in (1, 2, 3, 6, 10):
            xk = dyadic_approx(x, k)
            assert op_norm(xk - x) <= span / 2**k + 1e-12
            vals = linalg.herm_eig(xk).eigenvalues
            base = linalg.herm_eig(x).eigenvalues
            assert np.all(vals >= base - 1e-12)  # snaps upward
            if prev is not None:
                assert np.all(prev >= vals - 1e-12)  # refines downward
            prev = vals

    def test_offset_grid_example(self):
        x = np.diag([0.3, 0.8]).astype(complex)
        xk = dyadic_approx(x, 1, offset=0.3, span=0.5)
        got = sorted(np.diag(xk).real.tolist())
        assert got == pytest.approx([0.3, 0.3 + 0.25], abs=1e-14)

    def test_rejects_negative(self):
        with pytest.raises(NotPositive):
            dyadic_approx(np.diag([1.0, -0.5]).astype(complex), 3)

    def test_left_limit_values_converge_from_above(self):
        rng = np.random.default_rng(14)
        x = rand_positive(rng, 5)
        target = linalg.svd(x).sigma
        prev = None
        for k in range(1, 12):
            sk = linalg.svd(dyadic_approx(x, k)).sigma
            assert np.all(sk >= target - 1e-12)
            if prev is not None:
                assert np.all(sk <= prev + 1e-12)
            assert np.max(np.abs(sk - target)) <= op_norm(x) / 2**k + 1e-12
            prev = sk


class TestTracialContext:
    def test_normalized(self):
        tau = TracialContext(4)
        assert tau.trace(identity(4)) == 1.0

    def test_trace_abs(self):
        tau = TracialContext(2)
        assert tau.trace_abs(np.diag([3.0, -1.0]).astype(complex)) == pytest.approx(2.0)

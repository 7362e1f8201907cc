import math

import numpy as np
import pytest

from logmaj import oracle, spectral
from logmaj.errors import OutOfRange, ZeroOnK
from logmaj.inequalities import harnack_middle
from logmaj.oracle import (
    DiagonalSpec,
    brute_integral,
    diag_mu,
    lu_abs_det,
    normalized_abs_det,
    scalar_harnack,
)
from logmaj.stepfn import (
    full_interval,
    integrate_log,
    invert_flip,
    make_interval_set,
    make_step,
    step_max_abs_diff,
)


class TestDiagMu:
    def test_basic(self):
        assert diag_mu(DiagonalSpec((3, 1))).values == (3.0, 1.0)

    def test_modulus_of_complex_entry(self):
        assert diag_mu(DiagonalSpec((2j,))).values == (2.0,)

    def test_matches_kernel_mu_on_random_diagonals(self):
        rng = np.random.default_rng(0)
        for n in (2, 4, 8):
            for _ in range(50):
                d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                spec = DiagonalSpec(tuple(d.tolist()))
                f = diag_mu(spec)
                g = spectral.mu(spec.matrix())
                assert step_max_abs_diff(f, g) <= 1e-12

    def test_flip_identity_closed_form(self):
        rng = np.random.default_rng(1)
        for n in (2, 4, 8):
            for _ in range(30):
                d = rng.uniform(0.1, 5.0, size=n)
                spec = DiagonalSpec(tuple(d.tolist()))
                lhs = invert_flip(diag_mu(spec))
                rhs = diag_mu(spec.inverse())
                assert lhs == rhs  # bitwise: same float ops on the same floats


class TestBruteIntegral:
    def test_constant_exact(self):
        f = make_step([0, 1], [math.e])
        assert brute_integral(f, full_interval(), 7) == pytest.approx(1.0, abs=1e-12)

    def test_converges_to_exact_integral(self):
        f = make_step([0, 0.5, 1], [8, 2])
        exact = 2 * math.log(2)
        assert brute_integral(f, full_interval(), 10_000) == pytest.approx(exact, abs=1e-3)

    def test_first_order_convergence(self):
        rng = np.random.default_rng(2)
        f = make_step([0, 0.37, 0.81, 1], [5, 2, 0.5])
        K = make_interval_set([(0.05, 0.6), (0.7, 0.95)])
        exact = integrate_log(f, K)
        errs = []
        for m in (100, 1000, 10_000):
            errs.append(abs(brute_integral(f, K, m) - exact))
        # each tenfold refinement reduces the error (observed order >= 1)
        assert errs[1] <= errs[0] and errs[2] <= errs[1]
        assert errs[2] <= 1e-3

    def test_zero_on_k(self):
        f = make_step([0, 0.5, 1], [1, 0])
        with pytest.raises(ZeroOnK):
            brute_integral(f, full_interval(), 10)
        with pytest.raises(OutOfRange):
            brute_integral(f, full_interval(), 0)


class TestScalarHarnack:
    def test_zero(self):
        assert scalar_harnack(0.0) == {"middle": 1.0, "upper": 1.0, "lower": 1.0}

    def test_half(self):
        got = scalar_harnack(0.5)
        assert got["middle"] == pytest.approx(3.0)
        assert got["upper"] == pytest.approx(3.0)
        assert got["lower"] == pytest.approx(1.0 / 3.0)

    def test_matches_matrix_middle(self):
        for r in (0.0, 0.2, 0.5, 0.77):
            hm = harnack_middle(np.array([[r]], dtype=complex))
            assert hm.A[0, 0].real == pytest.approx(scalar_harnack(r)["middle"], abs=1e-12)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            scalar_harnack(1.0)
        with pytest.raises(OutOfRange):
            scalar_harnack(-0.1)


class TestLuDet:
    def test_diagonal(self):
        assert normalized_abs_det(np.diag([3.0, 1.0]).astype(complex)) == pytest.approx(
            math.sqrt(3.0), abs=1e-14
        )

    def test_singular(self):
        assert lu_abs_det(np.diag([1.0, 0.0]).astype(complex)) == 0.0

    def test_known_2x2(self):
        x = np.array([[1, 2], [3, 4]], dtype=complex)
        assert lu_abs_det(x) == pytest.approx(2.0, rel=1e-13)

    def test_matches_numpy(self):
        rng = np.random.default_rng(3)
        for n in (2, 3, 5, 8):
            x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            assert lu_abs_det(x) == pytest.approx(abs(np.linalg.det(x)), rel=1e-11)

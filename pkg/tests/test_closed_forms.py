"""Frozen closed-form instances for the checkers, derived by hand on
diagonal and scalar inputs.  These pin the exact index mappings and
reflection conventions: a transposed index or a set reflected the wrong way
would shift these values, not just loosen a bound."""

import math

import numpy as np
import pytest

from logmaj.inequalities import (
    check_cayley,
    check_harnack_lower,
    check_harnack_upper,
    check_index_subsets,
    check_re_im_bounds,
)
from logmaj.stepfn import full_interval, make_interval_set


class TestReImNegativeDefinite:
    def test_lower_bounds_are_exact_equalities(self):
        # for x = diag(-3, -1): eig(Re x) = (-1, -3) and s = (3, 1), so the
        # lower bound -s_{n-j+1} <= eig_j is tight at every j (the transposed
        # mapping -s_j <= eig_j would be violated at j = 2)
        x = np.diag([-3.0, -1.0]).astype(complex)
        reports = {r.name: r for r in check_re_im_bounds(x)}
        assert reports["re_lower[0]"].slack == pytest.approx(0.0, abs=1e-13)
        assert reports["re_lower[1]"].slack == pytest.approx(0.0, abs=1e-13)
        assert reports["re_lower[1]"].lhs == pytest.approx(-3.0, abs=1e-13)


class TestHarnackLowerHalfInterval:
    def test_two_by_two_closed_form(self):
        # x = diag(r1, r2), K = [1/2, 1): middle integral picks the smaller
        # ratio, the reflected integrand picks r1
        r1, r2 = 0.6, 0.2
        x = np.diag([r1, r2]).astype(complex)
        K = make_interval_set([(0.5, 1.0)])
        rep = check_harnack_lower(x, K)
        assert rep.passed
        assert rep.rhs == pytest.approx(0.5 * math.log((1 + r2) / (1 - r2)), abs=1e-12)
        assert rep.lhs == pytest.approx(
            -math.log(1 + r1) + 0.5 * math.log(1 - r1 * r1), abs=1e-12
        )


class TestHarnackUpperPrefixInterval:
    def test_diagonal_on_set_equality(self):
        # diagonal input: mu(A) on the prefix equals the transformed mu(x)
        r1, r2 = 0.7, 0.3
        x = np.diag([r1, r2]).astype(complex)
        K = make_interval_set([(0.0, 0.5)])
        reports = {r.name: r for r in check_harnack_upper(x, K)}
        assert reports["on_set"].slack == pytest.approx(0.0, abs=1e-12)
        assert reports["on_set"].rhs == pytest.approx(
            0.5 * math.log((1 + r1) / (1 - r1)), abs=1e-12
        )
        # growing the set to [0,1] adds the second piece's ratio
        assert reports["set_vs_full"].slack == pytest.approx(
            0.5 * math.log((1 + r2) / (1 - r2)), abs=1e-12
        )


class TestCayleyDiagonal:
    def test_two_sided_bounds_closed_form(self):
        # the transform of a real diagonal is unitary diagonal, so the middle
        # integral vanishes; the bounds use opposite pieces of mu(x)
        r1, r2 = 0.5, 0.1
        x = np.diag([r1, r2]).astype(complex)
        y = np.zeros((2, 2), dtype=complex)
        K = make_interval_set([(0.0, 0.5)])
        reports = {r.name: r for r in check_cayley(x, y, K)}
        assert reports["lower"].rhs == pytest.approx(0.0, abs=1e-12)  # middle
        assert reports["lower"].lhs == pytest.approx(
            0.5 * (math.log(1 - r2) - math.log(1 + r1)), abs=1e-12
        )
        assert reports["upper"].rhs == pytest.approx(
            0.5 * (math.log(1 + r1) - math.log(1 - r1)), abs=1e-12
        )

    def test_scalar_difference_bound_closed_form(self):
        a, c = 0.6, -0.3
        x = np.array([[a]], dtype=complex)
        y = np.array([[c]], dtype=complex)
        reports = {r.name: r for r in check_cayley(x, y, full_interval())}
        # |C(a) - C(c)| = 2|a-c| / sqrt((a^2+1)(c^2+1))
        assert reports["diff"].lhs == pytest.approx(
            math.log(2 * abs(a - c) / math.sqrt((a * a + 1) * (c * c + 1))), abs=1e-12
        )
        assert reports["diff"].rhs == pytest.approx(
            math.log(2 * abs(a - c)) - math.log((1 - a) * (1 + c)), abs=1e-12
        )
        assert reports["diff"].passed


class TestIndexSubsetsDiagonal:
    def test_subset_lower_frozen_values(self):
        # Z = diag(0.6, 0.2), U = I, K = {2}: the smallest-eigenvalue product
        # is the largest ratio; the bound collects (1 - r_2^2) / (1 + r_1)^2
        z = np.diag([0.6, 0.2]).astype(complex)
        reports = {r.name: r for r in check_index_subsets(z, np.eye(2, dtype=complex), [2])}
        assert reports["subset_lower"].rhs == pytest.approx(math.log(4.0), abs=1e-11)
        assert reports["subset_lower"].lhs == pytest.approx(
            math.log(0.96) - 2 * math.log(1.6), abs=1e-12
        )

    def test_subset_upper_picks_indexed_pieces(self):
        z = np.diag([0.6, 0.2]).astype(complex)
        reports = {r.name: r for r in check_index_subsets(z, np.eye(2, dtype=complex), [2])}
        assert reports["subset_upper"].lhs == pytest.approx(math.log(1.2 / 0.8), abs=1e-11)
        assert reports["subset_upper"].rhs == pytest.approx(math.log(1.2 / 0.8), abs=1e-12)

import numpy as np
import pytest

from logmaj import linalg, submaj
from logmaj.errors import NotPositiveInvertible
from logmaj.harness import force_log_submaj, gen_positive_invertible
from logmaj.linalg import adjoint, haar_unitary, identity, op_norm, symmetrize
from logmaj.submaj import (
    battery_consistent,
    log_submaj,
    log_submaj_steps,
    p_submaj,
    p_submaj_steps,
    equivalence_battery,
)
from logmaj.stepfn import make_step


def rand_complex(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


class TestLogSubmaj:
    def test_reflexive(self):
        rng = np.random.default_rng(0)
        x = rand_complex(rng, 4)
        rep = log_submaj(x, x)
        assert rep.holds and rep.slack == pytest.approx(0.0, abs=1e-12)

    def test_contraction_vs_norm_times_identity(self):
        rng = np.random.default_rng(1)
        x = rand_complex(rng, 4)
        x = x / (2 * op_norm(x))
        rep = log_submaj(x, op_norm(x) * identity(4))
        assert rep.holds

    def test_positive_shift_statement(self):
        # x - Re u log-submajorised by x + I for positive x with norm > 1
        rng = np.random.default_rng(2)
        for trial in range(10):
            g = rand_complex(rng, 4)
            p = symmetrize(adjoint(g) @ g)
            x = p / op_norm(p) * 1.8
            u = haar_unitary(4, trial)
            rep = log_submaj(x - (u + adjoint(u)) / 2, x + identity(4))
            assert rep.holds

    def test_neg_infinity_left_passes(self):
        fx = make_step([0, 0.5, 1], [1.0, 0.0])
        fy = make_step([0, 1], [0.5])
        rep = log_submaj_steps(fx, fy)
        # lhs is -inf from t = 0.5 on; the early finite part decides
        assert rep.worst_t == 0.5 and rep.holds is False or rep.holds
        # at t = 0.5: lhs = 0.5*log(1) = 0 > 0.5*log(0.5): relation fails there
        assert not rep.holds

    def test_all_vacuous(self):
        fx = make_step([0, 1], [0.0])
        fy = make_step([0, 1], [2.0])
        rep = log_submaj_steps(fx, fy)
        assert rep.holds and rep.vacuous

    def test_rhs_neg_infinity_fails(self):
        fx = make_step([0, 1], [1.0])
        fy = make_step([0, 1], [0.0])
        rep = log_submaj_steps(fx, fy)
        assert not rep.holds and rep.slack == float("-inf")

    def test_dense_grid_agrees_with_breakpoints(self):
        # same verdict always; the same most-negative slack on failures
        # (a passing relation's dense-grid slack may dip toward 0 near t=0)
        rng = np.random.default_rng(3)
        failures = 0
        for _ in range(20):
            x = rand_complex(rng, 4)
            y = rand_complex(rng, 4)
            a = log_submaj(x, y)
            b = log_submaj(x, y, grid=1e-3)
            assert a.holds == b.holds
            if not a.holds:
                failures += 1
                assert a.slack == pytest.approx(b.slack, abs=1e-12)
            else:
                assert b.slack <= a.slack + 1e-12
        assert failures > 0

    def test_transitive_on_samples(self):
        rng = np.random.default_rng(4)
        hits = 0
        for trial in range(60):
            x = gen_positive_invertible(3, 3 * trial)
            y = force_log_submaj(x, gen_positive_invertible(3, 3 * trial + 1))
            z = force_log_submaj(y, gen_positive_invertible(3, 3 * trial + 2))
            if log_submaj(x, y).holds and log_submaj(y, z).holds:
                hits += 1
                assert log_submaj(x, z).holds
        assert hits >= 50


class TestPSubmaj:
    def test_reflexive(self):
        rng = np.random.default_rng(5)
        x = rand_complex(rng, 3)
        assert p_submaj(x, x, 0.5).holds

    def test_hand_cumulative_sums_hold(self):
        x = np.diag([1.0, 1.0]).astype(complex)
        y = np.diag([2.0, 0.0]).astype(complex)
        rep = p_submaj(x, y, 1.0)
        # t=0.5: 0.5 <= 1.0; t=1: 1.0 <= 1.0 -> holds with slack 0 at t=1
        assert rep.holds
        assert rep.worst_t == 1.0
        assert rep.slack == pytest.approx(0.0, abs=1e-15)
        assert p_submaj(x, y, 2.0).holds

    def test_hand_cumulative_sums_fail(self):
        x = np.diag([2.0, 0.0]).astype(complex)
        y = np.diag([1.0, 1.0]).astype(complex)
        rep = p_submaj(x, y, 1.0)
        assert not rep.holds
        assert rep.worst_t == 0.5
        assert rep.lhs_at_worst == pytest.approx(1.0)  # 2 * 0.5
        assert rep.rhs_at_worst == pytest.approx(0.5)

    def test_dense_grid_agrees(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            x = rand_complex(rng, 5)
            y = rand_complex(rng, 5)
            for p in (0.25, 1.0, 2.0):
                a = p_submaj(x, y, p)
                b = p_submaj(x, y, p, grid=1e-3)
                assert a.holds == b.holds
                if not a.holds:
                    assert a.slack == pytest.approx(b.slack, abs=1e-12)
                else:
                    assert b.slack <= a.slack + 1e-12

    def test_transitive_on_samples(self):
        hits = 0
        for trial in range(40):
            x = gen_positive_invertible(3, 5 * trial)
            y = force_log_submaj(x, gen_positive_invertible(3, 5 * trial + 1))
            z = force_log_submaj(y, gen_positive_invertible(3, 5 * trial + 2))
            for p in (0.5, 1.0):
                if p_submaj(x, y, p).holds and p_submaj(y, z, p).holds:
                    hits += 1
                    assert p_submaj(x, z, p).holds
        assert hits >= 40

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            p_submaj_steps(make_step([0, 1], [1]), make_step([0, 1], [1]), 0.0)


class TestEquivalenceBattery:
    def test_equal_pair_all_hold(self):
        x = gen_positive_invertible(4, 0)
        reports = equivalence_battery(x, x)
        assert len(reports) == 11
        assert all(r.holds for r in reports)
        assert battery_consistent(reports)

    def test_double_all_hold(self):
        x = gen_positive_invertible(4, 1)
        reports = equivalence_battery(x, 2.0 * x)
        assert all(r.holds for r in reports)

    def test_forced_pairs_satisfy_implications(self):
        for trial in range(40):
            x = gen_positive_invertible(4, 2 * trial)
            y = force_log_submaj(x, gen_positive_invertible(4, 2 * trial + 1))
            reports = equivalence_battery(x, y)
            log_rep = [r for r in reports if r.label == "log"][0]
            assert log_rep.holds
            for r in reports:
                assert r.holds, f"{r.label} failed while log relation holds"

    def test_contrapositive_on_unforced_pairs(self):
        # whenever a sampled condition fails, the log relation must fail too
        seen_failure = False
        for trial in range(40):
            x = gen_positive_invertible(4, 1000 + 2 * trial)
            y = gen_positive_invertible(4, 1001 + 2 * trial)
            reports = equivalence_battery(x, y)
            log_holds = [r for r in reports if r.label == "log"][0].holds
            if not all(r.holds for r in reports if r.label != "log"):
                seen_failure = True
                assert not log_holds
        assert seen_failure  # random unforced pairs do produce failures

    def test_rejects_non_positive(self):
        rng = np.random.default_rng(7)
        x = rand_complex(rng, 3)
        with pytest.raises(NotPositiveInvertible):
            equivalence_battery(x, gen_positive_invertible(3, 0))
        with pytest.raises(NotPositiveInvertible):
            equivalence_battery(
                gen_positive_invertible(3, 0), np.diag([1.0, 1.0, 0.0]).astype(complex)
            )

    def test_battery_consistent_detects_conflict(self):
        x = gen_positive_invertible(3, 9)
        reports = equivalence_battery(x, 2.0 * x)
        broken = [
            r if r.label != "phi[sqrt]" else submaj.RelationReport(
                False, r.worst_t, r.lhs_at_worst, r.rhs_at_worst, -1.0, r.tol, r.label
            )
            for r in reports
        ]
        assert not battery_consistent(broken)

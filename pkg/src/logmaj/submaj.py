"""Logarithmic and p-power submajorisation relations, plus the equivalence
battery relating them on positive invertible pairs.

Cumulative integrals of piecewise-constant integrands are piecewise linear
in the upper limit, so each relation is decided exactly by comparing at the
union of the two breakpoint sets; a dense evaluation grid can be mixed in
for auditing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import linalg, spectral
from .errors import NotHermitian, NotPositiveInvertible
from .stepfn import NEG_INFINITY, StepFunction, cumulative_at, scale_shift

DEFAULT_ATOL = 1e-9
DEFAULT_RTOL = 1e-9


def pass_tolerance(lhs: float, rhs: float, atol: float, rtol: float) -> float:
    scale = max(abs(lhs), abs(rhs))
    if math.isinf(scale):
        scale = 0.0
    return atol + rtol * scale


@dataclass(frozen=True)
class RelationReport:
    """Outcome of one submajorisation comparison.

    slack is min over tested t of (rhs cumulative - lhs cumulative); the
    relation holds iff slack >= -tol at the worst t.  Comparisons where the
    lhs cumulative is -inf pass vacuously and do not enter the minimum
    unless every t is vacuous.
    """

    holds: bool
    worst_t: float
    lhs_at_worst: float
    rhs_at_worst: float
    slack: float
    tol: float
    label: str = ""
    vacuous: bool = False

    def to_jsonable(self) -> dict:
        return {
            "holds": self.holds,
            "worst_t": self.worst_t,
            "lhs_at_worst": self.lhs_at_worst,
            "rhs_at_worst": self.rhs_at_worst,
            "slack": self.slack,
            "tol": self.tol,
            "label": self.label,
            "vacuous": self.vacuous,
        }


def _compare_cumulative(
    fx: StepFunction,
    fy: StepFunction,
    fn: Callable[[float], float],
    atol: float,
    rtol: float,
    label: str,
    grid: float | None = None,
) -> RelationReport:
    """Check integral_0^t fn(fx) <= integral_0^t fn(fy) at all breakpoints."""
    ts = set(fx.breakpoints) | set(fy.breakpoints)
    ts.discard(0.0)
    if grid is not None:
        k = 1
        while k * grid < 1.0:
            ts.add(k * grid)
            k += 1
    ts = sorted(ts)
    lhs = cumulative_at(fx, ts, fn)
    rhs = cumulative_at(fy, ts, fn)
    worst = None  # (slack, t, l, r)
    any_finite = False
    for t, l, r in zip(ts, lhs, rhs):
        if l == NEG_INFINITY:
            continue  # -inf <= anything
        any_finite = True
        s = r - l  # -inf when rhs is -inf but lhs finite: a hard failure
        if worst is None or s < worst[0]:
            worst = (s, t, l, r)
    if not any_finite:
        t0 = ts[-1]
        return RelationReport(True, t0, NEG_INFINITY, rhs[-1], math.inf,
                              pass_tolerance(0.0, 0.0, atol, rtol), label, vacuous=True)
    s, t, l, r = worst
    tol = pass_tolerance(l, r, atol, rtol)
    return RelationReport(bool(s >= -tol), t, l, r, s, tol, label)


def _log_or_neg_inf(v: float) -> float:
    return math.log(v) if v > 0.0 else NEG_INFINITY


def log_submaj_steps(
    fx: StepFunction,
    fy: StepFunction,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    label: str = "log_submaj",
    grid: float | None = None,
) -> RelationReport:
    """Logarithmic submajorisation between two non-negative step functions."""
    return _compare_cumulative(fx, fy, _log_or_neg_inf, atol, rtol, label, grid)


def log_submaj(
    x: linalg.ComplexMatrix,
    y: linalg.ComplexMatrix,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    grid: float | None = None,
) -> RelationReport:
    """x log-submajorised by y: cumulative log-integrals of the singular-value
    functions dominated at every t."""
    return log_submaj_steps(spectral.mu(x), spectral.mu(y), atol, rtol, "log_submaj", grid)


def p_submaj_steps(
    fx: StepFunction,
    fy: StepFunction,
    p: float,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    label: str = "",
    grid: float | None = None,
) -> RelationReport:
    if p <= 0.0:
        raise ValueError(f"need p > 0, got {p}")
    return _compare_cumulative(
        fx, fy, lambda v: v**p, atol, rtol, label or f"p_submaj[p={p}]", grid
    )


def p_submaj(
    x: linalg.ComplexMatrix,
    y: linalg.ComplexMatrix,
    p: float,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    grid: float | None = None,
) -> RelationReport:
    """x p-submajorised by y: cumulative integrals of mu^p dominated."""
    return p_submaj_steps(spectral.mu(x), spectral.mu(y), p, atol, rtol, grid=grid)


# sampled parameter families for the equivalence battery
BATTERY_R = (0.1, 1.0, 10.0, 100.0)
BATTERY_P = (0.25, 0.5, 0.75)
BATTERY_PHI = (
    ("sqrt", math.sqrt),
    ("square", lambda v: v * v),
    ("log1p", math.log1p),
)


def equivalence_battery(
    x: linalg.ComplexMatrix,
    y: linalg.ComplexMatrix,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Equivalence battery on a positive invertible pair.

    Evaluates, with the log relation itself as entry "log":
      * I + r*x vs I + r*y in the log relation, r in BATTERY_R;
      * the p-power relations, p in BATTERY_P;
      * cumulative integrals of phi(mu) for the sampled phi family
        (each nondecreasing, phi(0) = 0, phi(e^t) convex).

    The equivalence asserts that whenever the log relation holds, every
    sampled instance of the other conditions holds; battery_consistent
    checks that implication on the returned reports.
    """
    for name, m in (("x", x), ("y", y)):
        try:
            vals = linalg.herm_eig(m, herm_tol=1e-10).eigenvalues
        except NotHermitian as exc:
            raise NotPositiveInvertible(f"{name} is not Hermitian: {exc}") from exc
        if vals[-1] <= 0.0:
            raise NotPositiveInvertible(f"{name} has min eigenvalue {vals[-1]:.3e}")
    fx = spectral.mu(x)
    fy = spectral.mu(y)
    reports = []
    for r in BATTERY_R:
        reports.append(
            log_submaj_steps(
                scale_shift(fx, r, 1.0), scale_shift(fy, r, 1.0),
                atol, rtol, f"shifted_log[r={r:g}]",
            )
        )
    for p in BATTERY_P:
        reports.append(p_submaj_steps(fx, fy, p, atol, rtol))
    reports.append(log_submaj_steps(fx, fy, atol, rtol, "log"))
    for name, phi in BATTERY_PHI:
        reports.append(
            _compare_cumulative(fx, fy, phi, atol, rtol, f"phi[{name}]")
        )
    return reports


def battery_consistent(reports: Sequence[RelationReport]) -> bool:
    """True unless the log relation holds while some sampled condition fails."""
    log_holds = any(r.holds for r in reports if r.label == "log")
    if not log_holds:
        return True
    return all(r.holds for r in reports)

"""Randomized verification suite: seeded generators, one trial function per
checker, deterministic report assembly.

Per-trial randomness comes from substreams seeded by
sha256(master_seed, checker_id, dim, trial_index), so reports are identical
whether trials run serially or on a thread pool, and any failing trial can
be replayed from its (checker, dim, trial) triple alone.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import inequalities as ineq
from . import linalg, spectral, submaj
from .errors import ConfigInvalid
from .linalg import ComplexMatrix
from .stepfn import IntervalSet, cumulative_at, make_interval_set


def subseed(*parts) -> int:
    """Stable 63-bit substream seed from arbitrary labels."""
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


# -- generators -----------------------------------------------------------------


def gen_ginibre(n: int, seed: int) -> ComplexMatrix:
    rng = np.random.default_rng(seed)
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def gen_contraction(n: int, seed: int, delta: float) -> ComplexMatrix:
    """Complex Gaussian rescaled to op_norm = (1 - delta) * uniform(0, 1)."""
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    target = (1.0 - delta) * rng.uniform()
    nrm = linalg.op_norm(g)
    if nrm == 0.0:  # pragma: no cover - measure zero
        return np.zeros((n, n), dtype=np.complex128)
    return g * (target / nrm)


def gen_positive_contraction(n: int, seed: int, delta: float) -> ComplexMatrix:
    """g*g rescaled: positive semidefinite with op_norm <= 1 - delta."""
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    p = linalg.symmetrize(linalg.adjoint(g) @ g)
    target = (1.0 - delta) * rng.uniform()
    nrm = linalg.op_norm(p)
    if nrm == 0.0:  # pragma: no cover
        return np.zeros((n, n), dtype=np.complex128)
    return linalg.symmetrize(p * (target / nrm))


def gen_positive_invertible(n: int, seed: int, floor: float = 0.05) -> ComplexMatrix:
    """Positive definite with eigenvalues in about [floor, 1] times a random scale."""
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    p = linalg.symmetrize(linalg.adjoint(g) @ g)
    p = p / linalg.op_norm(p) + floor * np.eye(n)
    return linalg.symmetrize(p * rng.uniform(0.5, 2.0))


def gen_invertible(n: int, seed: int, cond_cap: float = 1e6) -> ComplexMatrix:
    """Complex Gaussian, redrawn (fresh substream) until cond <= cond_cap."""
    for attempt in range(64):
        g = gen_ginibre(n, subseed(seed, "inv", attempt))
        sig = linalg.svd(g).sigma
        if sig[-1] > 0.0 and sig[0] / sig[-1] <= cond_cap:
            return g
    raise ConfigInvalid("could not draw a well-conditioned invertible matrix")


def gen_hermitian(n: int, seed: int, scale: float = 1.0) -> ComplexMatrix:
    g = gen_ginibre(n, seed)
    return linalg.symmetrize(g) * scale


def gen_norm_above_one(n: int, seed: int, zero_rank: int = 0) -> ComplexMatrix:
    """Positive matrix with op_norm in (1.05, 3]; optionally with a zero block."""
    rng = np.random.default_rng(subseed(seed, "vals"))
    target = 1.05 + 1.95 * rng.uniform()
    vals = np.sort(rng.uniform(0.0, 1.0, size=n))[::-1]
    vals[0] = 1.0
    if zero_rank > 0:
        vals[n - zero_rank:] = 0.0
    basis = linalg.haar_unitary(n, subseed(seed, "basis"))
    return linalg.symmetrize(basis @ np.diag(vals * target) @ linalg.adjoint(basis))


def gen_interval_set(seed: int, k_max: int, snap_n: int | None = None) -> IntervalSet:
    """k ~ uniform{1..k_max} disjoint intervals from sorted uniform draws;
    with snap_n the endpoints snap to the grid j/snap_n."""
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, k_max + 1))
    points = np.sort(rng.uniform(0.0, 1.0, size=2 * k))
    pairs = [(float(points[2 * i]), float(points[2 * i + 1])) for i in range(k)]
    if snap_n is not None:
        snapped = []
        for a, b in pairs:
            ja, jb = round(a * snap_n), round(b * snap_n)
            if jb > ja:
                snapped.append((ja / snap_n, jb / snap_n))
        merged = []
        for a, b in snapped:
            if merged and a <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(b, merged[-1][1]))
            else:
                merged.append((a, b))
        pairs = merged or [(0.0, 1.0)]
    pairs = [(a, b) for a, b in pairs if b > a]
    if not pairs:  # pragma: no cover - duplicate uniform draws
        pairs = [(0.0, 1.0)]
    return make_interval_set(pairs)


def gen_weights(m: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    e = rng.exponential(size=m)
    e = e / e.sum()
    e[-1] = 1.0 - math.fsum(float(v) for v in e[:-1])
    return [float(v) for v in e]


def gen_index_subset(n: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    picks = [k + 1 for k in range(n) if rng.uniform() < 0.5]
    if not picks:
        picks = [int(rng.integers(1, n + 1))]
    return picks


# -- per-checker trial functions --------------------------------------------------
#
# Each takes (n, trial_seed, cfg) and returns (inputs, reports) where inputs
# is a JSON-able description sufficient to reproduce the trial by hand.


def _mat_ctx(**mats) -> dict:
    return {k: linalg.matrix_to_jsonable(v) for k, v in mats.items()}


def _trial_harnack_middle(n, seed, cfg):
    x = gen_contraction(n, subseed(seed, "x"), cfg.delta)
    reports = ineq.check_harnack_middle(x, cfg.delta, cfg.atol, cfg.rtol)
    return _mat_ctx(x=x), reports


def _trial_re_im_bounds(n, seed, cfg):
    rng = np.random.default_rng(subseed(seed, "scale"))
    x = gen_ginibre(n, subseed(seed, "x")) * rng.uniform(0.1, 3.0)
    return _mat_ctx(x=x), ineq.check_re_im_bounds(x, cfg.atol, cfg.rtol)


def _trial_hermitian_shift(n, seed, cfg):
    rng = np.random.default_rng(subseed(seed, "alpha"))
    x = gen_hermitian(n, subseed(seed, "x"))
    y = gen_ginibre(n, subseed(seed, "y")) * rng.uniform(0.1, 2.0)
    alpha = rng.uniform(-2.0, 2.0)
    inputs = _mat_ctx(x=x, y=y)
    inputs["alpha"] = alpha
    return inputs, ineq.check_hermitian_shift(x, y, alpha, cfg.atol, cfg.rtol)


def _trial_real_part_quadratic(n, seed, cfg):
    rng = np.random.default_rng(subseed(seed, "scale"))
    x = gen_ginibre(n, subseed(seed, "x")) * rng.uniform(0.1, 2.0)
    ts = (0.5, 1.0, 2.0)
    inputs = _mat_ctx(x=x)
    inputs["ts"] = list(ts)
    return inputs, ineq.check_real_part_quadratic(x, ts, cfg.atol, cfg.rtol)


def _trial_unitary_approximation(n, seed, cfg):
    mode = seed % 3
    if mode == 0:
        x = gen_norm_above_one(n, subseed(seed, "x"))
        u = linalg.identity(n)
    elif mode == 1 and n > 1:
        # zero block in x frees a unitary block without moving the trace gap
        zero_rank = 1 + (seed // 3) % (n // 2 + 1) if n > 2 else 1
        zero_rank = min(zero_rank, n - 1)
        rng = np.random.default_rng(subseed(seed, "vals"))
        target = 1.05 + 1.95 * rng.uniform()
        vals = np.sort(rng.uniform(0.2, 1.0, size=n))[::-1]
        vals[0] = 1.0
        vals[n - zero_rank:] = 0.0
        x = np.diag((vals * target).astype(np.complex128))
        phases = np.exp(1j * np.random.default_rng(subseed(seed, "ph")).uniform(0, 2 * np.pi, n))
        phases[: n - zero_rank] = 1.0
        u = np.diag(phases)
    else:
        x = gen_norm_above_one(n, subseed(seed, "x"))
        d = linalg.herm_eig(x)
        x = np.diag(d.eigenvalues.astype(np.complex128))  # diagonal model for the phase tuning
        u = ineq.tune_phase_for_trace_match(x, target_gap=1e-10)
    inputs = _mat_ctx(x=x, u=u)
    inputs["mode"] = mode
    return inputs, ineq.check_unitary_approximation(x, u, 1e-8, cfg.atol, cfg.rtol)


def _trial_inverse_flip(n, seed, cfg):
    x = gen_positive_invertible(n, subseed(seed, "x"))
    return _mat_ctx(x=x), [ineq.check_inverse_flip(x, cfg.atol, cfg.rtol)]


def _trial_complement_bounds(n, seed, cfg):
    mode = seed % 2
    if mode == 0:
        rng = np.random.default_rng(subseed(seed, "scale"))
        x = gen_ginibre(n, subseed(seed, "x")) * rng.uniform(0.1, 2.0)
    else:
        x = gen_positive_contraction(n, subseed(seed, "x"), cfg.delta)
    return _mat_ctx(x=x), ineq.check_complement_bounds(x, cfg.atol, cfg.rtol)


def _trial_product_split(n, seed, cfg):
    x = gen_invertible(n, subseed(seed, "x"))
    y = gen_invertible(n, subseed(seed, "y"))
    K = gen_interval_set(subseed(seed, "K"), cfg.k_max)
    inputs = _mat_ctx(x=x, y=y)
    inputs["K"] = K.to_jsonable()
    return inputs, ineq.check_product_split(x, y, K, cfg.atol, cfg.rtol)


def _trial_harnack_upper(n, seed, cfg):
    x = gen_contraction(n, subseed(seed, "x"), cfg.delta)
    K = gen_interval_set(subseed(seed, "K"), cfg.k_max)
    inputs = _mat_ctx(x=x)
    inputs["K"] = K.to_jsonable()
    return inputs, ineq.check_harnack_upper(x, K, cfg.delta, cfg.atol, cfg.rtol)


def _trial_harnack_lower(n, seed, cfg):
    x = gen_contraction(n, subseed(seed, "x"), cfg.delta)
    K = gen_interval_set(subseed(seed, "K"), cfg.k_max)
    inputs = _mat_ctx(x=x)
    inputs["K"] = K.to_jsonable()
    return inputs, [ineq.check_harnack_lower(x, K, cfg.delta, cfg.atol, cfg.rtol)]


def _trial_harnack_tail(n, seed, cfg):
    x = gen_contraction(n, subseed(seed, "x"), cfg.delta)
    ts = (0.25, 0.5, 0.75, 1.0)
    inputs = _mat_ctx(x=x)
    inputs["ts"] = list(ts)
    return inputs, ineq.check_harnack_tail(x, ts, cfg.delta, cfg.atol, cfg.rtol)


def _trial_weighted_harnack(n, seed, cfg):
    rng = np.random.default_rng(subseed(seed, "m"))
    m = int(rng.integers(1, 5))
    xs = [gen_positive_contraction(n, subseed(seed, "x", i), cfg.delta) for i in range(m)]
    ws = gen_weights(m, subseed(seed, "w"))
    u = linalg.haar_unitary(n, subseed(seed, "u"))
    inputs = _mat_ctx(u=u, **{f"x{i}": x for i, x in enumerate(xs)})
    inputs["weights"] = ws
    return inputs, ineq.check_weighted_harnack(xs, ws, u, cfg.delta, cfg.atol, cfg.rtol)


def _trial_cayley(n, seed, cfg):
    x = gen_contraction(n, subseed(seed, "x"), cfg.delta)
    y = gen_contraction(n, subseed(seed, "y"), cfg.delta)
    K = gen_interval_set(subseed(seed, "K"), cfg.k_max)
    inputs = _mat_ctx(x=x, y=y)
    inputs["K"] = K.to_jsonable()
    return inputs, ineq.check_cayley(x, y, K, cfg.delta, cfg.atol, cfg.rtol)


def _trial_index_subsets(n, seed, cfg):
    z = gen_contraction(n, subseed(seed, "z"), cfg.delta)
    u = linalg.haar_unitary(n, subseed(seed, "u"))
    ks = gen_index_subset(n, subseed(seed, "K"))
    inputs = _mat_ctx(z=z, u=u)
    inputs["indices"] = ks
    return inputs, ineq.check_index_subsets(z, u, ks, cfg.delta, cfg.atol, cfg.rtol)


def _trial_submaj_equivalences(n, seed, cfg):
    x = gen_positive_invertible(n, subseed(seed, "x"))
    y = gen_positive_invertible(n, subseed(seed, "y"))
    y = force_log_submaj(x, y)
    rels = submaj.equivalence_battery(x, y, cfg.atol, cfg.rtol)
    reports = [ineq.from_relation(r, f"battery[{r.label}]") for r in rels]
    consistent = submaj.battery_consistent(rels)
    reports.append(
        ineq.InequalityReport(
            "battery_consistent", 0.0, 0.0, 0.0, consistent, 0.0,
            context={"log_holds": any(r.holds for r in rels if r.label == "log")},
        )
    )
    return _mat_ctx(x=x, y=y), reports


def force_log_submaj(x: ComplexMatrix, y: ComplexMatrix) -> ComplexMatrix:
    """Rescale y minimally (plus a hair of margin) so the log relation holds.

    The cumulative log-integral gap (F(t) - G(t)) / t is piecewise monotone
    between breakpoints, so its maximum c* sits at a breakpoint; scaling y by
    exp(c*) shifts G(t) by c* t and makes the relation hold with near-equality
    at the binding t.
    """
    fx = spectral.mu(x)
    fy = spectral.mu(y)
    ts = sorted((set(fx.breakpoints) | set(fy.breakpoints)) - {0.0})
    lhs = cumulative_at(fx, ts, math.log)
    rhs = cumulative_at(fy, ts, math.log)
    c = max((l - r) / t for t, l, r in zip(ts, lhs, rhs))
    if c <= 0.0:
        return y
    return y * math.exp(c) * (1.0 + 1e-12)


CHECKERS = {
    "harnack_middle": _trial_harnack_middle,
    "re_im_bounds": _trial_re_im_bounds,
    "hermitian_shift": _trial_hermitian_shift,
    "real_part_quadratic": _trial_real_part_quadratic,
    "unitary_approximation": _trial_unitary_approximation,
    "inverse_flip": _trial_inverse_flip,
    "complement_bounds": _trial_complement_bounds,
    "product_split": _trial_product_split,
    "harnack_upper": _trial_harnack_upper,
    "harnack_lower": _trial_harnack_lower,
    "harnack_tail": _trial_harnack_tail,
    "weighted_harnack": _trial_weighted_harnack,
    "cayley": _trial_cayley,
    "index_subsets": _trial_index_subsets,
    "submaj_equivalences": _trial_submaj_equivalences,
}

INEQUALITY_CHECKERS = tuple(
    name for name in CHECKERS if name != "submaj_equivalences"
)


# -- suite configuration and report -------------------------------------------------


@dataclass(frozen=True)
class TrialConfig:
    suite: tuple = ("all",)
    trials: int = 100
    dims: tuple = (1, 2, 4, 8)
    seed: int = 0
    delta: float = 1e-3
    atol: float = 1e-9
    rtol: float = 1e-9
    k_max: int = 4
    output: str | None = None
    fmt: str = "json"
    threads: int = 0  # 0: take LOGMAJ_THREADS, else serial

    def resolved_suite(self) -> list:
        names = []
        for s in self.suite:
            if s == "all":
                names.extend(CHECKERS)
            elif s in CHECKERS:
                names.append(s)
            else:
                raise ConfigInvalid(f"unknown checker id {s!r}; known: {sorted(CHECKERS)}")
        seen = []
        for nm in names:
            if nm not in seen:
                seen.append(nm)
        return seen

    def validate(self) -> None:
        if self.trials < 1:
            raise ConfigInvalid(f"trials must be >= 1, got {self.trials}")
        if not self.dims or any(not 1 <= d <= 64 for d in self.dims):
            raise ConfigInvalid(f"dims must lie in [1, 64], got {self.dims}")
        if not 0.0 < self.delta < 1.0:
            raise ConfigInvalid(f"delta must be in (0, 1), got {self.delta}")
        if self.fmt not in ("json", "csv"):
            raise ConfigInvalid(f"format must be json or csv, got {self.fmt}")
        if self.k_max < 1:
            raise ConfigInvalid(f"k_max must be >= 1, got {self.k_max}")
        self.resolved_suite()

    def to_jsonable(self) -> dict:
        return {
            "suite": list(self.suite),
            "trials": self.trials,
            "dims": list(self.dims),
            "seed": self.seed,
            "delta": self.delta,
            "atol": self.atol,
            "rtol": self.rtol,
            "k_max": self.k_max,
            "format": self.fmt,
        }


def resolve_threads(cfg: TrialConfig) -> int:
    if cfg.threads > 0:
        return cfg.threads
    env = os.environ.get("LOGMAJ_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


@dataclass
class TrialRow:
    checker: str
    dim: int
    trial: int
    seed: int
    reports: list
    inputs: dict
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None or any(not r.passed for r in self.reports)

    @property
    def vacuous(self) -> bool:
        return not self.failed and any(r.vacuous for r in self.reports)


def run_trial(checker: str, dim: int, trial: int, cfg: TrialConfig) -> TrialRow:
    seed = subseed(cfg.seed, checker, dim, trial)
    fn = CHECKERS[checker]
    try:
        inputs, reports = fn(dim, seed, cfg)
    except Exception as exc:  # a raised checker error is an honest failure
        return TrialRow(checker, dim, trial, seed, [], {}, error=f"{type(exc).__name__}: {exc}")
    return TrialRow(checker, dim, trial, seed, reports, inputs)


def run_suite(cfg: TrialConfig) -> dict:
    """Run every selected checker for cfg.trials per dim; deterministic in cfg.

    Returns the suite report as a JSON-able dict, also writing it to
    cfg.output when a path is configured with the json format (csv emission
    goes through rows_to_csv).  The "wall_time_s" entry is the only
    non-deterministic field.
    """
    cfg.validate()
    names = cfg.resolved_suite()
    t0 = time.time()
    tasks = [
        (checker, dim, trial)
        for checker in names
        for dim in cfg.dims
        for trial in range(cfg.trials)
    ]
    threads = resolve_threads(cfg)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda t: run_trial(*t, cfg), tasks))
    else:
        rows = [run_trial(*t, cfg) for t in tasks]
    rows.sort(key=lambda r: (r.checker, r.dim, r.trial))

    checkers_out = {}
    total_failures = 0
    for row in rows:
        per = checkers_out.setdefault(
            row.checker,
            {
                "trials": 0,
                "passes": 0,
                "vacuous_passes": 0,
                "failure_count": 0,
                "failures": [],
                "min_slack": None,
                "argmin": None,
                "max_eq_residual": 0.0,
            },
        )
        per["trials"] += 1
        if row.failed:
            per["failure_count"] += 1
            total_failures += 1
            per["failures"].append(
                {
                    "dim": row.dim,
                    "trial": row.trial,
                    "seed": row.seed,
                    "error": row.error,
                    "inputs": row.inputs,
                    "reports": [r.to_jsonable() for r in row.reports if not r.passed],
                }
            )
        elif row.vacuous:
            per["vacuous_passes"] += 1
        else:
            per["passes"] += 1
        for rep in row.reports:
            if rep.kind == "eq":
                res = abs(rep.slack)
                if res > per["max_eq_residual"]:
                    per["max_eq_residual"] = res
            elif not rep.vacuous and not math.isinf(rep.slack):
                if per["min_slack"] is None or rep.slack < per["min_slack"]:
                    per["min_slack"] = rep.slack
                    per["argmin"] = {
                        "dim": row.dim,
                        "trial": row.trial,
                        "seed": row.seed,
                        "report": rep.name,
                        "lhs": rep.lhs,
                        "rhs": rep.rhs,
                    }
    report = {
        "config": cfg.to_jsonable(),
        "checkers": checkers_out,
        "total_trials": len(rows),
        "total_failures": total_failures,
        "wall_time_s": time.time() - t0,
    }
    if cfg.output and cfg.fmt == "json":
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(report_to_json(report) + "\n")
    return report


def rows_to_csv(cfg: TrialConfig) -> str:
    """Re-run the configured suite and emit one CSV row per report."""
    cfg.validate()
    names = cfg.resolved_suite()
    lines = ["checker,dim,trial,lhs,rhs,slack,pass,vacuous,seed"]
    for checker in names:
        for dim in cfg.dims:
            for trial in range(cfg.trials):
                row = run_trial(checker, dim, trial, cfg)
                if row.error is not None:
                    lines.append(
                        f"{checker},{dim},{trial},nan,nan,nan,False,False,{row.seed}"
                    )
                    continue
                for rep in row.reports:
                    lines.append(
                        f"{checker},{dim},{trial},{rep.lhs!r},{rep.rhs!r},"
                        f"{rep.slack!r},{rep.passed},{rep.vacuous},{row.seed}"
                    )
    return "\n".join(lines) + "\n"


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True, allow_nan=True)


def strip_wall_time(report_json: str) -> str:
    """Drop the wall-time line so two reports can be compared bytewise."""
    obj = json.loads(report_json)
    obj.pop("wall_time_s", None)
    return json.dumps(obj, indent=1, sort_keys=True, allow_nan=True)

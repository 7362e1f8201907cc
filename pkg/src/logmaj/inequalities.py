"""One checker per Harnack-type / submajorisation inequality, each returning
reports with signed slack.

Conventions shared by every checker:
  * reports always state "lhs <= rhs" with slack = rhs - lhs, so equality
    witnesses show slack 0 and violations show negative slack;
  * pass iff slack >= -(atol + rtol * max(|lhs|, |rhs|));
  * a lhs of -inf (a vanished singular value under a log) is a vacuous pass
    and is flagged as such;
  * "eq"-kind reports check |slack| <= tol instead (identity and
    cross-implementation agreement checks);
  * strict contractions are required with an explicit margin delta, so the
    resolvents involved have condition at most 1/delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg, spectral, submaj
from .errors import (
    ContractionRequired,
    NormNotAboveOne,
    NotHermitian,
    NotInvertible,
    NotPositive,
    NotStrictContraction,
    WeightsInvalid,
)
from .linalg import ComplexMatrix, adjoint, identity, imag_part, inverse, real_part, symmetrize
from .spectral import log_fk_det, mu
from .stepfn import (
    NEG_INFINITY,
    IntervalSet,
    full_interval,
    integrate_log,
    integrate_log_mapped,
    invert_flip,
    make_interval_set,
    prefix_interval,
    step_max_abs_diff,
)
from .submaj import DEFAULT_ATOL, DEFAULT_RTOL, RelationReport, pass_tolerance

DEFAULT_DELTA = 1e-3


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality instance: lhs <= rhs with signed slack."""

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    tol: float
    vacuous: bool = False
    kind: str = "le"  # "le" or "eq"
    context: dict = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "passed": self.passed,
            "tol": self.tol,
            "vacuous": self.vacuous,
            "kind": self.kind,
            "context": self.context,
        }


def le_report(
    name: str,
    lhs: float,
    rhs: float,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    context: dict | None = None,
) -> InequalityReport:
    context = context or {}
    if lhs == NEG_INFINITY:
        slack = 0.0 if rhs == NEG_INFINITY else math.inf
        return InequalityReport(name, lhs, rhs, slack, True, 0.0, vacuous=True, context=context)
    if rhs == NEG_INFINITY:
        return InequalityReport(name, lhs, rhs, NEG_INFINITY, False, 0.0, context=context)
    tol = pass_tolerance(lhs, rhs, atol, rtol)
    slack = rhs - lhs
    return InequalityReport(name, lhs, rhs, slack, bool(slack >= -tol), tol, context=context)


def eq_report(
    name: str,
    lhs: float,
    rhs: float,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
    context: dict | None = None,
) -> InequalityReport:
    tol = pass_tolerance(lhs, rhs, atol, rtol)
    slack = rhs - lhs
    return InequalityReport(
        name, lhs, rhs, slack, bool(abs(slack) <= tol), tol, kind="eq", context=context or {}
    )


def from_relation(rel: RelationReport, name: str, context: dict | None = None) -> InequalityReport:
    ctx = dict(context or {})
    ctx["worst_t"] = rel.worst_t
    return InequalityReport(
        name,
        rel.lhs_at_worst,
        rel.rhs_at_worst,
        rel.slack,
        rel.holds,
        rel.tol,
        vacuous=rel.vacuous,
        context=ctx,
    )


def require_contraction(x: ComplexMatrix, delta: float, who: str = "x") -> float:
    nrm = linalg.op_norm(x)
    if nrm > 1.0 - delta:
        raise NotStrictContraction(f"op_norm({who}) = {nrm:.6f} > 1 - {delta}")
    return nrm


def _require_positive_eigs(x: ComplexMatrix, who: str = "x") -> np.ndarray:
    vals = linalg.herm_eig(x, herm_tol=1e-10).eigenvalues
    scale = max(1.0, abs(vals[0]))
    if vals[-1] < -1e-10 * scale:
        raise NotPositive(f"{who} has min eigenvalue {vals[-1]:.3e}")
    return vals


# -- the middle term of the Harnack bounds -------------------------------------


@dataclass(frozen=True)
class HarnackMiddle:
    """A = (I-x*)^{-1} (I-x*x) (I-x)^{-1} and its factor S with A = S*S."""

    A: ComplexMatrix
    S: ComplexMatrix
    agreements: dict  # relative Frobenius residuals of the alternate forms


def middle_term(x: ComplexMatrix) -> ComplexMatrix:
    """(I-x*)^{-1} (I-x*x) (I-x)^{-1} by the direct product."""
    n = x.shape[0]
    eye = identity(n)
    inv_one_minus = inverse(eye - x)
    return adjoint(inv_one_minus) @ (eye - adjoint(x) @ x) @ inv_one_minus


def _middle_constructions(x: ComplexMatrix) -> tuple:
    n = x.shape[0]
    eye = identity(n)
    inv_one_minus = inverse(eye - x)
    gram = eye - adjoint(x) @ x
    a_direct = adjoint(inv_one_minus) @ gram @ inv_one_minus
    a_resolvent = 2.0 * real_part(inv_one_minus) - eye
    a_product = real_part((eye + x) @ inv_one_minus)
    s_factor = linalg.psd_sqrt(symmetrize(gram)) @ inv_one_minus
    a_sts = adjoint(s_factor) @ s_factor
    return a_direct, a_resolvent, a_product, a_sts, s_factor


def harnack_middle(x: ComplexMatrix, delta: float = DEFAULT_DELTA) -> HarnackMiddle:
    """Build the middle term A by four equivalent routes and verify agreement.

    Raises NotStrictContraction when op_norm(x) > 1 - delta, and
    ArithmeticError if the constructions disagree beyond 1e-9 * ||A||_F.
    """
    require_contraction(x, delta)
    a_direct, a_resolvent, a_product, a_sts, s_factor = _middle_constructions(x)
    nrm = linalg.frob(a_direct)
    agreements = {
        "resolvent": linalg.frob(a_direct - a_resolvent) / nrm,
        "product": linalg.frob(a_direct - a_product) / nrm,
        "sts": linalg.frob(a_direct - a_sts) / nrm,
    }
    worst = max(agreements.values())
    if worst > 1e-9:
        raise ArithmeticError(f"middle-term constructions disagree: {agreements}")
    return HarnackMiddle(a_direct, s_factor, agreements)


def check_harnack_middle(
    x: ComplexMatrix,
    delta: float = DEFAULT_DELTA,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Agreement of the four constructions of the middle term, as eq reports."""
    require_contraction(x, delta)
    a_direct, a_resolvent, a_product, a_sts, _ = _middle_constructions(x)
    nrm = linalg.frob(a_direct)
    out = []
    for name, alt in (("resolvent", a_resolvent), ("product", a_product), ("sts", a_sts)):
        rel = linalg.frob(a_direct - alt) / nrm
        out.append(eq_report(f"middle_agreement[{name}]", rel, 0.0, atol, rtol))
    return out


# -- eigenvalue bounds for real and imaginary parts ----------------------------


def check_re_im_bounds(
    x: ComplexMatrix,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Per dyadic piece j: -s_{n-j+1}(x) <= eig_j(Re x) <= s_j(x), same for Im x."""
    n = x.shape[0]
    sx = linalg.svd(x).sigma
    out = []
    for part_name, part in (("re", real_part(x)), ("im", imag_part(x))):
        lam = linalg.herm_eig(part).eigenvalues
        for j in range(n):
            out.append(
                le_report(f"{part_name}_upper[{j}]", float(lam[j]), float(sx[j]), atol, rtol)
            )
            out.append(
                le_report(
                    f"{part_name}_lower[{j}]", float(-sx[n - 1 - j]), float(lam[j]), atol, rtol
                )
            )
    return out


def check_hermitian_shift(
    x: ComplexMatrix,
    y: ComplexMatrix,
    alpha: float,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """For Hermitian x and real alpha, per piece j:
    eig_j(i Re y - i y) <= s_j(y - alpha x) and
    eig_j(y - i Im y) <= s_j(y - i alpha x)."""
    if linalg.hermitian_defect(x) > 1e-10:
        raise NotHermitian("shift argument x must be Hermitian")
    n = x.shape[0]
    m_imag = 1j * (real_part(y) - y)
    m_real = y - 1j * imag_part(y)
    lam_imag = linalg.herm_eig(symmetrize(m_imag)).eigenvalues
    lam_real = linalg.herm_eig(symmetrize(m_real)).eigenvalues
    s_shift = linalg.svd(y - alpha * x).sigma
    s_shift_i = linalg.svd(y - 1j * alpha * x).sigma
    ctx = {"alpha": alpha}
    out = []
    for j in range(n):
        out.append(
            le_report(f"im_part[{j}]", float(lam_imag[j]), float(s_shift[j]), atol, rtol, ctx)
        )
        out.append(
            le_report(f"re_part[{j}]", float(lam_real[j]), float(s_shift_i[j]), atol, rtol, ctx)
        )
    return out


def check_real_part_quadratic(
    x: ComplexMatrix,
    ts,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """2 Re x log-submajorised by t^2 x*x + t^{-2} I, and the same comparison
    for the normalized determinants, for each scaling t."""
    n = x.shape[0]
    two_re = 2.0 * real_part(x)
    mu_re = mu(two_re)
    lf_re = log_fk_det(two_re)
    out = []
    for t in ts:
        m = symmetrize((t * t) * (adjoint(x) @ x) + (1.0 / (t * t)) * identity(n))
        rel = submaj.log_submaj_steps(mu_re, mu(m), atol, rtol)
        out.append(from_relation(rel, f"submaj[t={t:g}]", {"t": t}))
        out.append(le_report(f"det[t={t:g}]", lf_re, log_fk_det(m), atol, rtol, {"t": t}))
    return out


# -- distance-to-unitary comparisons --------------------------------------------


def check_unitary_approximation(
    x: ComplexMatrix,
    u: ComplexMatrix,
    trace_match_tol: float = 1e-8,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """For positive x with op_norm > 1 and unitary u:
    (1) x - Re u log-submajorised by x + I;
    (2) when tau|x - I| matches tau|x - u| within trace_match_tol, the
        normalized determinant of x - u is at most that of x - I.

    Part (2) is reported as a vacuous pass (context "skipped") when the trace
    side-condition fails.  The side-condition can only be met approximately
    for generic full-rank x (its exact version forces u to agree with the
    identity off the kernel of x), so the residual gap propagates into the
    pass margin: a gap of eta moves the log-determinant comparison by at most
    eta / sigma_min(x - I) to first order.  Both the gap and the resulting
    allowance ride along in the report context.
    """
    _require_positive_eigs(x)
    n = x.shape[0]
    if linalg.op_norm(x) <= 1.0:
        raise NormNotAboveOne(f"op_norm(x) = {linalg.op_norm(x):.6f} <= 1")
    eye = identity(n)
    rel = submaj.log_submaj(x - real_part(u), x + eye, atol, rtol)
    out = [from_relation(rel, "approx_submaj")]
    tau = spectral.TracialContext(n)
    side = abs(tau.trace_abs(x - eye) - tau.trace_abs(x - u))
    ctx = {"trace_gap": side}
    if side <= trace_match_tol:
        s_min = float(linalg.svd(x - eye).sigma[-1])
        allowance = side / s_min if s_min > 0.0 else 0.0
        ctx["gap_allowance"] = allowance
        out.append(
            le_report(
                "approx_det", log_fk_det(x - u), log_fk_det(x - eye),
                atol + allowance, rtol, ctx,
            )
        )
    else:
        ctx["skipped"] = True
        out.append(
            InequalityReport("approx_det", 0.0, 0.0, 0.0, True, 0.0, vacuous=True, context=ctx)
        )
    return out


def tune_phase_for_trace_match(
    x: ComplexMatrix,
    target_gap: float = 1e-10,
    iters: int = 48,
) -> ComplexMatrix:
    """Construct a non-trivial unitary u = diag(e^{i theta}, e^{-i theta}, 1, ...)
    whose trace side-condition gap tau|x-u| - tau|x-I| equals target_gap.

    The gap is continuous, zero at theta = 0 and increasing on [0, pi], so
    bisection on theta is the oracle for the construction.  Returns u.
    """
    n = x.shape[0]
    tau = spectral.TracialContext(n)
    eye = identity(n)
    base = tau.trace_abs(x - eye)

    def u_of(theta: float) -> ComplexMatrix:
        phases = np.ones(n, dtype=np.complex128)
        phases[0] = np.exp(1j * theta)
        if n > 1:
            phases[1] = np.exp(-1j * theta)
        return np.diag(phases)

    def gap(theta: float) -> float:
        return tau.trace_abs(x - u_of(theta)) - base

    lo, hi = 0.0, math.pi
    if gap(hi) <= target_gap:
        return u_of(hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if gap(mid) < target_gap:
            lo = mid
        else:
            hi = mid
    return u_of(0.5 * (lo + hi))


# -- the inverse flip identity ---------------------------------------------------


def check_inverse_flip(
    x: ComplexMatrix,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> InequalityReport:
    """mu(x^{-1}) coincides with the inverted, measure-flipped mu(x) for
    positive invertible x; reported as the max piece discrepancy vs 0."""
    vals = _require_positive_eigs(x)
    if vals[-1] <= 0.0:
        raise NotInvertible(f"min eigenvalue {vals[-1]:.3e}")
    lhs_step = mu(inverse(x))
    rhs_step = invert_flip(spectral.mu(x))
    disc = step_max_abs_diff(lhs_step, rhs_step)
    scale = max(lhs_step.values[0], rhs_step.values[0])
    tol = atol + rtol * scale
    ctx = {"mu_of_inverse": lhs_step.to_jsonable(), "flipped_mu": rhs_step.to_jsonable()}
    return InequalityReport(
        "flip_identity", disc, 0.0, -disc, bool(disc <= tol), tol, kind="eq", context=ctx
    )


# -- complements: bounds pairing x with I - x and x +/- iI -----------------------


def _pair_scan(name, sa, sb, pairs, atol, rtol, out):
    """Worst case of 1 <= sa[i] + sb[j] over the given index pairs."""
    worst = None
    for i, j in pairs:
        v = float(sa[i] + sb[j])
        if worst is None or v < worst[0]:
            worst = (v, i, j)
    if worst is None:
        return
    v, i, j = worst
    out.append(le_report(name, 1.0, v, atol, rtol, {"i": i, "j": j}))


def check_complement_bounds(
    x: ComplexMatrix,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Singular-value lower bounds pairing x with I - x and with x +/- iI,
    the eigenvalue-below-singular-value bound for Hermitian parts, and the
    exact complement identity for positive contractions.

    Grid pairs (t, s) = (i/n, j/n) with t + s < 1 cover the interior
    statements in both continuity conventions; boundary pairs (t, 1-t) cover
    the left/right mixed forms.  The complement identity
    s'_i(I - x) = 1 - s_{n-i+1}(x) is only evaluated when x is a positive
    contraction.
    """
    n = x.shape[0]
    sx = linalg.svd(x).sigma
    eye = identity(n)
    out = []

    herm = linalg.hermitian_defect(x) <= 1e-10
    for label, h in ((("self", x),) if herm else (("re", real_part(x)), ("im", imag_part(x)))):
        lam = linalg.herm_eig(symmetrize(h)).eigenvalues
        sh = linalg.svd(h).sigma
        worst = None
        for j in range(n):
            v = float(sh[j] - lam[j])
            if worst is None or v < worst[0]:
                worst = (v, j)
        out.append(
            le_report(
                f"eig_le_sv[{label}]", float(lam[worst[1]]), float(sh[worst[1]]),
                atol, rtol, {"j": worst[1]},
            )
        )

    companions = [
        ("one_minus", linalg.svd(eye - x).sigma),
        ("plus_i", linalg.svd(x + 1j * eye).sigma),
        ("minus_i", linalg.svd(x - 1j * eye).sigma),
    ]
    for label, sb in companions:
        # interior pairs, right-continuous: mu_{i/n}(x) + mu_{j/n}(companion)
        pairs = [(i, j) for i in range(n) for j in range(n) if i + j <= n - 1]
        _pair_scan(f"split_right[{label}]", sx, sb, pairs, atol, rtol, out)
        # interior pairs, left-continuous (1-based i, j with i + j <= n - 1)
        pairs = [
            (i - 1, j - 1)
            for i in range(1, n)
            for j in range(1, n)
            if i + j <= n - 1
        ]
        _pair_scan(f"split_left[{label}]", sx, sb, pairs, atol, rtol, out)
        # boundary pairs (t, 1 - t) in the three continuity mixtures
        _pair_scan(
            f"boundary_rl[{label}]", sx, sb,
            [(i, n - i - 1) for i in range(n)], atol, rtol, out,
        )
        if n > 1:
            _pair_scan(
                f"boundary_ll[{label}]", sx, sb,
                [(i - 1, n - i - 1) for i in range(1, n)], atol, rtol, out,
            )
        _pair_scan(
            f"boundary_lr[{label}]", sx, sb,
            [(i - 1, n - i) for i in range(1, n + 1)], atol, rtol, out,
        )

    if herm:
        eigs = linalg.herm_eig(symmetrize(x)).eigenvalues
        if eigs[-1] >= -1e-10 and eigs[0] <= 1.0 + 1e-10:
            s_comp = linalg.svd(eye - x).sigma
            disc = max(
                abs(float(s_comp[i] - (1.0 - sx[n - 1 - i]))) for i in range(n)
            )
            tol = atol + rtol
            out.append(
                InequalityReport(
                    "complement_identity", disc, 0.0, -disc, bool(disc <= tol), tol, kind="eq"
                )
            )
    return out


def check_complement_identity(
    x: ComplexMatrix,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> InequalityReport:
    """The exact complement identity alone; raises ContractionRequired unless
    0 <= x and op_norm(x) <= 1."""
    if linalg.hermitian_defect(x) > 1e-10:
        raise ContractionRequired("x must be Hermitian")
    eigs = linalg.herm_eig(symmetrize(x)).eigenvalues
    if eigs[-1] < -1e-10 or eigs[0] > 1.0 + 1e-10:
        raise ContractionRequired(f"eigenvalues in [{eigs[-1]:.3e}, {eigs[0]:.3e}]")
    n = x.shape[0]
    sx = linalg.svd(x).sigma
    sc = linalg.svd(identity(n) - x).sigma
    disc = max(abs(float(sc[i] - (1.0 - sx[n - 1 - i]))) for i in range(n))
    tol = atol + rtol
    return InequalityReport(
        "complement_identity", disc, 0.0, -disc, bool(disc <= tol), tol, kind="eq"
    )


# -- splitting log-integrals of products over interval sets ----------------------


def check_product_split(
    x: ComplexMatrix,
    y: ComplexMatrix,
    K: IntervalSet,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Two-sided splitting of the log-integral of mu(xy) over K with
    t = m(K):

      int_K log mu(x) + int_0^t log mu_{1-s}(y)  <=  int_K log mu(xy)
                                                 <=  int_K log mu(x) + int_0^t log mu(y).

    Singular inputs turn a side into -inf and give a vacuous pass.
    """
    t = K.measure
    mux = mu(x)
    muy = mu(y)
    muxy = mu(x @ y)
    on_k_x = integrate_log(mux, K)
    on_k_xy = integrate_log(muxy, K)
    tail_y = integrate_log(muy, make_interval_set([(1.0 - t, 1.0)]) if t < 1.0 else full_interval())
    head_y = integrate_log(muy, prefix_interval(t))
    ctx = {"K": K.to_jsonable(), "t": t}
    lower_lhs = NEG_INFINITY if NEG_INFINITY in (on_k_x, tail_y) else on_k_x + tail_y
    upper_rhs = NEG_INFINITY if NEG_INFINITY in (on_k_x, head_y) else on_k_x + head_y
    return [
        le_report("lower", lower_lhs, on_k_xy, atol, rtol, ctx),
        le_report("upper", on_k_xy, upper_rhs, atol, rtol, ctx),
    ]


# -- Harnack bounds ---------------------------------------------------------------


def _harnack_ratio_up(v: float) -> float:
    return (1.0 + v) / (1.0 - v)


def _harnack_ratio_down(v: float) -> float:
    return (1.0 - v) / (1.0 + v)


def check_harnack_upper(
    x: ComplexMatrix,
    K: IntervalSet,
    delta: float = DEFAULT_DELTA,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Upper Harnack bounds for the middle term A of a strict contraction:

      (a) per piece j: mu_j(A) <= (1 + s_j)/(1 - s_j);
      (b) int_K log mu(A) <= int_K log (1+mu)/(1-mu) <= int_0^1 the same;
      (c) det(I-x*x)/det(I-x)^2 <= exp int_0^1 log (1+mu)/(1-mu) (normalized,
          compared in log space).
    """
    require_contraction(x, delta)
    n = x.shape[0]
    eye = identity(n)
    a = middle_term(x)
    sa = linalg.svd(a).sigma
    sx = linalg.svd(x).sigma
    ctx = {"K": K.to_jsonable()}
    out = []
    for j in range(n):
        out.append(
            le_report(
                f"pointwise[{j}]", float(sa[j]), _harnack_ratio_up(float(sx[j])), atol, rtol
            )
        )
    mua = mu(a)
    mux = mu(x)
    on_set_lhs = integrate_log(mua, K)
    on_set_rhs = integrate_log_mapped(mux, K, _harnack_ratio_up)
    full_rhs = integrate_log_mapped(mux, full_interval(), _harnack_ratio_up)
    out.append(le_report("on_set", on_set_lhs, on_set_rhs, atol, rtol, ctx))
    out.append(le_report("set_vs_full", on_set_rhs, full_rhs, atol, rtol, ctx))
    det_lhs = log_fk_det(eye - adjoint(x) @ x) - 2.0 * log_fk_det(eye - x)
    out.append(le_report("det", det_lhs, full_rhs, atol, rtol))
    return out


def check_harnack_lower(
    x: ComplexMatrix,
    K: IntervalSet,
    delta: float = DEFAULT_DELTA,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> InequalityReport:
    """Lower Harnack bound over K with t = m(K):

      int_K log mu(A) >= int_0^t 2 log 1/(1+mu_s) ds + int_K log(1 - mu_{1-s}^2) ds,

    the reflected integrand evaluated by exact change of variables."""
    require_contraction(x, delta)
    a = middle_term(x)
    t = K.measure
    mua = mu(a)
    mux = mu(x)
    lhs_math = integrate_log(mua, K)
    rhs_math = -2.0 * integrate_log_mapped(mux, prefix_interval(t), lambda v: 1.0 + v)
    rhs_math += integrate_log_mapped(mux, K.reflect(), lambda v: 1.0 - v * v)
    return le_report("on_set", rhs_math, lhs_math, atol, rtol, {"K": K.to_jsonable(), "t": t})


def check_harnack_tail(
    x: ComplexMatrix,
    ts,
    delta: float = DEFAULT_DELTA,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Tail form of the lower Harnack bound for each t, plus its t = 1
    determinant consequence:

      int_0^t log mu_{1-s}(A) ds >= int_0^t log (1-mu)/(1+mu) ds
      det(I-x*x)/det(I-x)^2 >= exp int_0^1 log (1-mu)/(1+mu) (log space)."""
    require_contraction(x, delta)
    n = x.shape[0]
    eye = identity(n)
    a = middle_term(x)
    mua = mu(a)
    mux = mu(x)
    out = []
    for t in ts:
        tail = make_interval_set([(1.0 - t, 1.0)]) if t < 1.0 else full_interval()
        lhs_math = integrate_log(mua, tail)
        rhs_math = integrate_log_mapped(mux, prefix_interval(t), _harnack_ratio_down)
        out.append(le_report(f"tail[t={t:g}]", rhs_math, lhs_math, atol, rtol, {"t": t}))
    det_rhs = log_fk_det(eye - adjoint(x) @ x) - 2.0 * log_fk_det(eye - x)
    det_lhs = integrate_log_mapped(mux, full_interval(), _harnack_ratio_down)
    out.append(le_report("det", det_lhs, det_rhs, atol, rtol))
    return out


def check_weighted_harnack(
    xs,
    ws,
    u: ComplexMatrix,
    delta: float = DEFAULT_DELTA,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Weighted two-sided Harnack determinant bound for W = sum w_i x_i with
    positive strict contractions x_i, weights summing to 1, and unitary u:

      prod_i [exp int log (1-mu_i)/(1+mu_i)]^{w_i}
        <= det(I-W^2)/det(I-uW)^2
        <= prod_i [exp int log (1+mu_i)/(1-mu_i)]^{w_i}   (log space),

    plus the pointwise product bound on the weighted singular values
    (worst piece reported):

      (1 + sum w_i r_i) / (1 - sum w_i r_i) <= prod ((1+r_i)/(1-r_i))^{w_i}.
    """
    ws = [float(w) for w in ws]
    if any(w <= 0.0 for w in ws) or abs(math.fsum(ws) - 1.0) > 1e-12:
        raise WeightsInvalid(f"weights {ws}")
    if len(ws) != len(xs) or not xs:
        raise WeightsInvalid("need one weight per matrix")
    sigmas = []
    for i, xi in enumerate(xs):
        _require_positive_eigs(xi, who=f"x[{i}]")
        require_contraction(xi, delta, who=f"x[{i}]")
        sigmas.append(linalg.svd(xi).sigma)
    n = xs[0].shape[0]
    eye = identity(n)
    w_mat = sum(w * xi for w, xi in zip(ws, xs))
    mid = log_fk_det(eye - w_mat @ w_mat) - 2.0 * log_fk_det(eye - u @ w_mat)
    lower = math.fsum(
        w * integrate_log_mapped(mu(xi), full_interval(), _harnack_ratio_down)
        for w, xi in zip(ws, xs)
    )
    upper = math.fsum(
        w * integrate_log_mapped(mu(xi), full_interval(), _harnack_ratio_up)
        for w, xi in zip(ws, xs)
    )
    out = [
        le_report("lower", lower, mid, atol, rtol, {"weights": ws}),
        le_report("upper", mid, upper, atol, rtol, {"weights": ws}),
    ]
    worst = None
    for j in range(n):
        mixed = math.fsum(w * float(s[j]) for w, s in zip(ws, sigmas))
        lhs = math.log(_harnack_ratio_up(mixed))
        rhs = math.fsum(
            w * math.log(_harnack_ratio_up(float(s[j]))) for w, s in zip(ws, sigmas)
        )
        if worst is None or rhs - lhs < worst[0]:
            worst = (rhs - lhs, lhs, rhs, j)
    _, lhs, rhs, j = worst
    out.append(le_report("lewent", lhs, rhs, atol, rtol, {"piece": j}))
    return out


# -- Cayley transform bounds -------------------------------------------------------


def check_cayley(
    x: ComplexMatrix,
    y: ComplexMatrix,
    K: IntervalSet,
    delta: float = DEFAULT_DELTA,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Log-integral bounds for the Cayley transform over K with t = m(K):

      (a) int_K log(1-mu_{1-s}(x)) - int_0^t log(1+mu(x))
            <= int_K log mu(C(x))
            <= int_K log(1+mu(x)) - int_0^t log(1-mu(x));
      (b) int_K log mu(C(x)-C(y))
            <= int_K log 2 mu(x-y) - int_0^t log[(1-mu(x))(1-mu(y))],
          after verifying the resolvent identity for C(x) - C(y);
      (c) the same statements over the full interval (reports "full_*").
    """
    require_contraction(x, delta, "x")
    require_contraction(y, delta, "y")
    n = x.shape[0]
    eye = identity(n)
    cx = linalg.cayley(x)
    cy = linalg.cayley(y)
    mux = mu(x)
    muy = mu(y)
    mucx = mu(cx)
    diff = cx - cy
    ident = 2j * inverse(y + 1j * eye) @ (x - y) @ inverse(x + 1j * eye)
    scale = max(linalg.frob(diff), 1e-300)
    resid = linalg.frob(diff - ident) / scale
    out = [eq_report("identity", resid, 0.0, atol, rtol)]

    def two_sided(tag: str, K_: IntervalSet):
        t = K_.measure
        ctx = {"K": K_.to_jsonable(), "t": t}
        mid = integrate_log(mucx, K_)
        low = integrate_log_mapped(mux, K_.reflect(), lambda v: 1.0 - v)
        low -= integrate_log_mapped(mux, prefix_interval(t), lambda v: 1.0 + v)
        up = integrate_log_mapped(mux, K_, lambda v: 1.0 + v)
        up -= integrate_log_mapped(mux, prefix_interval(t), lambda v: 1.0 - v)
        out.append(le_report(f"{tag}lower", low, mid, atol, rtol, ctx))
        out.append(le_report(f"{tag}upper", mid, up, atol, rtol, ctx))

    def difference(tag: str, K_: IntervalSet):
        t = K_.measure
        ctx = {"K": K_.to_jsonable(), "t": t}
        lhs = integrate_log(mu(diff), K_)
        rhs = integrate_log_mapped(mu(x - y), K_, lambda v: 2.0 * v)
        rhs -= integrate_log_mapped(mux, prefix_interval(t), lambda v: 1.0 - v)
        rhs -= integrate_log_mapped(muy, prefix_interval(t), lambda v: 1.0 - v)
        out.append(le_report(f"{tag}diff", lhs, rhs, atol, rtol, ctx))

    two_sided("", K)
    difference("", K)
    two_sided("full_", full_interval())
    difference("full_", full_interval())
    return out


# -- index-subset determinant bounds and the bridge to the continuous forms --------


def interval_set_from_indices(indices, n: int) -> IntervalSet:
    """Union of the dyadic pieces [(k-1)/n, k/n) for 1-based indices k,
    consecutive runs merged; endpoints constructed exactly as j/n."""
    ks = sorted(set(int(k) for k in indices))
    if not ks or ks[0] < 1 or ks[-1] > n:
        raise ValueError(f"indices must be a nonempty subset of 1..{n}")
    pairs = []
    run_start = ks[0]
    prev = ks[0]
    for k in ks[1:]:
        if k == prev + 1:
            prev = k
            continue
        pairs.append(((run_start - 1) / n, prev / n))
        run_start = prev = k
    pairs.append(((run_start - 1) / n, prev / n))
    return make_interval_set(pairs)


def check_index_subsets(
    z: ComplexMatrix,
    u: ComplexMatrix,
    indices,
    delta: float = DEFAULT_DELTA,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list:
    """Index-subset Harnack bounds for A = u z (log space), with r_k the
    singular values of z and lam_k the descending eigenvalues of the middle
    term built from A:

      full product: sum log (1-r_k)/(1+r_k) <= log det(I-z*z)/|det(I-uz)|^2
                    <= sum log (1+r_k)/(1-r_k);
      subset upper: sum_{k in K} log lam_k <= sum_{k in K} log (1+r_k)/(1-r_k);
      subset lower: sum_{k in K} log lam_{n-k+1}
                    >= sum_{k in K} log(1-r_k^2) - 2 sum_{i<=|K|} log(1+r_i);

    and equality bridges tying the subset forms to the continuous checkers
    under the dyadic interval set matching the index set.
    """
    require_contraction(z, delta, "z")
    n = z.shape[0]
    ks = sorted(set(int(k) for k in indices))
    if not ks or ks[0] < 1 or ks[-1] > n:
        raise ValueError(f"indices must be a nonempty subset of 1..{n}")
    eye = identity(n)
    r = linalg.svd(z).sigma
    a = u @ z
    lam = linalg.herm_eig(symmetrize(middle_term(a))).eigenvalues
    ctx = {"indices": ks}

    log_mid = float(n) * (log_fk_det(eye - adjoint(z) @ z) - 2.0 * log_fk_det(eye - a))
    log_low = math.fsum(math.log(_harnack_ratio_down(float(v))) for v in r)
    log_up = math.fsum(math.log(_harnack_ratio_up(float(v))) for v in r)
    out = [
        le_report("det_lower", log_low, log_mid, atol, rtol, ctx),
        le_report("det_upper", log_mid, log_up, atol, rtol, ctx),
    ]

    sub_up_lhs = math.fsum(math.log(float(lam[k - 1])) for k in ks)
    sub_up_rhs = math.fsum(math.log(_harnack_ratio_up(float(r[k - 1]))) for k in ks)
    out.append(le_report("subset_upper", sub_up_lhs, sub_up_rhs, atol, rtol, ctx))

    sub_low_lhs = math.fsum(math.log(float(lam[n - k])) for k in ks)
    sub_low_rhs = math.fsum(
        math.log(1.0 - float(r[k - 1]) ** 2) for k in ks
    ) - 2.0 * math.fsum(math.log(1.0 + float(r[i])) for i in range(len(ks)))
    out.append(le_report("subset_lower", sub_low_rhs, sub_low_lhs, atol, rtol, ctx))

    # bridge to the continuous checkers on the matching dyadic interval sets
    k_cont = interval_set_from_indices(ks, n)
    k_refl = interval_set_from_indices([n - k + 1 for k in ks], n)
    upper_reports = {rep.name: rep for rep in check_harnack_upper(a, k_cont, delta, atol, rtol)}
    on_set = upper_reports["on_set"]
    out.append(eq_report("bridge_upper_lhs", sub_up_lhs / n, on_set.lhs, 1e-9, 1e-9, ctx))
    out.append(eq_report("bridge_upper_rhs", sub_up_rhs / n, on_set.rhs, 1e-9, 1e-9, ctx))
    lower_rep = check_harnack_lower(a, k_refl, delta, atol, rtol)
    out.append(eq_report("bridge_lower_lhs", sub_low_lhs / n, lower_rep.rhs, 1e-9, 1e-9, ctx))
    out.append(eq_report("bridge_lower_rhs", sub_low_rhs / n, lower_rep.lhs, 1e-9, 1e-9, ctx))
    return out

"""Singular-value calculus and Harnack-type inequality verification for
complex matrices and step functions on [0, 1]."""

from .stepfn import (
    NEG_INFINITY,
    IntervalSet,
    StepFunction,
    eval_left,
    eval_right,
    full_interval,
    integrate_log,
    integrate_log_mapped,
    invert_flip,
    make_interval_set,
    make_step,
    prefix_interval,
    rearrange,
    reflect_neg,
)
from .linalg import (
    SingularData,
    SpectralData,
    cayley,
    haar_unitary,
    herm_eig,
    inverse,
    op_norm,
    svd,
)
from .spectral import (
    TracialContext,
    big_lambda,
    dyadic_approx,
    fk_det,
    lambda_scale,
    log_fk_det,
    mu,
)
from .submaj import RelationReport, log_submaj, p_submaj, equivalence_battery
from .inequalities import HarnackMiddle, InequalityReport, harnack_middle
from .harness import TrialConfig, gen_contraction, gen_interval_set, run_suite

__version__ = "0.1.0"
